fn main() {
    std::process::exit(seqaccel::cli::main_with_args(std::env::args_os()));
}
