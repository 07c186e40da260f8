//! Sequence and energy-table ingestion.
//!
//! Sequences come as `n,value` CSV or as the JSON tableau this tool writes
//! (its `k = 0` column is read back). Values are kept as text until the
//! sequence is built so decimal inputs are parsed exactly.

use std::io::Read;

use serde::Deserialize;

use super::args::{Fixture, InputSource};
use crate::core_model::{RealSequence, Source};
use crate::error::{Error, Result};
use crate::oligomer::{average_energies, csv_error, energy_differences, table1, EnergyTable};

pub fn read_text(src: &InputSource) -> Result<String> {
    match src {
        InputSource::Path(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        InputSource::Stdin => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        InputSource::Fixture(_) => unreachable!("fixtures are not read as text"),
    }
}

pub fn load_sequence(src: &InputSource) -> Result<RealSequence> {
    match src {
        InputSource::Fixture(Fixture::Table1Av) => average_energies(&table1()),
        InputSource::Fixture(_) => energy_differences(&table1()),
        _ => {
            let text = read_text(src)?;
            let label = match src {
                InputSource::Path(p) => p.display().to_string(),
                _ => "stdin".into(),
            };
            Ok(parse_sequence(&text)?.with_label(label).with_source(Source::File))
        }
    }
}

pub fn load_table(src: &InputSource) -> Result<EnergyTable> {
    match src {
        InputSource::Fixture(_) => Ok(table1()),
        _ => EnergyTable::from_csv(read_text(src)?.as_bytes()),
    }
}

/// Parses CSV or, when the text starts with `{`, a JSON tableau.
pub fn parse_sequence(text: &str) -> Result<RealSequence> {
    if text.trim_start().starts_with('{') {
        parse_json_tableau(text)
    } else {
        parse_csv(text)
    }
}

fn parse_csv(text: &str) -> Result<RealSequence> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(csv_error)?.clone();
    if headers.len() != 2 || &headers[0] != "n" || &headers[1] != "value" {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `n,value`, got `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        let n: usize = rec.get(0).unwrap_or("").parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad index {:?}", rec.get(0).unwrap_or("")),
        })?;
        if n != values.len() {
            return Err(Error::Parse {
                line,
                message: format!("index {n} out of order, expected {}", values.len()),
            });
        }
        let v = rec.get(1).unwrap_or("").to_string();
        if v.parse::<f64>().map_or(true, |x| !x.is_finite()) {
            return Err(Error::Parse { line, message: format!("bad value {v:?}") });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Parse { line: 1, message: "no data rows".into() });
    }
    RealSequence::parse_strs(&values)
}

#[derive(Deserialize)]
struct JsonTableau {
    columns: Vec<JsonColumn>,
}

#[derive(Deserialize)]
struct JsonColumn {
    k: usize,
    entries: Vec<JsonEntry>,
}

#[derive(Deserialize)]
struct JsonEntry {
    value: Option<f64>,
}

fn parse_json_tableau(text: &str) -> Result<RealSequence> {
    let t: JsonTableau = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    let col = t
        .columns
        .iter()
        .find(|c| c.k == 0)
        .ok_or_else(|| Error::Parse { line: 1, message: "tableau has no k = 0 column".into() })?;
    let values = col
        .entries
        .iter()
        .enumerate()
        .map(|(n, e)| {
            // shortest round-trip text recovers the digits that were written
            e.value.map(|v| v.to_string()).ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("input entry {n} is null"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RealSequence::parse_strs(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_comments() {
        let s = parse_sequence("# geometric\nn,value\n0,1\n1,1.5\n2,1.75\n").unwrap();
        assert_eq!(s.values(), &[1.0, 1.5, 1.75]);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let e = parse_sequence("n,value\n0,1\n1,abc\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = parse_sequence("n,value\n0,1\n2,3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = parse_sequence("n,value\n0,1,2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        assert!(matches!(parse_sequence("x,y\n0,1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_sequence("n,value\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sequence("n,value\n0,inf\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_reads_input_column() {
        let j = r#"{"columns":[{"k":0,"auxiliary":false,"entries":[{"n":0,"value":-75.943944441,"valid":true},{"n":1,"value":2.5,"valid":true}]},{"k":1,"entries":[{"value":null}]}]}"#;
        let s = parse_sequence(j).unwrap();
        assert_eq!(s.values(), &[-75.943944441, 2.5]);
        assert!(matches!(parse_sequence("{ nope"), Err(Error::Parse { .. })));
    }
}
