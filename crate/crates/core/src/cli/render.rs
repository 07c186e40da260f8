use std::fmt::Write;

use serde_json::{json, Value};

use crate::core_model::{EstimateReport, Tableau};
use crate::diagnostics::{ConvergenceClass, ConvergenceKind};
use crate::euler_maclaurin::ZetaEstimate;
use crate::oligomer::{ChainLimitReport, SequenceLimit};

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

pub fn tableau_json(t: &Tableau) -> Value {
    let columns: Vec<Value> = t
        .columns()
        .iter()
        .map(|c| {
            let entries: Vec<Value> = c
                .entries
                .iter()
                .enumerate()
                .map(|(n, e)| {
                    let mut o = json!({
                        "n": n,
                        "value": if e.valid { num(e.value) } else { Value::Null },
                        "valid": e.valid,
                    });
                    if let Some(r) = &e.reason {
                        o["reason"] = json!(r);
                    }
                    o
                })
                .collect();
            json!({ "k": c.k, "auxiliary": c.auxiliary, "entries": entries })
        })
        .collect();
    json!({
        "method": t.method().name(),
        "params": serde_json::to_value(t.params()).unwrap_or(Value::Null),
        "columns": columns,
    })
}

pub fn report_json(r: &EstimateReport) -> Value {
    json!({
        "estimate": num(r.estimate),
        "k": r.order_k,
        "n": r.start_n,
        "stage_deltas": r.stage_deltas.iter().map(|&d| num(d)).collect::<Vec<_>>(),
        "valid_fraction": r.valid_fraction,
        "degraded": r.degraded,
    })
}

pub fn transform_json(t: &Tableau, r: &EstimateReport) -> Value {
    let mut v = tableau_json(t);
    v["report"] = report_json(r);
    v
}

fn cell(t: &Tableau, k: usize, n: usize) -> String {
    match t.entry(k, n) {
        Some(e) if e.valid => format!("{:.12}", e.value),
        Some(_) => "--".into(),
        None => String::new(),
    }
}

/// Grid with one row per start index and one column per reportable order.
pub fn tableau_table(t: &Tableau) -> String {
    let mut ks = vec![0];
    ks.extend(t.reportable_orders());
    let mut out = String::new();
    let _ = write!(out, "{:>4}", "n");
    for k in &ks {
        let _ = write!(out, " {:>22}", format!("k={k}"));
    }
    out.push('\n');
    let rows = t.columns()[0].entries.len();
    for n in 0..rows {
        let _ = write!(out, "{n:>4}");
        for &k in &ks {
            let _ = write!(out, " {:>22}", cell(t, k, n));
        }
        out.push('\n');
    }
    out
}

pub fn report_table(r: &EstimateReport) -> String {
    let deltas: Vec<String> = r.stage_deltas.iter().map(|d| format!("{d:.3e}")).collect();
    let mut out = format!(
        "estimate       {:.15}\norder k        {}\nstart n        {}\nstage deltas   [{}]\nvalid fraction {:.3}\n",
        r.estimate,
        r.order_k,
        r.start_n,
        deltas.join(", "),
        r.valid_fraction
    );
    if r.degraded {
        out.push_str("warning: no transformed entry was usable; estimate is the last input\n");
    }
    out
}

pub fn transform_table(t: &Tableau, r: &EstimateReport) -> String {
    format!("method {}\n\n{}\n{}", t.method(), tableau_table(t), report_table(r))
}

fn kind_json(k: &ConvergenceKind) -> Value {
    serde_json::to_value(k).unwrap_or(Value::Null)
}

pub fn class_json(c: &ConvergenceClass) -> Value {
    json!({
        "kind": kind_json(&c.kind),
        "evidence": c.evidence.iter().map(|r| json!({
            "name": r.name, "n": r.n, "value": r.value.map_or(Value::Null, num),
        })).collect::<Vec<_>>(),
    })
}

pub fn kind_text(k: &ConvergenceKind) -> String {
    match k {
        ConvergenceKind::Linear { rho } => format!("linear (rho = {rho:.6})"),
        ConvergenceKind::Logarithmic { alpha } => format!("logarithmic (alpha = {alpha:.7})"),
        ConvergenceKind::ExponentialTail { rho } => format!("exponential tail (rho = {rho:.6})"),
        ConvergenceKind::Undetermined => "undetermined".into(),
    }
}

pub fn class_table(c: &ConvergenceClass) -> String {
    let mut out = format!("class {}\n", kind_text(&c.kind));
    for r in &c.evidence {
        let v = r.value.map_or("undefined".to_string(), |v| format!("{v:.10}"));
        let _ = writeln!(out, "  {:<13} {:>3} {v}", r.name, r.n);
    }
    out
}

pub fn zeta_json(e: &ZetaEstimate) -> Value {
    json!({
        "z": e.tail.z,
        "n": e.tail.n,
        "k": e.tail.k,
        "partial_sum": e.partial_sum,
        "integral_term": e.tail.integral_term,
        "half_term": e.tail.half_term,
        "bernoulli_terms": e.tail.bernoulli_terms,
        "total": e.total,
    })
}

pub fn zeta_table(e: &ZetaEstimate) -> String {
    let mut out = format!("zeta({}) with n = {}, k = {}\n", e.tail.z, e.tail.n, e.tail.k);
    let _ = writeln!(out, "  partial sum     {}", e.partial_sum);
    let _ = writeln!(out, "  integral term   {}", e.tail.integral_term);
    let _ = writeln!(out, "  half term       {:e}", e.tail.half_term);
    for (j, b) in e.tail.bernoulli_terms.iter().enumerate() {
        let _ = writeln!(out, "  Bernoulli j={:<2}  {b:e}", j + 1);
    }
    let _ = writeln!(out, "  total           {}", e.total);
    out
}

fn limit_json(l: &SequenceLimit) -> Value {
    json!({
        "label": l.sequence.label(),
        "values": l.sequence.values(),
        "classification": class_json(&l.classification),
        "method": l.method.name(),
        "report": report_json(&l.report),
        "tableau": tableau_json(&l.tableau),
        "stages": l.stages.as_ref().map(|st| st.iter().map(|s| json!({
            "k": s.k,
            "agreement": num(s.agreement),
            "values": s.values.iter().map(|v| v.map_or(Value::Null, num)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>()),
    })
}

pub fn chain_json(r: &ChainLimitReport) -> Value {
    json!({
        "estimate": num(r.estimate()),
        "e_dif": limit_json(&r.difference),
        "e_av": limit_json(&r.average),
    })
}

fn limit_table(title: &str, l: &SequenceLimit) -> String {
    let mut out = format!("{title}\n  class    {}\n  method   {}\n", kind_text(&l.classification.kind), l.method);
    if let Some(stages) = &l.stages {
        for s in stages {
            let _ = writeln!(out, "  stage k={:<2} agreement {:.3e}", s.k, s.agreement);
        }
    }
    let _ = writeln!(
        out,
        "  estimate {:.12}  (k = {}, n = {}){}",
        l.report.estimate,
        l.report.order_k,
        l.report.start_n,
        if l.report.degraded { "  [degraded]" } else { "" }
    );
    out
}

pub fn chain_table(r: &ChainLimitReport) -> String {
    format!(
        "infinite-chain estimate {:.12}\n\n{}\n{}",
        r.estimate(),
        limit_table("energy differences", &r.difference),
        limit_table("average energies (cross-check)", &r.average)
    )
}
