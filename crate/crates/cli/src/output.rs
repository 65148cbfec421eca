//! Text tables and JSON reports.

use std::fmt::Write as _;
use std::io::Write;

use hhlab_core::report::{Outcome, Verdict};
use hhlab_core::VerificationReport;

use crate::{CliError, Format, Output, RunConfig};

fn verdict_str(v: Option<Verdict>) -> &'static str {
    match v {
        None => "-",
        Some(Verdict::Yes) => "yes",
        Some(Verdict::DimsOnly) => "dims-only",
        Some(Verdict::Unknown) => "unknown",
        Some(Verdict::Mismatch) => "mismatch",
    }
}

fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Unknown => "unknown",
        Outcome::Computed => "computed",
    }
}

pub fn to_json(r: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("plain data");
    s.push('\n');
    s
}

pub fn to_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let mut field = |k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(s, "{k:<16}{v}");
    };
    field("check", &r.check);
    field("algebra_digest", &r.algebra_digest);
    field("engine_version", &r.engine_version);
    field("seed", &r.seed);
    field("trials", &r.trials);
    field("validity_bound", &r.validity_bound);
    field("elapsed_ms", &r.elapsed_ms);
    field("outcome", &outcome_str(r.outcome));
    if r.experimental {
        field("experimental", &"yes");
    }
    let _ = writeln!(s, "\n{:>6}  {:>8}  {:>8}  verdict", "degree", "lhs_dim", "rhs_dim");
    for d in &r.degrees {
        let rhs = d.rhs_dim.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(s, "{:>6}  {:>8}  {:>8}  {}", d.n, d.lhs_dim, rhs, verdict_str(d.verdict));
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    for f in &r.failures {
        let _ = writeln!(s, "failure: {f}");
    }
    s
}

pub fn render(out: &Output, format: Format) -> String {
    match (out, format) {
        (Output::Json(j), _) => format!("{j}\n"),
        (Output::Report(r), Format::Json) => to_json(r),
        (Output::Report(r), Format::Text) => to_text(r),
    }
}

pub fn emit(out: &Output, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = render(out, cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Output {
            path: "<stdout>".into(),
            source,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hhlab_core::algebra::builtin;

    fn sample() -> VerificationReport {
        let a = builtin("dual_numbers(2)", 101).unwrap();
        let mut r = VerificationReport::new("main", &a).with_search(3, 32).with_bound(2);
        r.compare(0, 2, 2, Verdict::Yes);
        r.compare(1, 1, 1, Verdict::Yes);
        r.compare(2, 1, 1, Verdict::Yes);
        r.finish()
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: VerificationReport = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn text_has_one_row_per_degree() {
        let text = to_text(&sample());
        let rows: Vec<_> = text.lines().filter(|l| l.trim_end().ends_with("yes")).collect();
        assert_eq!(rows.len(), 3);
        assert!(text.contains("outcome         pass"));
    }
}
