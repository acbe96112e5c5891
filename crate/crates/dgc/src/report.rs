//! Text and CSV renderings of experiment reports.

use std::fmt::Write as _;
use std::io;

use crate::experiment::ExperimentReport;

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), ToString::to_string)
}

pub fn write_csv<W: io::Write>(rep: &ExperimentReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["id", "source", "poly", "degree", "bound", "count", "ratio", "aux_degree", "bezout_ok", "shape", "error", "pass"])?;
    for r in &rep.records {
        w.write_record([
            r.id.to_string(),
            r.source.to_string(),
            r.poly.clone(),
            r.degree.to_string(),
            r.bound.to_string(),
            opt(&r.count),
            opt(&r.ratio),
            opt(&r.aux_degree),
            opt(&r.bezout_ok),
            opt(&r.shape),
            opt(&r.error),
            r.pass.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn render_text(rep: &ExperimentReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "experiment {} (seed {}, schema {})", rep.experiment.name(), rep.seed, rep.schema_version);
    let _ = writeln!(s, "{:>4} {:>3} {:>5} {:>7} {:>12} {:>4} {:>12}  poly", "id", "d", "B", "N", "ratio", "M", "shape");
    for r in &rep.records {
        let _ = writeln!(
            s,
            "{:>4} {:>3} {:>5} {:>7} {:>12} {:>4} {:>12}  {}{}",
            r.id,
            r.degree,
            r.bound,
            opt(&r.count),
            r.ratio.map_or(String::new(), |x| format!("{x:.6e}")),
            opt(&r.aux_degree),
            r.shape.map_or(String::new(), |x| format!("{x:.4e}")),
            r.poly,
            r.error.as_ref().map_or(String::new(), |e| format!("  [error: {e}]")),
        );
    }
    for (k, v) in &rep.aggregate {
        let _ = writeln!(s, "{k} = {v:?}");
    }
    for c in &rep.checks {
        let _ = writeln!(s, "[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let _ = writeln!(s, "{}", if rep.pass { "all checks pass" } else { "some checks failed" });
    s
}
