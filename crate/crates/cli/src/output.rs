//! Formatting and file output.

use std::fmt::Write as _;
use std::io::{self, IsTerminal, Write};
use std::path::Path;

use malmsten_core::report::ComparisonRow;
use serde::Serialize;

/// Round-trippable binary64: 17 significant digits.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// Whether stdout gets ANSI colour.
pub fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && io::stdout().is_terminal()
}

pub fn pass_label(pass: bool, color: bool) -> &'static str {
    match (pass, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// `phi,method,value,est_error,work`, one line per (φ, method), LF endings.
pub fn sweep_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("phi,method,value,est_error,work\n");
    for row in rows {
        for ev in &row.evaluations {
            writeln!(
                out,
                "{},{},{},{},{}",
                sci(row.phi.radians()),
                ev.method.name(),
                sci(ev.value),
                sci(ev.est_error),
                ev.work
            )
            .expect("writing to a String cannot fail");
        }
    }
    out
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use malmsten_core::report::sweep_grid;
    use malmsten_core::{ComparisonReport, Method, RouteConfig};

    #[test]
    fn sci_round_trips() {
        for v in [0.1, -0.2604428063009885, 1e-300, 12345.678] {
            assert_eq!(sci(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_layout() {
        let grid = sweep_grid(-1.0, 1.0, 1.0).unwrap();
        let r = ComparisonReport::build(
            &grid,
            &[Method::QuadExp, Method::Closed],
            &RouteConfig::default(),
            1e-10,
        )
        .unwrap();
        let csv = sweep_csv(&r.rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "phi,method,value,est_error,work");
        assert!(lines[1].contains(",closed,"));
        assert!(lines[2].contains(",quad_exp,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        write_atomic(&p, "a\n").unwrap();
        write_atomic(&p, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
