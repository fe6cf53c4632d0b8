//! Point CSV, label files and float formatting.

use std::fmt::Write as _;
use std::path::Path;

use kfind_core::PointSet;

use crate::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// One point per line, comma-separated, no header. Blank lines are skipped.
pub fn parse_points(text: &str) -> Result<PointSet, CliError> {
    let mut data = Vec::new();
    let mut arity = None;
    let mut n = 0;
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = k + 1;
        let mut count = 0;
        for tok in line.split(',') {
            let tok = tok.trim();
            let v: f64 = tok
                .parse()
                .map_err(|_| CliError::Input(format!("non-numeric token {tok:?} at line {lineno}")))?;
            if !v.is_finite() {
                return Err(CliError::Input(format!("non-finite value at line {lineno}")));
            }
            data.push(v);
            count += 1;
        }
        match arity {
            None => arity = Some(count),
            Some(a) if a != count => return Err(CliError::Input(format!("ragged row at line {lineno}"))),
            Some(_) => {}
        }
        n += 1;
    }
    let d = arity.ok_or_else(|| CliError::Input("empty point file".into()))?;
    PointSet::from_flat(n, d, data).map_err(|e| CliError::Input(e.to_string()))
}

pub fn read_points(path: &Path) -> Result<(PointSet, String), CliError> {
    let text = read_text(path)?;
    let points = parse_points(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    Ok((points, text))
}

pub fn format_points(p: &PointSet) -> String {
    let mut out = String::with_capacity(p.n() * p.d() * 24);
    for row in p.rows() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&fmt_f64(*v));
        }
        out.push('\n');
    }
    out
}

/// One positive integer per line; must match the point count.
pub fn parse_labels(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let mut labels = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: usize = line
            .parse()
            .map_err(|_| CliError::Input(format!("bad label {line:?} at line {}", k + 1)))?;
        labels.push(v);
    }
    if labels.len() != n {
        return Err(CliError::Input(format!("{} labels for {n} points", labels.len())));
    }
    Ok(labels)
}

pub fn format_labels(labels: &[usize]) -> String {
    let mut out = String::with_capacity(labels.len() * 3);
    for l in labels {
        let _ = writeln!(out, "{l}");
    }
    out
}
