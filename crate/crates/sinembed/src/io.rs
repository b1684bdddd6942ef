//! Plain-text point and matrix files: one row per line, whitespace- or
//! comma-separated numbers, `#` starts a comment.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use sinembed_core::metric::PaddedPartitionFamily;
use sinembed_core::PointSet;

use crate::error::{HarnessError, Result};

pub fn parse_points(text: &str, origin: &Path) -> Result<PointSet> {
    let mut dim = None;
    let mut data = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| HarnessError::Parse { path: origin.to_path_buf(), line: idx + 1, msg };
        let mut count = 0;
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let x: f64 = tok.parse().map_err(|_| parse_err(format!("not a number: `{tok}`")))?;
            if !x.is_finite() {
                return Err(parse_err(format!("non-finite value `{tok}`")));
            }
            data.push(x);
            count += 1;
        }
        match dim {
            None => dim = Some(count),
            Some(d) if d != count => return Err(parse_err(format!("expected {d} values, found {count}"))),
            Some(_) => {}
        }
    }
    let dim = dim.ok_or_else(|| HarnessError::Parse { path: origin.to_path_buf(), line: 0, msg: "no points".into() })?;
    Ok(PointSet::new(dim, data)?)
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })?;
    parse_points(&text, path)
}

/// Rows joined by single spaces; values use the shortest representation that
/// parses back to the same `f64`.
pub fn format_rows<'a>(rows: impl IntoIterator<Item = &'a [f64]>) -> String {
    let mut out = String::new();
    for row in rows {
        for (i, x) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn format_points(points: &PointSet) -> String {
    format_rows(points.iter())
}

/// One line per point: space-separated `partition,cluster` pairs.
pub fn format_partition(family: &PaddedPartitionFamily) -> String {
    let n = family.assignment.first().map_or(0, Vec::len);
    let mut out = String::new();
    for x in 0..n {
        for (j, part) in family.assignment.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{j},{}", part[x]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Writes `text` to `path`, or to stdout when `path` is absent or `-`.
pub fn emit(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|source| HarnessError::Io { path: p.clone(), source })
        }
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| HarnessError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}
