//! Deterministic file output: number formatting and CSV/text writers.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Format with six significant digits in plain decimal notation, whatever
/// the magnitude ("0.500000", "11.3572", "0.0000000000250000").
pub fn fmt6(v: f64) -> String {
    if v == 0.0 {
        return "0.000000".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

#[cfg(test)]
fn significant_digits(s: &str) -> usize {
    s.chars()
        .skip_while(|c| !c.is_ascii_digit() || *c == '0')
        .filter(|c| c.is_ascii_digit())
        .count()
}

/// One CSV from a header and rows of already-formatted cells.
pub fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Write `content` to `dir/name`, creating `dir` as needed, and report the
/// path on stdout. Every artifact the tool produces goes through here, so
/// nothing is ever written outside the chosen output directory.
pub fn write_file(dir: &Path, name: &str, content: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, content)?;
    println!("wrote {}", path.display());
    Ok(path)
}
