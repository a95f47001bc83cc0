//! CSV serialization for vectors and matrices.
//!
//! Numbers are written with 17 significant digits in scientific notation so
//! that doubles round-trip exactly.

use std::fmt::Write as _;

use bsdft::{PartitionSet, SquareMatrix};
use num_complex::Complex64;

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Dense matrix with a header row of column labels.
pub fn matrix_csv(mat: &SquareMatrix, header: &[String]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in mat.rows() {
        let line: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn index_header(dim: usize) -> Vec<String> {
    (0..dim).map(|i| i.to_string()).collect()
}

/// A vector read from file; `complex` records whether any entry carried an
/// imaginary part so the output can mirror the input.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFile {
    pub values: Vec<Complex64>,
    pub complex: bool,
}

/// Parses one value per line (`re` or `re,im`). When `partitions` is given the
/// first non-empty line must be the comma-separated partition labels in rank
/// order. Blank lines and lines starting with `#` are ignored.
pub fn parse_vector(text: &str, partitions: Option<&PartitionSet>) -> Result<VectorFile, String> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    if let Some(parts) = partitions {
        let (lineno, header) = lines
            .next()
            .ok_or("missing partition header line in multivariate vector file")?;
        let labels: Vec<&str> = header.split(',').map(str::trim).collect();
        let expected = parts.labels();
        if labels != expected {
            return Err(format!(
                "line {lineno}: partition header does not match rank order for m={}, n={} \
                 (expected {} labels starting {})",
                parts.m(),
                parts.n(),
                expected.len(),
                expected
                    .iter()
                    .take(4)
                    .cloned()
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
    }

    let mut values = Vec::new();
    let mut complex = false;
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| format!("line {lineno}: cannot parse number '{s}'"))
        };
        let value = match fields.as_slice() {
            [re] => Complex64::new(parse(re)?, 0.0),
            [re, im] => {
                complex = true;
                Complex64::new(parse(re)?, parse(im)?)
            }
            _ => {
                return Err(format!(
                    "line {lineno}: expected 're' or 're,im', found {} fields",
                    fields.len()
                ))
            }
        };
        values.push(value);
    }
    Ok(VectorFile { values, complex })
}

pub fn write_vector(
    values: &[Complex64],
    complex: bool,
    partitions: Option<&PartitionSet>,
) -> String {
    let mut out = String::new();
    if let Some(parts) = partitions {
        out.push_str(&parts.labels().join(","));
        out.push('\n');
    }
    for v in values {
        if complex {
            let _ = writeln!(out, "{},{}", fmt_num(v.re), fmt_num(v.im));
        } else {
            let _ = writeln!(out, "{}", fmt_num(v.re));
        }
    }
    out
}
