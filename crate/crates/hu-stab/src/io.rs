//! Matrix file formats.
//!
//! Two on-disk representations: CSV with complex entries written as `a`,
//! `a+bi` or `a-bi` (no spaces), and dense MatrixMarket (`array` kind,
//! `complex` or `real` field, `general` symmetry, column-major data). Writers
//! emit 17 significant digits so a write-then-read round trip reproduces
//! every entry exactly.

use std::fs;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mat::{C64, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FileFormat {
    /// Comma-separated rows, complex entries as "a", "a+bi" or "a-bi".
    Csv,
    /// Dense MatrixMarket: array kind, complex/real field, general symmetry.
    #[value(name = "mm")]
    MatrixMarketDense,
}

/// Infer the format from the file extension (`.mtx`/`.mm` → MatrixMarket).
pub fn detect_format(path: &Path) -> FileFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("mtx") | Some("mm") => FileFormat::MatrixMarketDense,
        _ => FileFormat::Csv,
    }
}

pub fn read_matrix(path: &Path, format: FileFormat) -> Result<Mat> {
    let text = fs::read_to_string(path)?;
    match format {
        FileFormat::Csv => parse_csv(&text),
        FileFormat::MatrixMarketDense => parse_matrix_market(&text),
    }
}

pub fn write_matrix(path: &Path, format: FileFormat, m: &Mat) -> Result<()> {
    let text = match format {
        FileFormat::Csv => format_csv(m),
        FileFormat::MatrixMarketDense => format_matrix_market(m),
    };
    fs::write(path, text)?;
    Ok(())
}

/// SHA-256 of a file, hex-encoded, for report provenance.
pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = fs::read(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Parse one complex entry: `a`, `a+bi`, `a-bi`, or a pure imaginary `bi`.
/// Exponent signs (`1e-3`) never split the number.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty entry".into()));
    }
    let bad = |what: &str| Error::Parse(format!("invalid number {what:?} in entry {t:?}"));
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx] as char;
            if ch == '+' || ch == '-' {
                let prev = bytes[idx - 1] as char;
                if prev != 'e' && prev != 'E' {
                    split = Some(idx);
                    break;
                }
            }
        }
        let parse_im = |im: &str| -> Result<f64> {
            match im {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                other => other.parse().map_err(|_| bad(other)),
            }
        };
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().map_err(|_| bad(&body[..idx]))?;
                Ok(C64::new(re, parse_im(&body[idx..])?))
            }
            None => Ok(C64::new(0.0, parse_im(body)?)),
        }
    } else {
        let re: f64 = t.parse().map_err(|_| bad(t))?;
        Ok(C64::new(re, 0.0))
    }
}

/// Format one complex entry with 17 significant digits; pure-real values are
/// written without the imaginary part.
pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:.16e}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{:.16e}-{:.16e}i", z.re, -z.im)
    } else {
        format!("{:.16e}+{:.16e}i", z.re, z.im)
    }
}

pub fn parse_csv(text: &str) -> Result<Mat> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse(format!(
                    "line {}: expected {} entries, got {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no rows in CSV matrix".into()));
    }
    let (r, c) = (rows.len(), rows[0].len());
    Mat::new(r, c, rows.into_iter().flatten().collect())
}

pub fn format_csv(m: &Mat) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_matrix_market(text: &str) -> Result<Mat> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty MatrixMarket file".into()))?;
    let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_lowercase()).collect();
    if tokens.len() < 5 || !tokens[0].starts_with("%%matrixmarket") {
        return Err(Error::Parse("missing %%MatrixMarket header".into()));
    }
    if tokens[1] != "matrix" || tokens[2] != "array" {
        return Err(Error::Parse(format!(
            "unsupported MatrixMarket kind: {} {}",
            tokens[1], tokens[2]
        )));
    }
    let complex = match tokens[3].as_str() {
        "complex" => true,
        "real" | "integer" => false,
        other => return Err(Error::Parse(format!("unsupported field: {other}"))),
    };
    if tokens[4] != "general" {
        return Err(Error::Parse(format!("unsupported symmetry: {}", tokens[4])));
    }

    let mut body = lines.filter(|l| !l.trim_start().starts_with('%') && !l.trim().is_empty());
    let dims = body
        .next()
        .ok_or_else(|| Error::Parse("missing dimension line".into()))?;
    let mut it = dims.split_whitespace();
    let rows: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad row count".into()))?;
    let cols: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad column count".into()))?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse("matrix dimensions must be positive".into()));
    }

    let mut data = Vec::with_capacity(rows * cols);
    for line in body {
        let mut it = line.split_whitespace();
        let re: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad data line: {line:?}")))?;
        let im: f64 = if complex {
            it.next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("missing imaginary part: {line:?}")))?
        } else {
            0.0
        };
        data.push(C64::new(re, im));
    }
    if data.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries, found {}",
            rows * cols,
            data.len()
        )));
    }
    // MatrixMarket array data is column-major.
    let mut m = Mat::zeros(rows, cols);
    for (k, z) in data.into_iter().enumerate() {
        m[(k % rows, k / rows)] = z;
    }
    if !m.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    Ok(m)
}

pub fn format_matrix_market(m: &Mat) -> String {
    let mut out = String::from("%%MatrixMarket matrix array complex general\n");
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m[(i, j)];
            out.push_str(&format!("{:.16e} {:.16e}\n", z.re, z.im));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_entry_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), C64::new(1.0, -2.0));
        assert_eq!(parse_complex("-3.5e-2-1e-3i").unwrap(), C64::new(-3.5e-2, -1e-3));
        assert_eq!(parse_complex("1.5+2e-3i").unwrap(), C64::new(1.5, 2e-3));
        assert_eq!(parse_complex("2i").unwrap(), C64::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e+5").unwrap(), C64::new(1e5, 0.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("nope").is_err());
    }

    #[test]
    fn complex_format_round_trips() {
        let values = [
            C64::new(0.1 + 0.2, -1.0 / 3.0),
            C64::new(-1e-300, 2.5),
            C64::new(std::f64::consts::PI, 0.0),
            C64::new(0.0, -0.125),
        ];
        for z in values {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(back.re, z.re);
            assert_eq!(back.im, z.im);
        }
    }

    #[test]
    fn csv_round_trip() {
        let m = Mat::new(
            2,
            3,
            vec![
                C64::new(1.0, 0.0),
                C64::new(0.5, -0.25),
                C64::new(-2.0, 1e-7),
                C64::new(0.0, 0.0),
                C64::new(1.0 / 3.0, 0.0),
                C64::new(-0.1, -0.2),
            ],
        )
        .unwrap();
        let back = parse_csv(&format_csv(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        match parse_csv("1,2\n3\n") {
            Err(Error::Parse(_)) => {}
            other => panic!("expected Parse error, got {other:?}"),
        }
    }

    #[test]
    fn matrix_market_round_trip() {
        let m = Mat::new(
            3,
            2,
            vec![
                C64::new(1.5, 2.5),
                C64::new(0.0, -1.0),
                C64::new(-0.25, 0.0),
                C64::new(1e-9, 3.0),
                C64::new(7.0, 7.0),
                C64::new(-1.0 / 7.0, 0.5),
            ],
        )
        .unwrap();
        let back = parse_matrix_market(&format_matrix_market(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_market_reads_real_field() {
        let text = "%%MatrixMarket matrix array real general\n% comment\n2 2\n1.0\n2.0\n3.0\n4.0\n";
        let m = parse_matrix_market(text).unwrap();
        // column-major: first column (1, 2), second (3, 4)
        assert_eq!(m[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(m[(1, 0)], C64::new(2.0, 0.0));
        assert_eq!(m[(0, 1)], C64::new(3.0, 0.0));
        assert_eq!(m[(1, 1)], C64::new(4.0, 0.0));
    }

    #[test]
    fn matrix_market_rejects_coordinate_kind() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0\n";
        assert!(parse_matrix_market(text).is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format(Path::new("a.mtx")), FileFormat::MatrixMarketDense);
        assert_eq!(detect_format(Path::new("a.mm")), FileFormat::MatrixMarketDense);
        assert_eq!(detect_format(Path::new("a.csv")), FileFormat::Csv);
        assert_eq!(detect_format(Path::new("noext")), FileFormat::Csv);
    }
}
