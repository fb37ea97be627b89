//! Plain-text matrix format.
//!
//! ```text
//! <rows> <cols>
//! a11 a12 ...
//! ...
//! ```
//!
//! Entries are whitespace separated decimals; scientific notation is
//! accepted. The writer emits nine significant digits.

use super::{DenseMatrix, LinalgError};

/// Formats `x` with nine significant digits, `%.9g` style: fixed notation
/// for moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn format_sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..9).contains(&exp) {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (8 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn parse_f64(token: &str, line: usize) -> Result<f64, LinalgError> {
    let value: f64 = token.parse().map_err(|_| LinalgError::Parse {
        line,
        message: format!("invalid number {token:?}"),
    })?;
    if !value.is_finite() {
        return Err(LinalgError::Parse {
            line,
            message: format!("non-finite number {token:?}"),
        });
    }
    Ok(value)
}

/// Parses a matrix from the iterator of `(line_number, line)` pairs,
/// consuming exactly the header plus `rows` non-blank lines.
pub fn parse_matrix_lines<'a, I>(lines: &mut I) -> Result<DenseMatrix, LinalgError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut non_blank = lines.filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = non_blank.next().ok_or(LinalgError::Parse {
        line: 1,
        message: "missing \"<rows> <cols>\" header".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |tok: &str| {
        tok.parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| LinalgError::Parse {
                line: hline,
                message: format!("invalid dimension {tok:?}"),
            })
    };
    if dims.len() != 2 {
        return Err(LinalgError::Parse {
            line: hline,
            message: format!("expected \"<rows> <cols>\", got {header:?}"),
        });
    }
    let rows = parse_dim(dims[0])?;
    let cols = parse_dim(dims[1])?;

    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (lno, line) = non_blank.next().ok_or(LinalgError::Parse {
            line: hline + r + 1,
            message: format!("expected {rows} rows, found {r}"),
        })?;
        let before = data.len();
        for tok in line.split_whitespace() {
            data.push(parse_f64(tok, lno)?);
        }
        if data.len() - before != cols {
            return Err(LinalgError::Parse {
                line: lno,
                message: format!("expected {cols} entries, found {}", data.len() - before),
            });
        }
    }
    DenseMatrix::new(rows, cols, data)
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix, LinalgError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let m = parse_matrix_lines(&mut lines)?;
    if let Some((lno, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(LinalgError::Parse {
            line: lno,
            message: "unexpected content after matrix".into(),
        });
    }
    Ok(m)
}

pub fn write_matrix(m: &DenseMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| format_sig9(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
