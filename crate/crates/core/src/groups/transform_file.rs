//! Transform files.
//!
//! ```text
//! kind: <orthogonal|scaling|borel|permutation|general>
//! <rows> <cols>
//! a11 a12 ...
//! ...
//! ```
//!
//! A permutation may instead be given on one line as
//! `perm: g(0) g(1) ... g(n-1)`, with or without a preceding `kind:` line.

use super::{make_element, make_permutation, GroupElement, GroupError, GroupKind};
use crate::linalg::text::{parse_matrix_lines, write_matrix};
use crate::linalg::LinalgError;

fn format_err(line: usize, message: impl Into<String>) -> GroupError {
    GroupError::TransformFormat {
        line,
        message: message.into(),
    }
}

fn parse_perm(rest: &str, line: usize) -> Result<Vec<usize>, GroupError> {
    rest.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format_err(line, format!("invalid permutation entry {t:?}")))
        })
        .collect()
}

fn ensure_no_trailing<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(), GroupError> {
    match lines.find(|(_, l)| !l.trim().is_empty()) {
        Some((lno, _)) => Err(format_err(lno, "unexpected content after the transform")),
        None => Ok(()),
    }
}

pub fn parse_transform(text: &str) -> Result<GroupElement, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (lno, first) = lines
        .next()
        .ok_or_else(|| format_err(1, "empty transform file"))?;

    if let Some(rest) = first.trim().strip_prefix("perm:") {
        let perm = parse_perm(rest, lno)?;
        ensure_no_trailing(&mut lines)?;
        return make_permutation(&perm);
    }
    let kind: GroupKind = first
        .trim()
        .strip_prefix("kind:")
        .ok_or_else(|| format_err(lno, "expected a \"kind: <kind>\" header"))?
        .trim()
        .parse()
        .map_err(|e: String| format_err(lno, e))?;

    let mut lines = lines.peekable();
    if let Some(&(plno, next)) = lines.peek() {
        if let Some(rest) = next.trim().strip_prefix("perm:") {
            if kind != GroupKind::Permutation {
                return Err(format_err(plno, format!("\"perm:\" given for kind {kind}")));
            }
            lines.next();
            let perm = parse_perm(rest, plno)?;
            ensure_no_trailing(&mut lines)?;
            return make_permutation(&perm);
        }
    }
    let matrix = parse_matrix_lines(&mut lines).map_err(|e| match e {
        LinalgError::Parse { line, message } => format_err(line, message),
        other => other.into(),
    })?;
    ensure_no_trailing(&mut lines)?;
    make_element(matrix, kind)
}

/// Writes `g` in matrix form; permutations use the compact `perm:` line.
pub fn write_transform(g: &GroupElement) -> String {
    let mut out = format!("kind: {}\n", g.kind());
    match g.permutation() {
        Some(perm) => {
            let entries: Vec<String> = perm.iter().map(usize::to_string).collect();
            out.push_str(&format!("perm: {}\n", entries.join(" ")));
        }
        None => out.push_str(&write_matrix(g.matrix())),
    }
    out
}
