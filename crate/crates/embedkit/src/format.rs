//! Text formats for rotation systems, GF(2) matrices, and code bundles.
//!
//! Rotation-system files: a `ROT v=<n>` header, then one line per vertex in
//! order, `"<vertex>: <neighbor> <neighbor> ..."` with the neighbors in
//! cyclic order. Matrix files: a `GF2 <rows> <cols>` header, then one line
//! of `0`/`1` characters per row. A code bundle is a pair of matrix files
//! plus the line `CSS n=<n> k=<k> d=<d|?> cap=<c>`.

use std::fmt::Write as _;

use embedkit_core::{BinaryMatrix, CssCode, DistanceBound, RotationError, RotationSystem};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    InvalidRotation {
        line: usize,
        source: RotationError,
    },
}

impl FormatError {
    fn syntax(line: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            message: message.into(),
        }
    }
}

pub fn write_rotation(rot: &RotationSystem) -> String {
    let mut out = String::new();
    writeln!(out, "ROT v={}", rot.vertex_count()).unwrap();
    for v in 0..rot.vertex_count() {
        let neighbors: Vec<String> = rot.rotation(v).iter().map(usize::to_string).collect();
        writeln!(out, "{v}: {}", neighbors.join(" ")).unwrap();
    }
    out
}

pub fn parse_rotation(text: &str) -> Result<RotationSystem, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(1, "empty file; expected ROT v=<n> header"))?;
    let n: usize = header
        .strip_prefix("ROT v=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| FormatError::syntax(1, format!("expected ROT v=<n>, got {header:?}")))?;
    let mut rotations = Vec::with_capacity(n);
    for expected in 0..n {
        let line_no = expected + 2;
        let (_, line) = lines
            .next()
            .ok_or_else(|| FormatError::syntax(line_no, format!("missing row for vertex {expected}")))?;
        let (label, rest) = line.split_once(':').ok_or_else(|| {
            FormatError::syntax(line_no, format!("expected \"{expected}: ...\", got {line:?}"))
        })?;
        if label.trim().parse::<usize>() != Ok(expected) {
            return Err(FormatError::syntax(
                line_no,
                format!("expected vertex {expected}, got {:?}", label.trim()),
            ));
        }
        let neighbors = rest
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    FormatError::syntax(line_no, format!("bad neighbor token {tok:?}"))
                })
            })
            .collect::<Result<Vec<usize>, FormatError>>()?;
        rotations.push(neighbors);
    }
    for (i, line) in lines {
        if !line.trim().is_empty() {
            return Err(FormatError::syntax(i + 1, "trailing content after last vertex row"));
        }
    }
    RotationSystem::new(rotations).map_err(|source| {
        // Validation errors name a vertex; point at its row.
        let vertex = match &source {
            RotationError::NeighborOutOfRange { vertex, .. }
            | RotationError::SelfAdjacent { vertex }
            | RotationError::RepeatedNeighbor { vertex, .. }
            | RotationError::AsymmetricAdjacency { vertex, .. }
            | RotationError::EmptyRotation { vertex }
            | RotationError::Disconnected { vertex } => *vertex,
        };
        FormatError::InvalidRotation {
            line: vertex + 2,
            source,
        }
    })
}

pub fn write_matrix(m: &BinaryMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "GF2 {} {}", m.rows(), m.cols()).unwrap();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.push(if m.get(r, c) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(1, "empty file; expected GF2 <rows> <cols> header"))?;
    let dims: Vec<usize> = header
        .strip_prefix("GF2 ")
        .map(|rest| rest.split_whitespace().filter_map(|t| t.parse().ok()).collect())
        .unwrap_or_default();
    let [rows, cols] = dims.as_slice() else {
        return Err(FormatError::syntax(
            1,
            format!("expected GF2 <rows> <cols>, got {header:?}"),
        ));
    };
    let mut m = BinaryMatrix::zeros(*rows, *cols);
    for r in 0..*rows {
        let line_no = r + 2;
        let (_, line) = lines
            .next()
            .ok_or_else(|| FormatError::syntax(line_no, format!("missing row {r}")))?;
        let line = line.trim();
        if line.len() != *cols {
            return Err(FormatError::syntax(
                line_no,
                format!("row has {} characters, expected {cols}", line.len()),
            ));
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(r, c, true),
                _ => {
                    return Err(FormatError::syntax(
                        line_no,
                        format!("bad character {ch:?}; rows are 0/1 strings"),
                    ))
                }
            }
        }
    }
    for (i, line) in lines {
        if !line.trim().is_empty() {
            return Err(FormatError::syntax(i + 1, "trailing content after last row"));
        }
    }
    Ok(m)
}

/// The parameters line of a code bundle.
pub fn css_meta_line(code: &CssCode) -> String {
    let d = match code.distance() {
        Some(DistanceBound::Certified(d)) => d.to_string(),
        _ => "?".to_string(),
    };
    format!(
        "CSS n={} k={} d={d} cap={}\n",
        code.n(),
        code.k(),
        code.distance_cap().unwrap_or(0)
    )
}
