//! Text documents for matrices.
//!
//! A matrix document is a JSON object with an optional radicand `d`
//! (absent or 0 for rational-only, given as a number or a decimal string)
//! and `rows`, an array of arrays of scalar strings:
//!
//! ```json
//! {"d": "5", "rows": [["1", "2/3"], ["0", "0+1/3*sqrt(5)"]]}
//! ```

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{FieldContext, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Radicand {
    Number(u64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Radicand>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        MatrixDocument {
            d: Some(Radicand::Text(m.context().radicand().unwrap_or(0).to_string())),
            rows: m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn new(d: u64, rows: Vec<Vec<String>>) -> Self {
        MatrixDocument {
            d: Some(Radicand::Text(d.to_string())),
            rows,
        }
    }

    pub fn radicand(&self) -> Result<u64> {
        match &self.d {
            None => Ok(0),
            Some(Radicand::Number(d)) => Ok(*d),
            Some(Radicand::Text(t)) => t
                .parse()
                .map_err(|_| Error::parse("d", 0, format!("`{t}` is not a nonnegative integer"))),
        }
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        let d = self.radicand()?;
        let ctx = FieldContext::from_radicand(d)
            .map_err(|_| Error::parse("d", 0, format!("radicand {d} is not square-free >= 2")))?;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, text)| {
                        FieldElement::parse_in(text, ctx).map_err(|e| relocate(e, format!("rows[{i}][{j}]")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = ExactMatrix::from_rows(rows).map_err(|e| Error::Document(e.to_string()))?;
        if m.context() != ctx {
            m = in_context(&m, ctx)?;
        }
        Ok(m)
    }
}

fn in_context(m: &ExactMatrix, ctx: FieldContext) -> Result<ExactMatrix> {
    ExactMatrix::from_rows(
        m.rows()
            .map(|r| r.iter().map(|e| e.in_context(ctx)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    )
}

fn relocate(e: Error, location: String) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(ParseError { location, ..p }),
        other => other,
    }
}

/// Convert a serde_json failure into a positioned parse error.
pub fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), 0, e.to_string())
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let doc: MatrixDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.to_matrix()
}

pub fn print_matrix(m: &ExactMatrix) -> String {
    serde_json::to_string(&MatrixDocument::from_matrix(m)).expect("serializable")
}

pub fn int_rows_to_strings(rows: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn parse_int_rows(rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<BigInt>>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, t)| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::parse(format!("{what}[{i}][{j}]"), 0, format!("`{t}` is not an integer")))
                })
                .collect()
        })
        .collect()
}
