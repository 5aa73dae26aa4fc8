//! On-disk formats.
//!
//! Geometry JSON (self-describing, coordinates not dense indices):
//!
//! ```json
//! {"version":1,"field":{"p":3,"n":2,"modulus":[1,0,1]},
//!  "classes":{"[1,0]":[{"slope":[[1,0],[1,0],[1,0]],"base":[[0,0],[0,0],[0,0]]}, ...]},
//!  "metadata":{...}}
//! ```
//!
//! Class keys are the JSON text of the class's `lambda` coefficient array.
//!
//! Plain incidence text: a `points N` header, then one line per geometry
//! line listing whitespace-separated point ids. Blank lines and `#` comments
//! are ignored.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::{GeometryFamily, LineClass};
use crate::geometry::{GeometryError, Line, LineRepr};
use crate::gf::{Field, FieldSpec, GfError};
use crate::verifier::{GenericIncidence, VerifyError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("class key {0:?} is not a field element")]
    ClassKey(String),
    #[error("line {line}: {message}")]
    Plain { line: usize, message: String },
    #[error(transparent)]
    Structure(#[from] VerifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub construction: String,
    pub q: u64,
    pub count: usize,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFile {
    pub version: u32,
    pub field: FieldSpec,
    pub classes: IndexMap<String, Vec<LineRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

fn lambda_key(coeffs: &[u32]) -> String {
    serde_json::to_string(coeffs).expect("integer arrays serialize")
}

impl GeometryFile {
    pub fn from_family(family: &GeometryFamily) -> Self {
        let field = &family.field;
        let classes = family
            .classes
            .iter()
            .map(|c| {
                (
                    lambda_key(&field.coeffs(c.lambda)),
                    c.lines.iter().map(|l| l.to_repr(field)).collect(),
                )
            })
            .collect();
        GeometryFile {
            version: FORMAT_VERSION,
            field: field.spec().clone(),
            classes,
            metadata: Some(Metadata {
                construction: "moment-curve".to_string(),
                q: field.order() as u64,
                count: family.classes.len(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            }),
        }
    }

    /// Rebuilds the family. Lines are canonicalized; class order is kept.
    pub fn to_family(&self) -> Result<GeometryFamily, FormatError> {
        if self.version != FORMAT_VERSION {
            return Err(FormatError::Version(self.version));
        }
        let field = Arc::new(Field::from_spec(&self.field)?);
        let mut classes = Vec::with_capacity(self.classes.len());
        for (key, lines) in &self.classes {
            let coeffs: Vec<u32> =
                serde_json::from_str(key).map_err(|_| FormatError::ClassKey(key.clone()))?;
            let lambda = field
                .from_coeffs(&coeffs)
                .map_err(|_| FormatError::ClassKey(key.clone()))?;
            let lines = lines
                .iter()
                .map(|repr| Line::from_repr(&field, repr))
                .collect::<Result<Vec<_>, _>>()?;
            classes.push(LineClass { lambda, lines });
        }
        Ok(GeometryFamily { field, classes })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("geometry files serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Reads the plain incidence format.
pub fn parse_plain(text: &str) -> Result<GenericIncidence, FormatError> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = rows.next().ok_or(FormatError::Plain {
        line: 1,
        message: "missing `points N` header".into(),
    })?;
    let mut parts = header.split_whitespace();
    let num_points = match (parts.next(), parts.next(), parts.next()) {
        (Some("points"), Some(n), None) => n.parse::<usize>().map_err(|_| FormatError::Plain {
            line: hline,
            message: format!("bad point count {n:?}"),
        })?,
        _ => {
            return Err(FormatError::Plain {
                line: hline,
                message: "expected `points N` header".into(),
            })
        }
    };

    let mut lines = Vec::new();
    for (lineno, row) in rows {
        let ids = row
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| FormatError::Plain {
                    line: lineno,
                    message: format!("bad point id {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        lines.push(ids);
    }
    Ok(GenericIncidence::new(num_points, lines)?)
}

/// Either input format accepted by the verifier.
#[derive(Debug, Clone)]
pub enum Structure {
    Geometry(GeometryFamily),
    Plain(GenericIncidence),
}

/// JSON when the first non-blank character is `{`, plain otherwise.
pub fn parse_structure(text: &str) -> Result<Structure, FormatError> {
    if text.trim_start().starts_with('{') {
        Ok(Structure::Geometry(GeometryFile::parse(text)?.to_family()?))
    } else {
        Ok(Structure::Plain(parse_plain(text)?))
    }
}
