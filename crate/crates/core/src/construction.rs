//! The moment-curve packing.
//!
//! For each nonzero `lambda` the slope set `M_lambda = {(1, lambda*a, lambda*a^2) : a != 0}`
//! defines the line class `L_lambda`: every affine line of F_q^3 whose
//! direction lies on `M_lambda`. Each class is a triangle-free partial linear
//! space of order `(q-1, q-2)` on the `q^3` points; distinct classes share no
//! line and their union is still a partial linear space.

use std::sync::Arc;

use thiserror::Error;

use crate::geometry::{Line, Point, SlopeVector};
use crate::gf::{Fe, Field};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("class count {count} is outside 1..={max}")]
    CountOutOfRange { count: usize, max: usize },
}

/// One line class `L_lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineClass {
    pub lambda: Fe,
    /// Canonical lines, sorted.
    pub lines: Vec<Line>,
}

/// Several line classes on the common point set F_q^3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryFamily {
    pub field: Arc<Field>,
    pub classes: Vec<LineClass>,
}

impl GeometryFamily {
    pub fn num_points(&self) -> usize {
        (self.field.order() as usize).pow(3)
    }

    pub fn total_lines(&self) -> usize {
        self.classes.iter().map(|c| c.lines.len()).sum()
    }
}

/// The `q - 1` slopes of `M_lambda`, sorted.
pub fn moment_curve(field: &Field, lambda: Fe) -> Result<Vec<SlopeVector>, ConstructionError> {
    if lambda.is_zero() {
        return Err(ConstructionError::ZeroLambda);
    }
    let mut slopes: Vec<SlopeVector> = field
        .nonzero_elements()
        .map(|alpha| {
            let la = field.mul(lambda, alpha);
            let direction = [Fe::ONE, la, field.mul(la, alpha)];
            SlopeVector::new(field, direction).expect("first coordinate is 1")
        })
        .collect();
    slopes.sort_unstable();
    Ok(slopes)
}

/// All lines whose slope lies on `M_lambda`: `(q-1) * q^2` of them.
pub fn build_class(field: &Field, lambda: Fe) -> Result<LineClass, ConstructionError> {
    let slopes = moment_curve(field, lambda)?;
    let q = field.order() as usize;
    let mut lines = Vec::with_capacity(slopes.len() * q * q);
    for slope in slopes {
        // keep an anchor only when it is already the canonical base
        lines.extend(
            Point::all(field)
                .filter(|anchor| Line::is_base_of(&slope, anchor))
                .map(|anchor| Line::through(field, slope, anchor)),
        );
    }
    debug_assert!(lines.windows(2).all(|w| w[0] < w[1]));
    Ok(LineClass { lambda, lines })
}

/// Classes for the first `count` nonzero `lambda` in canonical order
/// (default: all `q - 1`).
pub fn build_family(
    field: impl Into<Arc<Field>>,
    count: Option<usize>,
) -> Result<GeometryFamily, ConstructionError> {
    build_family_with(field, count, Exec::default())
}

pub fn build_family_with(
    field: impl Into<Arc<Field>>,
    count: Option<usize>,
    exec: Exec,
) -> Result<GeometryFamily, ConstructionError> {
    let field = field.into();
    let max = field.order() as usize - 1;
    let count = count.unwrap_or(max);
    if count == 0 || count > max {
        return Err(ConstructionError::CountOutOfRange { count, max });
    }
    let lambdas: Vec<Fe> = field.nonzero_elements().take(count).collect();
    let classes = exec
        .map(0..count, |i| build_class(&field, lambdas[i]))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeometryFamily { field, classes })
}
