//! Points and lines of the affine space F_q^3.
//!
//! Lines are kept in a canonical `(slope, base)` form: the slope is scaled
//! so its first nonzero coordinate is 1, and the base is the smallest point
//! of the line in lexicographic order. Equal point sets give equal values.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Fe, Field, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("slope vector must be nonzero")]
    ZeroSlope,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A point of F_q^3. Ordered lexicographically by coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point(pub [Fe; 3]);

impl Point {
    pub const ORIGIN: Point = Point([Fe::ZERO; 3]);

    /// Dense index in `[0, q^3)` that agrees with the point order.
    pub fn index(&self, field: &Field) -> u32 {
        let q = field.order();
        let [a, b, c] = self.0;
        (a.value() * q + b.value()) * q + c.value()
    }

    pub fn from_index(field: &Field, index: u32) -> Point {
        let q = field.order();
        debug_assert!(index < q * q * q);
        Point([
            Fe::from_raw(index / (q * q)),
            Fe::from_raw((index / q) % q),
            Fe::from_raw(index % q),
        ])
    }

    pub fn all(field: &Field) -> impl Iterator<Item = Point> + '_ {
        let q = field.order();
        (0..q * q * q).map(move |i| Point::from_index(field, i))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn to_repr(&self, field: &Field) -> PointRepr {
        self.0.map(|c| field.coeffs(c))
    }

    pub fn from_repr(field: &Field, repr: &PointRepr) -> Result<Point, GfError> {
        Ok(Point([
            field.from_coeffs(&repr[0])?,
            field.from_coeffs(&repr[1])?,
            field.from_coeffs(&repr[2])?,
        ]))
    }
}

/// JSON form of a point: three coefficient arrays.
pub type PointRepr = [Vec<u32>; 3];

/// `beta * s + v`.
pub fn affine_combination(field: &Field, beta: Fe, s: &[Fe; 3], v: &[Fe; 3]) -> Point {
    Point([
        field.add(field.mul(beta, s[0]), v[0]),
        field.add(field.mul(beta, s[1]), v[1]),
        field.add(field.mul(beta, s[2]), v[2]),
    ])
}

/// Nonzero direction scaled so its first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlopeVector([Fe; 3]);

impl SlopeVector {
    pub fn new(field: &Field, direction: [Fe; 3]) -> Result<SlopeVector, GeometryError> {
        let lead = direction
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroSlope)?;
        let scale = field.inv(lead)?;
        Ok(SlopeVector(direction.map(|c| field.mul(scale, c))))
    }

    pub fn coords(&self) -> &[Fe; 3] {
        &self.0
    }

    /// Position of the leading 1.
    pub fn pivot(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap()
    }
}

/// Order `(s, t)`: lines have `s + 1` points, points lie on `t + 1` lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderParams {
    pub s_order: usize,
    pub t_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    slope: SlopeVector,
    base: Point,
}

/// JSON form of a line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRepr {
    pub slope: PointRepr,
    pub base: PointRepr,
}

/// The canonical line `{beta * direction + anchor : beta in F_q}`.
pub fn canonical_line(
    field: &Field,
    direction: [Fe; 3],
    anchor: Point,
) -> Result<Line, GeometryError> {
    let slope = SlopeVector::new(field, direction)?;
    Ok(Line::through(field, slope, anchor))
}

impl Line {
    /// Canonical line with a given (already canonical) slope through `anchor`.
    ///
    /// Coordinates before the pivot are constant along the line and the pivot
    /// coordinate runs over all of F_q, so the minimum point is the one whose
    /// pivot coordinate is zero.
    pub fn through(field: &Field, slope: SlopeVector, anchor: Point) -> Line {
        let beta = field.neg(anchor.0[slope.pivot()]);
        Line {
            slope,
            base: affine_combination(field, beta, &slope.0, &anchor.0),
        }
    }

    pub fn slope(&self) -> &SlopeVector {
        &self.slope
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    /// True iff `anchor` is this line's canonical base.
    pub fn is_base_of(slope: &SlopeVector, anchor: &Point) -> bool {
        anchor.0[slope.pivot()].is_zero()
    }

    pub fn point_at(&self, field: &Field, beta: Fe) -> Point {
        affine_combination(field, beta, &self.slope.0, &self.base.0)
    }

    /// The `q` points of the line in increasing order.
    pub fn points(&self, field: &Field) -> Vec<Point> {
        let mut pts: Vec<Point> = field.elements().map(|b| self.point_at(field, b)).collect();
        pts.sort_unstable();
        pts
    }

    /// Dense indices of the points, increasing.
    pub fn point_indices(&self, field: &Field) -> Vec<u32> {
        let mut idx: Vec<u32> = field
            .elements()
            .map(|b| self.point_at(field, b).index(field))
            .collect();
        idx.sort_unstable();
        idx
    }

    pub fn contains(&self, field: &Field, p: &Point) -> bool {
        // p - base must be a multiple of the slope; the pivot fixes the multiple
        let beta = field.sub(p.0[self.slope.pivot()], self.base.0[self.slope.pivot()]);
        self.point_at(field, beta) == *p
    }

    /// The unique common point of two lines, if any.
    ///
    /// Parallel lines and identical lines both return `None`: neither has a
    /// unique common point.
    pub fn intersect(&self, field: &Field, other: &Line) -> Option<Point> {
        if self.slope == other.slope {
            return None;
        }
        // beta * s1 - gamma * s2 = v2 - v1. Distinct canonical slopes are not
        // proportional, so some 2x2 minor of [s1 | s2] is nonzero.
        let s1 = &self.slope.0;
        let s2 = &other.slope.0;
        let d: [Fe; 3] = [0, 1, 2].map(|i| field.sub(other.base.0[i], self.base.0[i]));
        let minor =
            |i: usize, j: usize| field.sub(field.mul(s2[i], s1[j]), field.mul(s1[i], s2[j]));
        let (i, j, k, det) = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
            .into_iter()
            .map(|(i, j, k)| (i, j, k, minor(i, j)))
            .find(|&(_, _, _, det)| !det.is_zero())?;
        let det_inv = field.inv(det).ok()?;
        let beta = field.mul(
            field.sub(field.mul(s2[i], d[j]), field.mul(d[i], s2[j])),
            det_inv,
        );
        let gamma = field.mul(
            field.sub(field.mul(s1[i], d[j]), field.mul(d[i], s1[j])),
            det_inv,
        );
        let lhs = field.sub(field.mul(beta, s1[k]), field.mul(gamma, s2[k]));
        (lhs == d[k]).then(|| self.point_at(field, beta))
    }

    pub fn to_repr(&self, field: &Field) -> LineRepr {
        LineRepr {
            slope: self.slope.0.map(|c| field.coeffs(c)),
            base: self.base.to_repr(field),
        }
    }

    /// Parses and canonicalizes a serialized line.
    pub fn from_repr(field: &Field, repr: &LineRepr) -> Result<Line, GeometryError> {
        let direction = Point::from_repr(field, &repr.slope)?;
        let anchor = Point::from_repr(field, &repr.base)?;
        canonical_line(field, direction.0, anchor)
    }
}
