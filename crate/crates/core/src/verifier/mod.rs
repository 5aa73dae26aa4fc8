//! Exhaustive, witness-producing checks on point-line incidence structures.
//!
//! Everything runs on [`GenericIncidence`]: points are ids `0..n`, lines are
//! sorted point-id lists. Affine line classes convert into it through the
//! dense point index, so handcrafted counterexamples and imported structures
//! go through exactly the same code as the constructed geometries.
//!
//! A *triangle* is three distinct lines `a, b, c` with points
//! `x in a∩b`, `y in b∩c`, `z in c∩a` such that `x ∉ c`, `y ∉ a`, `z ∉ b`.
//! On a partial linear space this is the same as three lines pairwise
//! meeting in three distinct points; three concurrent lines are not a
//! triangle.

mod brute;
mod checks;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::{GeometryFamily, LineClass};
use crate::geometry::LineRepr;
use crate::gf::Field;
use crate::par::Exec;

pub use brute::brute_force_triangle_check;
pub use checks::{
    check_disjoint_classes, check_gq, check_order, check_pls, check_triangle_free, check_union_pls,
    counting_bound,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("malformed structure: {0}")]
    MalformedStructure(String),
    #[error("structure does not have a uniform order")]
    NotUniform,
    #[error("structure is not a partial linear space")]
    NotPartialLinearSpace,
    #[error("structure is not triangle-free")]
    NotTriangleFree,
}

/// Points `0..num_points` and lines given as point-id sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericIncidence {
    num_points: usize,
    lines: Vec<Vec<u32>>,
    // point -> incident line ids, CSR layout
    offsets: Vec<usize>,
    incident: Vec<u32>,
}

impl GenericIncidence {
    /// Sorts each line. Rejects lines with fewer than two points, repeated
    /// points or out-of-range ids. Repeated lines are allowed here; they are
    /// what [`check_pls`] reports.
    pub fn new(num_points: usize, lines: Vec<Vec<u32>>) -> Result<Self, VerifyError> {
        if num_points > u32::MAX as usize || lines.len() > u32::MAX as usize {
            return Err(VerifyError::MalformedStructure(
                "structure too large".into(),
            ));
        }
        let mut lines = lines;
        for (i, line) in lines.iter_mut().enumerate() {
            line.sort_unstable();
            if line.len() < 2 {
                return Err(VerifyError::MalformedStructure(format!(
                    "line {i} has {} point(s); at least 2 required",
                    line.len()
                )));
            }
            if let Some(w) = line.windows(2).find(|w| w[0] == w[1]) {
                return Err(VerifyError::MalformedStructure(format!(
                    "line {i} lists point {} twice",
                    w[0]
                )));
            }
            if let Some(&p) = line.last().filter(|&&p| p as usize >= num_points) {
                return Err(VerifyError::MalformedStructure(format!(
                    "line {i} names point {p}, but there are only {num_points} points"
                )));
            }
        }

        let mut degree = vec![0usize; num_points];
        for line in &lines {
            for &p in line {
                degree[p as usize] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(num_points + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut incident = vec![0u32; *offsets.last().unwrap()];
        for (i, line) in lines.iter().enumerate() {
            for &p in line {
                incident[fill[p as usize]] = i as u32;
                fill[p as usize] += 1;
            }
        }
        Ok(GenericIncidence {
            num_points,
            lines,
            offsets,
            incident,
        })
    }

    /// One class of the affine construction, points by dense index.
    pub fn from_class(field: &Field, class: &LineClass) -> Self {
        let q = field.order() as usize;
        let lines = class.lines.iter().map(|l| l.point_indices(field)).collect();
        Self::new(q * q * q, lines).expect("affine lines are well formed")
    }

    /// The union of all classes of a family, class by class in order.
    pub fn from_family(family: &GeometryFamily) -> Self {
        let field = &family.field;
        let lines = family
            .classes
            .iter()
            .flat_map(|c| c.lines.iter().map(|l| l.point_indices(field)))
            .collect();
        Self::new(family.num_points(), lines).expect("affine lines are well formed")
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &[u32] {
        &self.lines[i]
    }

    /// Ids of the lines through `point`, increasing.
    pub fn lines_through(&self, point: u32) -> &[u32] {
        let p = point as usize;
        &self.incident[self.offsets[p]..self.offsets[p + 1]]
    }

    pub fn degree(&self, point: u32) -> usize {
        self.lines_through(point).len()
    }

    pub fn incident(&self, point: u32, line: usize) -> bool {
        self.lines[line].binary_search(&point).is_ok()
    }

    /// All points collinear with `x`, excluding `x`, increasing.
    ///
    /// # Panics
    ///
    /// If `x` is not a point of the structure.
    pub fn neighbourhood(&self, x: u32) -> Vec<u32> {
        assert!((x as usize) < self.num_points, "point {x} out of range");
        let mut out: Vec<u32> = self
            .lines_through(x)
            .iter()
            .flat_map(|&l| self.lines[l as usize].iter().copied())
            .filter(|&p| p != x)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Plain text form: `points N` then one line of ids per line.
    pub fn to_plain(&self) -> String {
        let mut out = format!("points {}\n", self.num_points);
        for line in &self.lines {
            let ids: Vec<String> = line.iter().map(u32::to_string).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Free-function form of [`GenericIncidence::neighbourhood`].
pub fn neighbourhood(g: &GenericIncidence, x: u32) -> Vec<u32> {
    g.neighbourhood(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    PlsViolation,
    OrderViolation,
    Triangle,
    ClassOverlap,
    GqViolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderSubject {
    Line,
    Point,
}

/// A concrete violation, small enough to re-check by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two lines sharing the two listed points.
    PlsViolation { lines: [usize; 2], points: [u32; 2] },
    /// A line whose size, or a point whose degree, differs from the first one.
    OrderViolation {
        subject: OrderSubject,
        index: usize,
        found: usize,
        expected: usize,
    },
    /// `points[0]` on lines 0,1; `points[1]` on lines 1,2; `points[2]` on lines 2,0.
    Triangle { lines: [usize; 3], points: [u32; 3] },
    /// A line present in two classes.
    ClassOverlap {
        classes: [usize; 2],
        lambdas: [Vec<u32>; 2],
        line: LineRepr,
    },
    /// A point off a line with `collinear.len() != 1` points of the line
    /// collinear with it.
    GqViolation {
        point: u32,
        line: usize,
        collinear: Vec<u32>,
    },
}

impl Witness {
    pub fn kind(&self) -> WitnessKind {
        match self {
            Witness::PlsViolation { .. } => WitnessKind::PlsViolation,
            Witness::OrderViolation { .. } => WitnessKind::OrderViolation,
            Witness::Triangle { .. } => WitnessKind::Triangle,
            Witness::ClassOverlap { .. } => WitnessKind::ClassOverlap,
            Witness::GqViolation { .. } => WitnessKind::GqViolation,
        }
    }

    /// Re-checks the witness directly against `g`. Class overlaps need the
    /// family; see [`Witness::confirms_in_family`].
    pub fn confirms(&self, g: &GenericIncidence) -> bool {
        let line_ok = |l: usize| l < g.num_lines();
        let point_ok = |p: u32| (p as usize) < g.num_points();
        match self {
            Witness::PlsViolation { lines, points } => {
                lines[0] != lines[1]
                    && points[0] != points[1]
                    && lines.iter().all(|&l| line_ok(l))
                    && points.iter().all(|&p| point_ok(p))
                    && lines
                        .iter()
                        .all(|&l| points.iter().all(|&p| g.incident(p, l)))
            }
            Witness::OrderViolation {
                subject,
                index,
                found,
                expected,
            } => {
                if found == expected {
                    return false;
                }
                match subject {
                    OrderSubject::Line => {
                        line_ok(*index)
                            && g.line(*index).len() == *found
                            && g.lines().iter().any(|l| l.len() == *expected)
                    }
                    OrderSubject::Point => {
                        point_ok(*index as u32)
                            && g.degree(*index as u32) == *found
                            && (0..g.num_points() as u32).any(|p| g.degree(p) == *expected)
                    }
                }
            }
            Witness::Triangle { lines, points } => {
                let [a, b, c] = *lines;
                let [x, y, z] = *points;
                lines.iter().all(|&l| line_ok(l))
                    && points.iter().all(|&p| point_ok(p))
                    && a != b
                    && b != c
                    && a != c
                    && g.incident(x, a)
                    && g.incident(x, b)
                    && !g.incident(x, c)
                    && g.incident(y, b)
                    && g.incident(y, c)
                    && !g.incident(y, a)
                    && g.incident(z, c)
                    && g.incident(z, a)
                    && !g.incident(z, b)
            }
            Witness::ClassOverlap { .. } => false,
            Witness::GqViolation {
                point,
                line,
                collinear,
            } => {
                if !point_ok(*point) || !line_ok(*line) || g.incident(*point, *line) {
                    return false;
                }
                let nbhd = g.neighbourhood(*point);
                let actual: Vec<u32> = g
                    .line(*line)
                    .iter()
                    .copied()
                    .filter(|p| nbhd.binary_search(p).is_ok())
                    .collect();
                actual.len() != 1 && actual == *collinear
            }
        }
    }

    /// Re-checks a witness produced by a family-level check.
    pub fn confirms_in_family(&self, family: &GeometryFamily) -> bool {
        match self {
            Witness::ClassOverlap {
                classes,
                lambdas,
                line,
            } => {
                let field = &family.field;
                let Some(line) = crate::geometry::Line::from_repr(field, line).ok() else {
                    return false;
                };
                classes[0] != classes[1]
                    && classes.iter().zip(lambdas).all(|(&c, lambda)| {
                        family.classes.get(c).is_some_and(|class| {
                            field.coeffs(class.lambda) == *lambda && class.lines.contains(&line)
                        })
                    })
            }
            other => other.confirms(&GenericIncidence::from_family(family)),
        }
    }
}

/// How a check runs.
#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    pub exec: Exec,
    /// Count every violation instead of stopping at the first.
    pub exhaustive: bool,
}

impl CheckOptions {
    pub fn sequential() -> Self {
        CheckOptions {
            exec: Exec::Sequential,
            exhaustive: false,
        }
    }
}

/// Result of a check: the lowest-indexed violation (if any) and how many
/// violations were counted (at most 1 unless exhaustive).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<T = ()> {
    pub value: Option<T>,
    pub witness: Option<Witness>,
    pub violations: u64,
}

impl<T> Report<T> {
    pub fn is_ok(&self) -> bool {
        self.witness.is_none()
    }

    pub(crate) fn pass(value: T) -> Self {
        Report {
            value: Some(value),
            witness: None,
            violations: 0,
        }
    }

    pub(crate) fn fail(witness: Witness, violations: u64) -> Self {
        Report {
            value: None,
            witness: Some(witness),
            violations: violations.max(1),
        }
    }
}

/// Quantities of the point-counting lower bound for a triangle-free
/// partial linear space of order `(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub num_points: u64,
    pub s_order: u64,
    pub t_order: u64,
    /// `(s*t + 1)(s + 1)`
    pub bound: u64,
    pub holds: bool,
    pub equality: bool,
}

/// Small named structures used in tests, docs and the CLI.
pub mod samples {
    use super::GenericIncidence;

    /// The `n`-cycle as a structure with 2-point lines.
    pub fn cycle(n: u32) -> GenericIncidence {
        let lines = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        GenericIncidence::new(n as usize, lines).unwrap()
    }

    /// Path on `n` points.
    pub fn path(n: u32) -> GenericIncidence {
        let lines = (0..n - 1).map(|i| vec![i, i + 1]).collect();
        GenericIncidence::new(n as usize, lines).unwrap()
    }
}
