use std::collections::HashMap;

use crate::construction::GeometryFamily;
use crate::geometry::{Line, OrderParams};

use super::{
    CheckOptions, CountingReport, GenericIncidence, OrderSubject, Report, VerifyError, Witness,
};

/// Above this many point pairs the pair registry is a hash map instead of a
/// dense triangular array.
const DENSE_PAIR_LIMIT: usize = 1 << 25;

enum PairRegistry {
    Dense { n: usize, slots: Vec<u32> },
    Sparse(HashMap<(u32, u32), u32>),
}

impl PairRegistry {
    fn new(n: usize) -> Self {
        let pairs = n.saturating_mul(n.saturating_sub(1)) / 2;
        if pairs <= DENSE_PAIR_LIMIT {
            PairRegistry::Dense {
                n,
                slots: vec![0; pairs],
            }
        } else {
            PairRegistry::Sparse(HashMap::new())
        }
    }

    /// Records `line` as covering `a < b`; returns the line already there.
    fn register(&mut self, a: u32, b: u32, line: u32) -> Option<u32> {
        match self {
            PairRegistry::Dense { n, slots } => {
                let (a, b) = (a as usize, b as usize);
                let slot = a * (2 * *n - a - 1) / 2 + (b - a - 1);
                let prev = slots[slot];
                if prev == 0 {
                    slots[slot] = line + 1;
                    None
                } else {
                    Some(prev - 1)
                }
            }
            PairRegistry::Sparse(map) => match map.entry((a, b)) {
                std::collections::hash_map::Entry::Occupied(e) => Some(*e.get()),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(line);
                    None
                }
            },
        }
    }
}

/// Every pair of points lies on at most one line.
///
/// Single pass: each point pair of each line is registered; the first pair
/// already owned by an earlier line is the witness.
pub fn check_pls(g: &GenericIncidence, opts: CheckOptions) -> Report {
    let mut registry = PairRegistry::new(g.num_points());
    let mut first = None;
    let mut count = 0u64;
    for (j, line) in g.lines().iter().enumerate() {
        for (ia, &a) in line.iter().enumerate() {
            for &b in &line[ia + 1..] {
                if let Some(i) = registry.register(a, b, j as u32) {
                    count += 1;
                    if first.is_none() {
                        first = Some(Witness::PlsViolation {
                            lines: [i as usize, j],
                            points: [a, b],
                        });
                        if !opts.exhaustive {
                            return Report::fail(first.unwrap(), 1);
                        }
                    }
                }
            }
        }
    }
    match first {
        Some(w) => Report::fail(w, count),
        None => Report::pass(()),
    }
}

fn reject_degenerate(g: &GenericIncidence) -> Result<(), VerifyError> {
    if g.num_points() == 0 {
        return Err(VerifyError::MalformedStructure("no points".into()));
    }
    if let Some(p) = (0..g.num_points() as u32).find(|&p| g.degree(p) == 0) {
        return Err(VerifyError::MalformedStructure(format!(
            "point {p} lies on no line"
        )));
    }
    Ok(())
}

/// Uniform line size `s + 1` and uniform point degree `t + 1`.
pub fn check_order(
    g: &GenericIncidence,
    opts: CheckOptions,
) -> Result<Report<OrderParams>, VerifyError> {
    reject_degenerate(g)?;
    let line_size = g.line(0).len();
    let point_degree = g.degree(0);

    let line_dev = g
        .lines()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.len() != line_size)
        .map(|(i, l)| Witness::OrderViolation {
            subject: OrderSubject::Line,
            index: i,
            found: l.len(),
            expected: line_size,
        });
    let point_dev = (0..g.num_points())
        .filter(|&p| g.degree(p as u32) != point_degree)
        .map(|p| Witness::OrderViolation {
            subject: OrderSubject::Point,
            index: p,
            found: g.degree(p as u32),
            expected: point_degree,
        });
    let mut deviations = line_dev.chain(point_dev);

    Ok(match deviations.next() {
        None => Report::pass(OrderParams {
            s_order: line_size - 1,
            t_order: point_degree - 1,
        }),
        Some(w) => {
            let count = if opts.exhaustive {
                1 + deviations.count() as u64
            } else {
                1
            };
            Report::fail(w, count)
        }
    })
}

/// Triangles having line `side` as the side through two of their vertices.
///
/// For each point `x` of `side` and each other line `l1` through `x`, every
/// point `z` of `l1` off `side` is labelled `(x, l1)`. Two labels at the same
/// `z` from different `x, y` close a triangle `l1, side, l2`.
fn triangles_on_side(
    g: &GenericIncidence,
    side: usize,
    exhaustive: bool,
) -> (Option<Witness>, u64) {
    let side_pts = g.line(side);
    let mut marks: Vec<(u32, u32, u32)> = Vec::new();
    for &x in side_pts {
        for &l1 in g.lines_through(x) {
            if l1 as usize == side {
                continue;
            }
            for &z in g.line(l1 as usize) {
                if side_pts.binary_search(&z).is_err() {
                    marks.push((z, x, l1));
                }
            }
        }
    }
    marks.sort_unstable();

    let mut first = None;
    let mut count = 0u64;
    for group in marks.chunk_by(|a, b| a.0 == b.0) {
        for (i, &(z, x, l1)) in group.iter().enumerate() {
            for &(_, y, l2) in &group[i + 1..] {
                if x == y || l1 == l2 || g.incident(x, l2 as usize) || g.incident(y, l1 as usize) {
                    continue;
                }
                let (l1, l2) = (l1 as usize, l2 as usize);
                if first.is_none() {
                    first = Some(Witness::Triangle {
                        lines: [l1, side, l2],
                        points: [x, y, z],
                    });
                    if !exhaustive {
                        return (first, 1);
                    }
                }
                // each triangle is counted from its smallest line only
                if side < l1 && side < l2 {
                    count += 1;
                }
            }
        }
    }
    (first, count)
}

/// No three lines pairwise meet in three distinct points.
pub fn check_triangle_free(g: &GenericIncidence, opts: CheckOptions) -> Report {
    let lines = 0..g.num_lines();
    if opts.exhaustive {
        let per_side = opts
            .exec
            .map(lines, |side| triangles_on_side(g, side, true));
        let count = per_side.iter().map(|(_, c)| c).sum();
        match per_side.into_iter().find_map(|(w, _)| w) {
            Some(w) => Report::fail(w, count),
            None => Report::pass(()),
        }
    } else {
        match opts
            .exec
            .find_first(lines, |side| triangles_on_side(g, side, false).0)
        {
            Some(w) => Report::fail(w, 1),
            None => Report::pass(()),
        }
    }
}

/// Line sets of distinct classes are disjoint.
pub fn check_disjoint_classes(family: &GeometryFamily, opts: CheckOptions) -> Report {
    let mut owner: HashMap<Line, usize> = HashMap::with_capacity(family.total_lines());
    let mut first = None;
    let mut count = 0u64;
    for (j, class) in family.classes.iter().enumerate() {
        for line in &class.lines {
            match owner.get(line) {
                Some(&i) if i != j => {
                    count += 1;
                    if first.is_none() {
                        let field = &family.field;
                        first = Some(Witness::ClassOverlap {
                            classes: [i, j],
                            lambdas: [
                                field.coeffs(family.classes[i].lambda),
                                field.coeffs(class.lambda),
                            ],
                            line: line.to_repr(field),
                        });
                        if !opts.exhaustive {
                            return Report::fail(first.unwrap(), 1);
                        }
                    }
                }
                Some(_) => {}
                None => {
                    owner.insert(*line, j);
                }
            }
        }
    }
    match first {
        Some(w) => Report::fail(w, count),
        None => Report::pass(()),
    }
}

/// The union of all classes is a partial linear space. Witness line ids
/// index the union, classes concatenated in order.
pub fn check_union_pls(family: &GeometryFamily, opts: CheckOptions) -> Report {
    check_pls(&GenericIncidence::from_family(family), opts)
}

/// `collinear` points of `line` for a point `x` whose neighbourhood is marked.
fn gq_scan_point(g: &GenericIncidence, x: u32, exhaustive: bool) -> (Option<Witness>, u64) {
    let mut near = vec![false; g.num_points()];
    for p in g.neighbourhood(x) {
        near[p as usize] = true;
    }
    let mut first = None;
    let mut count = 0u64;
    for (l, line) in g.lines().iter().enumerate() {
        if line.binary_search(&x).is_ok() {
            continue;
        }
        let hits = line.iter().filter(|&&p| near[p as usize]).count();
        if hits != 1 {
            count += 1;
            if first.is_none() {
                first = Some(Witness::GqViolation {
                    point: x,
                    line: l,
                    collinear: line.iter().copied().filter(|&p| near[p as usize]).collect(),
                });
                if !exhaustive {
                    break;
                }
            }
        }
    }
    (first, count)
}

/// Every point off a line is collinear with exactly one point of it.
///
/// Meaningful on partial linear spaces; combined with triangle-freeness this
/// is the generalized quadrangle axiom.
pub fn check_gq(g: &GenericIncidence, opts: CheckOptions) -> Report {
    let points = 0..g.num_points();
    if opts.exhaustive {
        let per_point = opts.exec.map(points, |x| gq_scan_point(g, x as u32, true));
        let count = per_point.iter().map(|(_, c)| c).sum();
        match per_point.into_iter().find_map(|(w, _)| w) {
            Some(w) => Report::fail(w, count),
            None => Report::pass(()),
        }
    } else {
        match opts
            .exec
            .find_first(points, |x| gq_scan_point(g, x as u32, false).0)
        {
            Some(w) => Report::fail(w, 1),
            None => Report::pass(()),
        }
    }
}

/// Point-count lower bound `|P| >= (st + 1)(s + 1)` for a triangle-free
/// partial linear space of order `(s, t)`; equality exactly for generalized
/// quadrangles.
pub fn counting_bound(
    g: &GenericIncidence,
    opts: CheckOptions,
) -> Result<CountingReport, VerifyError> {
    let opts = CheckOptions {
        exhaustive: false,
        ..opts
    };
    if !check_pls(g, opts).is_ok() {
        return Err(VerifyError::NotPartialLinearSpace);
    }
    let order = check_order(g, opts)?.value.ok_or(VerifyError::NotUniform)?;
    if !check_triangle_free(g, opts).is_ok() {
        return Err(VerifyError::NotTriangleFree);
    }
    let s = order.s_order as u64;
    let t = order.t_order as u64;
    let bound = (s * t + 1) * (s + 1);
    let num_points = g.num_points() as u64;
    Ok(CountingReport {
        num_points,
        s_order: s,
        t_order: t,
        bound,
        holds: num_points >= bound,
        equality: num_points == bound,
    })
}
