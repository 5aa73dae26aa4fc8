use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use proptest::prelude::*;

use qpack::geometry::{affine_combination, canonical_line, Line, Point};
use qpack::verifier::{
    brute_force_triangle_check, check_gq, check_pls, check_triangle_free, counting_bound, samples,
    CheckOptions, GenericIncidence,
};
use qpack::{make_field, Exec, Fe, Field};

fn field(q: u64) -> &'static Field {
    static FIELDS: OnceLock<Mutex<HashMap<u64, &'static Field>>> = OnceLock::new();
    let mut cache = FIELDS.get_or_init(Default::default).lock().unwrap();
    cache
        .entry(q)
        .or_insert_with(|| Box::leak(Box::new(make_field(q).unwrap())))
}

fn field_and_elements(
    qs: &'static [u64],
    n: usize,
) -> impl Strategy<Value = (&'static Field, Vec<Fe>)> {
    prop::sample::select(qs).prop_flat_map(move |q| {
        prop::collection::vec(0..q as u32, n).prop_map(move |vals| {
            let f = field(q);
            let els = vals.iter().map(|&v| f.element(v).unwrap()).collect();
            (f, els)
        })
    })
}

const LARGE: &[u64] = &[
    25, 27, 32, 49, 64, 81, 121, 125, 243, 343, 512, 625, 729, 1024,
];
const SMALL: &[u64] = &[3, 4, 5, 7, 8, 9, 11, 13];

proptest! {
    #[test]
    fn field_axioms_large((f, e) in field_and_elements(LARGE, 3)) {
        let (a, b, c) = (e[0], e[1], e[2]);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        // Frobenius fixes every element.
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn canonical_line_is_idempotent((f, e) in field_and_elements(SMALL, 8)) {
        let dir = [e[0], e[1], e[2]];
        prop_assume!(dir.iter().any(|x| !x.is_zero()));
        let anchor = Point([e[3], e[4], e[5]]);
        let (c, beta) = (e[6], e[7]);
        prop_assume!(!c.is_zero());
        let line = canonical_line(f, dir, anchor).unwrap();
        prop_assert!(line.contains(f, &anchor));

        let scaled = dir.map(|x| f.mul(c, x));
        let moved = affine_combination(f, beta, &dir, &anchor.0);
        prop_assert_eq!(canonical_line(f, scaled, moved).unwrap(), line);
        prop_assert_eq!(canonical_line(f, *line.slope().coords(), *line.base()).unwrap(), line);
    }

    #[test]
    fn intersection_is_symmetric_and_exact((f, e) in field_and_elements(SMALL, 12)) {
        let mk = |o: usize| -> Option<Line> {
            let dir = [e[o], e[o + 1], e[o + 2]];
            canonical_line(f, dir, Point([e[o + 3], e[o + 4], e[o + 5]])).ok()
        };
        let (Some(l1), Some(l2)) = (mk(0), mk(6)) else { return Ok(()) };
        let ab = l1.intersect(f, &l2);
        prop_assert_eq!(ab, l2.intersect(f, &l1));

        let p1 = l1.points(f);
        let common: Vec<Point> = l2.points(f).into_iter().filter(|p| p1.contains(p)).collect();
        if l1 == l2 {
            prop_assert_eq!(ab, None);
        } else {
            prop_assert!(common.len() <= 1);
            prop_assert_eq!(ab, common.first().copied());
        }
    }

    #[test]
    fn side_search_matches_brute_force(
        n in 3u32..12,
        raw in prop::collection::vec(prop::collection::btree_set(0u32..12, 2..5), 1..14),
    ) {
        let lines: Vec<Vec<u32>> = raw
            .into_iter()
            .map(|s| s.into_iter().filter(|&p| p < n).collect::<Vec<_>>())
            .filter(|l| l.len() >= 2)
            .collect();
        let g = GenericIncidence::new(n as usize, lines).unwrap();
        let opts = CheckOptions { exec: Exec::Sequential, exhaustive: true };
        let fast = check_triangle_free(&g, opts);
        let slow = brute_force_triangle_check(&g, opts);
        prop_assert_eq!(fast.is_ok(), slow.is_ok());
        prop_assert_eq!(fast.violations, slow.violations);
        if let Some(w) = fast.witness {
            prop_assert!(w.confirms(&g));
        }
        if let Some(w) = check_pls(&g, opts).witness {
            prop_assert!(w.confirms(&g));
        }
    }

    #[test]
    fn grids_are_quadrangles(s in 1u32..9) {
        // (s+1) x (s+1) grid: rows and columns, order (s, 1).
        let m = s + 1;
        let rows = (0..m).map(|i| (0..m).map(|j| i * m + j).collect());
        let cols = (0..m).map(|j| (0..m).map(|i| i * m + j).collect());
        let g = GenericIncidence::new((m * m) as usize, rows.chain(cols).collect()).unwrap();
        assert_quadrangle_iff_equality(&g, Some(true));
    }

    #[test]
    fn complete_bipartite_are_quadrangles(t in 1u32..9) {
        // K_{t+1,t+1} with its edges as lines: order (1, t).
        let m = t + 1;
        let lines = (0..m).flat_map(|a| (0..m).map(move |b| vec![a, m + b])).collect();
        let g = GenericIncidence::new((2 * m) as usize, lines).unwrap();
        assert_quadrangle_iff_equality(&g, Some(true));
    }

    #[test]
    fn cycles(n in 4u32..40) {
        assert_quadrangle_iff_equality(&samples::cycle(n), Some(n == 4));
    }
}

fn assert_quadrangle_iff_equality(g: &GenericIncidence, expect: Option<bool>) {
    let opts = CheckOptions::sequential();
    let report = counting_bound(g, opts).unwrap();
    assert!(report.holds);
    let gq = check_gq(g, opts);
    assert_eq!(report.equality, gq.is_ok(), "{report:?} {:?}", gq.witness);
    if let Some(e) = expect {
        assert_eq!(report.equality, e);
    }
    if let Some(w) = gq.witness {
        assert!(w.confirms(g));
    }
}

/// The quadrangle of order (2, 2): pairs from a 6-set, and the 15 ways of
/// splitting the 6-set into three pairs.
#[test]
fn doily_is_a_quadrangle() {
    let pairs: Vec<(u32, u32)> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .collect();
    let id = |a: u32, b: u32| {
        pairs
            .iter()
            .position(|&p| p == (a.min(b), a.max(b)))
            .unwrap() as u32
    };
    let mut lines = Vec::new();
    for b in 1..6 {
        let rest: Vec<u32> = (1..6).filter(|&x| x != b).collect();
        // rest[0] pairs with each of the other three
        for k in 1..4 {
            let others: Vec<u32> = rest[1..]
                .iter()
                .copied()
                .filter(|&x| x != rest[k])
                .collect();
            lines.push(vec![
                id(0, b),
                id(rest[0], rest[k]),
                id(others[0], others[1]),
            ]);
        }
    }
    let g = GenericIncidence::new(15, lines).unwrap();
    assert_eq!(g.num_lines(), 15);
    let report = counting_bound(&g, CheckOptions::sequential()).unwrap();
    assert_eq!((report.s_order, report.t_order, report.bound), (2, 2, 15));
    assert_quadrangle_iff_equality(&g, Some(true));
}

#[test]
fn constructed_classes_are_not_quadrangles() {
    for q in [3, 4, 5] {
        let f = field(q);
        let class = qpack::build_class(f, Fe::ONE).unwrap();
        assert_quadrangle_iff_equality(&GenericIncidence::from_class(f, &class), Some(false));
    }
}
