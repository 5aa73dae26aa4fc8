//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary so the report is always visible.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpack::bounds::{self, exponent_analysis, min_total_degree, Constants, Orientation, QSearch};
use qpack::construction::build_family_with;
use qpack::format::GeometryFile;
use qpack::verifier::{
    brute_force_triangle_check, check_disjoint_classes, check_gq, check_order, check_pls,
    check_triangle_free, check_union_pls, counting_bound, samples, CheckOptions, GenericIncidence,
};
use qpack::{build_class, make_field, Exec, Fe, GeometryFamily, OrderParams};

const QS: [u64; 7] = [3, 4, 5, 7, 8, 9, 11];

fn exhaustive(exec: Exec) -> CheckOptions {
    CheckOptions {
        exec,
        exhaustive: true,
    }
}

fn family(q: u64, exec: Exec) -> GeometryFamily {
    build_family_with(make_field(q).unwrap(), None, exec).unwrap()
}

/// Every property of the family, exhaustively. Returns the elapsed time.
fn full_suite(fam: &GeometryFamily, exec: Exec) -> Duration {
    let start = Instant::now();
    let q = fam.field.order() as usize;
    let opts = exhaustive(exec);
    for (i, class) in fam.classes.iter().enumerate() {
        let g = GenericIncidence::from_class(&fam.field, class);
        let pls = check_pls(&g, opts);
        assert!(
            pls.is_ok() && pls.violations == 0,
            "q={q} class {i}: {:?}",
            pls.witness
        );
        let order = check_order(&g, opts).unwrap();
        assert_eq!(
            order.value,
            Some(OrderParams {
                s_order: q - 1,
                t_order: q - 2
            }),
            "q={q} class {i}: {:?}",
            order.witness
        );
        let tri = check_triangle_free(&g, opts);
        assert!(
            tri.is_ok() && tri.violations == 0,
            "q={q} class {i}: {:?}",
            tri.witness
        );
    }
    let disjoint = check_disjoint_classes(fam, opts);
    assert!(
        disjoint.is_ok() && disjoint.violations == 0,
        "q={q}: {:?}",
        disjoint.witness
    );
    let union = check_union_pls(fam, opts);
    assert!(
        union.is_ok() && union.violations == 0,
        "q={q}: {:?}",
        union.witness
    );
    start.elapsed()
}

fn ac1(families: &[GeometryFamily]) -> String {
    let mut notes = Vec::new();
    for fam in families {
        let q = fam.field.order();
        let elapsed = full_suite(fam, Exec::Sequential);
        if q == 11 {
            // (q - 1) classes of (q - 1) q^2 lines
            assert_eq!(GenericIncidence::from_family(fam).num_lines(), 12_100);
            assert!(elapsed < Duration::from_secs(300), "q=11 took {elapsed:?}");
        }
        notes.push(format!("q={q} {:.2}s", elapsed.as_secs_f64()));
    }
    let fam13 = family(13, Exec::Parallel);
    let elapsed = full_suite(&fam13, Exec::Parallel);
    assert!(elapsed < Duration::from_secs(900), "q=13 took {elapsed:?}");
    notes.push(format!("q=13 {:.2}s (parallel)", elapsed.as_secs_f64()));
    notes.join(", ")
}

fn ac2(families: &[GeometryFamily]) -> String {
    for fam in families {
        let q = fam.field.order() as usize;
        for class in &fam.classes {
            assert_eq!(class.lines.len(), (q - 1) * q * q, "q={q}");
            let g = GenericIncidence::from_class(&fam.field, class);
            assert_eq!(g.num_points(), q * q * q);
            for p in 0..g.num_points() as u32 {
                assert_eq!(g.degree(p), q - 1, "q={q} point {p}");
            }
        }
    }
    "q=5: 100 lines, degree 4".into()
}

/// Random edits of a triangle-free class: injected triangles, merged lines,
/// extra short lines, shrunk lines.
fn mutate(base: &GenericIncidence, rng: &mut ChaCha8Rng) -> GenericIncidence {
    let n = base.num_points() as u32;
    let mut lines: Vec<Vec<u32>> = base.lines().to_vec();
    let edits = rng.gen_range(1..=3);
    for _ in 0..edits {
        match rng.gen_range(0..4) {
            0 => {
                let pts: Vec<u32> = (0..n)
                    .collect::<Vec<_>>()
                    .choose_multiple(rng, 3)
                    .copied()
                    .collect();
                let (x, y, z) = (pts[0], pts[1], pts[2]);
                lines.extend([vec![x, y], vec![y, z], vec![z, x]]);
            }
            1 => {
                let i = rng.gen_range(0..lines.len());
                let mut j = rng.gen_range(0..lines.len());
                while j == i {
                    j = rng.gen_range(0..lines.len());
                }
                let mut merged = lines[i].clone();
                merged.extend(lines[j].iter().copied());
                merged.sort_unstable();
                merged.dedup();
                let (hi, lo) = (i.max(j), i.min(j));
                lines.swap_remove(hi);
                lines.swap_remove(lo);
                lines.push(merged);
            }
            2 => {
                let x = rng.gen_range(0..n);
                let mut y = rng.gen_range(0..n);
                while y == x {
                    y = rng.gen_range(0..n);
                }
                lines.push(vec![x, y]);
            }
            _ => {
                let i = rng.gen_range(0..lines.len());
                if lines[i].len() > 2 {
                    let k = rng.gen_range(0..lines[i].len());
                    lines[i].remove(k);
                }
            }
        }
    }
    GenericIncidence::new(base.num_points(), lines).unwrap()
}

fn ac3() -> String {
    let opts = CheckOptions::sequential();
    let mut bases = Vec::new();
    for (q, size) in [(3, 18), (4, 48)] {
        let f = make_field(q).unwrap();
        let g = GenericIncidence::from_class(&f, &build_class(&f, Fe::ONE).unwrap());
        assert_eq!(g.num_lines(), size);
        let fast = check_triangle_free(&g, opts);
        let slow = brute_force_triangle_check(&g, opts);
        assert!(fast.is_ok() && slow.is_ok(), "q={q}");
        bases.push(g);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ac03);
    let (mut with_triangles, mut non_pls) = (0, 0);
    for i in 0..50 {
        let g = mutate(&bases[i % 2], &mut rng);
        let ex = exhaustive(Exec::Sequential);
        let fast = check_triangle_free(&g, ex);
        let slow = brute_force_triangle_check(&g, ex);
        assert_eq!(fast.is_ok(), slow.is_ok(), "mutant {i}: verdicts differ");
        assert_eq!(
            fast.violations, slow.violations,
            "mutant {i}: counts differ"
        );
        for w in [&fast.witness, &slow.witness].into_iter().flatten() {
            assert!(w.confirms(&g), "mutant {i}: bogus triangle witness {w:?}");
        }
        let pls = check_pls(&g, ex);
        if let Some(w) = &pls.witness {
            assert!(w.confirms(&g), "mutant {i}: bogus PLS witness {w:?}");
            non_pls += 1;
        }
        with_triangles += usize::from(!fast.is_ok());
    }
    assert!(with_triangles > 0 && non_pls > 0, "mutations too weak");
    format!("50 mutants, {with_triangles} with triangles, {non_pls} non-PLS")
}

fn ac4(families: &[GeometryFamily]) -> String {
    let opts = CheckOptions::sequential();
    for fam in families {
        let q = fam.field.order() as u64;
        for class in &fam.classes {
            let g = GenericIncidence::from_class(&fam.field, class);
            let c = counting_bound(&g, opts).unwrap();
            assert_eq!(c.num_points, q * q * q);
            assert_eq!(c.bound, ((q - 1) * (q - 2) + 1) * q);
            assert!(c.holds && !c.equality, "q={q}: {c:?}");
            let gq = check_gq(&g, opts);
            let w = gq.witness.expect("classes are not generalized quadrangles");
            assert!(w.confirms(&g));
        }
    }
    let c4 = samples::cycle(4);
    let r4 = counting_bound(&c4, opts).unwrap();
    assert_eq!((r4.bound, r4.num_points, r4.equality), (4, 4, true));
    assert!(check_gq(&c4, opts).is_ok());
    let c5 = samples::cycle(5);
    let r5 = counting_bound(&c5, opts).unwrap();
    assert_eq!(
        (r5.bound, r5.num_points, r5.holds, r5.equality),
        (4, 5, true, false)
    );
    assert!(check_gq(&c5, opts).witness.unwrap().confirms(&c5));
    "q=5: 125 >= 65; C4 4 = 4; C5 4 < 5".into()
}

fn ac5() -> String {
    let start = Instant::now();
    let b = bounds::bound_main(2, 3).unwrap();
    assert_eq!((b.q, b.bound), (17, 4913));
    let cap = (48.0 * 2f64.ln()).powi(3);
    assert!((b.bound as f64) <= cap && (b.cap - cap).abs() <= 1e-9 * cap);

    let grid = bounds::scan(
        2..=12,
        3..=12,
        Constants::default(),
        QSearch::Prime,
        Exec::Sequential,
    )
    .unwrap();
    assert_eq!(grid.len(), 11 * 10);
    for rep in &grid {
        let q = rep.q_found as f64;
        assert!(rep.threshold <= q && q < 2.0 * rep.threshold, "{rep:?}");
        assert!(rep.conditions_ok, "{rep:?}");
        assert!((rep.bound_main as f64) <= rep.cap_main, "{rep:?}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    format!("110 cells in {:.1}ms", elapsed.as_secs_f64() * 1e3)
}

fn ac6() -> String {
    const TOL: f64 = 1e-12;
    for o in [Orientation::HighT, Orientation::HighS] {
        let e = exponent_analysis(1.0, o).unwrap();
        assert_eq!(
            (e.k_exponent, e.r_exponent, e.total_degree),
            (3.0, 3.0, 6.0)
        );
    }
    let grid: Vec<f64> = (0..=200).map(|i| 1.0 + 0.01 * i as f64).collect();
    for &a in &grid {
        let t = exponent_analysis(a, Orientation::HighT).unwrap();
        let s = exponent_analysis(a, Orientation::HighS).unwrap();
        assert!((t.k_exponent - (2.0 + a)).abs() < TOL && (t.r_exponent - (2.0 + a)).abs() < TOL);
        assert!((s.k_exponent - (2.0 * a + 1.0)).abs() < TOL);
        assert!((s.r_exponent - (2.0 + 1.0 / a)).abs() < TOL);
        if a > 1.0 {
            assert!(
                t.total_degree > 6.0 + TOL && s.total_degree > 6.0 + TOL,
                "alpha={a}"
            );
        }
    }
    let best = min_total_degree(&grid).unwrap();
    assert_eq!(best.alpha, 1.0);
    assert!((best.total_degree - 6.0).abs() < TOL);
    "min at alpha=1, degree 6".into()
}

fn ac7(families: &[GeometryFamily]) -> String {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = make_field(q).unwrap();
        let els: Vec<Fe> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, Fe::ZERO), a);
            assert_eq!(f.mul(a, Fe::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE, "q={q}");
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
    assert_eq!(make_field(9).unwrap().spec().modulus, vec![1, 0, 1]);

    for fam in families {
        let text = GeometryFile::from_family(fam).to_json();
        let back = GeometryFile::parse(&text).unwrap().to_family().unwrap();
        assert_eq!(&back, fam);
        assert_eq!(GeometryFile::from_family(&back).to_json(), text);
    }
    "axioms for 7 fields, GF(9) = x^2+1, 7 files round-trip".into()
}

fn criterion(id: u32, name: &str, f: impl FnOnce() -> String) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(f));
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(note) => {
            println!("PASS  AC{id} {name} [{secs:.2}s] {note}");
            true
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            println!("FAIL  AC{id} {name} [{secs:.2}s] {msg}");
            false
        }
    }
}

fn main() {
    // `cargo test -- <filter>` passes args through; only honour --list so
    // test listing does not run the suite.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    panic::set_hook(Box::new(|_| {}));
    let families: Vec<GeometryFamily> = QS.iter().map(|&q| family(q, Exec::Sequential)).collect();

    let results = [
        criterion(1, "full verification of the packings", || ac1(&families)),
        criterion(2, "class cardinalities and degrees", || ac2(&families)),
        criterion(3, "triangle oracle equivalence", ac3),
        criterion(4, "counting bound and GQ checks", || ac4(&families)),
        criterion(5, "main bound numerics", ac5),
        criterion(6, "exponent analysis", ac6),
        criterion(7, "field axioms and round-trip", || ac7(&families)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
