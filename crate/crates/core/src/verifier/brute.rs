//! Line-triple enumeration. Independent of the side-labelling search in
//! `checks`; only used as an oracle on small structures.

use super::{CheckOptions, GenericIncidence, Report, Witness};

fn common(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn triangles_from(g: &GenericIncidence, a: usize, exhaustive: bool) -> (Option<Witness>, u64) {
    let n = g.num_lines();
    let la = g.line(a);
    let mut first = None;
    let mut count = 0u64;
    for b in a + 1..n {
        let lb = g.line(b);
        let ab = common(la, lb);
        if ab.is_empty() {
            continue;
        }
        for c in b + 1..n {
            let lc = g.line(c);
            let bc = common(lb, lc);
            let ca = common(lc, la);
            for &x in &ab {
                if lc.binary_search(&x).is_ok() {
                    continue;
                }
                for &y in &bc {
                    if la.binary_search(&y).is_ok() {
                        continue;
                    }
                    for &z in &ca {
                        if lb.binary_search(&z).is_ok() {
                            continue;
                        }
                        count += 1;
                        if first.is_none() {
                            first = Some(Witness::Triangle {
                                lines: [a, b, c],
                                points: [x, y, z],
                            });
                            if !exhaustive {
                                return (first, 1);
                            }
                        }
                    }
                }
            }
        }
    }
    (first, count)
}

/// Triangle search over all line triples, `O(|L|^3)`.
pub fn brute_force_triangle_check(g: &GenericIncidence, opts: CheckOptions) -> Report {
    let lines = 0..g.num_lines();
    let (first, count) = if opts.exhaustive {
        let parts = opts.exec.map(lines, |a| triangles_from(g, a, true));
        let count = parts.iter().map(|(_, c)| c).sum();
        (parts.into_iter().find_map(|(w, _)| w), count)
    } else {
        (
            opts.exec
                .find_first(lines, |a| triangles_from(g, a, false).0),
            1,
        )
    };
    match first {
        Some(w) => Report::fail(w, count),
        None => Report::pass(()),
    }
}
