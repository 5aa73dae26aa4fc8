use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use serde::Serialize;

use qpack::bounds::{self, BoundReport, Constants, Orientation, QSearch};
use qpack::format::GeometryFile;
use qpack::{build_family, make_field, Exec};

use crate::{ConstantArgs, Failure};

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let line = serde_json::to_string(value).map_err(Failure::usage)?;
    writeln!(io::stdout().lock(), "{line}")?;
    Ok(())
}

pub fn construct(q: u64, count: Option<usize>, out: Option<&Path>) -> Result<u8, Failure> {
    let field = make_field(q).map_err(Failure::usage)?;
    if q < 3 {
        return Err(Failure::usage(format!("q must be at least 3, got {q}")));
    }
    let family = build_family(field, count).map_err(Failure::usage)?;
    let json = GeometryFile::from_family(&family).to_json();

    let points = family.num_points();
    let classes = family.classes.len();
    let per_class = family.classes.first().map_or(0, |c| c.lines.len());
    match out {
        Some(path) => {
            fs::write(path, &json)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            print_json(&serde_json::json!({
                "q": q,
                "points": points,
                "classes": classes,
                "lines_per_class": per_class,
                "out": path.display().to_string(),
            }))?;
        }
        None => io::stdout().lock().write_all(json.as_bytes())?,
    }
    eprintln!("{points} points, {classes} classes x {per_class} lines over GF({q})");
    Ok(0)
}

impl ConstantArgs {
    fn constants(&self) -> Constants {
        Constants {
            hrs: self.c_hrs,
            bbl: self.c_bbl,
            range_lower: self.c_lower,
            range_upper: self.c_upper,
        }
    }

    fn search(&self) -> QSearch {
        if self.prime_powers {
            QSearch::PrimePower
        } else {
            QSearch::Prime
        }
    }
}

pub fn bound(k: u64, r: u64, c: &ConstantArgs) -> Result<u8, Failure> {
    let report = bounds::compare_with(k, r, c.constants(), c.search()).map_err(Failure::usage)?;
    print_json(&report)?;
    Ok(0)
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, Failure> {
    let bad = || {
        Failure::usage(format!(
            "bad range {text:?}; expected a..b or a single integer"
        ))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim_start_matches('=').trim()),
        None => (text.trim(), text.trim()),
    };
    let lo: u64 = lo.parse().map_err(|_| bad())?;
    let hi: u64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

#[derive(Serialize)]
struct ScanRow {
    k: u64,
    r: u64,
    threshold: f64,
    q: u64,
    bound_main: u128,
    cap_main: f64,
    bound_fglps: u128,
    bound_hrs: f64,
    hrs_applicable: bool,
    bound_bbl: f64,
    winner: &'static str,
}

impl From<&BoundReport> for ScanRow {
    fn from(b: &BoundReport) -> Self {
        ScanRow {
            k: b.k,
            r: b.r,
            threshold: b.threshold,
            q: b.q_found,
            bound_main: b.bound_main,
            cap_main: b.cap_main,
            bound_fglps: b.bound_fglps,
            bound_hrs: b.bound_hrs.bound.value,
            hrs_applicable: b.hrs_applicable,
            bound_bbl: b.bound_bbl.value,
            winner: b.winner.as_str(),
        }
    }
}

const MAX_SCAN_CELLS: u64 = 1_000_000;

pub fn scan(k: &str, r: &str, c: &ConstantArgs, out: Option<&Path>) -> Result<u8, Failure> {
    let (ks, rs) = (parse_range(k)?, parse_range(r)?);
    let cells = (ks.end() - ks.start() + 1).saturating_mul(rs.end() - rs.start() + 1);
    if cells > MAX_SCAN_CELLS {
        return Err(Failure::usage(format!(
            "grid has {cells} cells; at most {MAX_SCAN_CELLS} supported"
        )));
    }
    let reports =
        bounds::scan(ks, rs, c.constants(), c.search(), Exec::default()).map_err(Failure::usage)?;

    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(
            fs::File::create(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    for rep in &reports {
        w.serialize(ScanRow::from(rep)).map_err(Failure::usage)?;
    }
    w.flush()?;
    eprintln!("{} rows", reports.len());
    Ok(0)
}

pub fn exponent(
    alpha: Option<f64>,
    orientation: Option<Orientation>,
    scan: bool,
) -> Result<u8, Failure> {
    if let Some(alpha) = alpha {
        let orientations = match orientation {
            Some(o) => vec![o],
            None => vec![Orientation::HighT, Orientation::HighS],
        };
        for o in orientations {
            print_json(&bounds::exponent_analysis(alpha, o).map_err(Failure::usage)?)?;
        }
    }
    if scan {
        let grid: Vec<f64> = (0..=200).map(|i| 1.0 + 0.01 * i as f64).collect();
        let best = bounds::min_total_degree(&grid).map_err(Failure::usage)?;
        print_json(&serde_json::json!({
            "scan": {"from": 1.0, "to": 3.0, "step": 0.01},
            "alpha": best.alpha,
            "total_degree": best.total_degree,
        }))?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::parse_range;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..4").unwrap(), 2..=4);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("4..2").is_err());
        assert!(parse_range("a..2").is_err());
        assert!(parse_range("").is_err());
    }
}
