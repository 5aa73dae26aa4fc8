use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use qpack::format::{parse_structure, Structure};
use qpack::par::with_jobs;
use qpack::verifier::{self, CheckOptions, GenericIncidence, Report, Witness};
use qpack::Exec;

use crate::{Check, Failure};

#[derive(Serialize)]
struct Record {
    check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<String>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    elapsed_ms: f64,
}

impl Record {
    fn new(check: Check, class: Option<String>) -> Self {
        Record {
            check: name(check),
            class,
            verdict: "pass",
            witness: None,
            violations: None,
            value: None,
            error: None,
            reason: None,
            elapsed_ms: 0.0,
        }
    }

    fn report<T: Serialize>(mut self, r: Report<T>, exhaustive: bool) -> Self {
        if !r.is_ok() {
            self.verdict = "fail";
        }
        if exhaustive {
            self.violations = Some(r.violations);
        }
        self.witness = r.witness;
        self.value = r
            .value
            .and_then(|v| serde_json::to_value(v).ok())
            .filter(|v| !v.is_null());
        self
    }

    fn error(mut self, e: impl std::fmt::Display) -> Self {
        self.verdict = "fail";
        self.error = Some(e.to_string());
        self
    }
}

fn name(check: Check) -> &'static str {
    match check {
        Check::Pls => "pls",
        Check::Order => "order",
        Check::Triangle => "triangle",
        Check::Disjoint => "disjoint",
        Check::Union => "union",
        Check::Gq => "gq",
        Check::Counting => "counting",
    }
}

/// `QPACK_JOBS` wins over `--jobs`.
fn resolve_jobs(flag: usize) -> Result<usize, Failure> {
    match std::env::var("QPACK_JOBS") {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
            Failure::usage(format!(
                "QPACK_JOBS must be a non-negative integer, got {v:?}"
            ))
        }),
        _ => Ok(flag),
    }
}

fn timed(f: impl FnOnce() -> Record) -> Record {
    let start = Instant::now();
    let mut rec = f();
    rec.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

fn per_structure(
    check: Check,
    g: &GenericIncidence,
    class: Option<String>,
    opts: CheckOptions,
) -> Record {
    let rec = Record::new(check, class);
    let ex = opts.exhaustive;
    match check {
        Check::Pls => rec.report(verifier::check_pls(g, opts), ex),
        Check::Order => match verifier::check_order(g, opts) {
            Ok(r) => rec.report(r, ex),
            Err(e) => rec.error(e),
        },
        Check::Triangle => rec.report(verifier::check_triangle_free(g, opts), ex),
        Check::Gq => rec.report(verifier::check_gq(g, opts), ex),
        Check::Counting => match verifier::counting_bound(g, opts) {
            Ok(c) => {
                let mut rec = rec;
                if !c.holds {
                    rec.verdict = "fail";
                }
                rec.value = serde_json::to_value(c).ok();
                rec
            }
            Err(e) => rec.error(e),
        },
        Check::Disjoint | Check::Union => unreachable!("family checks are dispatched separately"),
    }
}

fn run_checks(structure: &Structure, checks: &[Check], opts: CheckOptions) -> Vec<Record> {
    let mut records = Vec::new();
    for &check in checks {
        match (structure, check) {
            (Structure::Geometry(fam), Check::Disjoint) => records.push(timed(|| {
                Record::new(check, None)
                    .report(verifier::check_disjoint_classes(fam, opts), opts.exhaustive)
            })),
            (Structure::Geometry(fam), Check::Union) => records.push(timed(|| {
                Record::new(check, None)
                    .report(verifier::check_union_pls(fam, opts), opts.exhaustive)
            })),
            (Structure::Plain(_), Check::Disjoint | Check::Union) => {
                let mut rec = Record::new(check, None);
                rec.verdict = "skipped";
                rec.reason = Some("needs a geometry file with line classes".into());
                records.push(rec);
            }
            (Structure::Geometry(fam), _) => {
                for class in &fam.classes {
                    let key = serde_json::to_string(&fam.field.coeffs(class.lambda))
                        .expect("integer arrays serialize");
                    records.push(timed(|| {
                        let g = GenericIncidence::from_class(&fam.field, class);
                        per_structure(check, &g, Some(key), opts)
                    }));
                }
            }
            (Structure::Plain(g), _) => records.push(timed(|| per_structure(check, g, None, opts))),
        }
    }
    records
}

pub fn run(path: &Path, checks: &[Check], exhaustive: bool, jobs: usize) -> Result<u8, Failure> {
    let jobs = resolve_jobs(jobs)?;
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let structure =
        parse_structure(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;

    let mut unique = Vec::new();
    for &c in checks {
        if !unique.contains(&c) {
            unique.push(c);
        }
    }
    let opts = CheckOptions {
        exec: if jobs == 1 {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
        exhaustive,
    };
    let records = with_jobs(jobs, || run_checks(&structure, &unique, opts));

    let mut out = io::stdout().lock();
    for rec in &records {
        let line = serde_json::to_string(rec).map_err(Failure::usage)?;
        writeln!(out, "{line}")?;
    }
    let failed = records.iter().filter(|r| r.verdict == "fail").count();
    eprintln!("{} checks run, {failed} failed", records.len());
    Ok(if failed == 0 { 0 } else { 1 })
}
