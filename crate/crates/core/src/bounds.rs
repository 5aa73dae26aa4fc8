//! Upper bounds on the minimum degree `s_r(K_{k+1})` of `r`-Ramsey-minimal
//! graphs for the clique `K_{k+1}`.
//!
//! The moment-curve packing gives `s_r(K_{k+1}) <= q^3` for the smallest
//! prime `q >= 4 k r ln k`, and Bertrand's postulate caps that at
//! `(8 k r ln k)^3`. The other formulas here are the earlier published
//! bounds, kept for comparison. Where a bound carries an absolute constant
//! that was never made explicit it is evaluated at a caller-supplied value
//! (default 1) and flagged; such values never decide a comparison.

use serde::Serialize;
use thiserror::Error;

use crate::gf::{next_prime_geq, next_prime_power_geq};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("packing hypotheses fail for q = {q}, k = {k}, r = {r}")]
    ConditionsFailed { q: u64, k: u64, r: u64 },
    #[error("alpha = {0} must be at least 1")]
    AlphaOutOfRange(f64),
    #[error("integer overflow evaluating {0}")]
    Overflow(&'static str),
}

fn check_main_range(k: u64, r: u64) -> Result<(), BoundsError> {
    if k < 2 || r < 3 {
        return Err(BoundsError::OutOfRange(format!(
            "need k >= 2 and r >= 3, got k = {k}, r = {r}"
        )));
    }
    Ok(())
}

/// `4 k r ln k`.
pub fn threshold(k: u64, r: u64) -> Result<f64, BoundsError> {
    check_main_range(k, r)?;
    Ok(4.0 * k as f64 * r as f64 * (k as f64).ln())
}

/// `(8 k r ln k)^3`, the analytic cap on [`bound_main`].
pub fn cap_main(k: u64, r: u64) -> Result<f64, BoundsError> {
    Ok((2.0 * threshold(k, r)?).powi(3))
}

/// How the field order is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QSearch {
    /// Smallest prime above the threshold.
    #[default]
    Prime,
    /// Smallest prime power above the threshold. The main bound is stated for
    /// primes; the packing exists for every prime power, so this is also valid.
    PrimePower,
}

/// Smallest prime `q >= 4 k r ln k`.
pub fn find_q(k: u64, r: u64) -> Result<u64, BoundsError> {
    find_q_with(k, r, QSearch::Prime)
}

pub fn find_q_with(k: u64, r: u64, search: QSearch) -> Result<u64, BoundsError> {
    let t = threshold(k, r)?;
    let next = |m: u64| match search {
        QSearch::Prime => next_prime_geq(m),
        QSearch::PrimePower => next_prime_power_geq(m),
    };
    let mut q = next(t.ceil() as u64);
    // guard against the rounded ceiling landing below the real threshold
    while (q as f64) < t {
        q = next(q + 1);
    }
    assert!(
        (q as f64) <= 2.0 * t,
        "Bertrand cap violated: q = {q}, threshold = {t}"
    );
    assert!(r < q, "family size r = {r} needs r <= q - 1, q = {q}");
    Ok(q)
}

/// Hypotheses for packing `r` classes of order `(q-1, q-2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaConditions {
    /// `q - 1 >= 3 r k ln k`
    pub s_condition: bool,
    /// `q - 2 >= 3 k (1 + ln r)`
    pub t_condition: bool,
    /// `r <= q - 1`
    pub family_size: bool,
}

impl LemmaConditions {
    pub fn all(&self) -> bool {
        self.s_condition && self.t_condition && self.family_size
    }
}

pub fn lemma_conditions(q: u64, k: u64, r: u64) -> LemmaConditions {
    let (qf, kf, rf) = (q as f64, k as f64, r as f64);
    LemmaConditions {
        s_condition: qf - 1.0 >= 3.0 * rf * kf * kf.ln(),
        t_condition: qf - 2.0 >= 3.0 * kf * (1.0 + rf.ln()),
        family_size: r < q,
    }
}

/// `q^3` for `q = find_q(k, r)`, with the cap `(8 k r ln k)^3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MainBound {
    pub q: u64,
    pub bound: u128,
    pub cap: f64,
}

pub fn bound_main(k: u64, r: u64) -> Result<MainBound, BoundsError> {
    bound_main_with(k, r, QSearch::Prime)
}

pub fn bound_main_with(k: u64, r: u64, search: QSearch) -> Result<MainBound, BoundsError> {
    let q = find_q_with(k, r, search)?;
    if !lemma_conditions(q, k, r).all() {
        return Err(BoundsError::ConditionsFailed { q, k, r });
    }
    let bound = (q as u128)
        .checked_pow(3)
        .ok_or(BoundsError::Overflow("q^3"))?;
    Ok(MainBound {
        q,
        bound,
        cap: cap_main(k, r)?,
    })
}

/// `8 k^6 r^3`, exact.
pub fn bound_fglps(k: u64, r: u64) -> Result<u128, BoundsError> {
    check_main_range(k, r)?;
    (k as u128)
        .checked_pow(6)
        .and_then(|k6| (r as u128).checked_pow(3).and_then(|r3| k6.checked_mul(r3)))
        .and_then(|v| v.checked_mul(8))
        .ok_or(BoundsError::Overflow("8 k^6 r^3"))
}

/// A bound evaluated with an unspecified absolute constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantBound {
    pub value: f64,
    pub constant: f64,
    /// Always true: the constant is not known, `value` is for orientation only.
    pub constant_unspecified: bool,
}

fn check_constant(c: f64) -> Result<(), BoundsError> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(BoundsError::OutOfRange(format!(
            "constant must be positive, got {c}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HrsBound {
    #[serde(flatten)]
    pub bound: ConstantBound,
    /// The bound is only claimed for `r < k^2`.
    pub applicable: bool,
}

/// `C (r ln r)^3 (k ln k)^2`, claimed for `r < k^2`.
pub fn bound_hrs(k: u64, r: u64, c: f64) -> Result<HrsBound, BoundsError> {
    if k < 2 || r < 2 {
        return Err(BoundsError::OutOfRange(format!(
            "need k >= 2 and r >= 2, got k = {k}, r = {r}"
        )));
    }
    check_constant(c)?;
    let (kf, rf) = (k as f64, r as f64);
    Ok(HrsBound {
        bound: ConstantBound {
            value: c * (rf * rf.ln()).powi(3) * (kf * kf.ln()).powi(2),
            constant: c,
            constant_unspecified: true,
        },
        applicable: (r as u128) < (k as u128) * (k as u128),
    })
}

/// `C k^5 r^{5/2}`.
pub fn bound_bbl(k: u64, r: u64, c: f64) -> Result<ConstantBound, BoundsError> {
    check_main_range(k, r)?;
    check_constant(c)?;
    Ok(ConstantBound {
        value: c * (k as f64).powi(5) * (r as f64).powf(2.5),
        constant: c,
        constant_unspecified: true,
    })
}

/// Reference range `c_k r^2 ln r / ln ln r <= s_r <= C_k r^2 (ln r)^{8k^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceRange {
    pub lower: f64,
    /// May be `inf` for large `k`; see `upper_log10`.
    pub upper: f64,
    pub upper_log10: f64,
    pub c_lower: f64,
    pub c_upper: f64,
    pub constant_unspecified: bool,
}

pub fn reference_range(
    k: u64,
    r: u64,
    c_lower: f64,
    c_upper: f64,
) -> Result<ReferenceRange, BoundsError> {
    if k < 2 {
        return Err(BoundsError::OutOfRange(format!("need k >= 2, got {k}")));
    }
    let rf = r as f64;
    if rf <= std::f64::consts::E {
        return Err(BoundsError::OutOfRange(format!(
            "need r > e so that ln ln r > 0, got r = {r}"
        )));
    }
    check_constant(c_lower)?;
    check_constant(c_upper)?;
    let exponent = 8.0 * (k as f64).powi(2);
    let upper_log10 = c_upper.log10() + 2.0 * rf.log10() + exponent * rf.ln().log10();
    Ok(ReferenceRange {
        lower: c_lower * rf * rf * rf.ln() / rf.ln().ln(),
        upper: c_upper * rf * rf * rf.ln().powf(exponent),
        upper_log10,
        c_lower,
        c_upper,
        constant_unspecified: true,
    })
}

/// Unknown constants to evaluate the comparison bounds with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub hrs: f64,
    pub bbl: f64,
    pub range_lower: f64,
    pub range_upper: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            hrs: 1.0,
            bbl: 1.0,
            range_lower: 1.0,
            range_upper: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    BoundMain,
    BoundFglps,
    Tie,
}

impl Winner {
    pub fn as_str(self) -> &'static str {
        match self {
            Winner::BoundMain => "bound_main",
            Winner::BoundFglps => "bound_fglps",
            Winner::Tie => "tie",
        }
    }
}

/// Every bound at one `(k, r)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: u64,
    pub r: u64,
    pub threshold: f64,
    pub q_search: QSearch,
    pub q_found: u64,
    pub bound_main: u128,
    pub cap_main: f64,
    pub bound_fglps: u128,
    pub bound_hrs: HrsBound,
    pub hrs_applicable: bool,
    pub bound_bbl: ConstantBound,
    pub reference_range: ReferenceRange,
    pub conditions: LemmaConditions,
    pub conditions_ok: bool,
    /// Decided between the two fully explicit bounds only.
    pub winner: Winner,
}

pub fn compare(k: u64, r: u64) -> Result<BoundReport, BoundsError> {
    compare_with(k, r, Constants::default(), QSearch::Prime)
}

pub fn compare_with(
    k: u64,
    r: u64,
    constants: Constants,
    search: QSearch,
) -> Result<BoundReport, BoundsError> {
    let threshold = threshold(k, r)?;
    let main = bound_main_with(k, r, search)?;
    let fglps = bound_fglps(k, r)?;
    let hrs = bound_hrs(k, r, constants.hrs)?;
    let conditions = lemma_conditions(main.q, k, r);
    let winner = match main.bound.cmp(&fglps) {
        std::cmp::Ordering::Less => Winner::BoundMain,
        std::cmp::Ordering::Greater => Winner::BoundFglps,
        std::cmp::Ordering::Equal => Winner::Tie,
    };
    Ok(BoundReport {
        k,
        r,
        threshold,
        q_search: search,
        q_found: main.q,
        bound_main: main.bound,
        cap_main: main.cap,
        bound_fglps: fglps,
        bound_hrs: hrs,
        hrs_applicable: hrs.applicable,
        bound_bbl: bound_bbl(k, r, constants.bbl)?,
        reference_range: reference_range(k, r, constants.range_lower, constants.range_upper)?,
        conditions,
        conditions_ok: conditions.all(),
        winner,
    })
}

/// Reports for every `(k, r)` in the grid, `k`-major.
pub fn scan(
    ks: std::ops::RangeInclusive<u64>,
    rs: std::ops::RangeInclusive<u64>,
    constants: Constants,
    search: QSearch,
    exec: Exec,
) -> Result<Vec<BoundReport>, BoundsError> {
    let cells: Vec<(u64, u64)> = ks.flat_map(|k| rs.clone().map(move |r| (k, r))).collect();
    exec.map(0..cells.len(), |i| {
        let (k, r) = cells[i];
        compare_with(k, r, constants, search)
    })
    .into_iter()
    .collect()
}

/// Which parameter carries the exponent `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Order `(q, q^alpha)`.
    HighT,
    /// Order `(q^alpha, q)`.
    HighS,
}

/// Lower-bound exponents of `|P| = Omega(k^a r^b)` for packings of order
/// `(q, q^alpha)` or `(q^alpha, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentReport {
    pub alpha: f64,
    pub orientation: Orientation,
    pub k_exponent: f64,
    pub r_exponent: f64,
    pub total_degree: f64,
}

pub fn exponent_analysis(
    alpha: f64,
    orientation: Orientation,
) -> Result<ExponentReport, BoundsError> {
    if alpha.is_nan() || alpha < 1.0 || !alpha.is_finite() {
        return Err(BoundsError::AlphaOutOfRange(alpha));
    }
    let (k_exponent, r_exponent) = match orientation {
        Orientation::HighT => (2.0 + alpha, 2.0 + alpha),
        Orientation::HighS => (2.0 * alpha + 1.0, 2.0 + 1.0 / alpha),
    };
    Ok(ExponentReport {
        alpha,
        orientation,
        k_exponent,
        r_exponent,
        total_degree: k_exponent + r_exponent,
    })
}

/// Smallest total degree over both orientations across `grid`; ties go to
/// the earlier grid entry, then to `HighT`.
pub fn min_total_degree(grid: &[f64]) -> Result<ExponentReport, BoundsError> {
    let mut best: Option<ExponentReport> = None;
    for &alpha in grid {
        for orientation in [Orientation::HighT, Orientation::HighS] {
            let rep = exponent_analysis(alpha, orientation)?;
            if best.is_none_or(|b| rep.total_degree < b.total_degree) {
                best = Some(rep);
            }
        }
    }
    best.ok_or_else(|| BoundsError::OutOfRange("empty alpha grid".into()))
}
