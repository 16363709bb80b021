//! Exact wavelet verification.
//!
//! A function `ψ` with `‖ψ‖₂ = 1` is an orthonormal wavelet iff
//!
//! * `ρ(ξ) = Σ_{j∈ℤ} |ψ̂(2^j ξ)|² = 1` a.e., and
//! * `t_q(ξ) = Σ_{j≥0} ψ̂(2^j ξ) · conj ψ̂(2^j (ξ + 2qπ)) = 0` a.e. for every odd `q`.
//!
//! Both sums are evaluated here as exact step functions. `ρ` is dyadically
//! invariant, so it is computed only on the fundamental domain
//! `D = [-2π,-π) ∪ [π,2π)`. All values are real, so conjugation is the
//! identity.

mod overlap;
mod sncheck;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{AffineMap, Interval, IntervalSet, StepFunction};
use crate::scalar::{floor_log2, pow2, QPiScalar, QuadReal};

pub use overlap::{
    class_of, classify, hit_table, is_msf, overlap_indices, overlap_sets, ClassIndex, ClassLabel,
    HitRow, HitTable, OverlapEntry, OverlapIndexSet,
};
pub use sncheck::{check_sn_characterization, ConditionReport, SnCharacterization};

/// A cell together with the value a checked quantity actually took there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellValue {
    #[serde(flatten)]
    pub cell: Interval,
    pub value: QuadReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TqViolation {
    pub q: i64,
    #[serde(flatten)]
    pub cell: Interval,
    pub value: QuadReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// `‖ψ̂‖₂² = 2π ‖ψ‖₂²`; a unit-norm `ψ` gives exactly `2π`.
    pub norm_sq_times_2pi: QPiScalar,
    pub norm_ok: bool,
    pub calderon_ok: bool,
    /// Cells of the fundamental domain where `ρ ≠ 1`, with the value of `ρ`.
    pub calderon_violations: Vec<CellValue>,
    pub tq_ok: bool,
    /// Sorted by `q`, then by cell.
    pub tq_violations: Vec<TqViolation>,
    /// Every odd `q` with `|q| <= q_window` was checked.
    pub q_window: i64,
    pub overall: bool,
}

/// `∫ |f|² dξ`, exactly.
pub fn norm_check(f: &StepFunction) -> Result<QPiScalar> {
    let total = f.integral_of_square();
    if total.is_rational() {
        Ok(QPiScalar::new(total.rational_part().clone()))
    } else {
        Err(Error::ValueField(Box::new(total)))
    }
}

/// `[-2π,-π) ∪ [π,2π)`.
pub fn fundamental_domain() -> IntervalSet {
    IntervalSet::from_intervals(vec![
        Interval::frac((-2, 1), (-1, 1)),
        Interval::frac((1, 1), (2, 1)),
    ])
}

/// Splits `[lo, hi) ⊂ (0, ∞)` along the dyadic blocks `[2^j π, 2^{j+1} π)`
/// and rescales each part into `[π, 2π)`.
fn fold_positive(lo: &QPiScalar, hi: &QPiScalar) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut j = floor_log2(lo.coeff());
    loop {
        let block_lo = QPiScalar::new(pow2(j));
        let block_hi = QPiScalar::new(pow2(j + 1));
        let part_lo = lo.max(&block_lo);
        let part_hi = hi.min(&block_hi);
        let down = pow2(-j);
        if let Ok(part) = Interval::new(part_lo.scale(&down), part_hi.scale(&down)) {
            out.push(part);
        }
        if hi <= &block_hi {
            return out;
        }
        j += 1;
    }
}

/// `ρ = Σ_j |f(2^j ·)|²` on the fundamental domain.
pub fn calderon_sum(f: &StepFunction) -> Result<StepFunction> {
    let reflect = AffineMap::reflection();
    let mut terms = Vec::new();
    for p in f.pieces() {
        let (lo, hi) = (p.interval.lo(), p.interval.hi());
        let weight = p.value.square();
        if lo.signum() > 0 {
            terms.extend(
                fold_positive(lo, hi)
                    .into_iter()
                    .map(|iv| (iv, weight.clone())),
            );
        } else if hi.signum() < 0 {
            let mirrored = p.interval.image(&reflect);
            terms.extend(
                fold_positive(mirrored.lo(), mirrored.hi())
                    .into_iter()
                    .map(|iv| (iv.image(&reflect), weight.clone())),
            );
        } else {
            return Err(Error::SupportTouchesOrigin {
                lo: Box::new(lo.clone()),
                hi: Box::new(hi.clone()),
            });
        }
    }
    Ok(StepFunction::sum_of(terms))
}

/// Cells of `domain` where `h ≠ target`, each with the value `h` takes there.
pub(crate) fn deviations(
    h: &StepFunction,
    target: &QuadReal,
    domain: &IntervalSet,
) -> Vec<CellValue> {
    let dev = h
        .restrict(domain)
        .sub(&StepFunction::indicator(domain, target.clone()));
    dev.pieces()
        .iter()
        .map(|p| CellValue {
            cell: p.interval.clone(),
            value: &p.value + target,
        })
        .collect()
}

pub fn calderon_violations(rho: &StepFunction) -> Vec<CellValue> {
    deviations(rho, &QuadReal::one(), &fundamental_domain())
}

fn require_odd(q: i64) -> Result<()> {
    if q % 2 == 0 {
        return Err(Error::Domain(format!("q must be odd, got {q}")));
    }
    Ok(())
}

/// `t_q` restricted to the terms whose shift `2^j q` lies in `overlaps`; all
/// other terms vanish identically.
fn tq_sum_with(f: &StepFunction, q: i64, overlaps: &BTreeSet<i64>) -> StepFunction {
    let reach = overlaps.iter().next_back().copied().unwrap_or(0);
    let mut total = StepFunction::zero();
    let mut j = 0i64;
    // terms need 2^j |q| <= max overlap index
    while let Some(step) = q.checked_mul(1i64 << j).filter(|s| s.abs() <= reach) {
        if overlaps.contains(&step) {
            let near = f.pullback(&AffineMap::dilation(j));
            let far = f.pullback(
                &AffineMap::translation(QPiScalar::two_k_pi(step)).compose(&AffineMap::dilation(j)),
            );
            total = total.add(&near.mul(&far));
        }
        j += 1;
        if j >= 62 {
            break;
        }
    }
    total
}

/// `t_q(ξ) = Σ_{j≥0} f(2^j ξ) f(2^j (ξ + 2qπ))` for odd `q`.
pub fn tq_sum(f: &StepFunction, q: i64) -> Result<StepFunction> {
    require_odd(q)?;
    let overlaps: BTreeSet<i64> = overlap_indices(&f.support()).into_iter().collect();
    Ok(tq_sum_with(f, q, &overlaps))
}

/// Largest `|q|` that can give a nonzero `t_q`: `ceil(R/π)` for support in `[-R, R]`.
pub fn q_window(f: &StepFunction) -> i64 {
    let r = f.radius();
    let c = r.coeff().ceil().to_integer();
    i64::try_from(c).expect("support radius exceeds i64")
}

pub fn verify_wavelet(f: &StepFunction) -> Result<VerificationReport> {
    let norm = norm_check(f)?;
    let norm_ok = norm == QPiScalar::from_int(2);

    let rho = calderon_sum(f)?;
    let calderon_violations = calderon_violations(&rho);

    let overlaps: BTreeSet<i64> = overlap_indices(&f.support()).into_iter().collect();
    let window = q_window(f);
    let mut tq_violations = Vec::new();
    let mut q = if window % 2 == 0 { 1 - window } else { -window };
    while q <= window {
        for p in tq_sum_with(f, q, &overlaps).pieces() {
            tq_violations.push(TqViolation {
                q,
                cell: p.interval.clone(),
                value: p.value.clone(),
            });
        }
        q += 2;
    }

    let calderon_ok = calderon_violations.is_empty();
    let tq_ok = tq_violations.is_empty();
    Ok(VerificationReport {
        norm_sq_times_2pi: norm,
        norm_ok,
        calderon_ok,
        calderon_violations,
        tq_ok,
        tq_violations,
        q_window: window,
        overall: norm_ok && calderon_ok && tq_ok,
    })
}
