//! Half-open intervals on the frequency axis, their finite unions, dyadic
//! affine maps, and piecewise-constant ℚ(√2)-valued functions.
//!
//! Every interval is `[lo, hi)`. Two intervals that share an endpoint are
//! disjoint, so "nonempty intersection" and "intersection of positive measure"
//! coincide for normalized sets. Normalization runs after every operation and
//! is canonical: two step functions that agree almost everywhere have
//! identical piece lists.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{pow2, QPiScalar, QuadReal, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    lo: QPiScalar,
    hi: QPiScalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterval {
    lo: QPiScalar,
    hi: QPiScalar,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl Interval {
    pub fn new(lo: QPiScalar, hi: QPiScalar) -> Result<Self> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::EmptyInterval {
                lo: Box::new(lo),
                hi: Box::new(hi),
            })
        }
    }

    /// `[lo·π, hi·π)` from fractions `(num, den)`. Panics on an empty interval.
    pub fn frac(lo: (i64, i64), hi: (i64, i64)) -> Self {
        Interval::new(QPiScalar::frac(lo.0, lo.1), QPiScalar::frac(hi.0, hi.1))
            .expect("literal interval must be nonempty")
    }

    pub fn lo(&self) -> &QPiScalar {
        &self.lo
    }

    pub fn hi(&self) -> &QPiScalar {
        &self.hi
    }

    pub fn length(&self) -> QPiScalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &QPiScalar) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        Interval::new(lo, hi).ok()
    }

    pub fn translate(&self, t: &QPiScalar) -> Interval {
        Interval {
            lo: &self.lo + t,
            hi: &self.hi + t,
        }
    }

    /// Image under `m`. For a reflecting map the open and closed ends swap;
    /// the result is kept half-open, which changes it only on a null set.
    pub fn image(&self, m: &AffineMap) -> Interval {
        let x = m.apply(&self.lo);
        let y = m.apply(&self.hi);
        if x < y {
            Interval { lo: x, hi: y }
        } else {
            Interval { lo: y, hi: x }
        }
    }

    /// `{ξ : m(ξ) ∈ self}`, up to endpoints for reflecting maps.
    pub fn preimage(&self, m: &AffineMap) -> Interval {
        self.image(&m.inverse())
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo.coeff(), self.hi.coeff())?;
        f.write_str("π")
    }
}

/// `ξ ↦ scale·ξ + shift` with `scale = ±2^log2_scale`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    reflect: bool,
    log2_scale: i64,
    shift: QPiScalar,
}

impl AffineMap {
    pub fn new(reflect: bool, log2_scale: i64, shift: QPiScalar) -> Self {
        AffineMap {
            reflect,
            log2_scale,
            shift,
        }
    }

    pub fn identity() -> Self {
        AffineMap::new(false, 0, QPiScalar::zero())
    }

    /// `ξ ↦ 2^j ξ`.
    pub fn dilation(j: i64) -> Self {
        AffineMap::new(false, j, QPiScalar::zero())
    }

    /// `ξ ↦ ξ + t`.
    pub fn translation(t: QPiScalar) -> Self {
        AffineMap::new(false, 0, t)
    }

    pub fn reflection() -> Self {
        AffineMap::new(true, 0, QPiScalar::zero())
    }

    pub fn scale(&self) -> Rational {
        let s = pow2(self.log2_scale);
        if self.reflect {
            -s
        } else {
            s
        }
    }

    pub fn log2_scale(&self) -> i64 {
        self.log2_scale
    }

    pub fn shift(&self) -> &QPiScalar {
        &self.shift
    }

    pub fn apply(&self, x: &QPiScalar) -> QPiScalar {
        &x.scale(&self.scale()) + &self.shift
    }

    /// `self ∘ inner`, i.e. `ξ ↦ self(inner(ξ))`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            reflect: self.reflect ^ inner.reflect,
            log2_scale: self.log2_scale + inner.log2_scale,
            shift: self.apply(&inner.shift),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv_scale = {
            let s = pow2(-self.log2_scale);
            if self.reflect {
                -s
            } else {
                s
            }
        };
        AffineMap {
            reflect: self.reflect,
            log2_scale: -self.log2_scale,
            shift: -self.shift.scale(&inv_scale),
        }
    }
}

/// Sorted, disjoint, non-abutting union of half-open intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawIntervalSet")]
pub struct IntervalSet {
    pieces: Vec<Interval>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIntervalSet {
    pieces: Vec<Interval>,
}

impl From<RawIntervalSet> for IntervalSet {
    fn from(raw: RawIntervalSet) -> Self {
        IntervalSet::from_intervals(raw.pieces)
    }
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { pieces: Vec::new() }
    }

    /// Union of arbitrary (possibly overlapping) intervals.
    pub fn from_intervals(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|x, y| x.lo.cmp(&y.lo));
        let mut pieces: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match pieces.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => pieces.push(iv),
            }
        }
        IntervalSet { pieces }
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn measure(&self) -> QPiScalar {
        self.pieces
            .iter()
            .fold(QPiScalar::zero(), |acc, p| acc + p.length())
    }

    pub fn contains(&self, x: &QPiScalar) -> bool {
        locate(&self.pieces, x, |p| p).is_some()
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.pieces.first()?;
        let last = self.pieces.last()?;
        Some(Interval {
            lo: first.lo.clone(),
            hi: last.hi.clone(),
        })
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        !self.intersect(other).is_empty()
    }

    pub fn translate(&self, t: &QPiScalar) -> IntervalSet {
        IntervalSet {
            pieces: self.pieces.iter().map(|p| p.translate(t)).collect(),
        }
    }

    pub fn image(&self, m: &AffineMap) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(|p| p.image(m)).collect())
    }

    pub fn preimage(&self, m: &AffineMap) -> IntervalSet {
        self.image(&m.inverse())
    }

    fn combine(&self, other: &IntervalSet, keep: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let bp = merge_breakpoints([self.breakpoints(), other.breakpoints()]);
        let a = membership(&self.pieces, &bp);
        let b = membership(&other.pieces, &bp);
        let mut out: Vec<Interval> = Vec::new();
        for (i, (x, y)) in a.into_iter().zip(b).enumerate() {
            if !keep(x, y) {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.hi == bp[i] => last.hi = bp[i + 1].clone(),
                _ => out.push(Interval {
                    lo: bp[i].clone(),
                    hi: bp[i + 1].clone(),
                }),
            }
        }
        IntervalSet { pieces: out }
    }

    fn breakpoints(&self) -> Vec<QPiScalar> {
        self.pieces
            .iter()
            .flat_map(|p| [p.lo.clone(), p.hi.clone()])
            .collect()
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        IntervalSet { pieces: vec![iv] }
    }
}

/// One constant piece of a [`StepFunction`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Piece {
    #[serde(flatten)]
    pub interval: Interval,
    pub value: QuadReal,
}

/// A finitely supported piecewise-constant map ℝ → ℚ(√2).
///
/// Invariants: pieces sorted and pairwise disjoint, no zero values, and no two
/// abutting pieces with equal values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawStepFunction")]
pub struct StepFunction {
    pieces: Vec<Piece>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStepFunction {
    pieces: Vec<RawPiece>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    lo: QPiScalar,
    hi: QPiScalar,
    value: QuadReal,
    /// Reserved for a complex extension; any nonzero imaginary part is rejected.
    #[serde(default)]
    im: Option<QuadReal>,
}

impl TryFrom<RawStepFunction> for StepFunction {
    type Error = Error;
    fn try_from(raw: RawStepFunction) -> Result<Self> {
        let mut pieces = Vec::with_capacity(raw.pieces.len());
        for p in raw.pieces {
            if p.im.as_ref().is_some_and(|im| !im.is_zero()) {
                return Err(Error::UnsupportedPhase {
                    lo: Box::new(p.lo),
                    hi: Box::new(p.hi),
                });
            }
            pieces.push((Interval::new(p.lo, p.hi)?, p.value));
        }
        StepFunction::from_pieces(pieces)
    }
}

/// Ordered breakpoints of a common refinement; cell `i` is `[bp[i], bp[i+1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    breakpoints: Vec<QPiScalar>,
}

impl Partition {
    pub fn breakpoints(&self) -> &[QPiScalar] {
        &self.breakpoints
    }

    pub fn cell_count(&self) -> usize {
        self.breakpoints.len().saturating_sub(1)
    }

    pub fn cells(&self) -> impl Iterator<Item = Interval> + '_ {
        self.breakpoints.windows(2).map(|w| Interval {
            lo: w[0].clone(),
            hi: w[1].clone(),
        })
    }
}

/// Coarsest partition on which every input is constant.
pub fn refine(functions: &[&StepFunction]) -> Partition {
    Partition {
        breakpoints: merge_breakpoints(functions.iter().map(|f| f.breakpoints())),
    }
}

impl StepFunction {
    pub fn zero() -> Self {
        StepFunction { pieces: Vec::new() }
    }

    /// Builds from disjoint pieces in any order. Zero pieces are dropped and
    /// equal abutting pieces merged. Overlapping pieces are an error.
    pub fn from_pieces(mut pieces: Vec<(Interval, QuadReal)>) -> Result<Self> {
        pieces.sort_by(|x, y| x.0.lo.cmp(&y.0.lo));
        for w in pieces.windows(2) {
            if w[1].0.lo < w[0].0.hi {
                return Err(Error::OverlappingPieces {
                    at: Box::new(w[1].0.lo.clone()),
                });
            }
        }
        let mut out = StepFunction::zero();
        for (interval, value) in pieces {
            out.push_normalized(interval, value);
        }
        Ok(out)
    }

    /// Pointwise sum of possibly overlapping weighted intervals.
    pub fn sum_of(terms: impl IntoIterator<Item = (Interval, QuadReal)>) -> Self {
        let terms: Vec<(Interval, QuadReal)> = terms.into_iter().collect();
        let bp = merge_breakpoints([terms
            .iter()
            .flat_map(|(iv, _)| [iv.lo.clone(), iv.hi.clone()])
            .collect::<Vec<_>>()]);
        let mut delta = vec![QuadReal::zero(); bp.len()];
        for (iv, v) in &terms {
            let i = bp.binary_search(&iv.lo).expect("endpoint in breakpoints");
            let j = bp.binary_search(&iv.hi).expect("endpoint in breakpoints");
            delta[i] = &delta[i] + v;
            delta[j] = &delta[j] - v;
        }
        let mut running = QuadReal::zero();
        let mut values = Vec::with_capacity(bp.len().saturating_sub(1));
        for d in delta.iter().take(bp.len().saturating_sub(1)) {
            running = &running + d;
            values.push(running.clone());
        }
        StepFunction::from_cells(&bp, values)
    }

    /// `value` on `set`, zero elsewhere.
    pub fn indicator(set: &IntervalSet, value: QuadReal) -> Self {
        StepFunction::from_pieces(
            set.pieces
                .iter()
                .map(|iv| (iv.clone(), value.clone()))
                .collect(),
        )
        .expect("interval set pieces are disjoint")
    }

    fn from_cells(bp: &[QPiScalar], values: Vec<QuadReal>) -> Self {
        let mut out = StepFunction::zero();
        for (i, v) in values.into_iter().enumerate() {
            out.push_normalized(
                Interval {
                    lo: bp[i].clone(),
                    hi: bp[i + 1].clone(),
                },
                v,
            );
        }
        out
    }

    // caller guarantees `interval.lo >= last.hi`
    fn push_normalized(&mut self, interval: Interval, value: QuadReal) {
        if value.is_zero() {
            return;
        }
        if let Some(last) = self.pieces.last_mut() {
            if last.interval.hi == interval.lo && last.value == value {
                last.interval.hi = interval.hi;
                return;
            }
        }
        self.pieces.push(Piece { interval, value });
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn support(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(|p| p.interval.clone()).collect())
    }

    /// Value at `x`; zero off the support. Half-open: `x = hi` is outside.
    pub fn eval(&self, x: &QPiScalar) -> QuadReal {
        locate(&self.pieces, x, |p| &p.interval)
            .map(|i| self.pieces[i].value.clone())
            .unwrap_or_else(QuadReal::zero)
    }

    pub fn breakpoints(&self) -> Vec<QPiScalar> {
        let mut bp: Vec<QPiScalar> = Vec::with_capacity(2 * self.pieces.len());
        for p in &self.pieces {
            if bp.last() != Some(&p.interval.lo) {
                bp.push(p.interval.lo.clone());
            }
            bp.push(p.interval.hi.clone());
        }
        bp
    }

    /// Values on each cell of `partition`, which must refine `self`.
    pub fn values_on(&self, partition: &Partition) -> Vec<QuadReal> {
        cell_values(&self.pieces, &partition.breakpoints)
    }

    /// Largest `|ξ|` over the support closure, or zero for the zero function.
    pub fn radius(&self) -> QPiScalar {
        match (self.pieces.first(), self.pieces.last()) {
            (Some(first), Some(last)) => first.interval.lo.abs().max(last.interval.hi.abs()),
            _ => QPiScalar::zero(),
        }
    }

    /// Length of the support hull.
    pub fn diameter(&self) -> QPiScalar {
        match (self.pieces.first(), self.pieces.last()) {
            (Some(first), Some(last)) => &last.interval.hi - &first.interval.lo,
            _ => QPiScalar::zero(),
        }
    }

    /// `ξ ↦ self(m(ξ))`.
    pub fn pullback(&self, m: &AffineMap) -> StepFunction {
        let inv = m.inverse();
        let pieces = self
            .pieces
            .iter()
            .map(|p| (p.interval.image(&inv), p.value.clone()))
            .collect();
        StepFunction::from_pieces(pieces).expect("affine images of disjoint pieces are disjoint")
    }

    /// `ξ ↦ self(ξ + t)`.
    pub fn shifted_by(&self, t: &QPiScalar) -> StepFunction {
        self.pullback(&AffineMap::translation(t.clone()))
    }

    pub fn map_values(&self, f: impl Fn(&QuadReal) -> QuadReal) -> StepFunction {
        let mut out = StepFunction::zero();
        for p in &self.pieces {
            out.push_normalized(p.interval.clone(), f(&p.value));
        }
        out
    }

    pub fn abs(&self) -> StepFunction {
        self.map_values(QuadReal::abs)
    }

    pub fn square(&self) -> StepFunction {
        self.map_values(QuadReal::square)
    }

    pub fn neg(&self) -> StepFunction {
        self.map_values(|v| -v)
    }

    /// `±1` according to the sign of each piece.
    pub fn signs(&self) -> StepFunction {
        self.map_values(|v| QuadReal::from_int(v.sign().as_i32() as i64))
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &StepFunction) -> StepFunction {
        if self.is_zero() || other.is_zero() {
            return StepFunction::zero();
        }
        self.zip_with(other, |a, b| a * b)
    }

    pub fn zip_with(
        &self,
        other: &StepFunction,
        op: impl Fn(&QuadReal, &QuadReal) -> QuadReal,
    ) -> StepFunction {
        let part = refine(&[self, other]);
        let a = self.values_on(&part);
        let b = other.values_on(&part);
        let values = a.iter().zip(&b).map(|(x, y)| op(x, y)).collect();
        StepFunction::from_cells(&part.breakpoints, values)
    }

    pub fn restrict(&self, set: &IntervalSet) -> StepFunction {
        self.mul(&StepFunction::indicator(set, QuadReal::one()))
    }

    /// Copy of `self` with the value on `interval` replaced by `value`.
    pub fn with_value_on(&self, interval: &Interval, value: QuadReal) -> StepFunction {
        let hole = IntervalSet::from(interval.clone());
        self.restrict(&self.support().difference(&hole))
            .add(&StepFunction::indicator(&hole, value))
    }

    /// `∫ f²` as a ℚ(√2) multiple of π.
    pub fn integral_of_square(&self) -> QuadReal {
        self.pieces.iter().fold(QuadReal::zero(), |acc, p| {
            &acc + &p.value.square().scale(p.interval.length().coeff())
        })
    }
}

/// Sorted, deduplicated union of breakpoint lists.
fn merge_breakpoints<I>(lists: I) -> Vec<QPiScalar>
where
    I: IntoIterator<Item = Vec<QPiScalar>>,
{
    let mut all: Vec<QPiScalar> = lists.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    all
}

fn membership(pieces: &[Interval], bp: &[QPiScalar]) -> Vec<bool> {
    let mut out = Vec::with_capacity(bp.len().saturating_sub(1));
    let mut i = 0;
    for w in bp.windows(2) {
        while i < pieces.len() && pieces[i].hi <= w[0] {
            i += 1;
        }
        out.push(i < pieces.len() && pieces[i].lo <= w[0]);
    }
    out
}

fn cell_values(pieces: &[Piece], bp: &[QPiScalar]) -> Vec<QuadReal> {
    let mut out = Vec::with_capacity(bp.len().saturating_sub(1));
    let mut i = 0;
    for w in bp.windows(2) {
        while i < pieces.len() && pieces[i].interval.hi <= w[0] {
            i += 1;
        }
        if i < pieces.len() && pieces[i].interval.lo <= w[0] {
            out.push(pieces[i].value.clone());
        } else {
            out.push(QuadReal::zero());
        }
    }
    out
}

fn locate<T>(items: &[T], x: &QPiScalar, interval: impl Fn(&T) -> &Interval) -> Option<usize> {
    let idx = items.partition_point(|t| interval(t).lo <= *x);
    let i = idx.checked_sub(1)?;
    match x.cmp(&interval(&items[i]).hi) {
        Ordering::Less => Some(i),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
        Interval::frac(lo, hi)
    }

    type Span = ((i64, i64), (i64, i64));

    fn set(ivs: &[Span]) -> IntervalSet {
        IntervalSet::from_intervals(ivs.iter().map(|&(a, b)| iv(a, b)).collect())
    }

    #[test]
    fn abutting_half_open_intervals_are_disjoint() {
        let a = set(&[((0, 1), (1, 1))]);
        let b = set(&[((1, 1), (2, 1))]);
        assert!(a.intersect(&b).is_empty());
        // and the union merges them
        assert_eq!(a.union(&b), set(&[((0, 1), (2, 1))]));
    }

    #[test]
    fn intersection_example() {
        let a = set(&[((4, 7), (8, 7)), ((24, 7), (32, 7))]);
        let b = set(&[((1, 1), (2, 1))]);
        assert_eq!(a.intersect(&b), set(&[((1, 1), (8, 7))]));
        assert_eq!(a.union(&IntervalSet::empty()), a);
    }

    #[test]
    fn difference_splits() {
        let a = set(&[((0, 1), (4, 1))]);
        let b = set(&[((1, 1), (2, 1))]);
        assert_eq!(a.difference(&b), set(&[((0, 1), (1, 1)), ((2, 1), (4, 1))]));
    }

    #[test]
    fn measure_of_empty_is_zero() {
        assert_eq!(IntervalSet::empty().measure(), QPiScalar::zero());
    }

    #[test]
    fn affine_inverse_and_composition() {
        let m = AffineMap::new(true, 2, QPiScalar::frac(3, 7));
        let x = QPiScalar::frac(-5, 11);
        assert_eq!(m.inverse().apply(&m.apply(&x)), x);
        assert_eq!(m.compose(&m.inverse()), AffineMap::identity());
        let t = AffineMap::translation(QPiScalar::from_int(-2));
        let d = AffineMap::dilation(2);
        // 4(ξ - 2π)
        assert_eq!(
            d.compose(&t).apply(&QPiScalar::from_int(3)),
            QPiScalar::from_int(4)
        );
    }

    #[test]
    fn pullback_through_translation() {
        // 1 on [6/7, 8/7)π pulled back through ξ ↦ ξ + 2π lives on [-8/7, -6/7)π
        let f = StepFunction::indicator(&set(&[((6, 7), (8, 7))]), QuadReal::one());
        let g = f.pullback(&AffineMap::translation(QPiScalar::from_int(2)));
        assert_eq!(g.support(), set(&[((-8, 7), (-6, 7))]));
        assert_eq!(f.pullback(&AffineMap::identity()), f);
    }

    #[test]
    fn pullback_through_dilation() {
        let f = StepFunction::indicator(&set(&[((6, 7), (8, 7))]), QuadReal::one());
        let g = f.pullback(&AffineMap::dilation(-2));
        assert_eq!(g.support(), set(&[((24, 7), (32, 7))]));
    }

    #[test]
    fn refine_examples() {
        let f = StepFunction::from_pieces(vec![
            (iv((0, 1), (1, 1)), QuadReal::one()),
            (iv((1, 1), (2, 1)), QuadReal::from_int(2)),
        ])
        .unwrap();
        let p = refine(&[&f]);
        assert_eq!(
            p.breakpoints(),
            &[QPiScalar::zero(), QPiScalar::pi(), QPiScalar::from_int(2)]
        );
        assert_eq!(refine(&[&f, &f]), p);
    }

    #[test]
    fn eval_respects_half_open_boundaries() {
        let f = StepFunction::indicator(&set(&[((4, 7), (6, 7))]), QuadReal::inv_sqrt2());
        assert_eq!(f.eval(&QPiScalar::frac(4, 7)), QuadReal::inv_sqrt2());
        assert_eq!(f.eval(&QPiScalar::frac(5, 7)), QuadReal::inv_sqrt2());
        assert_eq!(f.eval(&QPiScalar::frac(6, 7)), QuadReal::zero());
        assert_eq!(f.eval(&QPiScalar::zero()), QuadReal::zero());
    }

    #[test]
    fn from_pieces_merges_and_drops_zeros() {
        let f = StepFunction::from_pieces(vec![
            (iv((1, 1), (2, 1)), QuadReal::one()),
            (iv((0, 1), (1, 1)), QuadReal::one()),
            (iv((3, 1), (4, 1)), QuadReal::zero()),
        ])
        .unwrap();
        assert_eq!(f.pieces().len(), 1);
        assert_eq!(f.support(), set(&[((0, 1), (2, 1))]));
    }

    #[test]
    fn overlapping_pieces_rejected() {
        let err = StepFunction::from_pieces(vec![
            (iv((0, 1), (2, 1)), QuadReal::one()),
            (iv((1, 1), (3, 1)), QuadReal::one()),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::OverlappingPieces { .. }));
    }

    #[test]
    fn sum_of_overlapping_terms() {
        let f = StepFunction::sum_of(vec![
            (iv((0, 1), (2, 1)), QuadReal::one()),
            (iv((1, 1), (3, 1)), QuadReal::one()),
        ]);
        assert_eq!(f.eval(&QPiScalar::frac(1, 2)), QuadReal::one());
        assert_eq!(f.eval(&QPiScalar::frac(3, 2)), QuadReal::from_int(2));
        assert_eq!(f.eval(&QPiScalar::frac(5, 2)), QuadReal::one());
        // cancellation normalizes away
        let z = StepFunction::sum_of(vec![
            (iv((0, 1), (2, 1)), QuadReal::one()),
            (iv((0, 1), (2, 1)), -QuadReal::one()),
        ]);
        assert!(z.is_zero());
    }

    #[test]
    fn with_value_on_overrides() {
        let f = StepFunction::indicator(&set(&[((0, 1), (4, 1))]), QuadReal::one());
        let g = f.with_value_on(&iv((1, 1), (2, 1)), QuadReal::inv_sqrt2());
        assert_eq!(g.pieces().len(), 3);
        assert_eq!(g.eval(&QPiScalar::frac(3, 2)), QuadReal::inv_sqrt2());
        let h = g.with_value_on(&iv((1, 1), (2, 1)), QuadReal::one());
        assert_eq!(h, f);
    }

    #[test]
    fn step_function_json_rejects_phase_and_overlap() {
        let bad = r#"{"pieces":[{"lo":{"pi_coeff":{"num":"1","den":"1"}},"hi":{"pi_coeff":{"num":"2","den":"1"}},
            "value":{"a":{"num":"1","den":"1"},"b":{"num":"0","den":"1"}},
            "im":{"a":{"num":"1","den":"1"},"b":{"num":"0","den":"1"}}}]}"#;
        let err = serde_json::from_str::<StepFunction>(bad).unwrap_err();
        assert!(err.to_string().contains("complex phase"), "{err}");
        let empty = r#"{"pieces":[{"lo":{"pi_coeff":{"num":"2","den":"1"}},"hi":{"pi_coeff":{"num":"2","den":"1"}},
            "value":{"a":{"num":"1","den":"1"},"b":{"num":"0","den":"1"}}}]}"#;
        assert!(serde_json::from_str::<StepFunction>(empty).is_err());
    }
}
