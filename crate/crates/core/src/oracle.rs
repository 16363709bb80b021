//! Floating-point cross-check of the exact verifier.
//!
//! Uses `f̂(ξ) = ∫ f(x) e^{-iξx} dx`, so `ψ(x) = (1/2π) ∫ ψ̂(ξ) e^{iξx} dξ`.
//! Every integral here is of `e^{iαξ}` over a cell where the step function is
//! constant, which has the closed form `e^{iαm} · L · sinc(αL/2)` with `m` the
//! cell midpoint and `L` its length. No quadrature is involved, and the sinc
//! form stays accurate as `α → 0`.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{AffineMap, StepFunction};
use crate::scalar::{pow2, rational_to_f64, QPiScalar, QuadReal, Rational};

fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// A constant cell lowered to floats: midpoint, length, value.
#[derive(Clone, Copy, Debug)]
struct FloatCell {
    mid: f64,
    len: f64,
    value: f64,
}

fn lower(f: &StepFunction) -> Vec<FloatCell> {
    let half = Rational::new(1.into(), 2.into());
    f.pieces()
        .iter()
        .map(|p| {
            let (lo, hi) = (p.interval.lo().coeff(), p.interval.hi().coeff());
            FloatCell {
                mid: rational_to_f64(&((lo + hi) * &half)) * PI,
                len: rational_to_f64(&(hi - lo)) * PI,
                value: p.value.to_f64(),
            }
        })
        .collect()
}

/// `Σ value · ∫_cell e^{iαξ} dξ`.
fn oscillatory_sum(cells: &[FloatCell], alpha: f64) -> Complex64 {
    cells
        .iter()
        .map(|c| Complex64::from_polar(c.value * c.len * sinc(alpha * c.len / 2.0), alpha * c.mid))
        .sum()
}

pub fn eval_time_domain(f: &StepFunction, x: f64) -> Complex64 {
    oscillatory_sum(&lower(f), x) / (2.0 * PI)
}

/// `(j, k)` indexing `ψ_{j,k}(x) = 2^{j/2} ψ(2^j x - k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DilTransIndex {
    pub j: i32,
    pub k: i64,
}

impl DilTransIndex {
    pub fn new(j: i32, k: i64) -> Self {
        DilTransIndex { j, k }
    }
}

/// `ξ ↦ ψ̂(ξ / 2^j)`.
fn dilated(f: &StepFunction, j: i32) -> StepFunction {
    f.pullback(&AffineMap::dilation(-(j as i64)))
}

/// Frequency of the phase factor `e^{iαξ}` in `ψ̂_p · conj ψ̂_q`:
/// `α = k_q/2^{j_q} - k_p/2^{j_p}`.
fn phase_rate(p: DilTransIndex, q: DilTransIndex) -> f64 {
    let r = Rational::from_integer(q.k.into()) * pow2(-(q.j as i64))
        - Rational::from_integer(p.k.into()) * pow2(-(p.j as i64));
    rational_to_f64(&r)
}

fn pair_weight(p: DilTransIndex, q: DilTransIndex) -> f64 {
    2f64.powf(-(p.j as f64 + q.j as f64) / 2.0) / (2.0 * PI)
}

/// `⟨ψ_p, ψ_q⟩ = (1/2π) ∫ ψ̂_p conj ψ̂_q`, with
/// `ψ̂_{j,k}(ξ) = 2^{-j/2} e^{-ikξ/2^j} ψ̂(ξ/2^j)`.
pub fn inner_product(f: &StepFunction, p: DilTransIndex, q: DilTransIndex) -> Complex64 {
    let product = dilated(f, p.j).mul(&dilated(f, q.j));
    oscillatory_sum(&lower(&product), phase_rate(p, q)) * pair_weight(p, q)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramResult {
    pub indices: Vec<DilTransIndex>,
    pub entries: Vec<Vec<Complex64>>,
    pub max_off_diagonal: f64,
    pub max_diagonal_deviation: f64,
}

impl GramResult {
    pub fn max_deviation(&self) -> f64 {
        self.max_off_diagonal.max(self.max_diagonal_deviation)
    }
}

/// Formats with 17 significant digits, which round-trips every `f64`.
pub fn f64_json(x: f64) -> serde_json::Number {
    format!("{x:.16e}")
        .parse()
        .expect("finite float formats as a JSON number")
}

impl Serialize for GramResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<[serde_json::Number; 2]>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|z| [f64_json(z.re), f64_json(z.im)])
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("GramResult", 4)?;
        st.serialize_field("indices", &self.indices)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("max_off_diagonal", &f64_json(self.max_off_diagonal))?;
        st.serialize_field(
            "max_diagonal_deviation",
            &f64_json(self.max_diagonal_deviation),
        )?;
        st.end()
    }
}

/// All inner products over the box `j_range × k_range` (inclusive bounds),
/// indices ordered by `j` then `k`.
pub fn gram_matrix(
    f: &StepFunction,
    j_range: (i32, i32),
    k_range: (i64, i64),
) -> Result<GramResult> {
    if j_range.0 > j_range.1 || k_range.0 > k_range.1 {
        return Err(Error::Domain("index ranges must be nonempty".into()));
    }
    let indices: Vec<DilTransIndex> = (j_range.0..=j_range.1)
        .flat_map(|j| (k_range.0..=k_range.1).map(move |k| DilTransIndex::new(j, k)))
        .collect();
    let scales: Vec<i32> = (j_range.0..=j_range.1).collect();
    let dilates: Vec<StepFunction> = scales.iter().map(|&j| dilated(f, j)).collect();
    // products only depend on the pair of scales
    let products: Vec<Vec<Vec<FloatCell>>> = dilates
        .iter()
        .map(|a| dilates.iter().map(|b| lower(&a.mul(b))).collect())
        .collect();
    let slot = |j: i32| (j - j_range.0) as usize;

    let size = indices.len();
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    let mut max_off_diagonal = 0f64;
    let mut max_diagonal_deviation = 0f64;
    for (a, &p) in indices.iter().enumerate() {
        for (b, &q) in indices.iter().enumerate().skip(a) {
            let cells = &products[slot(p.j)][slot(q.j)];
            let z = oscillatory_sum(cells, phase_rate(p, q)) * pair_weight(p, q);
            entries[a][b] = z;
            entries[b][a] = z.conj();
            if a == b {
                max_diagonal_deviation = max_diagonal_deviation.max((z - 1.0).norm());
            } else {
                max_off_diagonal = max_off_diagonal.max(z.norm());
            }
        }
    }
    Ok(GramResult {
        indices,
        entries,
        max_off_diagonal,
        max_diagonal_deviation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeSample {
    pub x: f64,
    pub value: Complex64,
}

fn grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::Domain(format!(
            "sample count must be >= 2, got {count}"
        )));
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::Domain(format!("bad sample range {lo}:{hi}")));
    }
    let step = (hi - lo) / (count - 1) as f64;
    let mut xs: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
    xs[count - 1] = hi;
    Ok(xs)
}

/// `ψ` on a uniform grid of `count` points from `x_min` to `x_max`.
pub fn sample_series(
    f: &StepFunction,
    x_min: f64,
    x_max: f64,
    count: usize,
) -> Result<Vec<TimeSample>> {
    let cells = lower(f);
    Ok(grid(x_min, x_max, count)?
        .into_iter()
        .map(|x| TimeSample {
            x,
            value: oscillatory_sum(&cells, x) / (2.0 * PI),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencySample {
    /// `ξ/π`.
    pub xi_over_pi: Rational,
    pub value: QuadReal,
}

/// Exact values of `ψ̂` on a uniform grid in units of π.
pub fn sample_frequency(
    f: &StepFunction,
    lo_over_pi: f64,
    hi_over_pi: f64,
    count: usize,
) -> Result<Vec<FrequencySample>> {
    grid(lo_over_pi, hi_over_pi, count)?
        .into_iter()
        .map(|x| {
            let xi = QPiScalar::from_f64_pi_units(x)
                .ok_or_else(|| Error::Domain(format!("non-finite grid point {x}")))?;
            Ok(FrequencySample {
                value: f.eval(&xi),
                xi_over_pi: xi.coeff().clone(),
            })
        })
        .collect()
}

/// Vertices of the graph of `ψ̂`: each piece contributes its two corners at
/// zero height and at its value, so a line plot draws the plateaus.
pub fn frequency_graph(f: &StepFunction) -> Vec<FrequencySample> {
    let mut out = Vec::with_capacity(4 * f.pieces().len());
    for p in f.pieces() {
        for (x, v) in [
            (p.interval.lo(), QuadReal::zero()),
            (p.interval.lo(), p.value.clone()),
            (p.interval.hi(), p.value.clone()),
            (p.interval.hi(), QuadReal::zero()),
        ] {
            out.push(FrequencySample {
                xi_over_pi: x.coeff().clone(),
                value: v,
            });
        }
    }
    out
}

pub fn write_time_csv<W: Write>(out: &mut W, samples: &[TimeSample]) -> io::Result<()> {
    writeln!(out, "x,re,im")?;
    for s in samples {
        writeln!(out, "{},{},{}", s.x, s.value.re, s.value.im)?;
    }
    Ok(())
}

/// Rational columns are written exactly as `p/q`; the last column is the
/// value as a float.
pub fn write_frequency_csv<W: Write>(out: &mut W, samples: &[FrequencySample]) -> io::Result<()> {
    writeln!(out, "xi_over_pi,value_a,value_b,value_float")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{}",
            s.xi_over_pi,
            s.value.rational_part(),
            s.value.sqrt2_part(),
            s.value.to_f64()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{psi_n, shannon};

    #[test]
    fn shannon_at_origin_is_one() {
        let v = eval_time_domain(&shannon(), 0.0);
        assert!((v.re - 1.0).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn shannon_closed_form() {
        for i in 1..200 {
            let x = -7.3 + 0.0731 * i as f64;
            let want = ((2.0 * PI * x).sin() - (PI * x).sin()) / (PI * x);
            let got = eval_time_domain(&shannon(), x);
            assert!(
                (got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12,
                "x={x}"
            );
        }
    }

    #[test]
    fn real_transform_gives_hermitian_signal() {
        let f = psi_n(3).unwrap();
        for x in [0.3, 1.7, -4.2, 11.0] {
            let a = eval_time_domain(&f, x);
            let b = eval_time_domain(&f, -x);
            assert!((a - b.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn sinc_branches_agree() {
        for t in [9e-5f64, 1.1e-4, 1e-3] {
            let direct = t.sin() / t;
            assert!((sinc(t) - direct).abs() < 1e-15);
        }
        assert_eq!(sinc(0.0), 1.0);
    }

    #[test]
    fn hermitian_inner_products() {
        let f = psi_n(3).unwrap();
        let p = DilTransIndex::new(1, -3);
        let q = DilTransIndex::new(-1, 2);
        assert!((inner_product(&f, p, q) - inner_product(&f, q, p).conj()).norm() < 1e-12);
    }

    #[test]
    fn bad_ranges() {
        assert!(sample_series(&shannon(), 1.0, 1.0, 5).is_err());
        assert!(sample_series(&shannon(), 0.0, 1.0, 1).is_err());
        assert!(gram_matrix(&shannon(), (1, 0), (0, 0)).is_err());
        let two = sample_series(&shannon(), -1.0, 2.0, 2).unwrap();
        assert_eq!((two[0].x, two[1].x), (-1.0, 2.0));
    }

    #[test]
    fn json_floats_have_17_digits() {
        assert_eq!(f64_json(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(f64_json(1.0).to_string(), "1.0000000000000000e+0");
    }
}
