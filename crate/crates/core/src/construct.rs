//! Builders for the wavelets supported on the four-interval template `S_n`,
//! the two explicit families `ψ_n` and `w_n`, the Shannon wavelet, and a
//! seeded generator of random `S_n`-supported wavelets.
//!
//! For `n >= 2` the template constants are
//!
//! ```text
//! a = 2^{n-1}/(2^n-1) π     b = 2a
//! c = 2^{n-1}(2^n-2)/(2^n-1) π
//! d = 2^n a                 e = (2^n-2)/(2^n-1) π
//! ```
//!
//! and `S_n = [a,b) ∪ [c,d) ∪ -[a,b) ∪ -[c,d)`. A wavelet with support in
//! `S_n` is determined by its amplitude and sign on `[e,b)`: the other three
//! parts of `S_n` are the images of `[e,b)` under `ξ ↦ ξ-2π`, `ξ ↦ 2^{n-1}ξ`
//! and `ξ ↦ 2^{n-1}(ξ-2π)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{AffineMap, Interval, IntervalSet, StepFunction};
use crate::scalar::{pow2, QPiScalar, QuadReal, Rational, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnConstants {
    pub n: u32,
    pub a: QPiScalar,
    pub b: QPiScalar,
    pub c: QPiScalar,
    pub d: QPiScalar,
    pub e: QPiScalar,
}

pub fn sn_constants(n: u32) -> Result<SnConstants> {
    if n < 2 {
        return Err(Error::Domain(format!("S_n needs n >= 2, got {n}")));
    }
    let one = BigInt::one();
    let two_n = &one << n;
    let two_n1 = &one << (n - 1);
    let den: BigInt = &two_n - 1u32;
    let frac = |num: BigInt| QPiScalar::new(Rational::new(num, den.clone()));
    let a = frac(two_n1.clone());
    let b = frac(two_n.clone());
    let c = frac(&two_n1 * (&two_n - 2u32));
    let d = frac(&two_n1 * &two_n);
    let e = frac(&two_n - 2u32);
    Ok(SnConstants { n, a, b, c, d, e })
}

impl SnConstants {
    fn iv(lo: &QPiScalar, hi: &QPiScalar) -> Interval {
        Interval::new(lo.clone(), hi.clone()).expect("template intervals are nonempty")
    }

    /// `2^{n-1}π`.
    pub fn half_band(&self) -> QPiScalar {
        QPiScalar::new(pow2(self.n as i64 - 1))
    }

    /// `[e, b)`, the interval on which an `S_n` wavelet is freely prescribed.
    pub fn profile_domain(&self) -> Interval {
        Self::iv(&self.e, &self.b)
    }

    pub fn s_n_positive(&self) -> IntervalSet {
        IntervalSet::from_intervals(vec![Self::iv(&self.a, &self.b), Self::iv(&self.c, &self.d)])
    }

    pub fn s_n(&self) -> IntervalSet {
        let pos = self.s_n_positive();
        pos.union(&pos.image(&AffineMap::reflection()))
    }

    /// `ξ ↦ ξ - 2π`, carrying `[e,b)` onto `[-b,-e)`.
    pub fn translate_map(&self) -> AffineMap {
        AffineMap::translation(QPiScalar::from_int(-2))
    }

    /// `ξ ↦ 2^{n-1}ξ`, carrying `[e,b)` onto `[c,d)`.
    pub fn dilate_map(&self) -> AffineMap {
        AffineMap::dilation(self.n as i64 - 1)
    }

    /// `ξ ↦ 2^{n-1}(ξ - 2π)`, carrying `[e,b)` onto `[-d,-c)`.
    pub fn dilate_translate_map(&self) -> AffineMap {
        self.dilate_map().compose(&self.translate_map())
    }
}

fn require_n3(n: u32) -> Result<SnConstants> {
    if n < 3 {
        return Err(Error::Domain(format!("this family needs n >= 3, got {n}")));
    }
    sn_constants(n)
}

fn build(pieces: Vec<(Interval, QuadReal)>) -> StepFunction {
    StepFunction::from_pieces(pieces).expect("construction pieces are disjoint")
}

/// `γ_n`: the characteristic function of `[-b,-a) ∪ [a,e) ∪ [c,d)`.
pub fn gamma_n(n: u32) -> Result<StepFunction> {
    let k = require_n3(n)?;
    let one = QuadReal::one;
    Ok(build(vec![
        (SnConstants::iv(&-&k.b, &-&k.a), one()),
        (SnConstants::iv(&k.a, &k.e), one()),
        (SnConstants::iv(&k.c, &k.d), one()),
    ]))
}

/// `ψ̂_n`, the seven-piece wavelet of class `M_{n-2}`.
pub fn psi_n(n: u32) -> Result<StepFunction> {
    let k = require_n3(n)?;
    let half = Rational::new(1.into(), 2.into());
    let shift = k.half_band();
    let full = QPiScalar::new(pow2(n as i64));
    let a2 = k.a.scale(&half);
    let e2 = k.e.scale(&half);
    let a2s = &a2 + &shift;
    let e2s = &e2 + &shift;
    let iv = SnConstants::iv;
    let h = QuadReal::inv_sqrt2;
    Ok(build(vec![
        (iv(&-&k.b, &-&k.a), QuadReal::one()),
        (iv(&k.c, &a2s), QuadReal::one()),
        (iv(&e2s, &k.d), QuadReal::one()),
        (iv(&a2, &e2), h()),
        (iv(&k.a, &k.e), h()),
        (iv(&a2s, &e2s), h()),
        (iv(&(&k.a + &full), &(&k.e + &full)), -h()),
    ]))
}

/// `ŵ_n`, a non-MSF wavelet of class `M_0` supported in `S_n`.
pub fn w_n(n: u32) -> Result<StepFunction> {
    let k = require_n3(n)?;
    let pi = QPiScalar::pi();
    let hb = k.half_band();
    let iv = SnConstants::iv;
    let h = QuadReal::inv_sqrt2;
    Ok(build(vec![
        (iv(&-&pi, &-&k.a), QuadReal::one()),
        (iv(&k.a, &k.e), QuadReal::one()),
        (iv(&hb, &k.d), QuadReal::one()),
        (iv(&-&k.d, &-&hb), h()),
        (iv(&-&k.b, &-&pi), h()),
        (iv(&k.c, &hb), h()),
        (iv(&k.e, &pi), -h()),
    ]))
}

/// The Shannon wavelet, `1` on `[-2π,-π) ∪ [π,2π)`.
pub fn shannon() -> StepFunction {
    build(vec![
        (Interval::frac((-2, 1), (-1, 1)), QuadReal::one()),
        (Interval::frac((1, 1), (2, 1)), QuadReal::one()),
    ])
}

/// Amplitude `|ψ̂|` on a profile cell. Restricted so that `√(1 - amp²)` stays
/// in ℚ(√2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Amplitude {
    Zero,
    InvSqrt2,
    One,
}

impl Amplitude {
    pub const ALL: [Amplitude; 3] = [Amplitude::Zero, Amplitude::InvSqrt2, Amplitude::One];

    pub fn value(self) -> QuadReal {
        match self {
            Amplitude::Zero => QuadReal::zero(),
            Amplitude::InvSqrt2 => QuadReal::inv_sqrt2(),
            Amplitude::One => QuadReal::one(),
        }
    }

    /// `√(1 - amp²)`.
    pub fn complement(self) -> Amplitude {
        match self {
            Amplitude::Zero => Amplitude::One,
            Amplitude::InvSqrt2 => Amplitude::InvSqrt2,
            Amplitude::One => Amplitude::Zero,
        }
    }

    /// Strictly between 0 and 1.
    pub fn is_partial(self) -> bool {
        self == Amplitude::InvSqrt2
    }
}

impl TryFrom<&QuadReal> for Amplitude {
    type Error = Error;
    fn try_from(v: &QuadReal) -> Result<Self> {
        Amplitude::ALL
            .into_iter()
            .find(|a| &a.value() == v)
            .ok_or_else(|| Error::AmplitudeField(Box::new(v.clone())))
    }
}

/// Signs carried by one profile cell on its four images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ImageSigns {
    /// On the cell itself, inside `[e,b)`.
    pub base: Sign,
    /// On the cell shifted by `-2π`, inside `[-b,-e)`.
    pub translated: Sign,
    /// On the cell dilated by `2^{n-1}`, inside `[c,d)`.
    pub dilated: Sign,
    /// On `2^{n-1}(cell - 2π)`, inside `[-d,-c)`.
    pub dilated_translated: Sign,
}

impl ImageSigns {
    pub fn all_positive() -> Self {
        ImageSigns {
            base: Sign::Positive,
            translated: Sign::Positive,
            dilated: Sign::Positive,
            dilated_translated: Sign::Positive,
        }
    }

    /// Product over the four images; the phase condition needs `-1`.
    pub fn product(&self) -> Sign {
        self.base * self.translated * self.dilated * self.dilated_translated
    }

    fn validate(&self) -> Result<()> {
        let all = [
            self.base,
            self.translated,
            self.dilated,
            self.dilated_translated,
        ];
        if all.contains(&Sign::Zero) {
            return Err(Error::Profile("image signs must be ±1".into()));
        }
        Ok(())
    }
}

/// Where the single `-1` of a phase-consistent sign assignment goes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SignPlacement {
    #[default]
    DilatedTranslated,
    Base,
}

impl SignPlacement {
    pub fn signs(self) -> ImageSigns {
        let mut s = ImageSigns::all_positive();
        match self {
            SignPlacement::DilatedTranslated => s.dilated_translated = Sign::Negative,
            SignPlacement::Base => s.base = Sign::Negative,
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProfileCell {
    pub amplitude: Amplitude,
    pub signs: ImageSigns,
}

/// Amplitude and signs on a partition of `[e_n, b_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmplitudeSignProfile {
    constants: SnConstants,
    breakpoints: Vec<QPiScalar>,
    cells: Vec<ProfileCell>,
}

impl AmplitudeSignProfile {
    /// `breakpoints` must run strictly upward from `e_n` to `b_n`, with one
    /// amplitude per cell.
    pub fn new(
        n: u32,
        breakpoints: Vec<QPiScalar>,
        amplitudes: &[Amplitude],
        placement: SignPlacement,
    ) -> Result<Self> {
        let constants = require_n3(n)?;
        if breakpoints.first() != Some(&constants.e) || breakpoints.last() != Some(&constants.b) {
            return Err(Error::Profile(
                "breakpoints must start at e_n and end at b_n".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Profile(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if amplitudes.len() + 1 != breakpoints.len() {
            return Err(Error::Profile(format!(
                "{} cells but {} amplitudes",
                breakpoints.len() - 1,
                amplitudes.len()
            )));
        }
        let cells = amplitudes
            .iter()
            .map(|&amplitude| ProfileCell {
                amplitude,
                signs: placement.signs(),
            })
            .collect();
        Ok(AmplitudeSignProfile {
            constants,
            breakpoints,
            cells,
        })
    }

    /// Equal-width cells.
    pub fn uniform(n: u32, amplitudes: &[Amplitude], placement: SignPlacement) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Profile("need at least one cell".into()));
        }
        let k = require_n3(n)?;
        let width = (&k.b - &k.e).scale(&Rational::new(1.into(), amplitudes.len().into()));
        let breakpoints = (0..=amplitudes.len())
            .map(|i| &k.e + &width.scale(&Rational::from_integer(i.into())))
            .collect();
        AmplitudeSignProfile::new(n, breakpoints, amplitudes, placement)
    }

    pub fn constants(&self) -> &SnConstants {
        &self.constants
    }

    pub fn cells(&self) -> &[ProfileCell] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [ProfileCell] {
        &mut self.cells
    }

    pub fn cell_interval(&self, i: usize) -> Interval {
        SnConstants::iv(&self.breakpoints[i], &self.breakpoints[i + 1])
    }

    pub fn has_partial_amplitude(&self) -> bool {
        self.cells.iter().any(|c| c.amplitude.is_partial())
    }
}

fn signed(sign: Sign, amp: Amplitude) -> QuadReal {
    match sign {
        Sign::Negative => -amp.value(),
        _ => amp.value(),
    }
}

/// Extends a profile on `[e,b)` to the full wavelet on `S_n`: amplitude `1`
/// on `[a,e) ∪ [-e,-a)`, `√(1-amp²)` on the `-2π` and `2^{n-1}` images, and
/// `amp` again on the `2^{n-1}(· - 2π)` image.
pub fn build_from_profile(profile: &AmplitudeSignProfile) -> Result<StepFunction> {
    let k = &profile.constants;
    let translate = k.translate_map();
    let dilate = k.dilate_map();
    let dilate_translate = k.dilate_translate_map();
    let mut pieces = vec![
        (SnConstants::iv(&k.a, &k.e), QuadReal::one()),
        (SnConstants::iv(&-&k.e, &-&k.a), QuadReal::one()),
    ];
    for (i, cell) in profile.cells.iter().enumerate() {
        cell.signs.validate()?;
        let iv = profile.cell_interval(i);
        let amp = cell.amplitude;
        let comp = amp.complement();
        pieces.push((iv.clone(), signed(cell.signs.base, amp)));
        pieces.push((iv.image(&translate), signed(cell.signs.translated, comp)));
        pieces.push((iv.image(&dilate), signed(cell.signs.dilated, comp)));
        pieces.push((
            iv.image(&dilate_translate),
            signed(cell.signs.dilated_translated, amp),
        ));
    }
    StepFunction::from_pieces(pieces)
}

/// Profile with `cell_count` equal cells and amplitudes drawn uniformly from
/// `{0, 1/√2, 1}` by a ChaCha8 stream seeded with `seed`.
pub fn random_profile(n: u32, cell_count: usize, seed: u64) -> Result<AmplitudeSignProfile> {
    if cell_count == 0 {
        return Err(Error::Profile("cell_count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amplitudes: Vec<Amplitude> = (0..cell_count)
        .map(|_| Amplitude::ALL[rng.gen_range(0..3)])
        .collect();
    AmplitudeSignProfile::uniform(n, &amplitudes, SignPlacement::default())
}

pub fn random_sn_wavelet(n: u32, cell_count: usize, seed: u64) -> Result<StepFunction> {
    build_from_profile(&random_profile(n, cell_count, seed)?)
}

/// Family names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gamma,
    Psi,
    W,
    Shannon,
    Random,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Gamma,
        Family::Psi,
        Family::W,
        Family::Shannon,
        Family::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::Psi => "psi",
            Family::W => "w",
            Family::Shannon => "shannon",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi_frac(num: i64, den: i64) -> QPiScalar {
        QPiScalar::frac(num, den)
    }

    // γ_n with [a/2,e/2)+2^{n-1}π copied left by 2^{n-1}π, both copies at
    // 1/√2, and [a,e) split into 1/√2 there and -1/√2 at +2^nπ
    #[test]
    fn psi_matches_its_description_from_gamma() {
        for n in 3..=10 {
            let k = sn_constants(n).unwrap();
            let half = Rational::new(1.into(), 2.into());
            let band = k.half_band();
            let moved =
                Interval::new(&k.a.scale(&half) + &band, &k.e.scale(&half) + &band).unwrap();
            let unit = Interval::new(k.a.clone(), k.e.clone()).unwrap();
            let h = QuadReal::inv_sqrt2();
            let built = gamma_n(n)
                .unwrap()
                .with_value_on(&moved, h.clone())
                .add(&StepFunction::indicator(
                    &moved.translate(&-&band).into(),
                    h.clone(),
                ))
                .with_value_on(&unit, h.clone())
                .add(&StepFunction::indicator(
                    &unit.translate(&QPiScalar::new(pow2(n as i64))).into(),
                    -h,
                ));
            assert_eq!(built, psi_n(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn constants_n3() {
        let k = sn_constants(3).unwrap();
        assert_eq!(k.a, pi_frac(4, 7));
        assert_eq!(k.b, pi_frac(8, 7));
        assert_eq!(k.c, pi_frac(24, 7));
        assert_eq!(k.d, pi_frac(32, 7));
        assert_eq!(k.e, pi_frac(6, 7));
    }

    #[test]
    fn constants_n2_are_degenerate() {
        let k = sn_constants(2).unwrap();
        assert_eq!(k.a, pi_frac(2, 3));
        assert_eq!(k.b, pi_frac(4, 3));
        assert_eq!(k.c, pi_frac(4, 3));
        assert_eq!(k.d, pi_frac(8, 3));
        assert_eq!(k.e, pi_frac(2, 3));
        assert!(sn_constants(1).is_err());
    }

    #[test]
    fn ordering_and_d_relation() {
        for n in 3..=20 {
            let k = sn_constants(n).unwrap();
            assert_eq!(k.d, k.a.scale(&pow2(n as i64)));
            assert!(k.a < k.e && k.e < QPiScalar::pi() && QPiScalar::pi() < k.b);
            assert!(k.b <= k.c && k.c < k.d);
        }
    }

    #[test]
    fn gamma_3_pieces() {
        let g = gamma_n(3).unwrap();
        let expect = IntervalSet::from_intervals(vec![
            Interval::frac((-8, 7), (-4, 7)),
            Interval::frac((4, 7), (6, 7)),
            Interval::frac((24, 7), (32, 7)),
        ]);
        assert_eq!(g.support(), expect);
        assert!(g.pieces().iter().all(|p| p.value == QuadReal::one()));
        assert_eq!(g.support().measure(), QPiScalar::from_int(2));
    }

    #[test]
    fn psi_3_breakpoints() {
        let f = psi_n(3).unwrap();
        let los: Vec<_> = f.pieces().iter().map(|p| p.interval.lo().clone()).collect();
        let his: Vec<_> = f.pieces().iter().map(|p| p.interval.hi().clone()).collect();
        let want_lo = [-8, 2, 4, 24, 30, 31, 60].map(|x| pi_frac(x, 7));
        let want_hi = [-4, 3, 6, 30, 31, 32, 62].map(|x| pi_frac(x, 7));
        assert_eq!(los, want_lo);
        assert_eq!(his, want_hi);
    }

    #[test]
    fn psi_rejects_small_n() {
        assert!(matches!(psi_n(2), Err(Error::Domain(_))));
        assert!(matches!(w_n(2), Err(Error::Domain(_))));
        assert!(matches!(gamma_n(1), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_profile_gives_gamma() {
        for n in 3..=8 {
            let p = AmplitudeSignProfile::uniform(n, &[Amplitude::Zero], SignPlacement::default())
                .unwrap();
            assert_eq!(build_from_profile(&p).unwrap(), gamma_n(n).unwrap());
        }
    }

    #[test]
    fn half_amplitude_profile_gives_w() {
        for n in 3..=8 {
            let k = sn_constants(n).unwrap();
            let p = AmplitudeSignProfile::new(
                n,
                vec![k.e.clone(), QPiScalar::pi(), k.b.clone()],
                &[Amplitude::InvSqrt2, Amplitude::Zero],
                SignPlacement::Base,
            )
            .unwrap();
            assert_eq!(build_from_profile(&p).unwrap(), w_n(n).unwrap());
        }
    }

    #[test]
    fn profile_restricts_back_to_itself() {
        let p = random_profile(4, 7, 99).unwrap();
        let f = build_from_profile(&p).unwrap();
        for (i, cell) in p.cells().iter().enumerate() {
            let iv = p.cell_interval(i);
            let mid = &iv.lo().scale(&Rational::new(1.into(), 2.into()))
                + &iv.hi().scale(&Rational::new(1.into(), 2.into()));
            assert_eq!(f.eval(&mid), signed(cell.signs.base, cell.amplitude));
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(
            random_sn_wavelet(5, 9, 1234).unwrap(),
            random_sn_wavelet(5, 9, 1234).unwrap()
        );
        assert!(random_sn_wavelet(5, 0, 1).is_err());
    }

    #[test]
    fn amplitude_field_guard() {
        assert_eq!(
            Amplitude::try_from(&QuadReal::inv_sqrt2()).unwrap(),
            Amplitude::InvSqrt2
        );
        let bad = QuadReal::frac(1, 2, 0, 1);
        assert_eq!(
            Amplitude::try_from(&bad),
            Err(Error::AmplitudeField(Box::new(bad.clone())))
        );
    }

    #[test]
    fn profile_validation() {
        let k = sn_constants(3).unwrap();
        let bad = AmplitudeSignProfile::new(
            3,
            vec![k.a.clone(), k.b.clone()],
            &[Amplitude::One],
            SignPlacement::default(),
        );
        assert!(bad.is_err());
        let mismatched = AmplitudeSignProfile::new(
            3,
            vec![k.e.clone(), k.b.clone()],
            &[Amplitude::One, Amplitude::Zero],
            SignPlacement::default(),
        );
        assert!(mismatched.is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("journe".parse::<Family>().is_err());
    }
}
