//! Exact scalars: big rationals, rational multiples of π, and the field ℚ(√2).
//!
//! Every frequency-axis endpoint used in this crate is a [`QPiScalar`] and every
//! function value is a [`QuadReal`]. Neither type ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `2^exp` as an exact rational; `exp` may be negative.
pub fn pow2(exp: i64) -> Rational {
    let mag = BigInt::one() << exp.unsigned_abs();
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new_raw(BigInt::one(), mag)
    }
}

/// Largest `j` with `2^j <= q`. `q` must be positive.
pub fn floor_log2(q: &Rational) -> i64 {
    debug_assert!(q.is_positive());
    let e = q.numer().bits() as i64 - q.denom().bits() as i64;
    if *q >= pow2(e) {
        e
    } else {
        e - 1
    }
}

/// 2-adic valuation of a nonzero integer.
pub fn two_adic_valuation(k: i64) -> u32 {
    debug_assert!(k != 0);
    k.trailing_zeros()
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    // to_f64 on BigRational goes through a correctly rounded path
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub(crate) mod rational_json {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Repr {
        num: String,
        den: String,
    }

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let repr = Repr::deserialize(d)?;
        let num: BigInt = repr
            .num
            .parse()
            .map_err(|_| D::Error::custom(format!("bad numerator {:?}", repr.num)))?;
        let den: BigInt = repr
            .den
            .parse()
            .map_err(|_| D::Error::custom(format!("bad denominator {:?}", repr.den)))?;
        if !den.is_positive() {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(Rational::new(num, den))
    }
}

/// The real number `coeff · π`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QPiScalar {
    #[serde(rename = "pi_coeff", with = "rational_json")]
    coeff: Rational,
}

impl QPiScalar {
    pub fn new(coeff: Rational) -> Self {
        QPiScalar { coeff }
    }

    /// `num/den · π`. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        QPiScalar::new(Rational::new(num.into(), den.into()))
    }

    pub fn from_int(k: i64) -> Self {
        QPiScalar::new(Rational::from_integer(k.into()))
    }

    pub fn zero() -> Self {
        QPiScalar::new(Rational::zero())
    }

    pub fn pi() -> Self {
        QPiScalar::from_int(1)
    }

    /// `2kπ`, the translation step of the integer lattice on the frequency side.
    pub fn two_k_pi(k: i64) -> Self {
        QPiScalar::new(Rational::from_integer(BigInt::from(k) * 2))
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.coeff.is_positive() {
            1
        } else if self.coeff.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        QPiScalar::new(self.coeff.abs())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QPiScalar::new(&self.coeff * r)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * std::f64::consts::PI
    }

    /// Exact conversion of a finite float given in units of π.
    pub fn from_f64_pi_units(x: f64) -> Option<Self> {
        Rational::from_float(x).map(QPiScalar::new)
    }
}

impl fmt::Debug for QPiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π", self.coeff)
    }
}

impl fmt::Display for QPiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π", self.coeff)
    }
}

impl Add for &QPiScalar {
    type Output = QPiScalar;
    fn add(self, rhs: &QPiScalar) -> QPiScalar {
        QPiScalar::new(&self.coeff + &rhs.coeff)
    }
}

impl Add for QPiScalar {
    type Output = QPiScalar;
    fn add(self, rhs: QPiScalar) -> QPiScalar {
        QPiScalar::new(self.coeff + rhs.coeff)
    }
}

impl Sub for &QPiScalar {
    type Output = QPiScalar;
    fn sub(self, rhs: &QPiScalar) -> QPiScalar {
        QPiScalar::new(&self.coeff - &rhs.coeff)
    }
}

impl Sub for QPiScalar {
    type Output = QPiScalar;
    fn sub(self, rhs: QPiScalar) -> QPiScalar {
        QPiScalar::new(self.coeff - rhs.coeff)
    }
}

impl Neg for &QPiScalar {
    type Output = QPiScalar;
    fn neg(self) -> QPiScalar {
        QPiScalar::new(-&self.coeff)
    }
}

impl Neg for QPiScalar {
    type Output = QPiScalar;
    fn neg(self) -> QPiScalar {
        QPiScalar::new(-self.coeff)
    }
}

impl Mul<&Rational> for &QPiScalar {
    type Output = QPiScalar;
    fn mul(self, rhs: &Rational) -> QPiScalar {
        self.scale(rhs)
    }
}

/// Exact sign of an ordered-field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        self as i32
    }

    fn of(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Positive
        } else if q.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i32() * rhs.as_i32() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }
}

/// `a + b√2`, an element of ℚ(√2).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadReal {
    #[serde(with = "rational_json")]
    a: Rational,
    #[serde(with = "rational_json")]
    b: Rational,
}

impl QuadReal {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadReal { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadReal::new(a, Rational::zero())
    }

    pub fn from_int(a: i64) -> Self {
        QuadReal::from_rational(Rational::from_integer(a.into()))
    }

    /// `p/q + (r/s)√2`.
    pub fn frac(p: i64, q: i64, r: i64, s: i64) -> Self {
        QuadReal::new(
            Rational::new(p.into(), q.into()),
            Rational::new(r.into(), s.into()),
        )
    }

    pub fn zero() -> Self {
        QuadReal::from_int(0)
    }

    pub fn one() -> Self {
        QuadReal::from_int(1)
    }

    /// `1/√2 = (1/2)√2`.
    pub fn inv_sqrt2() -> Self {
        QuadReal::frac(0, 1, 1, 2)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign, decided without evaluating √2: equal component signs give
    /// that sign; mixed signs are settled by comparing `a²` with `2b²`.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of(&self.a);
        let sb = Sign::of(&self.b);
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * Rational::from_integer(2.into());
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    // a² = 2b² has no rational solution with b ≠ 0
                    Ordering::Equal => unreachable!("√2 is irrational"),
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√2)^{-1} = (a - b√2) / (a² - 2b²)
        let norm = &self.a * &self.a - &self.b * &self.b * Rational::from_integer(2.into());
        Some(QuadReal::new(&self.a / &norm, -&self.b / &norm))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadReal::new(&self.a * r, &self.b * r)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

impl fmt::Debug for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√2", self.b),
            (false, false) => write!(f, "{}+{}√2", self.a, self.b),
        }
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl Add for &QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: &QuadReal) -> QuadReal {
        QuadReal::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: QuadReal) -> QuadReal {
        &self + &rhs
    }
}

impl Sub for &QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: &QuadReal) -> QuadReal {
        QuadReal::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Sub for QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: QuadReal) -> QuadReal {
        &self - &rhs
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal::new(-&self.a, -&self.b)
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        -&self
    }
}

impl Mul for &QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: &QuadReal) -> QuadReal {
        let two = Rational::from_integer(2.into());
        QuadReal::new(
            &self.a * &rhs.a + &self.b * &rhs.b * two,
            &self.a * &rhs.b + &rhs.a * &self.b,
        )
    }
}

impl Mul for QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: QuadReal) -> QuadReal {
        &self * &rhs
    }
}

impl Zero for QuadReal {
    fn zero() -> Self {
        QuadReal::zero()
    }
    fn is_zero(&self) -> bool {
        QuadReal::is_zero(self)
    }
}

/// Integers in the open interval `(lo, hi)` of rationals.
pub(crate) fn integers_strictly_between(
    lo: &Rational,
    hi: &Rational,
) -> std::ops::RangeInclusive<i64> {
    let first: BigInt = lo.floor().to_integer() + 1;
    let last: BigInt = hi.ceil().to_integer() - 1;
    let first = first.to_i64().expect("index range exceeds i64");
    let last = last.to_i64().expect("index range exceeds i64");
    first..=last
}
