//! Coefficient fields and exact special values.
//!
//! Polynomials in this crate are generic over [`Scalar`], implemented for
//! `f64` and for arbitrary precision rationals. Gamma values at half-integers
//! are carried exactly as [`PiMultiple`]s, i.e. `q * pi^(m/2)` with rational `q`.

use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary precision rational.
pub type Rational = BigRational;

/// Shorthand for `n/d` as a [`Rational`].
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// Field of polynomial coefficients.
pub trait Scalar: Num + Clone + Neg<Output = Self> + fmt::Debug + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn as_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        ratio(n, d)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn as_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Exact value `coeff * pi^(half_pow / 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiMultiple {
    #[serde(with = "rational_string")]
    pub coeff: Rational,
    pub half_pow: i64,
}

impl PiMultiple {
    pub fn new(coeff: Rational, half_pow: i64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { coeff, half_pow }
        }
    }

    pub fn zero() -> Self {
        Self { coeff: Rational::zero(), half_pow: 0 }
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(q, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * std::f64::consts::PI.powf(self.half_pow as f64 / 2.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.half_pow + other.half_pow)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.coeff * q, self.half_pow)
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division of PiMultiple by zero");
        Self::new(&self.coeff / &other.coeff, self.half_pow - other.half_pow)
    }

    /// Sum of two values; `None` when the powers of pi differ and neither is zero.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.half_pow == other.half_pow)
            .then(|| Self::new(&self.coeff + &other.coeff, self.half_pow))
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = format_rational(&self.coeff);
        match self.half_pow {
            0 => write!(f, "{c}"),
            2 => write!(f, "{c}*pi"),
            1 => write!(f, "{c}*pi^(1/2)"),
            h if h % 2 == 0 => write!(f, "{c}*pi^{}", h / 2),
            h => write!(f, "{c}*pi^({h}/2)"),
        }
    }
}

/// Exact `Gamma(k / 2)` for `k >= 1`.
pub fn gamma_half(k: u64) -> PiMultiple {
    assert!(k >= 1, "Gamma(k/2) requires k >= 1");
    if k % 2 == 0 {
        let m = k / 2;
        PiMultiple::rational(Rational::from_integer(factorial(m - 1).into()))
    } else {
        // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
        let m = (k - 1) / 2;
        let num = factorial(2 * m);
        let den = BigUint::from(4u32).pow(m as u32) * factorial(m);
        PiMultiple::new(Rational::new(num.into(), den.into()), 1)
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Exact binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)` on rationals.
pub fn rising(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// Falling factorial `a (a-1) ... (a-k+1)` on rationals.
pub fn falling(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x -= Rational::one();
    }
    acc
}

/// Renders a rational as `num/den`, or `num` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses `num/den` or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

pub fn is_half_integer_or_integer(q: &Rational) -> bool {
    let d = q.denom();
    d.is_one() || *d == BigInt::from(2)
}

/// Exact `Gamma(q)` when `2q` is a positive integer.
pub fn gamma_rational_exact(q: &Rational) -> Option<PiMultiple> {
    let twice = q * BigInt::from(2);
    if !twice.is_integer() || !twice.is_positive() {
        return None;
    }
    twice.to_integer().to_u64().map(gamma_half)
}

pub(crate) mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}
