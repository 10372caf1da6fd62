//! Sparse multivariate polynomials keyed by exponent multi-indices.
//!
//! [`ExactPolynomial`] uses rational coefficients so the Laplacian and the
//! Euler operator are exact and harmonicity is a decision, not a tolerance.
//! [`RealPolynomial`] is the floating-point counterpart produced by rotations
//! and orthonormalization.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::{format_f64, format_rational, parse_rational, Rational, Scalar};

/// Exponent multi-index `alpha`, one entry per variable.
pub type MultiIndex = Vec<u32>;

/// Polynomial in `nvars` variables with coefficients in `T`.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<T: Scalar> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, T>,
}

pub type ExactPolynomial = MultiPoly<Rational>;
pub type RealPolynomial = MultiPoly<f64>;

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut q = Self::zero(nvars);
        q.add_term(vec![0; nvars], c);
        q
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    /// The coordinate function `x_i` (0-based index).
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut alpha = vec![0; nvars];
        alpha[i] = 1;
        Self::monomial(alpha, T::one())
    }

    pub fn monomial(alpha: MultiIndex, c: T) -> Self {
        let mut q = Self::zero(alpha.len());
        q.add_term(alpha, c);
        q
    }

    /// `|x|^2 = x_1^2 + ... + x_p^2`.
    pub fn radius_squared(nvars: usize) -> Self {
        let mut q = Self::zero(nvars);
        for i in 0..nvars {
            let mut alpha = vec![0; nvars];
            alpha[i] = 2;
            q.add_term(alpha, T::one());
        }
        q
    }

    /// Builds a polynomial from `(alpha, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, T)>) -> Result<Self> {
        let mut q = Self::zero(nvars);
        for (alpha, c) in terms {
            if alpha.len() != nvars {
                return domain(format!(
                    "multi-index of length {} in a polynomial of {nvars} variables",
                    alpha.len()
                ));
            }
            q.add_term(alpha, c);
        }
        Ok(q)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[u32]) -> T {
        self.terms.get(alpha).cloned().unwrap_or_else(T::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: T) {
        debug_assert_eq!(alpha.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&alpha) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(alpha, s);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let ab = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(ab, x.clone() * y.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `sum_alpha c_alpha x^alpha`, summed in multi-index order.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.nvars {
            return domain(format!("point of dimension {} for a polynomial in {} variables", x.len(), self.nvars));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let deg = self.degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<f64>> = x
            .iter()
            .map(|&xi| {
                let mut pw = Vec::with_capacity(deg + 1);
                let mut v = 1.0;
                for _ in 0..=deg {
                    pw.push(v);
                    v *= xi;
                }
                pw
            })
            .collect();
        self.terms
            .iter()
            .map(|(a, c)| {
                let m: f64 = a.iter().enumerate().map(|(i, &e)| powers[i][e as usize]).product();
                c.as_f64() * m
            })
            .sum()
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            let e = a[i];
            if e == 0 {
                continue;
            }
            let mut b = a.clone();
            b[i] -= 1;
            out.add_term(b, c.clone() * T::from_i64(e as i64));
        }
        out
    }

    /// `sum_i d^2/dx_i^2`; the term `x^alpha` maps to `sum_i alpha_i (alpha_i - 1) x^(alpha - 2 e_i)`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            for i in 0..self.nvars {
                let e = a[i];
                if e < 2 {
                    continue;
                }
                let mut b = a.clone();
                b[i] -= 2;
                out.add_term(b, c.clone() * T::from_i64((e * (e - 1)) as i64));
            }
        }
        out
    }

    /// Euler operator `sum_i x_i d/dx_i`, which scales each term by its total degree.
    pub fn euler_apply(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            let d: u32 = a.iter().sum();
            out.add_term(a.clone(), c.clone() * T::from_i64(d as i64));
        }
        out
    }

    /// Common total degree of all terms. The zero polynomial reports 0.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|a| a.iter().sum::<u32>());
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    /// Maps each coefficient through `f`.
    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        let mut out = MultiPoly::zero(self.nvars);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), f(c));
        }
        out
    }

    pub fn to_real(&self) -> RealPolynomial {
        self.map_coeffs(|c| c.as_f64())
    }

    /// Re-embeds into `nvars` variables, placing the current variables first.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mut out = Self::zero(nvars);
        for (a, c) in &self.terms {
            let mut b = a.clone();
            b.resize(nvars, 0);
            out.add_term(b, c.clone());
        }
        out
    }

    /// Multiplies by `x_i^k`.
    pub fn shift_var(&self, i: usize, k: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            let mut b = a.clone();
            b[i] += k;
            out.add_term(b, c.clone());
        }
        out
    }

    /// Substitutes `x -> R x`, i.e. returns `y -> q(R y)` with float coefficients.
    pub fn rotate(&self, r: &RotationMatrix) -> Result<RealPolynomial> {
        let p = self.nvars;
        if r.dim() != p {
            return domain(format!("rotation of size {} applied to a polynomial in {p} variables", r.dim()));
        }
        let deg = self.degree().unwrap_or(0);
        // forms[i][k] = (R y)_i ^ k
        let forms: Vec<Vec<RealPolynomial>> = (0..p)
            .map(|i| {
                let mut lin = RealPolynomial::zero(p);
                for j in 0..p {
                    let mut a = vec![0; p];
                    a[j] = 1;
                    lin.add_term(a, r.matrix()[(i, j)]);
                }
                let mut pw = vec![RealPolynomial::one(p)];
                for k in 1..=deg as usize {
                    let next = pw[k - 1].mul(&lin);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = RealPolynomial::zero(p);
        for (a, c) in &self.terms {
            let mut term = RealPolynomial::constant(p, c.as_f64());
            for (i, &e) in a.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&forms[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl RealPolynomial {
    /// Largest absolute coefficient; 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Drops coefficients with magnitude at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            if c.abs() > tol {
                out.add_term(a.clone(), *c);
            }
        }
        out
    }
}

impl ExactPolynomial {
    /// True iff the Laplacian vanishes identically.
    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| TermJson { alpha: a.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolynomialJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let num: BigInt = t.num.parse().map_err(|_| Error::Domain(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| Error::Domain(format!("bad denominator {:?}", t.den)))?;
            if den == BigInt::from(0) {
                return domain("zero denominator");
            }
            terms.push((t.alpha.clone(), Rational::new(num, den)));
        }
        Self::from_terms(j.nvars, terms)
    }

    /// Parses a `+`/`-` separated sum of terms such as `3/2*x1^2 - x2*x3 + 1`.
    pub fn parse(nvars: usize, s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Domain(format!("cannot parse polynomial {s:?}: {msg}"));
        let mut q = Self::zero(nvars);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(q);
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let mut coeff = Rational::from_i64(sign);
            let mut alpha = vec![0u32; nvars];
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|e| bad(e.to_string()))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad(format!("bad variable {factor:?}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad(format!("variable x{idx} out of range")));
                    }
                    alpha[idx - 1] += exp;
                } else {
                    let c = parse_rational(factor).ok_or_else(|| bad(format!("bad coefficient {factor:?}")))?;
                    coeff *= c;
                }
            }
            q.add_term(alpha, coeff);
        }
        Ok(q)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(a, c)| (a, format_rational(c))))
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(a, c)| (a, format_f64(*c))))
    }
}

fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (&'a MultiIndex, String)>) -> fmt::Result {
    let mut first = true;
    for (a, c) in terms {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let vars: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
            .collect();
        if vars.is_empty() {
            write!(f, "{mag}")?;
        } else if mag == "1" {
            write!(f, "{}", vars.join("*"))?;
        } else {
            write!(f, "{mag}*{}", vars.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// JSON form `{nvars, terms: [{alpha, num, den}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: MultiIndex,
    pub num: String,
    pub den: String,
}

/// All multi-indices of length `nvars` with total degree `n`, in increasing lexicographic order.
pub fn homogeneous_multi_indices(nvars: usize, n: u32) -> Vec<MultiIndex> {
    fn rec(nvars: usize, n: u32, prefix: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == nvars {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=n {
            prefix.push(e);
            rec(nvars, n - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, n, &mut Vec::with_capacity(nvars), &mut out);
    out.sort();
    out
}

/// A `p x p` orthogonal matrix, `R^T R = I` to 1e-12 entrywise.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationMatrix(DMatrix<f64>);

impl RotationMatrix {
    pub const ORTHOGONALITY_TOL: f64 = 1e-12;

    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return domain("rotation matrix must be square");
        }
        let defect = (m.transpose() * &m - DMatrix::identity(m.nrows(), m.nrows())).amax();
        if !(defect <= Self::ORTHOGONALITY_TOL) {
            return domain(format!("matrix is not orthogonal (max |R^T R - I| = {defect:e})"));
        }
        Ok(Self(m))
    }

    pub fn from_rows(p: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != p * p {
            return domain(format!("expected {} entries, got {}", p * p, rows.len()));
        }
        Self::new(DMatrix::from_row_slice(p, p, rows))
    }

    pub fn identity(p: usize) -> Self {
        Self(DMatrix::identity(p, p))
    }

    /// Rotation by `angle` in the `(i, j)` coordinate plane.
    pub fn plane(p: usize, i: usize, j: usize, angle: f64) -> Self {
        let mut m = DMatrix::identity(p, p);
        let (s, c) = angle.sin_cos();
        m[(i, i)] = c;
        m[(j, j)] = c;
        m[(i, j)] = -s;
        m[(j, i)] = s;
        Self(m)
    }

    /// Orthonormalizes a standard normal matrix drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Self {
        loop {
            let g = DMatrix::from_fn(p, p, |_, _| rng.sample::<f64, _>(StandardNormal));
            let qr = g.qr();
            let r = qr.r();
            if (0..p).any(|i| r[(i, i)].abs() < 1e-8) {
                continue;
            }
            let mut q = qr.q();
            // fix column signs so the distribution is Haar
            for i in 0..p {
                if r[(i, i)] < 0.0 {
                    q.column_mut(i).neg_mut();
                }
            }
            return Self(q);
        }
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let p = self.dim();
        (0..p).map(|i| (0..p).map(|j| self.0[(i, j)] * x[j]).sum()).collect()
    }
}
