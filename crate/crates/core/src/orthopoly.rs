//! Orthogonal polynomials on `[-1, 1]` for Jacobi weights `(1-x)^alpha (1+x)^beta`.
//!
//! Exponents are rational, which lets the moments of the weight (divided by its
//! total mass) be computed exactly. Gram-Schmidt and the Rodrigues construction
//! therefore run in exact arithmetic; Gauss rules and everything that touches a
//! callable are floating point.

use std::io::Write;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::{binomial, falling, format_f64, gamma_rational_exact, pairwise_sum, ratio, rising, Rational, Scalar};

/// Dense univariate polynomial `c_0 + c_1 x + ... + c_n x^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly1D<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly1D<T> {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![T::zero(); n + 1];
        c[n] = T::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the top power (`k_n`).
    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of `x^(n-1)` (`l_n`).
    pub fn subleading(&self) -> T {
        match self.coeffs.len() {
            0 | 1 => T::zero(),
            len => self.coeffs[len - 2].clone(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.as_f64())
    }

    /// Exact evaluation at a point of the coefficient field.
    pub fn eval_exact(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, j: usize) -> Self {
        (0..j).fold(self.clone(), |acc, _| acc.derivative())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|v| v.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Multiplies by `x`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(T::zero());
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn to_real(&self) -> Poly1D<f64> {
        Poly1D::new(self.coeffs.iter().map(|c| c.as_f64()).collect())
    }
}

impl Poly1D<f64> {
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Jacobi weight `w(x) = (1-x)^alpha (1+x)^beta` with `alpha, beta > -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    alpha: Rational,
    beta: Rational,
}

impl Weight {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        let minus_one = -Rational::one();
        if alpha <= minus_one || beta <= minus_one {
            return domain(format!("weight exponents must exceed -1 (alpha = {alpha}, beta = {beta})"));
        }
        Ok(Self { alpha, beta })
    }

    /// Exponents given as multiples of one half.
    pub fn from_halves(alpha_halves: i64, beta_halves: i64) -> Result<Self> {
        Self::new(ratio(alpha_halves, 2), ratio(beta_halves, 2))
    }

    /// `alpha = beta = 0`.
    pub fn uniform() -> Self {
        Self { alpha: Rational::zero(), beta: Rational::zero() }
    }

    /// `alpha = beta = -1/2`.
    pub fn chebyshev() -> Self {
        Self { alpha: ratio(-1, 2), beta: ratio(-1, 2) }
    }

    /// `(1 - t^2)^((p-3)/2)`, the measure of `t = <xi, eta>` on `S^(p-1)`.
    pub fn sphere(p: usize) -> Result<Self> {
        if p < 2 {
            return domain(format!("sphere weight needs p >= 2, got {p}"));
        }
        let e = ratio(p as i64 - 3, 2);
        Self::new(e.clone(), e)
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.as_f64()
    }

    pub fn beta_f64(&self) -> f64 {
        self.beta.as_f64()
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn eval(&self, x: f64) -> f64 {
        (1.0 - x).powf(self.alpha_f64()) * (1.0 + x).powf(self.beta_f64())
    }

    /// `int_{-1}^{1} w(x) dx = 2^(a+b+1) Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)`.
    pub fn total_mass(&self) -> f64 {
        let one = Rational::one();
        let a1 = &self.alpha + &one;
        let b1 = &self.beta + &one;
        let ab2 = &a1 + &b1;
        let g = |q: &Rational| match gamma_rational_exact(q) {
            Some(v) => v.to_f64(),
            None => statrs::function::gamma::gamma(q.as_f64()),
        };
        let two_pow = 2f64.powf((&ab2 - &one).as_f64());
        two_pow * (g(&a1) * g(&b1) / g(&ab2))
    }

    /// Exact normalized moments `m_k = <x^k, 1>_w / <1, 1>_w` for `k <= kmax`.
    ///
    /// Uses `<(1+x)^j, 1>_w / <1, 1>_w = 2^j (b+1)_j / (a+b+2)_j` and a binomial change of basis.
    pub fn normalized_moments(&self, kmax: usize) -> Vec<Rational> {
        let one = Rational::one();
        let b1 = &self.beta + &one;
        let ab2 = &self.alpha + &self.beta + Rational::from_i64(2);
        let shifted: Vec<Rational> = (0..=kmax as u64)
            .map(|j| Rational::from_i64(2).pow(j as i32) * rising(&b1, j) / rising(&ab2, j))
            .collect();
        (0..=kmax as u64)
            .map(|k| {
                let mut acc = Rational::zero();
                for i in 0..=k {
                    let c = Rational::from_integer(binomial(k, i).into()) * &shifted[i as usize];
                    if (k - i) % 2 == 0 {
                        acc += c;
                    } else {
                        acc -= c;
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact `<f, g>_w / <1, 1>_w` for polynomials.
    pub fn normalized_inner_exact(&self, f: &Poly1D<Rational>, g: &Poly1D<Rational>) -> Rational {
        if f.is_zero() || g.is_zero() {
            return Rational::zero();
        }
        let m = self.normalized_moments(f.coeffs.len() + g.coeffs.len());
        let mut acc = Rational::zero();
        for (i, a) in f.coeffs.iter().enumerate() {
            for (j, b) in g.coeffs.iter().enumerate() {
                acc += a * b * &m[i + j];
            }
        }
        acc
    }

    /// Exact coefficients `(a_k, b_k)`, `k < n`, of the monic recurrence
    /// `x pi_k = pi_{k+1} + a_k pi_k + b_k pi_{k-1}` (with `b_0 = 0`).
    pub fn monic_recurrence(&self, n: usize) -> (Vec<Rational>, Vec<Rational>) {
        let (a, b) = (&self.alpha, &self.beta);
        let two = Rational::from_i64(2);
        let four = Rational::from_i64(4);
        let one = Rational::one();
        let s = a + b;
        let mut diag = Vec::with_capacity(n);
        let mut off = Vec::with_capacity(n);
        for k in 0..n {
            let kk = Rational::from_i64(k as i64);
            let t = &two * &kk + &s;
            let ak = if k == 0 {
                (b - a) / (&s + &two)
            } else {
                (b * b - a * a) / (&t * (&t + &two))
            };
            diag.push(ak);
            let bk = match k {
                0 => Rational::zero(),
                1 => &four * (a + &one) * (b + &one) / ((&s + &two) * (&s + &two) * (&s + Rational::from_i64(3))),
                _ => {
                    &four * &kk * (&kk + a) * (&kk + b) * (&kk + &s)
                        / (&t * &t * (&t + &one) * (&t - &one))
                }
            };
            off.push(bk);
        }
        (diag, off)
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(1-x)^({})(1+x)^({})", self.alpha, self.beta)
    }
}

/// Gauss rule on `[-1, 1]` for a Jacobi weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussRule {
    pub alpha: f64,
    pub beta: f64,
    pub exact_degree: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)` with pairwise summation.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect();
        pairwise_sum(&terms)
    }

    /// As [`integrate`](Self::integrate) but fails on a non-finite integrand value.
    pub fn try_integrate(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        let mut terms = Vec::with_capacity(self.nodes.len());
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::Evaluation(format!("integrand is {v} at node {x}")));
            }
            terms.push(w * v);
        }
        Ok(pairwise_sum(&terms))
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node", "weight"])?;
        for (x, wt) in self.nodes.iter().zip(&self.weights) {
            w.write_record([format_f64(*x), format_f64(*wt)])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `m`-point Gauss rule for `w`, exact for polynomials of degree `2m - 1`.
///
/// Nodes are eigenvalues of the Jacobi matrix (Golub-Welsch), polished by
/// Newton steps on the monic recurrence; weights come from the Christoffel
/// function `mu_0 / sum_k phat_k(x)^2`.
pub fn gauss_rule(w: &Weight, m: usize) -> Result<GaussRule> {
    if m == 0 {
        return domain("a Gauss rule needs at least one node");
    }
    let (diag_q, off_q) = w.monic_recurrence(m + 1);
    let diag: Vec<f64> = diag_q.iter().map(|q| q.as_f64()).collect();
    let off: Vec<f64> = off_q.iter().map(|q| q.as_f64()).collect();

    let mut jac = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        jac[(i, i)] = diag[i];
        if i + 1 < m {
            let s = off[i + 1].sqrt();
            jac[(i, i + 1)] = s;
            jac[(i + 1, i)] = s;
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = monic_value_and_derivative(&diag, &off, m, *x);
            if dv == 0.0 {
                break;
            }
            let step = v / dv;
            let nx = *x - step;
            if !(nx > -1.0 && nx < 1.0) {
                break;
            }
            *x = nx;
            if step.abs() <= 1e-17 {
                break;
            }
        }
    }

    let mass = w.total_mass();
    let weights = nodes
        .iter()
        .map(|&x| {
            // orthonormal recurrence sqrt(b_{k+1}) q_{k+1} = (x - a_k) q_k - sqrt(b_k) q_{k-1}
            let mut prev = 0.0;
            let mut cur = 1.0;
            let mut sum = 1.0;
            for k in 0..m - 1 {
                let next = ((x - diag[k]) * cur - off[k].sqrt() * prev) / off[k + 1].sqrt();
                prev = cur;
                cur = next;
                sum += cur * cur;
            }
            mass / sum
        })
        .collect();
    Ok(GaussRule { alpha: w.alpha_f64(), beta: w.beta_f64(), exact_degree: 2 * m - 1, nodes, weights })
}

fn monic_value_and_derivative(diag: &[f64], off: &[f64], m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (0.0, 1.0);
    let (mut d0, mut d1) = (0.0, 0.0);
    for k in 0..m {
        let p2 = (x - diag[k]) * p1 - off[k] * p0;
        let d2 = p1 + (x - diag[k]) * d1 - off[k] * d0;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    (p1, d1)
}

/// Node count used for inner products involving callables.
pub const CALLABLE_RULE_SIZE: usize = 128;

/// Either side of an inner product.
#[derive(Clone, Copy)]
pub enum Integrand<'a> {
    Poly(&'a Poly1D<f64>),
    Func(&'a dyn Fn(f64) -> f64),
}

impl Integrand<'_> {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Integrand::Poly(q) => q.eval(x),
            Integrand::Func(f) => f(x),
        }
    }

    fn degree(&self) -> Option<usize> {
        match self {
            Integrand::Poly(q) => Some(q.degree().unwrap_or(0)),
            Integrand::Func(_) => None,
        }
    }
}

/// `<f, g>_w = int f g w dx`.
///
/// Polynomial pairs use a rule exact for their product; anything involving a
/// callable uses the fixed [`CALLABLE_RULE_SIZE`]-point rule.
pub fn inner_product(f: Integrand<'_>, g: Integrand<'_>, w: &Weight) -> Result<f64> {
    let m = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => (a + b) / 2 + 1,
        _ => CALLABLE_RULE_SIZE,
    };
    let rule = gauss_rule(w, m)?;
    rule.try_integrate(|x| f.eval(x) * g.eval(x))
}

/// Monic orthogonal polynomials `phi_0 .. phi_{n_max}` by exact Gram-Schmidt on the monomials.
pub fn gram_schmidt(w: &Weight, n_max: usize) -> Vec<Poly1D<Rational>> {
    let mut out: Vec<Poly1D<Rational>> = Vec::with_capacity(n_max + 1);
    let mut norms: Vec<Rational> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let xn = Poly1D::<Rational>::monomial(n);
        let mut phi = xn.clone();
        for (prev, nrm) in out.iter().zip(&norms) {
            let c = w.normalized_inner_exact(&xn, prev) / nrm;
            phi = phi.sub(&prev.scale(&c));
        }
        norms.push(w.normalized_inner_exact(&phi, &phi));
        out.push(phi);
    }
    out
}

/// Coefficients of `phi_{n+1} - (A_n x + B_n) phi_n + C_n phi_{n-1} = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceCoeffs {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

/// Relative orthogonality defect above which [`recurrence_coeffs`] refuses its input.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

/// Extracts `A_n = k_{n+1}/k_n`, `B_n = A_n (l_{n+1}/k_{n+1} - l_n/k_n)` and
/// `C_n = (A_n/A_{n-1}) |phi_n|^2/|phi_{n-1}|^2` for `n = 0 .. len-2`, `C_0 = 0`.
pub fn recurrence_coeffs<T: Scalar>(phis: &[Poly1D<T>], w: &Weight) -> Result<RecurrenceCoeffs> {
    let phis: Vec<Poly1D<f64>> = phis.iter().map(|q| q.to_real()).collect();
    for (n, q) in phis.iter().enumerate() {
        if q.degree() != Some(n) {
            return Err(Error::Diagnostic(format!("polynomial {n} has degree {:?}", q.degree())));
        }
    }
    let top = phis.len().saturating_sub(1);
    let rule = gauss_rule(w, top + 1)?;
    let ip = |f: &Poly1D<f64>, g: &Poly1D<f64>| rule.integrate(|x| f.eval(x) * g.eval(x));
    let norms: Vec<f64> = phis.iter().map(|q| ip(q, q)).collect();
    for i in 0..phis.len() {
        for j in 0..i {
            let rel = ip(&phis[i], &phis[j]).abs() / (norms[i] * norms[j]).sqrt();
            if rel > ORTHOGONALITY_TOL {
                return Err(Error::Diagnostic(format!(
                    "polynomials {j} and {i} are not orthogonal (relative inner product {rel:e})"
                )));
            }
        }
    }
    let mut out = RecurrenceCoeffs { a: Vec::new(), b: Vec::new(), c: Vec::new() };
    for n in 0..top {
        let (kn, kn1) = (phis[n].leading(), phis[n + 1].leading());
        let an = kn1 / kn;
        let bn = an * (phis[n + 1].subleading() / kn1 - phis[n].subleading() / kn);
        let cn = if n == 0 { 0.0 } else { an / out.a[n - 1] * norms[n] / norms[n - 1] };
        out.a.push(an);
        out.b.push(bn);
        out.c.push(cn);
    }
    Ok(out)
}

/// Largest `|phi_{n+1} - (A_n x + B_n) phi_n + C_n phi_{n-1}|_w / |phi_{n+1}|_w`.
pub fn recurrence_residual<T: Scalar>(phis: &[Poly1D<T>], rc: &RecurrenceCoeffs, w: &Weight) -> Result<f64> {
    let phis: Vec<Poly1D<f64>> = phis.iter().map(|q| q.to_real()).collect();
    let rule = gauss_rule(w, phis.len() + 1)?;
    let norm = |q: &Poly1D<f64>| rule.integrate(|x| q.eval(x).powi(2)).sqrt();
    let mut worst: f64 = 0.0;
    for n in 0..rc.a.len() {
        let lin = Poly1D::new(vec![rc.b[n], rc.a[n]]);
        let mut r = phis[n + 1].sub(&lin.mul(&phis[n]));
        if n > 0 {
            r = r.add(&phis[n - 1].scale(&rc.c[n]));
        }
        worst = worst.max(norm(&r) / norm(&phis[n + 1]));
    }
    Ok(worst)
}

/// `psi_n = w^{-1} (d/dx)^n [w (1-x^2)^n]`, expanded by the Leibniz rule:
/// `sum_k C(n,k) (-1)^k [n+a]_k [n+b]_{n-k} (1-x)^{n-k} (1+x)^k` with falling factorials.
pub fn jacobi_rodrigues(n: usize, w: &Weight) -> Poly1D<Rational> {
    let nn = Rational::from_i64(n as i64);
    let na = &nn + w.alpha();
    let nb = &nn + w.beta();
    let one_minus = Poly1D::new(vec![Rational::one(), -Rational::one()]);
    let one_plus = Poly1D::new(vec![Rational::one(), Rational::one()]);
    let pow = |q: &Poly1D<Rational>, e: usize| (0..e).fold(Poly1D::one(), |acc, _| acc.mul(q));
    let mut out = Poly1D::zero();
    for k in 0..=n {
        let mut c = Rational::from_integer(binomial(n as u64, k as u64).into())
            * falling(&na, k as u64)
            * falling(&nb, (n - k) as u64);
        if k % 2 == 1 {
            c = -c;
        }
        out = out.add(&pow(&one_minus, n - k).mul(&pow(&one_plus, k)).scale(&c));
    }
    out
}

/// Bernstein polynomial `B_n(x; f) = sum_k C(n,k) f(k/n) x^k (1-x)^(n-k)`, expanded in monomials.
pub fn bernstein<T: Scalar>(f: impl Fn(&T) -> T, n: usize) -> Result<Poly1D<T>> {
    if n == 0 {
        return domain("Bernstein degree must be at least 1");
    }
    let one_minus = Poly1D::new(vec![T::one(), -T::one()]);
    let mut pows = vec![Poly1D::<T>::one()];
    for k in 1..=n {
        let next = pows[k - 1].mul(&one_minus);
        pows.push(next);
    }
    let mut out = Poly1D::zero();
    for k in 0..=n {
        let fk = f(&T::from_ratio(k as i64, n as i64));
        let big = binomial(n as u64, k as u64);
        let c = T::from_rational(&Rational::from_integer(big.into())) * fk;
        let mut basis = pows[n - k].clone();
        for _ in 0..k {
            basis = basis.shift();
        }
        out = out.add(&basis.scale(&c));
    }
    Ok(out)
}

/// `B_n(x; f)` by de Casteljau's algorithm; stays accurate where the monomial
/// expansion of [`bernstein`] cancels catastrophically.
pub fn bernstein_eval(f: impl Fn(f64) -> f64, n: usize, x: f64) -> Result<f64> {
    if n == 0 {
        return domain("Bernstein degree must be at least 1");
    }
    let mut b: Vec<f64> = (0..=n).map(|k| f(k as f64 / n as f64)).collect();
    for m in (1..=n).rev() {
        for k in 0..m {
            b[k] = (1.0 - x) * b[k] + x * b[k + 1];
        }
    }
    Ok(b[0])
}

/// Weighted least-squares projection `sum_k a_k phi_k` with `a_k = <f, phi_k>/|phi_k|^2`.
pub fn best_approximation(f: &dyn Fn(f64) -> f64, w: &Weight, n: usize) -> Result<Poly1D<f64>> {
    let rule = gauss_rule(w, CALLABLE_RULE_SIZE.max(n + 1))?;
    let mut out = Poly1D::zero();
    for phi in gram_schmidt(w, n) {
        let phi = phi.to_real();
        let num = rule.try_integrate(|x| f(x) * phi.eval(x))?;
        let den = rule.integrate(|x| phi.eval(x).powi(2));
        out = out.add(&phi.scale(&(num / den)));
    }
    Ok(out)
}

/// Bessel partial sums `sum_{k<=n} <f, phihat_k>^2` against `|f|^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParsevalReport {
    pub partial_sums: Vec<f64>,
    pub norm_sq: f64,
}

impl ParsevalReport {
    /// `|f|^2 - partial_sum_n`.
    pub fn gap(&self, n: usize) -> f64 {
        self.norm_sq - self.partial_sums[n]
    }
}

pub fn parseval_report(f: &dyn Fn(f64) -> f64, w: &Weight, n_max: usize) -> Result<ParsevalReport> {
    let rule = gauss_rule(w, CALLABLE_RULE_SIZE.max(n_max + 1))?;
    let norm_sq = rule.try_integrate(|x| f(x).powi(2))?;
    let mut acc = 0.0;
    let mut partial_sums = Vec::with_capacity(n_max + 1);
    for phi in gram_schmidt(w, n_max) {
        let nrm = w.normalized_inner_exact(&phi, &phi).as_f64() * w.total_mass();
        let phi = phi.to_real().scale(&(1.0 / nrm.sqrt()));
        let c = rule.integrate(|x| f(x) * phi.eval(x));
        acc += c * c;
        partial_sums.push(acc);
    }
    Ok(ParsevalReport { partial_sums, norm_sq })
}

/// Least `lambda` minimizing `|a - lambda b|_w` and the resulting relative residual
/// `|a - lambda b|_w / |a|_w`; measures how far two polynomials are from proportional.
pub fn proportionality_residual(a: &Poly1D<f64>, b: &Poly1D<f64>, w: &Weight) -> Result<(f64, f64)> {
    let deg = a.degree().unwrap_or(0).max(b.degree().unwrap_or(0));
    let rule = gauss_rule(w, deg + 1)?;
    let ab = rule.integrate(|x| a.eval(x) * b.eval(x));
    let bb = rule.integrate(|x| b.eval(x).powi(2));
    let aa = rule.integrate(|x| a.eval(x).powi(2));
    let lambda = ab / bb;
    let r = a.sub(&b.scale(&lambda));
    let rr = rule.integrate(|x| r.eval(x).powi(2));
    Ok((lambda, (rr.max(0.0) / aa).sqrt()))
}

/// True when `a = lambda b` for some nonzero rational `lambda`.
pub fn is_exactly_proportional(a: &Poly1D<Rational>, b: &Poly1D<Rational>) -> bool {
    if a.degree() != b.degree() || a.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let lambda = a.leading() / b.leading();
    !lambda.is_zero() && a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| *x == y * &lambda)
}
