//! Legendre polynomials `P_{n,p}(t)` of dimension `p` (Gegenbauer polynomials
//! normalized by `P_n(1) = 1`), with the identities they satisfy.
//!
//! The three-term recurrence
//! `(n+p-2) P_{n+1} = (2n+p-2) t P_n - n P_{n-1}`, `P_0 = 1`, `P_1 = t`
//! is the primary construction. Rodrigues' formula and the integral
//! representation are independent routes used for cross-checks.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::geometry::solid_angle;
use crate::harmonic::count_harmonic;
use crate::orthopoly::{gauss_rule, Poly1D, Weight, CALLABLE_RULE_SIZE};
use crate::scalar::{falling, ratio, PiMultiple, Rational, Scalar};

/// Default table size for exact coefficient tables.
pub const DEFAULT_N_MAX: usize = 32;

fn check_p(p: usize) -> Result<()> {
    if p < 2 {
        return domain(format!("Legendre polynomials need p >= 2, got {p}"));
    }
    Ok(())
}

/// Exact coefficients of `P_{0,p} .. P_{n_max,p}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendreTable {
    p: usize,
    coeffs: Vec<Poly1D<Rational>>,
}

impl LegendreTable {
    pub fn new(p: usize, n_max: usize) -> Result<Self> {
        check_p(p)?;
        let mut coeffs = vec![Poly1D::one()];
        if n_max >= 1 {
            coeffs.push(Poly1D::monomial(1));
        }
        for n in 1..n_max {
            let a = ratio((2 * n + p - 2) as i64, (n + p - 2) as i64);
            let c = ratio(n as i64, (n + p - 2) as i64);
            let next = coeffs[n].shift().scale(&a).sub(&coeffs[n - 1].scale(&c));
            coeffs.push(next);
        }
        Ok(Self { p, coeffs })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Poly1D<Rational>> {
        self.coeffs.get(n)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Poly1D<Rational>> {
        self.coeffs.iter()
    }

    /// Float evaluation of the stored exact polynomial.
    pub fn eval(&self, n: usize, t: f64) -> Option<f64> {
        self.coeffs.get(n).map(|q| q.eval(t))
    }
}

/// Exact coefficients of `P_{n,p}` in the monomial basis.
pub fn legendre_coeffs(p: usize, n: usize) -> Result<Poly1D<Rational>> {
    Ok(LegendreTable::new(p, n)?.coeffs.pop().expect("table has n + 1 entries"))
}

/// `P_{n,p}(t)` by the forward recurrence in floating point.
pub fn legendre_eval(p: usize, n: usize, t: f64) -> Result<f64> {
    check_p(p)?;
    Ok(legendre_eval_all(p, n, t).pop().unwrap_or(1.0))
}

/// `[P_0(t), ..., P_n(t)]` by the forward recurrence.
pub fn legendre_eval_all(p: usize, n: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(t);
    }
    for k in 1..n {
        let pf = p as f64;
        let kf = k as f64;
        let next = ((2.0 * kf + pf - 2.0) * t * out[k] - kf * out[k - 1]) / (kf + pf - 2.0);
        out.push(next);
    }
    out
}

/// Closed-form leading coefficient `k_n = [2n+p-3]_n / (2^n [n+(p-3)/2]_n)` (falling factorials).
pub fn leading_coefficient(p: usize, n: usize) -> Rational {
    let top = falling(&Rational::from_i64((2 * n + p) as i64 - 3), n as u64);
    let half = Rational::from_i64(n as i64) + ratio(p as i64 - 3, 2);
    top / (Rational::from_i64(2).pow(n as i32) * falling(&half, n as u64))
}

/// `P_{n,p}` from Rodrigues' formula
/// `P_n = (-1)^n / (2^n [n+(p-3)/2]_n) (1-t^2)^((3-p)/2) (d/dt)^n (1-t^2)^(n+(p-3)/2)`.
///
/// The derivative is taken symbolically on sums `c t^a (1-t^2)^(b0-k)`; after the
/// prefactor every power of `1-t^2` is a nonnegative integer, so the result is
/// returned as the list of `(c, a, e)` meaning `c t^a (1-t^2)^e`.
fn rodrigues_terms(p: usize, n: usize) -> Vec<(Rational, u32, u32)> {
    let b0 = Rational::from_i64(n as i64) + ratio(p as i64 - 3, 2);
    // (a, k) -> c for c t^a (1-t^2)^(b0 - k)
    let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    terms.insert((0, 0), Rational::one());
    for _ in 0..n {
        let mut next: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((a, k), c) in terms {
            if a > 0 {
                let e = next.entry((a - 1, k)).or_insert_with(Rational::zero);
                *e += &c * Rational::from_i64(a as i64);
            }
            let b = &b0 - Rational::from_i64(k as i64);
            if !b.is_zero() {
                let e = next.entry((a + 1, k + 1)).or_insert_with(Rational::zero);
                *e -= c * Rational::from_i64(2) * b;
            }
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    let mut scale = Rational::one() / (Rational::from_i64(2).pow(n as i32) * falling(&b0, n as u64));
    if n % 2 == 1 {
        scale = -scale;
    }
    terms
        .into_iter()
        .map(|((a, k), c)| (c * &scale, a, n as u32 - k))
        .collect()
}

/// Exact polynomial produced by Rodrigues' formula.
pub fn rodrigues_coeffs(p: usize, n: usize) -> Result<Poly1D<Rational>> {
    check_p(p)?;
    let u = Poly1D::new(vec![Rational::one(), Rational::zero(), -Rational::one()]);
    let mut out = Poly1D::zero();
    for (c, a, e) in rodrigues_terms(p, n) {
        let mut term = Poly1D::monomial(a as usize).scale(&c);
        for _ in 0..e {
            term = term.mul(&u);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `P_{n,p}(t)` evaluated from the unexpanded Rodrigues form.
pub fn rodrigues_eval(p: usize, n: usize, t: f64) -> Result<f64> {
    check_p(p)?;
    let u = 1.0 - t * t;
    Ok(rodrigues_terms(p, n)
        .iter()
        .map(|(c, a, e)| c.as_f64() * t.powi(*a as i32) * u.powi(*e as i32))
        .sum())
}

/// `(1-t^2) P'' + (1-p) t P' + n(n+p-2) P` at `t`, from exact derivatives.
pub fn ode_residual(p: usize, n: usize, t: f64) -> Result<f64> {
    let q = legendre_coeffs(p, n)?;
    let d1 = q.derivative();
    let d2 = d1.derivative();
    let lambda = (n * (n + p - 2)) as f64;
    Ok((1.0 - t * t) * d2.eval(t) + (1.0 - p as f64) * t * d1.eval(t) + lambda * q.eval(t))
}

/// The same left-hand side as an exact polynomial; identically zero.
pub fn ode_residual_exact(p: usize, n: usize) -> Result<Poly1D<Rational>> {
    let q = legendre_coeffs(p, n)?;
    let d1 = q.derivative();
    let d2 = d1.derivative();
    let u = Poly1D::new(vec![Rational::one(), Rational::zero(), -Rational::one()]);
    let lin = Poly1D::new(vec![Rational::zero(), Rational::from_i64(1 - p as i64)]);
    let lambda = Rational::from_i64((n * (n + p - 2)) as i64);
    Ok(u.mul(&d2).add(&lin.mul(&d1)).add(&q.scale(&lambda)))
}

/// Exact `|P_n|_w^2 = Omega_{p-1} / (N(p,n) Omega_{p-2})` for `w = (1-t^2)^((p-3)/2)`.
pub fn legendre_norm_sq(p: usize, n: usize) -> Result<PiMultiple> {
    check_p(p)?;
    let count = count_harmonic(p, n)?;
    let nn = Rational::from_integer(count.into());
    Ok(solid_angle(p)?.div(&solid_angle(p - 1)?.scale(&nn)))
}

/// `(d/dt)^j P_{n,p}` divided by its value at `t = 1`; equals `P_{n-j, p+2j}`.
pub fn dimension_shift(p: usize, n: usize, j: usize) -> Result<Poly1D<Rational>> {
    if j > n {
        return domain(format!("dimension shift needs j <= n (j = {j}, n = {n})"));
    }
    let d = legendre_coeffs(p, n)?.nth_derivative(j);
    let at_one = d.eval_exact(&Rational::one());
    if at_one.is_zero() {
        return Err(Error::Internal(format!("derivative {j} of P_{{{n},{p}}} vanishes at t = 1")));
    }
    Ok(d.scale(&(Rational::one() / at_one)))
}

/// The closed-form constant `[(p-1)/2]_j / ([-n]_j [n+p-2]_j)` (falling factorials)
/// for comparison with the normalization actually needed in [`dimension_shift`].
pub fn dimension_shift_closed_form_constant(p: usize, n: usize, j: usize) -> Option<Rational> {
    let num = falling(&ratio(p as i64 - 1, 2), j as u64);
    let den = falling(&Rational::from_i64(-(n as i64)), j as u64)
        * falling(&Rational::from_i64((n + p) as i64 - 2), j as u64);
    (!den.is_zero()).then(|| num / den)
}

/// `(Omega_{p-3}/Omega_{p-2}) int (t + i s sqrt(1-t^2))^n (1-s^2)^((p-4)/2) ds`, `p >= 3`.
pub fn integral_representation(p: usize, n: usize, t: f64) -> Result<Complex64> {
    if p < 3 {
        return Err(Error::Unsupported(format!("integral representation needs p >= 3, got {p}")));
    }
    if !(-1.0..=1.0).contains(&t) {
        return domain(format!("t must lie in [-1, 1], got {t}"));
    }
    let rule = gauss_rule(&Weight::from_halves(p as i64 - 4, p as i64 - 4)?, n / 2 + 1)?;
    let c = (1.0 - t * t).max(0.0).sqrt();
    let mut terms_re = Vec::with_capacity(rule.len());
    let mut terms_im = Vec::with_capacity(rule.len());
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let z = Complex64::new(t, s * c).powu(n as u32) * w;
        terms_re.push(z.re);
        terms_im.push(z.im);
    }
    let scale = (solid_angle(p - 2)?.div(&solid_angle(p - 1)?)).to_f64();
    Ok(Complex64::new(
        scale * crate::scalar::pairwise_sum(&terms_re),
        scale * crate::scalar::pairwise_sum(&terms_im),
    ))
}

pub fn integral_representation_eval(p: usize, n: usize, t: f64) -> Result<f64> {
    integral_representation(p, n, t).map(|z| z.re)
}

/// Funk-Hecke multiplier `lambda_n = Omega_{p-2} int f(t) P_n(t) (1-t^2)^((p-3)/2) dt`.
pub fn funk_hecke_coeff(p: usize, n: usize, f: impl Fn(f64) -> f64) -> Result<f64> {
    funk_hecke_coeff_with(p, n, f, CALLABLE_RULE_SIZE)
}

pub fn funk_hecke_coeff_with(p: usize, n: usize, f: impl Fn(f64) -> f64, nodes: usize) -> Result<f64> {
    check_p(p)?;
    let rule = gauss_rule(&Weight::sphere(p)?, nodes.max(n / 2 + 1))?;
    let v = rule.try_integrate(|t| f(t) * legendre_eval_all(p, n, t)[n])?;
    Ok(solid_angle(p - 1)?.to_f64() * v)
}

/// `sum_{n=0}^{terms} r^n N(p,n) P_n(t)`.
pub fn generating_function_partial(p: usize, t: f64, r: f64, terms: usize) -> Result<f64> {
    check_p(p)?;
    let vals = legendre_eval_all(p, terms, t);
    let mut acc = 0.0;
    let mut rn = 1.0;
    for (n, v) in vals.iter().enumerate() {
        let count = count_harmonic(p, n)?.to_f64().unwrap_or(f64::INFINITY);
        acc += rn * count * v;
        rn *= r;
    }
    Ok(acc)
}

/// `(1 - r^2) / (1 - 2 r t + r^2)^(p/2)`.
pub fn generating_function_closed(p: usize, t: f64, r: f64) -> f64 {
    (1.0 - r * r) / (1.0 - 2.0 * r * t + r * r).powf(p as f64 / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::{is_exactly_proportional, jacobi_rodrigues};

    fn q(v: &[(i64, i64)]) -> Poly1D<Rational> {
        Poly1D::new(v.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn eval_examples() {
        for p in 2..8 {
            assert_eq!(legendre_eval(p, 0, 0.3).unwrap(), 1.0);
        }
        assert!((legendre_eval(3, 2, 0.5).unwrap() + 0.125).abs() < 1e-15);
        assert!((legendre_eval(2, 3, 0.5).unwrap() + 1.0).abs() < 1e-15);
        assert!(legendre_eval(1, 2, 0.5).is_err());
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(legendre_coeffs(3, 2).unwrap(), q(&[(-1, 2), (0, 1), (3, 2)]));
        assert_eq!(legendre_coeffs(5, 1).unwrap(), q(&[(0, 1), (1, 1)]));
        for p in 2..8 {
            assert_eq!(legendre_coeffs(p, 0).unwrap(), Poly1D::one());
        }
    }

    #[test]
    fn table_invariants() {
        for p in 2..9 {
            let table = LegendreTable::new(p, 16).unwrap();
            for (n, poly) in table.iter().enumerate() {
                assert_eq!(poly.eval_exact(&Rational::one()), Rational::one());
                assert_eq!(poly.degree(), Some(n));
                assert_eq!(poly.leading(), leading_coefficient(p, n), "p = {p}, n = {n}");
                for (k, c) in poly.coeffs().iter().enumerate() {
                    if (n - k) % 2 == 1 {
                        assert!(c.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rodrigues_examples() {
        assert_eq!(rodrigues_eval(5, 0, 0.2).unwrap(), 1.0);
        assert!((rodrigues_eval(3, 1, 0.3).unwrap() - 0.3).abs() < 1e-15);
        assert!((rodrigues_eval(4, 2, 0.0).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        for p in 2..8 {
            for n in 0..10 {
                assert_eq!(rodrigues_coeffs(p, n).unwrap(), legendre_coeffs(p, n).unwrap(), "p = {p}, n = {n}");
                // endpoints need no special casing
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((rodrigues_eval(p, n, 1.0).unwrap() - 1.0).abs() < 1e-12);
                assert!((rodrigues_eval(p, n, -1.0).unwrap() - sign).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ode_examples() {
        assert_eq!(ode_residual(4, 0, 0.3).unwrap(), 0.0);
        assert!(ode_residual(3, 2, 0.7).unwrap().abs() < 1e-12);
        assert!(ode_residual(6, 5, 0.41).unwrap().abs() < 1e-10);
        for p in 2..8 {
            for n in 0..12 {
                assert!(ode_residual_exact(p, n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn norm_examples() {
        // p = 3: 2 / (2n + 1)
        for n in 0..6 {
            assert_eq!(legendre_norm_sq(3, n).unwrap(), PiMultiple::rational(ratio(2, 2 * n as i64 + 1)));
        }
        assert_eq!(legendre_norm_sq(2, 3).unwrap(), PiMultiple::new(ratio(1, 2), 2));
        assert_eq!(legendre_norm_sq(2, 0).unwrap(), PiMultiple::new(ratio(1, 1), 2));
    }

    #[test]
    fn dimension_shift_examples() {
        assert_eq!(dimension_shift(4, 3, 0).unwrap(), legendre_coeffs(4, 3).unwrap());
        assert_eq!(dimension_shift(3, 2, 1).unwrap(), Poly1D::monomial(1));
        assert_eq!(dimension_shift(2, 4, 1).unwrap(), legendre_coeffs(4, 3).unwrap());
        for p in 2..7 {
            for n in 0..9 {
                for j in 0..=n {
                    assert_eq!(dimension_shift(p, n, j).unwrap(), legendre_coeffs(p + 2 * j, n - j).unwrap());
                }
            }
        }
        assert!(dimension_shift(3, 2, 3).is_err());
    }

    #[test]
    fn dimension_shift_closed_form_constant_is_off() {
        // d/dt P_{2,3} = 3t, so the normalizing constant is 1/3, not the closed form's -1/6.
        assert_eq!(dimension_shift_closed_form_constant(3, 2, 1), Some(ratio(-1, 6)));
        let d = legendre_coeffs(3, 2).unwrap().derivative();
        assert_eq!(d.eval_exact(&Rational::one()), ratio(3, 1));
    }

    #[test]
    fn integral_representation_examples() {
        for p in 3..8 {
            assert!((integral_representation_eval(p, 0, 0.4).unwrap() - 1.0).abs() < 1e-14);
            for n in 0..8 {
                assert!((integral_representation_eval(p, n, 1.0).unwrap() - 1.0).abs() < 1e-13);
                let z = integral_representation(p, n, -0.35).unwrap();
                assert!(z.im.abs() < 1e-10);
            }
        }
        assert!((integral_representation_eval(3, 2, 0.5).unwrap() + 0.125).abs() < 1e-14);
        assert!(matches!(integral_representation(2, 1, 0.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn funk_hecke_examples() {
        let p = 4;
        let p3 = |t: f64| legendre_eval(p, 3, t).unwrap();
        assert!(funk_hecke_coeff(p, 2, p3).unwrap().abs() < 1e-10);
        let lam = funk_hecke_coeff(p, 3, p3).unwrap();
        let expected = solid_angle(p).unwrap().to_f64() / count_harmonic(p, 3).unwrap().to_f64().unwrap();
        assert!((lam - expected).abs() < 1e-12);
        let lam = funk_hecke_coeff(5, 0, |_| 1.0).unwrap();
        assert!((lam - solid_angle(5).unwrap().to_f64()).abs() < 1e-12);
    }

    #[test]
    fn generating_function_examples() {
        assert_eq!(generating_function_partial(3, 0.2, 0.0, 10).unwrap(), 1.0);
        assert_eq!(generating_function_closed(3, 0.2, 0.0), 1.0);
        let closed = generating_function_closed(3, 1.0, 0.5);
        assert!((closed - 6.0).abs() < 1e-14);
        let mut last = f64::INFINITY;
        for terms in [10, 20, 40, 80] {
            let err = (generating_function_partial(3, 1.0, 0.5, terms).unwrap() - 6.0).abs();
            assert!(err < last);
            last = err;
        }
        let partial = generating_function_partial(4, 0.0, 0.3, 40).unwrap();
        assert!((partial - 0.91 / (1.09f64 * 1.09)).abs() < 1e-10);
    }

    #[test]
    fn chebyshev_and_classical_cases() {
        // T_4 = 8t^4 - 8t^2 + 1, classical P_4 = (35t^4 - 30t^2 + 3) / 8
        assert_eq!(legendre_coeffs(2, 4).unwrap(), q(&[(1, 1), (0, 1), (-8, 1), (0, 1), (8, 1)]));
        assert_eq!(legendre_coeffs(3, 4).unwrap(), q(&[(3, 8), (0, 1), (-30, 8), (0, 1), (35, 8)]));
    }

    #[test]
    fn proportional_to_jacobi() {
        for p in 2..8 {
            let w = Weight::sphere(p).unwrap();
            for n in 0..9 {
                assert!(is_exactly_proportional(&legendre_coeffs(p, n).unwrap(), &jacobi_rodrigues(n, &w)));
            }
        }
    }
}
