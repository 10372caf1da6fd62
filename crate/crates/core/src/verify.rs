//! Named numerical identity checks with residual reports.
//!
//! Each check sweeps a default `(p, n)` box, which the caller may narrow, and
//! reports the largest residual against its tolerance.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bvp::{green_function, poisson_eval, project_boundary, series_eval, BoundaryData};
use crate::error::{Error, Result};
use crate::geometry::{monomial_sphere_integral, solid_angle, solid_angle_f64, sphere_quadrature};
use crate::harmonic::{addition_theorem_eval, count_harmonic, count_homogeneous, harmonic_basis_raw, legendre_harmonic, orthonormalize, exact_gram};
use crate::legendre::{
    funk_hecke_coeff, generating_function_closed, generating_function_partial, integral_representation_eval,
    legendre_coeffs, legendre_eval_all, legendre_norm_sq, ode_residual, rodrigues_eval,
};
use crate::orthopoly::{
    bernstein, gauss_rule, gram_schmidt, is_exactly_proportional, jacobi_rodrigues, proportionality_residual,
    recurrence_coeffs, recurrence_residual, Poly1D, Weight,
};
use crate::polyalg::{homogeneous_multi_indices, ExactPolynomial, RotationMatrix};
use crate::scalar::{ratio, Rational, Scalar};

pub const DEFAULT_SEED: u64 = 20240917;

/// Overrides applied to every check of a run.
#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    /// Restricts the sweep to this single dimension.
    pub p: Option<usize>,
    /// Restricts the sweep to this single degree.
    pub n: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    #[serde(rename = "p-range")]
    pub p_range: Option<[usize; 2]>,
    #[serde(rename = "n-range")]
    pub n_range: Option<[usize; 2]>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

struct Ctx {
    p: (usize, usize),
    n: (usize, usize),
    samples: usize,
    seed: u64,
}

impl Ctx {
    fn ps(&self) -> std::ops::RangeInclusive<usize> {
        self.p.0..=self.p.1
    }

    fn ns(&self) -> std::ops::RangeInclusive<usize> {
        self.n.0..=self.n.1
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

struct Check {
    name: &'static str,
    summary: &'static str,
    p: Option<(usize, usize)>,
    n: Option<(usize, usize)>,
    min_p: usize,
    samples: usize,
    tolerance: f64,
    run: fn(&Ctx) -> Result<f64>,
}

const CHECKS: &[Check] = &[
    Check { name: "solid-angle", summary: "absolute error of sphere quadrature weight sums vs Omega_{p-1}", p: Some((2, 6)), n: None, min_p: 2, samples: 0, tolerance: 1e-12, run: check_solid_angle },
    Check { name: "counting", summary: "K and N vs monomial enumeration and exact Gram rank", p: Some((2, 5)), n: Some((0, 6)), min_p: 2, samples: 0, tolerance: 0.0, run: check_counting },
    Check { name: "harmonicity", summary: "exact Laplacian of raw basis members and L_n", p: Some((2, 6)), n: Some((0, 8)), min_p: 2, samples: 0, tolerance: 0.0, run: check_harmonicity },
    Check { name: "legendre-routes", summary: "recurrence vs Rodrigues vs integral representation", p: Some((2, 7)), n: Some((0, 10)), min_p: 2, samples: 41, tolerance: 1e-9, run: check_routes },
    Check { name: "ode", summary: "Legendre ODE residual / (1 + n^2)", p: Some((2, 7)), n: Some((0, 10)), min_p: 2, samples: 41, tolerance: 1e-10, run: check_ode },
    Check { name: "orthogonality", summary: "off-diagonal weighted inner products of P_n", p: Some((2, 7)), n: Some((0, 10)), min_p: 2, samples: 0, tolerance: 1e-10, run: check_orthogonality },
    Check { name: "norms", summary: "relative error of <P_n, P_n> vs Omega_{p-1} / (N Omega_{p-2})", p: Some((2, 7)), n: Some((0, 10)), min_p: 2, samples: 0, tolerance: 1e-10, run: check_norms },
    Check { name: "bound", summary: "max(|P_n| - 1, 0) on [-1, 1]", p: Some((2, 7)), n: Some((0, 10)), min_p: 2, samples: 201, tolerance: 1e-12, run: check_bound },
    Check { name: "classical", summary: "p = 2 Chebyshev and p = 3 Legendre coefficients (exact)", p: Some((2, 3)), n: Some((0, 10)), min_p: 2, samples: 0, tolerance: 0.0, run: check_classical },
    Check { name: "orthonormality", summary: "sphere inner products of Y_{n,i} vs delta_ij", p: Some((2, 5)), n: Some((0, 6)), min_p: 2, samples: 0, tolerance: 1e-10, run: check_orthonormality },
    Check { name: "addition", summary: "addition theorem on random pairs", p: Some((3, 5)), n: Some((0, 6)), min_p: 2, samples: 100, tolerance: 1e-8, run: check_addition },
    Check { name: "addition-rotation", summary: "rotation invariance of the addition sum", p: Some((3, 5)), n: Some((0, 6)), min_p: 2, samples: 10, tolerance: 1e-9, run: check_addition_rotation },
    Check { name: "funk-hecke", summary: "sphere-side zonal integral vs lambda_n Y_n", p: Some((3, 5)), n: Some((0, 4)), min_p: 2, samples: 5, tolerance: 1e-7, run: check_funk_hecke },
    Check { name: "generating-function", summary: "60-term partial sum vs closed form", p: Some((3, 5)), n: None, min_p: 2, samples: 0, tolerance: 1e-8, run: check_generating },
    Check { name: "generating-function-t1", summary: "t = 1 column vs (1+r)/(1-r)^(p-1)", p: Some((3, 5)), n: None, min_p: 2, samples: 0, tolerance: 1e-10, run: check_generating_t1 },
    Check { name: "bvp", summary: "series vs Poisson solutions at interior points", p: Some((3, 5)), n: Some((0, 4)), min_p: 3, samples: 50, tolerance: 1e-6, run: check_bvp },
    Check { name: "harmonic-extension", summary: "series solution with harmonic data vs the data", p: Some((3, 5)), n: Some((0, 4)), min_p: 2, samples: 20, tolerance: 1e-9, run: check_extension },
    Check { name: "green-boundary", summary: "Green's function on the sphere", p: Some((3, 5)), n: None, min_p: 3, samples: 100, tolerance: 1e-12, run: check_green },
    Check { name: "gram-schmidt", summary: "Gram-Schmidt vs Jacobi-Rodrigues proportionality", p: None, n: Some((0, 8)), min_p: 0, samples: 0, tolerance: 1e-9, run: check_gram_schmidt },
    Check { name: "recurrence", summary: "three-term recurrence residual", p: None, n: Some((0, 8)), min_p: 0, samples: 0, tolerance: 1e-9, run: check_recurrence },
    Check { name: "bernstein", summary: "Bernstein identities for 1, x, x^2 (exact)", p: None, n: Some((1, 16)), min_p: 0, samples: 0, tolerance: 0.0, run: check_bernstein },
    Check { name: "monomial-quadrature", summary: "relative error of product quadrature vs closed form (absolute at zero)", p: Some((2, 5)), n: None, min_p: 2, samples: 0, tolerance: 1e-10, run: check_monomial_quadrature },
    Check { name: "monomial-monte-carlo", summary: "Monte Carlo z-score vs closed form", p: Some((2, 5)), n: None, min_p: 2, samples: 1_000_000, tolerance: 4.0, run: check_monomial_mc },
];

/// Names of all registered checks, in registry order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// `(name, one-line summary)` for every check.
pub fn check_summaries() -> Vec<(&'static str, &'static str)> {
    CHECKS.iter().map(|c| (c.name, c.summary)).collect()
}

pub fn run_check(name: &str, cfg: &VerifyConfig) -> Result<CheckReport> {
    let check = CHECKS
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::Config(format!("unknown check `{name}`; known checks: {}", check_names().join(", "))))?;
    let p_range = match (check.p, cfg.p) {
        (Some(_), Some(p)) if p < check.min_p => {
            return Err(Error::Config(format!("check `{name}` needs p >= {}", check.min_p)));
        }
        (Some(_), Some(p)) => Some((p, p)),
        (r, _) => r,
    };
    let n_range = match (check.n, cfg.n) {
        (Some(_), Some(n)) => Some((n, n)),
        (r, _) => r,
    };
    let tolerance = cfg.tol.unwrap_or(check.tolerance);
    if !(tolerance >= 0.0) {
        return Err(Error::Config(format!("tolerance must be nonnegative, got {tolerance}")));
    }
    let ctx = Ctx {
        p: p_range.unwrap_or((0, 0)),
        n: n_range.unwrap_or((0, 0)),
        samples: cfg.samples.unwrap_or(check.samples),
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
    };
    let max_residual = (check.run)(&ctx)?;
    Ok(CheckReport {
        check: name.to_string(),
        p_range: p_range.map(|(a, b)| [a, b]),
        n_range: n_range.map(|(a, b)| [a, b]),
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    })
}

/// Runs the named checks in order; an unknown name fails before anything runs.
pub fn verify_suite(names: &[String], cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    for name in names {
        if !CHECKS.iter().any(|c| c.name == name) {
            return Err(Error::Config(format!("unknown check `{name}`; known checks: {}", check_names().join(", "))));
        }
    }
    names.iter().map(|n| run_check(n, cfg)).collect()
}

fn grid(samples: usize) -> Vec<f64> {
    let m = samples.max(2);
    (0..m).map(|i| -1.0 + 2.0 * i as f64 / (m - 1) as f64).collect()
}

fn random_unit(rng: &mut ChaCha8Rng, p: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..p).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r > 1e-8 {
            return x.into_iter().map(|v| v / r).collect();
        }
    }
}

fn random_ball(rng: &mut ChaCha8Rng, p: usize, rmax: f64) -> Vec<f64> {
    let u = random_unit(rng, p);
    let r = rmax * rng.random::<f64>().powf(1.0 / p as f64);
    u.into_iter().map(|v| v * r).collect()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn check_solid_angle(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        let omega = solid_angle(p)?.to_f64();
        for degree in [0, 3, 8] {
            let rule = sphere_quadrature(p, degree)?;
            worst = worst.max((rule.weight_sum() - omega).abs());
        }
    }
    Ok(worst)
}

fn check_counting(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let diff = |a: usize, b: &BigUint| if BigUint::from(a) == *b { 0.0 } else { 1.0 };
    for p in c.ps() {
        for n in c.ns() {
            let k = count_homogeneous(p, n)?;
            worst = worst.max(diff(homogeneous_multi_indices(p, n as u32).len(), &k));
            let big_n = count_harmonic(p, n)?;
            let raw = harmonic_basis_raw(p, n)?;
            worst = worst.max(diff(raw.len(), &big_n));
            worst = worst.max(diff(exact_gram(p, n, &raw)?.rank(), &big_n));
        }
    }
    Ok(worst)
}

fn check_harmonicity(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let score = |q: &ExactPolynomial| q.laplacian().terms().map(|(_, v)| v.as_f64().abs()).fold(0.0, f64::max);
    for p in c.ps() {
        for n in c.ns() {
            for q in harmonic_basis_raw(p, n)? {
                worst = worst.max(score(&q));
            }
            worst = worst.max(score(&legendre_harmonic(p, n)?));
        }
    }
    Ok(worst)
}

fn check_routes(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for n in c.ns() {
            for t in grid(c.samples) {
                let rec = legendre_eval_all(p, n, t)[n];
                worst = worst.max((rec - rodrigues_eval(p, n, t)?).abs());
                if p >= 3 {
                    worst = worst.max((rec - integral_representation_eval(p, n, t)?).abs());
                }
            }
        }
    }
    Ok(worst)
}

fn check_ode(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for n in c.ns() {
            for t in grid(c.samples) {
                worst = worst.max(ode_residual(p, n, t)?.abs() / (1.0 + (n * n) as f64));
            }
        }
    }
    Ok(worst)
}

fn gram_legendre(p: usize, n_hi: usize) -> Result<Vec<Vec<f64>>> {
    let rule = gauss_rule(&Weight::sphere(p)?, n_hi + 1)?;
    let mut g = vec![vec![0.0; n_hi + 1]; n_hi + 1];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let vals = legendre_eval_all(p, n_hi, t);
        for i in 0..=n_hi {
            for j in 0..=n_hi {
                g[i][j] += w * vals[i] * vals[j];
            }
        }
    }
    Ok(g)
}

fn check_orthogonality(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        let top = c.n.1.max(1);
        let g = gram_legendre(p, top)?;
        for n in c.ns() {
            for m in 0..=top {
                if m != n {
                    worst = worst.max(g[n][m].abs());
                }
            }
        }
    }
    Ok(worst)
}

fn check_norms(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        let g = gram_legendre(p, c.n.1)?;
        for n in c.ns() {
            let want = legendre_norm_sq(p, n)?.to_f64();
            worst = worst.max((g[n][n] - want).abs() / want);
        }
    }
    Ok(worst)
}

fn check_bound(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for t in grid(c.samples) {
            let vals = legendre_eval_all(p, c.n.1, t);
            for n in c.ns() {
                worst = worst.max(vals[n].abs() - 1.0);
            }
        }
    }
    Ok(worst)
}

/// Chebyshev `T_n` and classical Legendre coefficients from their own recurrences.
fn classical(p: usize, n_hi: usize) -> Vec<Poly1D<Rational>> {
    let x = Poly1D::new(vec![Rational::from_i64(0), Rational::one()]);
    let mut out = vec![Poly1D::one(), x.clone()];
    for n in 1..n_hi {
        let next = if p == 2 {
            x.mul(&out[n]).scale(&Rational::from_i64(2)).sub(&out[n - 1])
        } else {
            let a = ratio(2 * n as i64 + 1, n as i64 + 1);
            let b = ratio(n as i64, n as i64 + 1);
            x.mul(&out[n]).scale(&a).sub(&out[n - 1].scale(&b))
        };
        out.push(next);
    }
    out.truncate(n_hi + 1);
    out
}

fn check_classical(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        if p > 3 {
            continue;
        }
        let table = classical(p, c.n.1);
        for n in c.ns() {
            if legendre_coeffs(p, n)? != table[n] {
                worst = 1.0;
            }
        }
    }
    Ok(worst)
}

fn check_orthonormality(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for n in c.ns() {
            let b = orthonormalize(p, n)?;
            let rule = sphere_quadrature(p, 2 * n)?;
            let m = b.len();
            let g = rule.integrate_many(m * m, |x, buf| {
                let y = b.eval_all(x);
                for i in 0..m {
                    for j in 0..m {
                        buf[i * m + j] = y[i] * y[j];
                    }
                }
            });
            for i in 0..m {
                for j in 0..m {
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((g[i * m + j] - want).abs());
                }
            }
        }
    }
    Ok(worst)
}

fn check_addition(c: &Ctx) -> Result<f64> {
    let mut rng = c.rng();
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for n in c.ns() {
            let b = orthonormalize(p, n)?;
            for _ in 0..c.samples {
                let xi = random_unit(&mut rng, p);
                let eta = random_unit(&mut rng, p);
                let t: f64 = xi.iter().zip(&eta).map(|(a, b)| a * b).sum();
                let lhs = addition_theorem_eval(&b, &xi, &eta)?;
                worst = worst.max((lhs - legendre_eval_all(p, n, t)[n]).abs());
            }
        }
    }
    Ok(worst)
}

fn check_addition_rotation(c: &Ctx) -> Result<f64> {
    let mut rng = c.rng();
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for n in c.ns() {
            let b = orthonormalize(p, n)?;
            for _ in 0..c.samples {
                let r = RotationMatrix::random(p, &mut rng);
                for _ in 0..5 {
                    let xi = random_unit(&mut rng, p);
                    let eta = random_unit(&mut rng, p);
                    let before = addition_theorem_eval(&b, &xi, &eta)?;
                    let after = addition_theorem_eval(&b, &r.apply(&xi), &r.apply(&eta))?;
                    worst = worst.max((before - after).abs());
                }
            }
        }
    }
    Ok(worst)
}

fn check_funk_hecke(c: &Ctx) -> Result<f64> {
    // a fixed degree 6 profile
    let f = |t: f64| 1.0 - 0.5 * t + 2.0 * t * t - 1.5 * t.powi(3) + 0.25 * t.powi(4) + t.powi(5) - 0.75 * t.powi(6);
    let mut rng = c.rng();
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for n in c.ns() {
            let b = orthonormalize(p, n)?;
            let lambda = funk_hecke_coeff(p, n, f)?;
            let rule = sphere_quadrature(p, 6 + n)?;
            for _ in 0..c.samples {
                let xi = random_unit(&mut rng, p);
                let lhs = rule.integrate_many(b.len(), |eta, buf| {
                    let t: f64 = xi.iter().zip(eta).map(|(a, b)| a * b).sum();
                    b.eval_into(eta, buf);
                    let ft = f(t);
                    buf.iter_mut().for_each(|v| *v *= ft);
                });
                let rhs = b.eval_all(&xi);
                worst = worst.max(max_of(lhs.iter().zip(&rhs).map(|(l, r)| (l - lambda * r).abs())));
            }
        }
    }
    Ok(worst)
}

const GF_RS: [f64; 3] = [0.1, 0.3, 0.5];

fn check_generating(c: &Ctx) -> Result<f64> {
    let ts = grid(11);
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        worst = worst.max(crate::bvp::generating_function_consistency(p, &ts, &GF_RS, 60)?);
    }
    Ok(worst)
}

fn check_generating_t1(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for r in GF_RS {
            let want = (1.0 + r) / (1.0 - r).powi(p as i32 - 1);
            worst = worst.max((generating_function_partial(p, 1.0, r, 60)? - want).abs());
            worst = worst.max((generating_function_closed(p, 1.0, r) - want).abs());
        }
    }
    Ok(worst)
}

/// Seeded boundary polynomial: a handful of monomials of degree `<= max_degree`
/// with small integer coefficients.
pub fn random_boundary_polynomial(rng: &mut ChaCha8Rng, p: usize, max_degree: u32) -> ExactPolynomial {
    let mut q = ExactPolynomial::zero(p);
    let count = rng.random_range(2..=5);
    for _ in 0..count {
        let d = rng.random_range(0..=max_degree);
        let monos = homogeneous_multi_indices(p, d);
        let alpha = monos[rng.random_range(0..monos.len())].clone();
        let c = rng.random_range(-4i64..=4);
        if c != 0 {
            q.add_term(alpha, ratio(c, rng.random_range(1i64..=3)));
        }
    }
    if q.is_zero() {
        q = ExactPolynomial::one(p);
    }
    q
}

fn check_bvp(c: &Ctx) -> Result<f64> {
    let mut rng = c.rng();
    let mut worst: f64 = 0.0;
    let max_degree = c.n.1 as u32;
    for p in c.ps() {
        for _ in 0..5 {
            let q = random_boundary_polynomial(&mut rng, p, max_degree);
            let d = q.degree().unwrap_or(0) as usize;
            let f = BoundaryData::polynomial(q)?;
            let sol = project_boundary(&f, d)?;
            for _ in 0..c.samples {
                let x = random_ball(&mut rng, p, 0.8);
                worst = worst.max((series_eval(&sol, &x)? - poisson_eval(&f, &x, d)?).abs());
            }
        }
    }
    Ok(worst)
}

fn check_extension(c: &Ctx) -> Result<f64> {
    let mut rng = c.rng();
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for n in c.ns() {
            for h in harmonic_basis_raw(p, n)? {
                let f = BoundaryData::polynomial(h.clone())?;
                let sol = project_boundary(&f, n)?;
                for _ in 0..c.samples {
                    let x = random_ball(&mut rng, p, 1.0);
                    worst = worst.max((series_eval(&sol, &x)? - h.evaluate(&x)?).abs());
                }
            }
        }
    }
    Ok(worst)
}

fn check_green(c: &Ctx) -> Result<f64> {
    let mut rng = c.rng();
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        for _ in 0..c.samples {
            let x0 = random_ball(&mut rng, p, 0.95);
            let xi = random_unit(&mut rng, p);
            worst = worst.max(green_function(p, &xi, &x0)?.abs());
        }
    }
    Ok(worst)
}

/// Jacobi exponents used by the orthogonal polynomial checks, as halves.
pub const TEST_WEIGHTS: [(i64, i64); 5] = [(0, 0), (-1, -1), (1, 1), (2, 0), (-1, 3)];

fn check_gram_schmidt(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (a, b) in TEST_WEIGHTS {
        let w = Weight::from_halves(a, b)?;
        let gs = gram_schmidt(&w, c.n.1);
        for n in c.ns() {
            let rod = jacobi_rodrigues(n, &w);
            let (_, res) = proportionality_residual(&gs[n].to_real(), &rod.to_real(), &w)?;
            worst = worst.max(res);
            if !is_exactly_proportional(&gs[n], &rod) {
                worst = worst.max(1.0);
            }
        }
    }
    Ok(worst)
}

fn check_recurrence(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let top = c.n.1.max(2);
    for (a, b) in TEST_WEIGHTS {
        let w = Weight::from_halves(a, b)?;
        let gs = gram_schmidt(&w, top);
        let rc = recurrence_coeffs(&gs, &w)?;
        worst = worst.max(recurrence_residual(&gs, &rc, &w)?);
    }
    // the dimension-p Legendre family under its own weight
    for p in 2..=7 {
        let w = Weight::sphere(p)?;
        let fam: Vec<Poly1D<Rational>> = (0..=top).map(|n| legendre_coeffs(p, n)).collect::<Result<_>>()?;
        let rc = recurrence_coeffs(&fam, &w)?;
        worst = worst.max(recurrence_residual(&fam, &rc, &w)?);
        for n in 1..top {
            let want = (2 * n + p - 2) as f64 / (n + p - 2) as f64;
            worst = worst.max((rc.a[n] - want).abs());
        }
    }
    Ok(worst)
}

fn check_bernstein(c: &Ctx) -> Result<f64> {
    let x = Poly1D::new(vec![Rational::from_i64(0), Rational::one()]);
    for n in c.ns() {
        if n == 0 {
            continue;
        }
        let one = bernstein(|_: &Rational| Rational::one(), n)?;
        let lin = bernstein(|t: &Rational| t.clone(), n)?;
        let quad = bernstein(|t: &Rational| t * t, n)?;
        let want_quad = x.mul(&x).add(&x.sub(&x.mul(&x)).scale(&ratio(1, n as i64)));
        if one != Poly1D::one() || lin != x || quad != want_quad {
            return Ok(1.0);
        }
    }
    Ok(0.0)
}

/// Twenty fixed exponents across `p = 2..5`, including odd ones with zero integral.
pub const MONOMIAL_SUITE: [&[u32]; 20] = [
    &[2, 0],
    &[4, 2],
    &[3, 1],
    &[6, 0],
    &[2, 0, 0],
    &[2, 2, 0],
    &[4, 0, 2],
    &[1, 1, 0],
    &[2, 2, 2],
    &[2, 0, 0, 0],
    &[2, 2, 0, 0],
    &[4, 0, 0, 0],
    &[2, 2, 2, 0],
    &[0, 1, 0, 3],
    &[2, 0, 0, 0, 0],
    &[2, 2, 0, 0, 0],
    &[0, 0, 4, 0, 2],
    &[2, 2, 2, 2, 0],
    &[1, 0, 0, 0, 1],
    &[6, 0, 0, 0, 0],
];

fn suite_for(c: &Ctx) -> impl Iterator<Item = &'static [u32]> + '_ {
    MONOMIAL_SUITE.iter().copied().filter(move |a| c.ps().contains(&a.len()))
}

fn check_monomial_quadrature(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in suite_for(c) {
        let p = alpha.len();
        let exact = monomial_sphere_integral(alpha)?.to_f64();
        let deg: u32 = alpha.iter().sum();
        let rule = sphere_quadrature(p, deg as usize)?;
        let q = rule.integrate(|x| x.iter().zip(alpha).map(|(v, &e)| v.powi(e as i32)).product());
        // relative error; absolute where the exact integral vanishes
        let err = if exact == 0.0 { q.abs() } else { (q - exact).abs() / exact.abs() };
        worst = worst.max(err);
    }
    Ok(worst)
}

fn check_monomial_mc(c: &Ctx) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in c.ps() {
        let alphas: Vec<&[u32]> = suite_for(c).filter(|a| a.len() == p).collect();
        if alphas.is_empty() {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed.wrapping_add(p as u64));
        let mut sum = vec![0.0; alphas.len()];
        let mut sum_sq = vec![0.0; alphas.len()];
        for _ in 0..c.samples {
            let x = random_unit(&mut rng, p);
            for (k, alpha) in alphas.iter().enumerate() {
                let v: f64 = x.iter().zip(alpha.iter()).map(|(v, &e)| v.powi(e as i32)).product();
                sum[k] += v;
                sum_sq[k] += v * v;
            }
        }
        let omega = solid_angle_f64(p);
        let m = c.samples as f64;
        for (k, alpha) in alphas.iter().enumerate() {
            let mean = sum[k] / m;
            let var = (sum_sq[k] / m - mean * mean).max(0.0) * m / (m - 1.0);
            let se = omega * (var / m).sqrt();
            let exact = monomial_sphere_integral(alpha)?.to_f64();
            let z = (omega * mean - exact).abs() / se;
            worst = worst.max(if z.is_finite() { z } else { f64::INFINITY });
        }
    }
    Ok(worst)
}

/// `N(p, n)` as `f64`, for reports.
pub fn count_harmonic_f64(p: usize, n: usize) -> Result<f64> {
    Ok(count_harmonic(p, n)?.to_f64().unwrap_or(f64::INFINITY))
}
