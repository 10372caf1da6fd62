//! Dirichlet problem `Lap V = 0` in the unit ball with `V = f` on the sphere.
//!
//! Two independent solvers: the spherical harmonic series
//! `V(x) = sum_{n,j} c_{n,j} |x|^n Y_{n,j}(x/|x|)` and the Poisson integral
//! `V(x0) = (1/Omega) int f(xi) (1 - |x0|^2) / |xi - x0|^p dOmega`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{pole_adapted_quadrature, solid_angle_f64, sphere_quadrature, QuadratureRule};
use crate::harmonic::{orthonormalize, HarmonicBasis};
use crate::legendre::{generating_function_closed, generating_function_partial};
use crate::polyalg::{ExactPolynomial, PolynomialJson, RealPolynomial};

/// Quadrature degree for callable boundary data when none is given.
pub const DEFAULT_CALLABLE_DEGREE: usize = 40;

/// Polar Gauss nodes are capped here; beyond it `|x0|` is too close to the sphere.
pub const MAX_POLAR_NODES: usize = 4000;

/// Named boundary functions usable from problem specs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Builtin {
    /// `f = 1`
    One,
    /// `f = exp(xi_1)`
    ExpX1,
    /// `f = |xi_1|`
    AbsX1,
    /// `f = |xi - 2 e_1|^(2-p)` (`ln |xi - 2 e_1|` for `p = 2`), harmonic in the ball
    PointSource,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::One => "one",
            Builtin::ExpX1 => "exp-x1",
            Builtin::AbsX1 => "abs-x1",
            Builtin::PointSource => "point-source",
        }
    }

    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            Builtin::One => 1.0,
            Builtin::ExpX1 => x[0].exp(),
            Builtin::AbsX1 => x[0].abs(),
            Builtin::PointSource => {
                let d2: f64 = x.iter().enumerate().map(|(i, v)| if i == 0 { (v - 2.0).powi(2) } else { v * v }).sum();
                if x.len() == 2 {
                    0.5 * d2.ln()
                } else {
                    d2.powf((2.0 - x.len() as f64) / 2.0)
                }
            }
        }
    }

    /// The harmonic extension into the ball, when known in closed form.
    pub fn exact_solution(self, x: &[f64]) -> Option<f64> {
        match self {
            Builtin::One | Builtin::PointSource => Some(self.eval(x)),
            Builtin::ExpX1 | Builtin::AbsX1 => None,
        }
    }
}

#[derive(Clone)]
pub enum BoundaryKind {
    Polynomial(ExactPolynomial),
    Callable { name: String, f: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync> },
}

impl fmt::Debug for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryKind::Polynomial(q) => write!(f, "Polynomial({q})"),
            BoundaryKind::Callable { name, .. } => write!(f, "Callable({name})"),
        }
    }
}

/// Boundary values `f` on `S^(p-1)`.
#[derive(Clone, Debug)]
pub struct BoundaryData {
    p: usize,
    kind: BoundaryKind,
}

impl BoundaryData {
    pub fn polynomial(q: ExactPolynomial) -> Result<Self> {
        if q.nvars() < 2 {
            return domain("boundary data needs p >= 2");
        }
        Ok(Self { p: q.nvars(), kind: BoundaryKind::Polynomial(q) })
    }

    pub fn callable(p: usize, name: impl Into<String>, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Result<Self> {
        if p < 2 {
            return domain("boundary data needs p >= 2");
        }
        Ok(Self { p, kind: BoundaryKind::Callable { name: name.into(), f: Arc::new(f) } })
    }

    pub fn builtin(p: usize, b: Builtin) -> Result<Self> {
        Self::callable(p, b.name(), move |x| b.eval(x))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn kind(&self) -> &BoundaryKind {
        &self.kind
    }

    /// Polynomial degree, `None` for callables.
    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            BoundaryKind::Polynomial(q) => Some(q.degree().unwrap_or(0) as usize),
            BoundaryKind::Callable { .. } => None,
        }
    }

    pub fn eval(&self, xi: &[f64]) -> f64 {
        match &self.kind {
            BoundaryKind::Polynomial(q) => q.eval_unchecked(xi),
            BoundaryKind::Callable { f, .. } => f(xi),
        }
    }

    fn check_finite(&self, rule: &QuadratureRule) -> Result<()> {
        for x in &rule.nodes {
            let v = self.eval(x);
            if !v.is_finite() {
                return Err(Error::Evaluation(format!("boundary data is {v} at quadrature node {x:?}")));
            }
        }
        Ok(())
    }
}

/// Coefficients `c_{n,j}` of the boundary data in the orthonormal bases.
#[derive(Clone, Debug)]
pub struct BvpSolution {
    p: usize,
    n_max: usize,
    bases: Vec<Arc<HarmonicBasis>>,
    coefficients: Vec<Vec<f64>>,
    quad_degree: usize,
    boundary_norm_sq: f64,
    error_estimate: Option<f64>,
}

fn project_with(f: &BoundaryData, bases: &[Arc<HarmonicBasis>], rule: &QuadratureRule) -> Result<(Vec<Vec<f64>>, f64)> {
    f.check_finite(rule)?;
    let sizes: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let total: usize = sizes.iter().sum::<usize>() + 1;
    let flat = rule.integrate_many(total, |x, buf| {
        let v = f.eval(x);
        let mut off = 0;
        for b in bases {
            let slot = &mut buf[off..off + b.len()];
            b.eval_into(x, slot);
            slot.iter_mut().for_each(|y| *y *= v);
            off += b.len();
        }
        buf[off] = v * v;
    });
    let mut coefficients = Vec::with_capacity(bases.len());
    let mut off = 0;
    for s in sizes {
        coefficients.push(flat[off..off + s].to_vec());
        off += s;
    }
    Ok((coefficients, flat[off]))
}

/// Projects onto degrees `0..=n_max` with the default quadrature degree:
/// `n_max + deg f` for polynomials, [`DEFAULT_CALLABLE_DEGREE`] for callables.
pub fn project_boundary(f: &BoundaryData, n_max: usize) -> Result<BvpSolution> {
    let degree = match f.degree() {
        Some(d) => n_max + d,
        None => DEFAULT_CALLABLE_DEGREE.max(2 * n_max),
    };
    project_boundary_with_degree(f, n_max, degree)
}

/// As [`project_boundary`] with an explicit sphere quadrature degree.
///
/// For callables the coefficients are recomputed at `degree + 2` and the
/// largest change is kept as [`BvpSolution::error_estimate`].
pub fn project_boundary_with_degree(f: &BoundaryData, n_max: usize, degree: usize) -> Result<BvpSolution> {
    if let Some(d) = f.degree() {
        if degree < n_max + d {
            return Err(Error::Config(format!(
                "quadrature degree {degree} is below n_max + deg f = {}",
                n_max + d
            )));
        }
    }
    let p = f.p;
    let bases: Vec<Arc<HarmonicBasis>> =
        (0..=n_max).map(|n| orthonormalize(p, n).map(Arc::new)).collect::<Result<_>>()?;
    // f^2 needs degree 2 deg f to be exact; it only feeds the Bessel diagnostic
    let rule = sphere_quadrature(p, degree.max(2 * f.degree().unwrap_or(0)))?;
    let (coefficients, boundary_norm_sq) = project_with(f, &bases, &rule)?;
    let error_estimate = match f.kind {
        BoundaryKind::Polynomial(_) => None,
        BoundaryKind::Callable { .. } => {
            let finer = sphere_quadrature(p, degree + 2)?;
            let (c2, _) = project_with(f, &bases, &finer)?;
            let diff = coefficients
                .iter()
                .flatten()
                .zip(c2.iter().flatten())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Some(diff)
        }
    };
    Ok(BvpSolution { p, n_max, bases, coefficients, quad_degree: degree, boundary_norm_sq, error_estimate })
}

impl BvpSolution {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `coefficients()[n][j] = c_{n,j}`, aligned with `bases()[n]`.
    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coefficients
    }

    pub fn bases(&self) -> &[Arc<HarmonicBasis>] {
        &self.bases
    }

    pub fn quad_degree(&self) -> usize {
        self.quad_degree
    }

    /// Quadrature value of `int f^2 dOmega`.
    pub fn boundary_norm_sq(&self) -> f64 {
        self.boundary_norm_sq
    }

    /// `int f^2 - sum c^2`, nonnegative up to rounding by Bessel's inequality.
    pub fn bessel_gap(&self) -> f64 {
        let s: f64 = self.coefficients.iter().flatten().map(|c| c * c).sum();
        self.boundary_norm_sq - s
    }

    /// Largest coefficient change between two quadrature degrees (callable data only).
    pub fn error_estimate(&self) -> Option<f64> {
        self.error_estimate
    }

    /// The solution as a polynomial `sum c_{n,j} Y_{n,j}(x)`.
    pub fn to_polynomial(&self) -> RealPolynomial {
        let mut acc = RealPolynomial::zero(self.p);
        for (b, cs) in self.bases.iter().zip(&self.coefficients) {
            for (y, c) in b.members().iter().zip(cs) {
                acc = acc.add(&y.scale(c));
            }
        }
        acc
    }
}

/// `sum_{n <= n_max, j} |x|^n c_{n,j} Y_{n,j}(x/|x|)` for `|x| <= 1`.
pub fn series_eval(sol: &BvpSolution, x: &[f64]) -> Result<f64> {
    if x.len() != sol.p {
        return domain(format!("point must have dimension {}", sol.p));
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r > 1.0 + 1e-12 {
        return domain(format!("series_eval needs |x| <= 1, got {r}"));
    }
    if r == 0.0 {
        let y0 = sol.bases[0].eval_all(x);
        return Ok(sol.coefficients[0][0] * y0[0]);
    }
    // members are homogeneous of degree n, so Y(x) = |x|^n Y(x/|x|)
    let mut acc = 0.0;
    for (b, cs) in sol.bases.iter().zip(&sol.coefficients) {
        let ys = b.eval_all(x);
        acc += ys.iter().zip(cs).map(|(y, c)| y * c).sum::<f64>();
    }
    Ok(acc)
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Green's function of the ball with a pole at `x0`, by the method of images:
/// `G = (rho^(2-p) - (|x0| rho')^(2-p)) / ((2-p) Omega_{p-1})`.
pub fn green_function(p: usize, x: &[f64], x0: &[f64]) -> Result<f64> {
    if p < 3 {
        return Err(Error::Unsupported(format!("the Green's function is implemented for p >= 3, got {p}")));
    }
    if x.len() != p || x0.len() != p {
        return domain(format!("points must have dimension {p}"));
    }
    let (rx, r0) = (norm(x), norm(x0));
    if rx > 1.0 + 1e-12 {
        return domain(format!("x must lie in the closed ball, |x| = {rx}"));
    }
    if r0 >= 1.0 {
        return domain(format!("x0 must lie in the open ball, |x0| = {r0}"));
    }
    let scale = 1.0 / ((2.0 - p as f64) * solid_angle_f64(p));
    let e = 2.0 - p as f64;
    if r0 == 0.0 {
        return Ok((rx.powf(e) - 1.0) * scale);
    }
    let rho: f64 = x.iter().zip(x0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    if rho == 0.0 {
        return Err(Error::Evaluation("Green's function is singular at x = x0".into()));
    }
    // (|x0| rho')^2 = |x|^2 |x0|^2 - 2 <x, x0> + 1, which equals rho^2 on |x| = 1
    let dot: f64 = x.iter().zip(x0).map(|(a, b)| a * b).sum();
    let image = (rx * rx * r0 * r0 - 2.0 * dot + 1.0).sqrt();
    Ok((rho.powf(e) - image.powf(e)) * scale)
}

/// Gauss nodes in `t = <xi, x0/|x0|>` that resolve the Poisson kernel to
/// rounding level: its singularity sits at `t0 = (1 + r^2)/(2r)`, giving
/// geometric convergence with ratio `r^2` per node.
pub fn poisson_polar_nodes(r: f64) -> usize {
    if r <= 0.0 {
        return 1;
    }
    let m = (f64::EPSILON.ln() / (2.0 * r.ln())).ceil() as usize + 8;
    m.min(MAX_POLAR_NODES)
}

/// Poisson integral of `f` at `|x0| < 1`. The non-polar factors of the
/// quadrature integrate degree `quad_degree` exactly.
pub fn poisson_eval(f: &BoundaryData, x0: &[f64], quad_degree: usize) -> Result<f64> {
    let p = f.p;
    if p < 3 {
        return Err(Error::Unsupported("poisson_eval needs p >= 3; use the series solution for p = 2".into()));
    }
    if x0.len() != p {
        return domain(format!("x0 must have dimension {p}"));
    }
    let r = norm(x0);
    if r >= 1.0 {
        return domain(format!("poisson_eval needs |x0| < 1, got {r}"));
    }
    let omega = solid_angle_f64(p);
    if r == 0.0 {
        let rule = sphere_quadrature(p, quad_degree)?;
        return Ok(rule.try_integrate(|xi| f.eval(xi))? / omega);
    }
    let pole: Vec<f64> = x0.iter().map(|v| v / r).collect();
    let polar = poisson_polar_nodes(r) + quad_degree / 2 + 1;
    let rule = pole_adapted_quadrature(&pole, quad_degree, polar)?;
    let half_p = p as f64 / 2.0;
    let v = rule.try_integrate(|xi| {
        let t: f64 = xi.iter().zip(&pole).map(|(a, b)| a * b).sum();
        let kernel = (1.0 - r * r) / (1.0 + r * r - 2.0 * r * t).powf(half_p);
        f.eval(xi) * kernel
    })?;
    Ok(v / omega)
}

/// Max of `|sum_{n<=terms} r^n N P_n(t) - (1-r^2)/(1-2rt+r^2)^(p/2)|` over the grids.
pub fn generating_function_consistency(p: usize, ts: &[f64], rs: &[f64], terms: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &r in rs {
        if r.abs() > 0.9 {
            return domain(format!("generating function check needs |r| <= 0.9, got {r}"));
        }
        for &t in ts {
            let d = (generating_function_partial(p, t, r, terms)? - generating_function_closed(p, t, r)).abs();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

/// JSON problem spec read by the `solve` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub p: usize,
    pub n_max: usize,
    pub boundary: BoundarySpec,
    pub eval_points: Vec<Vec<f64>>,
    /// Sphere quadrature degree; defaults as in [`project_boundary`].
    #[serde(default)]
    pub quad_degree: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum BoundarySpec {
    /// Either `expr` (e.g. `"x1^2 - x2*x3"`) or exact `terms`.
    Polynomial {
        #[serde(default)]
        expr: Option<String>,
        #[serde(default)]
        terms: Option<PolynomialJson>,
    },
    Builtin { name: Builtin },
}

impl BoundarySpec {
    pub fn to_boundary(&self, p: usize) -> Result<BoundaryData> {
        match self {
            BoundarySpec::Polynomial { expr: Some(e), terms: None } => BoundaryData::polynomial(ExactPolynomial::parse(p, e)?),
            BoundarySpec::Polynomial { expr: None, terms: Some(t) } => {
                if t.nvars != p {
                    return Err(Error::Config(format!("boundary polynomial has {} variables, expected {p}", t.nvars)));
                }
                BoundaryData::polynomial(ExactPolynomial::from_json(t)?)
            }
            BoundarySpec::Polynomial { .. } => {
                Err(Error::Config("polynomial boundary needs exactly one of `expr` or `terms`".into()))
            }
            BoundarySpec::Builtin { name } => BoundaryData::builtin(p, *name),
        }
    }
}

/// One evaluation point of a solved problem. `poisson_value` is absent for `p = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveRow {
    pub point: Vec<f64>,
    pub series_value: f64,
    pub poisson_value: Option<f64>,
    pub abs_diff: Option<f64>,
}

/// Solves a problem spec by both methods at every evaluation point.
pub fn solve(spec: &ProblemSpec) -> Result<(BvpSolution, Vec<SolveRow>)> {
    let f = spec.boundary.to_boundary(spec.p)?;
    let sol = match spec.quad_degree {
        Some(d) => project_boundary_with_degree(&f, spec.n_max, d)?,
        None => project_boundary(&f, spec.n_max)?,
    };
    let poisson_degree = spec.quad_degree.unwrap_or(match f.degree() {
        Some(d) => d,
        None => DEFAULT_CALLABLE_DEGREE,
    });
    let mut rows = Vec::with_capacity(spec.eval_points.len());
    for x in &spec.eval_points {
        let s = series_eval(&sol, x)?;
        let pv = if spec.p >= 3 { Some(poisson_eval(&f, x, poisson_degree)?) } else { None };
        rows.push(SolveRow { point: x.clone(), series_value: s, poisson_value: pv, abs_diff: pv.map(|v| (v - s).abs()) });
    }
    Ok((sol, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(p: usize, s: &str) -> BoundaryData {
        BoundaryData::polynomial(ExactPolynomial::parse(p, s).unwrap()).unwrap()
    }

    fn random_ball_point(rng: &mut ChaCha8Rng, p: usize, rmax: f64) -> Vec<f64> {
        loop {
            let x: Vec<f64> = (0..p).map(|_| rng.random_range(-rmax..rmax)).collect();
            if norm(&x) <= rmax {
                return x;
            }
        }
    }

    #[test]
    fn projection_of_a_basis_member() {
        let b = orthonormalize(3, 2).unwrap();
        // rationalize a member exactly is not possible; use callable restriction
        let y = b.members()[0].clone();
        let f = BoundaryData::callable(3, "Y21", move |x| y.evaluate(x).unwrap()).unwrap();
        let sol = project_boundary_with_degree(&f, 3, 8).unwrap();
        for (n, cs) in sol.coefficients().iter().enumerate() {
            for (j, c) in cs.iter().enumerate() {
                let want = if n == 2 && j == 0 { 1.0 } else { 0.0 };
                assert!((c - want).abs() < 1e-10, "c[{n}][{j}] = {c}");
            }
        }
        assert!(sol.error_estimate().unwrap() < 1e-12);
    }

    #[test]
    fn constant_data() {
        for p in [2, 3, 5] {
            let f = BoundaryData::builtin(p, Builtin::One).unwrap();
            let sol = project_boundary(&f, 3).unwrap();
            assert!((sol.coefficients()[0][0].abs() - solid_angle_f64(p).sqrt()).abs() < 1e-12);
            for cs in &sol.coefficients()[1..] {
                assert!(cs.iter().all(|c| c.abs() < 1e-12));
            }
            let x = vec![0.1; p];
            assert!((series_eval(&sol, &x).unwrap() - 1.0).abs() < 1e-12);
            if p >= 3 {
                assert!((poisson_eval(&f, &x, 0).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn odd_data_has_no_even_coefficients() {
        let f = poly(4, "x1^3 - 2*x2*x3*x4 + x4");
        let sol = project_boundary(&f, 5).unwrap();
        for n in (0..=5).step_by(2) {
            assert!(sol.coefficients()[n].iter().all(|c| c.abs() < 1e-10));
        }
        assert!(sol.bessel_gap() > -1e-8);
    }

    #[test]
    fn degree_below_minimum_is_a_config_error() {
        let f = poly(3, "x1^3");
        assert!(matches!(project_boundary_with_degree(&f, 4, 5), Err(Error::Config(_))));
    }

    #[test]
    fn harmonic_data_is_reproduced() {
        let h = ExactPolynomial::parse(3, "x1^2 - x3^2 + 3*x1*x2*x3").unwrap();
        assert!(h.is_harmonic());
        let f = BoundaryData::polynomial(h.clone()).unwrap();
        let sol = project_boundary(&f, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_ball_point(&mut rng, 3, 1.0);
            assert!((series_eval(&sol, &x).unwrap() - h.evaluate(&x).unwrap()).abs() < 1e-9);
        }
        assert!(sol.to_polynomial().laplacian().max_abs_coeff() < 1e-9);
    }

    #[test]
    fn center_value_is_the_mean() {
        let f = poly(3, "x1^2 + 2");
        let sol = project_boundary(&f, 2).unwrap();
        let mean = 1.0 / 3.0 + 2.0;
        assert!((series_eval(&sol, &[0.0, 0.0, 0.0]).unwrap() - mean).abs() < 1e-12);
        assert!((poisson_eval(&f, &[0.0, 0.0, 0.0], 2).unwrap() - mean).abs() < 1e-12);
        assert!(series_eval(&sol, &[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn series_and_poisson_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, s) in [(3, "x1^4 - x2*x3 + x1"), (4, "x1^2*x4 - 3*x2^3"), (5, "x5^4 + x1*x2*x3*x4 - 1/2")] {
            let f = poly(p, s);
            let sol = project_boundary(&f, 4).unwrap();
            for _ in 0..10 {
                let x = random_ball_point(&mut rng, p, 0.8);
                let a = series_eval(&sol, &x).unwrap();
                let b = poisson_eval(&f, &x, 4).unwrap();
                assert!((a - b).abs() < 1e-10, "p = {p}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn point_source_extension() {
        let f = BoundaryData::builtin(3, Builtin::PointSource).unwrap();
        let x = [0.3, -0.2, 0.4];
        let want = Builtin::PointSource.exact_solution(&x).unwrap();
        assert!((poisson_eval(&f, &x, 40).unwrap() - want).abs() < 1e-10);
        let sol = project_boundary(&f, 30).unwrap();
        assert!((series_eval(&sol, &x).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn green_examples() {
        let v = green_function(3, &[0.5, 0.0, 0.0], &[0.0; 3]).unwrap();
        assert!((v + 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in 3..6 {
            for _ in 0..20 {
                let x0 = random_ball_point(&mut rng, p, 0.95);
                let mut xi: Vec<f64> = (0..p).map(|_| rng.random_range(-1.0..1.0)).collect();
                let n = norm(&xi);
                xi.iter_mut().for_each(|v| *v /= n);
                assert!(green_function(p, &xi, &x0).unwrap().abs() < 1e-12);
                let x = random_ball_point(&mut rng, p, 0.95);
                let d = green_function(p, &x, &x0).unwrap() - green_function(p, &x0, &x).unwrap();
                assert!(d.abs() < 1e-12);
            }
        }
        assert!(matches!(green_function(2, &[0.1, 0.0], &[0.0, 0.2]), Err(Error::Unsupported(_))));
        assert!(green_function(3, &[0.1, 0.0, 0.0], &[0.1, 0.0, 0.0]).is_err());
    }

    #[test]
    fn generating_function_examples() {
        let ts: Vec<f64> = (0..11).map(|i| -1.0 + 0.2 * i as f64).collect();
        assert!(generating_function_consistency(3, &ts, &[0.1, 0.3, 0.5], 60).unwrap() <= 1e-10);
        assert_eq!(generating_function_consistency(4, &ts, &[0.0], 60).unwrap(), 0.0);
        assert!(generating_function_consistency(3, &ts, &[0.95], 60).is_err());
    }

    #[test]
    fn problem_spec_round_trip() {
        let text = r#"{"p": 3, "n_max": 3, "boundary": {"type": "polynomial", "expr": "x1*x2 + x3"},
                       "eval_points": [[0.1, 0.2, 0.3], [0, 0, 0]]}"#;
        let spec: ProblemSpec = serde_json::from_str(text).unwrap();
        let (_, rows) = solve(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[0].series_value - (0.02 + 0.3)).abs() < 1e-12);
        assert!(rows.iter().all(|r| r.abs_diff.unwrap() < 1e-10));
        let text = r#"{"p": 2, "n_max": 40, "boundary": {"type": "builtin", "name": "point-source"}, "eval_points": [[0.5, 0.1]]}"#;
        let spec: ProblemSpec = serde_json::from_str(text).unwrap();
        let (_, rows) = solve(&spec).unwrap();
        assert!(rows[0].poisson_value.is_none());
        let want = Builtin::PointSource.exact_solution(&[0.5, 0.1]).unwrap();
        assert!((rows[0].series_value - want).abs() < 1e-10, "{}", rows[0].series_value);
    }
}
