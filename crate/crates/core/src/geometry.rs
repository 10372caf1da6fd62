//! Spherical coordinates in `p` dimensions, solid angles, and quadrature on `S^(p-1)`.
//!
//! Coordinates follow the convention
//!
//! ```text
//! x_1 = r sin(th_{p-2}) ... sin(th_1) cos(phi)
//! x_2 = r sin(th_{p-2}) ... sin(th_1) sin(phi)
//! x_3 = r sin(th_{p-2}) ... sin(th_2) cos(th_1)
//! ...
//! x_p = r cos(th_{p-2})
//! ```
//!
//! so `thetas[k-1]` is `th_k` and the last angle measures the distance from the `x_p` pole.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::orthopoly::{gauss_rule, Weight, CALLABLE_RULE_SIZE};
use crate::scalar::{format_f64, gamma_half, pairwise_sum, PiMultiple, Rational, Scalar};

/// Exact `Omega_{p-1} = 2 pi^(p/2) / Gamma(p/2)`, the measure of `S^(p-1)`.
pub fn solid_angle(p: usize) -> Result<PiMultiple> {
    if p < 1 {
        return domain("solid angle needs p >= 1");
    }
    Ok(PiMultiple::new(Rational::from_i64(2), p as i64).div(&gamma_half(p as u64)))
}

/// [`solid_angle`] as a float. `p = 0` yields `NaN`.
pub fn solid_angle_f64(p: usize) -> f64 {
    solid_angle(p).map(|v| v.to_f64()).unwrap_or(f64::NAN)
}

/// A point `(r, phi, th_1, ..., th_{p-2})` of `R^p`, `p >= 2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub r: f64,
    pub phi: f64,
    pub thetas: Vec<f64>,
}

impl SphericalPoint {
    pub fn new(r: f64, phi: f64, thetas: Vec<f64>) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return domain(format!("radius must be finite and nonnegative, got {r}"));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return domain(format!("phi must lie in [0, 2pi), got {phi}"));
        }
        if let Some(t) = thetas.iter().find(|t| !(0.0..=PI).contains(*t)) {
            return domain(format!("polar angles must lie in [0, pi], got {t}"));
        }
        Ok(Self { r, phi, thetas })
    }

    pub fn dim(&self) -> usize {
        self.thetas.len() + 2
    }
}

pub fn spherical_to_cartesian(pt: &SphericalPoint) -> Vec<f64> {
    let p = pt.dim();
    let mut x = vec![0.0; p];
    // running product of sines from the top angle down
    let mut scale = pt.r;
    for k in (1..=p - 2).rev() {
        let th = pt.thetas[k - 1];
        x[k + 1] = scale * th.cos();
        scale *= th.sin();
    }
    x[0] = scale * pt.phi.cos();
    x[1] = scale * pt.phi.sin();
    x
}

/// Inverse of [`spherical_to_cartesian`].
///
/// `phi` uses the two-argument arctangent. When the sub-vector below an angle
/// vanishes, `phi` defaults to 0 and an undetermined `th_k` is 0 or pi by the
/// sign of the first nonzero coordinate above it (0 when there is none).
pub fn cartesian_to_spherical(x: &[f64]) -> Result<SphericalPoint> {
    let p = x.len();
    if p < 2 {
        return domain("spherical coordinates need p >= 2");
    }
    if x.iter().any(|v| !v.is_finite()) {
        return domain("non-finite coordinate");
    }
    if x.iter().all(|&v| v == 0.0) {
        return domain("the origin has no spherical coordinates");
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut thetas = vec![0.0; p - 2];
    let mut sub_sq = x[0] * x[0] + x[1] * x[1];
    for k in 1..=p - 2 {
        let axis = x[k + 1];
        let sub = sub_sq.sqrt();
        thetas[k - 1] = if sub == 0.0 && axis == 0.0 {
            match x[k + 2..].iter().find(|&&v| v != 0.0) {
                Some(&v) if v < 0.0 => PI,
                _ => 0.0,
            }
        } else {
            sub.atan2(axis)
        };
        sub_sq += axis * axis;
    }
    let phi = if x[0] == 0.0 && x[1] == 0.0 {
        0.0
    } else {
        let a = x[1].atan2(x[0]);
        let a = if a < 0.0 { a + 2.0 * PI } else { a };
        if a >= 2.0 * PI {
            0.0
        } else {
            a
        }
    };
    Ok(SphericalPoint { r, phi, thetas })
}

/// Diagonal metric `(g_rr, g_{th_{p-2}}, ..., g_{th_1}, g_phi)` so that
/// `ds^2 = dr^2 + r^2 (dth_{p-2}^2 + sin^2 th_{p-2} dth_{p-3}^2 + ...)`.
pub fn line_element_coeffs(pt: &SphericalPoint) -> Vec<f64> {
    let p = pt.dim();
    let mut g = Vec::with_capacity(p);
    g.push(1.0);
    let mut s = pt.r * pt.r;
    for k in (1..=p - 2).rev() {
        g.push(s);
        s *= pt.thetas[k - 1].sin().powi(2);
    }
    g.push(s);
    g
}

/// Exact `int_{S^(p-1)} xi^alpha dOmega`, `p = alpha.len()`:
/// zero if any exponent is odd, else `2 prod Gamma((alpha_i+1)/2) / Gamma((|alpha|+p)/2)`.
pub fn monomial_sphere_integral(alpha: &[u32]) -> Result<PiMultiple> {
    let p = alpha.len();
    if p < 1 {
        return domain("monomial sphere integral needs p >= 1");
    }
    if alpha.iter().any(|a| a % 2 == 1) {
        return Ok(PiMultiple::zero());
    }
    let mut num = PiMultiple::rational(Rational::from_i64(2));
    for &a in alpha {
        num = num.mul(&gamma_half(a as u64 + 1));
    }
    let total: u64 = alpha.iter().map(|&a| a as u64).sum();
    Ok(num.div(&gamma_half(total + p as u64)))
}

/// Nodes and positive weights on `S^(p-1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub p: usize,
    pub exact_degree: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(x, &w)| w * f(x)).collect();
        pairwise_sum(&terms)
    }

    /// As [`integrate`](Self::integrate) but fails on a non-finite integrand value.
    pub fn try_integrate(&self, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        let mut terms = Vec::with_capacity(self.len());
        for (x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::Evaluation(format!("integrand is {v} at node {x:?}")));
            }
            terms.push(w * v);
        }
        Ok(pairwise_sum(&terms))
    }

    /// Integrates several functions at once; `f` writes one value per function into its buffer.
    pub fn integrate_many(&self, count: usize, f: impl Fn(&[f64], &mut [f64])) -> Vec<f64> {
        let mut columns = vec![Vec::with_capacity(self.len()); count];
        let mut buf = vec![0.0; count];
        for (x, &w) in self.nodes.iter().zip(&self.weights) {
            f(x, &mut buf);
            for (col, v) in columns.iter_mut().zip(&buf) {
                col.push(w * v);
            }
        }
        columns.iter().map(|c| pairwise_sum(c)).collect()
    }

    /// Applies an orthogonal map to every node.
    pub fn transformed(&self, map: impl Fn(&[f64]) -> Vec<f64>) -> Self {
        Self {
            p: self.p,
            exact_degree: self.exact_degree,
            nodes: self.nodes.iter().map(|x| map(x)).collect(),
            weights: self.weights.clone(),
        }
    }

    /// CSV with columns `x1..xp,weight`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=self.p).map(|i| format!("x{i}")).collect();
        header.push("weight".into());
        w.write_record(&header)?;
        for (x, wt) in self.nodes.iter().zip(&self.weights) {
            let mut row: Vec<String> = x.iter().map(|v| format_f64(*v)).collect();
            row.push(format_f64(*wt));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Tensor-product rule on `S^(p-1)`: `phi_points` uniform angles times a Gauss
/// rule in `cos th_k` with weight `(1-t^2)^((k-1)/2)` and `gauss_counts[k-1]` nodes.
pub fn product_rule(p: usize, phi_points: usize, gauss_counts: &[usize]) -> Result<QuadratureRule> {
    if p < 2 {
        return domain(format!("sphere rules need p >= 2, got {p}"));
    }
    if gauss_counts.len() != p - 2 || phi_points == 0 {
        return Err(Error::Internal(format!("bad product rule shape for p = {p}")));
    }
    let step = 2.0 * PI / phi_points as f64;
    let mut nodes: Vec<Vec<f64>> = (0..phi_points)
        .map(|i| {
            let (s, c) = (i as f64 * step).sin_cos();
            vec![c, s]
        })
        .collect();
    let mut weights = vec![step; phi_points];
    let mut exact = phi_points - 1;
    for (idx, &m) in gauss_counts.iter().enumerate() {
        let k = idx + 1;
        let rule = gauss_rule(&Weight::from_halves(k as i64 - 1, k as i64 - 1)?, m)?;
        exact = exact.min(rule.exact_degree);
        let mut next_nodes = Vec::with_capacity(nodes.len() * m);
        let mut next_weights = Vec::with_capacity(nodes.len() * m);
        for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let s = (1.0 - t * t).sqrt();
            for (y, &wy) in nodes.iter().zip(&weights) {
                let mut x: Vec<f64> = y.iter().map(|v| v * s).collect();
                x.push(t);
                next_nodes.push(x);
                next_weights.push(wy * wt);
            }
        }
        nodes = next_nodes;
        weights = next_weights;
    }
    Ok(QuadratureRule { p, exact_degree: exact, nodes, weights })
}

/// Product rule integrating every polynomial of total degree `<= degree` exactly.
pub fn sphere_quadrature(p: usize, degree: usize) -> Result<QuadratureRule> {
    let m = degree / 2 + 1; // ceil((degree + 1) / 2)
    product_rule(p, degree + 1, &vec![m; p.saturating_sub(2)])
}

/// Product rule whose polar factor (about `pole`) has `polar_nodes` Gauss nodes,
/// while the remaining factors integrate degree `degree`. Suited to integrands
/// `f(xi) K(<xi, pole>)` with polynomial `f` and a sharply peaked zonal `K`.
pub fn pole_adapted_quadrature(pole: &[f64], degree: usize, polar_nodes: usize) -> Result<QuadratureRule> {
    let p = pole.len();
    if p < 3 {
        return domain("pole adapted rules need p >= 3");
    }
    let norm = pole.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return domain(format!("pole must be a unit vector (|pole| = {norm})"));
    }
    let m = degree / 2 + 1;
    let mut counts = vec![m; p - 2];
    counts[p - 3] = polar_nodes.max(m);
    let rule = product_rule(p, degree + 1, &counts)?;
    let reflect = householder_to(pole);
    Ok(rule.transformed(|x| reflect(x)))
}

/// An orthogonal reflection sending `e_p` to the unit vector `u`.
pub fn householder_to(u: &[f64]) -> impl Fn(&[f64]) -> Vec<f64> {
    let p = u.len();
    let mut v: Vec<f64> = u.to_vec();
    v[p - 1] -= 1.0;
    let vv: f64 = v.iter().map(|a| a * a).sum();
    move |x: &[f64]| {
        if vv < 1e-30 {
            return x.to_vec();
        }
        let dot: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
        let c = 2.0 * dot / vv;
        x.iter().zip(&v).map(|(xi, vi)| xi - c * vi).collect()
    }
}

/// `Omega_{p-2} int_{-1}^{1} f(t) (1-t^2)^((p-3)/2) dt`, the sphere integral of `f(<xi, eta>)`.
pub fn zonal_integral(p: usize, f: impl Fn(f64) -> f64) -> Result<f64> {
    zonal_integral_with(p, f, CALLABLE_RULE_SIZE)
}

pub fn zonal_integral_with(p: usize, f: impl Fn(f64) -> f64, nodes: usize) -> Result<f64> {
    let rule = gauss_rule(&Weight::sphere(p)?, nodes)?;
    Ok(solid_angle_f64(p - 1) * rule.try_integrate(f)?)
}
