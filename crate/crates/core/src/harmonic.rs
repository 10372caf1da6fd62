//! Harmonic homogeneous polynomials and orthonormal spherical harmonics.
//!
//! A harmonic `H_n = sum_j x_p^j h_{n-j}` (each `h` free of `x_p`) is fixed by
//! its two leading pieces `h_n`, `h_{n-1}`: the Laplace equation forces
//! `h_{n-j-2} = -Lap_{p-1} h_{n-j} / ((j+2)(j+1))`. Seeding with monomials gives
//! a basis of `K(p-1,n) + K(p-1,n-1) = N(p,n)` polynomials.

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::solid_angle;
use crate::legendre::legendre_coeffs;
use crate::polyalg::{homogeneous_multi_indices, ExactPolynomial, MultiIndex, PolynomialJson, RealPolynomial};
use crate::scalar::{binomial, format_rational, gamma_half, PiMultiple, Rational, Scalar};

/// `K(p, n) = (p+n-1)! / (n! (p-1)!)`, the number of monomials of degree `n` in `p` variables.
pub fn count_homogeneous(p: usize, n: usize) -> Result<BigUint> {
    if p < 1 {
        return domain("count_homogeneous needs p >= 1");
    }
    Ok(binomial((p + n - 1) as u64, n as u64))
}

/// `N(p, n) = (2n+p-2)/n * C(n+p-3, n-1)` for `n >= 1` and `N(p, 0) = 1`.
pub fn count_harmonic(p: usize, n: usize) -> Result<BigUint> {
    if p < 2 {
        return domain(format!("count_harmonic needs p >= 2, got {p}"));
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let c = binomial((n + p - 3) as u64, (n - 1) as u64);
    let (q, r) = (c * (2 * n + p - 2)).div_rem(&BigUint::from(n));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Raw harmonic basis of degree `n`: `h_n`-seeded members first, then
/// `h_{n-1}`-seeded, each group in lexicographic order of the seed exponent.
pub fn harmonic_basis_raw(p: usize, n: usize) -> Result<Vec<ExactPolynomial>> {
    if p < 2 {
        return domain(format!("harmonic basis needs p >= 2, got {p}"));
    }
    let q = p - 1;
    let mut out = Vec::new();
    for start in [0u32, 1] {
        if start as usize > n {
            continue;
        }
        for seed in homogeneous_multi_indices(q, n as u32 - start) {
            let mut h = ExactPolynomial::monomial(seed, Rational::one());
            let mut acc = ExactPolynomial::zero(p);
            let mut j = start;
            loop {
                acc = acc.add(&h.extend_vars(p).shift_var(p - 1, j));
                if j + 2 > n as u32 {
                    break;
                }
                let denom = Rational::from_i64(((j + 2) * (j + 1)) as i64);
                h = h.laplacian().scale(&(-Rational::one() / denom));
                if h.is_zero() {
                    break;
                }
                j += 2;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// `L_n(x) = sum_k a_k x_1^k |x|^(n-k)` where `P_{n,p}(t) = sum_k a_k t^k`: the
/// harmonic homogeneous polynomial axially symmetric about `e_1` with `L_n(e_1) = 1`.
pub fn legendre_harmonic(p: usize, n: usize) -> Result<ExactPolynomial> {
    let coeffs = legendre_coeffs(p, n)?;
    let r2 = ExactPolynomial::radius_squared(p);
    let mut out = ExactPolynomial::zero(p);
    for (k, a) in coeffs.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if (n - k) % 2 != 0 {
            return Err(Error::Internal(format!("P_{{{n},{p}}} has a term t^{k} of the wrong parity")));
        }
        let mut alpha = vec![0; p];
        alpha[0] = k as u32;
        let term = ExactPolynomial::monomial(alpha, a.clone()).mul(&r2.pow(((n - k) / 2) as u32));
        out = out.add(&term);
    }
    Ok(out)
}

/// Exact Gram matrix `G_ij = entries_ij * factor` of sphere inner products.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactGram {
    pub factor: PiMultiple,
    pub entries: Vec<Vec<Rational>>,
}

impl ExactGram {
    pub fn to_f64(&self) -> DMatrix<f64> {
        let f = self.factor.to_f64();
        let n = self.entries.len();
        DMatrix::from_fn(n, n, |i, j| self.entries[i][j].as_f64() * f)
    }

    /// Exact rank of the rational matrix by fraction-free elimination.
    pub fn rank(&self) -> usize {
        exact_rank(&self.entries)
    }
}

/// Rank over the rationals (Bareiss elimination on a common-denominator integer copy).
pub fn exact_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Exact sphere Gram matrix of homogeneous polynomials of a common degree `n`.
///
/// For `|g| = 2n` with all `g_i = 2k_i` even,
/// `int xi^g dOmega = 2^(1-n) prod (2k_i - 1)!! * pi^(p/2) / Gamma(n + p/2)`,
/// so after clearing denominators the work is integer arithmetic.
pub fn exact_gram(p: usize, n: usize, polys: &[ExactPolynomial]) -> Result<ExactGram> {
    for q in polys {
        if q.nvars() != p || !matches!(q.is_homogeneous(), Some(d) if d as usize == n || q.is_zero()) {
            return domain(format!("Gram matrix input must be homogeneous of degree {n} in {p} variables"));
        }
    }
    let monomials = homogeneous_multi_indices(p, n as u32);
    let index: std::collections::HashMap<&MultiIndex, usize> =
        monomials.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let double_fact: Vec<BigInt> = {
        let mut v = vec![BigInt::one(); 2 * n + 2];
        // v[e] = (e - 1)!! for even e
        for e in (2..v.len()).step_by(2) {
            v[e] = &v[e - 2] * BigInt::from(e - 1);
        }
        v
    };
    let moment = |a: &MultiIndex, b: &MultiIndex| -> Option<BigInt> {
        let mut acc = BigInt::one();
        for (x, y) in a.iter().zip(b) {
            let e = (x + y) as usize;
            if e % 2 == 1 {
                return None;
            }
            acc *= &double_fact[e];
        }
        Some(acc)
    };

    // integer coefficient vectors and their scales
    let mut scaled: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(polys.len());
    let mut scales: Vec<BigInt> = Vec::with_capacity(polys.len());
    for q in polys {
        let l = q.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        scaled.push(q.terms().map(|(a, c)| (index[a], c.numer() * (&l / c.denom()))).collect());
        scales.push(l);
    }

    // mv[i][beta] = sum_alpha c_i[alpha] M(alpha + beta)
    let k = monomials.len();
    let mv: Vec<Vec<BigInt>> = scaled
        .iter()
        .map(|terms| {
            (0..k)
                .map(|b| {
                    let mut acc = BigInt::zero();
                    for (a, c) in terms {
                        if let Some(m) = moment(&monomials[*a], &monomials[b]) {
                            acc += c * m;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();

    let two_pow = Rational::new(BigInt::one(), BigInt::one() << n) * Rational::from_i64(2);
    let count = polys.len();
    let mut entries = vec![vec![Rational::zero(); count]; count];
    for i in 0..count {
        for j in 0..=i {
            let mut acc = BigInt::zero();
            for (b, c) in &scaled[j] {
                acc += c * &mv[i][*b];
            }
            let v = Rational::new(acc, &scales[i] * &scales[j]) * &two_pow;
            entries[i][j] = v.clone();
            entries[j][i] = v;
        }
    }
    let factor = PiMultiple::new(Rational::one(), p as i64).div(&gamma_half((2 * n + p) as u64));
    Ok(ExactGram { factor, entries })
}

/// Orthonormal spherical harmonics `Y_{n,1..N}` in `p` dimensions.
#[derive(Clone, Debug)]
pub struct HarmonicBasis {
    p: usize,
    n: usize,
    raw: Vec<ExactPolynomial>,
    gram: ExactGram,
    /// `members[i] = sum_k transform[i][k] raw[k]`
    transform: Vec<Vec<f64>>,
    members: Vec<RealPolynomial>,
    monomials: Vec<MultiIndex>,
    /// members as dense rows over `monomials`
    dense: DMatrix<f64>,
}

/// Orthonormalizes the raw basis under the sphere inner product.
///
/// The Gram matrix is exact; the orthonormalization is modified Gram-Schmidt
/// with one reorthogonalization pass in that inner product.
pub fn orthonormalize(p: usize, n: usize) -> Result<HarmonicBasis> {
    let raw = harmonic_basis_raw(p, n)?;
    let gram = exact_gram(p, n, &raw)?;
    let g = gram.to_f64();
    let count = raw.len();
    let ip = |u: &[f64], v: &[f64]| -> f64 {
        let mut acc = 0.0;
        for a in 0..count {
            if u[a] == 0.0 {
                continue;
            }
            let row: f64 = (0..count).map(|b| g[(a, b)] * v[b]).sum();
            acc += u[a] * row;
        }
        acc
    };
    let mut transform: Vec<Vec<f64>> = Vec::with_capacity(count);
    for i in 0..count {
        let mut v = vec![0.0; count];
        v[i] = 1.0;
        for _pass in 0..2 {
            for u in &transform {
                let c = ip(u, &v);
                for (vk, uk) in v.iter_mut().zip(u) {
                    *vk -= c * uk;
                }
            }
        }
        let nrm = ip(&v, &v);
        if !(nrm > 0.0) || !nrm.is_finite() {
            return Err(Error::Internal(format!(
                "raw harmonic basis (p = {p}, n = {n}) is numerically dependent at member {i}"
            )));
        }
        let s = 1.0 / nrm.sqrt();
        v.iter_mut().for_each(|x| *x *= s);
        transform.push(v);
    }

    let raw_real: Vec<RealPolynomial> = raw.iter().map(|q| q.to_real()).collect();
    let members: Vec<RealPolynomial> = transform
        .iter()
        .map(|u| {
            let mut acc = RealPolynomial::zero(p);
            for (c, q) in u.iter().zip(&raw_real) {
                if *c != 0.0 {
                    acc = acc.add(&q.scale(c));
                }
            }
            acc
        })
        .collect();
    let monomials = homogeneous_multi_indices(p, n as u32);
    let dense = DMatrix::from_fn(members.len(), monomials.len(), |i, k| members[i].coeff(&monomials[k]));
    Ok(HarmonicBasis { p, n, raw, gram, transform, members, monomials, dense })
}

impl HarmonicBasis {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[RealPolynomial] {
        &self.members
    }

    pub fn raw(&self) -> &[ExactPolynomial] {
        &self.raw
    }

    pub fn gram_exact(&self) -> &ExactGram {
        &self.gram
    }

    pub fn transform(&self) -> &[Vec<f64>] {
        &self.transform
    }

    /// `[Y_{n,1}(x), ..., Y_{n,N}(x)]`; as homogeneous polynomials, so off the
    /// sphere this is the solid harmonic `|x|^n Y(x/|x|)`.
    pub fn eval_all(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.eval_into(x, &mut out);
        out
    }

    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        let powers: Vec<Vec<f64>> = x
            .iter()
            .map(|&v| {
                let mut pw = vec![1.0; n + 1];
                for k in 1..=n {
                    pw[k] = pw[k - 1] * v;
                }
                pw
            })
            .collect();
        let mono: Vec<f64> = self
            .monomials
            .iter()
            .map(|a| a.iter().enumerate().map(|(i, &e)| powers[i][e as usize]).product())
            .collect();
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.dense.row(i).iter().zip(&mono).map(|(c, m)| c * m).sum();
        }
    }

    pub fn to_json(&self) -> HarmonicBasisJson {
        HarmonicBasisJson {
            p: self.p,
            n: self.n,
            monomials: self.monomials.clone(),
            members: (0..self.len()).map(|i| self.dense.row(i).iter().copied().collect()).collect(),
            raw: self.raw.iter().map(|q| q.to_json()).collect(),
            gram_factor: self.gram.factor.clone(),
            gram: self.gram.entries.iter().map(|row| row.iter().map(format_rational).collect()).collect(),
        }
    }
}

/// Serialized [`HarmonicBasis`]: member coefficients are dense over `monomials`,
/// the exact Gram matrix is `gram[i][j] * gram_factor` with rationals as `num/den`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarmonicBasisJson {
    pub p: usize,
    pub n: usize,
    pub monomials: Vec<MultiIndex>,
    pub members: Vec<Vec<f64>>,
    pub raw: Vec<PolynomialJson>,
    pub gram_factor: PiMultiple,
    pub gram: Vec<Vec<String>>,
}

fn check_unit(v: &[f64], what: &str) -> Result<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return domain(format!("{what} must be a unit vector (|{what}| = {norm})"));
    }
    Ok(())
}

/// `(Omega_{p-1} / N(p,n)) sum_j Y_{n,j}(xi) Y_{n,j}(eta)`, which equals `P_n(<xi, eta>)`.
pub fn addition_theorem_eval(basis: &HarmonicBasis, xi: &[f64], eta: &[f64]) -> Result<f64> {
    if xi.len() != basis.p || eta.len() != basis.p {
        return domain(format!("points must have dimension {}", basis.p));
    }
    check_unit(xi, "xi")?;
    check_unit(eta, "eta")?;
    let a = basis.eval_all(xi);
    let b = basis.eval_all(eta);
    let s: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    Ok(solid_angle(basis.p)?.to_f64() / basis.len() as f64 * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn homogeneous_counts() {
        for n in 0..10 {
            assert_eq!(count_homogeneous(1, n).unwrap(), BigUint::one());
        }
        assert_eq!(count_homogeneous(3, 2).unwrap(), BigUint::from(6u32));
        for p in 1..10 {
            assert_eq!(count_homogeneous(p, 0).unwrap(), BigUint::one());
        }
        assert!(count_homogeneous(0, 1).is_err());
        // no overflow at the top of the supported range
        assert_eq!(count_homogeneous(64, 64).unwrap(), binomial(127, 64));
    }

    #[test]
    fn harmonic_counts() {
        for n in 0..12 {
            assert_eq!(count_harmonic(3, n).unwrap(), BigUint::from(2 * n + 1));
            let two = if n == 0 { 1u32 } else { 2 };
            assert_eq!(count_harmonic(2, n).unwrap(), BigUint::from(two));
        }
        for p in 2..10 {
            assert_eq!(count_harmonic(p, 0).unwrap(), BigUint::one());
            for n in 1..10 {
                let split = count_homogeneous(p - 1, n).unwrap() + count_homogeneous(p - 1, n - 1).unwrap();
                assert_eq!(count_harmonic(p, n).unwrap(), split);
            }
        }
        assert!(count_harmonic(1, 3).is_err());
    }

    #[test]
    fn raw_basis_examples() {
        let b = harmonic_basis_raw(2, 2).unwrap();
        let parse = |s: &str| ExactPolynomial::parse(2, s).unwrap();
        assert_eq!(b, vec![parse("x1^2 - x2^2"), parse("x1*x2")]);
        let b = harmonic_basis_raw(3, 1).unwrap();
        assert_eq!(b.len(), 3);
        let vars: Vec<ExactPolynomial> = (0..3).map(|i| ExactPolynomial::variable(3, i)).collect();
        for v in &vars {
            assert!(b.contains(v));
        }
        let b = harmonic_basis_raw(3, 2).unwrap();
        assert_eq!(b.len(), 5);
        assert!(b.iter().all(|q| q.is_harmonic() && q.is_homogeneous() == Some(2)));
        assert_eq!(harmonic_basis_raw(4, 0).unwrap(), vec![ExactPolynomial::one(4)]);
    }

    #[test]
    fn gram_of_linear_harmonics() {
        let raw = harmonic_basis_raw(3, 1).unwrap();
        let g = exact_gram(3, 1, &raw).unwrap();
        // int x_i^2 over S^2 = 4 pi / 3
        for i in 0..3 {
            let v = PiMultiple::new(g.entries[i][i].clone(), 0).mul(&g.factor);
            assert_eq!(v, PiMultiple::new(ratio(4, 3), 2));
        }
        assert_eq!(g.rank(), 3);
    }

    #[test]
    fn gram_matches_monomial_integrals() {
        use crate::geometry::monomial_sphere_integral;
        for p in 2..5 {
            for n in 0..5 {
                let raw = harmonic_basis_raw(p, n).unwrap();
                let g = exact_gram(p, n, &raw).unwrap();
                for i in 0..raw.len() {
                    for j in 0..raw.len() {
                        let prod = raw[i].mul(&raw[j]);
                        let mut direct = PiMultiple::zero();
                        for (a, c) in prod.terms() {
                            let m = monomial_sphere_integral(a).unwrap().scale(c);
                            direct = direct.checked_add(&m).unwrap();
                        }
                        let ours = g.factor.scale(&g.entries[i][j]);
                        assert_eq!(ours, direct, "p = {p}, n = {n}, ({i}, {j})");
                    }
                }
            }
        }
    }

    #[test]
    fn exact_rank_detects_dependence() {
        let rows = vec![
            vec![ratio(1, 2), ratio(1, 3), ratio(1, 1)],
            vec![ratio(1, 1), ratio(2, 3), ratio(2, 1)],
            vec![ratio(0, 1), ratio(1, 7), ratio(5, 1)],
        ];
        assert_eq!(exact_rank(&rows), 2);
        assert_eq!(exact_rank(&[vec![ratio(0, 1)]]), 0);
    }

    #[test]
    fn orthonormal_examples() {
        use std::f64::consts::PI;
        let b = orthonormalize(3, 1).unwrap();
        // each member is sqrt(3 / 4pi) times a unit combination of the coordinates
        for m in b.members() {
            let s: f64 = (0..3).map(|i| {
                let mut a = vec![0; 3];
                a[i] = 1;
                m.coeff(&a).powi(2)
            }).sum();
            assert!((s - 3.0 / (4.0 * PI)).abs() < 1e-14);
        }
        let b = orthonormalize(2, 1).unwrap();
        for m in b.members() {
            let s = m.coeff(&[1, 0]).powi(2) + m.coeff(&[0, 1]).powi(2);
            assert!((s - 1.0 / PI).abs() < 1e-14);
        }
        for p in 2..7 {
            let b = orthonormalize(p, 0).unwrap();
            let c = b.members()[0].coeff(&vec![0; p]);
            assert!((c - 1.0 / solid_angle(p).unwrap().to_f64().sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_harmonic_examples() {
        assert_eq!(legendre_harmonic(4, 0).unwrap(), ExactPolynomial::one(4));
        assert_eq!(legendre_harmonic(5, 1).unwrap(), ExactPolynomial::variable(5, 0));
        let l2 = legendre_harmonic(3, 2).unwrap();
        let expected = ExactPolynomial::parse(3, "3/2*x1^2 - 1/2*x1^2 - 1/2*x2^2 - 1/2*x3^2").unwrap();
        assert_eq!(l2, expected);
        for p in 2..6 {
            for n in 0..7 {
                let l = legendre_harmonic(p, n).unwrap();
                assert!(l.is_harmonic());
                let mut e = vec![0.0; p];
                e[0] = 1.0;
                assert!((l.evaluate(&e).unwrap() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn addition_theorem_examples() {
        let xi = [0.6, 0.0, 0.8];
        let eta = [0.0, -1.0, 0.0];
        for n in 0..5 {
            let b = orthonormalize(3, n).unwrap();
            assert!((addition_theorem_eval(&b, &xi, &xi).unwrap() - 1.0).abs() < 1e-12);
        }
        let b1 = orthonormalize(3, 1).unwrap();
        let dot = 0.6 * 0.48 + 0.8 * 0.64;
        let eta2 = [0.48, 0.6, 0.64];
        assert!((addition_theorem_eval(&b1, &xi, &eta2).unwrap() - dot).abs() < 1e-14);
        let b0 = orthonormalize(3, 0).unwrap();
        assert!((addition_theorem_eval(&b0, &xi, &eta).unwrap() - 1.0).abs() < 1e-14);
        assert!(addition_theorem_eval(&b1, &[1.0, 1.0, 0.0], &eta).is_err());
    }

    #[test]
    fn json_export_shape() {
        let b = orthonormalize(3, 2).unwrap();
        let j = b.to_json();
        assert_eq!(j.members.len(), 5);
        assert_eq!(j.monomials.len(), 6);
        assert_eq!(j.gram.len(), 5);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("gram_factor"));
    }
}
