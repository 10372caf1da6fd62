use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ultrasphere::geometry::{
    cartesian_to_spherical, monomial_sphere_integral, spherical_to_cartesian, sphere_quadrature, zonal_integral,
    SphericalPoint,
};
use ultrasphere::harmonic::harmonic_basis_raw;
use ultrasphere::legendre::legendre_eval_all;
use ultrasphere::orthopoly::{bernstein, bernstein_eval, inner_product, Integrand, Poly1D, Weight};
use ultrasphere::polyalg::{homogeneous_multi_indices, ExactPolynomial, RotationMatrix};
use ultrasphere::scalar::{ratio, Rational};

fn homogeneous_poly(p: usize, n: u32, coeffs: &[i64]) -> ExactPolynomial {
    let mut q = ExactPolynomial::zero(p);
    for (alpha, c) in homogeneous_multi_indices(p, n).into_iter().zip(coeffs.iter().cycle()) {
        q.add_term(alpha, ratio(*c, 1 + c.unsigned_abs() as i64 % 5));
    }
    q
}

fn any_poly(p: usize, terms: &[(Vec<u32>, i64)]) -> ExactPolynomial {
    let mut q = ExactPolynomial::zero(p);
    for (a, c) in terms {
        let alpha: Vec<u32> = (0..p).map(|i| a.get(i).copied().unwrap_or(0)).collect();
        q.add_term(alpha, ratio(*c, 3));
    }
    q
}

fn angles(p: usize) -> impl Strategy<Value = (f64, f64, Vec<f64>)> {
    (1e-3..10.0f64, 0.0..2.0 * PI, prop::collection::vec(1e-3..PI - 1e-3, p - 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spherical_round_trip((r, phi, thetas) in (2usize..=8).prop_flat_map(angles)) {
        let pt = SphericalPoint::new(r, phi, thetas).unwrap();
        let back = cartesian_to_spherical(&spherical_to_cartesian(&pt)).unwrap();
        prop_assert!((back.r - pt.r).abs() <= 1e-12 * pt.r.max(1.0));
        let dphi = (back.phi - pt.phi).rem_euclid(2.0 * PI);
        prop_assert!(dphi.min(2.0 * PI - dphi) <= 1e-12);
        for (a, b) in back.thetas.iter().zip(&pt.thetas) {
            prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn euler_identity(p in 1usize..=4, n in 0u32..=8, coeffs in prop::collection::vec(-9i64..=9, 1..12)) {
        let q = homogeneous_poly(p, n, &coeffs);
        prop_assert_eq!(q.euler_apply(), q.scale(&Rational::from_integer(n.into())));
    }

    #[test]
    fn laplacian_lowers_degree_by_two(
        p in 1usize..=4,
        terms in prop::collection::vec((prop::collection::vec(0u32..5, 4), -5i64..=5), 0..8),
    ) {
        let q = any_poly(p, &terms);
        let l = q.laplacian();
        if !l.is_zero() {
            prop_assert_eq!(l.degree().unwrap() + 2, q.degree().unwrap());
        }
    }

    #[test]
    fn exact_arithmetic_is_exact(
        terms_a in prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..=5), 0..6),
        terms_b in prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..=5), 0..6),
    ) {
        let a = any_poly(3, &terms_a);
        let b = any_poly(3, &terms_b);
        // the Laplacian is linear and Leibniz holds exactly
        prop_assert_eq!(a.add(&b).laplacian(), a.laplacian().add(&b.laplacian()));
        let mut lhs = a.mul(&b).laplacian();
        lhs = lhs.sub(&a.laplacian().mul(&b)).sub(&a.mul(&b.laplacian()));
        let mut cross = ExactPolynomial::zero(3);
        for i in 0..3 {
            cross = cross.add(&a.partial(i).mul(&b.partial(i)));
        }
        prop_assert_eq!(lhs, cross.scale(&ratio(2, 1)));
    }

    #[test]
    fn json_and_text_round_trip(terms in prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..=5), 0..6)) {
        let q = any_poly(3, &terms);
        prop_assert_eq!(ExactPolynomial::from_json(&q.to_json()).unwrap(), q.clone());
        prop_assert_eq!(ExactPolynomial::parse(3, &q.to_string()).unwrap(), q);
    }

    #[test]
    fn rotated_harmonics_stay_harmonic(p in 2usize..=5, n in 0usize..=5, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let raw = harmonic_basis_raw(p, n).unwrap();
        let q = &raw[pick.index(raw.len())];
        let r = RotationMatrix::random(p, &mut ChaCha8Rng::seed_from_u64(seed));
        let rotated = q.rotate(&r).unwrap();
        prop_assert!(rotated.laplacian().max_abs_coeff() <= 1e-9);
    }

    #[test]
    fn cauchy_schwarz_and_triangle(
        a in prop::collection::vec(-3.0..3.0f64, 1..7),
        b in prop::collection::vec(-3.0..3.0f64, 1..7),
        halves in (-1i64..=5, -1i64..=5),
    ) {
        let w = Weight::from_halves(halves.0, halves.1).unwrap();
        let (pa, pb) = (Poly1D::new(a), Poly1D::new(b));
        let ip = |x: &Poly1D<f64>, y: &Poly1D<f64>| inner_product(Integrand::Poly(x), Integrand::Poly(y), &w).unwrap();
        let (na, nb) = (ip(&pa, &pa).sqrt(), ip(&pb, &pb).sqrt());
        let slack = 1e-12 * (1.0 + na * nb);
        prop_assert!(ip(&pa, &pb).abs() <= na * nb + slack);
        let sum = pa.add(&pb);
        prop_assert!(ip(&sum, &sum).sqrt() <= na + nb + 1e-12 * (1.0 + na + nb));
    }

    #[test]
    fn quadrature_matches_monomial_integrals(p in 2usize..=6, raw in prop::collection::vec(0u32..=8, 6)) {
        let mut alpha: Vec<u32> = raw[..p].to_vec();
        while alpha.iter().sum::<u32>() > 8 {
            let i = alpha.iter().position(|&e| e > 0).unwrap();
            alpha[i] -= 1;
        }
        let exact = monomial_sphere_integral(&alpha).unwrap().to_f64();
        let rule = sphere_quadrature(p, alpha.iter().sum::<u32>() as usize).unwrap();
        let q = rule.integrate(|x| x.iter().zip(&alpha).map(|(v, &e)| v.powi(e as i32)).product());
        if exact == 0.0 {
            prop_assert!(q.abs() <= 1e-12);
        } else {
            prop_assert!((q - exact).abs() <= 1e-10 * exact.abs());
        }
    }

    #[test]
    fn zonal_integral_matches_sphere_rule(p in 2usize..=6, coeffs in prop::collection::vec(-2.0..2.0f64, 1..=11), seed in any::<u64>()) {
        let f = Poly1D::new(coeffs);
        let deg = f.degree().unwrap_or(0);
        let eta = {
            let r = RotationMatrix::random(p, &mut ChaCha8Rng::seed_from_u64(seed));
            let mut e = vec![0.0; p];
            e[0] = 1.0;
            r.apply(&e)
        };
        let rule = sphere_quadrature(p, deg).unwrap();
        let lhs = rule.integrate(|x| f.eval(x.iter().zip(&eta).map(|(a, b)| a * b).sum()));
        let rhs = zonal_integral(p, |t| f.eval(t)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn legendre_parity_and_bound(p in 2usize..=9, n in 0usize..=15, t in -1.0..=1.0f64) {
        let a = legendre_eval_all(p, n, t)[n];
        let b = legendre_eval_all(p, n, -t)[n];
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((a - sign * b).abs() <= 1e-13);
        prop_assert!(a.abs() <= 1.0 + 1e-12);
    }
}

#[test]
fn bernstein_converges_for_a_kink() {
    let f = |x: f64| (x - 0.5).abs();
    let errs: Vec<f64> = [4, 16, 64, 256]
        .iter()
        .map(|&n| {
            (0..1001)
                .map(|i| {
                    let x = i as f64 / 1000.0;
                    (bernstein_eval(f, n, x).unwrap() - f(x)).abs()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] <= w[0], "{errs:?}");
    }
    assert!(errs[3] < errs[0]);
}

#[test]
fn bernstein_forms_agree() {
    let f = |x: f64| (3.0 * x).sin();
    for n in [1, 5, 16] {
        let b = bernstein(|x: &f64| f(*x), n).unwrap();
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert!((b.eval(x) - bernstein_eval(f, n, x).unwrap()).abs() < 1e-9);
        }
    }
}
