//! Acceptance suite: ten criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use ultrasphere::geometry::solid_angle;
use ultrasphere::harmonic::{count_harmonic, count_homogeneous};
use ultrasphere::scalar::{ratio, PiMultiple};
use ultrasphere::verify::{run_check, VerifyConfig};

const BUDGET: Duration = Duration::from_secs(120);

struct Outcome {
    pass: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { pass: true, detail: Vec::new() }
    }

    /// Runs a registered check at exactly the stated tolerance.
    fn check(&mut self, name: &str, tol: f64) {
        match run_check(name, &VerifyConfig { tol: Some(tol), ..Default::default() }) {
            Ok(r) => {
                self.pass &= r.pass;
                self.detail.push(format!("{name} {:.2e} <= {tol:.0e}", r.max_residual));
            }
            Err(e) => {
                self.pass = false;
                self.detail.push(format!("{name} errored: {e}"));
            }
        }
    }

    fn require(&mut self, ok: bool, what: &str) {
        self.pass &= ok;
        if !ok {
            self.detail.push(format!("{what} failed"));
        }
    }
}

/// Monomials of degree `n` in `p` variables, counted by walking every exponent tuple in `[0, n]^p`.
fn brute_force_monomials(p: usize, n: usize) -> usize {
    let mut count = 0;
    let mut e = vec![0usize; p];
    loop {
        if e.iter().sum::<usize>() == n {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == p {
                return count;
            }
            e[i] += 1;
            if e[i] <= n {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    o.require(solid_angle(2).unwrap() == PiMultiple::new(ratio(2, 1), 2), "Omega_1 = 2 pi");
    o.require(solid_angle(3).unwrap() == PiMultiple::new(ratio(4, 1), 2), "Omega_2 = 4 pi");
    o.require(solid_angle(1).unwrap() == PiMultiple::rational(ratio(2, 1)), "Omega_0 = 2");
    o.detail.push("exact 2pi, 4pi, 2".into());
    o.check("solid-angle", 1e-12);
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for p in 2..=5 {
        for n in 0..=6 {
            let k = count_homogeneous(p, n).unwrap();
            o.require(k == BigUint::from(brute_force_monomials(p, n)), &format!("K({p},{n}) brute force"));
            let split = brute_force_monomials(p - 1, n) + if n > 0 { brute_force_monomials(p - 1, n - 1) } else { 0 };
            o.require(count_harmonic(p, n).unwrap() == BigUint::from(split), &format!("N({p},{n})"));
        }
    }
    o.detail.push("K, N vs brute force".into());
    // raw basis size and exact Gram rank against N
    o.check("counting", 0.0);
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    o.check("harmonicity", 0.0);
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    o.check("legendre-routes", 1e-9);
    o.check("ode", 1e-10);
    o.check("orthogonality", 1e-10);
    o.check("norms", 1e-10);
    o.check("bound", 1e-12);
    o.check("classical", 0.0);
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    o.check("addition", 1e-8);
    o.check("addition-rotation", 1e-9);
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    o.check("funk-hecke", 1e-7);
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    o.check("generating-function", 1e-8);
    o.check("generating-function-t1", 1e-10);
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    o.check("bvp", 1e-6);
    o.check("harmonic-extension", 1e-9);
    o.check("green-boundary", 1e-12);
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    o.check("gram-schmidt", 1e-9);
    o.check("recurrence", 1e-9);
    o.check("bernstein", 0.0);
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    o.check("monomial-monte-carlo", 4.0);
    o.check("monomial-quadrature", 1e-10);
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("solid angles", criterion_1),
        ("counting K(p,n), N(p,n)", criterion_2),
        ("exact harmonicity", criterion_3),
        ("Legendre identity battery", criterion_4),
        ("addition theorem", criterion_5),
        ("Funk-Hecke", criterion_6),
        ("generating function", criterion_7),
        ("BVP cross-validation", criterion_8),
        ("orthogonal polynomial engine", criterion_9),
        ("monomial sphere integrals", criterion_10),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > BUDGET {
            outcome.pass = false;
            outcome.detail.push(format!("over the {}s budget", BUDGET.as_secs()));
        }
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} [{status}] {title}: {} ({:.2}s)",
            i + 1,
            outcome.detail.join("; "),
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
