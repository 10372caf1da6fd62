//! Command-line front end. [`run`] parses arguments, writes results and
//! returns the process exit code: 0 on success, 2 on usage errors, 1 when a
//! verification fails or a computation errors out.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bvp::{solve, ProblemSpec};
use crate::error::{Error, Result};
use crate::geometry::sphere_quadrature;
use crate::harmonic::{count_harmonic, count_homogeneous, orthonormalize};
use crate::legendre::{funk_hecke_coeff, generating_function_closed, legendre_coeffs, legendre_eval, LegendreTable};
use crate::orthopoly::{gram_schmidt, recurrence_coeffs, Poly1D, Weight};
use crate::polyalg::ExactPolynomial;
use crate::scalar::{format_f64, format_rational, parse_rational, Rational};
use crate::verify::{check_summaries, verify_suite, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "ultrasphere", version, about = "Spherical harmonics and Legendre polynomials in p dimensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of homogeneous (K) and harmonic (N) polynomials of degree n
    Count {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Legendre polynomials P_{n,p}
    Legendre {
        #[arg(value_enum)]
        mode: Option<LegendreMode>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Point in [-1, 1] for `eval`
        #[arg(long, allow_negative_numbers = true)]
        eval: Option<f64>,
        /// Grid size for `table`
        #[arg(long, default_value_t = 21)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Orthonormal spherical harmonic basis of degree n (JSON)
    Basis {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Product quadrature rule on the sphere
    Quadrature {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Funk-Hecke multipliers lambda_0..lambda_n of a zonal kernel
    FunkHecke {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// `exp`, `poisson:R` with 0 <= R < 1, or a polynomial in `t` such as `1/2*t^2 - t`
        #[arg(long, default_value = "exp")]
        kernel: String,
        #[command(flatten)]
        output: Output,
    },
    /// Orthogonal polynomials for the weight (1-x)^alpha (1+x)^beta
    Orthopoly {
        #[arg(value_enum, default_value_t = OrthopolyMode::Coeffs)]
        mode: OrthopolyMode,
        /// Rational exponent such as `-1/2`
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Solve a Dirichlet problem given as a JSON problem spec
    Solve {
        /// Problem spec file
        problem: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Run identity checks and report residuals (JSON)
    Verify {
        /// Check names; `--list` shows them
        names: Vec<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LegendreMode {
    Coeffs,
    Eval,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrthopolyMode {
    Coeffs,
    Recurrence,
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().ansi().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return 2;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
    };
    match execute(cli.command, stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Domain(_) | Error::Config(_) | Error::Unsupported(_) => 2,
                _ => 1,
            }
        }
    }
}

fn sink<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(stdout),
    })
}

fn write_json(w: &mut dyn Write, v: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, v)?;
    writeln!(w)?;
    Ok(())
}

fn csv_writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(w)
}

/// Runs one command; `Ok(false)` signals a failed verification.
fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Count { p, n, output } => {
            let k = count_homogeneous(p, n)?;
            let big_n = count_harmonic(p, n)?;
            let mut w = sink(&output.out, stdout)?;
            match output.format {
                None => writeln!(w, "K={k}\nN={big_n}")?,
                Some(Format::Csv) => {
                    let mut c = csv_writer(&mut *w);
                    c.write_record(["p", "n", "K", "N"])?;
                    c.write_record([p.to_string(), n.to_string(), k.to_string(), big_n.to_string()])?;
                    c.flush()?;
                }
                Some(Format::Json) => write_json(&mut *w, &json!({"p": p, "n": n, "K": k.to_string(), "N": big_n.to_string()}))?,
            }
            w.flush()?;
        }
        Command::Legendre { mode, p, n, n_max, eval, samples, output } => {
            let mode = mode.unwrap_or(if eval.is_some() { LegendreMode::Eval } else { LegendreMode::Coeffs });
            let mut w = sink(&output.out, stdout)?;
            match mode {
                LegendreMode::Coeffs => {
                    let n = n.ok_or_else(|| Error::Config("`legendre coeffs` needs --n".into()))?;
                    legendre_coeffs_out(&mut *w, p, n, output.format)?;
                }
                LegendreMode::Eval => {
                    let n = n.ok_or_else(|| Error::Config("`legendre eval` needs --n".into()))?;
                    let t = eval.ok_or_else(|| Error::Config("`legendre eval` needs --eval T".into()))?;
                    if !(-1.0..=1.0).contains(&t) {
                        return Err(Error::Domain(format!("--eval must lie in [-1, 1], got {t}")));
                    }
                    let v = legendre_eval(p, n, t)?;
                    match output.format {
                        None => writeln!(w, "{}", format_f64(v))?,
                        Some(Format::Csv) => {
                            let mut c = csv_writer(&mut *w);
                            c.write_record(["p", "n", "t", "value"])?;
                            c.write_record([p.to_string(), n.to_string(), format_f64(t), format_f64(v)])?;
                            c.flush()?;
                        }
                        Some(Format::Json) => write_json(&mut *w, &json!({"p": p, "n": n, "t": t, "value": v}))?,
                    }
                }
                LegendreMode::Table => {
                    let top = n_max.or(n).ok_or_else(|| Error::Config("`legendre table` needs --n-max".into()))?;
                    legendre_table_out(&mut *w, p, top, samples, output.format)?;
                }
            }
            w.flush()?;
        }
        Command::Basis { p, n, output } => {
            let b = orthonormalize(p, n)?;
            let mut w = sink(&output.out, stdout)?;
            match output.format {
                Some(Format::Csv) => {
                    let j = b.to_json();
                    let mut c = csv_writer(&mut *w);
                    let mut header = vec!["member".to_string()];
                    header.extend((1..=p).map(|i| format!("e{i}")));
                    header.push("coeff".into());
                    c.write_record(&header)?;
                    for (i, row) in j.members.iter().enumerate() {
                        for (alpha, v) in j.monomials.iter().zip(row) {
                            if *v == 0.0 {
                                continue;
                            }
                            let mut rec = vec![i.to_string()];
                            rec.extend(alpha.iter().map(|e| e.to_string()));
                            rec.push(format_f64(*v));
                            c.write_record(&rec)?;
                        }
                    }
                    c.flush()?;
                }
                _ => write_json(&mut *w, &b.to_json())?,
            }
            w.flush()?;
        }
        Command::Quadrature { p, degree, output } => {
            let rule = sphere_quadrature(p, degree)?;
            let mut w = sink(&output.out, stdout)?;
            match output.format {
                Some(Format::Json) => write_json(&mut *w, &rule)?,
                _ => rule.write_csv(&mut *w)?,
            }
            w.flush()?;
        }
        Command::FunkHecke { p, n, kernel, output } => {
            let f = parse_kernel(&kernel, p)?;
            let lambdas: Vec<f64> = (0..=n).map(|k| funk_hecke_coeff(p, k, &*f)).collect::<Result<_>>()?;
            let mut w = sink(&output.out, stdout)?;
            match output.format {
                Some(Format::Json) => write_json(&mut *w, &json!({"p": p, "kernel": kernel, "lambda": lambdas}))?,
                _ => {
                    let mut c = csv_writer(&mut *w);
                    c.write_record(["n", "lambda"])?;
                    for (k, l) in lambdas.iter().enumerate() {
                        c.write_record([k.to_string(), format_f64(*l)])?;
                    }
                    c.flush()?;
                }
            }
            w.flush()?;
        }
        Command::Orthopoly { mode, alpha, beta, n_max, output } => {
            let parse = |s: &str| parse_rational(s).ok_or_else(|| Error::Config(format!("bad rational exponent {s:?}")));
            let weight = Weight::new(parse(&alpha)?, parse(&beta)?)?;
            let family = gram_schmidt(&weight, n_max);
            let mut w = sink(&output.out, stdout)?;
            match mode {
                OrthopolyMode::Coeffs => poly_table_out(&mut *w, &family, output.format)?,
                OrthopolyMode::Recurrence => {
                    if n_max < 1 {
                        return Err(Error::Config("recurrence coefficients need --n-max >= 1".into()));
                    }
                    let rc = recurrence_coeffs(&family, &weight)?;
                    match output.format {
                        Some(Format::Csv) => {
                            let mut c = csv_writer(&mut *w);
                            c.write_record(["n", "A", "B", "C"])?;
                            for k in 0..rc.a.len() {
                                c.write_record([k.to_string(), format_f64(rc.a[k]), format_f64(rc.b[k]), format_f64(rc.c[k])])?;
                            }
                            c.flush()?;
                        }
                        _ => write_json(&mut *w, &json!({"alpha": alpha, "beta": beta, "A": rc.a, "B": rc.b, "C": rc.c}))?,
                    }
                }
            }
            w.flush()?;
        }
        Command::Solve { problem, output } => {
            let text = std::fs::read_to_string(&problem)?;
            let spec: ProblemSpec = serde_json::from_str(&text).map_err(|e| Error::Config(format!("bad problem spec: {e}")))?;
            let (_, rows) = solve(&spec)?;
            let mut w = sink(&output.out, stdout)?;
            let opt = |v: Option<f64>| v.map(format_f64).unwrap_or_default();
            match output.format {
                Some(Format::Json) => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|r| json!({"point": r.point, "series_value": r.series_value, "poisson_value": r.poisson_value, "abs_diff": r.abs_diff}))
                        .collect();
                    write_json(&mut *w, &items)?;
                }
                _ => {
                    let mut c = csv_writer(&mut *w);
                    let mut header: Vec<String> = (1..=spec.p).map(|i| format!("x{i}")).collect();
                    header.extend(["series_value", "poisson_value", "abs_diff"].map(String::from));
                    c.write_record(&header)?;
                    for r in &rows {
                        let mut rec: Vec<String> = r.point.iter().map(|v| format_f64(*v)).collect();
                        rec.push(format_f64(r.series_value));
                        rec.push(opt(r.poisson_value));
                        rec.push(opt(r.abs_diff));
                        c.write_record(&rec)?;
                    }
                    c.flush()?;
                }
            }
            w.flush()?;
        }
        Command::Verify { names, list, p, n, samples, seed, tol, output } => {
            let mut w = sink(&output.out, stdout)?;
            if list {
                for (name, summary) in check_summaries() {
                    writeln!(w, "{name:24} {summary}")?;
                }
                w.flush()?;
                return Ok(true);
            }
            if let Some(t) = tol {
                if !(t > 0.0) {
                    return Err(Error::Config(format!("--tol must be positive, got {t}")));
                }
            }
            let cfg = VerifyConfig { p, n, samples, seed, tol };
            let reports = verify_suite(&names, &cfg)?;
            match output.format {
                Some(Format::Csv) => {
                    let mut c = csv_writer(&mut *w);
                    c.write_record(["check", "p_lo", "p_hi", "n_lo", "n_hi", "max_residual", "tolerance", "pass"])?;
                    let range = |r: Option<[usize; 2]>, i: usize| r.map(|v| v[i].to_string()).unwrap_or_default();
                    for r in &reports {
                        c.write_record([
                            r.check.clone(),
                            range(r.p_range, 0),
                            range(r.p_range, 1),
                            range(r.n_range, 0),
                            range(r.n_range, 1),
                            format_f64(r.max_residual),
                            format_f64(r.tolerance),
                            r.pass.to_string(),
                        ])?;
                    }
                    c.flush()?;
                }
                _ => write_json(&mut *w, &reports)?,
            }
            w.flush()?;
            return Ok(reports.iter().all(|r| r.pass));
        }
    }
    Ok(true)
}

fn legendre_coeffs_out(w: &mut dyn Write, p: usize, n: usize, format: Option<Format>) -> Result<()> {
    let q = legendre_coeffs(p, n)?;
    let coeffs: Vec<String> = (0..=n).map(|k| format_rational(&q.coeff(k))).collect();
    match format {
        Some(Format::Json) => write_json(w, &json!({"p": p, "n": n, "coeffs": coeffs})),
        _ => {
            let mut c = csv_writer(w);
            c.write_record(["k", "coeff"])?;
            for (k, v) in coeffs.iter().enumerate() {
                c.write_record([k.to_string(), v.clone()])?;
            }
            c.flush()?;
            Ok(())
        }
    }
}

fn legendre_table_out(w: &mut dyn Write, p: usize, n_max: usize, samples: usize, format: Option<Format>) -> Result<()> {
    if samples < 2 {
        return Err(Error::Config("--samples must be at least 2 for a table".into()));
    }
    let table = LegendreTable::new(p, n_max)?;
    let ts: Vec<f64> = (0..samples).map(|i| -1.0 + 2.0 * i as f64 / (samples - 1) as f64).collect();
    match format {
        Some(Format::Json) => {
            let coeffs: Vec<Vec<String>> =
                table.iter().map(|q| (0..=q.degree().unwrap_or(0)).map(|k| format_rational(&q.coeff(k))).collect()).collect();
            write_json(w, &json!({"p": p, "n_max": n_max, "coeffs": coeffs}))
        }
        _ => {
            let mut c = csv_writer(w);
            let mut header = vec!["t".to_string()];
            header.extend((0..=n_max).map(|n| format!("P{n}")));
            c.write_record(&header)?;
            for t in ts {
                let mut rec = vec![format_f64(t)];
                rec.extend((0..=n_max).map(|n| format_f64(table.eval(n, t).unwrap_or(f64::NAN))));
                c.write_record(&rec)?;
            }
            c.flush()?;
            Ok(())
        }
    }
}

fn poly_table_out(w: &mut dyn Write, family: &[Poly1D<Rational>], format: Option<Format>) -> Result<()> {
    let rows: Vec<Vec<String>> =
        family.iter().map(|q| (0..=q.degree().unwrap_or(0)).map(|k| format_rational(&q.coeff(k))).collect()).collect();
    match format {
        Some(Format::Json) => write_json(w, &json!({"monic": rows})),
        _ => {
            let mut c = csv_writer(w);
            c.write_record(["n", "k", "coeff"])?;
            for (n, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    c.write_record([n.to_string(), k.to_string(), v.clone()])?;
                }
            }
            c.flush()?;
            Ok(())
        }
    }
}

type Kernel = Box<dyn Fn(f64) -> f64>;

/// `exp`, `poisson:R` or a polynomial in `t`.
fn parse_kernel(spec: &str, p: usize) -> Result<Kernel> {
    if spec == "exp" {
        return Ok(Box::new(f64::exp));
    }
    if let Some(r) = spec.strip_prefix("poisson:") {
        let r: f64 = r.parse().map_err(|_| Error::Config(format!("bad Poisson radius in {spec:?}")))?;
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain(format!("Poisson kernel radius must lie in [0, 1), got {r}")));
        }
        return Ok(Box::new(move |t| generating_function_closed(p, t, r)));
    }
    if spec.contains('x') {
        return Err(Error::Config(format!("kernel polynomials are written in `t`, got {spec:?}")));
    }
    let q = ExactPolynomial::parse(1, &spec.replace('t', "x1")).map_err(|e| Error::Config(e.to_string()))?;
    let q = q.to_real();
    Ok(Box::new(move |t| q.evaluate(&[t]).unwrap_or(f64::NAN)))
}

/// Entry point used by the binary.
pub fn main_with_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
