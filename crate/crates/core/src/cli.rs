//! Command-line front end: evaluation, associator and table export, and
//! the verification suites.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
//! 3 domain error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ncseries::{ComplexSeries, MAX_ORDER};
use crate::numerics::{
    format_complex, gif_residual, li, parse_complex, zeta, EvalContext, ZetaTable,
};
use crate::report::Report;
use crate::rhkz::{
    associator_from_table, build_l0, connection_defect, ode_transport, rh_solve_multiplicative,
    SAMPLE_POINTS,
};
use crate::words::{laws, reg0, reg10, Word, WordPoly};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

pub const MIN_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "mzvkz",
    version,
    about = "Multiple zeta values, polylogarithms and the KZ associator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single quantity.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Dump the coefficients of the Drinfel'd associator.
    Associator {
        #[arg(long, default_value_t = 4)]
        weight: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        config: VerifyArgs,
    },
    /// Export the table of ζ(w) for convergent words.
    Table {
        #[arg(long, default_value_t = 6)]
        weight: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum EvalKind {
    /// Li(w; z).
    Li {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// ζ(w) for a convergent word.
    Zeta { word: String },
    /// reg⁰(w).
    Reg0 { word: String },
    /// reg¹⁰(w).
    Reg10 { word: String },
    /// u ⧢ v.
    Shuffle { u: String, v: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gif,
    Duality,
    Connection,
    Ode,
    Rh,
    Algebra,
}

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    /// Maximal weight; each suite has its own default.
    #[arg(long)]
    pub weight: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated real sample points.
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Table perturbation `WORD:DELTA`, e.g. `(2,1):1e-3`.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<String>,
    /// RK4 steps for the ODE suite.
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Pole(_) => EXIT_DOMAIN,
        Error::Parse(_)
        | Error::Precondition(_)
        | Error::MissingZeta(_)
        | Error::OrderMismatch(..) => EXIT_USAGE,
        Error::ZeroConstantTerm | Error::MaxTermsExceeded(_) | Error::Quadrature(_) => EXIT_FAIL,
    }
}

/// Parses and runs a command line, including the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((passed, stdout)) => Outcome {
            code: if passed { EXIT_PASS } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn check_weight(n: usize) -> Result<usize> {
    if n > MAX_ORDER {
        return Err(Error::Precondition(format!(
            "weight {n} exceeds {MAX_ORDER}"
        )));
    }
    Ok(n)
}

fn parse_word(s: &str) -> Result<Word> {
    s.parse()
}

fn execute(cli: &Cli) -> Result<(bool, String)> {
    let ctx = EvalContext::default();
    match &cli.command {
        Command::Eval { kind } => eval(kind, cli.format, &ctx).map(|s| (true, s)),
        Command::Associator { weight } => {
            associator(check_weight(*weight)?, cli.format, &ctx).map(|s| (true, s))
        }
        Command::Table { weight } => {
            table(check_weight(*weight)?, cli.format, &ctx).map(|s| (true, s))
        }
        Command::Verify { suite, config } => {
            let report = verify(*suite, config, &ctx)?;
            Ok((report.passed, render_report(&report, cli.format)))
        }
    }
}

fn eval(kind: &EvalKind, format: Format, ctx: &EvalContext) -> Result<String> {
    match kind {
        EvalKind::Li { word, z } => {
            let w = parse_word(word)?;
            let z = parse_complex(z)?;
            let v = li(&w, z, ctx)?;
            Ok(match format {
                Format::Json => json!({"word": w.to_bit_string(), "z": format_complex(z), "re": v.re, "im": v.im}).to_string() + "\n",
                Format::Csv => format!("word,z,re,im\n{},{},{},{}\n", w.to_bit_string(), format_complex(z), v.re, v.im),
                Format::Text => format!("{}\n", format_complex(v)),
            })
        }
        EvalKind::Zeta { word } => {
            let w = parse_word(word)?;
            let (v, err) = zeta(&w, ctx)?;
            Ok(match format {
                Format::Json => {
                    json!({"word": w.to_bit_string(), "value": v, "err": err}).to_string() + "\n"
                }
                Format::Csv => format!("word,value,err\n{},{v},{err}\n", w.to_bit_string()),
                Format::Text => format!("{v} ± {err:.1e}\n"),
            })
        }
        EvalKind::Reg0 { word } => Ok(render_poly(
            &reg0(&WordPoly::from(parse_word(word)?)),
            format,
        )),
        EvalKind::Reg10 { word } => Ok(render_poly(
            &reg10(&WordPoly::from(parse_word(word)?)),
            format,
        )),
        EvalKind::Shuffle { u, v } => {
            let p = WordPoly::from(parse_word(u)?).shuffle(&WordPoly::from(parse_word(v)?));
            Ok(render_poly(&p, format))
        }
    }
}

fn render_poly(p: &WordPoly, format: Format) -> String {
    match format {
        Format::Json => p.to_json().to_string() + "\n",
        Format::Csv => {
            let mut out = String::from("word,coefficient\n");
            for (w, c) in p.iter() {
                let _ = writeln!(out, "{},{c}", w.to_bit_string());
            }
            out
        }
        Format::Text => format!("{p}\n"),
    }
}

fn associator(n: usize, format: Format, ctx: &EvalContext) -> Result<String> {
    let table = ctx.zeta_table(n)?;
    let phi = associator_from_table(n, &table)?;
    let rows: Vec<(Word, f64, f64)> = phi
        .series
        .iter()
        .map(|(w, c)| (w, c.re, phi.error(&w)))
        .collect();
    Ok(match format {
        Format::Json => {
            let mut v = phi.series.to_json();
            v["errors"] = json!(rows
                .iter()
                .filter(|r| r.1 != 0.0)
                .map(|(w, _, e)| json!({"word": w.to_bit_string(), "err": e}))
                .collect::<Vec<_>>());
            v.to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("word,value,err\n");
            for (w, v, e) in rows {
                let _ = writeln!(out, "{},{v},{e}", w.to_bit_string());
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (w, v, e) in rows {
                let _ = writeln!(out, "{w}\t{v}\t± {e:.1e}");
            }
            out
        }
    })
}

fn table(n: usize, format: Format, ctx: &EvalContext) -> Result<String> {
    let t = ctx.zeta_table(n)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&t.to_json()).expect("json") + "\n",
        Format::Csv => {
            let mut out = String::from("word,mzv_indices,value,err\n");
            for (w, e) in t.iter() {
                let idx: Vec<String> = w
                    .indices()
                    .unwrap_or_default()
                    .iter()
                    .map(u32::to_string)
                    .collect();
                let _ = writeln!(
                    out,
                    "{},\"({})\",{},{}",
                    w.to_bit_string(),
                    idx.join(","),
                    e.value,
                    e.err
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (w, e) in t.iter() {
                let idx: Vec<String> = w
                    .indices()
                    .unwrap_or_default()
                    .iter()
                    .map(u32::to_string)
                    .collect();
                let _ = writeln!(out, "ζ({}) = {} ± {:.1e}", idx.join(","), e.value, e.err);
            }
            out
        }
    })
}

fn parse_points(s: &Option<String>, default: &[f64]) -> Result<Vec<f64>> {
    let Some(s) = s else {
        return Ok(default.to_vec());
    };
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad sample point {t:?}")))
        })
        .collect()
}

/// `WORD:DELTA`, split at the last colon.
pub fn parse_perturbation(s: &str) -> Result<(Word, f64)> {
    let (w, d) = s
        .rsplit_once(':')
        .ok_or_else(|| Error::Parse(format!("expected WORD:DELTA, got {s:?}")))?;
    let w = parse_word(w.trim().trim_matches('"'))?;
    let d = d
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad perturbation size {d:?}")))?;
    Ok((w, d))
}

fn zeta_table(n: usize, perturb: &Option<String>, ctx: &EvalContext) -> Result<ZetaTable> {
    let t = ctx.zeta_table(n)?;
    match perturb {
        None => Ok(t),
        Some(p) => {
            let (w, d) = parse_perturbation(p)?;
            t.perturbed(&w, d)
        }
    }
}

/// Runs one suite with its defaults filled in.
pub fn verify(suite: Suite, cfg: &VerifyArgs, ctx: &EvalContext) -> Result<Report> {
    let (default_n, default_tol) = match suite {
        Suite::Gif => (5, 1e-9),
        Suite::Duality => (6, 1e-9),
        Suite::Connection | Suite::Ode => (4, 1e-8),
        Suite::Rh => (4, 1e-7),
        Suite::Algebra => (8, 0.0),
    };
    let n = check_weight(cfg.weight.unwrap_or(default_n))?;
    let tol = match cfg.tol {
        Some(t) if !(t >= MIN_TOL) => {
            return Err(Error::Precondition(format!(
                "tolerance {t} is below {MIN_TOL}"
            )))
        }
        Some(t) => t,
        None => default_tol,
    };
    match suite {
        Suite::Gif => {
            let zs = parse_points(&cfg.z, &SAMPLE_POINTS)?;
            let mut rep = Report::new("gif", n, zs.clone(), tol);
            for w in Word::all_up_to(n) {
                for &z in &zs {
                    rep.push(w, Some(z), gif_residual(&w, Complex64::new(z, 0.0), ctx)?);
                }
            }
            Ok(rep)
        }
        Suite::Duality => duality_suite(n, tol, cfg, ctx),
        Suite::Connection => {
            let zs = parse_points(&cfg.z, &SAMPLE_POINTS)?;
            let mut rep = Report::new("connection", n, zs.clone(), tol);
            let defects: Vec<ComplexSeries> = zs
                .iter()
                .map(|&z| connection_defect(Complex64::new(z, 0.0), n, ctx))
                .collect::<Result<_>>()?;
            for (d, &z) in defects.iter().zip(&zs) {
                for (w, c) in d.iter() {
                    rep.push(w, Some(z), c.norm());
                }
            }
            for i in 0..defects.len() {
                for j in i + 1..defects.len() {
                    rep.push(
                        format!("constancy {} vs {}", zs[i], zs[j]),
                        None,
                        defects[i].max_diff(&defects[j])?,
                    );
                }
            }
            Ok(rep)
        }
        Suite::Ode => {
            let zs = parse_points(&cfg.z, &[0.3, 0.7])?;
            let (z0, z1) = (zs[0], *zs.last().unwrap());
            let mut rep = Report::new("ode", n, vec![z0, z1], tol);
            let g = ode_transport(
                Complex64::new(z0, 0.0),
                Complex64::new(z1, 0.0),
                cfg.steps,
                n,
                ctx,
            )?;
            let target = build_l0(Complex64::new(z1, 0.0), n, ctx)?;
            for (w, c) in g.try_sub(&target)?.iter() {
                rep.push(w, Some(z1), c.norm());
            }
            Ok(rep)
        }
        Suite::Rh => {
            let zs = parse_points(&cfg.z, &SAMPLE_POINTS)?;
            let table = zeta_table(n, &cfg.perturb, ctx)?;
            let sol = rh_solve_multiplicative(n, &table)?;
            let mut rep = sol.additive.report(&zs, tol)?;
            for &z in &zs {
                rep.push(
                    "(F̂1)⁻¹F̂0 − (1−z)^(−X1) Φ z^(−X0)",
                    Some(z),
                    sol.rh_residual(z)?,
                );
            }
            Ok(rep)
        }
        Suite::Algebra => {
            let mut rep = Report::new("algebra", n, Vec::new(), 0.0);
            for law in laws::check_all(n) {
                let label = match &law.first_failure {
                    Some(f) => format!("{} ({} cases, first failure {f})", law.name, law.cases),
                    None => format!("{} ({} cases)", law.name, law.cases),
                };
                rep.push(label, None, law.failures as f64);
            }
            Ok(rep)
        }
    }
}

fn duality_suite(n: usize, tol: f64, cfg: &VerifyArgs, ctx: &EvalContext) -> Result<Report> {
    let table = zeta_table(n, &cfg.perturb, ctx)?;
    let mut rep = Report::new("duality", n, Vec::new(), tol);
    for w in Word::all_up_to(n) {
        let (a, _) = table.regularized(&WordPoly::from(w))?;
        let (b, _) = table.regularized(&WordPoly::from(w.tau()))?;
        rep.push(w, None, (a - b).abs());
    }
    let phi = associator_from_table(n, &table)?.series;
    let prod = phi.nc_mul(&phi.subst_neg_swap())?;
    rep.push(
        "Φ(X0,X1)Φ(−X1,−X0) − 1",
        None,
        prod.max_diff(&ComplexSeries::one(n))?,
    );
    // Random sample of the shuffle-homomorphism property of ζ∘reg¹⁰.
    let half = n / 2;
    if half > 0 {
        let mut rng = StdRng::seed_from_u64(cfg.seed);
        let pool: Vec<Word> = Word::all_up_to(half).collect();
        for _ in 0..32 {
            let u = pool[rng.gen_range(0..pool.len())];
            let v = pool[rng.gen_range(0..pool.len())];
            let (uv, _) = table.regularized(&WordPoly::from(u).shuffle(&WordPoly::from(v)))?;
            let (a, _) = table.regularized(&WordPoly::from(u))?;
            let (b, _) = table.regularized(&WordPoly::from(v))?;
            rep.push(format!("ζ∘reg¹⁰ on {u} ⧢ {v}"), None, (uv - a * b).abs());
        }
    }
    Ok(rep)
}

pub fn render_report(rep: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&rep.to_json()).expect("json") + "\n",
        Format::Csv => {
            let mut out = String::from("check,word,z,residual\n");
            for r in &rep.per_word {
                let z = r.z.map(|z| z.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},\"{}\",{z},{:e}", rep.check, r.word, r.residual);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let status = if rep.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {} N={} entries={} max_residual={:.3e} tol={:.1e}",
                rep.check,
                rep.n,
                rep.per_word.len(),
                rep.max_residual,
                rep.tolerance
            );
            if let Some(w) = rep.worst() {
                let _ = writeln!(
                    out,
                    "worst: {}{} residual {:.3e}",
                    w.word,
                    at(w.z),
                    w.residual
                );
            }
            if let Some(w) = &rep.first_violation {
                let _ = writeln!(
                    out,
                    "first violation: {}{} residual {:.3e}",
                    w.word,
                    at(w.z),
                    w.residual
                );
            }
            out
        }
    }
}

fn at(z: Option<f64>) -> String {
    z.map(|z| format!(" at z={z}")).unwrap_or_default()
}
