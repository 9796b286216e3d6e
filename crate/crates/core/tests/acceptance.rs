//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::Instant;

use num_complex::Complex64;

use mzv_kz::cli;
use mzv_kz::ncseries::ComplexSeries;
use mzv_kz::numerics::{
    gif_derivative_residual, gif_residual, li, zeta, zeta_direct, zeta_direct_enclosure,
    EvalContext,
};
use mzv_kz::rhkz::{
    build_associator, build_l0, build_l1, connection_defect, duality_residual, ode_transport,
    rh_solve_additive, rh_solve_multiplicative, SAMPLE_POINTS,
};
use mzv_kz::words::{laws, Word};

const ZETA2_REF: f64 = 1.6449340668;
const ZETA3_REF: f64 = 1.2020569032;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn exact_algebra() -> Outcome {
    let start = Instant::now();
    let checks = laws::check_all(8);
    let secs = start.elapsed().as_secs_f64();
    let cases: usize = checks.iter().map(|l| l.cases).sum();
    let failures: Vec<String> = checks
        .iter()
        .filter(|l| !l.passed())
        .map(|l| {
            format!(
                "{}: {}",
                l.name,
                l.first_failure.clone().unwrap_or_default()
            )
        })
        .collect();
    outcome(
        failures.is_empty() && secs < 30.0,
        format!(
            "{cases} exact cases at weight ≤ 8, {} failures, {secs:.1}s {failures:?}",
            failures.len()
        ),
    )
}

fn mzv_dual_route(ctx: &EvalContext) -> Outcome {
    let mut worst_ratio = 0.0f64;
    let mut words = 0;
    for w in Word::all_up_to(5).filter(|w| w.is_s10() && !w.is_empty()) {
        let (a, ea) = zeta(&w, ctx).unwrap();
        let (b, eb) = zeta_direct(&w, 1_000_000).unwrap();
        // The direct partial sum undershoots by at most its tail bound.
        worst_ratio = worst_ratio.max((a - b).abs() / (ea + eb));
        words += 1;
    }
    let mut spot_ok = true;
    let mut spot = Vec::new();
    for (k, reference) in [(2, ZETA2_REF), (3, ZETA3_REF)] {
        let (lo, hi) = zeta_direct_enclosure(k, 1_000_000).unwrap();
        let (v, _) = zeta(&Word::from_indices(&[k]).unwrap(), ctx).unwrap();
        let dist_v = (v - (lo + hi) / 2.0).abs() + (hi - lo) / 2.0;
        let dist_ref = (reference - (lo + hi) / 2.0).abs() + (hi - lo) / 2.0;
        spot_ok &= dist_v < 1e-9 && dist_ref < 1e-9;
        spot.push(format!(
            "ζ({k}): |zeta − direct| ≤ {dist_v:.1e}, |ref − direct| ≤ {dist_ref:.1e}"
        ));
    }
    outcome(
        worst_ratio <= 1.0 && spot_ok,
        format!(
            "{words} words, max |Δ|/(err sum) = {worst_ratio:.8}; {}",
            spot.join("; ")
        ),
    )
}

fn duality(ctx: &EvalContext) -> Outcome {
    let (word_level, _) = duality_residual(6, ctx).unwrap();
    let (_, series_level) = duality_residual(5, ctx).unwrap();
    outcome(
        word_level < 1e-9 && series_level < 1e-8,
        format!("word level (≤6) {word_level:.2e}, series level (N=5) {series_level:.2e}"),
    )
}

fn inversion(ctx: &EvalContext) -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_d = 0.0f64;
    for w in Word::all_up_to(5) {
        for z in SAMPLE_POINTS {
            worst = worst.max(gif_residual(&w, c(z), ctx).unwrap());
            worst_d = worst_d.max(gif_derivative_residual(&w, c(z), 1e-4, ctx).unwrap());
        }
    }
    outcome(
        worst < 1e-9 && worst_d < 1e-6,
        format!("residual {worst:.2e}, derivative {worst_d:.2e}"),
    )
}

fn connection(ctx: &EvalContext) -> Outcome {
    let defects: Vec<ComplexSeries> = SAMPLE_POINTS
        .iter()
        .map(|&z| connection_defect(c(z), 4, ctx).unwrap())
        .collect();
    let worst = defects.iter().map(|d| d.max_abs()).fold(0.0, f64::max);
    let mut constancy = 0.0f64;
    for i in 0..defects.len() {
        for j in i + 1..defects.len() {
            constancy = constancy.max(defects[i].max_diff(&defects[j]).unwrap());
        }
    }
    outcome(
        worst < 1e-8 && constancy < 1e-8,
        format!("residual {worst:.2e}, pairwise constancy {constancy:.2e}"),
    )
}

fn ode(ctx: &EvalContext) -> Outcome {
    let target = build_l0(c(0.7), 4, ctx).unwrap();
    let err = |steps| {
        ode_transport(c(0.3), c(0.7), steps, 4, ctx)
            .unwrap()
            .max_diff(&target)
            .unwrap()
    };
    let e2000 = err(2000);
    // At 2000 steps the error is at rounding level, so the convergence
    // order is measured where truncation dominates.
    let (e20, e40) = (err(20), err(40));
    let ratio = e20 / e40;
    outcome(
        e2000 < 1e-8 && (10.0..=24.0).contains(&ratio),
        format!("error at 2000 steps {e2000:.2e}; halving 20→40 steps: {e20:.2e}/{e40:.2e} = {ratio:.2}"),
    )
}

fn riemann_hilbert(ctx: &EvalContext) -> Outcome {
    let table = ctx.zeta_table(4).unwrap();
    let sol = rh_solve_additive(4, &table).unwrap();
    let mut worst = 0.0f64;
    for w in Word::all_up_to(4) {
        for z in SAMPLE_POINTS {
            let f0 = sol.f0(&w, z).unwrap();
            let f1 = sol.f1(&w, z).unwrap();
            worst = worst.max((f0 - li(&w, c(z), ctx).unwrap().re).abs());
            worst = worst.max((f1 - li(&w, c(1.0 - z), ctx).unwrap().re).abs());
        }
    }
    let max_c = sol.max_constant();
    let perturbed = table.perturbed(&"011".parse().unwrap(), 1e-3).unwrap();
    let bad = rh_solve_additive(4, &perturbed).unwrap();
    let reported = bad.first_violation(1e-7).map_or(0.0, |r| r.discrepancy);
    let exit = cli::run([
        "mzvkz",
        "verify",
        "rh",
        "--weight",
        "4",
        "--perturb",
        "(2,1):1e-3",
    ])
    .code;
    outcome(
        worst < 1e-7 && max_c < 1e-7 && (reported - 1e-3).abs() <= 1e-4 && exit != 0,
        format!(
            "max |f − Li| {worst:.2e}, max |c| {max_c:.2e}; perturbed ζ(2,1): discrepancy {reported:.4e}, CLI exit {exit}"
        ),
    )
}

fn grouplike(ctx: &EvalContext) -> Outcome {
    let mut worst = 0.0f64;
    let note = |name: &str, s: &ComplexSeries, worst: &mut f64| {
        let v = s.grouplike_violation().max_violation;
        *worst = worst.max(v);
        format!("{name} {v:.1e}")
    };
    let mut parts = Vec::new();
    let sol = rh_solve_multiplicative(4, &ctx.zeta_table(4).unwrap()).unwrap();
    parts.push(note(
        "Φ",
        &build_associator(4, ctx).unwrap().series,
        &mut worst,
    ));
    for z in SAMPLE_POINTS {
        note("", &build_l0(c(z), 4, ctx).unwrap(), &mut worst);
        note("", &build_l1(c(z), 4, ctx).unwrap(), &mut worst);
        note("", &sol.f_hat0(z).unwrap(), &mut worst);
        note("", &sol.f_hat1(z).unwrap(), &mut worst);
    }
    parts.push(format!(
        "max over L0, L1, F̂0, F̂1 at {SAMPLE_POINTS:?} and Φ: {worst:.2e}"
    ));
    outcome(worst < 1e-8, parts.join("; "))
}

fn main() {
    let start = Instant::now();
    let ctx = EvalContext::default();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("exact algebra", Box::new(exact_algebra)),
        ("MZV dual route", Box::new(|| mzv_dual_route(&ctx))),
        ("duality", Box::new(|| duality(&ctx))),
        ("generalized inversion", Box::new(|| inversion(&ctx))),
        ("connection formula", Box::new(|| connection(&ctx))),
        ("ODE oracle", Box::new(|| ode(&ctx))),
        (
            "Riemann-Hilbert reconstruction",
            Box::new(|| riemann_hilbert(&ctx)),
        ),
        ("grouplike certification", Box::new(|| grouplike(&ctx))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} [{}] {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
        if !o.passed {
            failed += 1;
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!(
        "acceptance: {} of {} criteria passed in {total:.1}s",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
