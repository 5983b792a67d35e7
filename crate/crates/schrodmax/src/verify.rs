//! The verification suite: nine acceptance checks, one report.
//!
//! Each check is independent and reports pass/fail with a one-line detail;
//! the exponent checks A3–A5 share two ladder runs executed under A3's
//! timer. `--inject-fault chirp` swaps in a deliberately broken quadrature
//! rule to prove A2 catches it.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::chirp::{chirp_integral, chirp_integral_corrupted, ChirpResult};
use crate::cli::{cmd_ladder, RunConfig};
use crate::error::{Error, Result};
use crate::examples::{build_example, build_f0_dk, build_f1, rescale, tensor, ExampleParams};
use crate::propagator::{direct_oracle, InitialData};
use crate::rational::{Rational, ZERO};
use crate::report::conjecture_cross_check;
use crate::rng::SplitMix64;
use crate::scaling::{p0, p1, run_ladder, theorem_exponent, LadderFits, LadderOutcome};

/// One acceptance check's verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

/// Components the suite can deliberately corrupt to prove it detects them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    ChirpQuadrature,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chirp" => Ok(Fault::ChirpQuadrature),
            other => Err(Error::invalid(format!(
                "unknown fault {other:?}; available: chirp"
            ))),
        }
    }
}

#[derive(Debug)]
pub struct VerifyOutcome {
    pub all_pass: bool,
    pub checks: Vec<CheckResult>,
    pub report_path: PathBuf,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    all_pass: bool,
    checks: &'a [CheckResult],
    /// The two ladder configurations behind A3–A5.
    ladder_configs: [&'a RunConfig; 2],
}

fn run_check(
    checks: &mut Vec<CheckResult>,
    id: &'static str,
    name: &'static str,
    f: impl FnOnce() -> Result<(bool, String)>,
) {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("errored: {e}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    println!("{id} {name}: {} ({seconds:.1}s) {detail}", if pass { "PASS" } else { "FAIL" });
    checks.push(CheckResult { id, name, pass, detail, seconds });
}

fn sample_ball(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        if x.iter().map(|v| v * v).sum::<f64>() < 1.0 {
            return x;
        }
    }
}

/// Spot-checks the separable evaluator against direct quadrature of the
/// Fourier integral at random points inside the unit ball.
pub fn check_a1() -> Result<(bool, String)> {
    let r = 64.0;
    let params = ExampleParams::new(2, 1, r)?;
    let f = tensor(&build_f0_dk(r)?, &build_f1(&params)?)?;
    let mut rng = SplitMix64::new(0xA1);
    let mut max_rel = 0.0f64;
    let mut min_mag = f64::INFINITY;
    let mut failures = 0usize;
    for _ in 0..100 {
        let x = sample_ball(&mut rng, 2);
        let t = (1.0 - rng.next_f64()) / r;
        let fast = f.evaluate(&x, t)?;
        let direct = direct_oracle(&f, &x, t, 2048)?;
        let rel = (direct - fast).norm() / fast.norm();
        min_mag = min_mag.min(fast.norm());
        max_rel = max_rel.max(rel);
        if rel > 1e-6 {
            failures += 1;
        }
    }
    Ok((
        failures == 0,
        format!("max rel err {max_rel:.2e} over 100 samples (min |u| {min_mag:.2e})"),
    ))
}

/// Chirp quadrature self-consistency, conjugation symmetry, and the
/// closed form at b = 0.
pub fn check_a2(fault: Option<Fault>) -> Result<(bool, String)> {
    let eval: fn(f64, f64) -> Result<ChirpResult> = match fault {
        Some(Fault::ChirpQuadrature) => chirp_integral_corrupted,
        None => chirp_integral,
    };
    let mut rng = SplitMix64::new(0xA2);
    let mut worst_self = 0.0f64;
    let mut worst_sinc = 0.0f64;
    let mut worst_conj = 0.0f64;
    let mut max_modulus = 0.0f64;
    for _ in 0..1000 {
        let (a, b) = loop {
            let a = rng.uniform(-1e4, 1e4);
            let b = rng.uniform(-1e4, 1e4);
            if a.abs() + b.abs() <= 1e4 {
                break (a, b);
            }
        };
        let res = eval(a, b)?;
        worst_self = worst_self.max(res.error);
        max_modulus = max_modulus.max(res.value.norm());
        let mirrored = eval(-a, -b)?;
        worst_conj = worst_conj.max((mirrored.value - res.value.conj()).norm());
        let on_axis = eval(a, 0.0)?;
        let closed = if a == 0.0 { 1.0 } else { 2.0 * (a / 2.0).sin() / a };
        worst_sinc = worst_sinc.max((on_axis.value - Complex64::new(closed, 0.0)).norm());
    }
    let pass = worst_self <= 1e-8
        && worst_sinc <= 1e-10
        && worst_conj <= 1e-12
        && max_modulus <= 1.0 + 1e-12;
    Ok((
        pass,
        format!(
            "self-err {worst_self:.2e}, closed-form {worst_sinc:.2e}, conj {worst_conj:.2e}, max |I| {max_modulus:.6}"
        ),
    ))
}

/// Ladder outcomes shared by the slope checks; running them once keeps the
/// whole suite inside its time budget.
pub struct Ladders {
    n2: LadderOutcome,
    n3: LadderOutcome,
}

/// The two ladder configurations the slope checks run against.
pub fn acceptance_configs(out: &Path) -> (RunConfig, RunConfig) {
    let n2 = RunConfig {
        mc_samples: 20_000,
        out: out.join("ladder_n2"),
        ..RunConfig::default()
    };
    let n3 = RunConfig {
        n: 3,
        p: Rational::from_int(3),
        ladder: vec![256.0, 1024.0, 4096.0],
        mc_samples: 20_000,
        out: out.join("ladder_n3"),
        ..RunConfig::default()
    };
    (n2, n3)
}

pub fn run_acceptance_ladders(n2: &RunConfig, n3: &RunConfig) -> Result<Ladders> {
    Ok(Ladders {
        n2: run_ladder(&n2.to_ladder_config()?, |_| {})?,
        n3: run_ladder(&n3.to_ladder_config()?, |_| {})?,
    })
}

fn fits(outcome: &LadderOutcome) -> Result<&LadderFits> {
    outcome
        .fits
        .as_ref()
        .ok_or_else(|| Error::invalid("ladder produced no fits"))
}

/// Peak amplitude growth matches the predicted exponent on both ladders.
pub fn a3_verdict(l: &Ladders) -> Result<(bool, String)> {
    let s2 = fits(&l.n2)?.amplitude.slope;
    let s3 = fits(&l.n3)?.amplitude.slope;
    let pass = (s2 - 0.5).abs() <= 0.05 && (s3 - 0.75).abs() <= 0.05;
    Ok((pass, format!("n=2 slope {s2:.4} (0.50±0.05), n=3 slope {s3:.4} (0.75±0.05)")))
}

fn ratio_spread(outcome: &LadderOutcome) -> f64 {
    let exponent = -outcome.predictions.measure.to_f64();
    let values: Vec<f64> = outcome
        .records
        .iter()
        .map(|rec| rec.measure * rec.r.powf(exponent))
        .collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(0.0, f64::max);
    max / min
}

/// Exceptional-set measure decay matches the predicted exponent.
pub fn a4_verdict(l: &Ladders) -> Result<(bool, String)> {
    let s2 = fits(&l.n2)?.measure.slope;
    let s3 = fits(&l.n3)?.measure.slope;
    let spread2 = ratio_spread(&l.n2);
    let spread3 = ratio_spread(&l.n3);
    let pass =
        (s2 + 0.5).abs() <= 0.1 && (s3 + 1.0).abs() <= 0.1 && spread2 <= 4.0 && spread3 <= 4.0;
    Ok((
        pass,
        format!(
            "n=2 slope {s2:.4} (-0.50±0.1) spread {spread2:.2}, n=3 slope {s3:.4} (-1.00±0.1) spread {spread3:.2} (≤4)"
        ),
    ))
}

/// Normalized Lp growth stays above the certified lower-bound slope.
pub fn a5_verdict(l: &Ladders) -> Result<(bool, String)> {
    let s2 = fits(&l.n2)?.lp.slope;
    let s3 = fits(&l.n3)?.lp.slope;
    let pass = s2 >= 0.25 - 0.05 && s3 >= 5.0 / 12.0 - 0.1;
    Ok((
        pass,
        format!("n=2 p=2 slope {s2:.4} (≥0.20), n=3 p=3 slope {s3:.4} (≥{:.4})", 5.0 / 12.0 - 0.1),
    ))
}

/// Parabolic rescaling is pointwise exact and norm-preserving.
pub fn check_a6() -> Result<(bool, String)> {
    let r = 64.0;
    let params = ExampleParams::new(2, 1, r)?;
    let f = tensor(&build_f0_dk(r)?, &build_f1(&params)?)?;
    let g = rescale(&f, r)?;
    let norms_equal = g.l2_norm() == f.l2_norm();
    let mut rng = SplitMix64::new(0xA6);
    let mut max_rel = 0.0f64;
    for _ in 0..50 {
        let x = sample_ball(&mut rng, 2);
        let t = (1.0 - rng.next_f64()) / r;
        let lhs = f.evaluate(&x, t)?.norm();
        let rhs = r * g.evaluate(&[r * x[0], r * x[1]], r * r * t)?.norm();
        max_rel = max_rel.max((lhs - rhs).abs() / lhs);
    }
    let pass = norms_equal && max_rel <= 1e-8;
    Ok((
        pass,
        format!("max rel err {max_rel:.2e} over 50 samples, ‖g‖ = ‖f‖ exactly: {norms_equal}"),
    ))
}

/// Exponent tables: ordering, zero crossing, and the p = 2 specialization.
pub fn check_a7() -> Result<(bool, String)> {
    let mut problems: Vec<String> = Vec::new();
    if p0(3)? != Rational::new(12, 5)? {
        problems.push("p0(3)".into());
    }
    if p1(3)? != (Rational::new(30, 11)?, 2) {
        problems.push("p1(3)".into());
    }
    if p0(4)? != Rational::new(20, 9)? {
        problems.push("p0(4)".into());
    }
    if p1(4)? != (Rational::new(18, 7)?, 2) {
        problems.push("p1(4)".into());
    }
    for n in 3..=50 {
        let critical = Rational::new(2 * (n as i128 + 1), n as i128)?;
        if !(p0(n)? < critical && critical < p1(n)?.0) {
            problems.push(format!("ordering at n = {n}"));
        }
    }
    for n in 2..=50 {
        let (p, m) = p1(n)?;
        if theorem_exponent(n, m, p)? != ZERO {
            problems.push(format!("zero property at n = {n}"));
        }
    }
    for n in 3..=10 {
        if !conjecture_cross_check(n)? {
            problems.push(format!("p = 2 agreement at n = {n}"));
        }
    }
    if problems.is_empty() {
        Ok((true, "tables, ordering 3..50, zero property, p = 2 agreement".into()))
    } else {
        Ok((false, format!("failed: {}", problems.join(", "))))
    }
}

/// The built-in n = 2 datum carries unit mass up to discretization error.
pub fn check_a8() -> Result<(bool, String)> {
    let r = 256.0;
    let params = ExampleParams::new(1, 1, r)?;
    let ex = build_example(&params, None)?;
    let t = 1.0 / (2.0 * r);
    let (lo, hi) = (-8.0, 8.0);
    let intervals = 4096usize;
    let h = (hi - lo) / intervals as f64;
    let mut sum = 0.0;
    for i in 0..=intervals {
        let weight = if i == 0 || i == intervals {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let x = lo + i as f64 * h;
        sum += weight * ex.evaluate(&[x], t)?.norm_sqr();
    }
    let mass = sum * h / 3.0;
    let pass = (mass - 1.0).abs() <= 0.02;
    Ok((pass, format!("mass on [-8, 8] = {mass:.6} (want 1 ± 2%)")))
}

/// Two runs with the same seed produce byte-identical result files.
pub fn check_a9(out: &Path) -> Result<(bool, String)> {
    let config = RunConfig {
        ladder: vec![256.0, 1024.0],
        mc_samples: 2000,
        seed: 7,
        out: out.join("ladder_a9"),
        ..RunConfig::default()
    };
    cmd_ladder(&config)?;
    let csv = config.out.join("results.csv");
    let first = fs::read(&csv).map_err(|e| Error::io(&csv, e))?;
    cmd_ladder(&config)?;
    let second = fs::read(&csv).map_err(|e| Error::io(&csv, e))?;
    let pass = first == second;
    Ok((pass, format!("results.csv rerun byte-identical: {pass} ({} bytes)", first.len())))
}

/// Run every acceptance check, write verify_report.json, and return the
/// verdicts. The process exit decision belongs to the caller.
pub fn cmd_verify(out: &Path, fault: Option<Fault>) -> Result<VerifyOutcome> {
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let (n2_config, n3_config) = acceptance_configs(out);
    let mut checks: Vec<CheckResult> = Vec::new();

    run_check(&mut checks, "A1", "oracle equivalence", check_a1);
    run_check(&mut checks, "A2", "chirp kernel", || check_a2(fault));

    let mut ladders: Option<Ladders> = None;
    run_check(&mut checks, "A3", "amplitude exponent", || {
        let l = run_acceptance_ladders(&n2_config, &n3_config)?;
        let verdict = a3_verdict(&l);
        ladders = Some(l);
        verdict
    });
    run_check(&mut checks, "A4", "exceptional-set exponent", || match &ladders {
        Some(l) => a4_verdict(l),
        None => Ok((false, "ladder run unavailable (see A3)".into())),
    });
    run_check(&mut checks, "A5", "Lp exponent", || match &ladders {
        Some(l) => a5_verdict(l),
        None => Ok((false, "ladder run unavailable (see A3)".into())),
    });

    run_check(&mut checks, "A6", "parabolic rescaling", check_a6);
    run_check(&mut checks, "A7", "exact exponent tables", check_a7);
    run_check(&mut checks, "A8", "mass conservation", check_a8);
    run_check(&mut checks, "A9", "determinism", || check_a9(out));

    let all_pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        all_pass,
        checks: &checks,
        ladder_configs: [&n2_config, &n3_config],
    };
    let report_path = out.join("verify_report.json");
    let mut text = serde_json::to_string_pretty(&report).expect("plain struct serializes");
    text.push('\n');
    fs::write(&report_path, text).map_err(|e| Error::io(&report_path, e))?;

    let passed = checks.iter().filter(|c| c.pass).count();
    println!(
        "verify: {passed}/{} checks passed, report at {}",
        checks.len(),
        report_path.display()
    );
    Ok(VerifyOutcome { all_pass, checks, report_path })
}
