//! Exponent calculators and the R-ladder experiment.
//!
//! The calculators are exact: every exponent is a [`Rational`] and no
//! float enters until a caller asks for one. The ladder half drives the
//! scan/threshold/Lᵖ pipeline across a list of frequency scales and
//! regresses the three observables against the predicted exponents in
//! log–log coordinates.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::examples::{build_example, ExampleParams, GridExample};
use crate::maximal::{
    exceptional_set, lp_norm_maximal, scan_tube, tube_threshold, SamplerSpec, ScanSpec,
};
use crate::rational::{Rational, ONE, ZERO};
use crate::rng::SplitMix64;

fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den).expect("small rational construction cannot fail")
}

fn check_exponent_args(n: usize, m: usize, p: Rational) -> Result<()> {
    if m < 1 || m > n {
        return Err(Error::invalid(format!("need 1 ≤ m ≤ n, got m = {m}, n = {n}")));
    }
    if p < ONE {
        return Err(Error::invalid(format!("need p ≥ 1, got {p}")));
    }
    Ok(())
}

/// Lower bound `(n+m)/2·(1/p − 1/2) + m/(2(m+1))` for the optimal maximal
/// exponent. Negative outputs are legal.
pub fn theorem_exponent(n: usize, m: usize, p: Rational) -> Result<Rational> {
    check_exponent_args(n, m, p)?;
    let half_sum = ratio((n + m) as i128, 2);
    let defect = p.recip()? - ratio(1, 2);
    Ok(half_sum * defect + ratio(m as i128, 2 * (m as i128 + 1)))
}

/// Growth exponents the ladder observables are fitted against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentPredictions {
    /// Peak amplitude on the tube: `m/(2(m+1)) + (n−m)/4`.
    pub amplitude: Rational,
    /// Exceptional-set measure: `−(n−m)/2`.
    pub measure: Rational,
    /// Normalized Lᵖ norm: `(m−n)/2·(1/p − 1/2) + m/(2(m+1))`.
    pub lp: Rational,
}

pub fn ladder_exponent_predictions(n: usize, m: usize, p: Rational) -> Result<ExponentPredictions> {
    check_exponent_args(n, m, p)?;
    let gap = ratio((n - m) as i128, 1);
    let base = ratio(m as i128, 2 * (m as i128 + 1));
    let defect = p.recip()? - ratio(1, 2);
    Ok(ExponentPredictions {
        amplitude: base + gap / ratio(4, 1),
        measure: -(gap / ratio(2, 1)),
        lp: -(gap / ratio(2, 1)) * defect + base,
    })
}

/// Conjectured optimal exponent `max{n(1/p − n/(2(n+1))), 0}`.
pub fn gamma_conjectured(n: usize, p: Rational) -> Result<Rational> {
    if n < 1 {
        return Err(Error::invalid("need n ≥ 1"));
    }
    if p < ONE {
        return Err(Error::invalid(format!("need p ≥ 1, got {p}")));
    }
    let branch = ratio(n as i128, 1) * (p.recip()? - ratio(n as i128, 2 * (n as i128 + 1)));
    Ok(branch.max(ZERO))
}

/// Largest p where the conjectured formula could still hold:
/// `2 + 4/((n−1)(n+2))`.
pub fn p0(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::invalid(format!("p0 needs n ≥ 2, got {n}")));
    }
    let n = n as i128;
    Ok(ratio(2, 1) + ratio(4, (n - 1) * (n + 2)))
}

/// Smallest p where the lower bound allows a bounded maximal operator:
/// `max_{1 ≤ m ≤ n} 2 + 4/(n−1+m+n/m)`, with the smallest maximizing m.
pub fn p1(n: usize) -> Result<(Rational, usize)> {
    if n < 1 {
        return Err(Error::invalid(format!("p1 needs n ≥ 1, got {n}")));
    }
    let mut best: Option<(Rational, usize)> = None;
    for m in 1..=n {
        let (ni, mi) = (n as i128, m as i128);
        let value = ratio(2, 1) + ratio(4 * mi, (ni - 1 + mi) * mi + ni);
        match &best {
            Some((v, _)) if value <= *v => {}
            _ => best = Some((value, m)),
        }
    }
    Ok(best.expect("m-scan over a nonempty range"))
}

/// Least-squares line through (log R, log value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
    pub points: usize,
}

pub fn fit_exponent(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(Error::invalid(format!(
            "exponent fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    for &(r, value) in points {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::invalid(format!("fit abscissa must be positive, got R = {r}")));
        }
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::invalid(format!("nonpositive value {value} at R = {r}")));
        }
    }
    for (i, &(r, _)) in points.iter().enumerate() {
        if points[i + 1..].iter().any(|&(s, _)| s == r) {
            return Err(Error::invalid(format!("duplicate abscissa R = {r}")));
        }
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(r, _)| r.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let var: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let slope = cov / var;
    let intercept = y_mean - slope * x_mean;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    Ok(FitResult { slope, intercept, max_residual, points: points.len() })
}

/// Everything one ladder run needs; field-by-field this mirrors the CLI
/// configuration after parsing.
#[derive(Debug, Clone)]
pub struct LadderConfig {
    pub n: usize,
    pub m: usize,
    pub p: Rational,
    pub ladder: Vec<f64>,
    pub e0: (f64, f64),
    pub base_step: f64,
    pub rel_step_frac: f64,
    pub c_win: f64,
    pub n_t: usize,
    pub threshold_axis_floor: f64,
    pub mc_samples: usize,
    pub collar_factor: f64,
    pub collar_share: f64,
    pub seed: u64,
    pub grid: Option<GridExample>,
}

impl LadderConfig {
    /// Default geometry and sampling for a built-in run.
    pub fn baseline(n: usize, m: usize, p: Rational, ladder: Vec<f64>) -> Self {
        LadderConfig {
            n,
            m,
            p,
            ladder,
            e0: (-0.9, -0.1),
            base_step: 1.0 / 64.0,
            rel_step_frac: 0.125,
            c_win: 0.5,
            n_t: 33,
            threshold_axis_floor: 0.5,
            mc_samples: 100_000,
            collar_factor: 8.0,
            collar_share: 0.75,
            seed: 0,
            grid: None,
        }
    }

    fn scan_spec(&self, r: f64) -> ScanSpec {
        ScanSpec {
            e0: self.e0,
            base_step: self.base_step,
            rel_step_frac: self.rel_step_frac,
            c_win: self.c_win,
            n_t: self.n_t,
            t_max: 1.0 / r,
        }
    }
}

/// Measured observables for one rung of the ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderRecord {
    pub r: f64,
    /// Peak amplitude over the exceptional set.
    pub peak: f64,
    /// Sampled measure of the exceptional set.
    pub measure: f64,
    /// Lᵖ norm of the maximal field over the unit ball, divided by the
    /// L² norm of the data.
    pub lp_value: f64,
    /// Amplitude floor defining the exceptional set.
    pub threshold: f64,
    pub p: Rational,
    pub n: usize,
    pub m: usize,
    /// Per-rung sampler seed, derived from the config seed.
    pub seed: u64,
    /// Not part of any persisted artifact; reruns must stay byte-identical.
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderFits {
    pub amplitude: FitResult,
    pub measure: FitResult,
    pub lp: FitResult,
}

#[derive(Debug, Clone)]
pub struct LadderOutcome {
    pub records: Vec<LadderRecord>,
    /// None when the ladder has a single rung.
    pub fits: Option<LadderFits>,
    pub predictions: ExponentPredictions,
}

/// Run the scan → exceptional set → Lᵖ pipeline at every R in the ladder
/// and fit the three observables.
///
/// Rungs are independent jobs (pure functions of the config and their
/// recorded seed) executed in R-order. `on_record` fires after each rung
/// so the caller can persist partial results; a failing rung aborts with
/// an error naming its R.
pub fn run_ladder(
    config: &LadderConfig,
    mut on_record: impl FnMut(&LadderRecord),
) -> Result<LadderOutcome> {
    if config.ladder.is_empty() {
        return Err(Error::invalid("ladder must contain at least one R"));
    }
    if config.ladder.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("ladder must be strictly increasing"));
    }
    let predictions = ladder_exponent_predictions(config.n, config.m, config.p)?;

    let mut seeds = SplitMix64::new(config.seed);
    let mut records: Vec<LadderRecord> = Vec::with_capacity(config.ladder.len());
    for &r in &config.ladder {
        let seed = seeds.next_u64();
        let started = Instant::now();
        let rung = (|| -> Result<LadderRecord> {
            let params = ExampleParams::new(config.n, config.m, r)?;
            let ex = build_example(&params, config.grid.clone())?;
            let spec = config.scan_spec(r);
            let field = scan_tube(ex.as_ref(), &params, &spec)?;
            let threshold = tube_threshold(&params, config.threshold_axis_floor);
            let report = exceptional_set(&field, threshold)?;
            let sampler = SamplerSpec {
                mc_samples: config.mc_samples,
                seed,
                collar_factor: config.collar_factor,
                collar_share: config.collar_share,
            };
            let estimate =
                lp_norm_maximal(ex.as_ref(), &params, config.p.to_f64(), &spec, &sampler, &field)?;
            Ok(LadderRecord {
                r,
                peak: report.peak,
                measure: report.measure,
                lp_value: estimate.norm() / ex.l2_norm(),
                threshold,
                p: config.p,
                n: config.n,
                m: config.m,
                seed,
                wall_seconds: started.elapsed().as_secs_f64(),
            })
        })()
        .map_err(|e| Error::LadderRung { r, source: Box::new(e) })?;
        on_record(&rung);
        records.push(rung);
    }

    let fits = if records.len() >= 2 {
        let series = |f: fn(&LadderRecord) -> f64| -> Vec<(f64, f64)> {
            records.iter().map(|rec| (rec.r, f(rec))).collect()
        };
        Some(LadderFits {
            amplitude: fit_exponent(&series(|rec| rec.peak))?,
            measure: fit_exponent(&series(|rec| rec.measure))?,
            lp: fit_exponent(&series(|rec| rec.lp_value))?,
        })
    } else {
        None
    };
    Ok(LadderOutcome { records, fits, predictions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn r(num: i128, den: i128) -> Rational {
        Rational::new(num, den).unwrap()
    }

    #[test]
    fn theorem_exponent_reference_values() {
        let two = r(2, 1);
        assert_eq!(theorem_exponent(3, 3, two).unwrap(), r(3, 8));
        assert_eq!(theorem_exponent(3, 1, r(3, 1)).unwrap(), r(-1, 12));
        // at p = 2 the first term vanishes for every n
        for n in 1..=8 {
            for m in 1..=n {
                assert_eq!(
                    theorem_exponent(n, m, two).unwrap(),
                    r(m as i128, 2 * (m as i128 + 1))
                );
            }
        }
        assert!(theorem_exponent(3, 0, two).is_err());
        assert!(theorem_exponent(3, 4, two).is_err());
        assert!(theorem_exponent(3, 1, r(1, 2)).is_err());
    }

    #[test]
    fn prediction_reference_values() {
        let two = r(2, 1);
        let p = ladder_exponent_predictions(2, 1, two).unwrap();
        assert_eq!((p.amplitude, p.measure, p.lp), (r(1, 2), r(-1, 2), r(1, 4)));
        let p = ladder_exponent_predictions(3, 1, two).unwrap();
        assert_eq!((p.amplitude, p.measure, p.lp), (r(3, 4), r(-1, 1), r(1, 4)));
        // n = m kills the gap terms at any p
        for (n, pp) in [(1usize, r(7, 2)), (3, r(5, 2)), (4, two)] {
            let pred = ladder_exponent_predictions(n, n, pp).unwrap();
            let base = r(n as i128, 2 * (n as i128 + 1));
            assert_eq!((pred.amplitude, pred.measure, pred.lp), (base, ZERO, base));
        }
        // lp prediction at n = 3, p = 3 feeds the one-sided acceptance bound
        let p = ladder_exponent_predictions(3, 1, r(3, 1)).unwrap();
        assert_eq!(p.lp, r(5, 12));
    }

    #[test]
    fn gamma_reference_values() {
        assert_eq!(gamma_conjectured(2, r(2, 1)).unwrap(), r(1, 3));
        assert_eq!(gamma_conjectured(1, r(4, 1)).unwrap(), ZERO);
        for n in 1..=10 {
            let ni = n as i128;
            let critical = r(2 * (ni + 1), ni);
            assert_eq!(gamma_conjectured(n, critical).unwrap(), ZERO);
            // beyond the critical exponent the max clamps at zero
            assert_eq!(gamma_conjectured(n, critical + ONE).unwrap(), ZERO);
        }
    }

    #[test]
    fn corollary_thresholds() {
        assert_eq!(p0(3).unwrap(), r(12, 5));
        assert_eq!(p1(3).unwrap(), (r(30, 11), 2));
        assert_eq!(p0(4).unwrap(), r(20, 9));
        assert_eq!(p1(4).unwrap(), (r(18, 7), 2));
        assert_eq!(p1(1).unwrap(), (r(4, 1), 1));
        assert!(p0(1).is_err());
        assert!(p1(0).is_err());
    }

    #[test]
    fn p1_m_scan_values() {
        // candidates at n = 3: m ∈ {1, 2, 3} → {8/3, 30/11, 8/3}
        let candidate = |n: i128, m: i128| r(2, 1) + r(4 * m, (n - 1 + m) * m + n);
        assert_eq!(candidate(3, 1), r(8, 3));
        assert_eq!(candidate(3, 2), r(30, 11));
        assert_eq!(candidate(3, 3), r(8, 3));
        // n = 4: {5/2, 18/7, 28/11, 5/2}
        assert_eq!(candidate(4, 1), r(5, 2));
        assert_eq!(candidate(4, 2), r(18, 7));
        assert_eq!(candidate(4, 3), r(28, 11));
        assert_eq!(candidate(4, 4), r(5, 2));
    }

    #[test]
    fn corollary_ordering() {
        for n in 3..=50usize {
            let ni = n as i128;
            let critical = r(2 * (ni + 1), ni);
            let lo = p0(n).unwrap();
            let (hi, _) = p1(n).unwrap();
            assert!(lo < critical, "p0({n}) = {lo} not below {critical}");
            assert!(critical < hi, "p1({n}) = {hi} not above {critical}");
        }
        // degenerate at n = 2: all three coincide at 3 (reported, not an
        // ordering claim)
        assert_eq!(p0(2).unwrap(), r(3, 1));
        assert_eq!(p1(2).unwrap(), (r(3, 1), 1));
    }

    #[test]
    fn p1_is_the_zero_of_the_bound() {
        for n in 2..=12usize {
            let (p, m) = p1(n).unwrap();
            assert_eq!(theorem_exponent(n, m, p).unwrap(), ZERO, "n = {n}");
        }
    }

    #[test]
    fn theorem_meets_conjecture_at_p_two() {
        let two = r(2, 1);
        for n in 3..=10usize {
            let lhs = theorem_exponent(n, n, two).unwrap();
            let rhs = gamma_conjectured(n, two).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, r(n as i128, 2 * (n as i128 + 1)));
        }
    }

    #[test]
    fn fit_recovers_exact_power_law() {
        let alpha = 0.75;
        let points: Vec<(f64, f64)> = [8u32, 10, 12]
            .iter()
            .map(|&k| {
                let rr = (2f64).powi(k as i32);
                (rr, rr.powf(alpha))
            })
            .collect();
        let fit = fit_exponent(&points).unwrap();
        assert_abs_diff_eq!(fit.slope, alpha, epsilon = 1e-12);
        assert!(fit.max_residual <= 1e-12);
        assert_eq!(fit.points, 3);

        let constant: Vec<(f64, f64)> = vec![(256.0, 5.0), (1024.0, 5.0), (4096.0, 5.0)];
        let fit = fit_exponent(&constant).unwrap();
        assert_abs_diff_eq!(fit.slope, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn fit_slope_invariant_under_positive_scaling() {
        let points: Vec<(f64, f64)> =
            vec![(256.0, 3.1), (1024.0, 7.3), (4096.0, 13.9), (16384.0, 31.0)];
        let base = fit_exponent(&points).unwrap();
        for factor in [0.03, 1.7, 420.0] {
            let scaled: Vec<(f64, f64)> = points.iter().map(|&(r, v)| (r, factor * v)).collect();
            let fit = fit_exponent(&scaled).unwrap();
            assert_abs_diff_eq!(fit.slope, base.slope, epsilon = 1e-12);
            assert_abs_diff_eq!(
                fit.intercept,
                base.intercept + factor.ln(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn fit_survives_multiplicative_noise() {
        let alpha = 0.6;
        let mut rng = SplitMix64::new(11);
        for _ in 0..20 {
            let points: Vec<(f64, f64)> = [8u32, 10, 12, 14]
                .iter()
                .map(|&k| {
                    let rr = (2f64).powi(k as i32);
                    let noise = 1.0 + 0.01 * (2.0 * rng.next_f64() - 1.0);
                    (rr, 3.0 * rr.powf(alpha) * noise)
                })
                .collect();
            let fit = fit_exponent(&points).unwrap();
            assert!((fit.slope - alpha).abs() <= 0.02, "slope {}", fit.slope);
        }
    }

    #[test]
    fn fit_rejects_bad_inputs() {
        assert!(fit_exponent(&[(256.0, 1.0)]).is_err());
        let err = fit_exponent(&[(256.0, 1.0), (1024.0, 0.0)]).unwrap_err();
        assert!(err.to_string().contains("1024"), "{err}");
        let err = fit_exponent(&[(256.0, 1.0), (256.0, 2.0)]).unwrap_err();
        assert!(err.to_string().contains("256"), "{err}");
    }

    fn tiny_config() -> LadderConfig {
        let mut config = LadderConfig::baseline(2, 1, r(2, 1), vec![256.0, 1024.0]);
        config.mc_samples = 400;
        config
    }

    #[test]
    fn ladder_smoke_run() {
        let config = tiny_config();
        let mut seen = Vec::new();
        let outcome = run_ladder(&config, |rec| seen.push(rec.r)).unwrap();
        assert_eq!(seen, vec![256.0, 1024.0]);
        assert_eq!(outcome.records.len(), 2);
        assert!(outcome.records[0].r < outcome.records[1].r);
        assert_ne!(outcome.records[0].seed, outcome.records[1].seed);
        assert!(outcome.records.iter().all(|rec| {
            rec.peak > 0.0 && rec.measure > 0.0 && rec.lp_value > 0.0 && rec.threshold > 0.0
        }));
        let fits = outcome.fits.unwrap();
        assert!(fits.amplitude.slope > 0.0);
        assert!(fits.measure.slope < 0.0);
        assert_eq!(
            outcome.predictions,
            ExponentPredictions { amplitude: r(1, 2), measure: r(-1, 2), lp: r(1, 4) }
        );
        // rung observables are reproducible (wall time is not)
        let again = run_ladder(&config, |_| {}).unwrap();
        for (a, b) in outcome.records.iter().zip(&again.records) {
            assert_eq!(
                (a.r, a.peak, a.measure, a.lp_value, a.threshold, a.seed),
                (b.r, b.peak, b.measure, b.lp_value, b.threshold, b.seed)
            );
        }
    }

    #[test]
    fn single_rung_refuses_fit_but_emits_record() {
        let mut config = tiny_config();
        config.ladder = vec![256.0];
        let outcome = run_ladder(&config, |_| {}).unwrap();
        assert_eq!(outcome.records.len(), 1);
        assert!(outcome.fits.is_none());
    }

    #[test]
    fn ladder_errors_name_the_failing_rung() {
        let mut config = tiny_config();
        config.m = 2;
        // m = 2 has no built-in base factor, so the first rung fails
        let mut seen = 0usize;
        let err = run_ladder(&config, |_| seen += 1).unwrap_err();
        assert_eq!(seen, 0);
        match err {
            Error::LadderRung { r, .. } => assert_eq!(r, 256.0),
            other => panic!("wrong error variant: {other}"),
        }

        let mut config = tiny_config();
        config.ladder = vec![1024.0, 256.0];
        assert!(run_ladder(&config, |_| {}).is_err());
        config.ladder = vec![];
        assert!(run_ladder(&config, |_| {}).is_err());
    }
}
