//! Maximal amplitudes over adapted time windows.
//!
//! The field of interest is `x ↦ sup_{0 < t ≤ T} |u(x, t)|`. For brick data
//! at frequency scale `R` the supremum is attained within `O(R^{-3/2})` of
//! `t = -x₁/(2R)`, so the scan samples only that window; restricting the
//! times can only under-report the supremum, which keeps every measured
//! quantity a certified lower bound.
//!
//! Three estimates come out of a scan:
//!
//! - the peak amplitude on the tube lattice around the diagonal,
//! - the measure of the sub-level–exceeding set E on that lattice,
//! - the Lᵖ norm over the unit ball, by stratified sampling: the tube
//!   lattice deterministically, a collar box around it and the remaining
//!   ball by seeded uniform Monte Carlo per stratum.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::examples::ExampleParams;
use crate::propagator::InitialData;
use crate::rng::SplitMix64;

/// Hard cap on tube lattice size.
const TUBE_POINT_CAP: usize = 10_000_000;

/// Time interval `[lo, hi] ⊂ (0, T]` around an adapted center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeWindow {
    center: f64,
    half_width: f64,
    lo: f64,
    hi: f64,
}

impl TimeWindow {
    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

/// Window centered at `-x₁/(2R)` with half-width `c_win·R^{-3/2}`, clipped
/// to `(0, T]`. `Ok(None)` when the clip leaves nothing; the caller skips
/// the point. The open endpoint at 0 is approximated by `T·1e-12`.
pub fn adapted_window(x1: f64, r: f64, c_win: f64, t_max: f64) -> Result<Option<TimeWindow>> {
    if !r.is_finite() || r <= 1.0 {
        return Err(Error::invalid(format!("frequency scale must be > 1, got {r}")));
    }
    if !c_win.is_finite() || c_win <= 0.0 {
        return Err(Error::invalid(format!("window constant must be > 0, got {c_win}")));
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::invalid(format!("time horizon must be > 0, got {t_max}")));
    }
    if !x1.is_finite() {
        return Err(Error::invalid("window position must be finite"));
    }
    let center = -x1 / (2.0 * r);
    let half_width = c_win * r.powf(-1.5);
    let lo = (center - half_width).max(t_max * 1e-12);
    let hi = (center + half_width).min(t_max);
    if lo > hi {
        return Ok(None);
    }
    Ok(Some(TimeWindow { center, half_width, lo, hi }))
}

/// Supremum over the window, or the skip marker for an empty window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupOutcome {
    pub value: f64,
    pub skipped: bool,
}

/// Maximum of `|u(x, t)|` over `n_t` equispaced times in the window,
/// endpoints included. A degenerate window evaluates once at its center.
pub fn sup_over_time(
    ex: &dyn InitialData,
    point: &[f64],
    window: Option<&TimeWindow>,
    n_t: usize,
) -> Result<SupOutcome> {
    if n_t < 2 {
        return Err(Error::invalid(format!("need at least 2 time samples, got {n_t}")));
    }
    let Some(w) = window else {
        return Ok(SupOutcome { value: 0.0, skipped: true });
    };
    if w.lo == w.hi {
        let value = ex.evaluate(point, w.lo)?.norm();
        return Ok(SupOutcome { value, skipped: false });
    }
    let step = (w.hi - w.lo) / (n_t - 1) as f64;
    let mut best = 0.0f64;
    for i in 0..n_t {
        let t = if i + 1 == n_t { w.hi } else { w.lo + i as f64 * step };
        best = best.max(ex.evaluate(point, t)?.norm());
    }
    Ok(SupOutcome { value: best, skipped: false })
}

/// Lattice geometry and sampling rules for one scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    /// Base interval per leading axis, `[lo, hi]` with `hi > lo`.
    pub e0: (f64, f64),
    /// Lattice step along each base axis.
    pub base_step: f64,
    /// Relative-coordinate step as a fraction of `R^{-1/2}`.
    pub rel_step_frac: f64,
    /// Window half-width constant.
    pub c_win: f64,
    /// Time samples per window.
    pub n_t: usize,
    /// Time horizon `T` of the maximal function.
    pub t_max: f64,
}

impl ScanSpec {
    /// Defaults everywhere except the horizon, which depends on `R`.
    pub fn for_horizon(t_max: f64) -> Self {
        ScanSpec {
            e0: (-0.9, -0.1),
            base_step: 1.0 / 64.0,
            rel_step_frac: 0.125,
            c_win: 0.5,
            n_t: 33,
            t_max,
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.e0;
        if !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(Error::invalid(format!("degenerate base interval [{lo}, {hi}]")));
        }
        if !(self.base_step > 0.0) || !(self.rel_step_frac > 0.0) || self.rel_step_frac > 1.0 {
            return Err(Error::invalid("lattice steps must be positive (relative step ≤ 1)"));
        }
        if !(self.c_win > 0.0) || !(self.t_max > 0.0) {
            return Err(Error::invalid("window constant and horizon must be positive"));
        }
        if self.n_t < 2 {
            return Err(Error::invalid("need at least 2 time samples"));
        }
        Ok(())
    }

    fn base_count(&self) -> usize {
        ((self.e0.1 - self.e0.0) / self.base_step).floor() as usize + 1
    }

    fn rel_count(&self) -> usize {
        // points spaced frac·R^{-1/2} across [-R^{-1/2}/2, R^{-1/2}/2]
        (1.0 / self.rel_step_frac).round() as usize + 1
    }
}

/// Sampled maximal field on the tube lattice.
#[derive(Debug, Clone)]
pub struct MaximalField {
    dim: usize,
    points: Vec<f64>,
    values: Vec<f64>,
    cell_volume: f64,
    lattice_counts: Vec<usize>,
    spacings: Vec<f64>,
    skipped: usize,
}

impl MaximalField {
    /// Synthetic field over an explicit point set; used for injection in
    /// tests and by callers with their own sampler.
    pub fn from_samples(dim: usize, points: Vec<f64>, values: Vec<f64>, cell_volume: f64) -> Result<Self> {
        if dim == 0 || points.len() != values.len() * dim {
            return Err(Error::invalid("point/value layout mismatch"));
        }
        if !(cell_volume > 0.0) {
            return Err(Error::invalid("cell volume must be positive"));
        }
        if values.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::invalid("maximal values must be ≥ 0"));
        }
        Ok(MaximalField {
            dim,
            points,
            values,
            cell_volume,
            lattice_counts: Vec::new(),
            spacings: Vec::new(),
            skipped: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cell_volume(&self) -> f64 {
        self.cell_volume
    }

    /// Full lattice extent per axis before the unit-ball filter.
    pub fn lattice_counts(&self) -> &[usize] {
        &self.lattice_counts
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    /// Points whose adapted window was empty.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Riemann sum of `value^p` times cell volume.
    pub fn lp_integral(&self, p: f64) -> f64 {
        self.values.iter().map(|v| v.powf(p)).sum::<f64>() * self.cell_volume
    }
}

/// Sample the tube neighborhood of the diagonal: base coordinates on the
/// `E₀` lattice, tail coordinates `x_j = x₁ + u_j` with `|u_j| ≤ R^{-1/2}/2`,
/// keeping points inside the unit ball.
pub fn scan_tube(ex: &dyn InitialData, params: &ExampleParams, spec: &ScanSpec) -> Result<MaximalField> {
    spec.validate()?;
    let n = params.n();
    let m = params.m();
    if ex.dim() != n {
        return Err(Error::invalid(format!(
            "example has dimension {}, params say n = {n}",
            ex.dim()
        )));
    }
    let rel_step = spec.rel_step_frac / params.r().sqrt();
    let base_count = spec.base_count();
    let rel_count = spec.rel_count();
    let total = base_count
        .checked_pow(m as u32)
        .and_then(|b| rel_count.checked_pow((n - m) as u32).and_then(|r| b.checked_mul(r)))
        .ok_or_else(|| Error::Capacity("tube lattice size overflows".into()))?;
    if total > TUBE_POINT_CAP {
        return Err(Error::Capacity(format!(
            "tube lattice has {total} points (cap {TUBE_POINT_CAP}); coarsen the steps"
        )));
    }

    let cell_volume = spec.base_step.powi(m as i32) * rel_step.powi((n - m) as i32);
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut skipped = 0usize;
    let mut x = vec![0.0; n];
    let mut idx = vec![0usize; n];
    let half = (rel_count - 1) as isize / 2;
    'outer: loop {
        for j in 0..m {
            x[j] = spec.e0.0 + idx[j] as f64 * spec.base_step;
        }
        for j in m..n {
            x[j] = x[0] + (idx[j] as isize - half) as f64 * rel_step;
        }
        if x.iter().map(|v| v * v).sum::<f64>() < 1.0 {
            let window = adapted_window(x[0], params.r(), spec.c_win, spec.t_max)?;
            let sup = sup_over_time(ex, &x, window.as_ref(), spec.n_t)?;
            if sup.skipped {
                skipped += 1;
            }
            points.extend_from_slice(&x);
            values.push(sup.value);
        }
        for (j, slot) in idx.iter_mut().enumerate() {
            *slot += 1;
            let cap = if j < m { base_count } else { rel_count };
            if *slot < cap {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }

    let mut lattice_counts = vec![base_count; m];
    lattice_counts.extend(vec![rel_count; n - m]);
    let mut spacings = vec![spec.base_step; m];
    spacings.extend(vec![rel_step; n - m]);
    Ok(MaximalField {
        dim: n,
        points,
        values,
        cell_volume,
        lattice_counts,
        spacings,
        skipped,
    })
}

/// Amplitude floor for the exceptional set of a built-in run:
/// `axis_floor^n · (2π)^{-n/2} · R^{m/(2(m+1)) + (n-m)/4}`.
pub fn tube_threshold(params: &ExampleParams, axis_floor: f64) -> f64 {
    let n = params.n() as f64;
    let m = params.m() as f64;
    let growth = m / (2.0 * (m + 1.0)) + (n - m) / 4.0;
    axis_floor.powf(n) * TAU.sqrt().recip().powf(n) * params.r().powf(growth)
}

/// Where the sampled maximal field exceeds a threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalSetReport {
    pub threshold: f64,
    pub measure: f64,
    pub peak: f64,
    pub count: usize,
}

pub fn exceptional_set(field: &MaximalField, threshold: f64) -> Result<ExceptionalSetReport> {
    if !(threshold > 0.0) {
        return Err(Error::invalid(format!("threshold must be > 0, got {threshold}")));
    }
    let mut count = 0usize;
    let mut peak = 0.0f64;
    for &v in field.values() {
        if v >= threshold {
            count += 1;
            peak = peak.max(v);
        }
    }
    Ok(ExceptionalSetReport {
        threshold,
        measure: count as f64 * field.cell_volume(),
        peak,
        count,
    })
}

/// Monte Carlo budget and stratification for the ball complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerSpec {
    /// Total complement samples, split between collar and far strata.
    pub mc_samples: usize,
    pub seed: u64,
    /// Collar half-width in units of `R^{-1/2}` (clamped to ≥ 1/2, the tube
    /// half-width; at exactly 1/2 the collar stratum is empty).
    pub collar_factor: f64,
    /// Fraction of the budget spent in the collar.
    pub collar_share: f64,
}

impl SamplerSpec {
    pub fn new(mc_samples: usize, seed: u64) -> Self {
        SamplerSpec { mc_samples, seed, collar_factor: 8.0, collar_share: 0.75 }
    }
}

/// Stratum contributions to `∫ (sup_t |u|)^p` over the unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpEstimate {
    pub p: f64,
    pub tube_integral: f64,
    pub collar_integral: f64,
    pub far_integral: f64,
    pub collar_samples: usize,
    pub far_samples: usize,
    pub seed: u64,
}

impl LpEstimate {
    pub fn complement_integral(&self) -> f64 {
        self.collar_integral + self.far_integral
    }

    pub fn total_integral(&self) -> f64 {
        self.tube_integral + self.complement_integral()
    }

    /// The Lᵖ norm itself.
    pub fn norm(&self) -> f64 {
        self.total_integral().powf(1.0 / self.p)
    }
}

/// Volume of the unit ball in dimension n.
fn unit_ball_volume(n: usize) -> f64 {
    // V_n = V_{n-2}·2π/n with V_0 = 1, V_1 = 2
    let mut v = if n % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if n % 2 == 0 { 2 } else { 3 };
    while k <= n {
        v *= TAU / k as f64;
        k += 2;
    }
    v
}

/// Lᵖ norm of the maximal field over the unit ball by stratified sampling.
///
/// The tube stratum is the precomputed lattice field. The complement is
/// split at a collar box around the tube: uniform Monte Carlo inside the
/// collar (minus the tube box), uniform Monte Carlo over the ball minus the
/// collar box. Every stratum applies the same adapted-window rule, and the
/// whole procedure is a deterministic function of the seed.
pub fn lp_norm_maximal(
    ex: &dyn InitialData,
    params: &ExampleParams,
    p: f64,
    spec: &ScanSpec,
    sampler: &SamplerSpec,
    tube: &MaximalField,
) -> Result<LpEstimate> {
    if !(p >= 1.0) {
        return Err(Error::invalid(format!("need p ≥ 1, got {p}")));
    }
    if sampler.mc_samples == 0 {
        return Err(Error::invalid("sampler budget must be positive"));
    }
    if !(sampler.collar_share >= 0.0 && sampler.collar_share <= 1.0) {
        return Err(Error::invalid("collar share must lie in [0, 1]"));
    }
    spec.validate()?;
    let n = params.n();
    let m = params.m();
    let r = params.r();
    let rinv_sqrt = 1.0 / r.sqrt();
    let tube_half = 0.5 * rinv_sqrt;
    let collar_half = sampler.collar_factor.max(0.5) * rinv_sqrt;
    let (e0_lo, e0_hi) = spec.e0;
    let base_len = e0_hi - e0_lo;

    let tube_integral = tube.lp_integral(p);

    let mut rng = SplitMix64::new(sampler.seed);
    let mut x = vec![0.0; n];

    // Collar stratum: uniform in the collar box, zero weight on rejects
    // (outside the ball or inside the tube box).
    let collar_empty = collar_half <= tube_half;
    let collar_samples = if collar_empty {
        0
    } else {
        ((sampler.mc_samples as f64) * sampler.collar_share).round() as usize
    };
    let mut collar_integral = 0.0;
    if collar_samples > 0 {
        let box_volume = base_len.powi(m as i32) * (2.0 * collar_half).powi((n - m) as i32);
        let mut sum = 0.0;
        for _ in 0..collar_samples {
            for slot in x.iter_mut().take(m) {
                *slot = rng.uniform(e0_lo, e0_hi);
            }
            let mut in_tube = true;
            for j in m..n {
                let u = rng.uniform(-collar_half, collar_half);
                x[j] = x[0] + u;
                in_tube &= u.abs() <= tube_half;
            }
            if (n > m && in_tube) || x.iter().map(|v| v * v).sum::<f64>() >= 1.0 {
                continue;
            }
            let window = adapted_window(x[0], r, spec.c_win, spec.t_max)?;
            sum += sup_over_time(ex, &x, window.as_ref(), spec.n_t)?.value.powf(p);
        }
        collar_integral = sum / collar_samples as f64 * box_volume;
    }

    // Far stratum: uniform over the ball, zero weight inside the collar box.
    let far_samples = sampler.mc_samples - collar_samples;
    let mut far_integral = 0.0;
    if far_samples > 0 {
        let ball_volume = unit_ball_volume(n);
        let mut sum = 0.0;
        for _ in 0..far_samples {
            loop {
                let mut norm_sq = 0.0;
                for xj in x.iter_mut() {
                    *xj = rng.uniform(-1.0, 1.0);
                    norm_sq += *xj * *xj;
                }
                if norm_sq < 1.0 {
                    break;
                }
            }
            let in_base = (0..m).all(|j| x[j] >= e0_lo && x[j] <= e0_hi);
            let in_collar = in_base && (m..n).all(|j| (x[j] - x[0]).abs() <= collar_half);
            if in_collar {
                continue;
            }
            let window = adapted_window(x[0], r, spec.c_win, spec.t_max)?;
            sum += sup_over_time(ex, &x, window.as_ref(), spec.n_t)?.value.powf(p);
        }
        far_integral = sum / far_samples as f64 * ball_volume;
    }

    Ok(LpEstimate {
        p,
        tube_integral,
        collar_integral,
        far_integral,
        collar_samples,
        far_samples,
        seed: sampler.seed,
    })
}
