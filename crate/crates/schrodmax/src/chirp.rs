//! The oscillatory kernel
//!
//! ```text
//! I(a, b) = ∫_{-1/2}^{1/2} exp(i(a·η + b·η²)) dη
//! ```
//!
//! Every frequency brick reduces to this integral after recentring (see
//! [`crate::propagator::axis_factor`]), so all evolution amplitudes in the
//! crate funnel through here.
//!
//! Evaluation is composite Gauss–Legendre: the interval is split into
//! `P = max(8, ceil((|a| + |b|)/π))` equal panels with a 16-point rule on
//! each, which keeps at least 16 nodes per 2π of phase. The reported error
//! estimate is the difference against the coarser `P`-panel evaluation; the
//! finer `2P`-panel value is the one returned.
//!
//! Useful facts, all covered by tests:
//! - I(0, 0) = 1 and I(a, 0) = 2·sin(a/2)/a,
//! - I(-a, -b) = conj(I(a, b)),
//! - |I(a, b)| ≤ 1 (unit-modulus integrand over an interval of length 1),
//! - |I(a, b)| ≥ cos(|a|/2 + |b|/4) whenever |a|/2 + |b|/4 < π/2, since the
//!   phase then stays inside (-π/2, π/2) where the integrand's real part is
//!   at least that cosine.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// 16-point Gauss–Legendre nodes on [-1, 1] (positive half; rule is symmetric).
const GL16_NODES: [f64; 8] = [
    0.095012509837637440185,
    0.281603550779258913230,
    0.458016777657227386342,
    0.617876244402643748447,
    0.755404408355003033895,
    0.865631202387831743880,
    0.944575023073232576078,
    0.989400934991649932596,
];

/// Weights paired with [`GL16_NODES`].
const GL16_WEIGHTS: [f64; 8] = [
    0.189450610455068496285,
    0.182603415044923588867,
    0.169156519395002538189,
    0.149595988816576732081,
    0.124628971255533872052,
    0.095158511682492784810,
    0.062253523938647892863,
    0.027152459411754094852,
];

/// One evaluation of the kernel together with a node-doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpResult {
    /// The finer (doubled-panel) quadrature value.
    pub value: Complex64,
    /// |coarse − fine|, an absolute error estimate for `value`.
    pub error: f64,
}

/// Panel count for the composite rule: at least 16 nodes per 2π of phase.
fn panel_count(a: f64, b: f64) -> usize {
    let p = ((a.abs() + b.abs()) / PI).ceil();
    (p as usize).max(8)
}

/// Composite 16-point Gauss–Legendre evaluation of I(a, b) with `panels` panels.
fn quadrature(a: f64, b: f64, panels: usize) -> Complex64 {
    let h = 1.0 / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        let center = -0.5 + (k as f64 + 0.5) * h;
        let half = 0.5 * h;
        for (&x, &w) in GL16_NODES.iter().zip(&GL16_WEIGHTS) {
            for eta in [center - half * x, center + half * x] {
                let phase = eta * (a + b * eta);
                let (s, c) = phase.sin_cos();
                sum += w * Complex64::new(c, s);
            }
        }
    }
    sum * (0.5 * h)
}

/// I(a, b) evaluated at the finer (doubled) panel count only.
///
/// Bitwise identical to [`chirp_integral`]'s `value` field; used on hot paths
/// where the error estimate is not needed. Inputs must be finite.
pub fn chirp_value(a: f64, b: f64) -> Complex64 {
    quadrature(a, b, 2 * panel_count(a, b))
}

/// Deliberately under-resolved evaluation (one and two panels regardless of
/// phase). Exists so the verification suite can prove it detects a corrupted
/// quadrature rule; never use it for real work.
#[doc(hidden)]
pub fn chirp_integral_corrupted(a: f64, b: f64) -> Result<ChirpResult> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!(
            "chirp integral requires finite (a, b), got ({a}, {b})"
        )));
    }
    let coarse = quadrature(a, b, 1);
    let fine = quadrature(a, b, 2);
    Ok(ChirpResult {
        value: fine,
        error: (coarse - fine).norm(),
    })
}

/// I(a, b) with a node-doubling error estimate.
///
/// The estimate must come out ≤ 1e-8 for |a| + |b| ≤ 1e4; in practice the
/// rule is accurate to machine precision well beyond that range.
pub fn chirp_integral(a: f64, b: f64) -> Result<ChirpResult> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!(
            "chirp integral requires finite (a, b), got ({a}, {b})"
        )));
    }
    let panels = panel_count(a, b);
    let coarse = quadrature(a, b, panels);
    let fine = quadrature(a, b, 2 * panels);
    Ok(ChirpResult {
        value: fine,
        error: (coarse - fine).norm(),
    })
}
