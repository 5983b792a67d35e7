//! Free Schrödinger evolution of frequency-brick data.
//!
//! The evolution of initial data `f` is
//!
//! ```text
//! u(x, t) = (2π)^{-n/2} ∫ exp(i(x·ξ + t|ξ|²)) f̂(ξ) dξ
//! ```
//!
//! For data whose frequency profile is a product of one-axis bricks
//! `ŵ·χ(s⁻¹(ξ - c))` the phase splits axis by axis, so the n-dimensional
//! integral factors into one-dimensional pieces. Substituting `ξ = c + s·η`
//! in one axis gives
//!
//! ```text
//! (2π)^{-1/2} · w·s · exp(i(x·c + t·c²)) · I(s(x + 2ct), t·s²)
//! ```
//!
//! with `I` the chirp kernel from [`crate::chirp`]. That reduction is exact;
//! the only numerics live inside `I`. [`direct_oracle`] checks the whole
//! pipeline against plain composite quadrature of the defining integral,
//! which never uses the factorization.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::chirp::chirp_value;
use crate::error::{Error, Result};

/// Hard cap on total quadrature nodes in [`direct_oracle`].
const ORACLE_NODE_CAP: usize = 1 << 28;

/// One-axis frequency profile `ξ ↦ w·χ(s⁻¹(ξ - c))`, with `χ` the indicator
/// of [-1/2, 1/2]: a rectangle of height `w` and width `s` centered at `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Brick1D {
    weight: f64,
    center: f64,
    width: f64,
}

impl Brick1D {
    /// Requires finite parameters, `width > 0`, `weight ≥ 0`.
    pub fn new(weight: f64, center: f64, width: f64) -> Result<Self> {
        if !weight.is_finite() || !center.is_finite() || !width.is_finite() {
            return Err(Error::invalid("brick parameters must be finite"));
        }
        if width <= 0.0 {
            return Err(Error::invalid(format!("brick width must be > 0, got {width}")));
        }
        if weight < 0.0 {
            return Err(Error::invalid(format!("brick weight must be ≥ 0, got {weight}")));
        }
        Ok(Brick1D { weight, center, width })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// L² norm of the axis profile: `w·s^{1/2}` by Plancherel, exact.
    pub fn l2_norm(&self) -> f64 {
        self.weight * self.width.sqrt()
    }

    /// Frequency support `[c - s/2, c + s/2]`.
    pub fn support(&self) -> (f64, f64) {
        (self.center - 0.5 * self.width, self.center + 0.5 * self.width)
    }
}

/// Evolution of data on one axis: the exact brick reduction to the chirp kernel.
pub fn axis_factor(brick: &Brick1D, x: f64, t: f64) -> Complex64 {
    let theta0 = x * brick.center + t * brick.center * brick.center;
    let a = brick.width * (x + 2.0 * brick.center * t);
    let b = t * brick.width * brick.width;
    let scale = brick.weight * brick.width / TAU.sqrt();
    scale * Complex64::from_polar(1.0, theta0) * chirp_value(a, b)
}

/// An n-axis tensor product of bricks.
///
/// `split` records how many leading axes form the base factor of a tensor
/// construction (0 for a pure tail factor, `dim` for a pure base).
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableExample {
    axes: Vec<Brick1D>,
    split: usize,
}

impl SeparableExample {
    pub fn new(axes: Vec<Brick1D>, split: usize) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::invalid("separable example needs at least one axis"));
        }
        if split > axes.len() {
            return Err(Error::invalid(format!(
                "split index {split} exceeds dimension {}",
                axes.len()
            )));
        }
        Ok(SeparableExample { axes, split })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Number of leading axes belonging to the base factor.
    pub fn split(&self) -> usize {
        self.split
    }

    pub fn axes(&self) -> &[Brick1D] {
        &self.axes
    }
}

/// Anything that can be evolved: exposes dimension, L² size, and the
/// evolution amplitude at a space-time point.
pub trait InitialData {
    fn dim(&self) -> usize;

    fn l2_norm(&self) -> f64;

    /// `u(x, t)` for this data; errors on dimension mismatch.
    fn evaluate(&self, x: &[f64], t: f64) -> Result<Complex64>;
}

impl InitialData for SeparableExample {
    fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Product of per-axis Plancherel norms, exact.
    fn l2_norm(&self) -> f64 {
        self.axes.iter().map(Brick1D::l2_norm).product()
    }

    /// Product of axis factors; exact because the phase splits across axes.
    fn evaluate(&self, x: &[f64], t: f64) -> Result<Complex64> {
        if x.len() != self.axes.len() {
            return Err(Error::invalid(format!(
                "point has dimension {}, example has dimension {}",
                x.len(),
                self.axes.len()
            )));
        }
        let mut product = Complex64::new(1.0, 0.0);
        for (brick, &xj) in self.axes.iter().zip(x) {
            product *= axis_factor(brick, xj, t);
        }
        Ok(product)
    }
}

/// Free-function form of [`InitialData::evaluate`] for separable data.
pub fn evaluate_separable(ex: &SeparableExample, x: &[f64], t: f64) -> Result<Complex64> {
    ex.evaluate(x, t)
}

/// Full tensor-grid quadrature of the defining integral, with no use of the
/// separable structure in the evaluation loop.
///
/// Composite Simpson with `intervals_per_axis` subintervals (rounded up to
/// even) on each brick support. Deliberately small-scale: refuses `dim > 3`,
/// more than 4096 intervals per axis, or more than 2^28 total nodes.
pub fn direct_oracle(
    ex: &SeparableExample,
    x: &[f64],
    t: f64,
    intervals_per_axis: usize,
) -> Result<Complex64> {
    let n = ex.dim();
    if n > 3 {
        return Err(Error::Capacity(format!("direct oracle supports dim ≤ 3, got {n}")));
    }
    if intervals_per_axis > 4096 {
        return Err(Error::Capacity(format!(
            "direct oracle supports ≤ 4096 intervals per axis, got {intervals_per_axis}"
        )));
    }
    if intervals_per_axis < 2 {
        return Err(Error::invalid("need at least 2 intervals per axis"));
    }
    if x.len() != n {
        return Err(Error::invalid(format!(
            "point has dimension {}, example has dimension {n}",
            x.len()
        )));
    }
    let m = intervals_per_axis + intervals_per_axis % 2;
    let nodes = m + 1;
    if nodes.pow(n as u32) > ORACLE_NODE_CAP {
        return Err(Error::Capacity(format!(
            "direct oracle node budget exceeded: {nodes}^{n} > {ORACLE_NODE_CAP}"
        )));
    }

    // Simpson weight for node i of m subintervals (scale h/3 applied later).
    fn simpson_w(i: usize, m: usize) -> f64 {
        if i == 0 || i == m {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    }

    let lo: Vec<f64> = ex.axes().iter().map(|b| b.support().0).collect();
    let h: Vec<f64> = ex.axes().iter().map(|b| b.width() / m as f64).collect();
    let amplitude: f64 = ex.axes().iter().map(Brick1D::weight).product();

    let mut idx = vec![0usize; n];
    let mut sum = Complex64::new(0.0, 0.0);
    loop {
        let mut phase = 0.0;
        let mut w = 1.0;
        for j in 0..n {
            let xi = lo[j] + idx[j] as f64 * h[j];
            phase += x[j] * xi + t * xi * xi;
            w *= simpson_w(idx[j], m);
        }
        let (s, c) = phase.sin_cos();
        sum += w * Complex64::new(c, s);

        // odometer
        let mut j = 0;
        loop {
            if j == n {
                let cell: f64 = h.iter().map(|hj| hj / 3.0).product();
                let norm = TAU.sqrt().recip().powi(n as i32);
                return Ok(sum * amplitude * cell * norm);
            }
            idx[j] += 1;
            if idx[j] <= m {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirp::chirp_integral;
    use crate::rng::SplitMix64;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn unit_brick_at_scale(r: f64) -> Brick1D {
        Brick1D::new(r.powf(-0.25), r, r.sqrt()).unwrap()
    }

    #[test]
    fn brick_validation() {
        assert!(Brick1D::new(1.0, 0.0, 0.0).is_err());
        assert!(Brick1D::new(-1.0, 0.0, 1.0).is_err());
        assert!(Brick1D::new(f64::NAN, 0.0, 1.0).is_err());
        assert!(Brick1D::new(0.0, 0.0, 1.0).is_ok());
    }

    #[test]
    fn brick_l2_norm_is_plancherel_product() {
        let b = Brick1D::new(2.0, 5.0, 4.0).unwrap();
        assert_eq!(b.l2_norm(), 4.0);
        // the frequency-scale brick has unit norm for every scale
        for r in [4.0, 256.0, 16384.0] {
            assert_abs_diff_eq!(unit_brick_at_scale(r).l2_norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn axis_factor_at_origin_is_mass() {
        // t = 0, x = 0: I(0,0) = 1, so the modulus is (2π)^{-1/2}·w·s.
        let r: f64 = 256.0;
        let b = unit_brick_at_scale(r);
        let v = axis_factor(&b, 0.0, 0.0);
        assert_relative_eq!(v.norm(), r.powf(0.25) / TAU.sqrt(), max_relative = 1e-13);

        let unit = Brick1D::new(1.0, 0.0, 1.0).unwrap();
        let v = axis_factor(&unit, 0.0, 0.0);
        assert_relative_eq!(v.re, TAU.sqrt().recip(), max_relative = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn axis_factor_on_adapted_curve_has_zero_slope() {
        // x = -1/2, t = 1/(4R): the phase slope a = s(x + 2ct) vanishes
        // exactly and the modulus is (2π)^{-1/2}·R^{1/4}·|I(0, 1/4)|.
        let r: f64 = 256.0;
        let b = unit_brick_at_scale(r);
        let v = axis_factor(&b, -0.5, 1.0 / (4.0 * r));
        // |I(0, 1/4)| from the external 40-digit reference
        let i_abs = 0.9998263996533192316;
        assert_relative_eq!(v.norm(), 4.0 * i_abs / TAU.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn evaluate_rejects_dimension_mismatch() {
        let b = unit_brick_at_scale(16.0);
        let ex = SeparableExample::new(vec![b, b], 1).unwrap();
        assert!(ex.evaluate(&[0.0], 0.0).is_err());
        assert!(ex.evaluate(&[0.0, 0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn zero_weight_axis_annihilates() {
        let b = unit_brick_at_scale(16.0);
        let z = Brick1D::new(0.0, 3.0, 1.0).unwrap();
        let ex = SeparableExample::new(vec![b, z], 1).unwrap();
        let v = ex.evaluate(&[0.3, -0.7], 0.01).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn two_axis_product_at_origin() {
        // two frequency-R axes at t = 0, x = 0: modulus (2π)^{-1}·R^{1/2}
        let r: f64 = 256.0;
        let b = unit_brick_at_scale(r);
        let ex = SeparableExample::new(vec![b, b], 0).unwrap();
        let v = ex.evaluate(&[0.0, 0.0], 0.0).unwrap();
        assert_relative_eq!(v.norm(), 16.0 / TAU, max_relative = 1e-12);
    }

    #[test]
    fn oracle_matches_axis_factor_in_one_dimension() {
        let b = Brick1D::new(1.3, 2.0, 5.0).unwrap();
        let ex = SeparableExample::new(vec![b], 1).unwrap();
        let direct = direct_oracle(&ex, &[0.0], 0.0, 512).unwrap();
        let fast = axis_factor(&b, 0.0, 0.0);
        assert!((direct - fast).norm() <= 1e-8 * fast.norm());
    }

    #[test]
    fn oracle_matches_separable_evaluation_at_random_points() {
        let r = 64.0;
        let b = unit_brick_at_scale(r);
        let ex = SeparableExample::new(vec![b, b], 1).unwrap();
        let mut rng = SplitMix64::new(7);
        for _ in 0..20 {
            let x = [rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)];
            let t = rng.uniform(0.0, 1.0 / r);
            let fast = ex.evaluate(&x, t).unwrap();
            let slow = direct_oracle(&ex, &x, t, 2048).unwrap();
            assert!(
                (fast - slow).norm() <= 1e-6 * fast.norm(),
                "mismatch at x={x:?} t={t}: |Δ|/|v| = {}",
                (fast - slow).norm() / fast.norm()
            );
        }
    }

    #[test]
    fn oracle_convergence_improves_with_refinement() {
        // doubling the interval count shrinks the self-difference by at
        // least half (Simpson is fourth order, so in practice ~16x)
        let b = Brick1D::new(1.0, 8.0, 2.0).unwrap();
        let ex = SeparableExample::new(vec![b, b], 1).unwrap();
        let x = [0.37, -0.21];
        let t = 0.05;
        let coarse = direct_oracle(&ex, &x, t, 64).unwrap();
        let mid = direct_oracle(&ex, &x, t, 128).unwrap();
        let fine = direct_oracle(&ex, &x, t, 256).unwrap();
        let d1 = (coarse - mid).norm();
        let d2 = (mid - fine).norm();
        assert!(d2 <= 0.5 * d1, "refinement did not converge: {d1} -> {d2}");
    }

    #[test]
    fn oracle_scale_guards() {
        let b = Brick1D::new(1.0, 1.0, 1.0).unwrap();
        let ex4 = SeparableExample::new(vec![b; 4], 1).unwrap();
        assert!(matches!(
            direct_oracle(&ex4, &[0.0; 4], 0.0, 16),
            Err(Error::Capacity(_))
        ));
        let ex1 = SeparableExample::new(vec![b], 1).unwrap();
        assert!(matches!(
            direct_oracle(&ex1, &[0.0], 0.0, 8192),
            Err(Error::Capacity(_))
        ));
        let ex3 = SeparableExample::new(vec![b; 3], 1).unwrap();
        assert!(matches!(
            direct_oracle(&ex3, &[0.0; 3], 0.0, 4096),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn chirp_error_estimate_small_on_brick_arguments() {
        // arguments the tube scan actually produces
        for (a, b) in [(0.0, 0.05), (0.5, 0.45), (-1.0, 0.25)] {
            let r = chirp_integral(a, b).unwrap();
            assert!(r.error <= 1e-12);
        }
    }
}
