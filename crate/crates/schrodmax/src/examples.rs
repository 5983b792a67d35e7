//! The concrete initial-data constructions.
//!
//! Everything here lives on the frequency side. The built-in family places
//! unit-norm bricks at frequency `R` with width `R^{1/2}`: one such brick is
//! the classical one-dimensional packet of Dahlberg and Kenig, and a row of
//! them across the remaining axes is the tail factor whose evolution stays
//! large on an `R^{-1/2}`-thin tube. [`rescale`] moves between the unit
//! frequency ball and the annulus at scale `R` without changing L² mass.
//! [`GridExample`] is the escape hatch: arbitrary lattice-sampled frequency
//! data loaded from JSON, for base factors this crate does not construct.

use num_complex::Complex64;
use serde::Deserialize;
use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::propagator::{Brick1D, InitialData, SeparableExample};

/// Dimensions and frequency scale of one experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleParams {
    n: usize,
    m: usize,
    r: f64,
}

impl ExampleParams {
    /// Requires `1 ≤ m ≤ n` and finite `R > 1`.
    pub fn new(n: usize, m: usize, r: f64) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::invalid(format!("need 1 ≤ m ≤ n, got m = {m}, n = {n}")));
        }
        if !r.is_finite() || r <= 1.0 {
            return Err(Error::invalid(format!("frequency scale must be > 1, got {r}")));
        }
        Ok(ExampleParams { n, m, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        ExampleParams::new(self.n, self.m, r)
    }
}

/// The unit-norm axis brick at scale `R`: weight `R^{-1/4}`, center `R`,
/// width `R^{1/2}`.
fn scale_brick(r: f64) -> Brick1D {
    Brick1D::new(r.powf(-0.25), r, r.sqrt()).expect("valid brick for r > 1")
}

/// Tail factor: one scale brick on each of the last `n - m` axes.
/// Unit L² norm by construction.
pub fn build_f1(params: &ExampleParams) -> Result<SeparableExample> {
    if params.m == params.n {
        return Err(Error::invalid("tail factor is empty when m = n"));
    }
    let axes = vec![scale_brick(params.r); params.n - params.m];
    SeparableExample::new(axes, 0)
}

/// The explicit one-axis base factor: a single scale brick.
///
/// Along `t = -x/(2R)` the phase slope vanishes and the evolution keeps
/// modulus `(2π)^{-1/2} R^{1/4} |I(0, tR)| ≥ 0.6 (2π)^{-1/2} R^{1/4}` for
/// every `x ∈ [-0.9, -0.1]`, the Dahlberg–Kenig `R^{1/4}` growth.
pub fn build_f0_dk(r: f64) -> Result<SeparableExample> {
    if !r.is_finite() || r <= 1.0 {
        return Err(Error::invalid(format!("frequency scale must be > 1, got {r}")));
    }
    SeparableExample::new(vec![scale_brick(r)], 1)
}

/// Tensor product: base axes first, then tail axes; split index records the
/// base dimension.
pub fn tensor(f0: &SeparableExample, f1: &SeparableExample) -> Result<SeparableExample> {
    let mut axes = f0.axes().to_vec();
    axes.extend_from_slice(f1.axes());
    SeparableExample::new(axes, f0.dim())
}

/// Parabolic rescaling: per axis `(w, c, s) ↦ (w·R^{1/2}, c/R, s/R)`.
///
/// Preserves the L² norm and satisfies
/// `|u_f(x, t)| = R^{n/2} |u_g(Rx, R²t)|` pointwise; for dyadic `R` with an
/// even exponent both hold bit-exactly, because every factor is a power of
/// two and the chirp arguments come out identical.
pub fn rescale(f: &SeparableExample, r: f64) -> Result<SeparableExample> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::invalid(format!("rescaling factor must be > 0, got {r}")));
    }
    let sqrt_r = r.sqrt();
    let axes = f
        .axes()
        .iter()
        .map(|b| Brick1D::new(b.weight() * sqrt_r, b.center() / r, b.width() / r))
        .collect::<Result<Vec<_>>>()?;
    SeparableExample::new(axes, f.split())
}

/// Frequency samples on a rectangular lattice; the plug-in slot for base
/// factors built elsewhere. Evaluation is a midpoint Riemann sum of the
/// defining integral over the cells.
#[derive(Debug, Clone, PartialEq)]
pub struct GridExample {
    origin: Vec<f64>,
    spacing: Vec<f64>,
    cells: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

/// On-disk form; see the README for the schema.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    n: usize,
    origin: Vec<f64>,
    spacing: Vec<f64>,
    cells: Vec<usize>,
    amplitudes: Vec<[f64; 2]>,
}

impl GridExample {
    pub fn new(
        origin: Vec<f64>,
        spacing: Vec<f64>,
        cells: Vec<usize>,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self> {
        let n = origin.len();
        if n == 0 {
            return Err(Error::invalid("grid needs at least one axis"));
        }
        if spacing.len() != n || cells.len() != n {
            return Err(Error::invalid(format!(
                "axis count mismatch: origin {n}, spacing {}, cells {}",
                spacing.len(),
                cells.len()
            )));
        }
        if origin.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("grid origin must be finite"));
        }
        if spacing.iter().any(|&s| !s.is_finite() || s <= 0.0) {
            return Err(Error::invalid("grid spacing must be positive and finite"));
        }
        if cells.contains(&0) {
            return Err(Error::invalid("grid needs at least one cell per axis"));
        }
        let count = cells.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c));
        let count = count.ok_or_else(|| Error::Capacity("grid cell count overflows".into()))?;
        if amplitudes.len() != count {
            return Err(Error::invalid(format!(
                "amplitude count {} does not match cell count {count}",
                amplitudes.len()
            )));
        }
        if amplitudes.is_empty() {
            return Err(Error::invalid("grid amplitude list is empty"));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::invalid("grid amplitudes must be finite"));
        }
        let grid = GridExample { origin, spacing, cells, amplitudes };
        let norm = grid.l2_norm();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::invalid("grid L² norm must be positive and finite"));
        }
        Ok(grid)
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Frequency at the center of the flat-indexed cell. Row-major: the
    /// last axis varies fastest.
    fn freq_at(&self, flat: usize, out: &mut [f64]) {
        let mut rem = flat;
        for j in (0..self.cells.len()).rev() {
            let idx = rem % self.cells[j];
            rem /= self.cells[j];
            out[j] = self.origin[j] + (idx as f64 + 0.5) * self.spacing[j];
        }
    }
}

impl InitialData for GridExample {
    fn dim(&self) -> usize {
        self.origin.len()
    }

    fn l2_norm(&self) -> f64 {
        let mass: f64 = self.amplitudes.iter().map(|a| a.norm_sqr()).sum();
        (mass * self.cell_volume()).sqrt()
    }

    fn evaluate(&self, x: &[f64], t: f64) -> Result<Complex64> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::invalid(format!(
                "point has dimension {}, grid has dimension {n}",
                x.len()
            )));
        }
        let mut xi = vec![0.0; n];
        let mut sum = Complex64::new(0.0, 0.0);
        for (flat, amp) in self.amplitudes.iter().enumerate() {
            self.freq_at(flat, &mut xi);
            let mut phase = 0.0;
            for j in 0..n {
                phase += x[j] * xi[j] + t * xi[j] * xi[j];
            }
            let (s, c) = phase.sin_cos();
            sum += amp * Complex64::new(c, s);
        }
        let norm = TAU.sqrt().recip().powi(n as i32);
        Ok(sum * self.cell_volume() * norm)
    }
}

pub fn load_grid_example(path: &Path) -> Result<GridExample> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: GridFile = serde_json::from_str(&text).map_err(|e| Error::GridParse {
        path: path.to_path_buf(),
        source: e,
    })?;
    if file.origin.len() != file.n {
        return Err(Error::GridValidation {
            path: path.to_path_buf(),
            detail: format!("origin has {} entries, n = {}", file.origin.len(), file.n),
        });
    }
    let amplitudes = file.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    GridExample::new(file.origin, file.spacing, file.cells, amplitudes).map_err(|e| match e {
        Error::InvalidArgument(detail) => Error::GridValidation { path: path.to_path_buf(), detail },
        other => other,
    })
}

/// Grid base factor on the first axes, optional brick tail on the rest.
#[derive(Debug, Clone)]
pub struct GridTensor {
    base: GridExample,
    tail: Option<SeparableExample>,
}

impl GridTensor {
    pub fn new(base: GridExample, tail: Option<SeparableExample>) -> Self {
        GridTensor { base, tail }
    }
}

impl InitialData for GridTensor {
    fn dim(&self) -> usize {
        self.base.dim() + self.tail.as_ref().map_or(0, SeparableExample::dim)
    }

    fn l2_norm(&self) -> f64 {
        self.base.l2_norm() * self.tail.as_ref().map_or(1.0, SeparableExample::l2_norm)
    }

    fn evaluate(&self, x: &[f64], t: f64) -> Result<Complex64> {
        if x.len() != self.dim() {
            return Err(Error::invalid(format!(
                "point has dimension {}, example has dimension {}",
                x.len(),
                self.dim()
            )));
        }
        let m = self.base.dim();
        let mut v = self.base.evaluate(&x[..m], t)?;
        if let Some(tail) = &self.tail {
            v *= tail.evaluate(&x[m..], t)?;
        }
        Ok(v)
    }
}

/// Assemble the full example for one run: the built-in brick base for
/// m = 1, or a user grid base for the first m axes, tensored with the
/// brick tail whenever m < n.
pub fn build_example(
    params: &ExampleParams,
    grid: Option<GridExample>,
) -> Result<Box<dyn InitialData>> {
    match grid {
        Some(g) => {
            if g.dim() != params.m {
                return Err(Error::invalid(format!(
                    "grid base has dimension {}, expected m = {}",
                    g.dim(),
                    params.m
                )));
            }
            let tail = if params.m < params.n { Some(build_f1(params)?) } else { None };
            Ok(Box::new(GridTensor::new(g, tail)))
        }
        None => {
            if params.m != 1 {
                return Err(Error::invalid(
                    "no built-in base factor for m ≥ 2; supply a frequency grid file",
                ));
            }
            let f0 = build_f0_dk(params.r)?;
            if params.n == 1 {
                Ok(Box::new(f0))
            } else {
                Ok(Box::new(tensor(&f0, &build_f1(params)?)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirp::chirp_value;
    use crate::propagator::{axis_factor, evaluate_separable};
    use crate::rng::SplitMix64;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn f1_shape_and_norm() {
        let p = ExampleParams::new(3, 1, 256.0).unwrap();
        let f1 = build_f1(&p).unwrap();
        assert_eq!(f1.dim(), 2);
        for b in f1.axes() {
            assert_eq!(b.weight(), 0.25);
            assert_eq!(b.center(), 256.0);
            assert_eq!(b.width(), 16.0);
        }
        assert_eq!(f1.l2_norm(), 1.0);

        let p = ExampleParams::new(2, 1, 4.0).unwrap();
        let f1 = build_f1(&p).unwrap();
        let b = f1.axes()[0];
        assert_relative_eq!(b.weight(), 0.5f64.sqrt(), max_relative = 1e-15);
        assert_eq!(b.center(), 4.0);
        assert_eq!(b.width(), 2.0);
    }

    #[test]
    fn f1_rejects_m_equals_n() {
        let p = ExampleParams::new(2, 2, 256.0).unwrap();
        assert!(build_f1(&p).is_err());
    }

    #[test]
    fn f1_support_is_thin_shell_at_scale() {
        for r in [4.0, 256.0, 16384.0] {
            let p = ExampleParams::new(3, 1, r).unwrap();
            for b in build_f1(&p).unwrap().axes() {
                let (lo, hi) = b.support();
                assert_eq!(lo, r - 0.5 * r.sqrt());
                assert_eq!(hi, r + 0.5 * r.sqrt());
            }
        }
    }

    #[test]
    fn f0_dk_norm_and_trivial_value() {
        for r in [4.0, 256.0, 1024.0] {
            let f0 = build_f0_dk(r).unwrap();
            assert_relative_eq!(f0.l2_norm(), 1.0, max_relative = 1e-15);
        }
        // R = 4, x = 0, t = 0: modulus (2π)^{-1/2}·√2
        let f0 = build_f0_dk(4.0).unwrap();
        let v = f0.evaluate(&[0.0], 0.0).unwrap();
        assert_relative_eq!(v.norm(), 2.0f64.sqrt() / TAU.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn f0_dk_stays_large_along_adapted_curve() {
        // x on the 1/64 lattice in [-0.9, -0.1], t = -x/(2R); the phase
        // slope is 0 there, so the modulus is (2π)^{-1/2} R^{1/4} |I(0, tR)|
        // with |tR| ≤ 0.45, comfortably above the 0.6 floor.
        let r = 256.0;
        let f0 = build_f0_dk(r).unwrap();
        let floor = 0.6 * r.powf(0.25) / TAU.sqrt();
        for k in 0..52 {
            let x = -0.9 + k as f64 / 64.0;
            let t = -x / (2.0 * r);
            let v = f0.evaluate(&[x], t).unwrap();
            assert!(v.norm() >= floor, "modulus {} below floor at x = {x}", v.norm());
        }
    }

    #[test]
    fn f0_dk_rejects_small_scale() {
        assert!(build_f0_dk(1.0).is_err());
        assert!(build_f0_dk(0.5).is_err());
        assert!(build_f0_dk(f64::NAN).is_err());
    }

    #[test]
    fn tensor_concatenates_and_multiplies() {
        let p = ExampleParams::new(2, 1, 64.0).unwrap();
        let f0 = build_f0_dk(p.r()).unwrap();
        let f1 = build_f1(&p).unwrap();
        let f = tensor(&f0, &f1).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.split(), 1);
        assert_eq!(f.axes()[0], f.axes()[1]);
        assert_eq!(f.l2_norm(), f0.l2_norm() * f1.l2_norm());

        let x = [-0.4, -0.35];
        let t = 0.003;
        let whole = f.evaluate(&x, t).unwrap();
        let parts = f0.evaluate(&x[..1], t).unwrap() * f1.evaluate(&x[1..], t).unwrap();
        assert_eq!(whole, parts);
    }

    #[test]
    fn rescale_parameter_map() {
        let p = ExampleParams::new(2, 1, 256.0).unwrap();
        let f1 = build_f1(&p).unwrap();
        let g = rescale(&f1, 256.0).unwrap();
        let b = g.axes()[0];
        assert_eq!(b.weight(), 4.0);
        assert_eq!(b.center(), 1.0);
        assert_eq!(b.width(), 0.0625);
        let (lo, hi) = b.support();
        assert_eq!(lo, 1.0 - 0.03125);
        assert_eq!(hi, 1.0 + 0.03125);
        assert_eq!(g.l2_norm(), f1.l2_norm());
    }

    #[test]
    fn rescale_involution_is_exact_for_even_dyadic_scales() {
        for r in [4.0, 16.0, 64.0, 256.0] {
            let p = ExampleParams::new(3, 1, r).unwrap();
            let f = tensor(&build_f0_dk(r).unwrap(), &build_f1(&p).unwrap()).unwrap();
            let back = rescale(&rescale(&f, r).unwrap(), 1.0 / r).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn rescale_pointwise_identity() {
        // |u_f(x,t)| = R^{n/2} |u_g(Rx, R²t)|, exact for R = 64
        let r = 64.0;
        let p = ExampleParams::new(2, 1, r).unwrap();
        let f = tensor(&build_f0_dk(r).unwrap(), &build_f1(&p).unwrap()).unwrap();
        let g = rescale(&f, r).unwrap();
        let mut rng = SplitMix64::new(11);
        for _ in 0..10 {
            let x = [rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)];
            let t = rng.uniform(0.0, 1.0 / r);
            let lhs = f.evaluate(&x, t).unwrap().norm();
            let rhs = r * g.evaluate(&[r * x[0], r * x[1]], r * r * t).unwrap().norm();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn rescale_rejects_bad_scale() {
        let f = build_f0_dk(4.0).unwrap();
        assert!(rescale(&f, 0.0).is_err());
        assert!(rescale(&f, -2.0).is_err());
        assert!(rescale(&f, f64::INFINITY).is_err());
    }

    #[test]
    fn grid_refines_to_brick() {
        // k equal cells over the brick support converge to the brick value
        let (w, c, s) = (1.0, 8.0, 2.0);
        let brick = Brick1D::new(w, c, s).unwrap();
        let x = 0.3;
        let t = 0.02;
        let target = axis_factor(&brick, x, t);
        let mut prev = f64::INFINITY;
        for k in [4usize, 16, 64] {
            let grid = GridExample::new(
                vec![c - 0.5 * s],
                vec![s / k as f64],
                vec![k],
                vec![Complex64::new(w, 0.0); k],
            )
            .unwrap();
            let err = (grid.evaluate(&[x], t).unwrap() - target).norm();
            assert!(err < prev, "refinement did not improve: {prev} -> {err}");
            prev = err;
        }
        assert!(prev <= 1e-4 * target.norm());
    }

    #[test]
    fn symmetric_grid_evaluates_real_at_time_zero() {
        // Hermitian data: equal real amplitudes in two cells centered at ±c
        let c = 5.0;
        let grid = GridExample::new(
            vec![-2.0 * c],
            vec![2.0 * c],
            vec![2],
            vec![Complex64::new(1.0, 0.0); 2],
        )
        .unwrap();
        for x in [0.0, 0.7, -1.3] {
            let v = grid.evaluate(&[x], 0.0).unwrap();
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn grid_row_major_order() {
        // 2×2 grid: flat index k maps to (k/2, k%2), last axis fastest
        let amps: Vec<Complex64> = (0..4).map(|k| Complex64::new(k as f64 + 1.0, 0.0)).collect();
        let grid = GridExample::new(vec![0.0, 10.0], vec![1.0, 2.0], vec![2, 2], amps.clone()).unwrap();
        let x = [0.13, -0.07];
        let t = 0.01;
        let mut manual = Complex64::new(0.0, 0.0);
        for (k, amp) in amps.iter().enumerate() {
            let xi = [0.0 + (k / 2) as f64 + 0.5, 10.0 + ((k % 2) as f64 + 0.5) * 2.0];
            let phase = x[0] * xi[0] + x[1] * xi[1] + t * (xi[0] * xi[0] + xi[1] * xi[1]);
            manual += amp * Complex64::from_polar(1.0, phase);
        }
        manual *= grid.cell_volume() / TAU;
        let v = grid.evaluate(&x, t).unwrap();
        assert_relative_eq!(v.re, manual.re, max_relative = 1e-12);
        assert_relative_eq!(v.im, manual.im, max_relative = 1e-12);
    }

    #[test]
    fn grid_validation_errors() {
        assert!(GridExample::new(vec![], vec![], vec![], vec![]).is_err());
        assert!(GridExample::new(vec![0.0], vec![1.0], vec![1], vec![]).is_err());
        assert!(GridExample::new(vec![0.0], vec![0.0], vec![1], vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(GridExample::new(vec![0.0], vec![-1.0], vec![1], vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(GridExample::new(vec![0.0], vec![1.0], vec![2], vec![Complex64::new(1.0, 0.0)]).is_err());
        // all-zero amplitudes have zero norm
        assert!(GridExample::new(vec![0.0], vec![1.0], vec![1], vec![Complex64::new(0.0, 0.0)]).is_err());
    }

    #[test]
    fn grid_l2_norm_formula() {
        let grid = GridExample::new(
            vec![0.0],
            vec![0.25],
            vec![2],
            vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)],
        )
        .unwrap();
        // (9 + 16)·0.25 = 6.25
        assert_eq!(grid.l2_norm(), 2.5);
    }

    #[test]
    fn loader_round_trip_and_diagnostics() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("grid.json");
        fs::write(
            &good,
            r#"{"n": 1, "origin": [7.5], "spacing": [1.0], "cells": [1], "amplitudes": [[2.0, 0.0]]}"#,
        )
        .unwrap();
        let grid = load_grid_example(&good).unwrap();
        assert_eq!(grid.dim(), 1);
        assert_eq!(grid.l2_norm(), 2.0);
        // matches the one-cell construction: ξ = 8, the brick midpoint rule
        let brick_like = GridExample::new(vec![7.5], vec![1.0], vec![1], vec![Complex64::new(2.0, 0.0)]).unwrap();
        assert_eq!(grid, brick_like);

        let bad_json = dir.path().join("broken.json");
        fs::write(&bad_json, "{\"n\": 1,\n  \"origin\": [oops]}").unwrap();
        let err = load_grid_example(&bad_json).unwrap_err().to_string();
        assert!(err.contains("broken.json"), "missing path in: {err}");
        assert!(err.contains("line"), "missing location in: {err}");

        let bad_spacing = dir.path().join("spacing.json");
        fs::write(
            &bad_spacing,
            r#"{"n": 1, "origin": [0.0], "spacing": [-1.0], "cells": [1], "amplitudes": [[1.0, 0.0]]}"#,
        )
        .unwrap();
        assert!(matches!(
            load_grid_example(&bad_spacing),
            Err(Error::GridValidation { .. })
        ));

        let unknown = dir.path().join("unknown.json");
        fs::write(
            &unknown,
            r#"{"n": 1, "origin": [0.0], "spacing": [1.0], "cells": [1], "amplitudes": [[1.0, 0.0]], "extra": 1}"#,
        )
        .unwrap();
        assert!(matches!(load_grid_example(&unknown), Err(Error::GridParse { .. })));

        let missing = dir.path().join("nope.json");
        assert!(matches!(load_grid_example(&missing), Err(Error::Io { .. })));
    }

    #[test]
    fn build_example_dispatch() {
        let p = ExampleParams::new(2, 1, 64.0).unwrap();
        let ex = build_example(&p, None).unwrap();
        assert_eq!(ex.dim(), 2);
        assert_relative_eq!(ex.l2_norm(), 1.0, max_relative = 1e-15);

        let p2 = ExampleParams::new(2, 2, 64.0).unwrap();
        assert!(build_example(&p2, None).is_err());

        let grid = GridExample::new(
            vec![60.0, 60.0],
            vec![4.0, 4.0],
            vec![2, 2],
            vec![Complex64::new(0.1, 0.0); 4],
        )
        .unwrap();
        let ex = build_example(&p2, Some(grid.clone())).unwrap();
        assert_eq!(ex.dim(), 2);

        let p3 = ExampleParams::new(3, 2, 64.0).unwrap();
        let ex = build_example(&p3, Some(grid.clone())).unwrap();
        assert_eq!(ex.dim(), 3);

        // dimension mismatch between grid and m
        let p_mismatch = ExampleParams::new(3, 1, 64.0).unwrap();
        assert!(build_example(&p_mismatch, Some(grid)).is_err());
    }

    #[test]
    fn grid_tensor_factorizes() {
        let p = ExampleParams::new(2, 1, 64.0).unwrap();
        let base = GridExample::new(vec![56.0], vec![1.0], vec![16], vec![Complex64::new(0.3, 0.0); 16]).unwrap();
        let tail = build_f1(&p).unwrap();
        let gt = GridTensor::new(base.clone(), Some(tail.clone()));
        assert_eq!(gt.dim(), 2);
        let x = [-0.3, -0.25];
        let t = 0.005;
        let whole = gt.evaluate(&x, t).unwrap();
        let parts = base.evaluate(&x[..1], t).unwrap() * evaluate_separable(&tail, &x[1..], t).unwrap();
        assert_eq!(whole, parts);
        assert_eq!(gt.l2_norm(), base.l2_norm() * tail.l2_norm());
    }

    #[test]
    fn chirp_arguments_are_identical_under_rescaling() {
        // the deeper reason the pointwise identity is exact: per axis the
        // rescaled chirp arguments agree bit for bit for dyadic R
        let r: f64 = 64.0;
        let b = scale_brick(r);
        let g = Brick1D::new(b.weight() * r.sqrt(), b.center() / r, b.width() / r).unwrap();
        let mut rng = SplitMix64::new(3);
        for _ in 0..20 {
            let x = rng.uniform(-1.0, 1.0);
            let t = rng.uniform(0.0, 1.0 / r);
            let (xr, tr) = (r * x, r * r * t);
            let a_f = b.width() * (x + 2.0 * b.center() * t);
            let a_g = g.width() * (xr + 2.0 * g.center() * tr);
            assert_eq!(a_f, a_g);
            assert_eq!(t * b.width() * b.width(), tr * g.width() * g.width());
            assert_eq!(
                chirp_value(a_f, t * b.width() * b.width()),
                chirp_value(a_g, tr * g.width() * g.width())
            );
        }
    }

}
