//! Run configuration and the ladder command.
//!
//! Configuration comes from an optional JSON file merged with command-line
//! overrides; flags win. Unknown keys are rejected. The resolved config is
//! embedded verbatim in every output file so any artifact can be rerun.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::examples::load_grid_example;
use crate::rational::Rational;
use crate::report;
use crate::scaling::{ladder_exponent_predictions, run_ladder, LadderConfig};

/// All parameters of a ladder run. Every field has a default, so a config
/// file may specify any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Ambient dimension.
    pub n: usize,
    /// Number of leading (base) axes.
    pub m: usize,
    /// Lebesgue exponent, as a rational string such as "3/2".
    pub p: Rational,
    /// Frequency scales, strictly increasing.
    pub ladder: Vec<f64>,
    /// Base interval for the leading axes.
    pub e0: [f64; 2],
    /// Lattice step along the base axes.
    pub base_step: f64,
    /// Tail lattice step as a fraction of R^(-1/2).
    pub rel_step_frac: f64,
    /// Adapted-window half-width constant.
    pub c_win: f64,
    /// Time samples per window.
    pub n_t: usize,
    /// Per-axis floor defining the exceptional-set threshold.
    pub threshold_axis_floor: f64,
    /// Monte Carlo budget for the ball complement.
    pub mc_samples: usize,
    /// Collar half-width in units of R^(-1/2).
    pub collar_factor: f64,
    /// Fraction of the Monte Carlo budget spent in the collar.
    pub collar_share: f64,
    /// Root seed; per-rung seeds derive from it.
    pub seed: u64,
    /// Two-sided tolerance on the amplitude slope.
    pub tol_amplitude: f64,
    /// Two-sided tolerance on the measure slope.
    pub tol_measure: f64,
    /// One-sided tolerance on the Lp slope (measured value is a lower bound).
    pub tol_lp: f64,
    /// Largest allowed spread of |E|·R^((n-m)/2) across the ladder.
    pub measure_ratio_bound: f64,
    /// Output directory.
    pub out: PathBuf,
    /// Optional frequency-grid JSON for the base factor (required for m ≥ 2).
    pub fhat: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 2,
            m: 1,
            p: Rational::from_int(2),
            ladder: vec![256.0, 1024.0, 4096.0, 16384.0],
            e0: [-0.9, -0.1],
            base_step: 1.0 / 64.0,
            rel_step_frac: 0.125,
            c_win: 0.5,
            n_t: 33,
            threshold_axis_floor: 0.5,
            mc_samples: 100_000,
            collar_factor: 8.0,
            collar_share: 0.75,
            seed: 0,
            tol_amplitude: 0.05,
            tol_measure: 0.1,
            tol_lp: 0.1,
            measure_ratio_bound: 4.0,
            out: PathBuf::from("out"),
            fhat: None,
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct LadderOverrides {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<String>,
    pub ladder: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub mc_samples: Option<usize>,
    pub out: Option<PathBuf>,
    pub fhat: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::invalid(format!("config {}: {e}", path.display())))
    }

    pub fn apply(mut self, ov: &LadderOverrides) -> Result<Self> {
        if let Some(n) = ov.n {
            self.n = n;
        }
        if let Some(m) = ov.m {
            self.m = m;
        }
        if let Some(p) = &ov.p {
            self.p = p.parse()?;
        }
        if let Some(ladder) = &ov.ladder {
            self.ladder = ladder.clone();
        }
        if let Some(seed) = ov.seed {
            self.seed = seed;
        }
        if let Some(mc) = ov.mc_samples {
            self.mc_samples = mc;
        }
        if let Some(out) = &ov.out {
            self.out = out.clone();
        }
        if let Some(fhat) = &ov.fhat {
            self.fhat = Some(fhat.clone());
        }
        Ok(self)
    }

    /// The resolved config as a single JSON line (the reproducibility
    /// header embedded in every output file).
    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    pub fn to_ladder_config(&self) -> Result<LadderConfig> {
        let grid = match &self.fhat {
            Some(path) => Some(load_grid_example(path)?),
            None => None,
        };
        Ok(LadderConfig {
            n: self.n,
            m: self.m,
            p: self.p,
            ladder: self.ladder.clone(),
            e0: (self.e0[0], self.e0[1]),
            base_step: self.base_step,
            rel_step_frac: self.rel_step_frac,
            c_win: self.c_win,
            n_t: self.n_t,
            threshold_axis_floor: self.threshold_axis_floor,
            mc_samples: self.mc_samples,
            collar_factor: self.collar_factor,
            collar_share: self.collar_share,
            seed: self.seed,
            grid,
        })
    }
}

/// Merge the config file (if any) with the flag overrides; flags win.
pub fn resolve_config(path: Option<&Path>, ov: &LadderOverrides) -> Result<RunConfig> {
    let base = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    base.apply(ov)
}

/// Run the ladder and write results.csv, fits.json, and plot.svg.
///
/// The output directory is created and results.csv opened before any
/// computation, so an unwritable destination fails immediately. Rows are
/// flushed as rungs complete; a failing rung leaves the completed rows on
/// disk.
pub fn cmd_ladder(config: &RunConfig) -> Result<()> {
    let ladder_config = config.to_ladder_config()?;
    let predictions = ladder_exponent_predictions(config.n, config.m, config.p)?;

    fs::create_dir_all(&config.out).map_err(|e| Error::io(&config.out, e))?;
    let csv_path = config.out.join("results.csv");
    let file = fs::File::create(&csv_path).map_err(|e| Error::io(&csv_path, e))?;
    let mut csv = std::io::BufWriter::new(file);
    let header = format!("# config: {}\n{}\n", config.json(), report::RESULT_COLUMNS);
    csv.write_all(header.as_bytes()).map_err(|e| Error::io(&csv_path, e))?;
    csv.flush().map_err(|e| Error::io(&csv_path, e))?;

    let mut sink_error: Option<std::io::Error> = None;
    let outcome = run_ladder(&ladder_config, |record| {
        if sink_error.is_some() {
            return;
        }
        let row = report::result_row(record, &predictions);
        if let Err(e) = csv.write_all(row.as_bytes()).and_then(|_| csv.flush()) {
            sink_error = Some(e);
        }
    })?;
    if let Some(e) = sink_error {
        return Err(Error::io(&csv_path, e));
    }

    let fits_path = config.out.join("fits.json");
    let fits_json = report::render_fits(config, &outcome);
    fs::write(&fits_path, fits_json).map_err(|e| Error::io(&fits_path, e))?;

    let plot_path = config.out.join("plot.svg");
    let svg = report::render_plot(&outcome, &config.json());
    fs::write(&plot_path, svg).map_err(|e| Error::io(&plot_path, e))?;
    Ok(())
}

/// Write the exact exponent tables.
pub fn cmd_exponents(n_max: usize, out: &Path) -> Result<()> {
    if n_max < 3 {
        return Err(Error::invalid(format!("exponent tables need n_max ≥ 3, got {n_max}")));
    }
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let corollary = report::render_exponent_table(n_max)?;
    let path = out.join("exponents.csv");
    fs::write(&path, corollary).map_err(|e| Error::io(&path, e))?;
    let theorem = report::render_theorem_table(n_max)?;
    let path = out.join("theorem_exponents.csv");
    fs::write(&path, theorem).map_err(|e| Error::io(&path, e))?;
    Ok(())
}
