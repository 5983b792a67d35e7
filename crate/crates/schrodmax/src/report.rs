//! Artifact emission: CSV rows, fit summaries, plots, exponent tables.
//!
//! Every artifact embeds the resolved configuration, and every number is
//! formatted through deterministic shortest-round-trip rendering, so a
//! rerun with the same config and seed is byte-identical.

use serde::Serialize;

use crate::cli::RunConfig;
use crate::error::Result;
use crate::rational::Rational;
use crate::scaling::{
    gamma_conjectured, p0, p1, theorem_exponent, ExponentPredictions, FitResult, LadderOutcome,
    LadderRecord,
};

/// Column header of results.csv. Stable; documented in the README.
pub const RESULT_COLUMNS: &str = "r,n,m,p,seed,peak,measure,lp_value,threshold,\
pred_amplitude,pred_amplitude_decimal,pred_measure,pred_measure_decimal,\
pred_lp,pred_lp_decimal,certificate_ok";

/// One results.csv line (trailing newline included).
///
/// `certificate_ok` states the deterministic lower-bound inequality
/// lp_value ≥ threshold·measure^(1/p); exact as written for unit-norm data,
/// which all built-in constructions are.
pub fn result_row(record: &LadderRecord, pred: &ExponentPredictions) -> String {
    let p = record.p.to_f64();
    let certificate = record.lp_value >= record.threshold * record.measure.powf(1.0 / p);
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        record.r,
        record.n,
        record.m,
        record.p,
        record.seed,
        record.peak,
        record.measure,
        record.lp_value,
        record.threshold,
        pred.amplitude,
        pred.amplitude.decimal(12),
        pred.measure,
        pred.measure.decimal(12),
        pred.lp,
        pred.lp.decimal(12),
        certificate,
    )
}

#[derive(Serialize)]
struct ExactDecimal {
    exact: String,
    decimal: f64,
}

impl From<Rational> for ExactDecimal {
    fn from(v: Rational) -> Self {
        ExactDecimal { exact: v.to_string(), decimal: v.to_f64() }
    }
}

#[derive(Serialize)]
struct PredictionsJson {
    amplitude: ExactDecimal,
    measure: ExactDecimal,
    lp: ExactDecimal,
}

#[derive(Serialize)]
struct FitEntry {
    slope: f64,
    intercept: f64,
    max_residual: f64,
    points: usize,
    predicted: ExactDecimal,
    tolerance: f64,
    one_sided: bool,
    pass: bool,
}

#[derive(Serialize)]
struct FitsJson {
    amplitude: FitEntry,
    measure: FitEntry,
    lp: FitEntry,
}

#[derive(Serialize)]
struct MeasureRatioJson {
    /// |E|·R^((n−m)/2) per rung, in ladder order.
    values: Vec<f64>,
    min: f64,
    max: f64,
    spread: f64,
    bound: f64,
    pass: bool,
}

#[derive(Serialize)]
struct FitsFile<'a> {
    config: &'a RunConfig,
    predictions: PredictionsJson,
    insufficient_points: bool,
    fits: Option<FitsJson>,
    measure_ratio: Option<MeasureRatioJson>,
}

fn fit_entry(fit: &FitResult, predicted: Rational, tolerance: f64, one_sided: bool) -> FitEntry {
    let target = predicted.to_f64();
    let pass = if one_sided {
        fit.slope >= target - tolerance
    } else {
        (fit.slope - target).abs() <= tolerance
    };
    FitEntry {
        slope: fit.slope,
        intercept: fit.intercept,
        max_residual: fit.max_residual,
        points: fit.points,
        predicted: predicted.into(),
        tolerance,
        one_sided,
        pass,
    }
}

/// fits.json: the three regressions against their predictions, plus the
/// measure-ratio spread. A single-rung ladder gets the explicit
/// insufficient-points marker instead of fits.
pub fn render_fits(config: &RunConfig, outcome: &LadderOutcome) -> String {
    let pred = &outcome.predictions;
    let fits = outcome.fits.as_ref().map(|f| FitsJson {
        amplitude: fit_entry(&f.amplitude, pred.amplitude, config.tol_amplitude, false),
        measure: fit_entry(&f.measure, pred.measure, config.tol_measure, false),
        lp: fit_entry(&f.lp, pred.lp, config.tol_lp, true),
    });
    let measure_ratio = (!outcome.records.is_empty()).then(|| {
        let exponent = -pred.measure.to_f64();
        let values: Vec<f64> = outcome
            .records
            .iter()
            .map(|rec| rec.measure * rec.r.powf(exponent))
            .collect();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(0.0, f64::max);
        let spread = max / min;
        MeasureRatioJson {
            values,
            min,
            max,
            spread,
            bound: config.measure_ratio_bound,
            pass: spread <= config.measure_ratio_bound,
        }
    });
    let file = FitsFile {
        config,
        predictions: PredictionsJson {
            amplitude: pred.amplitude.into(),
            measure: pred.measure.into(),
            lp: pred.lp.into(),
        },
        insufficient_points: outcome.fits.is_none(),
        fits,
        measure_ratio,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain struct serializes");
    text.push('\n');
    text
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const PLOT_W: f64 = 720.0;
const PLOT_H: f64 = 480.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 150.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 48.0;

struct Series<'a> {
    label: &'a str,
    color: &'a str,
    points: Vec<(f64, f64)>,
    fit: Option<(f64, f64)>,
}

/// Self-contained log–log scatter of the three observables with their
/// fitted lines. No external assets; the resolved config rides along in a
/// `<desc>` element.
pub fn render_plot(outcome: &LadderOutcome, config_json: &str) -> String {
    let mut series = Vec::new();
    let fits = outcome.fits.as_ref();
    let mut push = |label, color, f: fn(&LadderRecord) -> f64, fit: Option<&FitResult>| {
        let points: Vec<(f64, f64)> = outcome
            .records
            .iter()
            .filter(|rec| f(rec) > 0.0)
            .map(|rec| (rec.r.ln(), f(rec).ln() / std::f64::consts::LN_10))
            .collect();
        series.push(Series {
            label,
            color,
            points,
            fit: fit.map(|f| (f.slope, f.intercept)),
        });
    };
    push("peak", "#1f77b4", |rec| rec.peak, fits.map(|f| &f.amplitude));
    push("|E|", "#d62728", |rec| rec.measure, fits.map(|f| &f.measure));
    push("Lp / L2", "#2ca02c", |rec| rec.lp_value, fits.map(|f| &f.lp));

    let xs: Vec<f64> = series.iter().flat_map(|s| s.points.iter().map(|p| p.0)).collect();
    let ys: Vec<f64> = series.iter().flat_map(|s| s.points.iter().map(|p| p.1)).collect();
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {PLOT_W} {PLOT_H}\" \
font-family=\"sans-serif\" font-size=\"12\">\n<desc>config: {}</desc>\n\
<rect width=\"{PLOT_W}\" height=\"{PLOT_H}\" fill=\"white\"/>\n",
        xml_escape(config_json)
    ));
    if xs.is_empty() {
        svg.push_str("<text x=\"24\" y=\"40\">no positive observables to plot</text>\n</svg>\n");
        return svg;
    }
    let pad = |lo: f64, hi: f64| {
        let span = (hi - lo).max(1e-9);
        (lo - 0.08 * span, hi + 0.08 * span)
    };
    let (x_lo, x_hi) = pad(
        xs.iter().copied().fold(f64::INFINITY, f64::min),
        xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y_lo, y_hi) = pad(
        ys.iter().copied().fold(f64::INFINITY, f64::min),
        ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let x_px = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (PLOT_W - MARGIN_L - MARGIN_R);
    let y_px = |y: f64| MARGIN_T + (y_hi - y) / (y_hi - y_lo) * (PLOT_H - MARGIN_T - MARGIN_B);

    svg.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#444\"/>\n",
        MARGIN_L,
        MARGIN_T,
        PLOT_W - MARGIN_L - MARGIN_R,
        PLOT_H - MARGIN_T - MARGIN_B
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"24\" font-size=\"14\">ladder observables vs R (log-log)</text>\n",
        MARGIN_L
    ));

    // x ticks at the rungs, labeled 2^k when R is a power of two
    for rec in &outcome.records {
        let px = x_px(rec.r.ln());
        let k = rec.r.log2().round();
        let label = if (2f64).powf(k) == rec.r {
            format!("2^{}", k as i64)
        } else {
            format!("{}", rec.r)
        };
        svg.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#bbb\"/>\n\
<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{label}</text>\n",
            MARGIN_T,
            PLOT_H - MARGIN_B,
            PLOT_H - MARGIN_B + 18.0
        ));
    }
    // y gridlines at integer powers of ten
    let mut k = y_lo.ceil() as i64;
    while (k as f64) <= y_hi {
        let py = y_px(k as f64);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"#ddd\"/>\n\
<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">1e{k}</text>\n",
            MARGIN_L,
            PLOT_W - MARGIN_R,
            MARGIN_L - 6.0,
            py + 4.0
        ));
        k += 1;
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">R</text>\n",
        (MARGIN_L + PLOT_W - MARGIN_R) / 2.0,
        PLOT_H - 8.0
    ));

    for (i, s) in series.iter().enumerate() {
        if let (Some((slope, intercept)), false) = (s.fit, s.points.is_empty()) {
            // the fit lives in natural logs; convert to the log10 y-axis
            let ln10 = std::f64::consts::LN_10;
            let y_at = |x: f64| (intercept + slope * x) / ln10;
            let (x0, x1) = (xs.iter().copied().fold(f64::INFINITY, f64::min), {
                xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            });
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-dasharray=\"5 3\"/>\n",
                x_px(x0),
                y_px(y_at(x0)),
                x_px(x1),
                y_px(y_at(x1)),
                s.color
            ));
        }
        for &(x, y) in &s.points {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{}\"/>\n",
                x_px(x),
                y_px(y),
                s.color
            ));
        }
        // legend
        let ly = MARGIN_T + 16.0 + 20.0 * i as f64;
        svg.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n\
<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            PLOT_W - MARGIN_R + 16.0,
            ly - 10.0,
            s.color,
            PLOT_W - MARGIN_R + 34.0,
            ly,
            xml_escape(s.label)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// exponents.csv: the two Corollary thresholds per dimension with the
/// critical exponent between them.
pub fn render_exponent_table(n_max: usize) -> Result<String> {
    let mut out = format!(
        "# config: {{\"n_max\":{n_max}}}\n\
n,p0_exact,p0_decimal,p1_exact,p1_decimal,p1_argmax_m,critical_exact,critical_decimal,ordering_strict\n"
    );
    for n in 3..=n_max {
        let lo = p0(n)?;
        let (hi, argmax) = p1(n)?;
        let critical = Rational::new(2 * (n as i128 + 1), n as i128)?;
        let ordering = lo < critical && critical < hi;
        out.push_str(&format!(
            "{n},{lo},{},{hi},{},{argmax},{critical},{},{ordering}\n",
            lo.decimal(12),
            hi.decimal(12),
            critical.decimal(12),
        ));
    }
    Ok(out)
}

/// The (m, p) grid the theorem table is evaluated over.
pub const THEOREM_P_GRID: [(i128, i128); 6] = [(1, 1), (3, 2), (2, 1), (12, 5), (3, 1), (4, 1)];

/// theorem_exponents.csv: the lower-bound exponent over every m ≤ n and the
/// fixed p grid, for 3 ≤ n ≤ n_max.
pub fn render_theorem_table(n_max: usize) -> Result<String> {
    let grid: Vec<Rational> = THEOREM_P_GRID
        .iter()
        .map(|&(num, den)| Rational::new(num, den))
        .collect::<Result<_>>()?;
    let grid_names: Vec<String> = grid.iter().map(|p| format!("\"{p}\"")).collect();
    let mut out = format!(
        "# config: {{\"n_max\":{n_max},\"p_grid\":[{}]}}\n\
n,m,p_exact,p_decimal,exponent_exact,exponent_decimal\n",
        grid_names.join(",")
    );
    for n in 3..=n_max {
        for m in 1..=n {
            for &p in &grid {
                let value = theorem_exponent(n, m, p)?;
                out.push_str(&format!(
                    "{n},{m},{p},{},{value},{}\n",
                    p.decimal(12),
                    value.decimal(12)
                ));
            }
        }
    }
    Ok(out)
}

/// Exercised by the verification suite: the closed forms agree where they
/// must.
pub fn conjecture_cross_check(n: usize) -> Result<bool> {
    let two = Rational::from_int(2);
    Ok(theorem_exponent(n, n, two)? == gamma_conjectured(n, two)?)
}
