//! Run a short scale ladder and compare the fitted log-log slopes with the
//! predicted exponents. Uses a reduced Monte Carlo budget so it finishes in
//! a few seconds; the CLI defaults are larger.

use schrodmax::rational::Rational;
use schrodmax::scaling::{run_ladder, LadderConfig};

fn main() -> schrodmax::Result<()> {
    let mut config = LadderConfig::baseline(
        2,
        1,
        Rational::from_int(2),
        vec![256.0, 1024.0, 4096.0],
    );
    config.mc_samples = 5_000;
    config.seed = 1;

    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "R", "peak", "|E|", "Lp/L2", "threshold"
    );
    let outcome = run_ladder(&config, |rec| {
        println!(
            "{:>6} {:>12.5} {:>12.3e} {:>12.5} {:>12.5}",
            rec.r, rec.peak, rec.measure, rec.lp_value, rec.threshold
        );
    })?;

    let fits = outcome.fits.expect("three rungs give a fit");
    let pred = &outcome.predictions;
    println!();
    println!(
        "amplitude slope {:.4}  (predicted {})",
        fits.amplitude.slope, pred.amplitude
    );
    println!(
        "measure   slope {:.4}  (predicted {})",
        fits.measure.slope, pred.measure
    );
    println!(
        "Lp        slope {:.4}  (predicted {}, lower bound)",
        fits.lp.slope, pred.lp
    );
    Ok(())
}
