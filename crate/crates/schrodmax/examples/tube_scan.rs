//! Scan the tube lattice at a single frequency scale and report the peak,
//! the qualification threshold, and the measured exceptional set.

use schrodmax::examples::{build_example, ExampleParams};
use schrodmax::maximal::{exceptional_set, scan_tube, tube_threshold, ScanSpec};

fn main() -> schrodmax::Result<()> {
    let r = 256.0;
    let params = ExampleParams::new(2, 1, r)?;
    let ex = build_example(&params, None)?;

    let spec = ScanSpec::for_horizon(1.0 / r);
    let field = scan_tube(ex.as_ref(), &params, &spec)?;
    println!(
        "lattice {:?} at spacings {:?}, {} points inside the ball, {} empty windows",
        field.lattice_counts(),
        field.spacings(),
        field.len(),
        field.skipped()
    );
    println!("peak sup_t |u| on the tube: {:.6}", field.max_value());

    let threshold = tube_threshold(&params, 0.5);
    let report = exceptional_set(&field, threshold)?;
    println!("threshold {:.6}", threshold);
    println!(
        "exceptional set: {} cells, |E| = {:.6}, peak/threshold = {:.3}",
        report.count,
        report.measure,
        report.peak / threshold
    );
    Ok(())
}
