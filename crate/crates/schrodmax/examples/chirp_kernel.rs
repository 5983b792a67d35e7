//! Evaluate the chirp integral across a few phase regimes and print the
//! quadrature's own error estimate next to each value.

use std::f64::consts::PI;

use schrodmax::chirp::{chirp_integral, chirp_value};

fn main() -> schrodmax::Result<()> {
    let cases = [
        (0.0, 0.25),
        (2.0, 3.0),
        (PI, 0.0),
        (7.0, -11.0),
        (400.0, 250.0),
        (-3000.0, 6000.0),
    ];

    println!("{:>9} {:>9}  {:>24}  {:>9}", "a", "b", "I(a, b)", "est err");
    for (a, b) in cases {
        let res = chirp_integral(a, b)?;
        println!(
            "{a:>9.2} {b:>9.2}  {:>11.8} {:>+11.8}i  {:>9.2e}",
            res.value.re, res.value.im, res.error
        );
    }

    // At b = 0 the integral collapses to 2 sin(a/2)/a.
    let a = PI;
    let exact = 2.0 * (a / 2.0).sin() / a;
    let got = chirp_value(a, 0.0);
    println!();
    println!(
        "closed form at b = 0: |I(pi, 0) - 2 sin(pi/2)/pi| = {:.2e}",
        (got.re - exact).abs().max(got.im.abs())
    );
    Ok(())
}
