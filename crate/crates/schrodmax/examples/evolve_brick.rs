//! Build the n = 2 brick example at R = 64, evolve it, and print an
//! amplitude profile along the first coordinate at the adapted time for
//! the tube through x1 = -1/2. One point is cross-checked against direct
//! quadrature of the defining Fourier integral.

use schrodmax::examples::{build_f0_dk, build_f1, tensor, ExampleParams};
use schrodmax::propagator::{direct_oracle, evaluate_separable};

fn main() -> schrodmax::Result<()> {
    let r = 64.0;
    let params = ExampleParams::new(2, 1, r)?;
    let f = tensor(&build_f0_dk(r)?, &build_f1(&params)?)?;

    // The tube through x1 focuses at t = -x1/(2R).
    let x1 = -0.5;
    let t = -x1 / (2.0 * r);
    println!("R = {r}, t = {t:.6}");
    println!("{:>8}  {:>12}", "x1", "|u(x, t)|");
    for k in 0..=16 {
        let x = [x1 + (k as f64 - 8.0) / (8.0 * r), 0.0];
        let u = evaluate_separable(&f, &x, t)?;
        println!("{:>8.4}  {:>12.6}", x[0], u.norm());
    }

    let x = [x1, 0.0];
    let fast = evaluate_separable(&f, &x, t)?;
    let slow = direct_oracle(&f, &x, t, 2048)?;
    println!();
    println!(
        "oracle check at x = ({}, 0): |fast - slow| = {:.2e}",
        x1,
        (fast - slow).norm()
    );
    Ok(())
}
