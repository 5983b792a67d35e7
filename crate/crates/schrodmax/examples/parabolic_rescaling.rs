// Parabolic rescaling in the brick parameterization is exact, not
// approximate: compare |u(x, t)| against R^{n/2} |v(Rx, R^2 t)| pointwise
// and the L2 norms bit for bit.

use schrodmax::examples::{build_f0_dk, build_f1, rescale, tensor, ExampleParams};
use schrodmax::propagator::{evaluate_separable, InitialData};

fn main() -> schrodmax::Result<()> {
    let r = 64.0;
    let params = ExampleParams::new(2, 1, r)?;
    let f = tensor(&build_f0_dk(r)?, &build_f1(&params)?)?;
    let g = rescale(&f, r)?;
    let factor = r; // R^{n/2} with n = 2

    println!("{:>24} {:>14} {:>14} {:>10}", "(x, t)", "|u_f|", "scaled |u_g|", "rel err");
    for (x, t) in [
        ([-0.5, 0.0], 1.0 / (4.0 * r)),
        ([-0.3, 0.2], 1.0 / (8.0 * r)),
        ([0.1, -0.6], 1.0 / (2.0 * r)),
    ] {
        let lhs = evaluate_separable(&f, &x, t)?.norm();
        let rhs = factor
            * evaluate_separable(&g, &[r * x[0], r * x[1]], r * r * t)?.norm();
        let rel = (lhs - rhs).abs() / lhs;
        println!(
            "({:>5.2}, {:>5.2}, {:.5}) {lhs:>14.8} {rhs:>14.8} {rel:>10.2e}",
            x[0], x[1], t
        );
    }

    println!();
    println!(
        "norms: |f| = {:.17}, |g| = {:.17}, equal bitwise: {}",
        f.l2_norm(),
        g.l2_norm(),
        f.l2_norm() == g.l2_norm()
    );
    Ok(())
}
