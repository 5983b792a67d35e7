//! Supply the base factor from a frequency grid file instead of the
//! built-in bricks. This is the `--fhat` path of the CLI: m >= 2 has no
//! built-in base factor, so the grid is how those runs are fed.
//!
//! The file schema is documented in the README; amplitudes are [re, im]
//! pairs in row-major cell order with the last axis fastest.

use schrodmax::examples::{build_example, load_grid_example, ExampleParams};
use schrodmax::maximal::{adapted_window, sup_over_time};

fn main() -> schrodmax::Result<()> {
    let r = 64.0f64;
    let side = 8usize;
    let spacing = r.sqrt();
    let origin = r - 0.5 * side as f64 * spacing;

    // Constant amplitude over an 8 x 8 patch of sqrt(R)-cells near (R, R).
    let grid_json = serde_json::json!({
        "n": 2,
        "origin": [origin, origin],
        "spacing": [spacing, spacing],
        "cells": [side, side],
        "amplitudes": vec![[1.0, 0.0]; side * side],
    });
    let path = std::env::temp_dir().join("schrodmax_grid_demo.json");
    std::fs::write(&path, grid_json.to_string()).expect("write grid file");

    let grid = load_grid_example(&path)?;
    println!(
        "loaded grid: {:?} cells, cell volume {:.3}",
        grid.cells(),
        grid.cell_volume()
    );

    let params = ExampleParams::new(3, 2, r)?;
    let ex = build_example(&params, Some(grid))?;
    println!("built n = 3, m = 2 example, |f| = {:.6}", ex.l2_norm());

    // Maximal amplitude over the adapted window for one tube position.
    let x = [-0.5, -0.5, 0.0];
    let window = adapted_window(x[0], r, 0.5, 1.0 / r)?.expect("window nonempty");
    let sup = sup_over_time(ex.as_ref(), &x, Some(&window), 33)?;
    println!(
        "sup over t in [{:.6}, {:.6}] at x = {:?}: {:.6}",
        window.lo(),
        window.hi(),
        x,
        sup.value / ex.l2_norm()
    );
    Ok(())
}
