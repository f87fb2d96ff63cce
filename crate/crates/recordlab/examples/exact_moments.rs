//! Exact finite-n moments of chain and dominating records, checked against
//! the d = 2 closed forms.
//!
//! Run with: `cargo run --release --example exact_moments`

use recordlab::exactlaws::{chain_moments_exact, closed_form_d2, dom_moments, D2Stat};
use recordlab::geometry::Model;
use recordlab::specfun::harmonic_f64;

fn main() {
    let simplex = Model::simplex(2).unwrap();
    let cube = Model::hypercube(2).unwrap();

    println!("chain records, simplex d=2 (mean identity (H_n + 2)/3):");
    let table = chain_moments_exact(simplex, 1000).unwrap();
    for &n in &[1usize, 3, 10, 100, 1000] {
        let row = table.rows[n - 1];
        let identity = (harmonic_f64(n, 1) + 2.0) / 3.0;
        println!(
            "  n = {n:>4}: mean {:>10.6} (identity {:>10.6})  var {:>9.6}",
            row.mean, identity, row.var
        );
    }

    println!("chain records, hypercube d=2 (variance (H_n + H_n^(2) - 2)/4):");
    let table = chain_moments_exact(cube, 100).unwrap();
    for &n in &[10usize, 100] {
        let row = table.rows[n - 1];
        let cf = closed_form_d2(D2Stat::CubeVar, n).unwrap();
        println!("  n = {n:>4}: var {:>9.6} (closed form {:>9.6})", row.var, cf);
    }

    println!("dominating records (bounded means):");
    for model in [simplex, cube] {
        let (mean, var) = dom_moments(model, 10_000).unwrap();
        println!("  {:?}: mean {mean:.8}, var {var:.8}", model.kind);
    }
}
