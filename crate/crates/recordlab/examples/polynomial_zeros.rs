//! Zeros of the chain-record characteristic polynomial
//! `(z+1)...(z+d) - d!` and the dominant branch through z = 0.
//!
//! Run with: `cargo run --release --example polynomial_zeros`

use recordlab::charpoly::{branch_series_coeffs, char_zeros, dominant_branch, limit_curve};

fn main() {
    let d = 12u32;
    let spec = char_zeros(d, 1.0).unwrap();
    println!("d = {d}, y = 1: {} nonzero roots", spec.lambdas.len());
    for z in &spec.lambdas {
        println!("  {:>10.6} {:+.6}i", z.re, z.im);
    }

    // normalized zeros approach the curve |z^-z (1+z)^(1+z)| = 1
    let curve = limit_curve(200).unwrap();
    let worst = spec
        .lambdas
        .iter()
        .map(|z| {
            let zn = z / d as f64;
            curve.iter().map(|w| (w - zn).norm()).fold(f64::MAX, f64::min)
        })
        .fold(0.0f64, f64::max);
    println!("max distance of lambda/d to the limit curve: {worst:.4}");

    let [a1, a2, a3] = branch_series_coeffs(3);
    println!("branch series at d = 3: lambda(e^eta) = {a1:.9} eta + {a2:.9} eta^2 + {a3:.9} eta^3 + ...");
    for y in [0.8, 0.9, 1.0, 1.1, 1.2] {
        println!("  lambda_3({y:.1}) = {:+.9}", dominant_branch(3, y).unwrap());
    }
}
