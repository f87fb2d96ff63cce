//! Asymptotic growth of the record counts: mean expansions, chain CLT
//! parameters, dominating-record limits.
//!
//! Run with: `cargo run --release --example asymptotic_expansions`

use recordlab::asymptotics::{
    chain_params_simplex, dom_limits, maxima_mean_asym, pareto_mean_asym, summary_json,
};
use recordlab::geometry::Model;

fn main() {
    println!("pareto / maxima means in the 3-simplex:");
    for n in [1e2, 1e4, 1e6] {
        let p = pareto_mean_asym(3, n).unwrap();
        let m = maxima_mean_asym(3, n).unwrap();
        println!("  n = {n:>9.0}: E[X_n] ~ {:>12.3}   E[M_n] ~ {:>12.3}", p.value, m.value);
    }
    let p = pareto_mean_asym(3, 1e6).unwrap();
    println!("  expansion terms at d = 3:");
    for t in &p.terms {
        println!(
            "    {:+.9} * n^{:.4}{}",
            t.coefficient,
            t.exponent,
            if t.log { " * ln n" } else { "" }
        );
    }

    let c = chain_params_simplex(3).unwrap();
    println!(
        "chain CLT, simplex d=3: mean ~ {:.9} ln n + {:.9}, var ~ {:.9} ln n + {:.9}",
        c.mu, c.c1, c.sigma2, c.c2
    );

    println!("dominating-record limits (simplex):");
    for d in 2..=7usize {
        let l = dom_limits(Model::simplex(d).unwrap()).unwrap();
        println!(
            "  d = {d}: E = {:.9}  V = {:.9}  (V / (sqrt(pi d) 4^-d) = {:.3})",
            l.mean,
            l.variance,
            l.variance / l.variance_scale
        );
    }

    println!("summary (d = 4): {}", summary_json(4).unwrap());
}
