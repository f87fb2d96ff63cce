//! Seeded Monte Carlo cross-validation: empirical moments vs exact and
//! asymptotic references, a chi-square test of the chain kernel, and the
//! mean identity E[X_n] = sum E[M_k]/k.
//!
//! Run with: `cargo run --release --example simulation_report`

use recordlab::geometry::Model;
use recordlab::montecarlo::{
    empirical_kernel_check, mean_relation_check, run_experiment, ExperimentConfig, DEFAULT_SEED,
};

fn main() {
    let model = Model::simplex(2).unwrap();
    let cfg = ExperimentConfig::new(model, vec![100, 1000], 2000);
    let report = run_experiment(&cfg).unwrap();
    println!(
        "{:>10} {:>6} {:>10} {:>10} {:>12} {:>7} {:>7} {:>7}",
        "statistic", "n", "mean", "variance", "reference", "z_mean", "ks", "source"
    );
    for row in &report.rows {
        println!(
            "{:>10} {:>6} {:>10.4} {:>10.4} {:>12} {:>7} {:>7} {:>7}",
            row.statistic.name(),
            row.n,
            row.mean,
            row.variance,
            row.reference_mean.map_or("-".into(), |r| format!("{r:.4}")),
            row.z_mean.map_or("-".into(), |z| format!("{z:+.2}")),
            row.ks_normal.map_or("-".into(), |k| format!("{k:.3}")),
            row.ref_source,
        );
    }
    eprintln!("wall clock: {:.2}s", report.wall_clock_secs);

    let kc = empirical_kernel_check(model, 8, 4000, DEFAULT_SEED).unwrap();
    println!(
        "kernel chi-square at n = 8: chi2 = {:.3} with {} dof, p = {:.3}",
        kc.chi_square, kc.dof, kc.p_value
    );

    let mr = mean_relation_check(model, 100, 4000, DEFAULT_SEED).unwrap();
    println!(
        "mean identity: E[X_100] est {:.4}, sum E[M_k]/k est {:.4}, diff {:+.4} (SE {:.4})",
        mr.pareto_mean, mr.maxima_sum_mean, mr.difference, mr.se_difference
    );
}
