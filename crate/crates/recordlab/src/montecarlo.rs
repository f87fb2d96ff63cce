//! Seeded, replication-parallel simulation harness cross-validating the
//! exact laws and asymptotic expansions.
//!
//! Each replication draws one point sequence from its own RNG stream
//! (stream index = replication index) and tallies every requested record
//! statistic in a single pass, reading off the counts at each requested n
//! as the sequence grows. Per-replication counts are collected in
//! replication order and reduced sequentially, so reports are bitwise
//! identical for any thread budget.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    chain_params_hypercube, chain_params_simplex, maxima_mean_asym, pareto_mean_asym,
};
use crate::error::{Error, Result};
use crate::exactlaws::{chain_kernel, chain_moments_exact, dom_moments};
use crate::geometry::{dominates, join, sample_point, Model, Point, Region, RngStream};
use crate::records::{MaximaSet, MaximaSet2D};
use crate::specfun::{gamma_q, harmonic_f64, KahanSum};
use crate::varconstants::{v_const, vtilde_const};

/// Default master seed used by the CLI and the validation suite.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Largest n for which the chain reference moments come from the exact
/// O(n^2) recurrence; beyond this the CLT expansion is used instead.
const CHAIN_EXACT_MAX: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Pareto,
    Chain,
    Dominating,
    Maxima,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [
        Statistic::Pareto,
        Statistic::Chain,
        Statistic::Dominating,
        Statistic::Maxima,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Pareto => "pareto",
            Statistic::Chain => "chain",
            Statistic::Dominating => "dominating",
            Statistic::Maxima => "maxima",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub model: Model,
    /// Sample sizes read off shared prefixes of each replication.
    pub n_values: Vec<usize>,
    pub replications: usize,
    pub statistics: Vec<Statistic>,
    pub seed: u64,
    /// Worker threads; 0 uses the default rayon pool.
    pub threads: usize,
}

impl ExperimentConfig {
    pub fn new(model: Model, n_values: Vec<usize>, replications: usize) -> Self {
        ExperimentConfig {
            model,
            n_values,
            replications,
            statistics: Statistic::ALL.to_vec(),
            seed: DEFAULT_SEED,
            threads: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replications < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 replications, got {}",
                self.replications
            )));
        }
        if self.n_values.is_empty() || self.n_values.iter().any(|&n| n < 1) {
            return Err(Error::InvalidArgument(
                "n values must be nonempty and >= 1".into(),
            ));
        }
        if self.statistics.is_empty() {
            return Err(Error::InvalidArgument("statistic set is empty".into()));
        }
        Ok(())
    }
}

/// One (statistic, n) comparison row. `samples` holds the per-replication
/// counts (replication order) for downstream KS/CSV use; it is omitted from
/// the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct StatRow {
    pub statistic: Statistic,
    pub n: usize,
    pub replications: usize,
    pub mean: f64,
    pub variance: f64,
    pub se_mean: f64,
    pub se_variance: f64,
    pub reference_mean: Option<f64>,
    pub reference_variance: Option<f64>,
    /// "exact", "asymptotic" or "none"; documents where the reference
    /// moments come from.
    pub ref_source: &'static str,
    pub z_mean: Option<f64>,
    pub z_variance: Option<f64>,
    /// KS distance of the counts standardized by the reference moments.
    pub ks_normal: Option<f64>,
    #[serde(skip)]
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub model: &'static str,
    pub d: usize,
    pub seed: u64,
    pub replications: usize,
    pub threads: usize,
    pub rows: Vec<StatRow>,
    /// Not serialized: emitted outputs stay byte-identical across runs.
    #[serde(skip)]
    pub wall_clock_secs: f64,
}

impl ExperimentReport {
    pub fn row(&self, statistic: Statistic, n: usize) -> Option<&StatRow> {
        self.rows
            .iter()
            .find(|r| r.statistic == statistic && r.n == n)
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Per-replication tallies as `statistic,n,replication,count` rows.
    pub fn tallies_csv(&self) -> String {
        let mut out = String::from("statistic,n,replication,count\n");
        for row in &self.rows {
            for (rep, &x) in row.samples.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    row.statistic.name(),
                    row.n,
                    rep,
                    x
                ));
            }
        }
        out
    }
}

fn model_name(model: Model) -> &'static str {
    match model.kind {
        Region::Hypercube => "cube",
        Region::Simplex => "simplex",
    }
}

/// Tally all requested statistics over one sequence, reading the counts at
/// each checkpoint in `ns` (sorted ascending). Layout of the returned
/// vector: checkpoint-major, statistic order as configured.
fn replication_counts(cfg: &ExperimentConfig, ns: &[usize], rep: u64) -> Vec<u64> {
    let model = cfg.model;
    let d = model.d;
    let need_maxima = cfg
        .statistics
        .iter()
        .any(|s| matches!(s, Statistic::Pareto | Statistic::Maxima));
    let need_chain = cfg.statistics.contains(&Statistic::Chain);
    let need_dom = cfg.statistics.contains(&Statistic::Dominating);

    let mut rng = RngStream::new(cfg.seed, rep);
    let n_max = *ns.last().unwrap();
    let mut out = Vec::with_capacity(ns.len() * cfg.statistics.len());

    let mut maxima = MaximaSet::new();
    let mut maxima2 = MaximaSet2D::new();
    let mut pareto: u64 = 0;
    let mut chain: u64 = 0;
    let mut chain_top: Option<Point> = None;
    let mut dom: u64 = 0;
    let mut coord_max: Option<Point> = None;
    let mut next = 0usize;

    for i in 1..=n_max {
        let p = sample_point(model, &mut rng);
        if need_maxima {
            let is_record = if d == 2 {
                maxima2.insert(p.0[0], p.0[1])
            } else {
                maxima.insert(&p)
            };
            if is_record {
                pareto += 1;
            }
        }
        if need_chain && chain_top.as_ref().map_or(true, |t| dominates(&p, t)) {
            chain += 1;
            chain_top = Some(p.clone());
        }
        if need_dom {
            match &coord_max {
                None => {
                    dom += 1;
                    coord_max = Some(p.clone());
                }
                Some(m) => {
                    if dominates(&p, m) {
                        dom += 1;
                    }
                    coord_max = Some(join(m, &p));
                }
            }
        }
        if i == ns[next] {
            for &s in &cfg.statistics {
                out.push(match s {
                    Statistic::Pareto => pareto,
                    Statistic::Chain => chain,
                    Statistic::Dominating => dom,
                    Statistic::Maxima => {
                        if d == 2 {
                            maxima2.len() as u64
                        } else {
                            maxima.len() as u64
                        }
                    }
                });
            }
            next += 1;
            if next == ns.len() {
                break;
            }
        }
    }
    out
}

/// Sample mean, unbiased variance, and their standard errors (the variance
/// SE via the fourth central moment).
fn sample_moments(xs: &[f64]) -> (f64, f64, f64, f64) {
    let nf = xs.len() as f64;
    let mut s = KahanSum::new();
    for &x in xs {
        s.add(x);
    }
    let mean = s.value() / nf;
    let mut m2 = KahanSum::new();
    let mut m4 = KahanSum::new();
    for &x in xs {
        let d = x - mean;
        m2.add(d * d);
        m4.add(d * d * d * d);
    }
    let var = m2.value() / (nf - 1.0);
    let m4 = m4.value() / nf;
    let se_mean = (var / nf).sqrt();
    let var_of_var = (m4 - (nf - 3.0) / (nf - 1.0) * var * var) / nf;
    (mean, var, se_mean, var_of_var.max(0.0).sqrt())
}

struct RefMoments {
    mean: Option<f64>,
    var: Option<f64>,
    source: &'static str,
}

impl RefMoments {
    fn none() -> Self {
        RefMoments {
            mean: None,
            var: None,
            source: "none",
        }
    }
}

/// Reference moments for one (statistic, n): exact recurrence values where
/// available, leading asymptotics otherwise.
fn reference_moments(
    model: Model,
    statistic: Statistic,
    n: usize,
    chain_exact: Option<&crate::exactlaws::MomentTable>,
    v_d: Option<f64>,
    vtilde_d: Option<f64>,
) -> RefMoments {
    let d = model.d;
    if d == 1 {
        // all three record notions coincide with classical records
        return match statistic {
            Statistic::Maxima => RefMoments {
                mean: Some(1.0),
                var: Some(0.0),
                source: "exact",
            },
            _ => RefMoments {
                mean: Some(harmonic_f64(n, 1)),
                var: Some(harmonic_f64(n, 1) - harmonic_f64(n, 2)),
                source: "exact",
            },
        };
    }
    match statistic {
        Statistic::Chain => {
            if let Some(table) = chain_exact {
                let row = table.rows[n - 1];
                return RefMoments {
                    mean: Some(row.mean),
                    var: Some(row.var),
                    source: "exact",
                };
            }
            let params = match model.kind {
                Region::Simplex => chain_params_simplex(d),
                Region::Hypercube => chain_params_hypercube(d),
            };
            match params {
                Ok(p) => RefMoments {
                    mean: Some(p.mu * (n as f64).ln() + p.c1),
                    var: Some(p.sigma2 * (n as f64).ln() + p.c2),
                    source: "asymptotic",
                },
                Err(_) => RefMoments::none(),
            }
        }
        Statistic::Dominating => match dom_moments(model, n) {
            Ok((m, v)) => RefMoments {
                mean: Some(m),
                var: Some(v),
                source: "exact",
            },
            Err(_) => RefMoments::none(),
        },
        Statistic::Pareto => {
            if model.kind != Region::Simplex {
                return RefMoments::none();
            }
            let mean = pareto_mean_asym(d, n as f64).ok().map(|m| m.value);
            let var = v_d.map(|v| v * (n as f64).powf(1.0 - 1.0 / d as f64));
            RefMoments {
                mean,
                var,
                source: "asymptotic",
            }
        }
        Statistic::Maxima => {
            if model.kind != Region::Simplex {
                return RefMoments::none();
            }
            let mean = maxima_mean_asym(d, n as f64).ok().map(|m| m.value);
            let var = vtilde_d.map(|v| v * (n as f64).powf(1.0 - 1.0 / d as f64));
            RefMoments {
                mean,
                var,
                source: "asymptotic",
            }
        }
    }
}

/// Run the experiment: replication-parallel tallies, sequential reduction.
/// Deterministic for a fixed seed under any thread budget.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut ns = cfg.n_values.clone();
    ns.sort_unstable();
    ns.dedup();

    let worker = |rep: usize| replication_counts(cfg, &ns, rep as u64);
    let counts: Vec<Vec<u64>> = if cfg.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| (0..cfg.replications).into_par_iter().map(worker).collect())
    } else {
        (0..cfg.replications).into_par_iter().map(worker).collect()
    };

    // expensive references computed once per experiment
    let d = cfg.model.d;
    let n_max = *ns.last().unwrap();
    let chain_exact = if d >= 2 && cfg.statistics.contains(&Statistic::Chain) && n_max <= CHAIN_EXACT_MAX
    {
        Some(chain_moments_exact(cfg.model, n_max)?)
    } else {
        None
    };
    let want_pareto = cfg.statistics.contains(&Statistic::Pareto);
    let want_maxima = cfg.statistics.contains(&Statistic::Maxima);
    let simplex = cfg.model.kind == Region::Simplex;
    let v_d = if d >= 2 && simplex && want_pareto {
        v_const(d, 1e-10).ok().map(|c| c.value.value)
    } else {
        None
    };
    let vtilde_d = if d >= 2 && simplex && want_maxima {
        vtilde_const(d, 1e-10).ok().map(|c| c.value.value)
    } else {
        None
    };

    let mut rows = Vec::with_capacity(ns.len() * cfg.statistics.len());
    for (ni, &n) in ns.iter().enumerate() {
        for (si, &statistic) in cfg.statistics.iter().enumerate() {
            let idx = ni * cfg.statistics.len() + si;
            let samples: Vec<f64> = counts.iter().map(|c| c[idx] as f64).collect();
            let (mean, variance, se_mean, se_variance) = sample_moments(&samples);
            let refm = reference_moments(
                cfg.model,
                statistic,
                n,
                chain_exact.as_ref(),
                v_d,
                vtilde_d,
            );
            let z_mean = refm
                .mean
                .filter(|_| se_mean > 0.0)
                .map(|r| (mean - r) / se_mean);
            let z_variance = refm
                .var
                .filter(|_| se_variance > 0.0)
                .map(|r| (variance - r) / se_variance);
            let ks = match (refm.mean, refm.var) {
                (Some(m), Some(v)) if v > 0.0 && samples.len() >= 100 => {
                    Some(ks_normal(&samples, m, v)?)
                }
                _ => None,
            };
            rows.push(StatRow {
                statistic,
                n,
                replications: cfg.replications,
                mean,
                variance,
                se_mean,
                se_variance,
                reference_mean: refm.mean,
                reference_variance: refm.var,
                ref_source: refm.source,
                z_mean,
                z_variance,
                ks_normal: ks,
                samples,
            });
        }
    }

    Ok(ExperimentReport {
        model: model_name(cfg.model),
        d,
        seed: cfg.seed,
        replications: cfg.replications,
        threads: cfg.threads,
        rows,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Standard normal CDF via the regularized incomplete gamma:
/// `Phi(z) = erfc(-z / sqrt 2) / 2` and `erfc(x) = Q(1/2, x^2)` for x >= 0.
pub fn normal_cdf(z: f64) -> f64 {
    let q = gamma_q(0.5, z * z / 2.0).expect("gamma_q(1/2, .) converges");
    if z >= 0.0 {
        1.0 - 0.5 * q
    } else {
        0.5 * q
    }
}

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of the samples
/// standardized by the *reference* mean/variance and the standard normal.
pub fn ks_normal(samples: &[f64], ref_mean: f64, ref_var: f64) -> Result<f64> {
    if samples.len() < 100 {
        return Err(Error::InvalidArgument(format!(
            "ks_normal needs at least 100 samples, got {}",
            samples.len()
        )));
    }
    if !(ref_var > 0.0) {
        return Err(Error::ZeroVariance);
    }
    let sd = ref_var.sqrt();
    let mut z: Vec<f64> = samples.iter().map(|x| (x - ref_mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let n = z.len() as f64;
    let mut dist: f64 = 0.0;
    for (i, &zi) in z.iter().enumerate() {
        let f = normal_cdf(zi);
        dist = dist.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(dist)
}

/// Paired test of the identity `E[X_n] = sum_{k<=n} E[M_k] / k` relating
/// Pareto records to the maxima counts of the prefixes: both sides are
/// estimated from the *same* sequences, so the difference has zero mean and
/// small variance.
#[derive(Debug, Clone, Serialize)]
pub struct MeanRelationReport {
    pub model: &'static str,
    pub d: usize,
    pub n: usize,
    pub replications: usize,
    pub pareto_mean: f64,
    pub maxima_sum_mean: f64,
    pub difference: f64,
    pub se_difference: f64,
}

pub fn mean_relation_check(
    model: Model,
    n: usize,
    replications: usize,
    seed: u64,
) -> Result<MeanRelationReport> {
    if n > 200 {
        return Err(Error::InvalidArgument(format!(
            "mean_relation_check is O(n^2) per replication; n={n} > 200"
        )));
    }
    if replications < 2 {
        return Err(Error::InvalidArgument("need at least 2 replications".into()));
    }
    let pairs: Vec<(f64, f64)> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RngStream::new(seed, rep as u64);
            let mut maxima = MaximaSet::new();
            let mut records = 0.0f64;
            let mut weighted = KahanSum::new();
            for k in 1..=n {
                let p = sample_point(model, &mut rng);
                if maxima.insert(&p) {
                    records += 1.0;
                }
                weighted.add(maxima.len() as f64 / k as f64);
            }
            (records, weighted.value())
        })
        .collect();

    let diffs: Vec<f64> = pairs.iter().map(|&(a, b)| a - b).collect();
    let (diff_mean, diff_var, se, _) = sample_moments(&diffs);
    let a_mean = pairs.iter().map(|p| p.0).sum::<f64>() / replications as f64;
    let b_mean = pairs.iter().map(|p| p.1).sum::<f64>() / replications as f64;
    let _ = diff_var;
    Ok(MeanRelationReport {
        model: model_name(model),
        d: model.d,
        n,
        replications,
        pareto_mean: a_mean,
        maxima_sum_mean: b_mean,
        difference: diff_mean,
        se_difference: se,
    })
}

/// Chi-square goodness-of-fit of the empirical law of `I_n` (the number of
/// later arrivals dominating the first point) against the kernel
/// `pi_{n,k}`. Bins are pooled left to right until each expected count is
/// at least 5.
#[derive(Debug, Clone, Serialize)]
pub struct KernelCheckReport {
    pub model: &'static str,
    pub d: usize,
    pub n: usize,
    pub replications: usize,
    pub bins: usize,
    pub chi_square: f64,
    pub dof: usize,
    pub p_value: f64,
}

pub fn empirical_kernel_check(
    model: Model,
    n: usize,
    replications: usize,
    seed: u64,
) -> Result<KernelCheckReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("kernel check needs n >= 2".into()));
    }
    if replications < 100 {
        return Err(Error::InvalidArgument(
            "kernel check needs at least 100 replications".into(),
        ));
    }
    let kernel = chain_kernel(model, n)?;
    let observed: Vec<usize> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RngStream::new(seed, rep as u64);
            let first = sample_point(model, &mut rng);
            let mut k = 0usize;
            for _ in 1..n {
                let p = sample_point(model, &mut rng);
                if dominates(&p, &first) {
                    k += 1;
                }
            }
            k
        })
        .collect();
    let mut hist = vec![0u64; n];
    for &k in &observed {
        hist[k] += 1;
    }

    // pool bins so every expected count is >= 5; fold the remainder into
    // the last bin
    let reps_f = replications as f64;
    let mut pooled: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut acc_o = 0.0;
    let mut acc_e = 0.0;
    for k in 0..n {
        acc_o += hist[k] as f64;
        acc_e += reps_f * kernel.probs[k];
        if acc_e >= 5.0 {
            pooled.push((acc_o, acc_e));
            acc_o = 0.0;
            acc_e = 0.0;
        }
    }
    if acc_e > 0.0 {
        if let Some(last) = pooled.last_mut() {
            last.0 += acc_o;
            last.1 += acc_e;
        }
    }
    if pooled.len() < 2 {
        return Err(Error::InvalidArgument(
            "kernel check: fewer than 2 pooled bins; increase replications".into(),
        ));
    }
    let chi_square: f64 = pooled.iter().map(|&(o, e)| (o - e) * (o - e) / e).sum();
    let dof = pooled.len() - 1;
    let p_value = gamma_q(dof as f64 / 2.0, chi_square / 2.0)?;
    Ok(KernelCheckReport {
        model: model_name(model),
        d: model.d,
        n,
        replications,
        bins: pooled.len(),
        chi_square,
        dof,
        p_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(d: usize) -> Model {
        Model::simplex(d).unwrap()
    }

    fn cube(d: usize) -> Model {
        Model::hypercube(d).unwrap()
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::new(simplex(2), vec![10], 2);
        assert!(run_experiment(&cfg).is_ok());
        cfg.replications = 1;
        assert!(run_experiment(&cfg).is_err());
        cfg.replications = 2;
        cfg.n_values = vec![];
        assert!(run_experiment(&cfg).is_err());
        cfg.n_values = vec![0];
        assert!(run_experiment(&cfg).is_err());
        cfg.n_values = vec![10];
        cfg.statistics = vec![];
        assert!(run_experiment(&cfg).is_err());
    }

    #[test]
    fn deterministic_across_thread_budgets() {
        let mut reports = Vec::new();
        for &threads in &[1usize, 4, 16] {
            let mut cfg = ExperimentConfig::new(simplex(2), vec![50, 120], 64);
            cfg.threads = threads;
            reports.push(run_experiment(&cfg).unwrap());
        }
        for r in &reports[1..] {
            assert_eq!(r.rows.len(), reports[0].rows.len());
            for (a, b) in r.rows.iter().zip(&reports[0].rows) {
                assert_eq!(a.samples, b.samples);
                assert_eq!(a.mean.to_bits(), b.mean.to_bits());
                assert_eq!(a.variance.to_bits(), b.variance.to_bits());
            }
        }
    }

    #[test]
    fn d1_statistics_match_classical_records() {
        // at d = 1 every record notion reduces to classical records with
        // mean H_n; the maxima count is identically 1
        for model in [simplex(1), cube(1)] {
            let cfg = ExperimentConfig::new(model, vec![100], 2000);
            let report = run_experiment(&cfg).unwrap();
            for s in [Statistic::Pareto, Statistic::Chain, Statistic::Dominating] {
                let row = report.row(s, 100).unwrap();
                assert_eq!(row.ref_source, "exact");
                assert!(
                    row.z_mean.unwrap().abs() <= 4.0,
                    "{} z={:?}",
                    s.name(),
                    row.z_mean
                );
            }
            let row = report.row(Statistic::Maxima, 100).unwrap();
            assert_eq!(row.mean, 1.0);
            assert_eq!(row.variance, 0.0);
            assert!(row.ks_normal.is_none());
        }
    }

    #[test]
    fn chain_and_dominating_match_exact_references() {
        for model in [simplex(2), cube(3)] {
            let mut cfg = ExperimentConfig::new(model, vec![1000], 600);
            cfg.statistics = vec![Statistic::Chain, Statistic::Dominating];
            let report = run_experiment(&cfg).unwrap();
            for s in [Statistic::Chain, Statistic::Dominating] {
                let row = report.row(s, 1000).unwrap();
                assert_eq!(row.ref_source, "exact");
                assert!(row.z_mean.unwrap().abs() <= 4.0, "{}: {:?}", s.name(), row);
                assert!(row.z_variance.unwrap().abs() <= 4.0, "{}: {:?}", s.name(), row);
                assert!(row.ks_normal.is_some());
            }
        }
    }

    #[test]
    fn ks_normal_behaviour() {
        // Box-Muller standard normals
        let mut rng = RngStream::new(7, 0);
        let mut xs = Vec::with_capacity(20_000);
        while xs.len() < 20_000 {
            let u = rng.uniform().max(1e-15);
            let v = rng.uniform();
            let r = (-2.0 * u.ln()).sqrt();
            xs.push(r * (2.0 * std::f64::consts::PI * v).cos());
            xs.push(r * (2.0 * std::f64::consts::PI * v).sin());
        }
        assert!(ks_normal(&xs, 0.0, 1.0).unwrap() <= 0.01);
        // constant sample standardized by its own mean
        let c = vec![3.0; 500];
        assert!((ks_normal(&c, 3.0, 1.0).unwrap() - 0.5).abs() < 1e-12);
        // error paths
        assert!(matches!(
            ks_normal(&c, 3.0, 0.0),
            Err(Error::ZeroVariance)
        ));
        assert!(ks_normal(&xs[..50], 0.0, 1.0).is_err());
    }

    #[test]
    fn normal_cdf_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-14);
        assert!((normal_cdf(1.96) - 0.975_002_104_851_780).abs() < 1e-10);
        assert!((normal_cdf(-1.0) - 0.158_655_253_931_457).abs() < 1e-10);
        assert!((normal_cdf(1.0) + normal_cdf(-1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mean_relation_identity_holds() {
        // d = 1: the weighted maxima sum is H_n exactly, so the difference
        // is a centered record count
        let r = mean_relation_check(simplex(1), 60, 2000, DEFAULT_SEED).unwrap();
        assert!((r.maxima_sum_mean - harmonic_f64(60, 1)).abs() < 1e-10);
        assert!(r.difference.abs() <= 4.0 * r.se_difference, "{r:?}");
        // d = 2 and 3 paired identity
        for d in [2usize, 3] {
            let r = mean_relation_check(simplex(d), 50, 3000, DEFAULT_SEED).unwrap();
            assert!(r.difference.abs() <= 4.0 * r.se_difference, "{r:?}");
        }
        assert!(mean_relation_check(simplex(2), 201, 100, 1).is_err());
    }

    #[test]
    fn kernel_chi_square_accepts() {
        for model in [simplex(2), cube(2)] {
            let r = empirical_kernel_check(model, 8, 4000, DEFAULT_SEED).unwrap();
            assert!(r.p_value > 1e-3, "{r:?}");
            assert!(r.bins >= 2);
        }
    }

    #[test]
    fn report_emitters() {
        let mut cfg = ExperimentConfig::new(simplex(2), vec![30], 120);
        cfg.statistics = vec![Statistic::Chain];
        let report = run_experiment(&cfg).unwrap();
        let js = report.json();
        assert!(js.contains("\"model\": \"simplex\""));
        assert!(js.contains("\"ref_source\": \"exact\""));
        assert!(!js.contains("samples"));
        let csv = report.tallies_csv();
        assert!(csv.starts_with("statistic,n,replication,count\n"));
        assert_eq!(csv.lines().count(), 1 + 120);
    }
}
