//! Command-line driver: table and figure emitters plus the validation
//! suite. Every run echoes a resolved-config header; numbers are printed
//! with 15 significant digits and all emitted outputs are byte-identical
//! for identical invocations and seeds (timings go to stderr).

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::acceptance;
use crate::asymptotics::{
    chain_params_hypercube, chain_params_simplex, dom_limits, maxima_mean_asym, pareto_mean_asym,
    record_variance_asym, VarianceKind,
};
use crate::charpoly::zeros_csv;
use crate::error::{Error, Result};
use crate::exactlaws::{chain_moments_exact, dom_moments};
use crate::geometry::{Model, Region};
use crate::montecarlo::{run_experiment, ExperimentConfig, Statistic, DEFAULT_SEED};
use crate::varconstants::{constants_csv, k_const, v_const, vtilde_const};

#[derive(Parser)]
#[command(
    name = "recordlab",
    version,
    about = "Multivariate records and maxima: exact laws, asymptotics, constants, simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Cube,
    Simplex,
}

impl ModelArg {
    fn to_model(self, d: usize) -> Result<Model> {
        match self {
            ModelArg::Cube => Model::hypercube(d),
            ModelArg::Simplex => Model::simplex(d),
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModelArg::Cube => "cube",
            ModelArg::Simplex => "simplex",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Double,
    /// double-double evaluation is not implemented; accepted for interface
    /// stability and mapped to double with a warning
    Dd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatArg {
    Pareto,
    Chain,
    Dominating,
    Maxima,
}

impl StatArg {
    fn to_stat(self) -> Statistic {
        match self {
            StatArg::Pareto => Statistic::Pareto,
            StatArg::Chain => Statistic::Chain,
            StatArg::Dominating => Statistic::Dominating,
            StatArg::Maxima => Statistic::Maxima,
        }
    }

    fn name(self) -> &'static str {
        self.to_stat().name()
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Sampling region
    #[arg(long, value_enum, default_value_t = ModelArg::Simplex)]
    model: ModelArg,
    /// Dimension
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Master seed
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutArg::Csv)]
    out: OutArg,
    /// Floating-point mode
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Monte Carlo harness
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Sample size; repeatable
        #[arg(long = "n", required = true)]
        n: Vec<usize>,
        /// Replications
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        /// Statistic; repeatable (default: all four)
        #[arg(long = "stat", value_enum)]
        stats: Vec<StatArg>,
        /// Worker threads (0 = default pool); env override RECORDLAB_THREADS
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Exact finite-n moment tables (chain and dominating records)
    Exact {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "stat", value_enum)]
        stat: StatArg,
        #[arg(long = "n", required = true)]
        n: Vec<usize>,
    },
    /// Asymptotic moment tables
    Asymptotic {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "stat", value_enum)]
        stat: StatArg,
        #[arg(long = "n", required = true)]
        n: Vec<usize>,
    },
    /// High-precision variance constants v_d, vtilde_d, K_d
    Constants {
        /// Comma-separated subset of v,vtilde,K
        #[arg(long, default_value = "v,vtilde,K")]
        which: String,
        /// Single dimension (overrides --dmax)
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 12)]
        dmax: usize,
        /// Requested series tolerance
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
        precision: PrecisionArg,
    },
    /// Characteristic-polynomial zeros and the limit curve (Fig. 4 data)
    Zeros {
        #[arg(long, default_value_t = 50)]
        dmax: u32,
        /// Points on the limit curve
        #[arg(long, default_value_t = 200)]
        resolution: usize,
    },
    /// Run the full validation suite; nonzero exit on any failure
    Validate,
    /// Figure data emitters
    Figure {
        /// Figure name (supported: dom-rec)
        name: String,
    },
}

/// 15 significant digits, plain decimal inside a sane range and scientific
/// outside it.
fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        let decimals = (14 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.14e}")
    }
}

fn header(command: &str, fields: &[(&str, String)]) {
    let mut line = format!(
        "# recordlab {} | command={command}",
        env!("CARGO_PKG_VERSION")
    );
    for (k, v) in fields {
        line.push_str(&format!(" {k}={v}"));
    }
    println!("{line}");
}

fn warn_precision(p: PrecisionArg) {
    if p == PrecisionArg::Dd {
        eprintln!("warning: double-double mode is not implemented; using double");
    }
}

fn threads_from(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("RECORDLAB_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn moment_rows_out(out: OutArg, model: &str, d: usize, rows: &[(usize, f64, f64)]) {
    match out {
        OutArg::Csv => {
            println!("n,mean,variance");
            for &(n, m, v) in rows {
                println!("{n},{},{}", sig15(m), sig15(v));
            }
        }
        OutArg::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|&(n, m, v)| serde_json::json!({"n": n, "mean": m, "variance": v}))
                .collect();
            let doc = serde_json::json!({"model": model, "d": d, "rows": rows});
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
}

fn cmd_simulate(
    common: CommonArgs,
    n: Vec<usize>,
    reps: usize,
    stats: Vec<StatArg>,
    threads: Option<usize>,
) -> Result<i32> {
    let model = common.model.to_model(common.d)?;
    let threads = threads_from(threads);
    let stats: Vec<Statistic> = if stats.is_empty() {
        Statistic::ALL.to_vec()
    } else {
        stats.iter().map(|s| s.to_stat()).collect()
    };
    header(
        "simulate",
        &[
            ("model", common.model.name().into()),
            ("d", common.d.to_string()),
            ("n", format!("{n:?}")),
            ("reps", reps.to_string()),
            ("stats", stats.iter().map(|s| s.name()).collect::<Vec<_>>().join("+")),
            ("seed", format!("{:#x}", common.seed)),
            ("threads", threads.to_string()),
            ("out", if common.out == OutArg::Json { "json".into() } else { "csv".into() }),
        ],
    );
    warn_precision(common.precision);
    let mut cfg = ExperimentConfig::new(model, n, reps);
    cfg.statistics = stats;
    cfg.seed = common.seed;
    cfg.threads = threads;
    let report = run_experiment(&cfg)?;
    match common.out {
        OutArg::Json => println!("{}", report.json()),
        OutArg::Csv => print!("{}", report.tallies_csv()),
    }
    eprintln!("# wall_clock_secs={:.3}", report.wall_clock_secs);
    Ok(0)
}

fn cmd_exact(common: CommonArgs, stat: StatArg, ns: Vec<usize>) -> Result<i32> {
    let model = common.model.to_model(common.d)?;
    header(
        "exact",
        &[
            ("model", common.model.name().into()),
            ("d", common.d.to_string()),
            ("stat", stat.name().into()),
            ("n", format!("{ns:?}")),
            ("seed", format!("{:#x}", common.seed)),
        ],
    );
    warn_precision(common.precision);
    let n_max = *ns.iter().max().unwrap();
    let rows: Vec<(usize, f64, f64)> = match stat {
        StatArg::Chain => {
            let table = chain_moments_exact(model, n_max)?;
            ns.iter().map(|&n| {
                let r = table.rows[n - 1];
                (n, r.mean, r.var)
            }).collect()
        }
        StatArg::Dominating => ns
            .iter()
            .map(|&n| dom_moments(model, n).map(|(m, v)| (n, m, v)))
            .collect::<Result<_>>()?,
        StatArg::Pareto | StatArg::Maxima => {
            return Err(Error::InvalidArgument(format!(
                "no exact finite-n law is implemented for `{}`; use `asymptotic` or `simulate`",
                stat.name()
            )));
        }
    };
    moment_rows_out(common.out, common.model.name(), common.d, &rows);
    Ok(0)
}

fn cmd_asymptotic(common: CommonArgs, stat: StatArg, ns: Vec<usize>) -> Result<i32> {
    let model = common.model.to_model(common.d)?;
    header(
        "asymptotic",
        &[
            ("model", common.model.name().into()),
            ("d", common.d.to_string()),
            ("stat", stat.name().into()),
            ("n", format!("{ns:?}")),
        ],
    );
    warn_precision(common.precision);
    let d = common.d;
    let rows: Vec<(usize, f64, f64)> = match (stat, model.kind) {
        (StatArg::Pareto, Region::Simplex) => ns
            .iter()
            .map(|&n| {
                let m = pareto_mean_asym(d, n as f64)?.value;
                let v = record_variance_asym(VarianceKind::Pareto, d, n as f64)?;
                Ok((n, m, v))
            })
            .collect::<Result<_>>()?,
        (StatArg::Maxima, Region::Simplex) => ns
            .iter()
            .map(|&n| {
                let m = maxima_mean_asym(d, n as f64)?.value;
                let v = record_variance_asym(VarianceKind::Maxima, d, n as f64)?;
                Ok((n, m, v))
            })
            .collect::<Result<_>>()?,
        (StatArg::Chain, kind) => {
            let (p, vk) = match kind {
                Region::Simplex => (chain_params_simplex(d)?, VarianceKind::ChainSimplex),
                Region::Hypercube => (chain_params_hypercube(d)?, VarianceKind::ChainHypercube),
            };
            ns.iter()
                .map(|&n| {
                    let m = p.mu * (n as f64).ln() + p.c1;
                    let v = record_variance_asym(vk, d, n as f64)?;
                    Ok((n, m, v))
                })
                .collect::<Result<_>>()?
        }
        (StatArg::Dominating, _) => {
            let l = dom_limits(model)?;
            ns.iter().map(|&n| (n, l.mean, l.variance)).collect()
        }
        (StatArg::Pareto | StatArg::Maxima, Region::Hypercube) => {
            return Err(Error::InvalidArgument(format!(
                "no hypercube asymptotic is implemented for `{}`",
                stat.name()
            )));
        }
    };
    moment_rows_out(common.out, common.model.name(), common.d, &rows);
    Ok(0)
}

fn cmd_constants(
    which: String,
    d: Option<usize>,
    dmax: usize,
    eps: f64,
    precision: PrecisionArg,
) -> Result<i32> {
    let names: Vec<&str> = which.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    for n in &names {
        if !matches!(*n, "v" | "vtilde" | "K") {
            return Err(Error::InvalidArgument(format!(
                "unknown constant `{n}` (expected v, vtilde, K)"
            )));
        }
    }
    let ds: Vec<usize> = match d {
        Some(d) => vec![d],
        None => (2..=dmax).collect(),
    };
    header(
        "constants",
        &[
            ("which", names.join("+")),
            ("d", d.map_or(format!("2..={dmax}"), |d| d.to_string())),
            ("eps", format!("{eps:e}")),
        ],
    );
    warn_precision(precision);
    if names.len() == 3 && d.is_none() {
        // the full three-column table
        print!("{}", constants_csv(dmax, eps)?);
        return Ok(0);
    }
    println!("d,name,value,err,value_10dp");
    for &d in &ds {
        for name in &names {
            let value = match *name {
                "v" => v_const(d, eps)?.value,
                "vtilde" => vtilde_const(d, eps)?.value,
                _ => k_const(d, eps)?.value,
            };
            println!(
                "{d},{name},{},{:.3e},{:.10}",
                sig15(value.value),
                value.err,
                value.value
            );
        }
    }
    Ok(0)
}

fn cmd_validate() -> Result<i32> {
    header("validate", &[("seed", format!("{DEFAULT_SEED:#x}")), ("criteria", "1..=10".into())]);
    let outcomes = acceptance::run_all();
    let mut ok = true;
    for c in &outcomes {
        println!("{}", acceptance::status_line(c));
        ok &= c.passed;
    }
    println!(
        "validate: {}/{} criteria passed",
        outcomes.iter().filter(|c| c.passed).count(),
        outcomes.len()
    );
    Ok(if ok { 0 } else { 1 })
}

fn cmd_figure(name: String) -> Result<i32> {
    match name.as_str() {
        "dom-rec" => {
            header("figure", &[("name", name.clone())]);
            println!("model,d,mean,variance,mean_gap_scale,variance_scale");
            for d in 2..=7usize {
                let l = dom_limits(Model::simplex(d)?)?;
                println!(
                    "simplex,{d},{},{},{},{}",
                    sig15(l.mean),
                    sig15(l.variance),
                    sig15(l.mean_gap_scale),
                    sig15(l.variance_scale)
                );
            }
            Ok(0)
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown figure `{other}` (supported: dom-rec)"
        ))),
    }
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate {
            common,
            n,
            reps,
            stats,
            threads,
        } => cmd_simulate(common, n, reps, stats, threads),
        Command::Exact { common, stat, n } => cmd_exact(common, stat, n),
        Command::Asymptotic { common, stat, n } => cmd_asymptotic(common, stat, n),
        Command::Constants {
            which,
            d,
            dmax,
            eps,
            precision,
        } => cmd_constants(which, d, dmax, eps, precision),
        Command::Zeros { dmax, resolution } => {
            header(
                "zeros",
                &[("dmax", dmax.to_string()), ("resolution", resolution.to_string())],
            );
            print!("{}", zeros_csv(dmax, resolution)?);
            Ok(0)
        }
        Command::Validate => cmd_validate(),
        Command::Figure { name } => cmd_figure(name),
    }
}

/// Parse and run; returns the process exit code (0 success, 1 validation
/// failure, 2 usage error).
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
