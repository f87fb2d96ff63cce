//! Dominance-based multivariate records and maxima: exact finite-n laws,
//! asymptotic approximations, high-precision variance constants, and a
//! reproducible Monte Carlo harness.
//!
//! Samples are drawn uniformly from two prototype regions, the hypercube
//! `[0,1]^d` and the d-dimensional simplex. For a sequence of such points the
//! crate counts Pareto records, chain records, dominating records and maxima
//! ([`records`]), evaluates their exact distributions and moments
//! ([`exactlaws`]), their asymptotic mean/variance expansions and CLT
//! parameters ([`asymptotics`]), and the leading variance constants `v_d`,
//! `vtilde_d`, `K_d` via accelerated residue series ([`varconstants`]).
//! [`montecarlo`] cross-validates everything by seeded simulation.
//!
//! See the `examples/` directory for one runnable example per capability and
//! the `recordlab` binary for the table/figure emitters.

pub mod asymptotics;
pub mod charpoly;
pub mod cli;
pub mod error;
pub mod exactlaws;
pub mod geometry;
pub mod montecarlo;
pub mod records;
pub mod specfun;
pub mod varconstants;

pub mod acceptance;

pub use error::{Error, Result};
pub use geometry::{Model, Point, Region, RngStream};
pub use records::RecordTally;
pub use specfun::SeriesValue;
