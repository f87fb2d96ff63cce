//! Special functions and series machinery shared by the analytic modules.

pub mod accel;
pub mod gamma;
pub mod pfq;
pub mod quad;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub use accel::{euler_sum, euler_transform, hurwitz_zeta, richardson_tail, zeta_tail_sum, KahanSum};
pub use gamma::{gamma_q, gamma_re, ln_gamma, ln_gamma_re, polygamma};
pub use pfq::p_f_q;
pub use quad::{quad1d, quad2d_unit_square};

/// A numeric result carrying a certified absolute error bound and the number
/// of terms (or evaluations) it took.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub err: f64,
    pub terms_used: usize,
}

impl SeriesValue {
    pub fn new(value: f64, err: f64, terms_used: usize) -> Self {
        debug_assert!(err >= 0.0 && err.is_finite());
        SeriesValue {
            value,
            err,
            terms_used,
        }
    }

    pub fn exact(value: f64) -> Self {
        SeriesValue {
            value,
            err: 0.0,
            terms_used: 0,
        }
    }
}

/// Generalized harmonic number `H_n^{(a)} = sum_{i<=n} i^{-a}`, exact and as
/// a float.
#[derive(Debug, Clone)]
pub struct Harmonic {
    pub exact: Option<BigRational>,
    pub value: f64,
}

const HARMONIC_EXACT_MAX: usize = 10_000;

pub fn harmonic(n: usize, a: u32) -> Harmonic {
    let value = harmonic_f64(n, a);
    let exact = if n <= HARMONIC_EXACT_MAX {
        let mut acc = BigRational::zero();
        for i in 1..=n {
            let ia = BigInt::from(i).pow(a);
            acc += BigRational::new(BigInt::one(), ia);
        }
        Some(acc)
    } else {
        None
    };
    Harmonic { exact, value }
}

pub fn harmonic_f64(n: usize, a: u32) -> f64 {
    let mut acc = KahanSum::new();
    // sum smallest-first
    for i in (1..=n).rev() {
        acc.add((i as f64).powi(-(a as i32)));
    }
    acc.value()
}

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a scaled division for extreme magnitudes
        let n = r.numer().to_f64();
        let d = r.denom().to_f64();
        match (n, d) {
            (Some(n), Some(d)) => n / d,
            _ => f64::NAN,
        }
    })
}
