//! Generalized hypergeometric series pFq by term recurrence.

use crate::error::{Error, Result};
use crate::specfun::accel::{euler_transform, KahanSum};
use crate::specfun::SeriesValue;

const MAX_TERMS: usize = 10_000_000;

/// Evaluate `pFq(alphas; betas; z)` where the series converges: `p <= q`,
/// or `p = q+1` with `|z| < 1`, or `|z| = 1` under the usual parameter-sum
/// condition. The alternating boundary case `z = -1` is routed through the
/// Euler transformation.
pub fn p_f_q(alphas: &[f64], betas: &[f64], z: f64, eps: f64) -> Result<SeriesValue> {
    for &b in betas {
        if b <= 0.0 && b.fract() == 0.0 {
            return Err(Error::Pole("pFq lower parameter"));
        }
    }
    let p = alphas.len();
    let q = betas.len();
    if p > q + 1 && z != 0.0 {
        return Err(Error::SeriesDivergence(format!(
            "{p}F{q} diverges for z != 0"
        )));
    }
    if p == q + 1 && z.abs() > 1.0 {
        return Err(Error::SeriesDivergence(format!("{p}F{q} needs |z| <= 1")));
    }
    if p == q + 1 && z.abs() == 1.0 {
        let sum_diff: f64 = betas.iter().sum::<f64>() - alphas.iter().sum::<f64>();
        if z == 1.0 && sum_diff <= 0.0 {
            return Err(Error::SeriesDivergence(
                "pFq at z=1 needs positive parameter excess".to_string(),
            ));
        }
        if z == -1.0 {
            if sum_diff <= -1.0 {
                return Err(Error::SeriesDivergence(
                    "pFq at z=-1 needs parameter excess > -1".to_string(),
                ));
            }
            // terms eventually alternate with power-law magnitude decay
            return p_f_q_alternating(alphas, betas, eps);
        }
    }

    let mut term = 1.0f64;
    let mut acc = KahanSum::new();
    acc.add(term);
    let mut small_streak = 0usize;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        let mut ratio = z / (jf + 1.0);
        for &a in alphas {
            ratio *= jf + a;
        }
        for &b in betas {
            ratio /= jf + b;
        }
        term *= ratio;
        if term == 0.0 {
            return Ok(SeriesValue::new(acc.value(), 0.0, j + 1));
        }
        acc.add(term);
        let sum = acc.value();
        if term.abs() < eps * sum.abs().max(1e-300) {
            small_streak += 1;
            if small_streak >= 3 {
                // geometric tail bound from the current ratio
                let r = ratio.abs().min(0.999_999);
                let err = term.abs() * r / (1.0 - r);
                return Ok(SeriesValue::new(sum, err.max(f64::EPSILON * sum.abs()), j + 2));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::SeriesDivergence("pFq term cap exceeded".to_string()))
}

fn p_f_q_alternating(alphas: &[f64], betas: &[f64], eps: f64) -> Result<SeriesValue> {
    let alphas = alphas.to_vec();
    let betas = betas.to_vec();
    // memoize the running product so term j stays O(1) amortized
    let mut cache: Vec<f64> = vec![1.0];
    euler_transform(
        move |j| {
            while cache.len() <= j {
                let jf = (cache.len() - 1) as f64;
                let mut ratio = -1.0 / (jf + 1.0);
                for &a in &alphas {
                    ratio *= jf + a;
                }
                for &b in &betas {
                    ratio /= jf + b;
                }
                let next = cache.last().unwrap() * ratio;
                cache.push(next);
            }
            cache[j]
        },
        eps,
    )
}
