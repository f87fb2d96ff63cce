//! Series acceleration: Euler transformation for alternating series,
//! exponent-aware Richardson extrapolation and Hurwitz-zeta tail closure for
//! power-law tails, plus compensated accumulation.

use crate::error::{Error, Result};
use crate::specfun::SeriesValue;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Hurwitz zeta `zeta(s, a)` for real `s > 1`, `a > 0`, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    // shift until the expansion point is comfortably large
    let m = if a >= 18.0 { 0 } else { (18.0 - a).ceil() as usize };
    let mut head = KahanSum::new();
    for k in 0..m {
        head.add((a + k as f64).powf(-s));
    }
    let w = a + m as f64;
    let mut tail = w.powf(1.0 - s) / (s - 1.0) + 0.5 * w.powf(-s);
    // Bernoulli correction terms
    const B: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let mut rising = s; // (s)_{2j-1} / (2j)! accumulated below
    let mut fact = 2.0;
    let mut wp = w.powf(-s - 1.0);
    for (j, &b) in B.iter().enumerate() {
        tail += b * rising / fact * wp;
        let j = j as f64;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        fact *= (2.0 * j + 3.0) * (2.0 * j + 4.0);
        wp /= w * w;
    }
    head.value() + tail
}

const MAX_TERMS: usize = 10_000_000;

/// Sum a series whose terms are eventually alternating or of regular
/// power-law decay. Alternating series go through the Euler transformation;
/// power-law tails through Richardson extrapolation on partial sums.
pub fn euler_sum(mut term: impl FnMut(usize) -> f64, eps: f64) -> Result<SeriesValue> {
    // classify on a handful of leading nonzero terms
    let probe: Vec<f64> = (0..64).map(&mut term).collect();
    let nonzero: Vec<f64> = probe.iter().copied().filter(|t| *t != 0.0).collect();
    if nonzero.len() < 4 {
        // short series: direct sum
        let mut acc = KahanSum::new();
        for &t in &probe {
            acc.add(t);
        }
        return Ok(SeriesValue::new(acc.value(), 0.0, probe.len()));
    }
    let tail = &nonzero[nonzero.len() - 8..];
    let alternating = tail.windows(2).all(|w| w[0] * w[1] < 0.0);
    if alternating {
        euler_transform(term, eps)
    } else {
        richardson_tail(term, eps)
    }
}

/// Euler transformation of an (eventually) alternating series, processed
/// incrementally with a running average table.
pub fn euler_transform(mut term: impl FnMut(usize) -> f64, eps: f64) -> Result<SeriesValue> {
    let mut wksp: Vec<f64> = Vec::with_capacity(128);
    let mut sum = 0.0f64;
    let mut nterm = 0usize;
    let mut last_inc = f64::MAX;
    let mut small_streak = 0usize;
    for j in 0..4096 {
        let t = term(j);
        if j == 0 {
            wksp.push(t);
            nterm = 1;
            sum = 0.5 * t;
            continue;
        }
        let mut tmp = wksp[0];
        wksp[0] = t;
        for k in 1..nterm {
            let dum = wksp[k];
            wksp[k] = 0.5 * (wksp[k - 1] + tmp);
            tmp = dum;
        }
        let next = 0.5 * (wksp[nterm - 1] + tmp);
        if wksp.len() <= nterm {
            wksp.push(next);
        } else {
            wksp[nterm] = next;
        }
        let inc = if next.abs() <= wksp[nterm - 1].abs() {
            nterm += 1;
            0.5 * next
        } else {
            next
        };
        sum += inc;
        last_inc = inc.abs();
        if last_inc <= eps * sum.abs().max(1e-300) {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(SeriesValue::new(sum, last_inc.max(f64::EPSILON * sum.abs()), j + 1));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::SeriesDivergence(format!(
        "euler transform did not settle (last increment {last_inc:.3e})"
    )))
}

/// Extrapolate a series with power-law term decay `a_j ~ A j^{-s}`, `s > 1`.
///
/// Partial sums are taken at geometrically spaced lengths `N 2^k`; their
/// truncation errors are then sums of geometric sequences in k
/// (`c_i 2^{(1-s-i)k}`), which the Shanks/Wynn epsilon table removes one by
/// one without knowing `s`.
pub fn richardson_tail(mut term: impl FnMut(usize) -> f64, eps: f64) -> Result<SeriesValue> {
    // sanity-check the decay
    let n_probe = 512usize;
    let a1 = term(n_probe).abs();
    let a2 = term(2 * n_probe).abs();
    if a1 == 0.0 && a2 == 0.0 {
        // terminating series
        let mut acc = KahanSum::new();
        for j in 0..2 * n_probe {
            acc.add(term(j));
        }
        return Ok(SeriesValue::new(acc.value(), 0.0, 2 * n_probe));
    }
    if !(a2 < a1) {
        return Err(Error::SeriesDivergence(
            "terms are not decaying".to_string(),
        ));
    }
    let s = (a1 / a2).ln() / std::f64::consts::LN_2;
    if s <= 1.0 + 1e-9 {
        return Err(Error::SeriesDivergence(format!(
            "estimated decay exponent {s:.3} <= 1"
        )));
    }

    let n0 = 64usize;
    let levels = 13usize;
    let mut acc = KahanSum::new();
    let mut partials = Vec::with_capacity(levels);
    let mut j = 0usize;
    for k in 0..levels {
        let upto = n0 << k;
        while j < upto {
            acc.add(term(j));
            j += 1;
        }
        partials.push(acc.value());
    }
    let (best, err) = wynn_epsilon(&partials);
    let _ = eps;
    Ok(SeriesValue::new(best, err.max(f64::EPSILON * best.abs()), j))
}

/// Wynn's epsilon algorithm. Returns the last even-column estimate and the
/// spread of the final estimates as an error measure.
pub fn wynn_epsilon(seq: &[f64]) -> (f64, f64) {
    let m = seq.len();
    let mut prev_odd = vec![0.0f64; m + 1]; // epsilon_{-1}
    let mut cur = seq.to_vec(); // epsilon_0
    let mut even = true;
    let mut estimates = vec![*cur.last().unwrap()];
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        let mut exact = None;
        for j in 0..cur.len() - 1 {
            let diff = cur[j + 1] - cur[j];
            if diff == 0.0 {
                exact = Some(cur[j + 1]);
                break;
            }
            next.push(prev_odd[j + 1] + 1.0 / diff);
        }
        if let Some(v) = exact {
            return (v, 0.0);
        }
        prev_odd = std::mem::take(&mut cur);
        cur = next;
        even = !even;
        if even {
            estimates.push(*cur.last().unwrap());
        }
    }
    // pick the estimate where successive even columns settled
    let mut best = *estimates.last().unwrap();
    let mut err = f64::MAX;
    for w in estimates.windows(2) {
        let d = (w[1] - w[0]).abs();
        if d <= err {
            err = d;
            best = w[1];
        }
    }
    (best, err)
}

/// Direct summation with a Hurwitz-zeta tail closure for terms that behave
/// like `A j^{-s} (1 + b/j)` for large j. `s` must be supplied by the caller
/// (known analytically for every series this crate sums this way).
pub fn zeta_tail_sum(mut term: impl FnMut(usize) -> f64, s: f64, n_direct: usize) -> Result<SeriesValue> {
    if n_direct > MAX_TERMS {
        return Err(Error::SeriesDivergence(format!(
            "term cap exceeded: {n_direct}"
        )));
    }
    let mut acc = KahanSum::new();
    for j in 0..=n_direct {
        acc.add(term(j));
    }
    // fit A, Ab, Ac on the last decade with the scaled basis
    // j^{-s} (lo/j)^k, k = 0,1,2, which keeps the 3x3 normal equations
    // well conditioned
    let lo = (n_direct / 10).max(8);
    let lof = lo as f64;
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    let step = ((n_direct - lo) / 400).max(1);
    let mut used = 0usize;
    let mut jj = lo;
    while jj <= n_direct {
        let j = jj as f64;
        let x0 = j.powf(-s);
        let u = lof / j;
        let x = [x0, x0 * u, x0 * u * u];
        let y = term(jj);
        for r in 0..3 {
            for c in r..3 {
                m[r][c] += x[r] * x[c];
            }
            rhs[r] += x[r] * y;
        }
        used += 1;
        jj += step;
    }
    for r in 1..3 {
        for c in 0..r {
            m[r][c] = m[c][r];
        }
    }
    let coef = if used >= 6 {
        solve3(m, rhs)
    } else {
        None
    };
    let [a0, a1, a2] = coef.unwrap_or([0.0; 3]);
    let n1 = (n_direct + 1) as f64;
    let tail = a0 * hurwitz_zeta(s, n1)
        + a1 * lof * hurwitz_zeta(s + 1.0, n1)
        + a2 * lof * lof * hurwitz_zeta(s + 2.0, n1);
    // error bound: residual of the fit at the boundary, integrated
    let nf = n_direct as f64;
    let un = lof / nf;
    let fitted = nf.powf(-s) * (a0 + a1 * un + a2 * un * un);
    let resid = (term(n_direct) - fitted).abs();
    let err = (resid * n1 / (s - 1.0)).max(f64::EPSILON * acc.value().abs());
    Ok(SeriesValue::new(acc.value() + tail, err.max(tail.abs() * 1e-10), n_direct + 1))
}

/// Solve a 3x3 linear system by Gaussian elimination with partial pivoting;
/// `None` if singular.
fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&r1, &r2| m[r1][col].abs().total_cmp(&m[r2][col].abs()))?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..3 {
            let f = m[r][col] / m[col][col];
            for c in col..3 {
                m[r][c] -= f * m[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 3];
    for r in (0..3).rev() {
        let mut v = b[r];
        for c in r + 1..3 {
            v -= m[r][c] * x[c];
        }
        x[r] = v / m[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn euler_sum_alternating_ln2() {
        let v = euler_sum(|j| if j % 2 == 0 { 1.0 } else { -1.0 } / (j as f64 + 1.0), 1e-13).unwrap();
        assert!((v.value - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(v.terms_used < 60, "terms {}", v.terms_used);
    }

    #[test]
    fn euler_sum_power_law_basel() {
        let v = euler_sum(|j| 1.0 / ((j as f64 + 1.0) * (j as f64 + 1.0)), 1e-11).unwrap();
        let pi = std::f64::consts::PI;
        assert!((v.value - pi * pi / 6.0).abs() < 1e-10, "got {}", v.value);
    }

    #[test]
    fn euler_sum_rejects_nondecaying() {
        assert!(euler_sum(|_| 1.0, 1e-10).is_err());
    }

    #[test]
    fn hurwitz_zeta_values() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(hurwitz_zeta(2.0, 1.0), pi * pi / 6.0, max_relative = 1e-13);
        // zeta(2, 11) = pi^2/6 - sum_{k=1..10} k^{-2}
        let head: f64 = (1..=10).map(|k| 1.0 / (k as f64 * k as f64)).sum();
        assert_relative_eq!(hurwitz_zeta(2.0, 11.0), pi * pi / 6.0 - head, max_relative = 1e-12);
        assert_relative_eq!(hurwitz_zeta(4.0, 1.0), pi.powi(4) / 90.0, max_relative = 1e-13);
    }

    #[test]
    fn zeta_tail_matches_direct_long_sum() {
        // terms Theta(j^{-2}): compare against a 1e7-term direct sum plus
        // integral bound
        let term = |j: usize| {
            let j = j as f64 + 1.0;
            1.0 / (j * j * (1.0 + 1.0 / j))
        }; // = 1/(j^2+j) telescoping to exactly 1
        let v = zeta_tail_sum(|j| term(j), 2.0, 20_000).unwrap();
        assert!((v.value - 1.0).abs() < 1e-10, "got {}", v.value);
    }

    #[test]
    fn kahan_compensates() {
        let mut acc = KahanSum::new();
        acc.add(1e16);
        for _ in 0..10 {
            acc.add(1.0);
        }
        acc.add(-1e16);
        assert_eq!(acc.value(), 10.0);
    }
}
