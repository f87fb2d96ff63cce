//! Exact finite-n laws: the chain-record kernel and its recurrences, the
//! product-form PGFs, dominating-record moments, and the d = 2 closed forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::charpoly::char_zeros;
use crate::error::{Error, Result};
use crate::geometry::{Model, Region};
use crate::specfun::accel::{richardson_tail, KahanSum};
use crate::specfun::{harmonic_f64, ln_gamma, ln_gamma_re, quad1d, rational_to_f64};

/// Distribution of the index `I_n` of the first arrival dominating the
/// current chain record: `P(I_n = k) = probs[k]` for `0 <= k < n`.
#[derive(Debug, Clone)]
pub struct KernelDist {
    pub n: usize,
    pub probs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentRow {
    pub n: usize,
    pub mean: f64,
    pub var: f64,
}

#[derive(Debug, Clone)]
pub struct MomentTable {
    pub model: Model,
    pub rows: Vec<MomentRow>,
}

/// `{model, d, rows: [{n, mean, var}]}`.
pub fn moment_table_json(table: &MomentTable) -> String {
    let model = match table.model.kind {
        Region::Hypercube => "cube",
        Region::Simplex => "simplex",
    };
    serde_json::json!({
        "model": model,
        "d": table.model.d,
        "rows": table.rows,
    })
    .to_string()
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (ln_gamma_re(n as f64 + 1.0) - ln_gamma_re(k as f64 + 1.0)
        - ln_gamma_re((n - k) as f64 + 1.0))
        .exp()
}

fn big_binom(n: usize, k: usize) -> BigInt {
    let mut v = BigInt::one();
    for i in 0..k.min(n - k) {
        v = v * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    if k > n {
        BigInt::zero()
    } else {
        v
    }
}

/// `d! / ((dj+1)(dj+2)...(dj+d))`, the PGF product-factor ratio, exact.
fn kernel_ratio(d: u32, j: usize) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=d as usize {
        num *= BigInt::from(i);
        den *= BigInt::from(d as usize * j + i);
    }
    BigRational::new(num, den)
}

// ---------------------------------------------------------------------------
// chain-record kernel pi_{n,k}

/// Simplex kernel row in exact rationals:
/// `pi_{n,k} = C(n-1,k)(n-k-1)! sum_j C(d-1,j)(-1)^j d^{n-k} /
///  prod_{i=k..n-1}(di+j+1)`.
pub fn chain_kernel_exact(d: u32, n: usize) -> Result<Vec<BigRational>> {
    if n < 1 {
        return Err(Error::InvalidArgument("chain_kernel needs n >= 1".into()));
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = BigRational::zero();
        for j in 0..d as usize {
            let mut den = BigInt::one();
            for i in k..n {
                den *= BigInt::from(d as usize * i + j + 1);
            }
            let num = BigInt::from(d as usize).pow((n - k) as u32);
            let mut term = BigRational::new(num, den);
            term *= BigRational::from(big_binom(d as usize - 1, j));
            if j % 2 == 1 {
                term = -term;
            }
            row += term;
        }
        let mut fact = BigInt::one();
        for i in 1..n - k {
            fact *= BigInt::from(i);
        }
        row *= BigRational::from(big_binom(n - 1, k) * fact);
        out.push(row);
    }
    Ok(out)
}

/// Complete Bell polynomial `B_m(a_1..a_m)` by the binomial recurrence.
fn bell_complete(a: &[f64]) -> f64 {
    let m = a.len();
    let mut b = vec![0.0; m + 1];
    b[0] = 1.0;
    for i in 1..=m {
        let mut s = 0.0;
        for r in 1..=i {
            s += binom_f64(i - 1, r - 1) * a[r - 1] * b[i - r];
        }
        b[i] = s;
    }
    b[m]
}

/// Hypercube kernel row in closed form. Differentiating the Beta integral
/// `d-1` times in the exponent turns `pi_{n,k}` into
/// `B_{d-1}((r-1)!(H_n^{(r)}-H_k^{(r)}))/((d-1)! n)`
/// with a complete Bell polynomial; for d = 2 this is `(H_n - H_k)/n`.
fn hypercube_kernel_row(d: u32, n: usize) -> Vec<f64> {
    let m = d as usize - 1;
    // prefix power sums H_i^{(r)} for r = 1..m
    let mut prefix = vec![vec![0.0; n + 1]; m];
    for (r, row) in prefix.iter_mut().enumerate() {
        for i in 1..=n {
            row[i] = row[i - 1] + 1.0 / (i as f64).powi(r as i32 + 1);
        }
    }
    let mut factr = vec![1.0; m]; // (r-1)! for r = 1..m
    for r in 1..m {
        factr[r] = factr[r - 1] * r as f64;
    }
    (0..n)
        .map(|k| {
            let a: Vec<f64> = (0..m)
                .map(|r| factr[r] * (prefix[r][n] - prefix[r][k]))
                .collect();
            let mut fact_m = 1.0;
            for i in 1..=m {
                fact_m *= i as f64;
            }
            bell_complete(&a) / (fact_m * n as f64)
        })
        .collect()
}

/// Simplex kernel row in floats, `O(n d)` via the term ratio
/// `t_j(k+1)/t_j(k) = (k + a_j)/(k + 1)` with `a_j = (j+1)/d`.
fn simplex_kernel_row(d: u32, n: usize) -> Vec<f64> {
    let mut probs = vec![0.0; n];
    for j in 0..d as usize {
        let a = (j + 1) as f64 / d as f64;
        // t_j(0) = Gamma(n) Gamma(a) / Gamma(n + a), binomial included
        let mut w = (ln_gamma_re(n as f64) + ln_gamma_re(a) - ln_gamma_re(n as f64 + a)).exp();
        w *= binom_f64(d as usize - 1, j);
        if j % 2 == 1 {
            w = -w;
        }
        for (k, p) in probs.iter_mut().enumerate() {
            *p += w;
            w *= (k as f64 + a) / (k as f64 + 1.0);
        }
    }
    probs
}

/// `P(I_n = k)` for `0 <= k < n`.
pub fn chain_kernel(model: Model, n: usize) -> Result<KernelDist> {
    if n < 1 {
        return Err(Error::InvalidArgument("chain_kernel needs n >= 1".into()));
    }
    let d = model.d as u32;
    let probs = match model.kind {
        Region::Simplex => simplex_kernel_row(d, n),
        Region::Hypercube => hypercube_kernel_row(d, n),
    };
    Ok(KernelDist { n, probs })
}

/// The paper-facing Beta-integral forms of the kernel, by quadrature; used
/// as an oracle against the closed forms above.
pub fn chain_kernel_quadrature(model: Model, n: usize, k: usize, eps: f64) -> Result<f64> {
    let d = model.d as f64;
    let nf = n as f64;
    let kf = k as f64;
    let c = binom_f64(n - 1, k);
    match model.kind {
        Region::Simplex => {
            let v = quad1d(
                |t| t.powf(kf * d) * (1.0 - t.powf(d)).powf(nf - 1.0 - kf) * (1.0 - t).powf(d - 1.0),
                0.0,
                1.0,
                eps,
            )?;
            Ok(d * c * v.value)
        }
        Region::Hypercube => {
            let mut fact = 1.0;
            for i in 1..model.d {
                fact *= i as f64;
            }
            let v = quad1d(
                |t| t.powf(kf) * (1.0 - t).powf(nf - 1.0 - kf) * (-t.ln()).powf(d - 1.0),
                0.0,
                1.0,
                eps,
            )?;
            Ok(c * v.value / fact)
        }
    }
}

// ---------------------------------------------------------------------------
// moments of the chain-record count

/// Mean and variance of `Y_n` for every `n <= n_max` by the distributional
/// recurrence `Y_n = 1 + Y_{I_n}`: `mu_n = 1 + sum pi mu_k` and
/// `s_n = 1 + sum pi (2 mu_k + s_k)` for the second moment.
pub fn chain_moments_exact(model: Model, n_max: usize) -> Result<MomentTable> {
    if n_max > 20_000 {
        return Err(Error::InvalidArgument(format!(
            "chain_moments_exact is O(n^2); n_max {n_max} > 20000"
        )));
    }
    let d = model.d;
    let mut mu = vec![0.0f64; n_max + 1];
    let mut s = vec![0.0f64; n_max + 1];
    let mut rows = Vec::with_capacity(n_max);

    match model.kind {
        Region::Simplex => {
            // per-j running value of t_j(0) = Gamma(n)Gamma(a_j)/Gamma(n+a_j)
            let a: Vec<f64> = (0..d).map(|j| (j + 1) as f64 / d as f64).collect();
            let sign: Vec<f64> = (0..d)
                .map(|j| binom_f64(d - 1, j) * if j % 2 == 1 { -1.0 } else { 1.0 })
                .collect();
            let mut t0: Vec<f64> = a.iter().map(|aj| 1.0 / aj).collect(); // n = 1
            for n in 1..=n_max {
                let mut s1 = KahanSum::new();
                let mut s2 = KahanSum::new();
                for j in 0..d {
                    let mut w = sign[j] * t0[j];
                    let mut p1 = KahanSum::new();
                    let mut p2 = KahanSum::new();
                    for k in 0..n {
                        p1.add(w * mu[k]);
                        p2.add(w * (2.0 * mu[k] + s[k]));
                        w *= (k as f64 + a[j]) / (k as f64 + 1.0);
                    }
                    s1.add(p1.value());
                    s2.add(p2.value());
                    t0[j] *= n as f64 / (n as f64 + a[j]);
                }
                mu[n] = 1.0 + s1.value();
                s[n] = 1.0 + s2.value();
                rows.push(MomentRow { n, mean: mu[n], var: (s[n] - mu[n] * mu[n]).max(0.0) });
            }
        }
        Region::Hypercube => {
            let m = d - 1;
            // running power sums H_n^{(r)}
            let mut h = vec![0.0f64; m];
            let mut hk = vec![vec![0.0f64; m]; n_max + 1]; // H_k^{(r)} table
            let mut factr = vec![1.0; m.max(1)];
            for r in 1..m {
                factr[r] = factr[r - 1] * r as f64;
            }
            let mut fact_m = 1.0;
            for i in 1..=m {
                fact_m *= i as f64;
            }
            for n in 1..=n_max {
                for r in 0..m {
                    h[r] += 1.0 / (n as f64).powi(r as i32 + 1);
                }
                hk[n].copy_from_slice(&h);
                let mut s1 = KahanSum::new();
                let mut s2 = KahanSum::new();
                let mut a = vec![0.0f64; m];
                for k in 0..n {
                    for r in 0..m {
                        a[r] = factr[r] * (h[r] - hk[k][r]);
                    }
                    let pi = bell_complete(&a) / (fact_m * n as f64);
                    s1.add(pi * mu[k]);
                    s2.add(pi * (2.0 * mu[k] + s[k]));
                }
                mu[n] = 1.0 + s1.value();
                s[n] = 1.0 + s2.value();
                rows.push(MomentRow { n, mean: mu[n], var: (s[n] - mu[n] * mu[n]).max(0.0) });
            }
        }
    }
    Ok(MomentTable { model, rows })
}

/// Exact-rational chain mean by the alternating identity
/// `mu_n = sum_k C(n,k)(-1)^{k-1} prod_{1<=j<k}(1 - d!/((dj+1)...(dj+d)))`.
/// The terms cancel exponentially, hence the exact-arithmetic-only cap.
pub fn chain_mean_altsum(d: u32, n: usize) -> Result<BigRational> {
    if n > 64 {
        return Err(Error::ExactModeOverflow { max: 64, got: n });
    }
    let mut sum = BigRational::zero();
    let mut prod = BigRational::one(); // prod over 1 <= j < k
    for k in 1..=n {
        let term = BigRational::from(big_binom(n, k)) * &prod;
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        prod *= BigRational::one() - kernel_ratio(d, k);
    }
    Ok(sum)
}

/// PGF `P_n(y) = E[y^{Y_n}]` by the product-form alternating sum; exact
/// rationals for `n <= 64`, compensated floats beyond.
pub fn chain_pgf(model: Model, n: usize, y: f64) -> f64 {
    let d = model.d as u32;
    if n == 0 {
        return 1.0;
    }
    if n <= 64 {
        if let Some(yr) = BigRational::from_float(y) {
            let mut sum = BigRational::one(); // k = 0 term
            let mut prod = BigRational::one();
            for k in 1..=n {
                prod *= BigRational::one()
                    - match model.kind {
                        Region::Simplex => kernel_ratio(d, k - 1) * &yr,
                        Region::Hypercube => {
                            &yr / BigRational::from(BigInt::from(k).pow(d))
                        }
                    };
                let term = BigRational::from(big_binom(n, k)) * &prod;
                if k % 2 == 1 {
                    sum -= term;
                } else {
                    sum += term;
                }
            }
            return rational_to_f64(&sum);
        }
    }
    let mut sum = KahanSum::new();
    sum.add(1.0);
    let mut prod = 1.0f64;
    for k in 1..=n {
        prod *= 1.0
            - match model.kind {
                Region::Simplex => rational_to_f64(&kernel_ratio(d, k - 1)) * y,
                Region::Hypercube => y / (k as f64).powi(d as i32),
            };
        let sgn = if k % 2 == 1 { -1.0 } else { 1.0 };
        sum.add(sgn * binom_f64(n, k) * prod);
    }
    sum.value()
}

/// Both printed forms of `phi(n) = prod_{1<=j<n}(1 - d!/((dj+1)...(dj+d)))`.
#[derive(Debug, Clone, Copy)]
pub struct PhiForms {
    pub product: f64,
    pub gamma_form: f64,
    pub diff: f64,
}

/// Direct product vs. the Gamma-ratio form
/// `(1/n) prod_l G(n - l_l/d) G(1 + l/d) / (G(n + l/d) G(1 - l_l/d))`
/// over the zeros `l_l` of the characteristic polynomial.
pub fn phi_product(d: u32, n: usize) -> Result<PhiForms> {
    if n < 1 {
        return Err(Error::InvalidArgument("phi_product needs n >= 1".into()));
    }
    let mut product = 1.0f64;
    for j in 1..n {
        product *= rational_to_f64(&(BigRational::one() - kernel_ratio(d, j)));
    }
    let spec = char_zeros(d, 1.0)?;
    let nf = n as f64;
    let df = d as f64;
    let mut ln_total = num_complex::Complex64::new(-(nf.ln()), 0.0);
    for (i, lam) in spec.lambdas.iter().enumerate() {
        let l = (i + 1) as f64; // any pairing: the product is symmetric
        ln_total += ln_gamma(nf - lam / df)? - ln_gamma(1.0 - lam / df)?;
        ln_total += ln_gamma_re(1.0 + l / df) - ln_gamma_re(nf + l / df);
    }
    // conjugate zeros cancel the imaginary part exactly
    let gamma_form = ln_total.re.exp();
    Ok(PhiForms { product, gamma_form, diff: product - gamma_form })
}

// ---------------------------------------------------------------------------
// dominating records

/// `(d!)^k Gamma(k)^d / Gamma(dk+1)` in log space.
fn dom_term(d: usize, k: usize) -> f64 {
    let df = d as f64;
    let kf = k as f64;
    let ln_dfact = ln_gamma_re(df + 1.0);
    (kf * ln_dfact + df * ln_gamma_re(kf) - ln_gamma_re(df * kf + 1.0)).exp()
}

/// Exact mean and variance of the number of dominating records among the
/// first `n` points.
pub fn dom_moments(model: Model, n: usize) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::InvalidArgument("dom_moments needs n >= 1".into()));
    }
    let d = model.d;
    match model.kind {
        Region::Hypercube => {
            let mean = harmonic_f64(n, d as u32);
            let var = mean - harmonic_f64(n, 2 * d as u32);
            Ok((mean, var))
        }
        Region::Simplex => {
            let mut mean = KahanSum::new();
            let mut cross = KahanSum::new();
            let mut hk = 0.0f64; // H_{k-1}^{(d)}
            for k in 1..=n {
                let t = dom_term(d, k);
                mean.add(t);
                if k >= 2 {
                    hk += 1.0 / ((k - 1) as f64).powi(d as i32);
                    cross.add(t * hk);
                }
            }
            let e = mean.value();
            Ok((e, 2.0 * cross.value() + e - e * e))
        }
    }
}

// ---------------------------------------------------------------------------
// d = 2 closed forms

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D2Stat {
    SimplexMean,
    SimplexVar,
    CubeMean,
    CubeVar,
}

/// The four printed d = 2 identities: simplex `(H_n+2)/3` and the
/// variance series, hypercube `(H_n+1)/2` and `(H_n+H_n^{(2)}-2)/4`.
pub fn closed_form_d2(stat: D2Stat, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("closed_form_d2 needs n >= 1".into()));
    }
    let h1 = harmonic_f64(n, 1);
    let h2 = harmonic_f64(n, 2);
    match stat {
        D2Stat::SimplexMean => Ok((h1 + 2.0) / 3.0),
        D2Stat::CubeMean => Ok((h1 + 1.0) / 2.0),
        D2Stat::CubeVar => Ok((h1 + h2 - 2.0) / 4.0),
        D2Stat::SimplexVar => {
            let pi2 = std::f64::consts::PI * std::f64::consts::PI;
            let nf = n as f64;
            let ln_gn1 = ln_gamma_re(nf + 1.0);
            // generalized binomials via Gamma:
            // C(n+j,n) = G(n+j+1)/(G(j+1)G(n+1)),
            // C(n+j+1/2,n) = G(n+j+3/2)/(G(j+3/2)G(n+1))
            let term = move |i: usize| {
                let j = (i + 1) as f64;
                let b1 = (ln_gamma_re(nf + j + 1.0) - ln_gamma_re(j + 1.0) - ln_gn1).exp();
                let b2 = (ln_gamma_re(nf + j + 1.5) - ln_gamma_re(j + 1.5) - ln_gn1).exp();
                (2.0 * j - 1.0) / (j * j * b1) - 2.0 * j / ((j + 0.5) * (j + 0.5) * b2)
            };
            let tail = richardson_tail(term, 1e-13)?;
            Ok(5.0 / 27.0 * h1 + 2.0 * pi2 / 27.0 + h2 / 9.0 - 26.0 / 27.0
                - 2.0 / 9.0 * tail.value)
        }
    }
}

// ---------------------------------------------------------------------------
// the general recurrence a_n = b_n + sum_k pi_{n,k} a_k

/// Solve the simplex-kernel recurrence by two independent routes: the
/// direct `O(n^2)` recursion and the alternating binomial-transform
/// solution (exact rationals, hence the `n_max <= 64` cap). Returns
/// `(direct, alternating)`, both indexed `0..=n_max`.
pub fn solve_record_recurrence(
    d: u32,
    b: impl Fn(usize) -> f64,
    n_max: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if n_max > 64 {
        return Err(Error::ExactModeOverflow { max: 64, got: n_max });
    }
    // direct route
    let model = Model::simplex(d as usize)?;
    let mut direct = vec![0.0f64; n_max + 1];
    for n in 1..=n_max {
        let ker = chain_kernel(model, n)?;
        let mut s = KahanSum::new();
        for k in 0..n {
            s.add(ker.probs[k] * direct[k]);
        }
        direct[n] = b(n) + s.value();
    }

    // alternating route, exact: b~_n = sum_k C(n,k)(-1)^{n-k} b_k, then
    // a~_{n+1} = -(1 - r_n) a~_n + b~_n + b~_{n+1}, a_n = sum C(n,k) a~_k
    let bx: Vec<BigRational> = (0..=n_max + 1)
        .map(|k| {
            if k == 0 {
                BigRational::zero()
            } else {
                BigRational::from_float(b(k)).unwrap_or_else(BigRational::zero)
            }
        })
        .collect();
    let mut btilde = vec![BigRational::zero(); n_max + 2];
    for n in 1..=n_max + 1 {
        let mut s = BigRational::zero();
        for k in 1..=n {
            let t = BigRational::from(big_binom(n, k)) * &bx[k];
            if (n - k) % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
        }
        btilde[n] = s;
    }
    let mut atilde = vec![BigRational::zero(); n_max + 1];
    for n in 0..n_max {
        let next = -(BigRational::one() - kernel_ratio(d, n)) * &atilde[n]
            + &btilde[n]
            + &btilde[n + 1];
        atilde[n + 1] = next;
    }
    let mut alt = vec![0.0f64; n_max + 1];
    for n in 1..=n_max {
        let mut s = BigRational::zero();
        for k in 1..=n {
            s += BigRational::from(big_binom(n, k)) * &atilde[k];
        }
        alt[n] = rational_to_f64(&s);
    }
    Ok((direct, alt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::Signed;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn simplex(d: usize) -> Model {
        Model::simplex(d).unwrap()
    }

    fn cube(d: usize) -> Model {
        Model::hypercube(d).unwrap()
    }

    #[test]
    fn kernel_d1_is_uniform() {
        for n in [1usize, 2, 7, 40] {
            for model in [simplex(1), cube(1)] {
                let k = chain_kernel(model, n).unwrap();
                for p in &k.probs {
                    assert_relative_eq!(*p, 1.0 / n as f64, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn kernel_small_cases() {
        let k = chain_kernel(simplex(2), 2).unwrap();
        assert_relative_eq!(k.probs[0], 5.0 / 6.0, max_relative = 1e-13);
        assert_relative_eq!(k.probs[1], 1.0 / 6.0, max_relative = 1e-13);
        let e = chain_kernel_exact(2, 2).unwrap();
        assert_eq!(e[0], frac(5, 6));
        assert_eq!(e[1], frac(1, 6));
        let k = chain_kernel(simplex(3), 5).unwrap();
        let sum: f64 = k.probs.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_exact_sums_to_one() {
        for d in 1..=3u32 {
            for n in [1usize, 5, 17, 50] {
                let e = chain_kernel_exact(d, n).unwrap();
                let total: BigRational = e.iter().sum();
                assert!(total.is_one(), "d={d} n={n}");
                for p in &e {
                    assert!(!p.is_negative());
                }
            }
        }
    }

    #[test]
    fn kernel_float_matches_exact() {
        for d in 1..=4u32 {
            for n in [3usize, 10, 25] {
                let f = chain_kernel(simplex(d as usize), n).unwrap();
                let e = chain_kernel_exact(d, n).unwrap();
                for k in 0..n {
                    let ev = rational_to_f64(&e[k]);
                    assert!((f.probs[k] - ev).abs() <= 1e-13, "d={d} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn kernel_matches_quadrature() {
        // both printed integral forms against the closed forms
        for d in 2..=4usize
        {
            for n in [4usize, 11, 30] {
                for k in [0usize, 1, n / 2, n - 1] {
                    let q = chain_kernel_quadrature(simplex(d), n, k, 1e-12).unwrap();
                    let c = chain_kernel(simplex(d), n).unwrap().probs[k];
                    assert!((q - c).abs() <= 1e-10, "simplex d={d} n={n} k={k}: {q} vs {c}");
                }
            }
        }
        for d in 2..=3usize {
            for n in [4usize, 11] {
                for k in [0usize, n / 2, n - 1] {
                    let q = chain_kernel_quadrature(cube(d), n, k, 1e-12).unwrap();
                    let c = chain_kernel(cube(d), n).unwrap().probs[k];
                    assert!((q - c).abs() <= 1e-10, "cube d={d} n={n} k={k}: {q} vs {c}");
                }
            }
        }
    }

    #[test]
    fn simplex_d2_mean_identity() {
        let t = chain_moments_exact(simplex(2), 2000).unwrap();
        for row in &t.rows {
            let expect = (harmonic_f64(row.n, 1) + 2.0) / 3.0;
            assert!((row.mean - expect).abs() < 1e-10, "n={}", row.n);
        }
        // n = 3 exact value 23/18
        assert!((t.rows[2].mean - 23.0 / 18.0).abs() < 1e-13);
    }

    #[test]
    fn first_point_is_always_a_record() {
        for model in [simplex(2), simplex(3), cube(2), cube(3)] {
            let t = chain_moments_exact(model, 1).unwrap();
            assert_eq!(t.rows[0].mean, 1.0);
            assert_eq!(t.rows[0].var, 0.0);
            let (m, v) = dom_moments(model, 1).unwrap();
            assert_eq!(m, 1.0);
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn hypercube_d2_closed_forms() {
        let t = chain_moments_exact(cube(2), 300).unwrap();
        for row in &t.rows {
            let mean = closed_form_d2(D2Stat::CubeMean, row.n).unwrap();
            let var = closed_form_d2(D2Stat::CubeVar, row.n).unwrap();
            assert!((row.mean - mean).abs() < 1e-10, "n={}", row.n);
            assert!((row.var - var).abs() < 1e-10, "n={}", row.n);
        }
    }

    #[test]
    fn altsum_matches_recurrence() {
        assert_eq!(chain_mean_altsum(2, 1).unwrap(), BigRational::one());
        assert_eq!(chain_mean_altsum(2, 3).unwrap(), frac(23, 18));
        for d in 2..=3u32 {
            let t = chain_moments_exact(simplex(d as usize), 30).unwrap();
            for n in 1..=30usize {
                let alt = rational_to_f64(&chain_mean_altsum(d, n).unwrap());
                assert!(
                    (alt - t.rows[n - 1].mean).abs() < 1e-12,
                    "d={d} n={n}: {alt} vs {}",
                    t.rows[n - 1].mean
                );
            }
        }
    }

    #[test]
    fn pgf_normalization_and_small_cases() {
        for model in [simplex(2), simplex(3), cube(2)] {
            for n in [1usize, 5, 20, 100] {
                assert!((chain_pgf(model, n, 1.0) - 1.0).abs() < 1e-12);
            }
            for y in [0.3, 0.9, 1.4] {
                assert!((chain_pgf(model, 1, y) - y).abs() < 1e-14);
            }
        }
        // simplex d=2: P_2(y) = 1 + (y-1)(1 + y/6)
        for y in [0.5, 1.0, 1.3] {
            let expect = 1.0 + (y - 1.0) * (1.0 + y / 6.0);
            assert!((chain_pgf(simplex(2), 2, y) - expect).abs() < 1e-13);
        }
        // PGF derivative at 1 equals the mean: 7/6 at n = 2
        let h = 1e-6;
        let fd = (chain_pgf(simplex(2), 2, 1.0 + h) - chain_pgf(simplex(2), 2, 1.0 - h)) / (2.0 * h);
        assert!((fd - 7.0 / 6.0).abs() < 1e-8);
    }

    #[test]
    fn pgf_mean_agreement_via_derivative() {
        for (d, n) in [(2usize, 12usize), (3, 25)] {
            let t = chain_moments_exact(simplex(d), n).unwrap();
            let h = 1e-6;
            let fd =
                (chain_pgf(simplex(d), n, 1.0 + h) - chain_pgf(simplex(d), n, 1.0 - h)) / (2.0 * h);
            assert!((fd - t.rows[n - 1].mean).abs() < 1e-7, "d={d} n={n}");
        }
    }

    #[test]
    fn phi_forms_agree() {
        let p = phi_product(2, 1).unwrap();
        assert!((p.product - 1.0).abs() < 1e-15);
        assert!((p.gamma_form - 1.0).abs() < 1e-12);
        let p = phi_product(2, 2).unwrap();
        assert!((p.product - 5.0 / 6.0).abs() < 1e-15);
        assert!((p.gamma_form - 5.0 / 6.0).abs() < 1e-12);
        for d in 2..=5u32 {
            for n in [10usize, 100, 1000] {
                let p = phi_product(d, n).unwrap();
                assert!(p.diff.abs() <= 1e-10 * p.product.abs().max(1e-30), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn dom_moment_values() {
        // hypercube d=2, n=3: mean 49/36, var H_3^{(2)} - H_3^{(4)}
        let (m, v) = dom_moments(cube(2), 3).unwrap();
        assert_relative_eq!(m, 49.0 / 36.0, max_relative = 1e-14);
        let expect = (1.0 + 1.0 / 4.0 + 1.0 / 9.0) - (1.0 + 1.0 / 16.0 + 1.0 / 81.0);
        assert_relative_eq!(v, expect, max_relative = 1e-13);
        // simplex d=2 limits
        let (m, v) = dom_moments(simplex(2), 200).unwrap();
        assert!((m - 1.23372).abs() < 1e-4, "mean {m}");
        assert!((v - 0.2189).abs() < 1e-3, "var {v}");
    }

    #[test]
    fn dom_mean_converges_exponentially() {
        let mut prev = dom_moments(simplex(2), 1).unwrap().0;
        for n in 2..=25usize {
            let cur = dom_moments(simplex(2), n).unwrap().0;
            assert!(cur >= prev);
            assert!(cur - prev <= 2f64.powi(-(n as i32 - 1)), "n={n}");
            prev = cur;
        }
    }

    #[test]
    fn mean_nondecreasing_in_n() {
        for model in [simplex(2), simplex(3), cube(2), cube(3)] {
            let t = chain_moments_exact(model, 120).unwrap();
            for w in t.rows.windows(2) {
                assert!(w[1].mean >= w[0].mean - 1e-12);
                assert!(w[1].var >= -1e-12);
            }
            let mut prev = 0.0;
            for n in 1..=60 {
                let (m, _) = dom_moments(model, n).unwrap();
                assert!(m >= prev - 1e-15);
                prev = m;
            }
        }
    }

    #[test]
    fn d2_simplex_variance_identity() {
        // V[Y_1] = 0 pins the series value
        let v1 = closed_form_d2(D2Stat::SimplexVar, 1).unwrap();
        assert!(v1.abs() < 1e-10, "V[Y_1] = {v1}");
        let t = chain_moments_exact(simplex(2), 50).unwrap();
        for n in [2usize, 5, 20, 50] {
            let cf = closed_form_d2(D2Stat::SimplexVar, n).unwrap();
            assert!((cf - t.rows[n - 1].var).abs() < 1e-8, "n={n}: {cf} vs {}", t.rows[n - 1].var);
        }
    }

    #[test]
    fn general_recurrence_paths_agree() {
        // b == 1 reproduces the chain mean
        let (direct, alt) = solve_record_recurrence(2, |_| 1.0, 20).unwrap();
        for n in 1..=20usize {
            let mu = rational_to_f64(&chain_mean_altsum(2, n).unwrap());
            assert!((direct[n] - mu).abs() < 1e-12);
            assert!((alt[n] - mu).abs() < 1e-12);
        }
        // b == 0 gives zero
        let (direct, alt) = solve_record_recurrence(3, |_| 0.0, 10).unwrap();
        assert!(direct.iter().chain(alt.iter()).all(|&x| x == 0.0));
        // b(n) = H_n
        let (direct, alt) = solve_record_recurrence(2, |n| harmonic_f64(n, 1), 30).unwrap();
        for n in 1..=30usize {
            assert!((direct[n] - alt[n]).abs() < 1e-11, "n={n}: {} vs {}", direct[n], alt[n]);
        }
    }

    #[test]
    fn json_emitter_shape() {
        let t = chain_moments_exact(simplex(2), 3).unwrap();
        let s = moment_table_json(&t);
        assert!(s.contains("\"model\":\"simplex\""));
        assert!(s.contains("\"d\":2"));
        assert!(s.contains("\"rows\""));
    }
}
