//! High-precision evaluation of the three limiting constants attached to
//! multivariate records and maxima of simplex samples:
//!
//! * `v_d`   — the variance constant of the Pareto-record count,
//!   `v_d = (d/(d-1)) Gamma(1/d) + 2 d^2 C_d` with `C_d` assembled from the
//!   residue series `I_{d,0}`, `I_{d,d}` and the three collapsed double sums
//!   `C^[1]`, `C^[2]`, `C^[3]`;
//! * `vtilde_d` — the variance constant of the number of maxima,
//!   `vtilde_d = Gamma(1/d) + sum_k binom(d,k) J_{d,k} - J_{d,0}`, with the
//!   `J` terms expressed through 2F1(.. ; 1/2) and 3F2(.. ; -1) values;
//! * `K_d`   — the Chiu–Quine covariance constant, a paired Gamma-ratio
//!   difference series (the pairing is mandatory: the two halves separately
//!   decay only like j^{-1-l/d-m}).
//!
//! Every Gamma ratio is built from log-gamma differences so nothing
//! overflows, and every power-law tail is closed with a fitted Hurwitz-zeta
//! tail (`zeta_tail_sum`). Quadrature oracles for the alternative integral
//! representations live in [`oracle_integral`].

use crate::error::{Error, Result};
use crate::specfun::accel::KahanSum;
use crate::specfun::{
    euler_transform, gamma_re, ln_gamma_re, p_f_q, quad1d, quad2d_unit_square, zeta_tail_sum,
    SeriesValue,
};
use serde::Serialize;

/// Which alternative integral representation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    /// `I_{d,0} = Gamma(1/d)/(d-1) * int_0^1 (1-x)^{d-1}(1-(1+x^d)^{-1/d})/x^d dx`
    I0,
    /// `I_{d,d}` via its single-integral form
    Idd,
    /// `J_{d,0} = 2 Gamma(1/d) int_0^1 (1-x)^{d-1}(1+x^d)^{-1-1/d} dx`
    J0,
    /// `K_d` via the double integral over the unit square
    K,
}

/// A constant together with the named sub-series it was assembled from and
/// an optional quadrature cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantReport {
    pub d: usize,
    pub name: &'static str,
    pub value: SeriesValue,
    pub components: Vec<(String, SeriesValue)>,
    pub oracle: Option<SeriesValue>,
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::BadDimension { min: 2, got: d });
    }
    Ok(())
}

fn lg(x: f64) -> f64 {
    ln_gamma_re(x)
}

/// Direct-plus-zeta-tail length, larger for small d where the series decay
/// slowest and the closed-form tests demand ~1e-12.
fn tail_len(d: usize) -> usize {
    if d <= 3 {
        50_000
    } else {
        20_000
    }
}

/// `I_{d,0} = Gamma(d-1) sum_{j>=0} (-1)^j G(j+1+1/d) G(dj+1) / ((j+1)! G(dj+d+1))`,
/// terms of order j^{-d-1+1/d}, alternating.
pub fn i_d0(d: usize, eps: f64) -> Result<SeriesValue> {
    check_d(d)?;
    let df = d as f64;
    let pref = gamma_re(df - 1.0);
    let s = euler_transform(
        move |j| {
            let jf = j as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * (lg(jf + 1.0 + 1.0 / df) + lg(df * jf + 1.0)
                - lg(jf + 2.0)
                - lg(df * jf + df + 1.0))
                .exp()
        },
        eps,
    )?;
    Ok(SeriesValue::new(pref * s.value, pref * s.err, s.terms_used))
}

/// `I_{d,d}` as the sum of a positive power-law series (terms j^{-d-1}) and
/// an alternating one, both starting at j = 2.
pub fn i_dd(d: usize, eps: f64) -> Result<SeriesValue> {
    check_d(d)?;
    let df = d as f64;
    let pref1 = gamma_re(df - 1.0) * gamma_re(1.0 / df);
    let part1 = zeta_tail_sum(
        move |i| {
            let jf = (i + 2) as f64;
            (lg(df * jf - df) - lg(df * jf)).exp() / jf
        },
        df + 1.0,
        tail_len(d),
    )?;
    let pref2 = gamma_re(df - 1.0);
    let part2 = euler_transform(
        move |i| {
            let j = i + 2;
            let jf = j as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * (lg(jf - 1.0 + 1.0 / df) + lg(df * jf - df + 1.0)
                - lg(jf)
                - lg(df * jf + 1.0))
                .exp()
        },
        eps,
    )?;
    Ok(SeriesValue::new(
        pref1 * part1.value - pref2 * part2.value,
        pref1 * part1.err + pref2 * part2.err,
        part1.terms_used + part2.terms_used,
    ))
}

/// `binom(a+l+1, d)/binom(a+d, d) - 1` computed without cancellation, where
/// the ratio is a product of d factors `1 - (d-l-1)/(a+d-i)`.
fn binom_ratio_minus_one(a: f64, l: f64, d: usize) -> f64 {
    let df = d as f64;
    let mut ln_ratio = 0.0f64;
    for i in 0..d {
        ln_ratio += (-(df - l - 1.0) / (a + df - i as f64)).ln_1p();
    }
    ln_ratio.exp_m1()
}

/// `C_d^[1]`: single sum over l of zeta-tail-closed inner series with terms
/// of order j^{-2-l/d}.
pub fn c1_component(d: usize) -> Result<SeriesValue> {
    check_d(d)?;
    let df = d as f64;
    let sign_d = if d % 2 == 0 { 1.0 } else { -1.0 };
    let mut total = KahanSum::new();
    let mut err = 0.0f64;
    let mut terms = 0usize;
    for l in 0..=d - 2 {
        let lf = l as f64;
        let coeff = binom_f64(d - 1, l)
            * if l % 2 == 0 { 1.0 } else { -1.0 }
            * gamma_re((lf + 1.0) / df);
        let inner = zeta_tail_sum(
            move |i| {
                let jf = (i + 1) as f64;
                let ratio =
                    (lg(jf + 1.0 + 1.0 / df) - lg(jf + 1.0 + (lf + 1.0) / df)).exp() / (jf + 1.0);
                ratio * binom_ratio_minus_one(df * jf, lf, d)
            },
            2.0 + lf / df,
            tail_len(d),
        )?;
        total.add(coeff * inner.value);
        err += coeff.abs() * inner.err;
        terms += inner.terms_used;
    }
    let pref = sign_d / (df * (df - 1.0));
    Ok(SeriesValue::new(pref * total.value(), pref.abs() * err, terms))
}

/// `C_d^[2] = (1 + (-1)^d)(I_{d,0} - Gamma(1+1/d)/(d(d-1)))`; exactly zero
/// for odd d.
pub fn c2_component(d: usize, i_d0_val: SeriesValue) -> Result<SeriesValue> {
    check_d(d)?;
    if d % 2 == 1 {
        return Ok(SeriesValue::exact(0.0));
    }
    let df = d as f64;
    let v = 2.0 * (i_d0_val.value - gamma_re(1.0 + 1.0 / df) / (df * (df - 1.0)));
    Ok(SeriesValue::new(v, 2.0 * i_d0_val.err, i_d0_val.terms_used))
}

/// `C_d^[3]`: same structure as `C_d^[1]` with the shifted binomial ratio
/// `binom(dj, d)/binom(dj+d-l-1, d) - 1`.
pub fn c3_component(d: usize) -> Result<SeriesValue> {
    check_d(d)?;
    let df = d as f64;
    let sign_d = if d % 2 == 0 { 1.0 } else { -1.0 };
    let mut total = KahanSum::new();
    let mut err = 0.0f64;
    let mut terms = 0usize;
    for l in 0..=d - 2 {
        let lf = l as f64;
        let coeff = binom_f64(d - 1, l)
            * if l % 2 == 0 { -1.0 } else { 1.0 }
            * gamma_re((lf + 1.0) / df);
        let inner = zeta_tail_sum(
            move |i| {
                let jf = (i + 1) as f64;
                let ratio =
                    (lg(jf + 1.0 - lf / df) - lg(jf + 1.0)).exp() / (df * jf + df - lf - 1.0);
                // binom(dj,d)/binom(dj+d-l-1,d) = prod_i (1 - (d-l-1)/(dj+d-l-1-i))
                let mut ln_ratio = 0.0f64;
                for i in 0..d {
                    ln_ratio +=
                        (-(df - lf - 1.0) / (df * jf + df - lf - 1.0 - i as f64)).ln_1p();
                }
                ratio * ln_ratio.exp_m1()
            },
            2.0 + lf / df,
            tail_len(d),
        )?;
        total.add(coeff * inner.value);
        err += coeff.abs() * inner.err;
        terms += inner.terms_used;
    }
    let pref = sign_d / (df - 1.0);
    Ok(SeriesValue::new(pref * total.value(), pref.abs() * err, terms))
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (lg(n as f64 + 1.0) - lg(k as f64 + 1.0) - lg((n - k) as f64 + 1.0))
        .exp()
        .round()
}

/// The Pareto-record variance constant `v_d`.
pub fn v_const(d: usize, eps: f64) -> Result<ConstantReport> {
    check_d(d)?;
    let df = d as f64;
    let i0 = i_d0(d, eps)?;
    let idd = i_dd(d, eps)?;
    let c1 = c1_component(d)?;
    let c2 = c2_component(d, i0)?;
    let c3 = c3_component(d)?;
    let cd = c1.value + c2.value + c3.value + idd.value - i0.value;
    let cd_err = c1.err + c2.err + c3.err + idd.err + i0.err;
    let value = df / (df - 1.0) * gamma_re(1.0 / df) + 2.0 * df * df * cd;
    let terms = i0.terms_used + idd.terms_used + c1.terms_used + c3.terms_used;
    Ok(ConstantReport {
        d,
        name: "v",
        value: SeriesValue::new(value, 2.0 * df * df * cd_err, terms),
        components: vec![
            ("I_{d,0}".to_string(), i0),
            ("I_{d,d}".to_string(), idd),
            ("C^[1]".to_string(), c1),
            ("C^[2]".to_string(), c2),
            ("C^[3]".to_string(), c3),
        ],
        oracle: None,
    })
}

/// `2F1(1+1/d, 1; 1+(j+1)/d; 1/2)` for j = 0..d-1, shared by `J_{d,0}` and
/// the `J''` terms; geometric convergence.
fn f21_table(d: usize, eps: f64) -> Result<Vec<SeriesValue>> {
    let df = d as f64;
    (0..d)
        .map(|j| {
            p_f_q(
                &[1.0 + 1.0 / df, 1.0],
                &[1.0 + (j as f64 + 1.0) / df],
                0.5,
                eps,
            )
        })
        .collect()
}

/// `J_{d,0}` via the exponentially convergent 2F1 combination.
pub fn j_d0(d: usize, eps: f64) -> Result<SeriesValue> {
    check_d(d)?;
    let df = d as f64;
    let f = f21_table(d, eps)?;
    let pref = gamma_re(1.0 / df) * 2f64.powf(-1.0 / df);
    let mut acc = KahanSum::new();
    let mut err = 0.0;
    let mut terms = 0;
    for (l, fv) in f.iter().enumerate() {
        let c = binom_f64(d - 1, l) * if l % 2 == 0 { 1.0 } else { -1.0 } / (l as f64 + 1.0);
        acc.add(c * fv.value);
        err += c.abs() * fv.err;
        terms += fv.terms_used;
    }
    Ok(SeriesValue::new(pref * acc.value(), pref * err, terms))
}

/// `J''_{d,k+1}` for k = 0..d-2, from the shared 2F1 table.
///
/// The sign in front is `(-1)^k`: with `(-1)^{k+1}` the d = 2 assembly
/// misses the closed form `vtilde_2 = sqrt(pi)(2 ln 2 - 1)` (and `J''` would
/// come out positive although it is minus an integral of a positive
/// function), so the exponent printed in the source derivation is off by
/// one.
fn j_pp(d: usize, k: usize, f: &[SeriesValue]) -> SeriesValue {
    let df = d as f64;
    let pref = if k % 2 == 0 { 1.0 } else { -1.0 } * 2f64.powf(-1.0 / df) * gamma_re(1.0 / df);
    let mut acc = KahanSum::new();
    let mut err = 0.0;
    let mut terms = 0;
    for j in k + 1..d {
        let c = binom_f64(d - 1, j) * if j % 2 == 0 { 1.0 } else { -1.0 } / (j as f64 + 1.0);
        acc.add(c * f[j].value);
        err += c.abs() * f[j].err;
        terms += f[j].terms_used;
    }
    SeriesValue::new(pref * acc.value(), pref.abs() * err, terms)
}

/// `J'_{d,k+1}` for k = 0..d-2: double sum of 3F2(.. ; -1) values (summed by
/// the Euler transformation inside `p_f_q`).
fn j_p(d: usize, k: usize, eps: f64) -> Result<SeriesValue> {
    let df = d as f64;
    let pref = 2.0 * gamma_re(1.0 / df) * gamma_re(df);
    let mut acc = KahanSum::new();
    let mut err = 0.0;
    let mut terms = 0;
    for j in 0..=d - 2 - k {
        let jf = j as f64;
        let cj = if j % 2 == 0 { 1.0 } else { -1.0 }
            / (gamma_re(jf + 1.0) * gamma_re((d - 2 - k - j) as f64 + 1.0));
        for l in 0..=k {
            let lf = l as f64;
            let cl = if l % 2 == 0 { 1.0 } else { -1.0 }
                / (gamma_re(lf + 1.0) * gamma_re((k - l) as f64 + 1.0));
            let kf = k as f64;
            let f32v = p_f_q(
                &[1.0 + 1.0 / df, (kf + jf + 2.0) / df, 1.0],
                &[1.0 + (lf + jf + 1.0) / df, 1.0 + (kf + jf + 2.0) / df],
                -1.0,
                eps,
            )?;
            let c = cj * cl / ((lf + jf + 1.0) * (kf + jf + 2.0));
            acc.add(c * f32v.value);
            err += c.abs() * f32v.err;
            terms += f32v.terms_used;
        }
    }
    Ok(SeriesValue::new(pref * acc.value(), pref * err, terms))
}

/// The maxima variance constant `vtilde_d`.
pub fn vtilde_const(d: usize, eps: f64) -> Result<ConstantReport> {
    check_d(d)?;
    let df = d as f64;
    let f = f21_table(d, eps)?;
    let j0 = j_d0(d, eps)?;
    let mut components = vec![("J_{d,0}".to_string(), j0)];
    let mut acc = KahanSum::new();
    acc.add(gamma_re(1.0 / df));
    acc.add(-j0.value);
    let mut err = j0.err;
    let mut terms = j0.terms_used;
    for k in 1..d {
        let jp = j_p(d, k - 1, eps)?;
        let jpp = j_pp(d, k - 1, &f);
        let jk = SeriesValue::new(
            jp.value + jpp.value,
            jp.err + jpp.err,
            jp.terms_used + jpp.terms_used,
        );
        let c = binom_f64(d, k);
        acc.add(c * jk.value);
        err += c * jk.err;
        terms += jk.terms_used;
        components.push((format!("J_{{d,{k}}}"), jk));
    }
    Ok(ConstantReport {
        d,
        name: "vtilde",
        value: SeriesValue::new(acc.value(), err, terms),
        components,
        oracle: None,
    })
}

/// The Chiu–Quine constant `K_d`. The inner series pairs the two Gamma-ratio
/// pieces term by term (each half alone decays like j^{-1-l/d-m}; the
/// difference decays like j^{-2-l/d-m} and is closed with a zeta tail).
pub fn k_const(d: usize, _eps: f64) -> Result<ConstantReport> {
    check_d(d)?;
    let df = d as f64;
    let mut components = Vec::new();
    let mut acc = KahanSum::new();
    let mut err = 0.0f64;
    let mut terms = 0usize;
    for m in 0..=d - 2 {
        let mf = m as f64;
        let mut m_acc = KahanSum::new();
        let mut m_err = 0.0f64;
        let mut m_terms = 0usize;
        for l in 0..=d - 2 - m {
            let lf = l as f64;
            let coeff = binom_f64(d - 2, m)
                * binom_f64(d - 2 - m, l)
                * if (d - 2 - m - l) % 2 == 0 { 1.0 } else { -1.0 }
                * gamma_re(mf + 1.0)
                * gamma_re((lf + 1.0) / df);
            let inner = zeta_tail_sum(
                move |j| {
                    let jf = j as f64;
                    let t1 = (lg(jf + 1.0 - lf / df) - lg(jf + 1.0)
                        + lg(df * jf + df - lf - mf - 1.0)
                        - lg(df * jf + df - lf))
                        .exp();
                    let t2 = (lg(jf + 1.0 + 1.0 / df) - lg(jf + 1.0 + (lf + 1.0) / df)
                        + lg(df * jf + df - mf)
                        - lg(df * jf + df + 1.0))
                        .exp();
                    t1 - t2
                },
                mf + 2.0 + lf / df,
                tail_len(d),
            )?;
            m_acc.add(coeff * inner.value);
            m_err += coeff.abs() * inner.err;
            m_terms += inner.terms_used;
        }
        acc.add(m_acc.value());
        err += m_err;
        terms += m_terms;
        components.push((
            format!("K_{{d,{m}}}"),
            SeriesValue::new(m_acc.value() / (df * df), m_err / (df * df), m_terms),
        ));
    }
    Ok(ConstantReport {
        d,
        name: "K",
        value: SeriesValue::new(acc.value() / (df * df), err / (df * df), terms),
        components,
        oracle: None,
    })
}

/// Adaptive quadrature of the alternative integral representation printed
/// alongside each series, used as an independent cross-check.
pub fn oracle_integral(name: OracleKind, d: usize) -> Result<SeriesValue> {
    check_d(d)?;
    let df = d as f64;
    let eps = 1e-9;
    match name {
        OracleKind::I0 => {
            let v = quad1d(
                move |x| {
                    let t = x.powi(d as i32);
                    // (1 - (1+t)^{-1/d})/t, stable for small t; -> 1/d at 0
                    let ratio = if t < 1e-280 {
                        1.0 / df
                    } else {
                        -(-t.ln_1p() / df).exp_m1() / t
                    };
                    (1.0 - x).powi(d as i32 - 1) * ratio
                },
                0.0,
                1.0,
                eps,
            )?;
            let pref = gamma_re(1.0 / df) / (df - 1.0);
            Ok(SeriesValue::new(pref * v.value, pref * v.err, v.terms_used))
        }
        OracleKind::Idd => {
            let v = quad1d(
                move |t| {
                    let a = t.powf(1.0 / df - 1.0) * (-t.ln_1p() / df).exp();
                    // (-ln(1-t) - t)/t^2 -> 1/2 as t -> 0
                    let b = if t < 1e-4 {
                        0.5 + t / 3.0 + t * t / 4.0 + t * t * t / 5.0
                    } else {
                        (-(-t).ln_1p() - t) / (t * t)
                    };
                    (1.0 - t.powf(1.0 / df)).powi(d as i32 - 1) * (a + b)
                },
                0.0,
                1.0,
                eps,
            )?;
            let pref = gamma_re(1.0 / df) / (df * (df - 1.0));
            Ok(SeriesValue::new(
                pref * (v.value - 1.0),
                pref * v.err,
                v.terms_used,
            ))
        }
        OracleKind::J0 => {
            let v = quad1d(
                move |x| {
                    (1.0 - x).powi(d as i32 - 1)
                        * (-(1.0 + 1.0 / df) * x.powi(d as i32).ln_1p()).exp()
                },
                0.0,
                1.0,
                eps,
            )?;
            let pref = 2.0 * gamma_re(1.0 / df);
            Ok(SeriesValue::new(pref * v.value, pref * v.err, v.terms_used))
        }
        OracleKind::K => {
            if d > 8 {
                return Err(Error::InvalidArgument(
                    "the 2-D oracle is validated for d <= 8".to_string(),
                ));
            }
            // u^{-1-1/d} v^{-1-1/d} (1/u + 1/v - 1)^{-1-1/d} collapses to
            // (u + v - uv)^{-1-1/d}, which is bounded on the open square
            let v = quad2d_unit_square(
                move |u, w| {
                    (u.powf(-1.0 / df) + w.powf(-1.0 / df) - 2.0).powi(d as i32 - 2)
                        * (u + w - u * w).powf(-1.0 - 1.0 / df)
                },
                1e-8,
            )?;
            let pref = gamma_re(1.0 / df) / df.powi(4);
            Ok(SeriesValue::new(pref * v.value, pref * v.err, v.terms_used))
        }
    }
}

/// CSV table `d, v, v_err, vtilde, vtilde_err, K, K_err` for d = 2..=d_max.
pub fn constants_csv(d_max: usize, eps: f64) -> Result<String> {
    check_d(d_max)?;
    let mut out = String::from("d,v,v_err,vtilde,vtilde_err,K,K_err\n");
    for d in 2..=d_max {
        let v = v_const(d, eps)?;
        let vt = vtilde_const(d, eps)?;
        let k = k_const(d, eps)?;
        out.push_str(&format!(
            "{},{:.15e},{:.3e},{:.15e},{:.3e},{:.15e},{:.3e}\n",
            d, v.value.value, v.value.err, vt.value.value, vt.value.err, k.value.value,
            k.value.err
        ));
    }
    Ok(out)
}

/// Published high-precision values of the three constants for d = 2..=12,
/// used as regression references by the tests and the validation suite.
/// Index `d - 2`.
pub mod reference {
    pub const V: [f64; 11] = [
        2.8612635493111788253114379,
        3.2252436444055768966059392,
        3.9779727442194552929264760,
        4.8452739171626114222650057,
        5.7634995321965686481277416,
        6.7086512250865903636434742,
        7.6695504435246650470424808,
        8.6403279742082872493100067,
        9.6176475521137557394420940,
        10.5994978766569516309876869,
        11.5846078314604097779437163,
    ];

    pub const VTILDE: [f64; 11] = [
        0.6846889279500361741809957,
        1.4821731873405836860111369,
        2.3582437612024869374228054,
        3.2777390059794912668480858,
        4.2223109450770677999834338,
        5.1822076686160784851729967,
        6.1519629023774744550828039,
        7.1283513658433605279329089,
        8.1093823221158498252777117,
        9.0937774697866808969470616,
        10.080686465197330811316376,
    ];

    pub const K: [f64; 11] = [
        0.3071428473569440251848954,
        0.2128824684732209969380676,
        0.1949467028230331819040460,
        0.2072321512996714585493769,
        0.2433117024518367255488428,
        0.3074456566078932224237300,
        0.4112701058903858387359349,
        0.5757168456672436432808087,
        0.8361582236771160023316115,
        1.2517963251140708648031485,
        1.9220104035188473601285304,
    ];
}
