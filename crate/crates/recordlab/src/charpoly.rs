//! Zeros of the chain-record characteristic polynomial
//! `(z+1)(z+2)...(z+d) - d! y` and the dominant branch through `z = 0` at
//! `y = 1`.
//!
//! Strategy: Aberth-Ehrlich simultaneous iteration with the polynomial
//! evaluated in product form, then a Newton polish per root. The expanded
//! coefficients reach ~d! and make companion-matrix eigenvalues useless
//! beyond d around 25; the product form stays well conditioned to d = 50.

use num_complex::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::specfun::{harmonic, rational_to_f64};

/// Zeros of `(z+1)...(z+d) - d! y`. At `y = 1` the root `z = 0` is factored
/// out, so `lambdas` holds `d - 1` values; otherwise `d`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub d: u32,
    pub y: f64,
    pub lambdas: Vec<Complex64>,
}

fn factorial_f64(d: u32) -> f64 {
    (1..=d).map(|i| i as f64).product()
}

/// `p(z) = prod (z+i) - d! y` and `p'(z)`, both in product form.
fn eval_p(d: u32, y: f64, z: Complex64) -> (Complex64, Complex64) {
    let mut q = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    for i in 1..=d {
        let f = z + i as f64;
        q *= f;
        s += 1.0 / f;
    }
    (q - factorial_f64(d) * y, q * s)
}

fn newton_polish(d: u32, y: f64, mut z: Complex64) -> Complex64 {
    for _ in 0..60 {
        let (p, dp) = eval_p(d, y, z);
        if dp.norm() == 0.0 {
            break;
        }
        let dz = p / dp;
        if !dz.re.is_finite() || !dz.im.is_finite() {
            break;
        }
        z -= dz;
        if dz.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Aberth-Ehrlich iteration for the `m` unknown roots of `p`; `pinned`
/// holds roots known in advance (the factored-out `z = 0` at `y = 1`),
/// which enter the repulsion sum but are never moved.
fn aberth(d: u32, y: f64, m: usize, pinned: &[Complex64]) -> Result<Vec<Complex64>> {
    // starting points on a circle enclosing the root set, angles offset to
    // avoid real-axis symmetry traps
    let center = Complex64::new(-0.5 * (d as f64 + 1.0), 0.0);
    let radius = 0.7 * (d as f64 + 1.0) + 1.0;
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.3) / m as f64 + 0.2;
            center + radius * Complex64::new(th.cos(), th.sin())
        })
        .collect();
    for _iter in 0..400 {
        let mut worst = 0.0f64;
        for k in 0..m {
            let (p, dp) = eval_p(d, y, z[k]);
            if dp.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..m {
                if j != k {
                    s += 1.0 / (z[k] - z[j]);
                }
            }
            for &w in pinned {
                s += 1.0 / (z[k] - w);
            }
            let corr = ratio / (1.0 - ratio * s);
            if !corr.re.is_finite() || !corr.im.is_finite() {
                continue;
            }
            z[k] -= corr;
            worst = worst.max(corr.norm() / (1.0 + z[k].norm()));
        }
        if worst <= 1e-14 {
            return Ok(z);
        }
    }
    Err(Error::RootFinding(format!(
        "aberth(d={d}, y={y}) did not converge"
    )))
}

/// All zeros of `(z+1)...(z+d) - d! y`, by Aberth iteration polished with
/// Newton. Sorted by real part, then imaginary part, and closed under
/// conjugation.
pub fn char_zeros(d: u32, y: f64) -> Result<Spectrum> {
    if d < 2 {
        return Err(Error::BadDimension { min: 2, got: d as usize });
    }
    if !(y > 0.0) {
        return Err(Error::InvalidArgument(format!("char_zeros needs y > 0, got {y}")));
    }
    let dfact = factorial_f64(d);

    // at y = 1 the root z = 0 is exact; pin it and solve for the rest
    let pinned = if y == 1.0 { vec![Complex64::new(0.0, 0.0)] } else { vec![] };
    let m = d as usize - pinned.len();
    let mut roots: Vec<Complex64> = aberth(d, y, m, &pinned)?
        .into_iter()
        .map(|z| newton_polish(d, y, z))
        .collect();

    // snap near-real roots onto the axis and re-polish there
    for z in roots.iter_mut() {
        if z.im != 0.0 && z.im.abs() <= 1e-8 * (1.0 + z.re.abs()) {
            *z = newton_polish(d, y, Complex64::new(z.re, 0.0));
        }
    }

    // enforce conjugate closure: pair the upper and lower half-plane roots
    let mut real: Vec<Complex64> = roots.iter().copied().filter(|z| z.im == 0.0).collect();
    let mut upper: Vec<Complex64> = roots.iter().copied().filter(|z| z.im > 0.0).collect();
    let lower_n = roots.len() - real.len() - upper.len();
    if upper.len() == lower_n {
        upper.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        roots = real.clone();
        for &z in &upper {
            roots.push(z);
            roots.push(z.conj());
        }
    } else {
        // unbalanced (should not happen); keep what Newton gave us
        real.clear();
    }

    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());

    let tol = 1e-10 * dfact;
    for &z in &roots {
        let (p, _) = eval_p(d, y, z);
        if p.norm() > tol {
            return Err(Error::RootFinding(format!(
                "zero {z} of d={d}, y={y} has residual {:.3e} > {tol:.3e}",
                p.norm()
            )));
        }
    }
    Ok(Spectrum { d, y, lambdas: roots })
}

/// First three coefficients of the dominant branch
/// `lambda_d(e^eta) = a1 eta + a2 eta^2 + a3 eta^3 + O(eta^4)`,
/// from exact harmonic numbers:
/// `a1 = 1/H_d`, `a2 = H_d^(2) / (2 H_d^3)`,
/// `a3 = -(2 H_d H_d^(3) - 3 (H_d^(2))^2) / (6 H_d^5)`.
pub fn branch_series_coeffs(d: u32) -> [f64; 3] {
    let h1 = harmonic(d as usize, 1).exact.unwrap();
    let h2 = harmonic(d as usize, 2).exact.unwrap();
    let h3 = harmonic(d as usize, 3).exact.unwrap();
    let two = BigRational::from(BigInt::from(2));
    let three = BigRational::from(BigInt::from(3));
    let six = BigRational::from(BigInt::from(6));
    let a1 = h1.recip();
    let a2 = &h2 / (&two * &h1 * &h1 * &h1);
    let h1_5 = &h1 * &h1 * &h1 * &h1 * &h1;
    let a3 = -(&two * &h1 * &h3 - &three * &h2 * &h2) / (&six * h1_5);
    [rational_to_f64(&a1), rational_to_f64(&a2), rational_to_f64(&a3)]
}

/// The analytic branch `lambda_d(y)` with `lambda_d(1) = 0`; real for real
/// `y` near 1.
pub fn dominant_branch(d: u32, y: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::BadDimension { min: 2, got: d as usize });
    }
    if !((y - 1.0).abs() <= 0.5) {
        return Err(Error::InvalidArgument(format!(
            "dominant_branch needs |y-1| <= 1/2, got y={y}"
        )));
    }
    let [a1, a2, a3] = branch_series_coeffs(d);
    let eta = y.ln();
    let mut x = a1 * eta + a2 * eta * eta + a3 * eta * eta * eta;
    let dfact = factorial_f64(d);
    for it in 0..100 {
        let mut q = 1.0f64;
        let mut s = 0.0f64;
        for i in 1..=d {
            q *= x + i as f64;
            s += 1.0 / (x + i as f64);
        }
        let p = q - dfact * y;
        let dp = q * s;
        if dp == 0.0 {
            return Err(Error::RootFinding("dominant_branch: zero derivative".into()));
        }
        let dx = p / dp;
        x -= dx;
        if dx.abs() <= 1e-15 * (1.0 + x.abs()) {
            return Ok(x);
        }
        if it == 99 {
            return Err(Error::RootFinding(format!(
                "dominant_branch(d={d}, y={y}) did not converge"
            )));
        }
    }
    Ok(x)
}

/// `Re(-z ln z + (1+z) ln(1+z))`, whose zero set is the limiting curve
/// `|z^{-z} (z+1)^{1+z}| = 1` of the normalized zeros.
fn curve_fn(z: Complex64) -> f64 {
    (-z * z.ln() + (1.0 + z) * (1.0 + z).ln()).re
}

/// Points on the limiting curve, traced by bisection along rays from
/// `-1/2`; the upper-half arc runs from `0` to `-1` and the output includes
/// the conjugate of every interior point.
pub fn limit_curve(resolution: usize) -> Result<Vec<Complex64>> {
    if resolution < 2 {
        return Err(Error::InvalidArgument("limit_curve needs resolution >= 2".into()));
    }
    let center = Complex64::new(-0.5, 0.0);
    let mut upper = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let theta = std::f64::consts::PI * i as f64 / (resolution - 1) as f64;
        if i == 0 {
            upper.push(Complex64::new(0.0, 0.0));
            continue;
        }
        if i == resolution - 1 {
            upper.push(Complex64::new(-1.0, 0.0));
            continue;
        }
        let dir = Complex64::new(theta.cos(), theta.sin());
        // f < 0 at the center, f -> +inf outward along every ray
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        while curve_fn(center + hi * dir) < 0.0 {
            hi *= 2.0;
            if hi > 64.0 {
                return Err(Error::RootFinding("limit_curve: no sign change on ray".into()));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if curve_fn(center + mid * dir) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 {
                break;
            }
        }
        upper.push(center + 0.5 * (lo + hi) * dir);
    }
    let mut out = upper.clone();
    for &z in upper.iter() {
        if z.im > 0.0 {
            out.push(z.conj());
        }
    }
    Ok(out)
}

/// CSV with columns `d,re,im`: normalized zeros `lambda/d` for
/// `d = 3..=d_max` at `y = 1`, plus limit-curve rows tagged `d = 0`.
pub fn zeros_csv(d_max: u32, resolution: usize) -> Result<String> {
    let mut s = String::from("d,re,im\n");
    for d in 3..=d_max {
        let spec = char_zeros(d, 1.0)?;
        for z in &spec.lambdas {
            s.push_str(&format!("{},{:.15e},{:.15e}\n", d, z.re / d as f64, z.im / d as f64));
        }
    }
    for z in limit_curve(resolution)? {
        s.push_str(&format!("0,{:.15e},{:.15e}\n", z.re, z.im));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_d_closed_forms() {
        // d=2, y=1: z^2+3z = z(z+3)
        let s = char_zeros(2, 1.0).unwrap();
        assert_eq!(s.lambdas.len(), 1);
        assert_relative_eq!(s.lambdas[0].re, -3.0, max_relative = 1e-13);
        assert_eq!(s.lambdas[0].im, 0.0);
        // d=3, y=1: z(z^2+6z+11), roots -3 +- i sqrt(2)
        let s = char_zeros(3, 1.0).unwrap();
        assert_eq!(s.lambdas.len(), 2);
        let r2 = 2f64.sqrt();
        assert_relative_eq!(s.lambdas[0].re, -3.0, max_relative = 1e-12);
        assert_relative_eq!(s.lambdas[0].im.abs(), r2, max_relative = 1e-12);
        assert_eq!(s.lambdas[0].conj(), s.lambdas[1]);
        // d=4, y=1 contains -5
        let s = char_zeros(4, 1.0).unwrap();
        assert!(s.lambdas.iter().any(|z| z.im == 0.0 && (z.re + 5.0).abs() < 1e-12));
    }

    #[test]
    fn residuals_and_vieta_up_to_50() {
        for d in 2..=50u32 {
            let s = char_zeros(d, 1.0).unwrap();
            assert_eq!(s.lambdas.len(), (d - 1) as usize);
            // residual check is built into char_zeros; verify Vieta here:
            // sum of all zeros including 0 is -d(d+1)/2
            let sum: Complex64 = s.lambdas.iter().sum();
            let expect = -(d as f64) * (d as f64 + 1.0) / 2.0;
            assert!(
                (sum.re - expect).abs() <= 1e-10 * expect.abs() && sum.im.abs() <= 1e-10,
                "d={d} sum={sum}"
            );
        }
    }

    #[test]
    fn real_zero_structure() {
        for d in 2..=20u32 {
            let s = char_zeros(d, 1.0).unwrap();
            let reals: Vec<f64> =
                s.lambdas.iter().filter(|z| z.im == 0.0).map(|z| z.re).collect();
            if d % 2 == 0 {
                assert_eq!(reals.len(), 1, "d={d}");
                assert!((reals[0] + d as f64 + 1.0).abs() <= 1e-12 * (d as f64 + 1.0));
            } else {
                assert!(reals.is_empty(), "d={d}: unexpected real zeros {reals:?}");
            }
        }
    }

    #[test]
    fn conjugate_closure() {
        for d in [3u32, 7, 12, 25] {
            for y in [0.7, 1.0, 1.4] {
                let s = char_zeros(d, y).unwrap();
                for z in &s.lambdas {
                    assert!(
                        s.lambdas.iter().any(|w| (w - z.conj()).norm() < 1e-12),
                        "d={d} y={y}: {z} lacks a conjugate"
                    );
                }
            }
        }
    }

    #[test]
    fn dominant_branch_values() {
        for d in [2u32, 3, 5, 10] {
            assert_eq!(dominant_branch(d, 1.0).unwrap(), 0.0);
        }
        // d=2: quadratic formula for z^2+3z+2-2y
        let v = dominant_branch(2, 1.21).unwrap();
        let expect = (-3.0 + (1.0f64 + 8.0 * 1.21).sqrt()) / 2.0;
        assert_relative_eq!(v, expect, max_relative = 1e-13);
        assert!((v - 0.1340135).abs() < 1e-6);
        // derivative at y=1 is 1/H_d
        for d in [2u32, 3, 6] {
            let h = 1e-6;
            let fd = (dominant_branch(d, 1.0 + h).unwrap() - dominant_branch(d, 1.0 - h).unwrap())
                / (2.0 * h);
            let hd: f64 = (1..=d).map(|i| 1.0 / i as f64).sum();
            assert_relative_eq!(fd, 1.0 / hd, max_relative = 1e-7);
        }
    }

    #[test]
    fn branch_monotone_in_y() {
        for d in [2u32, 4, 9] {
            let mut prev = f64::NEG_INFINITY;
            let mut y = 0.6;
            while y <= 1.5 {
                let v = dominant_branch(d, y).unwrap();
                assert!(v > prev, "d={d} y={y}");
                prev = v;
                y += 0.05;
            }
        }
    }

    #[test]
    fn series_coeffs_exact_d2() {
        let [a1, a2, a3] = branch_series_coeffs(2);
        assert_relative_eq!(a1, 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(a2, 5.0 / 27.0, max_relative = 1e-15);
        assert_relative_eq!(a3, 7.0 / 243.0, max_relative = 1e-15);
        assert!((a3 - 0.0288065843).abs() < 1e-9);
    }

    #[test]
    fn series_coeff_one_is_reciprocal_harmonic() {
        for d in 2..=10u32 {
            let hd: f64 = (1..=d).map(|i| 1.0 / i as f64).sum();
            assert_relative_eq!(branch_series_coeffs(d)[0], 1.0 / hd, max_relative = 1e-13);
        }
    }

    #[test]
    fn series_coeffs_match_finite_differences() {
        // solve the 4x4 Vandermonde for (a1..a4) from samples at
        // eta = +-1e-3, +-2e-3; the truncation error on a1..a3 is O(h^4)
        for d in [2u32, 3, 5, 8] {
            let hs: [f64; 4] = [1e-3, -1e-3, 2e-3, -2e-3];
            let mut a = nalgebra::DMatrix::<f64>::zeros(4, 4);
            let mut b = nalgebra::DVector::<f64>::zeros(4);
            for (r, &h) in hs.iter().enumerate() {
                for c in 0..4 {
                    a[(r, c)] = h.powi(c as i32 + 1);
                }
                b[r] = dominant_branch(d, h.exp()).unwrap();
            }
            let sol = a.lu().solve(&b).unwrap();
            let coeffs = branch_series_coeffs(d);
            for k in 0..3 {
                assert!(
                    (sol[k] - coeffs[k]).abs() < 1e-6,
                    "d={d} k={k}: fd {} vs exact {}",
                    sol[k],
                    coeffs[k]
                );
            }
        }
    }

    #[test]
    fn limit_curve_properties() {
        let pts = limit_curve(101).unwrap();
        for &z in &pts {
            // endpoints 0 and -1 satisfy the equation in the limit
            if z.norm() == 0.0 || (z + 1.0).norm() == 0.0 {
                continue;
            }
            let modulus = curve_fn(z).exp();
            assert!((modulus - 1.0).abs() <= 1e-10, "z={z}: |expr|={modulus}");
        }
        for &z in &pts {
            if z.im != 0.0 {
                assert!(pts.iter().any(|w| (w - z.conj()).norm() < 1e-14));
            }
        }
        // normalized zeros approach the curve: spot-check that every
        // normalized zero at d=50 is within 0.06 of some curve point
        let s = char_zeros(50, 1.0).unwrap();
        for z in &s.lambdas {
            let zn = z / 50.0;
            let dist = pts.iter().map(|w| (w - zn).norm()).fold(f64::MAX, f64::min);
            assert!(dist < 0.06, "normalized zero {zn} is {dist} from the curve");
        }
    }

    #[test]
    fn csv_shape() {
        let csv = zeros_csv(5, 21).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "d,re,im");
        assert!(csv.lines().any(|l| l.starts_with("3,")));
        assert!(csv.lines().any(|l| l.starts_with("0,")));
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(char_zeros(1, 1.0).is_err());
        assert!(char_zeros(3, 0.0).is_err());
        assert!(dominant_branch(2, 2.0).is_err());
        assert!(limit_curve(1).is_err());
    }
}
