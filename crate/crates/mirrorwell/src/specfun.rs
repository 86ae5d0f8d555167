//! Special-function kernels: reciprocal gamma, the Kummer series
//! ₁F₁(a,b;z) and its z-derivative, the square-integrable Ū combination,
//! and the Hermite / generalized Laguerre recurrences.
//!
//! The ₁F₁ series is summed with double-double accumulation
//! ([`ExtendedReal`]); at negative `a` the terms alternate in sign and a
//! native-precision sum would lose ~11 digits by z ≈ 25.

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;

/// Kummer parameter pair (a, b). In this crate `b` is always 1/2 or 3/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParameters {
    pub a: f64,
    pub b: f64,
}

impl KummerParameters {
    pub fn new(a: f64, b: f64) -> Self {
        debug_assert!(!(b <= 0.0 && (b - b.round()).abs() < 1e-12));
        Self { a, b }
    }
}

const SERIES_TERM_CAP: usize = 500;

/// Proximity threshold for treating `a` as a non-positive integer
/// (pole of Γ, exact zero of 1/Γ).
const INT_EPS: f64 = 1e-12;

fn is_nonpositive_integer(a: f64) -> bool {
    a <= 0.5 && (a - a.round()).abs() <= INT_EPS && a.round() <= 0.0
}

/// sin(πx) with argument reduction to the nearest integer, so the zeros
/// at integers are exact to machine precision even for large |x|.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (std::f64::consts::PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Lanczos (g = 7, 9 terms) approximation of Γ(x) for x >= 0.5.
fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const P: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    debug_assert!(x >= 0.5);
    let x = x - 1.0;
    let mut acc = P[0];
    for (i, &p) in P.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let t = x + G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// 1/Γ(a). Entire in `a`; exactly zero at non-positive integers.
pub fn gamma_reciprocal(a: f64) -> f64 {
    if is_nonpositive_integer(a) {
        return 0.0;
    }
    if a >= 0.5 {
        1.0 / lanczos_gamma(a)
    } else {
        // reflection: 1/Γ(a) = Γ(1-a) sin(πa)/π
        lanczos_gamma(1.0 - a) * sin_pi(a) / std::f64::consts::PI
    }
}

/// Raw Kummer series Σ_k (a)_k/(b)_k z^k/k! in double-double arithmetic.
///
/// Converges for every finite z; practical for |z| up to ~100 under the
/// term cap. Terminates exactly when `a` is a non-positive integer.
pub(crate) fn kummer_series_dd(a: f64, b: f64, z: f64) -> Result<ExtendedReal> {
    let mut sum = ExtendedReal::ONE;
    let mut term = ExtendedReal::ONE;
    let mut max_abs = 1.0f64;
    for k in 0..SERIES_TERM_CAP {
        let kf = k as f64;
        let num = a + kf;
        if num == 0.0 {
            return Ok(sum); // terminating polynomial case
        }
        term = term
            .mul_f64(num)
            .mul_f64(z)
            .div_f64(b + kf)
            .div_f64(kf + 1.0);
        sum = sum.add(term);
        let t = term.abs();
        max_abs = max_abs.max(t);
        if t <= 1e-35 * max_abs.max(sum.abs()) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNonConvergence {
        a,
        b,
        z,
        terms: SERIES_TERM_CAP,
    })
}

/// Kummer's confluent hypergeometric function ₁F₁(a,b;z).
///
/// Negative arguments are routed through the Kummer transformation
/// ₁F₁(a,b;z) = e^z ₁F₁(b−a,b;−z): the alternating series at z < 0 is
/// ill-conditioned (the terms grow like e^{|z|} before cancelling)
/// while the transformed series has positive terms.
pub fn kummer_1f1(p: KummerParameters, z: f64) -> Result<f64> {
    if !z.is_finite() || z.abs() > 100.0 {
        return Err(Error::OutOfRange {
            what: "kummer argument z",
            value: z,
        });
    }
    if z < 0.0 {
        return Ok(z.exp() * kummer_series_dd(p.b - p.a, p.b, -z)?.to_f64());
    }
    Ok(kummer_series_dd(p.a, p.b, z)?.to_f64())
}

/// d/dz ₁F₁(a,b;z) = (a/b) ₁F₁(a+1,b+1;z).
pub fn kummer_1f1_derivative(p: KummerParameters, z: f64) -> Result<f64> {
    if p.a == 0.0 {
        return Ok(0.0);
    }
    let f = kummer_1f1(KummerParameters::new(p.a + 1.0, p.b + 1.0), z)?;
    Ok(p.a / p.b * f)
}

/// ₁F₁ evaluated through the Kummer transformation
/// ₁F₁(a,b;z) = e^z ₁F₁(b-a,b;-z). Cross-check path for the direct series.
pub fn kummer_1f1_transformed(p: KummerParameters, z: f64) -> Result<f64> {
    let f = kummer_1f1(KummerParameters::new(p.b - p.a, p.b), -z)?;
    Ok(z.exp() * f)
}

/// Ū(a,1/2;z) = ₁F₁(a,1/2;z)/Γ(a+1/2) − 2√z ₁F₁(a+1/2,3/2;z)/Γ(a),
/// with the non-negative branch of √z. Callers that need the other
/// branch use [`ubar_signed`].
pub fn ubar(a: f64, z: f64) -> Result<f64> {
    if z < 0.0 {
        return Err(Error::OutOfRange {
            what: "ubar argument z",
            value: z,
        });
    }
    ubar_signed(a, z.sqrt())
}

/// Ū with an explicit signed square root: `sqrt_z` may be negative, and
/// z = sqrt_z². This is the form the wavefunction branch choices need.
pub fn ubar_signed(a: f64, sqrt_z: f64) -> Result<f64> {
    Ok(ubar_signed_dd(a, sqrt_z)?.to_f64())
}

pub(crate) fn ubar_signed_dd(a: f64, sqrt_z: f64) -> Result<ExtendedReal> {
    let z = sqrt_z * sqrt_z;
    let rg_half = gamma_reciprocal(a + 0.5);
    let rg = gamma_reciprocal(a);
    let mut acc = ExtendedReal::ZERO;
    if rg_half != 0.0 {
        acc = acc.add(kummer_series_dd(a, 0.5, z)?.mul_f64(rg_half));
    }
    if rg != 0.0 {
        let second = kummer_series_dd(a + 0.5, 1.5, z)?.mul_f64(-2.0 * sqrt_z * rg);
        acc = acc.add(second);
    }
    Ok(acc)
}

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{k+1} = 2x H_k − 2k H_{k-1}.
pub fn hermite(n: usize, x: f64) -> f64 {
    debug_assert!(n <= 200);
    let mut prev = 1.0; // H_0
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x; // H_1
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// H_n'(x) = 2n H_{n-1}(x).
pub fn hermite_derivative(n: usize, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        2.0 * n as f64 * hermite(n - 1, x)
    }
}

/// Generalized Laguerre polynomial L_n^(α)(x), normalized so that
/// L_n^(α)(0) = (α+1)_n / n!.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    debug_assert!(n <= 200);
    let mut prev = 1.0; // L_0
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x; // L_1
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1(a: f64, b: f64, z: f64) -> f64 {
        kummer_1f1(KummerParameters::new(a, b), z).unwrap()
    }

    #[test]
    fn gamma_reciprocal_basics() {
        assert!((gamma_reciprocal(1.0) - 1.0).abs() < 1e-15);
        assert_eq!(gamma_reciprocal(-2.0), 0.0);
        assert_eq!(gamma_reciprocal(0.0), 0.0);
        let want = 1.0 / std::f64::consts::PI.sqrt();
        assert!((gamma_reciprocal(0.5) - want).abs() < 1e-14 * want);
    }

    #[test]
    fn gamma_reciprocal_reflection_identity() {
        // 1/Γ(a) · 1/Γ(1-a) · π/sin(πa) = 1 for non-integer a
        for &a in &[0.3, -0.7, 2.6, -5.4, 10.25, -14.9, 23.1] {
            let lhs = gamma_reciprocal(a) * gamma_reciprocal(1.0 - a) * std::f64::consts::PI
                / sin_pi(a);
            assert!((lhs - 1.0).abs() < 1e-11, "a={a}: {lhs}");
        }
    }

    #[test]
    fn gamma_reciprocal_factorials() {
        // 1/Γ(n+1) = 1/n!
        let mut fact = 1.0f64;
        for n in 1..=20u32 {
            fact *= n as f64;
            let got = gamma_reciprocal(n as f64 + 1.0);
            assert!((got - 1.0 / fact).abs() < 1e-13 / fact, "n={n}");
        }
    }

    #[test]
    fn kummer_trivial_values() {
        assert_eq!(f1(3.7, 0.5, 0.0), 1.0);
        // a=-1, b=1/2: 1 - 2z
        assert!((f1(-1.0, 0.5, 3.0) + 5.0).abs() < 1e-14);
    }

    #[test]
    fn kummer_terminates_for_nonpositive_integer_a() {
        // a=-n: polynomial with n+1 terms; equals n!/( (1/2)_n ) L_n^{-1/2}(z)
        for n in 1..=8usize {
            let mut fact = 1.0;
            let mut poch = 1.0;
            for k in 0..n {
                fact *= (k + 1) as f64;
                poch *= 0.5 + k as f64;
            }
            for &z in &[0.3, 1.7, 4.0, 9.5] {
                let lhs = f1(-(n as f64), 0.5, z);
                let rhs = fact / poch * laguerre(n, -0.5, z);
                assert!((lhs - rhs).abs() < 1e-11 * rhs.abs().max(1.0), "n={n} z={z}");
            }
        }
    }

    #[test]
    fn kummer_derivative_contract() {
        let p = KummerParameters::new(0.0, 0.5);
        assert_eq!(kummer_1f1_derivative(p, 5.0).unwrap(), 0.0);
        // d/dz (1 - 2z) = -2
        let p = KummerParameters::new(-1.0, 0.5);
        assert!((kummer_1f1_derivative(p, 0.77).unwrap() + 2.0).abs() < 1e-14);
    }

    #[test]
    fn kummer_transform_grid() {
        let mut a = -10.0;
        while a <= 10.0 {
            for &z in &[0.0, 1.0, 4.0, 9.0, 16.0, 25.0] {
                let p = KummerParameters::new(a, 0.5);
                let direct = kummer_1f1(p, z).unwrap();
                let transformed = kummer_1f1_transformed(p, z).unwrap();
                let scale = direct.abs().max(1e-300);
                assert!(
                    ((direct - transformed) / scale).abs() < 1e-10,
                    "a={a} z={z}: {direct} vs {transformed}"
                );
            }
            a += 2.5;
        }
    }

    #[test]
    fn kummer_ode_residual() {
        // z F'' + (b - z) F' - a F = 0
        for &(a, b) in &[(0.25, 0.5), (-3.3, 0.5), (-7.75, 1.5), (1.6, 1.5)] {
            for &z in &[0.5, 2.0, 7.0, 18.0] {
                let p = KummerParameters::new(a, b);
                let f = kummer_1f1(p, z).unwrap();
                let f1d = kummer_1f1_derivative(p, z).unwrap();
                let p2 = KummerParameters::new(a + 1.0, b + 1.0);
                let f2d = a / b * kummer_1f1_derivative(p2, z).unwrap();
                let terms = [z * f2d, (b - z) * f1d, -a * f];
                let residual = terms.iter().sum::<f64>();
                let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
                assert!(residual.abs() <= 1e-9 * scale.max(1.0), "a={a} b={b} z={z}");
            }
        }
    }

    #[test]
    fn ubar_trivial_and_terminating() {
        // z=0: both series are 1 and sqrt(z)=0
        for &a in &[0.3, -2.4, 1.9] {
            let got = ubar(a, 0.0).unwrap();
            assert!((got - gamma_reciprocal(a + 0.5)).abs() < 1e-14);
        }
        // a=-1 (E=5): 1/Γ(-1)=0 kills the second term
        for &z in &[0.5, 2.0, 5.0] {
            let got = ubar(-1.0, z).unwrap();
            let want = gamma_reciprocal(-0.5) * (1.0 - 2.0 * z);
            assert!((got - want).abs() < 1e-13 * want.abs().max(1.0));
        }
    }

    #[test]
    fn hermite_basics_and_parity() {
        assert_eq!(hermite(0, 3.3), 1.0);
        // H_3(x) = 8x^3 - 12x
        assert!((hermite(3, 1.0) + 4.0).abs() < 1e-12);
        // Table 2 entry: H_2 vanishes at 0.707107
        assert!(hermite(2, 0.707107).abs() < 1e-4);
        for n in 0..=12usize {
            for &x in &[0.3, 1.1, 2.9, 4.4] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = hermite(n, -x);
                let rhs = sign * hermite(n, x);
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn laguerre_basics() {
        assert_eq!(laguerre(0, -0.5, 2.0), 1.0);
        // L_1^(α)(x) = 1 + α - x
        assert!((laguerre(1, -0.5, 1.0) + 0.5).abs() < 1e-14);
    }

    #[test]
    fn hermite_laguerre_bridges() {
        // H_2n(x)  = (-1)^n n! 2^2n   L_n^(-1/2)(x²)
        // H_2n+1(x)= (-1)^n n! 2^2n+1 x L_n^(1/2)(x²)
        for n in 0..=20usize {
            let mut fact = 1.0;
            for k in 1..=n {
                fact *= k as f64;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for &x in &[0.2, 0.7, 1.3, 2.1] {
                let even = sign * fact * 4.0f64.powi(n as i32) * laguerre(n, -0.5, x * x);
                let he = hermite(2 * n, x);
                assert!((he - even).abs() < 1e-10 * even.abs().max(1.0), "2n={n} x={x}");

                let odd = sign * fact * 2.0 * 4.0f64.powi(n as i32) * x * laguerre(n, 0.5, x * x);
                let ho = hermite(2 * n + 1, x);
                assert!((ho - odd).abs() < 1e-10 * odd.abs().max(1.0), "2n+1={n} x={x}");
            }
        }
    }
}
