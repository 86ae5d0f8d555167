//! Shared helpers for the integration tests: a slow exact-rational
//! series evaluator used as independent ground truth for the special
//! functions, and a high-order finite-difference residual probe.
//!
//! Nothing here is reachable from the library: the library must stand
//! on its own double-double arithmetic.
//!
//! Each integration-test binary compiles its own copy and uses a
//! different subset of the helpers.
#![allow(dead_code)]

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Exact-rational partial sum of Σ (a)_k/(b)_k z^k/k!.
///
/// The inputs are f64, i.e. exact binary rationals, so every term and
/// partial sum is exact; the only rounding is the final conversion to
/// f64. Truncation stops when the term magnitude falls 10^-60 below the
/// largest partial-sum magnitude seen, far beyond f64 resolution.
pub fn oracle_1f1(a: f64, b: f64, z: f64) -> f64 {
    let a = BigRational::from_f64(a).expect("finite a");
    let b = BigRational::from_f64(b).expect("finite b");
    let z = BigRational::from_f64(z).expect("finite z");
    let threshold_num = BigInt::from(1u8);
    let threshold_den = BigInt::from(10u8).pow(60);
    let threshold = BigRational::new(threshold_num, threshold_den);

    let mut sum = BigRational::from_integer(1.into());
    let mut term = BigRational::from_integer(1.into());
    let mut scale = BigRational::from_integer(1.into());
    for k in 0..10_000u32 {
        let kr = BigRational::from_integer(k.into());
        let num = &a + &kr;
        if num.is_zero() {
            break; // terminating series
        }
        term = term * num * &z / ((&b + &kr) * (kr + BigRational::from_integer(1.into())));
        sum += &term;
        let t = term.abs();
        if t > scale {
            scale = t.clone();
        }
        if sum.abs() > scale {
            scale = sum.abs();
        }
        if t < &threshold * &scale {
            break;
        }
    }
    sum.to_f64().expect("rational fits in f64")
}

/// Term-by-term differentiated series: d/dz ₁F₁(a,b;z) = (a/b)·₁F₁(a+1,b+1;z).
pub fn oracle_1f1_derivative(a: f64, b: f64, z: f64) -> f64 {
    a / b * oracle_1f1(a + 1.0, b + 1.0, z)
}

/// Ū(a,1/2;z) from the exact-rational series pair with statrs gammas.
/// Adequate for z ≲ 5 where the combination loses only a few digits.
pub fn oracle_ubar(a: f64, z: f64) -> f64 {
    let f1 = oracle_1f1(a, 0.5, z);
    let f2 = oracle_1f1(a + 0.5, 1.5, z);
    f1 * gamma_recip(a + 0.5) - 2.0 * z.sqrt() * f2 * gamma_recip(a)
}

/// 1/Γ through statrs, with the pole zeros handled explicitly.
pub fn gamma_recip(x: f64) -> f64 {
    if x <= 0.0 && (x - x.round()).abs() < 1e-12 {
        return 0.0;
    }
    // statrs ln_gamma is for positive arguments; reflect below 0.5
    if x >= 0.5 {
        (-statrs::function::gamma::ln_gamma(x)).exp()
    } else {
        let n = x.round();
        let s = (std::f64::consts::PI * (x - n)).sin() * if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        statrs::function::gamma::ln_gamma(1.0 - x).exp() * s / std::f64::consts::PI
    }
}

/// Five-point second derivative, O(h⁴) truncation.
pub fn second_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

/// |−ψ″ + Vψ − Eψ| at x, with ψ″ by the five-point stencil at h = 1e-3.
pub fn schroedinger_residual(psi: impl Fn(f64) -> f64, v: impl Fn(f64) -> f64, e: f64, x: f64) -> f64 {
    let second = second_derivative(&psi, x, 1e-3);
    (-second + (v(x) - e) * psi(x)).abs()
}
