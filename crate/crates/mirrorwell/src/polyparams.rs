//! Special separations d at which the wells carry a closed-form
//! polynomial eigenstate of energy 2n+1, and the eigenstates themselves.
//!
//! Even branch: positive roots of H_n'(d) − d·H_n(d).
//! Odd branch: positive zeros of H_n.

use crate::connection::{ParitySector, WellKind};
use crate::error::{Error, Result};
use crate::specfun::{hermite, hermite_derivative};
use crate::tridiag;

/// The two parameter lists for a given Hermite degree n.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialParameterSet {
    pub n: usize,
    pub even_params: Vec<f64>,
    pub odd_params: Vec<f64>,
}

/// Descriptor of one closed-form eigenstate (energy 2n+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialEigenstate {
    pub n: usize,
    pub d: f64,
    pub sector: ParitySector,
    pub kind: WellKind,
    pub energy: f64,
    /// amplitude signs of the (left, right) pieces
    pub piece_signs: (f64, f64),
}

const N_MAX: usize = 100;
const ROOT_TOL: f64 = 1e-12;

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > N_MAX {
        return Err(Error::InvalidInput(format!("degree n must be in 1..={N_MAX}, got {n}")));
    }
    Ok(())
}

/// Expected count of even parameters: [⟨⟨n⟩⟩/2] with ⟨⟨n⟩⟩ = n+1 for odd
/// n, n for even n.
pub fn even_count(n: usize) -> usize {
    let bracketed = if n % 2 == 1 { n + 1 } else { n };
    bracketed / 2
}

/// Expected count of odd parameters: [⟨n⟩/2] with ⟨n⟩ = n+1 for even n,
/// n for odd n.
pub fn odd_count(n: usize) -> usize {
    let bracketed = if n % 2 == 0 { n + 1 } else { n };
    bracketed / 2
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// All positive roots of H_n'(d) − d·H_n(d), ascending.
///
/// The sign scan runs on (0, √(2n+3)); no analytic bound for this branch
/// is known, so the scan panics if a sign change touches the upper end.
pub fn even_params(n: usize) -> Result<Vec<f64>> {
    check_n(n)?;
    let f = |d: f64| hermite_derivative(n, d) - d * hermite(n, d);
    let upper = (2.0 * n as f64 + 3.0).sqrt();
    let step = 0.5 / upper.max(1.0);
    let mut roots = Vec::new();
    let mut d = step * 1e-6; // stay off d=0 (always a trivial zero of the odd part, not this branch)
    let mut fd = f(d);
    while d < upper {
        let d_next = (d + step).min(upper);
        let f_next = f(d_next);
        if fd == 0.0 {
            roots.push(d);
        } else if fd * f_next < 0.0 {
            assert!(
                d_next < upper,
                "even-branch root scan hit the upper bound sqrt(2n+3) at n={n}"
            );
            roots.push(bisect(d, d_next, f));
        }
        d = d_next;
        fd = f_next;
    }
    if roots.len() != even_count(n) {
        return Err(Error::InvalidInput(format!(
            "even-branch scan found {} roots for n={n}, expected {}",
            roots.len(),
            even_count(n)
        )));
    }
    Ok(roots)
}

/// All positive zeros of H_n, ascending.
///
/// Zeros come from the symmetric tridiagonal Jacobi companion of the
/// recurrence (off-diagonal √(k/2)), then each is polished by bisection
/// on the recurrence-evaluated polynomial.
pub fn odd_params(n: usize) -> Result<Vec<f64>> {
    check_n(n)?;
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let all = tridiag::lowest_eigenvalues(&diag, &off, n, 1e-11);
    let mut roots: Vec<f64> = all.into_iter().filter(|&z| z > 1e-9).collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // polish on the actual polynomial
    let f = |x: f64| hermite(n, x);
    let polished: Vec<f64> = roots
        .iter()
        .map(|&z| {
            let mut delta = 1e-6;
            loop {
                let (lo, hi) = (z - delta, z + delta);
                if f(lo) * f(hi) < 0.0 {
                    return bisect(lo, hi, f);
                }
                delta *= 4.0;
                if delta > 0.1 {
                    return z; // already at a zero to solver accuracy
                }
            }
        })
        .collect();
    debug_assert_eq!(polished.len(), odd_count(n), "odd zero count for n={n}");
    Ok(polished)
}

/// Parameter sets for degree n.
pub fn parameter_set(n: usize) -> Result<PolynomialParameterSet> {
    Ok(PolynomialParameterSet {
        n,
        even_params: even_params(n)?,
        odd_params: odd_params(n)?,
    })
}

/// Build the closed-form eigenstate descriptor for the j-th parameter
/// (1-based) of the given sector.
pub fn build_eigenstate(
    n: usize,
    j: usize,
    sector: ParitySector,
    kind: WellKind,
) -> Result<PolynomialEigenstate> {
    check_n(n)?;
    let params = match sector {
        ParitySector::Even => even_params(n)?,
        ParitySector::Odd => odd_params(n)?,
    };
    if j == 0 || j > params.len() {
        return Err(Error::InvalidInput(format!(
            "index j={j} outside 1..={} for n={n} {} sector",
            params.len(),
            sector.label()
        )));
    }
    let d = params[j - 1];
    let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
    // piece signs: (left, right) amplitudes of the two glued pieces
    let piece_signs = match (kind, sector) {
        (WellKind::Double, ParitySector::Even) => (1.0, alt),
        (WellKind::Single, ParitySector::Even) => (alt, 1.0),
        (WellKind::Double, ParitySector::Odd) => (-1.0, alt),
        (WellKind::Single, ParitySector::Odd) => (alt, -1.0),
    };
    Ok(PolynomialEigenstate {
        n,
        d,
        sector,
        kind,
        energy: 2.0 * n as f64 + 1.0,
        piece_signs,
    })
}

/// Evaluate the closed-form eigenstate at x (unnormalized).
pub fn eigenstate_value(state: &PolynomialEigenstate, x: f64) -> f64 {
    let gauss_hermite = |t: f64| (-t * t / 2.0).exp() * hermite(state.n, t);
    // which shifted oscillator each side sees
    let (left_shift, right_shift) = match state.kind {
        WellKind::Double => (state.d, -state.d),  // (x+d) left, (x-d) right
        WellKind::Single => (-state.d, state.d),  // (x-d) left, (x+d) right
    };
    if x >= 0.0 {
        state.piece_signs.1 * gauss_hermite(x + right_shift)
    } else {
        state.piece_signs.0 * gauss_hermite(x + left_shift)
    }
}
