//! Sturm-sequence bisection for the lowest eigenvalues of a symmetric
//! tridiagonal matrix. Robust against near-degenerate pairs, which is
//! what the large-separation double well produces.

/// Number of eigenvalues strictly below `lambda`, by counting negative
/// pivots of the LDLᵀ factorization.
pub fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    const PIVOT_GUARD: f64 = 1e-300;
    let mut count = 0;
    let mut q = diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < PIVOT_GUARD {
            if q >= 0.0 {
                PIVOT_GUARD
            } else {
                -PIVOT_GUARD
            }
        } else {
            q
        };
        q = (diag[i] - lambda) - off[i - 1] * off[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues, ascending, each bisected to absolute
/// accuracy `tol · max(1, |λ|)`.
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], k: usize, tol: f64) -> Vec<f64> {
    let n = diag.len();
    let k = k.min(n);
    if k == 0 {
        return Vec::new();
    }
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 }
            + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }

    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        // eigenvalue with exactly j eigenvalues below it
        let mut a = if let Some(&prev) = out.last() { prev } else { lo };
        let mut b = hi;
        while b - a > tol * a.abs().max(1.0) {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, off, mid) <= j {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}
