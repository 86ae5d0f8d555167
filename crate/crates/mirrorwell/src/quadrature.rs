//! Composite Gauss-Legendre quadrature for wavefunction norms.

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// via Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n and derivative at x
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    nodes
        .iter_mut()
        .for_each(|x| *x = if x.abs() < 1e-15 { 0.0 } else { *x });
    (nodes, weights)
}

/// ∫_a^b f dx by composite Gauss-Legendre with `points` nodes on panels
/// of width at most `panel_width`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panel_width: f64, points: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(points);
    let n_panels = ((b - a) / panel_width).ceil().max(1.0) as usize;
    let h = (b - a) / n_panels as f64;
    let mut total = 0.0;
    for p in 0..n_panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            acc += w * f(mid + half * x);
        }
        total += half * acc;
    }
    total
}
