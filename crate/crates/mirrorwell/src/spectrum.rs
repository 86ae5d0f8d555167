//! Eigenvalue enumeration for the double/single wells: coarse sign scan
//! of the connection condition in E, bracketing, bisection-with-secant
//! refinement, and sector interleaving.

use crate::connection::{condition, ConditionValue, ParitySector, WellKind};
use crate::error::{Error, Result};
use crate::polyparams::PolynomialEigenstate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Connection,
    Polynomial,
    Oracle,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Connection => "connection",
            Method::Polynomial => "polynomial",
            Method::Oracle => "oracle",
        }
    }
}

/// One refined eigenvalue with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueRecord {
    pub kind: WellKind,
    pub sector: ParitySector,
    /// per-sector ordinal
    pub index: usize,
    pub d: f64,
    pub energy: f64,
    pub bracket: (f64, f64),
    /// |condition(E)| relative to the condition's local scale
    pub residual: f64,
    pub method: Method,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub e_min: f64,
    pub e_max: f64,
    pub coarse_step: f64,
    /// absolute refinement tolerance in E
    pub refine_tol: f64,
    pub max_refine_iter: usize,
    /// half-width of the secondary fine scan around suspect dips
    pub degeneracy_window: f64,
}

impl ScanConfig {
    /// Search window for `count` levels of the given well at separation d.
    pub fn for_search(kind: WellKind, d: f64, count: usize) -> Self {
        let floor = match kind {
            WellKind::Double => 0.0,
            WellKind::Single => (d * d - 0.5).max(0.0),
        };
        Self {
            e_min: floor,
            e_max: (d * d + 2.0 * count as f64 + 12.0).min(59.99),
            coarse_step: 0.02,
            refine_tol: 1e-10,
            max_refine_iter: 200,
            degeneracy_window: 0.05,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.coarse_step > 0.0 && self.refine_tol >= 1e-12 && self.e_min < self.e_max) {
            return Err(Error::InvalidInput(format!("bad scan config: {self:?}")));
        }
        Ok(())
    }
}

/// Eigenvalue list plus soft diagnostics (partial results are returned
/// rather than failing wholesale).
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub records: Vec<EigenvalueRecord>,
    pub warnings: Vec<String>,
}

fn cond_f64(kind: WellKind, sector: ParitySector, d: f64, e: f64) -> Result<f64> {
    Ok(condition(kind, sector, d, e)?.to_f64())
}

/// Bisection with secant acceleration inside a sign-change bracket.
/// Returns (root, residual_relative_to_bracket_scale).
fn refine_bracket(
    kind: WellKind,
    sector: ParitySector,
    d: f64,
    mut lo: f64,
    mut hi: f64,
    mut flo: f64,
    mut fhi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, f64, bool)> {
    let scale = flo.abs().max(fhi.abs()).max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..max_iter {
        if hi - lo <= tol {
            converged = true;
            break;
        }
        // secant candidate, clamped away from the ends
        let mut mid = if fhi != flo {
            hi - fhi * (hi - lo) / (fhi - flo)
        } else {
            0.5 * (lo + hi)
        };
        let margin = 0.1 * (hi - lo);
        if !(mid > lo + margin && mid < hi - margin) {
            mid = 0.5 * (lo + hi);
        }
        let fm = cond_f64(kind, sector, d, mid)?;
        if fm == 0.0 {
            return Ok((mid, 0.0, true));
        }
        if flo * fm < 0.0 {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    let root = 0.5 * (lo + hi);
    let fr = cond_f64(kind, sector, d, root)?;
    Ok((root, fr.abs() / scale, converged))
}

fn validate_inputs(d: f64, count: usize) -> Result<()> {
    if count > 20 {
        return Err(Error::InvalidInput(format!("count must be <= 20, got {count}")));
    }
    if !(0.0..=6.0).contains(&d) {
        return Err(Error::OutOfRange {
            what: "separation d",
            value: d,
        });
    }
    Ok(())
}

/// Raw zeros of one sector's condition in the scan window, ascending.
fn sector_zeros(
    kind: WellKind,
    sector: ParitySector,
    d: f64,
    count: usize,
    config: &ScanConfig,
    warnings: &mut Vec<String>,
) -> Result<Vec<EigenvalueRecord>> {
    config.validate()?;
    let mut roots: Vec<EigenvalueRecord> = Vec::new();
    let record = |energy: f64, bracket: (f64, f64), residual: f64| EigenvalueRecord {
        kind,
        sector,
        index: 0, // assigned after sorting
        d,
        energy,
        bracket,
        residual,
        method: Method::Connection,
    };
    let convergence_warning = |energy: f64| {
        format!(
            "{}/{} d={d}: refinement did not converge near E={energy:.6}",
            kind.label(),
            sector.label()
        )
    };

    // coarse scan
    let n_steps = ((config.e_max - config.e_min) / config.coarse_step).ceil() as usize;
    let mut grid: Vec<(f64, ConditionValue)> = Vec::with_capacity(n_steps + 1);
    for i in 0..=n_steps {
        let e = (config.e_min + i as f64 * config.coarse_step).min(config.e_max);
        grid.push((e, condition(kind, sector, d, e)?));
        if grid.last().unwrap().0 >= config.e_max {
            break;
        }
    }
    let mut bracketed: Vec<(f64, f64)> = Vec::new();
    for w in grid.windows(2) {
        let (e0, c0) = w[0];
        let (e1, c1) = w[1];
        if c0.is_zero() {
            roots.push(record(e0, (e0 - config.coarse_step, e1), 0.0));
        } else if !c1.is_zero() && (c0.raw_sign as i32) * (c1.raw_sign as i32) < 0 {
            bracketed.push((e0, e1));
            let (root, residual, converged) = refine_bracket(
                kind,
                sector,
                d,
                e0,
                e1,
                c0.to_f64(),
                c1.to_f64(),
                config.refine_tol,
                config.max_refine_iter,
            )?;
            if !converged {
                warnings.push(convergence_warning(root));
            }
            roots.push(record(root, (e0, e1), residual));
        }
    }
    if let Some(&(e_last, c_last)) = grid.last() {
        if c_last.is_zero() {
            roots.push(record(e_last, (e_last - config.coarse_step, e_last), 0.0));
        }
    }

    // secondary fine scan at suspect dips: a deep local minimum of |C|
    // without a sign change can hide a near-double zero that the coarse
    // step cannot separate
    let log_abs: Vec<f64> = grid
        .iter()
        .map(|(_, c)| {
            if c.is_zero() {
                f64::NEG_INFINITY
            } else {
                (c.mantissa.abs().ln()) + c.scale_exponent as f64 * std::f64::consts::LN_2
            }
        })
        .collect();
    let coarse_roots: Vec<f64> = roots.iter().map(|r| r.energy).collect();
    for i in 1..grid.len().saturating_sub(1) {
        let dip = log_abs[i] < log_abs[i - 1] && log_abs[i] < log_abs[i + 1];
        let deep = log_abs[i - 1].min(log_abs[i + 1]) - log_abs[i] > (1e4f64).ln();
        let near_existing = coarse_roots
            .iter()
            .any(|&r| (r - grid[i].0).abs() < 2.0 * config.coarse_step)
            || bracketed
                .iter()
                .any(|b| (0.5 * (b.0 + b.1) - grid[i].0).abs() < 2.0 * config.coarse_step);
        if dip && deep && !near_existing {
            let center = grid[i].0;
            let lo = (center - config.degeneracy_window).max(config.e_min);
            let hi = (center + config.degeneracy_window).min(config.e_max);
            let fine_step = config.coarse_step / 200.0;
            let mut e = lo;
            let mut prev = condition(kind, sector, d, e)?;
            while e < hi {
                let e1 = (e + fine_step).min(hi);
                let cur = condition(kind, sector, d, e1)?;
                if prev.is_zero() {
                    roots.push(record(e, (e - fine_step, e1), 0.0));
                } else if !cur.is_zero()
                    && (prev.raw_sign as i32) * (cur.raw_sign as i32) < 0
                {
                    let (root, residual, converged) = refine_bracket(
                        kind,
                        sector,
                        d,
                        e,
                        e1,
                        prev.to_f64(),
                        cur.to_f64(),
                        config.refine_tol,
                        config.max_refine_iter,
                    )?;
                    if !converged {
                        warnings.push(convergence_warning(root));
                    }
                    roots.push(record(root, (e, e1), residual));
                }
                e = e1;
                prev = cur;
            }
        }
    }

    roots.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap());
    roots.dedup_by(|a, b| (a.energy - b.energy).abs() < 10.0 * config.refine_tol);
    for (i, r) in roots.iter_mut().enumerate() {
        r.index = i;
    }
    roots.truncate(count);
    Ok(roots)
}

/// The `count` lowest eigenvalues of one parity sector.
pub fn sector_eigenvalues(
    kind: WellKind,
    sector: ParitySector,
    d: f64,
    count: usize,
    config: &ScanConfig,
) -> Result<SpectrumResult> {
    validate_inputs(d, count)?;
    let mut warnings = Vec::new();
    let records = sector_zeros(kind, sector, d, count, config, &mut warnings)?;
    if records.len() < count {
        warnings.push(format!(
            "{}/{} d={d}: window [{:.2}, {:.2}] holds only {} of {count} requested levels",
            kind.label(),
            sector.label(),
            config.e_min,
            config.e_max,
            records.len()
        ));
    }
    Ok(SpectrumResult { records, warnings })
}

/// The `count` lowest eigenvalues across both sectors, ascending.
///
/// At d = 0 the harmonic limit is reported per sector: each level
/// appears once per sector (Even before Odd) at the same energy.
pub fn find_eigenvalues(
    kind: WellKind,
    d: f64,
    count: usize,
    config: &ScanConfig,
) -> Result<SpectrumResult> {
    validate_inputs(d, count)?;
    let mut warnings = Vec::new();

    if d == 0.0 {
        // union of the sector zeros is the harmonic spectrum 2n+1
        let per_sector = count / 2 + 2;
        let even = sector_zeros(kind, ParitySector::Even, d, per_sector, config, &mut warnings)?;
        let odd = sector_zeros(kind, ParitySector::Odd, d, per_sector, config, &mut warnings)?;
        let mut merged: Vec<f64> = even.iter().chain(odd.iter()).map(|r| r.energy).collect();
        merged.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut records = Vec::new();
        'outer: for (n, &e) in merged.iter().enumerate() {
            for sector in [ParitySector::Even, ParitySector::Odd] {
                if records.len() >= count {
                    break 'outer;
                }
                records.push(EigenvalueRecord {
                    kind,
                    sector,
                    index: n,
                    d,
                    energy: e,
                    bracket: (e - config.refine_tol, e + config.refine_tol),
                    residual: 0.0,
                    method: Method::Connection,
                });
            }
        }
        if records.len() < count {
            warnings.push(format!(
                "{} d=0: window holds only {} of {count} requested levels",
                kind.label(),
                records.len()
            ));
        }
        return Ok(SpectrumResult { records, warnings });
    }

    let per_sector = count / 2 + 2;
    let even = sector_zeros(kind, ParitySector::Even, d, per_sector, config, &mut warnings)?;
    let odd = sector_zeros(kind, ParitySector::Odd, d, per_sector, config, &mut warnings)?;
    let mut merged: Vec<EigenvalueRecord> = even.into_iter().chain(odd).collect();
    merged.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .unwrap()
            .then_with(|| match (a.sector, b.sector) {
                (ParitySector::Even, ParitySector::Odd) => std::cmp::Ordering::Less,
                (ParitySector::Odd, ParitySector::Even) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Equal,
            })
    });
    if kind == WellKind::Single {
        let bound = d * d;
        merged.retain(|r| {
            if r.energy > bound {
                true
            } else {
                warnings.push(format!(
                    "dropped single-well level E={:.6} <= d² = {bound:.6}",
                    r.energy
                ));
                false
            }
        });
    }
    if merged.len() < count {
        warnings.push(format!(
            "{} d={d}: found only {} of {count} requested levels",
            kind.label(),
            merged.len()
        ));
    }
    merged.truncate(count);
    Ok(SpectrumResult {
        records: merged,
        warnings,
    })
}

/// Paired even/odd levels and their gaps E_n^o − E_n^e.
pub fn splitting_table(
    kind: WellKind,
    d: f64,
    levels: usize,
    config: &ScanConfig,
) -> Result<Vec<(f64, f64, f64)>> {
    validate_inputs(d, levels)?;
    let mut warnings = Vec::new();
    if d == 0.0 {
        let merged = find_eigenvalues(kind, d, 2 * levels, config)?;
        let mut out = Vec::new();
        for pair in merged.records.chunks(2) {
            if pair.len() == 2 {
                out.push((pair[0].energy, pair[1].energy, 0.0));
            }
        }
        out.truncate(levels);
        return Ok(out);
    }
    let even = sector_zeros(kind, ParitySector::Even, d, levels, config, &mut warnings)?;
    let odd = sector_zeros(kind, ParitySector::Odd, d, levels, config, &mut warnings)?;
    Ok(even
        .iter()
        .zip(odd.iter())
        .map(|(e, o)| (e.energy, o.energy, o.energy - e.energy))
        .collect())
}

/// Record for a closed-form polynomial eigenstate (exact energy 2n+1).
pub fn polynomial_record(state: &PolynomialEigenstate, index: usize) -> EigenvalueRecord {
    EigenvalueRecord {
        kind: state.kind,
        sector: state.sector,
        index,
        d: state.d,
        energy: state.energy,
        bracket: (state.energy, state.energy),
        residual: 0.0,
        method: Method::Polynomial,
    }
}
