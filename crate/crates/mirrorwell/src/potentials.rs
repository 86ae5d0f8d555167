//! Potential catalog: the double/single harmonic wells, their piecewise
//! linear and Krein-Adler variants, and the half-line walled systems.

use crate::error::{Error, Result};
use crate::specfun::hermite;

/// Which half-line carries the infinite wall, and which shifted well the
/// open side sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallSide {
    /// (x-d)² on x>0, wall on x<=0
    DR,
    /// (x+d)² on x<0, wall on x>=0
    DL,
    /// (x+d)² on x>0, wall on x<=0
    SR,
    /// (x-d)² on x<0, wall on x>=0
    SL,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialFamily {
    /// (x + sign·d)²
    HarmonicShifted(i8),
    /// min[(x+d)², (x-d)²]
    DoubleMin,
    /// max[(x+d)², (x-d)²]
    SingleMax,
    /// min[g³|x+d|, g³|x-d|]
    LinearDouble,
    /// max[g³|x+d|, g³|x-d|]
    LinearSingle,
    /// x² + 3 + 32x²/(2x²+1)² − 8/(2x²+1)
    KreinAdler,
    /// min[V_KA(x+d), V_KA(x-d)]
    KreinAdlerDouble,
    /// max[V_KA(x+d), V_KA(x-d)]
    KreinAdlerSingle,
    HalfLineWalled(WallSide),
}

/// Declarative description of a catalog potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub family: PotentialFamily,
    /// separation (dimensionless), >= 0
    pub d: f64,
    /// linear-well coupling, only meaningful for the Linear families
    pub g: f64,
}

impl PotentialSpec {
    pub fn new(family: PotentialFamily, d: f64) -> Result<Self> {
        if !(d >= 0.0 && d.is_finite()) {
            return Err(Error::InvalidInput(format!("separation d must be >= 0, got {d}")));
        }
        Ok(Self { family, d, g: 1.0 })
    }

    pub fn with_coupling(mut self, g: f64) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::InvalidInput(format!("coupling g must be > 0, got {g}")));
        }
        self.g = g;
        Ok(self)
    }

    /// Stable potential names used by the CLI and config files.
    pub fn from_name(name: &str, d: f64) -> Result<Self> {
        use PotentialFamily::*;
        let family = match name {
            "D" => DoubleMin,
            "S" => SingleMax,
            "L-D" => LinearDouble,
            "L-S" => LinearSingle,
            "KA" => KreinAdler,
            "KA-D" => KreinAdlerDouble,
            "KA-S" => KreinAdlerSingle,
            "DR" => HalfLineWalled(WallSide::DR),
            "DL" => HalfLineWalled(WallSide::DL),
            "SR" => HalfLineWalled(WallSide::SR),
            "SL" => HalfLineWalled(WallSide::SL),
            "H" => HarmonicShifted(1),
            _ => return Err(Error::UnknownPotential(name.to_string())),
        };
        Self::new(family, d)
    }

    pub fn name(&self) -> &'static str {
        use PotentialFamily::*;
        match self.family {
            HarmonicShifted(_) => "H",
            DoubleMin => "D",
            SingleMax => "S",
            LinearDouble => "L-D",
            LinearSingle => "L-S",
            KreinAdler => "KA",
            KreinAdlerDouble => "KA-D",
            KreinAdlerSingle => "KA-S",
            HalfLineWalled(WallSide::DR) => "DR",
            HalfLineWalled(WallSide::DL) => "DL",
            HalfLineWalled(WallSide::SR) => "SR",
            HalfLineWalled(WallSide::SL) => "SL",
        }
    }

    /// Mirror symmetric families satisfy V(x) = V(-x) pointwise.
    pub fn is_symmetric(&self) -> bool {
        use PotentialFamily::*;
        !matches!(self.family, HarmonicShifted(_) | HalfLineWalled(_))
    }
}

fn krein_adler(x: f64) -> f64 {
    let q = 2.0 * x * x + 1.0;
    x * x + 3.0 + 32.0 * x * x / (q * q) - 8.0 / q
}

/// Pointwise potential value; +∞ on the forbidden closed half-line of
/// the walled families (including x = 0).
pub fn evaluate(spec: &PotentialSpec, x: f64) -> f64 {
    use PotentialFamily::*;
    let d = spec.d;
    match spec.family {
        HarmonicShifted(sign) => {
            let t = x + f64::from(sign) * d;
            t * t
        }
        DoubleMin => {
            let p = (x + d) * (x + d);
            let m = (x - d) * (x - d);
            p.min(m)
        }
        SingleMax => {
            let p = (x + d) * (x + d);
            let m = (x - d) * (x - d);
            p.max(m)
        }
        LinearDouble => spec.g.powi(3) * (x + d).abs().min((x - d).abs()),
        LinearSingle => spec.g.powi(3) * (x + d).abs().max((x - d).abs()),
        KreinAdler => krein_adler(x),
        KreinAdlerDouble => krein_adler(x + d).min(krein_adler(x - d)),
        KreinAdlerSingle => krein_adler(x + d).max(krein_adler(x - d)),
        HalfLineWalled(side) => match side {
            WallSide::DR => {
                if x <= 0.0 {
                    f64::INFINITY
                } else {
                    (x - d) * (x - d)
                }
            }
            WallSide::DL => {
                if x >= 0.0 {
                    f64::INFINITY
                } else {
                    (x + d) * (x + d)
                }
            }
            WallSide::SR => {
                if x <= 0.0 {
                    f64::INFINITY
                } else {
                    (x + d) * (x + d)
                }
            }
            WallSide::SL => {
                if x >= 0.0 {
                    f64::INFINITY
                } else {
                    (x - d) * (x - d)
                }
            }
        },
    }
}

/// Krein-Adler eigenvalue 𝓔(n) = 2n; the levels n = 1, 2 are deleted.
pub fn ka_eigenvalue(n: usize) -> Result<f64> {
    if n == 1 || n == 2 {
        return Err(Error::InvalidInput(format!(
            "Krein-Adler level n={n} is deleted (index set excludes 1 and 2)"
        )));
    }
    Ok(2.0 * n as f64)
}

/// Krein-Adler eigenfunction e^{-x²/2} W[H₁,H₂,H_n](x) / (4(2x²+1)).
///
/// The 3×3 Wronskian rows are (f, f', f'') for f ∈ {H₁, H₂, H_n}, with
/// H'_k = 2k H_{k-1}.
pub fn ka_eigenfunction(n: usize, x: f64) -> Result<f64> {
    if n == 1 || n == 2 {
        return Err(Error::InvalidInput(format!(
            "Krein-Adler level n={n} is deleted (index set excludes 1 and 2)"
        )));
    }
    let nf = n as f64;
    let h = hermite(n, x);
    let hp = if n >= 1 { 2.0 * nf * hermite(n - 1, x) } else { 0.0 };
    let hpp = if n >= 2 {
        4.0 * nf * (nf - 1.0) * hermite(n - 2, x)
    } else {
        0.0
    };
    // columns: H1 = 2x, H2 = 4x²-2, Hn
    let c1 = [2.0 * x, 2.0, 0.0];
    let c2 = [4.0 * x * x - 2.0, 8.0 * x, 8.0];
    let c3 = [h, hp, hpp];
    let wron = c1[0] * (c2[1] * c3[2] - c2[2] * c3[1])
        - c2[0] * (c1[1] * c3[2] - c1[2] * c3[1])
        + c3[0] * (c1[1] * c2[2] - c1[2] * c2[1]);
    Ok((-x * x / 2.0).exp() * wron / (4.0 * (2.0 * x * x + 1.0)))
}
