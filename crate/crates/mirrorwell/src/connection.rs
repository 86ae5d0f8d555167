//! The four connection-condition functions whose zeros in E are the
//! eigenvalues of the double and single wells, in an overflow-safe
//! scaled representation, plus the exact d → −d duality map.

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::specfun::{gamma_reciprocal, kummer_series_dd};

/// Parity sector: Even is the Neumann condition at the origin, Odd the
/// Dirichlet condition ψ(0) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParitySector {
    Even,
    Odd,
}

impl ParitySector {
    pub fn label(self) -> &'static str {
        match self {
            ParitySector::Even => "even",
            ParitySector::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WellKind {
    Double,
    Single,
}

impl WellKind {
    pub fn label(self) -> &'static str {
        match self {
            WellKind::Double => "D",
            WellKind::Single => "S",
        }
    }

    pub fn dual(self) -> Self {
        match self {
            WellKind::Double => WellKind::Single,
            WellKind::Single => WellKind::Double,
        }
    }
}

/// Scaled condition value: mantissa·2^scale_exponent with mantissa in
/// [1,2) ∪ (−2,−1] (zero is canonical). The sign is exact, fit for
/// bracketing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionValue {
    pub mantissa: f64,
    pub scale_exponent: i32,
    pub raw_sign: i8,
}

impl ConditionValue {
    pub const ZERO: Self = Self {
        mantissa: 0.0,
        scale_exponent: 0,
        raw_sign: 0,
    };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            return Self::ZERO;
        }
        // frexp: v = f·2^e with |f| in [0.5, 1); shift to [1, 2)
        let bits = v.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i32;
        let (mantissa, scale_exponent) = if raw_exp == 0 {
            // subnormal: normalize through multiplication
            let scaled = v * 2f64.powi(80);
            let c = Self::from_f64(scaled);
            (c.mantissa, c.scale_exponent - 80)
        } else {
            let e = raw_exp - 1023;
            (v / 2f64.powi(e), e)
        };
        Self {
            mantissa,
            scale_exponent,
            raw_sign: if v > 0.0 { 1 } else { -1 },
        }
    }

    pub fn to_f64(self) -> f64 {
        self.mantissa * 2f64.powi(self.scale_exponent)
    }

    pub fn is_zero(self) -> bool {
        self.raw_sign == 0
    }
}

/// The map from energy to Kummer parameters: a = (1−E)/4, b = 1/2.
pub fn kummer_params_of_energy(energy: f64) -> crate::specfun::KummerParameters {
    crate::specfun::KummerParameters::new((1.0 - energy) / 4.0, 0.5)
}

pub(crate) const D_MAX: f64 = 6.0;
pub(crate) const E_MIN: f64 = -1.0;
pub(crate) const E_MAX: f64 = 60.0;

fn check_window(d: f64, energy: f64) -> Result<()> {
    if !(d.abs() <= D_MAX) {
        return Err(Error::OutOfRange {
            what: "separation d",
            value: d,
        });
    }
    if !(energy > E_MIN && energy < E_MAX) {
        return Err(Error::OutOfRange {
            what: "energy E",
            value: energy,
        });
    }
    Ok(())
}

/// Both condition functions at a signed separation. The single-well
/// functions are the double-well ones with d → −d (the duality of the
/// two systems), so everything funnels through this one kernel.
fn base_condition(sector: ParitySector, signed_d: f64, energy: f64) -> Result<ExtendedReal> {
    let a = (1.0 - energy) / 4.0;
    let d = signed_d;
    let z = d * d;
    let rg_half = gamma_reciprocal(a + 0.5);
    let rg = gamma_reciprocal(a);
    match sector {
        ParitySector::Even => {
            // d/Γ(a+1/2)·{F₁ − 2Ḟ₁} − 2/Γ(a)·{(1−d²)F₂ + 2d²Ḟ₂}
            let mut acc = ExtendedReal::ZERO;
            if rg_half != 0.0 && d != 0.0 {
                let f1 = kummer_series_dd(a, 0.5, z)?;
                // Ḟ₁ = (a / (1/2))·₁F₁(a+1, 3/2; z)
                let f1dot = kummer_series_dd(a + 1.0, 1.5, z)?.mul_f64(2.0 * a);
                acc = acc.add(f1.add(f1dot.mul_f64(-2.0)).mul_f64(d * rg_half));
            }
            if rg != 0.0 {
                let f2 = kummer_series_dd(a + 0.5, 1.5, z)?;
                // Ḟ₂ = ((a+1/2) / (3/2))·₁F₁(a+3/2, 5/2; z)
                let f2dot = kummer_series_dd(a + 1.5, 2.5, z)?.mul_f64((a + 0.5) / 1.5);
                let inner = f2.mul_f64(1.0 - z).add(f2dot.mul_f64(2.0 * z));
                acc = acc.add(inner.mul_f64(-2.0 * rg));
            }
            Ok(acc)
        }
        ParitySector::Odd => {
            // 1/Γ(a+1/2)·F₁ + 2d/Γ(a)·F₂
            let mut acc = ExtendedReal::ZERO;
            if rg_half != 0.0 {
                acc = acc.add(kummer_series_dd(a, 0.5, z)?.mul_f64(rg_half));
            }
            if rg != 0.0 && d != 0.0 {
                acc = acc.add(kummer_series_dd(a + 0.5, 1.5, z)?.mul_f64(2.0 * d * rg));
            }
            Ok(acc)
        }
    }
}

fn signed_separation(kind: WellKind, d: f64) -> f64 {
    match kind {
        WellKind::Double => d,
        WellKind::Single => -d,
    }
}

/// Connection-condition value C_kind^(sector)(d, E) in scaled form.
pub fn condition(kind: WellKind, sector: ParitySector, d: f64, energy: f64) -> Result<ConditionValue> {
    if d < 0.0 {
        return Err(Error::OutOfRange {
            what: "separation d",
            value: d,
        });
    }
    check_window(d, energy)?;
    let v = base_condition(sector, signed_separation(kind, d), energy)?;
    Ok(ConditionValue::from_f64(v.to_f64()))
}

/// The dual kind's condition obtained by substituting d → −d in this
/// kind's formula (the duality map). Bit-identical to computing
/// `condition(kind.dual(), sector, d, energy)` directly.
pub fn duality_image(
    kind: WellKind,
    sector: ParitySector,
    d: f64,
    energy: f64,
) -> Result<ConditionValue> {
    if d < 0.0 {
        return Err(Error::OutOfRange {
            what: "separation d",
            value: d,
        });
    }
    check_window(d, energy)?;
    let v = base_condition(sector, -signed_separation(kind, d), energy)?;
    Ok(ConditionValue::from_f64(v.to_f64()))
}
