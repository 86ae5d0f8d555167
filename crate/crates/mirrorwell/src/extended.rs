//! Double-double ("extended real") arithmetic used to accumulate the
//! alternating Kummer series without losing the low digits.
//!
//! A value is stored as an unevaluated sum `value + correction` with
//! `|correction| <= ulp(value)`, giving roughly 32 significant decimal
//! digits. Only the handful of operations the series kernels need are
//! implemented.

/// Unevaluated sum of two doubles, `value + correction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedReal {
    pub value: f64,
    pub correction: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl ExtendedReal {
    pub const ZERO: Self = Self {
        value: 0.0,
        correction: 0.0,
    };
    pub const ONE: Self = Self {
        value: 1.0,
        correction: 0.0,
    };

    #[cfg_attr(not(test), allow(dead_code))]
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Self {
            value: x,
            correction: 0.0,
        }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        let (value, correction) = quick_two_sum(hi, lo);
        Self { value, correction }
    }

    /// Collapse to a single double, rounding once.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.value + self.correction
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }

    #[inline]
    pub fn add(self, rhs: Self) -> Self {
        let (s0, e0) = two_sum(self.value, rhs.value);
        let (s1, e1) = two_sum(self.correction, rhs.correction);
        let lo = e0 + s1;
        let (hi, lo) = quick_two_sum(s0, lo);
        Self::renorm(hi, lo + e1)
    }

    #[cfg_attr(not(test), allow(dead_code))]
    #[inline]
    pub fn add_f64(self, rhs: f64) -> Self {
        let (s, e) = two_sum(self.value, rhs);
        Self::renorm(s, e + self.correction)
    }

    #[cfg_attr(not(test), allow(dead_code))]
    #[inline]
    pub fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.value, rhs.value);
        let e = e + self.value * rhs.correction + self.correction * rhs.value;
        Self::renorm(p, e)
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Self {
        let (p, e) = two_prod(self.value, rhs);
        Self::renorm(p, e + self.correction * rhs)
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Self {
        let q1 = self.value / rhs;
        let (p, e) = two_prod(q1, rhs);
        // remainder of the first quotient digit
        let (r_hi, r_lo) = two_sum(self.value, -p);
        let r = r_hi + (r_lo + self.correction - e);
        let q2 = r / rhs;
        Self::renorm(q1, q2)
    }
}
