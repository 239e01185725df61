//! The Kalelkar–Phanse bound on the number of Pachner moves between two
//! geometric triangulations of the same hyperbolic manifold.

use num_bigint::BigInt;
use serde_json::{json, Value};

/// `m` and the inputs of `f = 32 · 24^(4+3m) · t1 · t2 · (t1 + t2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KpBound {
    pub t1: u64,
    pub t2: u64,
    pub m: u64,
}

impl KpBound {
    pub fn f(&self) -> BigInt {
        let (t1, t2) = (BigInt::from(self.t1), BigInt::from(self.t2));
        BigInt::from(32) * BigInt::from(24).pow(4 + 3 * self.m as u32) * &t1 * &t2 * (&t1 + &t2)
    }

    pub fn log10_f(&self) -> f64 {
        let (t1, t2) = (self.t1 as f64, self.t2 as f64);
        32f64.log10() + (4 + 3 * self.m) as f64 * 24f64.log10() + (t1 * t2 * (t1 + t2)).log10()
    }

    /// `f` as an integer, or `None` when its digits would not be worth printing.
    pub fn f_saturating(&self, max_digits: f64) -> Option<BigInt> {
        (self.log10_f() <= max_digits).then(|| self.f())
    }

    /// `min(f, cap)` without forming `f` when it is obviously larger.
    pub fn clamp(&self, cap: u64) -> u64 {
        if self.log10_f() > 20.0 {
            return cap;
        }
        u64::try_from(self.f()).map_or(cap, |f| f.min(cap))
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "t1": self.t1,
            "t2": self.t2,
            "m": self.m,
            "f": self.f_saturating(1000.0).map(|f| f.to_string()),
            "log10_f": self.log10_f(),
        })
    }
}

/// `m = max(0, ceil((2 cosh²L + 1) ln(L / inj)))`, so `m = 0` once `L ≤ inj`.
pub fn kalelkar_phanse_bound(t1: u64, t2: u64, l: f64, inj: f64) -> KpBound {
    let x = (2.0 * l.cosh().powi(2) + 1.0) * (l / inj).ln();
    let m = if x.is_finite() && x > 0.0 { x.ceil() as u64 } else { 0 };
    KpBound { t1, t2, m }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bound() {
        let b = kalelkar_phanse_bound(2, 2, 0.5, 1.0);
        assert_eq!(b.m, 0);
        assert_eq!(b.f(), BigInt::from(169_869_312u64));
        assert!((b.log10_f() - 169_869_312f64.log10()).abs() < 1e-9);
        assert_eq!(b.clamp(6), 6);
        assert_eq!(b.clamp(u64::MAX), 169_869_312);
    }

    #[test]
    fn m_grows_with_the_ratio() {
        // (2 cosh²1 + 1) ln 2 = 3.99..., so m = 4
        let b = kalelkar_phanse_bound(1, 1, 1.0, 0.5);
        let x = (2.0 * 1f64.cosh().powi(2) + 1.0) * 2f64.ln();
        assert_eq!(b.m, x.ceil() as u64);
        assert_eq!(b.m, 4);
        assert_eq!(b.f(), BigInt::from(32) * BigInt::from(24).pow(16) * 2);
    }
}
