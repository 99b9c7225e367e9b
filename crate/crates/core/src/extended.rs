//! A double with an unbounded binary exponent, for products like
//! `a^{n-2} B^{2k} C(m-1, k)^2` whose factors leave the `f64` range while the
//! product does not. Rescaling is always by exact powers of two.

use std::ops::{Add, Mul};

/// `mant * 2^exp2` with `1 <= |mant| < 2`, or `mant == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ExtF64 {
    mant: f64,
    exp2: i64,
}

// 2^k for |k| <= 1022 without rounding
fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

impl ExtF64 {
    pub const ZERO: ExtF64 = ExtF64 { mant: 0.0, exp2: 0 };

    pub fn new(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite value {v}");
        if v == 0.0 {
            return ExtF64::ZERO;
        }
        let (mut v, mut bias) = (v, 0i64);
        if v.abs() < f64::MIN_POSITIVE {
            v *= pow2(64);
            bias = -64;
        }
        let raw = ((v.to_bits() >> 52) & 0x7ff) as i64 - 1023;
        ExtF64 { mant: v * pow2(-raw), exp2: raw + bias }
    }

    fn renormalize(mant: f64, exp2: i64) -> Self {
        let mut out = ExtF64::new(mant);
        if out.mant != 0.0 {
            out.exp2 += exp2;
        }
        out
    }

    pub fn powi(self, mut k: u64) -> Self {
        let mut base = self;
        let mut acc = ExtF64::new(1.0);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Nearest `f64`, flushing to zero / infinity outside its range.
    pub fn to_f64(self) -> f64 {
        if self.mant == 0.0 {
            return 0.0;
        }
        if self.exp2 > 1023 {
            return self.mant.signum() * f64::INFINITY;
        }
        if self.exp2 < -1074 - 1 {
            return 0.0;
        }
        if self.exp2 >= -1022 {
            self.mant * pow2(self.exp2)
        } else {
            // subnormal result: two exact-ish steps
            self.mant * pow2(self.exp2 + 64) * pow2(-64)
        }
    }
}

impl Mul for ExtF64 {
    type Output = ExtF64;

    fn mul(self, rhs: ExtF64) -> ExtF64 {
        ExtF64::renormalize(self.mant * rhs.mant, self.exp2 + rhs.exp2)
    }
}

impl Mul<f64> for ExtF64 {
    type Output = ExtF64;

    fn mul(self, rhs: f64) -> ExtF64 {
        self * ExtF64::new(rhs)
    }
}

impl Add for ExtF64 {
    type Output = ExtF64;

    fn add(self, rhs: ExtF64) -> ExtF64 {
        if self.mant == 0.0 {
            return rhs;
        }
        if rhs.mant == 0.0 {
            return self;
        }
        let (big, small) = if self.exp2 >= rhs.exp2 { (self, rhs) } else { (rhs, self) };
        let gap = big.exp2 - small.exp2;
        if gap > 110 {
            return big;
        }
        ExtF64::renormalize(big.mant + small.mant * pow2(-gap), big.exp2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_mantissa() {
        for v in [1.0, 3.0, -0.375, 1e-310, 6.02e23] {
            let e = ExtF64::new(v);
            assert!((1.0..2.0).contains(&e.mant.abs()), "{v}: {e:?}");
            assert_eq!(e.to_f64(), v);
        }
    }

    #[test]
    fn survives_out_of_range_intermediates() {
        let tiny = ExtF64::new(1e-5).powi(200); // 1e-1000
        let huge = ExtF64::new(1e5).powi(200);
        let one = (tiny * huge).to_f64();
        assert!((one - 1.0).abs() < 1e-13, "{one}");
        assert_eq!(tiny.to_f64(), 0.0);
        assert_eq!(huge.to_f64(), f64::INFINITY);
    }

    #[test]
    fn addition_aligns_exponents() {
        let scale = ExtF64::new(1e-300).powi(3);
        let s = (ExtF64::new(3.0) * scale + ExtF64::new(1.0) * scale) * ExtF64::new(1e300).powi(3);
        assert!((s.to_f64() - 4.0).abs() < 1e-12);
        assert_eq!((ExtF64::new(2.0) + ExtF64::new(-0.5)).to_f64(), 1.5);
        assert_eq!((ExtF64::new(1.0) + ExtF64::new(-1.0)).to_f64(), 0.0);
        assert_eq!((ExtF64::ZERO + ExtF64::new(7.0)).to_f64(), 7.0);
        assert_eq!((ExtF64::new(1.0) + ExtF64::new(1e-40)).to_f64(), 1.0);
    }
}
