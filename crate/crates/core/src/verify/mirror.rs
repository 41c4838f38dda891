//! Width-parameterized replicas of the 32-bit runtime paths.
//!
//! The correctness theorems behind the runtime code are width-generic, so
//! an exhaustive sweep at 8 or 16 bits exercises exactly the same formulas
//! with `N`-parameterized constants at a tractable domain size. These
//! mirrors deliberately reproduce the production recipe — `F = 2N`
//! fractional bits, wrapping products reduced mod `2^2N`, the signed
//! sign-mask subtraction — rather than delegating to exact arithmetic.

use crate::baseline::multiplicative_inverse;
use crate::error::{Error, Result};

fn check_mirror_width(n_bits: u32) -> Result<()> {
    if n_bits == 0 || n_bits > 16 {
        return Err(Error::UnsupportedWidth(n_bits));
    }
    Ok(())
}

/// Unsigned fast path at width `N <= 16`: `c = floor((2^2N - 1)/d) + 1`.
#[derive(Debug, Clone, Copy)]
pub struct MirrorLkkUnsigned {
    d: u64,
    c: u64,
    f_bits: u32,
    frac_mask: u64,
}

impl MirrorLkkUnsigned {
    pub fn new(d: u64, n_bits: u32) -> Result<Self> {
        check_mirror_width(n_bits)?;
        if d == 0 {
            return Err(Error::ZeroDivisor);
        }
        if d >= 1u64 << n_bits {
            return Err(Error::DivisorOutOfRange { divisor: d, n_bits });
        }
        let f_bits = 2 * n_bits;
        let frac_mask = (1u64 << f_bits) - 1;
        // wraps to 0 for d = 1, exactly like the 64-bit constant does
        let c = (frac_mask / d + 1) & frac_mask;
        Ok(Self { d, c, f_bits, frac_mask })
    }

    #[inline]
    pub fn fastmod(&self, n: u64) -> u64 {
        let lowbits = self.c.wrapping_mul(n) & self.frac_mask;
        (lowbits * self.d) >> self.f_bits
    }

    #[inline]
    pub fn fastdiv(&self, n: u64) -> u64 {
        if self.d == 1 {
            return n;
        }
        (self.c * n) >> self.f_bits
    }

    #[inline]
    pub fn is_divisible(&self, n: u64) -> bool {
        let lowbits = self.c.wrapping_mul(n) & self.frac_mask;
        lowbits <= self.c.wrapping_sub(1) & self.frac_mask
    }
}

/// Signed fast path at width `N <= 16`: `L = N + 1` and the power-of-two
/// reciprocal adjustment, with trivial routes for `|d| = 1`, `d = -2^(N-1)`.
#[derive(Debug, Clone, Copy)]
pub struct MirrorLkkSigned {
    d: i64,
    pd: u64,
    c: u64,
    n_bits: u32,
    f_bits: u32,
    frac_mask: u64,
}

impl MirrorLkkSigned {
    pub fn new(d: i64, n_bits: u32) -> Result<Self> {
        check_mirror_width(n_bits)?;
        if d == 0 {
            return Err(Error::ZeroDivisor);
        }
        let half = 1i64 << (n_bits - 1);
        if d < -half || d >= half {
            return Err(Error::DivisorOutOfRange { divisor: d.unsigned_abs(), n_bits });
        }
        let pd = d.unsigned_abs();
        let f_bits = 2 * n_bits;
        let frac_mask = (1u64 << f_bits) - 1;
        let c = if pd >= 2 && d != -half {
            frac_mask / pd + 1 + u64::from(pd.is_power_of_two())
        } else {
            0
        };
        Ok(Self { d, pd, c, n_bits, f_bits, frac_mask })
    }

    fn is_min_magnitude(&self) -> bool {
        self.d == -(1i64 << (self.n_bits - 1))
    }

    #[inline]
    pub fn fastmod(&self, n: i64) -> i64 {
        if self.pd == 1 {
            return 0;
        }
        if self.is_min_magnitude() {
            return if n == self.d { 0 } else { n };
        }
        // sign-extend n into the 2N-bit register and wrap the product
        let lowbits = self.c.wrapping_mul(n as u64) & self.frac_mask;
        let highbits = (lowbits * self.pd) >> self.f_bits;
        let mask = if n < 0 { self.pd - 1 } else { 0 };
        highbits as i64 - mask as i64
    }

    #[inline]
    pub fn is_divisible(&self, n: i64) -> bool {
        if self.pd == 1 {
            return true;
        }
        if self.is_min_magnitude() {
            return n.unsigned_abs() % self.pd == 0;
        }
        let cu = self.c - u64::from(self.pd.is_power_of_two());
        cu.wrapping_mul(n.unsigned_abs()) & self.frac_mask < cu
    }
}

/// Granlund-Montgomery divisibility at width `N <= 16`: the inverse of the
/// odd part modulo `2^N` (the 32-bit Newton inverse reduced mod `2^N`),
/// an `e`-bit rotation within the `N`-bit word, and the threshold
/// `floor((2^N - 1)/d)`.
#[derive(Debug, Clone, Copy)]
pub struct MirrorGmDivisibility {
    e: u32,
    dbar: u64,
    thresh: u64,
    n_bits: u32,
    mask: u64,
}

impl MirrorGmDivisibility {
    pub fn new(d: u64, n_bits: u32) -> Result<Self> {
        check_mirror_width(n_bits)?;
        if d == 0 {
            return Err(Error::ZeroDivisor);
        }
        if d >= 1u64 << n_bits {
            return Err(Error::DivisorOutOfRange { divisor: d, n_bits });
        }
        let mask = (1u64 << n_bits) - 1;
        let e = d.trailing_zeros();
        let dbar = u64::from(multiplicative_inverse((d >> e) as u32)?) & mask;
        Ok(Self { e, dbar, thresh: mask / d, n_bits, mask })
    }

    #[inline]
    fn rotr(&self, n: u64, e: u32) -> u64 {
        if e == 0 {
            return n;
        }
        ((n >> e) | (n << (self.n_bits - e))) & self.mask
    }

    #[inline]
    pub fn is_divisible(&self, n: u64) -> bool {
        self.rotr(n.wrapping_mul(self.dbar) & self.mask, self.e) <= self.thresh
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsigned_mirror_matches_native_exhaustively_at_width_8() {
        for d in 1u64..256 {
            let m = MirrorLkkUnsigned::new(d, 8).unwrap();
            for n in 0u64..256 {
                assert_eq!(m.fastmod(n), n % d, "mod d={d} n={n}");
                assert_eq!(m.fastdiv(n), n / d, "div d={d} n={n}");
                assert_eq!(m.is_divisible(n), n % d == 0, "divisible d={d} n={n}");
            }
        }
    }

    #[test]
    fn signed_mirror_matches_native_exhaustively_at_width_8() {
        for d in (-128i64..128).filter(|&d| d != 0) {
            let m = MirrorLkkSigned::new(d, 8).unwrap();
            for n in -128i64..128 {
                assert_eq!(m.fastmod(n), n % d, "mod d={d} n={n}");
                assert_eq!(m.is_divisible(n), n % d == 0, "divisible d={d} n={n}");
            }
        }
    }

    #[test]
    fn gm_mirror_matches_native_exhaustively_at_width_8() {
        for d in 1u64..256 {
            let m = MirrorGmDivisibility::new(d, 8).unwrap();
            for n in 0u64..256 {
                assert_eq!(m.is_divisible(n), n % d == 0, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(MirrorLkkUnsigned::new(256, 8).is_err());
        assert!(MirrorLkkUnsigned::new(1, 32).is_err());
        assert!(MirrorLkkSigned::new(128, 8).is_err());
        assert!(MirrorLkkSigned::new(-129, 8).is_err());
        assert!(MirrorGmDivisibility::new(0, 8).is_err());
    }
}
