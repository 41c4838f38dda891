//! Signed 32-bit truncated remainder and divisibility.
//!
//! Same fractional-bits idea as the unsigned path, with `L = N + 1 = 33`
//! fractional headroom: for `pd = |d|` in `[2, 2^31)` the reciprocal is
//! `c = floor((2^64 - 1)/pd) + 1`, plus one more when `pd` is a power of
//! two so that the strict bound `2^64 < c*pd < 2^64 + 2^33` holds. The
//! numerator is sign-extended to 64 bits before the wrapping multiply, and
//! a mask of `pd - 1` by the numerator's sign turns the non-negative high
//! half into the truncated (C99-style) remainder.
//!
//! Divisors `|d| = 1` and `d = -2^31` bypass the multiply path entirely.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Path {
    /// `pd` in `[2, 2^31)`: the single-multiplication route.
    Fast,
    /// `|d| = 1`: remainder is always zero.
    Unit,
    /// `d = -2^31`: remainder is `n` except at `n = -2^31`.
    MinMagnitude,
}

/// A signed 32-bit divisor with its adjusted 64-bit reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedFastDivisor {
    d: i32,
    pd: u32,
    c: u64,
    path: Path,
}

impl SignedFastDivisor {
    /// Precomputes the reciprocal for any non-zero `d`.
    pub fn new(d: i32) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDivisor);
        }
        let pd = d.unsigned_abs();
        let path = if pd == 1 {
            Path::Unit
        } else if d == i32::MIN {
            Path::MinMagnitude
        } else {
            Path::Fast
        };
        let c = match path {
            Path::Fast => {
                u64::MAX / u64::from(pd) + 1 + u64::from(pd.is_power_of_two())
            }
            _ => 0,
        };
        let div = Self { d, pd, c, path };
        debug_assert!(div.reciprocal_bound_holds());
        Ok(div)
    }

    #[inline]
    pub fn divisor(self) -> i32 {
        self.d
    }

    /// `|d|`; for `d = -2^31` this is the (unused by the multiply path)
    /// value `2^31`.
    #[inline]
    pub fn magnitude(self) -> u32 {
        self.pd
    }

    #[inline]
    pub fn reciprocal(self) -> u64 {
        self.c
    }

    #[inline]
    pub fn is_trivial(self) -> bool {
        !matches!(self.path, Path::Fast)
    }

    /// Strict bound `2^64 < c*pd < 2^64 + 2^33` for every fast-path
    /// divisor (this is what the power-of-two `+1` adjustment buys).
    pub fn reciprocal_bound_holds(self) -> bool {
        if self.is_trivial() {
            return true;
        }
        let prod = u128::from(self.c) * u128::from(self.pd);
        (1u128 << 64) < prod && prod < (1u128 << 64) + (1u128 << 33)
    }

    /// Truncated remainder `n - trunc(n/d)*d`; sign follows `n`.
    #[inline]
    pub fn fastmod(self, n: i32) -> i32 {
        match self.path {
            Path::Unit => 0,
            Path::MinMagnitude => {
                if n == i32::MIN {
                    0
                } else {
                    n
                }
            }
            Path::Fast => {
                let lowbits = self.c.wrapping_mul(n as i64 as u64);
                let highbits = ((u128::from(lowbits) * u128::from(self.pd)) >> 64) as u32;
                // (pd - 1) masked by the sign of n: arithmetic shift.
                let mask = ((n >> 31) as u32) & (self.pd - 1);
                highbits.wrapping_sub(mask) as i32
            }
        }
    }

    /// Whether `d` divides `n`, via the unsigned divisibility test on
    /// `|n|` and `|d|` (divisibility ignores both signs).
    #[inline]
    pub fn is_divisible(self, n: i32) -> bool {
        match self.path {
            Path::Unit => true,
            Path::MinMagnitude => n as u32 & (u32::MAX >> 1) == 0,
            Path::Fast => {
                // For non-powers-of-two c already equals the unsigned
                // ceil(2^64/pd); powers of two carry a +1 adjustment that
                // the unsigned test must shed.
                let cu = self.c - u64::from(self.pd.is_power_of_two());
                cu.wrapping_mul(u64::from(n.unsigned_abs())) < cu
            }
        }
    }
}
