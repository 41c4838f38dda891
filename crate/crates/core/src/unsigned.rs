//! Unsigned 32-bit remainder, quotient and divisibility with a 64-bit
//! scaled approximate reciprocal (`F = 64` fractional bits, `N = L = 32`).
//!
//! For `d >= 2` the reciprocal is `c = floor((2^64 - 1) / d) + 1`, i.e.
//! `ceil(2^64 / d)` for non-powers-of-two and exactly `2^(64-K)` for
//! `d = 2^K`. The remainder is then the high half of the 64x64 product of
//! the wrapped low bits `c * n` with `d`; the quotient is the high half of
//! `c * n` itself.

use crate::error::{Error, Result};

/// A 32-bit divisor paired with its precomputed 64-bit reciprocal.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnsignedFastDivisor {
    d: u32,
    c: u64,
}

impl UnsignedFastDivisor {
    /// Precomputes the reciprocal for `d`.
    ///
    /// `d = 0` is rejected. `d = 1` is accepted and takes a trivial path:
    /// the formula would wrap `c` to zero, so `fastdiv` special-cases it
    /// while `fastmod` and `is_divisible` remain branch-free (a zero `c`
    /// already yields remainder 0 / divisible for every numerator).
    pub fn new(d: u32) -> Result<Self> {
        match d {
            0 => Err(Error::ZeroDivisor),
            1 => Ok(Self { d, c: 0 }),
            _ => {
                let c = u64::MAX / u64::from(d) + 1;
                debug_assert!(Self { d, c }.reciprocal_bound_holds());
                Ok(Self { d, c })
            }
        }
    }

    #[inline]
    pub fn divisor(self) -> u32 {
        self.d
    }

    /// The scaled approximate reciprocal; zero only for `d = 1`.
    #[inline]
    pub fn reciprocal(self) -> u64 {
        self.c
    }

    /// `2^64 <= c*d <= 2^64 + 2^32`, checked in 128-bit arithmetic.
    /// Always true for `d >= 2`; not applicable to the `d = 1` path.
    pub fn reciprocal_bound_holds(self) -> bool {
        if self.d == 1 {
            return true;
        }
        let prod = u128::from(self.c) * u128::from(self.d);
        (1u128 << 64) <= prod && prod <= (1u128 << 64) + (1u128 << 32)
    }

    /// `n mod d` without computing the quotient.
    #[inline]
    pub fn fastmod(self, n: u32) -> u32 {
        let lowbits = self.c.wrapping_mul(u64::from(n));
        mul_high_64(lowbits, u64::from(self.d))
    }

    /// `n div d` (floor division).
    #[inline]
    pub fn fastdiv(self, n: u32) -> u32 {
        if self.d == 1 {
            return n;
        }
        mul_high_64(self.c, u64::from(n))
    }

    /// Whether `d` divides `n`: the wrapped product `c*n` is below `c`.
    /// Written as `<= c - 1` so the `c = 0` (`d = 1`) case wraps to
    /// always-true without a branch.
    #[inline]
    pub fn is_divisible(self, n: u32) -> bool {
        self.c.wrapping_mul(u64::from(n)) <= self.c.wrapping_sub(1)
    }
}

/// High 64 bits of the 64x64 -> 128 product, truncated to 32 bits.
/// Every caller's result is provably below 2^32.
#[inline]
fn mul_high_64(a: u64, b: u64) -> u32 {
    ((u128::from(a) * u128::from(b)) >> 64) as u32
}
