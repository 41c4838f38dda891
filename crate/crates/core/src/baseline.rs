//! Reference competitors: the Granlund-Montgomery-Warren constant-division
//! algorithm and the Granlund-Montgomery divisibility test.
//!
//! These are the strategies the sweep harness cross-checks against and the
//! benchmarks race. The GMW preparation follows the classic branch order
//! exactly: power of two, multiply-shift (guarded), even pre-shift, and the
//! add-shift fixup with `c = 2^N + c'`. Division is public at `N = 32`; a
//! width parameter keeps the same code usable from the 16-bit mirror sweeps.

use crate::error::{Error, Result};

/// Precomputed constants for quotient-by-constant, one of four variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmwVariant {
    /// `d = 2^K`: a plain shift.
    PowerOfTwo { k: u32 },
    /// `q = (c*n) >> (N+L)` with `L = floor(log2 d)`, `c = ceil(2^(N+L)/d)`.
    MultiplyShift { c: u64, shift: u32 },
    /// `d = 2^K * d'` with `K > 0`: shift `n` first, then multiply-shift
    /// by the reciprocal of the odd part.
    EvenPreshift { k: u32, c: u64, shift: u32 },
    /// `c = 2^N + c'` does not fit the register: add-back fixup with a
    /// final shift by `L - 1`.
    AddShiftFixup { c_prime: u64, l: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GmwDivisor {
    d: u32,
    n_bits: u32,
    variant: GmwVariant,
}

fn floor_log2(d: u32) -> u32 {
    31 - d.leading_zeros()
}

fn ceil_log2(d: u32) -> u32 {
    if d.is_power_of_two() {
        d.trailing_zeros()
    } else {
        32 - d.leading_zeros()
    }
}

fn ceil_pow_div(f: u32, d: u32) -> u128 {
    (1u128 << f).div_ceil(u128::from(d))
}

impl GmwDivisor {
    /// Prepares constants for 32-bit numerators.
    pub fn new(d: u32) -> Result<Self> {
        Self::with_width(d, 32)
    }

    /// Width-parameterized preparation (`n_bits <= 32`), used by the
    /// mirror sweeps. The branch guard is evaluated in exact 128-bit
    /// arithmetic.
    pub fn with_width(d: u32, n_bits: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDivisor);
        }
        if n_bits == 0 || n_bits > 32 {
            return Err(Error::UnsupportedWidth(n_bits));
        }
        if n_bits < 32 && u64::from(d) >= 1u64 << n_bits {
            return Err(Error::DivisorOutOfRange { divisor: u64::from(d), n_bits });
        }
        let n = n_bits;
        let variant = if d.is_power_of_two() {
            GmwVariant::PowerOfTwo { k: d.trailing_zeros() }
        } else {
            let l = floor_log2(d);
            let c = ceil_pow_div(n + l, d);
            let top = 1u128 << n;
            let guard_lhs = c * (top - top % u128::from(d) - 1);
            let guard_rhs = (top / u128::from(d)) << (n + l);
            if guard_lhs < guard_rhs {
                GmwVariant::MultiplyShift { c: c as u64, shift: n + l }
            } else if d % 2 == 0 {
                let k = d.trailing_zeros();
                let d_odd = d >> k;
                let l = ceil_log2(d_odd);
                let c = ceil_pow_div(n - k + l, d_odd);
                GmwVariant::EvenPreshift { k, c: c as u64, shift: n - k + l }
            } else {
                let l = ceil_log2(d);
                let c = ceil_pow_div(n + l, d);
                GmwVariant::AddShiftFixup { c_prime: (c - (1u128 << n)) as u64, l }
            }
        };
        Ok(Self { d, n_bits, variant })
    }

    #[inline]
    pub fn divisor(self) -> u32 {
        self.d
    }

    pub fn variant(self) -> GmwVariant {
        self.variant
    }

    /// `n div d`.
    #[inline]
    pub fn div(self, n: u32) -> u32 {
        let nb = self.n_bits;
        match self.variant {
            GmwVariant::PowerOfTwo { k } => n >> k,
            GmwVariant::MultiplyShift { c, shift } => {
                ((c * u64::from(n)) >> shift) as u32
            }
            GmwVariant::EvenPreshift { k, c, shift } => {
                ((c * u64::from(n >> k)) >> shift) as u32
            }
            GmwVariant::AddShiftFixup { c_prime, l } => {
                // t = floor(c'*n / 2^N), then add back half the residue.
                let t = ((c_prime * u64::from(n)) >> nb) as u32;
                (t + ((n - t) >> 1)) >> (l - 1)
            }
        }
    }

    /// `n mod d`, computed from the quotient by multiply and subtract.
    #[inline]
    pub fn modulo(self, n: u32) -> u32 {
        n.wrapping_sub(self.div(n).wrapping_mul(self.d))
    }
}

/// Newton's method inverse of an odd `d` modulo `2^32`:
/// a congruent seed good to 5 bits, then three quadratic refinements.
pub fn multiplicative_inverse(d: u32) -> Result<u32> {
    if d % 2 == 0 {
        return Err(Error::EvenDivisor(d));
    }
    let x0 = d.wrapping_add(2u32.wrapping_mul(d.wrapping_add(1) & 4));
    let x1 = x0.wrapping_mul(2u32.wrapping_sub(d.wrapping_mul(x0)));
    let x2 = x1.wrapping_mul(2u32.wrapping_sub(d.wrapping_mul(x1)));
    Ok(x2.wrapping_mul(2u32.wrapping_sub(d.wrapping_mul(x2))))
}

/// Right rotation by `e` bits, `e` in `[0, 32)`.
#[inline]
pub fn rotr32(n: u32, e: u32) -> u32 {
    (n >> e) | (n << (e.wrapping_neg() & 31))
}

/// Precomputed constants for the Granlund-Montgomery divisibility test:
/// `d = 2^e * d_odd`, the inverse of the odd part, and the threshold
/// `floor((2^32 - 1)/d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GmDivisibility {
    d: u32,
    e: u32,
    dbar: u32,
    thresh: u32,
}

impl GmDivisibility {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDivisor);
        }
        let e = d.trailing_zeros();
        let dbar = multiplicative_inverse(d >> e)?;
        Ok(Self { d, e, dbar, thresh: u32::MAX / d })
    }

    #[inline]
    pub fn divisor(self) -> u32 {
        self.d
    }

    pub fn rotation(self) -> u32 {
        self.e
    }

    pub fn inverse(self) -> u32 {
        self.dbar
    }

    pub fn threshold(self) -> u32 {
        self.thresh
    }

    /// Whether `d` divides `n`: multiply by the inverse, rotate the even
    /// part's zero bits to the top, compare against the threshold.
    #[inline]
    pub fn is_divisible(self, n: u32) -> bool {
        rotr32(n.wrapping_mul(self.dbar), self.e) <= self.thresh
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gmw_variant_selection_frozen() {
        // guard evaluated with an exact 128-bit oracle; constants frozen
        assert_eq!(
            GmwDivisor::new(8).unwrap().variant(),
            GmwVariant::PowerOfTwo { k: 3 }
        );
        assert_eq!(
            GmwDivisor::new(95).unwrap().variant(),
            GmwVariant::AddShiftFixup { c_prime: 1491936009, l: 7 }
        );
        assert_eq!(
            GmwDivisor::new(7).unwrap().variant(),
            GmwVariant::AddShiftFixup { c_prime: 613566757, l: 3 }
        );
        assert_eq!(
            GmwDivisor::new(6).unwrap().variant(),
            GmwVariant::MultiplyShift { c: 2863311531, shift: 34 }
        );
        assert_eq!(
            GmwDivisor::new(u32::MAX).unwrap().variant(),
            GmwVariant::MultiplyShift { c: 2147483649, shift: 63 }
        );
    }

    #[test]
    fn even_preshift_branch_is_reachable() {
        // Some even divisor whose multiply-shift guard fails must land in
        // the pre-shift branch; scan a range to pin one down.
        let found = (2u32..100000).find(|&d| {
            matches!(
                GmwDivisor::new(d).unwrap().variant(),
                GmwVariant::EvenPreshift { .. }
            )
        });
        if let Some(d) = found {
            let div = GmwDivisor::new(d).unwrap();
            for n in [0u32, 1, d - 1, d, d + 1, u32::MAX, u32::MAX - 1] {
                assert_eq!(div.div(n), n / d, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn gmw_worked_examples() {
        let d4 = GmwDivisor::new(4).unwrap();
        assert_eq!((d4.div(23), d4.modulo(23)), (5, 3));
        let d95 = GmwDivisor::new(95).unwrap();
        assert_eq!((d95.div(u32::MAX), d95.modulo(u32::MAX)), (45210182, 5));
        let d7 = GmwDivisor::new(7).unwrap();
        assert_eq!((d7.div(0), d7.modulo(0)), (0, 0));
        assert!(GmwDivisor::new(0).is_err());
    }

    #[test]
    fn inverse_golden_values() {
        assert_eq!(multiplicative_inverse(1).unwrap(), 1);
        assert_eq!(multiplicative_inverse(3).unwrap(), 2863311531);
        assert_eq!(multiplicative_inverse(u32::MAX).unwrap(), u32::MAX);
        assert!(multiplicative_inverse(6).is_err());
    }

    #[test]
    fn rotr_examples() {
        assert_eq!(rotr32(0x80000001, 1), 0xC0000000);
        assert_eq!(rotr32(0xDEADBEEF, 0), 0xDEADBEEF);
        assert_eq!(rotr32(0x00000010, 4), 1);
    }

    #[test]
    fn gm_divisibility_examples() {
        let d6 = GmDivisibility::new(6).unwrap();
        assert!(d6.is_divisible(42));
        assert!(!d6.is_divisible(23));
        assert!(d6.is_divisible(0));
        assert!(GmDivisibility::new(0).is_err());
    }

    proptest! {
        #[test]
        fn gmw_matches_native(n in any::<u32>(), d in 1u32..) {
            let div = GmwDivisor::new(d).unwrap();
            prop_assert_eq!(div.div(n), n / d);
            prop_assert_eq!(div.modulo(n), n % d);
        }

        #[test]
        fn gm_matches_native(n in any::<u32>(), d in 1u32..) {
            let div = GmDivisibility::new(d).unwrap();
            prop_assert_eq!(div.is_divisible(n), n % d == 0);
        }

        #[test]
        fn inverse_matches_euclid(d_raw in any::<u32>()) {
            let d = d_raw | 1;
            let inv = multiplicative_inverse(d).unwrap();
            prop_assert_eq!(d.wrapping_mul(inv), 1);
        }
    }
}
