//! Generic-bit-width parameter selection (`N` from 1 to 32).
//!
//! Everything here runs in exact 128-bit arithmetic: with `N <= 32` the
//! number of fractional bits `F` never exceeds 64, so products like `c*d`
//! and shifted powers of two always fit. The selected reciprocal is always
//! the ceiling form `c = ceil(2^F/d)` (unsigned, smallest valid choice) or
//! `floor(2^F/d) + 1` (signed), with the power-of-two shortcut `F = log2(d)`,
//! `c = 1` on the unsigned side.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A `(N, L, F, c)` tuple describing a fixed-point reciprocal for one
/// divisor, together with how it was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagicParameters {
    pub d: u32,
    pub n_bits: u32,
    pub l_bits: u32,
    pub f_bits: u32,
    pub c: u64,
    pub signed: bool,
    /// True when produced by the minimizer (smallest valid `L`).
    pub minimal: bool,
}

impl MagicParameters {
    /// Re-evaluates the validity precondition for these parameters.
    pub fn is_valid(&self) -> bool {
        if self.signed {
            check_signed_condition(self.c, self.d, self.n_bits, self.l_bits)
        } else if self.d.is_power_of_two() && self.c == 1 {
            // power-of-two shortcut: c*d = 2^F exactly
            self.f_bits == self.d.trailing_zeros()
        } else {
            check_unsigned_condition(self.c, self.d, self.n_bits, self.l_bits)
        }
    }
}

fn validate_width(n_bits: u32) -> Result<()> {
    if n_bits == 0 || n_bits > 32 {
        return Err(Error::UnsupportedWidth(n_bits));
    }
    Ok(())
}

fn ceil_shifted_div(f_bits: u32, d: u32) -> u128 {
    let num = 1u128 << f_bits;
    num.div_ceil(u128::from(d))
}

/// `2^(N+L) <= c*d <= 2^(N+L) + 2^L` — the unsigned validity condition.
pub fn check_unsigned_condition(c: u64, d: u32, n_bits: u32, l_bits: u32) -> bool {
    if n_bits > 32 || l_bits > 64 || d == 0 {
        return false;
    }
    let prod = u128::from(c) * u128::from(d);
    let lo = 1u128 << (n_bits + l_bits);
    lo <= prod && prod <= lo + (1u128 << l_bits)
}

/// `2^(N-1+L) < c*d < 2^(N-1+L) + 2^L` — the strict signed condition.
pub fn check_signed_condition(c: u64, d: u32, n_bits: u32, l_bits: u32) -> bool {
    if n_bits == 0 || n_bits > 32 || l_bits > 64 || d == 0 {
        return false;
    }
    let prod = u128::from(c) * u128::from(d);
    let lo = 1u128 << (n_bits - 1 + l_bits);
    lo < prod && prod < lo + (1u128 << l_bits)
}

/// Smallest-`L` unsigned parameters for `d` at numerator width `n_bits`.
///
/// Powers of two short-circuit to `F = log2(d)`, `c = 1`; otherwise `L` is
/// the smallest integer with `d <= (2^(N+L) mod d) + 2^L`.
pub fn minimal_unsigned_params(d: u32, n_bits: u32) -> Result<MagicParameters> {
    validate_width(n_bits)?;
    if d == 0 {
        return Err(Error::ZeroDivisor);
    }
    if n_bits < 32 && u64::from(d) >= 1u64 << n_bits {
        return Err(Error::DivisorOutOfRange { divisor: u64::from(d), n_bits });
    }
    if d.is_power_of_two() {
        let f_bits = d.trailing_zeros();
        return Ok(MagicParameters {
            d,
            n_bits,
            l_bits: 0,
            f_bits,
            c: 1,
            signed: false,
            minimal: true,
        });
    }
    // F >= N + log2(d) always suffices, so the scan terminates with L <= 32.
    let mut l_bits = 0;
    loop {
        let modulus = (1u128 << (n_bits + l_bits)) % u128::from(d);
        if u128::from(d) <= modulus + (1u128 << l_bits) {
            break;
        }
        l_bits += 1;
    }
    let f_bits = n_bits + l_bits;
    let c = ceil_shifted_div(f_bits, d) as u64;
    debug_assert!(check_unsigned_condition(c, d, n_bits, l_bits));
    Ok(MagicParameters {
        d,
        n_bits,
        l_bits,
        f_bits,
        c,
        signed: false,
        minimal: true,
    })
}

/// Convenient unsigned parameters: `F = 2N`, `c = ceil(2^(2N)/d)`, valid
/// for every divisor without a minimality scan. Powers of two keep the
/// `c = 1` shortcut so `c` stays within 64 bits at `N = 32`.
pub fn convenient_unsigned_params(d: u32, n_bits: u32) -> Result<MagicParameters> {
    validate_width(n_bits)?;
    if d == 0 {
        return Err(Error::ZeroDivisor);
    }
    if n_bits < 32 && u64::from(d) >= 1u64 << n_bits {
        return Err(Error::DivisorOutOfRange { divisor: u64::from(d), n_bits });
    }
    if d.is_power_of_two() {
        return minimal_unsigned_params(d, n_bits);
    }
    let l_bits = n_bits;
    let f_bits = 2 * n_bits;
    let c = ceil_shifted_div(f_bits, d) as u64;
    debug_assert!(check_unsigned_condition(c, d, n_bits, l_bits));
    Ok(MagicParameters {
        d,
        n_bits,
        l_bits,
        f_bits,
        c,
        signed: false,
        minimal: false,
    })
}

fn signed_params_at(d: u32, n_bits: u32, l_bits: u32) -> Result<(u32, u64)> {
    let f_bits = n_bits - 1 + l_bits;
    let c = (1u128 << f_bits) / u128::from(d) + 1;
    u64::try_from(c)
        .map(|c| (f_bits, c))
        .map_err(|_| Error::ReciprocalOverflow { divisor: u64::from(d), n_bits })
}

/// Smallest-`L` signed parameters for a divisor magnitude `d` in
/// `[1, 2^(N-1))`, with `c = floor(2^F/d) + 1` and `F = N - 1 + L`.
pub fn minimal_signed_params(d: u32, n_bits: u32) -> Result<MagicParameters> {
    validate_width(n_bits)?;
    if d == 0 {
        return Err(Error::ZeroDivisor);
    }
    if n_bits < 2 || u64::from(d) >= 1u64 << (n_bits - 1) {
        return Err(Error::DivisorOutOfRange { divisor: u64::from(d), n_bits });
    }
    // Any L > log2(d) works, so the scan terminates quickly.
    let mut l_bits = 0;
    loop {
        let (f_bits, c) = signed_params_at(d, n_bits, l_bits)?;
        if check_signed_condition(c, d, n_bits, l_bits) {
            return Ok(MagicParameters {
                d,
                n_bits,
                l_bits,
                f_bits,
                c,
                signed: true,
                minimal: true,
            });
        }
        l_bits += 1;
    }
}

/// Convenient signed parameters: `L = N + 1`, hence `F = 2N`.
///
/// Fails with `ReciprocalOverflow` only for `d = 1` at `N = 32`, where the
/// reciprocal `2^64 + 1` does not fit in 64 bits (that divisor is served by
/// the trivial runtime path anyway).
pub fn convenient_signed_params(d: u32, n_bits: u32) -> Result<MagicParameters> {
    validate_width(n_bits)?;
    if d == 0 {
        return Err(Error::ZeroDivisor);
    }
    if n_bits < 2 || u64::from(d) >= 1u64 << (n_bits - 1) {
        return Err(Error::DivisorOutOfRange { divisor: u64::from(d), n_bits });
    }
    let l_bits = n_bits + 1;
    let (f_bits, c) = signed_params_at(d, n_bits, l_bits)?;
    debug_assert!(check_signed_condition(c, d, n_bits, l_bits));
    Ok(MagicParameters {
        d,
        n_bits,
        l_bits,
        f_bits,
        c,
        signed: true,
        minimal: false,
    })
}

fn require_valid_unsigned(params: &MagicParameters, n: u64) -> Result<()> {
    if params.signed {
        return Err(Error::SignednessMismatch);
    }
    if !params.is_valid() {
        return Err(Error::InvalidParameters);
    }
    if params.n_bits < 64 && n >= 1u64 << params.n_bits {
        return Err(Error::NumeratorOutOfRange { numerator: n, n_bits: params.n_bits });
    }
    Ok(())
}

/// Quotient and remainder of `n` by `params.d` at generic width: the
/// quotient is the integer portion of `c*n`, the remainder the high part
/// of the fractional portion times `d`.
pub fn generic_divrem(n: u64, params: &MagicParameters) -> Result<(u64, u64)> {
    require_valid_unsigned(params, n)?;
    let f = params.f_bits;
    let prod = u128::from(params.c) * u128::from(n);
    let q = (prod >> f) as u64;
    let frac = prod & ((1u128 << f) - 1);
    let r = ((frac * u128::from(params.d)) >> f) as u64;
    Ok((q, r))
}

/// Divisibility at generic width: the fractional portion of `c*n` is
/// below `c` exactly when `d` divides `n`.
pub fn generic_is_divisible(n: u64, params: &MagicParameters) -> Result<bool> {
    require_valid_unsigned(params, n)?;
    let frac = (u128::from(params.c) * u128::from(n)) & ((1u128 << params.f_bits) - 1);
    Ok(frac < u128::from(params.c))
}
