#!/usr/bin/env python3
"""Smoke test for the fastrem extension module.

Build the module first (cargo build -p fastrem-py), then run this script;
it locates the compiled cdylib under target/, exposes it as `fastrem` and
checks a handful of golden values against pure-Python arithmetic.
"""

import importlib.util
import pathlib
import sys


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libfastrem.so", "fastrem.so", "libfastrem.dylib", "fastrem.pyd")
    ]
    for path in candidates:
        if path.exists():
            spec = importlib.util.spec_from_file_location("fastrem", path)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit("fastrem cdylib not found; run `cargo build -p fastrem-py` first")


def main():
    fr = load_module()

    d95 = fr.UnsignedFastDivisor(95)
    assert d95.reciprocal == 194176253407468965
    assert d95.fastmod(2**32 - 1) == (2**32 - 1) % 95 == 5
    assert d95.fastdiv(2**32 - 1) == (2**32 - 1) // 95

    d6 = fr.UnsignedFastDivisor(6)
    assert d6.is_divisible(42) and not d6.is_divisible(23)
    for n in (0, 1, 5, 6, 7, 63, 2**31, 2**32 - 1):
        assert d6.fastmod(n) == n % 6
        assert d6.fastdiv(n) == n // 6

    s7 = fr.SignedFastDivisor(-7)
    for n in (-21, -1, 0, 1, 20, 2**31 - 1, -(2**31)):
        # Python % floors; the extension truncates like C99
        expected = n - (abs(n) // 7) * 7 * (1 if n >= 0 else -1)
        assert s7.fastmod(n) == expected, (n, s7.fastmod(n), expected)
    assert s7.is_divisible(-21) and not s7.is_divisible(-20)

    gmw = fr.GmwDivisor(95)
    assert gmw.div(2**32 - 1) == 45210182
    assert gmw.modulo(2**32 - 1) == 5

    gm = fr.GmDivisibility(6)
    assert gm.is_divisible(42) and not gm.is_divisible(23)

    p = fr.minimal_unsigned_params(6, 6)
    assert (p.l_bits, p.f_bits, p.c) == (2, 8, 43)
    assert p.is_valid()
    assert p.divrem(23) == (3, 5)
    assert p.is_divisible_of(42) and not p.is_divisible_of(23)

    conv = fr.convenient_unsigned_params(95, 32)
    assert conv.c == 194176253407468965

    sp = fr.minimal_signed_params(3, 4)
    assert (sp.l_bits, sp.f_bits, sp.c) == (2, 5, 11)

    assert fr.multiplicative_inverse(3) == 2863311531
    assert (3 * fr.multiplicative_inverse(3)) % 2**32 == 1
    try:
        fr.multiplicative_inverse(6)
    except ValueError:
        pass
    else:
        raise AssertionError("even divisor must be rejected")

    assert fr.count_primes(10) == 4
    assert fr.count_primes(10000, "gm") == fr.count_primes(10000, "hardware") == 1229

    try:
        fr.UnsignedFastDivisor(0)
    except ValueError:
        pass
    else:
        raise AssertionError("zero divisor must be rejected")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
