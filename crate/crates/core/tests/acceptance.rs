//! Acceptance gate: ten end-to-end checks, one printed pass/fail line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! Checks 1-9 are gating. Check 10 (relative performance) only warns: wall
//! clock depends on the host, so envelope misses print a WARN line instead
//! of failing the suite.

use fastrem_core::bench::{
    self, BenchStrategy, LcgConfig, LCG_MULTIPLIER,
};
use fastrem_core::magic::{
    self, check_unsigned_condition, generic_divrem, generic_is_divisible, MagicParameters,
};
use fastrem_core::verify::{
    self, DivisorSet, NumeratorCoverage, Signedness, Strategy, SweepSpec,
};
use fastrem_core::{baseline, rng, UnsignedFastDivisor};

fn pass(name: &str) {
    println!("acceptance: {name} ... PASS");
}

// 1. The 64-bit reciprocal for d = 95 is the exact constant the optimized
//    code embeds as an immediate.
#[test]
fn check_01_golden_reciprocal_for_95() {
    assert_eq!(
        UnsignedFastDivisor::new(95).unwrap().reciprocal(),
        194176253407468965
    );
    pass("01 golden reciprocal for d=95");
}

// 2. The toy-width parameters (d=6, N=6, F=8, c=43) reproduce the full
//    worked table for n = 0..63.
#[test]
fn check_02_toy_width_table_reproduction() {
    let params = MagicParameters {
        d: 6,
        n_bits: 6,
        l_bits: 2,
        f_bits: 8,
        c: 43,
        signed: false,
        minimal: true,
    };
    assert!(params.is_valid());
    for n in 0u64..64 {
        let (q, r) = generic_divrem(n, &params).unwrap();
        assert_eq!((q, r), (n / 6, n % 6), "n={n}");
        assert_eq!(generic_is_divisible(n, &params).unwrap(), n % 6 == 0, "n={n}");
    }
    assert_eq!(generic_divrem(17, &params).unwrap(), (2, 5));
    assert_eq!(generic_divrem(23, &params).unwrap(), (3, 5));
    assert_eq!(generic_divrem(63, &params).unwrap(), (10, 3));
    for n in [0u64, 6, 18, 24, 42] {
        assert!(generic_is_divisible(n, &params).unwrap(), "n={n}");
    }
    pass("02 toy-width table reproduction (d=6, N=6, n=0..63)");
}

// 3. The minimizer picks L=2 (F=8, c=43) for d=6 at N=6, and no smaller L
//    admits a valid reciprocal.
#[test]
fn check_03_minimal_fractional_bits_example() {
    let p = magic::minimal_unsigned_params(6, 6).unwrap();
    assert_eq!((p.l_bits, p.f_bits, p.c), (2, 8, 43));
    for l in [0u32, 1] {
        let c = (1u128 << (6 + l)).div_ceil(6) as u64;
        assert!(!check_unsigned_condition(c, 6, 6, l), "L={l} should fail");
        // no other c can satisfy a two-sided window narrower than d
        assert!(!check_unsigned_condition(c.wrapping_sub(1), 6, 6, l));
        assert!(!check_unsigned_condition(c + 1, 6, 6, l));
    }
    pass("03 minimal fractional bits for d=6 at N=6 (L=2, F=8, c=43)");
}

// 4. Exhaustive 16-bit sweep: every divisor crossed with every numerator,
//    all strategies against the native oracle, unsigned and signed.
#[test]
fn check_04_exhaustive_16_bit_sweep() {
    let spec = SweepSpec {
        width: 16,
        divisors: DivisorSet::All,
        numerators: NumeratorCoverage::Exhaustive,
        signedness: Signedness::Both,
        strategies: vec![Strategy::Lkk, Strategy::Gmw, Strategy::GmDivisibility],
    };
    let report = verify::run_sweep(&spec).unwrap();
    for s in &report.strategies {
        assert_eq!(
            s.mismatch_count, 0,
            "{}: {:?}",
            s.strategy.name(),
            s.first_mismatches.first()
        );
        assert!(s.numerators_checked > 0);
    }
    pass("04 exhaustive 16-bit sweep, all strategies, zero mismatches");
}

// 5. 32-bit sweep over structured divisors (small values, powers of two and
//    neighbors, top of range) with boundary numerators plus 10^7 seeded
//    random numerators per divisor.
#[test]
fn check_05_32_bit_boundary_and_sampled_sweep() {
    let spec = SweepSpec {
        width: 32,
        divisors: DivisorSet::Structured,
        numerators: NumeratorCoverage::BoundaryRandom {
            samples: 10_000_000,
            seed: 0xACCE97,
        },
        signedness: Signedness::Unsigned,
        strategies: vec![Strategy::Lkk, Strategy::Gmw, Strategy::GmDivisibility],
    };
    let report = verify::run_sweep(&spec).unwrap();
    for s in &report.strategies {
        assert_eq!(
            s.mismatch_count, 0,
            "{}: {:?}",
            s.strategy.name(),
            s.first_mismatches.first()
        );
    }
    pass("05 32-bit boundary + 10^7-sample sweep, zero mismatches");
}

// 6. The selected L is minimal for every 16-bit divisor, and dropping one
//    fractional bit at N=12 produces a concrete wrong remainder.
#[test]
fn check_06_minimality_and_tightness() {
    let report = verify::minimality_sweep(16).unwrap();
    assert!(report.pass(), "violations: {:?}", report.violations);
    assert_eq!(report.divisors_checked, (1 << 16) - 1);

    let mut found = 0;
    for d in [6u32, 10, 95, 641] {
        if verify::tightness_counterexample(d, 12).unwrap().is_some() {
            found += 1;
        }
    }
    assert!(found > 0, "no divisor failed with one fewer fractional bit");
    assert_eq!(verify::tightness_counterexample(6, 12).unwrap(), Some(2048));
    pass("06 minimality at N=16 and tightness counterexample at N=12");
}

// 7. Newton inverse: exact modular inverse for every odd 16-bit value and
//    10^6 random odd 32-bit values.
#[test]
fn check_07_multiplicative_inverse() {
    for d in (1u32..1 << 16).step_by(2) {
        let inv = baseline::multiplicative_inverse(d).unwrap();
        assert_eq!(d.wrapping_mul(inv), 1, "d={d}");
    }
    for i in 0..1_000_000u64 {
        let d = rng::draw(0x1237, 0, i) as u32 | 1;
        let inv = baseline::multiplicative_inverse(d).unwrap();
        assert_eq!(d.wrapping_mul(inv), 1, "d={d}");
    }
    pass("07 multiplicative inverse exact for odd 16-bit (all) + 10^6 random 32-bit");
}

// 8. Prime counting below 40000 agrees across strategies and with an
//    independent sieve.
#[test]
fn check_08_prime_count_matches_sieve() {
    let limit = 40_000u32;
    let mut sieve = vec![true; limit as usize];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..limit as usize {
        if sieve[i] {
            let mut j = i * i;
            while j < limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    let expected = sieve.iter().filter(|&&p| p).count() as u32;
    for strategy in [BenchStrategy::Lkk, BenchStrategy::Gm, BenchStrategy::Hardware] {
        assert_eq!(
            bench::count_primes(limit, strategy).unwrap(),
            expected,
            "{}",
            strategy.name()
        );
    }
    pass("08 prime count below 40000 equals sieve for lkk, gm, hardware");
}

// 9. LCG final states agree across strategies for each divisor, unsigned
//    and signed, at 10^6 iterations.
#[test]
fn check_09_lcg_checksum_agreement() {
    for d in [6i64, 19, 95, 128, 4096] {
        let mut cfg = LcgConfig::new(d, false);
        cfg.iterations = 1_000_000;
        cfg.warmup_iterations = 0;
        cfg.repeats = 1;
        let reports: Vec<_> = [BenchStrategy::Lkk, BenchStrategy::Gmw, BenchStrategy::Hardware]
            .iter()
            .map(|&s| bench::lcg_bench(&cfg, s).unwrap())
            .collect();
        assert!(bench::checksums_agree(&reports), "unsigned d={d}: {reports:?}");

        let mut scfg = cfg;
        scfg.signed = true;
        let sreports: Vec<_> = [BenchStrategy::Lkk, BenchStrategy::Hardware]
            .iter()
            .map(|&s| bench::lcg_bench(&scfg, s).unwrap())
            .collect();
        assert!(bench::checksums_agree(&sreports), "signed d={d}: {sreports:?}");
    }
    pass("09 LCG checksums agree for d in {6,19,95,128,4096}, unsigned + signed");
}

// 10. Relative performance envelopes. Absolute timings are host-specific,
//     so misses WARN instead of failing; the envelopes are only asserted
//     as expectations on 64-bit x86.
#[test]
fn check_10_performance_envelopes_non_gating() {
    let is_x86_64 = cfg!(target_arch = "x86_64");
    let mut warned = false;

    let mut faster = 0u32;
    let mut total = 0u32;
    for d in 3i64..=1024 {
        if (d as u64).is_power_of_two() {
            continue;
        }
        let cfg = LcgConfig {
            divisor: d,
            signed: false,
            multiplier: LCG_MULTIPLIER,
            iterations: 100_000,
            warmup_iterations: 10_000,
            repeats: 3,
        };
        let lkk = bench::lcg_bench(&cfg, BenchStrategy::Lkk).unwrap();
        let hw = bench::lcg_bench(&cfg, BenchStrategy::Hardware).unwrap();
        assert_eq!(lkk.checksum, hw.checksum, "d={d}");
        total += 1;
        if lkk.elapsed_ns < hw.elapsed_ns {
            faster += 1;
        }
    }
    let ratio = f64::from(faster) / f64::from(total);
    if ratio < 0.90 {
        warned = true;
        println!(
            "acceptance: 10 WARN: lcg fast-remainder beat hardware for only \
             {faster}/{total} non-power-of-two divisors in 3..=1024 \
             ({:.1}%, envelope 90%{})",
            ratio * 100.0,
            if is_x86_64 { "" } else { "; non-x86 host" }
        );
    }

    let lkk = bench::prime_count_bench(40_000, BenchStrategy::Lkk).unwrap();
    let gm = bench::prime_count_bench(40_000, BenchStrategy::Gm).unwrap();
    assert_eq!(lkk.checksum, gm.checksum);
    let rel = lkk.elapsed_ns as f64 / gm.elapsed_ns as f64;
    if rel > 1.05 {
        warned = true;
        println!(
            "acceptance: 10 WARN: prime benchmark lkk/gm time ratio {rel:.3} \
             exceeds 1.05 envelope{}",
            if is_x86_64 { "" } else { " (non-x86 host)" }
        );
    }

    if !warned {
        pass("10 performance envelopes (lcg >=90% wins vs hardware, primes lkk within 5% of gm)");
    } else {
        println!("acceptance: 10 performance envelopes ... PASS (with warnings, non-gating)");
    }
}
