//! The two benchmarks: LCG throughput and trial-division prime counting.
//!
//! Timing is monotonic wall-clock. Each measurement does one untimed
//! warmup pass, then repeats the timed loop and reports the median. The
//! LCG loop is a strict serial dependency chain — every iteration consumes
//! the previous state — so the timed kernels must not batch or unroll
//! across it; `std::hint::black_box` on the carried state enforces that.

use crate::baseline::{GmDivisibility, GmwDivisor};
use crate::error::{Error, Result};
use crate::signed::SignedFastDivisor;
use crate::unsigned::UnsignedFastDivisor;
use serde::{Deserialize, Serialize};
use std::hint::black_box;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchStrategy {
    Lkk,
    Gmw,
    Gm,
    Hardware,
}

impl BenchStrategy {
    pub fn name(self) -> &'static str {
        match self {
            BenchStrategy::Lkk => "lkk",
            BenchStrategy::Gmw => "gmw",
            BenchStrategy::Gm => "gm",
            BenchStrategy::Hardware => "hardware",
        }
    }
}

/// One benchmark measurement. `checksum` (final LCG state or prime count)
/// defeats dead-code elimination and must agree across strategies for the
/// same configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub benchmark: String,
    pub strategy: BenchStrategy,
    pub divisor: Option<i64>,
    pub iterations: u64,
    pub elapsed_ns: u64,
    pub ns_per_op: f64,
    pub checksum: i64,
}

pub const LCG_SEED: u32 = 1234;
pub const LCG_ADDEND: u32 = 27961;
pub const LCG_MULTIPLIER: u32 = 31;
pub const DEFAULT_LCG_ITERATIONS: u64 = 100_000_000;
pub const DEFAULT_WARMUP_ITERATIONS: u64 = 1_000_000;
pub const DEFAULT_REPEATS: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcgConfig {
    pub divisor: i64,
    pub signed: bool,
    /// 31 by default; the negated value is used in the signed variant.
    pub multiplier: u32,
    pub iterations: u64,
    pub warmup_iterations: u64,
    pub repeats: u32,
}

impl LcgConfig {
    pub fn new(divisor: i64, signed: bool) -> Self {
        Self {
            divisor,
            signed,
            multiplier: LCG_MULTIPLIER,
            iterations: DEFAULT_LCG_ITERATIONS,
            warmup_iterations: DEFAULT_WARMUP_ITERATIONS,
            repeats: DEFAULT_REPEATS,
        }
    }

    fn validate(&self, strategy: BenchStrategy) -> Result<()> {
        if self.divisor == 0 {
            return Err(Error::ZeroDivisor);
        }
        if self.iterations == 0 {
            return Err(Error::InvalidSweep("iterations must be >= 1".into()));
        }
        match (self.signed, strategy) {
            (false, BenchStrategy::Gm) => Err(Error::StrategyMismatch {
                strategy: "gm".into(),
                reason: "gm is divisibility-only; it computes no remainder".into(),
            }),
            (true, BenchStrategy::Gmw | BenchStrategy::Gm) => Err(Error::StrategyMismatch {
                strategy: strategy.name().into(),
                reason: "strategy has no signed remainder path".into(),
            }),
            (false, _) if self.divisor < 0 || self.divisor > i64::from(u32::MAX) => {
                Err(Error::DivisorOutOfRange { divisor: self.divisor.unsigned_abs(), n_bits: 32 })
            }
            (true, _) if self.divisor < i64::from(i32::MIN) || self.divisor > i64::from(i32::MAX) => {
                Err(Error::DivisorOutOfRange { divisor: self.divisor.unsigned_abs(), n_bits: 32 })
            }
            _ => Ok(()),
        }
    }
}

fn lcg_unsigned(a: u32, d: u32, iters: u64, strategy: BenchStrategy) -> Result<u32> {
    let mut x = LCG_SEED;
    match strategy {
        BenchStrategy::Lkk => {
            let div = UnsignedFastDivisor::new(d)?;
            for _ in 0..iters {
                x = div.fastmod(a.wrapping_mul(x).wrapping_add(LCG_ADDEND));
                x = black_box(x);
            }
        }
        BenchStrategy::Gmw => {
            let div = GmwDivisor::new(d)?;
            for _ in 0..iters {
                x = div.modulo(a.wrapping_mul(x).wrapping_add(LCG_ADDEND));
                x = black_box(x);
            }
        }
        BenchStrategy::Hardware => {
            let d = black_box(d);
            for _ in 0..iters {
                x = a.wrapping_mul(x).wrapping_add(LCG_ADDEND) % d;
                x = black_box(x);
            }
        }
        BenchStrategy::Gm => unreachable!("rejected by validate"),
    }
    Ok(x)
}

fn lcg_signed(a: i32, d: i32, iters: u64, strategy: BenchStrategy) -> Result<i32> {
    let mut x = LCG_SEED as i32;
    match strategy {
        BenchStrategy::Lkk => {
            let div = SignedFastDivisor::new(d)?;
            for _ in 0..iters {
                x = div.fastmod(a.wrapping_mul(x).wrapping_add(LCG_ADDEND as i32));
                x = black_box(x);
            }
        }
        BenchStrategy::Hardware => {
            let d = black_box(d);
            for _ in 0..iters {
                x = a.wrapping_mul(x).wrapping_add(LCG_ADDEND as i32) % d;
                x = black_box(x);
            }
        }
        BenchStrategy::Gmw | BenchStrategy::Gm => unreachable!("rejected by validate"),
    }
    Ok(x)
}

fn run_lcg_once(cfg: &LcgConfig, strategy: BenchStrategy, iters: u64) -> Result<i64> {
    if cfg.signed {
        // negative multiplier in the signed variant
        let a = -(cfg.multiplier as i32);
        lcg_signed(a, cfg.divisor as i32, iters, strategy).map(i64::from)
    } else {
        lcg_unsigned(cfg.multiplier, cfg.divisor as u32, iters, strategy).map(i64::from)
    }
}

/// Runs the LCG `x <- (a*x + b) mod d` benchmark for one strategy.
pub fn lcg_bench(cfg: &LcgConfig, strategy: BenchStrategy) -> Result<BenchReport> {
    cfg.validate(strategy)?;
    if cfg.warmup_iterations > 0 {
        run_lcg_once(cfg, strategy, cfg.warmup_iterations)?;
    }
    let mut checksum = 0;
    let mut timings = Vec::with_capacity(cfg.repeats.max(1) as usize);
    for _ in 0..cfg.repeats.max(1) {
        let start = Instant::now();
        checksum = run_lcg_once(cfg, strategy, cfg.iterations)?;
        timings.push(start.elapsed().as_nanos() as u64);
    }
    let elapsed_ns = median(&mut timings);
    Ok(BenchReport {
        benchmark: if cfg.signed { "lcg-signed" } else { "lcg" }.to_string(),
        strategy,
        divisor: Some(cfg.divisor),
        iterations: cfg.iterations,
        elapsed_ns,
        ns_per_op: elapsed_ns as f64 / cfg.iterations as f64,
        checksum,
    })
}

fn median(timings: &mut [u64]) -> u64 {
    timings.sort_unstable();
    timings[timings.len() / 2]
}

/// Counts primes below `limit` by trial divisibility against previously
/// discovered primes. Per-prime storage mirrors each strategy's real cost:
/// one 64-bit reciprocal (lkk), inverse-plus-rotation constants (gm), or
/// the prime itself (hardware). Constants are computed once per prime.
pub fn count_primes(limit: u32, strategy: BenchStrategy) -> Result<u32> {
    if limit < 3 {
        return Err(Error::InvalidSweep("prime benchmark needs limit >= 3".into()));
    }
    match strategy {
        BenchStrategy::Lkk => {
            let mut cvals: Vec<u64> = Vec::new();
            let mut count = 0u32;
            let mut n = 3u32;
            while n < limit {
                if !cvals
                    .iter()
                    .any(|&c| c.wrapping_mul(u64::from(n)) <= c.wrapping_sub(1))
                {
                    cvals.push(u64::MAX / u64::from(n) + 1);
                    count += 1;
                }
                n += 2;
            }
            Ok(count + 1) // 2 is also prime
        }
        BenchStrategy::Gm => {
            let mut checkers: Vec<GmDivisibility> = Vec::new();
            let mut count = 0u32;
            let mut n = 3u32;
            while n < limit {
                if !checkers.iter().any(|c| c.is_divisible(n)) {
                    checkers.push(GmDivisibility::new(n)?);
                    count += 1;
                }
                n += 2;
            }
            Ok(count + 1)
        }
        BenchStrategy::Hardware => {
            let mut primes: Vec<u32> = Vec::new();
            let mut count = 0u32;
            let mut n = 3u32;
            while n < limit {
                if !primes.iter().any(|&p| n % p == 0) {
                    primes.push(n);
                    count += 1;
                }
                n += 2;
            }
            Ok(count + 1)
        }
        BenchStrategy::Gmw => Err(Error::StrategyMismatch {
            strategy: "gmw".into(),
            reason: "prime benchmark compares divisibility tests; use gm".into(),
        }),
    }
}

/// Times `count_primes`; the checksum is the prime count.
pub fn prime_count_bench(limit: u32, strategy: BenchStrategy) -> Result<BenchReport> {
    count_primes(limit.min(1000).max(3), strategy)?; // warmup
    let repeats = DEFAULT_REPEATS;
    let mut count = 0;
    let mut timings = Vec::with_capacity(repeats as usize);
    for _ in 0..repeats {
        let start = Instant::now();
        count = black_box(count_primes(limit, strategy)?);
        timings.push(start.elapsed().as_nanos() as u64);
    }
    let elapsed_ns = median(&mut timings);
    Ok(BenchReport {
        benchmark: "primes".to_string(),
        strategy,
        divisor: None,
        iterations: u64::from(limit),
        elapsed_ns,
        ns_per_op: elapsed_ns as f64 / f64::from(limit),
        checksum: i64::from(count),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "" | "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub const CSV_HEADER: &str = "benchmark,strategy,divisor,iterations,elapsed_ns,ns_per_op,checksum";

/// Serializes reports as JSON (default) or CSV with a stable column order.
pub fn emit_report(reports: &[BenchReport], format: ReportFormat) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::InvalidSweep("no benchmark reports to emit".into()));
    }
    match format {
        ReportFormat::Json => {
            Ok(serde_json::to_string_pretty(reports).expect("reports serialize"))
        }
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in reports {
                let divisor = r.divisor.map(|d| d.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.benchmark,
                    r.strategy.name(),
                    divisor,
                    r.iterations,
                    r.elapsed_ns,
                    r.ns_per_op,
                    r.checksum
                ));
            }
            Ok(out)
        }
    }
}

/// True when every report in the slice that shares a (benchmark, divisor)
/// cell also shares its checksum.
pub fn checksums_agree(reports: &[BenchReport]) -> bool {
    use std::collections::HashMap;
    let mut seen: HashMap<(String, Option<i64>), i64> = HashMap::new();
    for r in reports {
        let key = (r.benchmark.clone(), r.divisor);
        match seen.get(&key) {
            Some(&c) if c != r.checksum => return false,
            Some(_) => {}
            None => {
                seen.insert(key, r.checksum);
            }
        }
    }
    true
}
