//! Oracle-based verification sweeps.
//!
//! Every strategy is compared bit-for-bit against native hardware division
//! over a configurable `(divisor, numerator)` domain: exhaustive at mirror
//! widths (8 or 16 bits, where the full cross product is tractable), and
//! boundary-plus-seeded-random (or optionally exhaustive-per-divisor) at
//! the production 32-bit width. Sweeps are deterministic: the random
//! numerators are a pure function of (seed, divisor, counter), so the same
//! spec always yields the same report regardless of worker partitioning.

pub mod mirror;

use crate::baseline::{GmDivisibility, GmwDivisor};
use crate::error::{Error, Result};
use crate::magic;
use crate::rng;
use crate::signed::SignedFastDivisor;
use crate::unsigned::UnsignedFastDivisor;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Lkk,
    Gmw,
    GmDivisibility,
    Oracle,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Lkk => "lkk",
            Strategy::Gmw => "gmw",
            Strategy::GmDivisibility => "gm-divisibility",
            Strategy::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorSet {
    /// Explicit divisor list; negative entries are only meaningful for
    /// signed sweeps.
    Explicit(Vec<i64>),
    /// Every valid divisor at the sweep width (widths <= 16 only).
    All,
    /// Small divisors, powers of two and their neighbors, and the top of
    /// the range: `{2..=1024} ∪ {2^K, 2^K±1 : K=2..31} ∪ {2^32−1, 2^32−2}`
    /// at width 32 (scaled analogues below).
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumeratorCoverage {
    Exhaustive,
    BoundaryRandom { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signedness {
    Unsigned,
    Signed,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub width: u32,
    pub divisors: DivisorSet,
    pub numerators: NumeratorCoverage,
    pub signedness: Signedness,
    pub strategies: Vec<Strategy>,
}

impl SweepSpec {
    pub fn seed(&self) -> u64 {
        match self.numerators {
            NumeratorCoverage::BoundaryRandom { seed, .. } => seed,
            NumeratorCoverage::Exhaustive => 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !matches!(self.width, 8 | 16 | 32) {
            return Err(Error::InvalidSweep(format!(
                "width must be 8, 16 or 32, got {}",
                self.width
            )));
        }
        if matches!(self.divisors, DivisorSet::All) && self.width > 16 {
            return Err(Error::InvalidSweep(
                "divisor set 'all' is limited to widths <= 16".into(),
            ));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidSweep("no strategies selected".into()));
        }
        if let DivisorSet::Explicit(ds) = &self.divisors {
            for &d in ds {
                if d == 0 {
                    return Err(Error::ZeroDivisor);
                }
                let max = 1i64 << self.width;
                if d >= max || d < -(max / 2) {
                    return Err(Error::InvalidSweep(format!(
                        "divisor {d} out of range at width {}",
                        self.width
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub strategy: Strategy,
    pub operation: String,
    pub d: i64,
    pub n: i64,
    pub expected: i64,
    pub actual: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub strategy: Strategy,
    pub numerators_checked: u64,
    pub mismatch_count: u64,
    /// At most 100 retained; `mismatch_count` keeps the true total.
    pub first_mismatches: Vec<Mismatch>,
}

pub const MAX_RECORDED_MISMATCHES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub spec: SweepSpec,
    pub seed: u64,
    pub elapsed_ns: u64,
    pub strategies: Vec<StrategyReport>,
}

impl MismatchReport {
    pub fn pass(&self) -> bool {
        self.strategies.iter().all(|s| s.mismatch_count == 0)
    }

    /// One JSON object per strategy:
    /// `{spec, strategy, mismatch_count, first_mismatches, elapsed_ns, seed}`.
    pub fn json_rows(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.strategies
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "spec": self.spec,
                        "strategy": s.strategy,
                        "mismatch_count": s.mismatch_count,
                        "first_mismatches": s.first_mismatches,
                        "elapsed_ns": self.elapsed_ns,
                        "seed": self.seed,
                    })
                })
                .collect(),
        )
    }
}

/// Native hardware division with truncated (C99) semantics: the ground
/// truth every strategy is compared against.
pub fn oracle_divmod(n: i64, d: i64) -> Result<(i64, i64)> {
    if d == 0 {
        return Err(Error::ZeroDivisor);
    }
    Ok((n / d, n % d))
}

fn expand_unsigned_divisors(spec: &SweepSpec) -> Vec<u64> {
    let max = 1u64 << spec.width;
    match &spec.divisors {
        DivisorSet::Explicit(ds) => ds.iter().filter(|&&d| d > 0).map(|&d| d as u64).collect(),
        DivisorSet::All => (1..max).collect(),
        DivisorSet::Structured => {
            let mut out: Vec<u64> = (2..=1024.min(max - 1)).collect();
            for k in 2..spec.width {
                let p = 1u64 << k;
                for v in [p - 1, p, p + 1] {
                    if v >= 1 && v < max {
                        out.push(v);
                    }
                }
            }
            out.push(max - 1);
            out.push(max - 2);
            out.sort_unstable();
            out.dedup();
            out
        }
    }
}

fn expand_signed_divisors(spec: &SweepSpec) -> Vec<i64> {
    let half = 1i64 << (spec.width - 1);
    match &spec.divisors {
        DivisorSet::Explicit(ds) => ds
            .iter()
            .copied()
            .filter(|&d| d != 0 && d >= -half && d < half)
            .collect(),
        DivisorSet::All => (-half..half).filter(|&d| d != 0).collect(),
        DivisorSet::Structured => {
            let mut out: Vec<i64> = Vec::new();
            for m in 2..=1024.min(half - 1) {
                out.push(m);
                out.push(-m);
            }
            for k in 2..spec.width - 1 {
                let p = 1i64 << k;
                for v in [p - 1, p, p + 1] {
                    out.push(v);
                    out.push(-v);
                }
            }
            out.push(half - 1);
            out.push(-half + 1);
            out.push(-half);
            out.sort_unstable();
            out.dedup();
            out
        }
    }
}

fn for_each_unsigned_numerator(
    coverage: NumeratorCoverage,
    width: u32,
    d: u64,
    mut f: impl FnMut(u64),
) {
    let max = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    match coverage {
        NumeratorCoverage::Exhaustive => {
            for n in 0..=max {
                f(n);
            }
        }
        NumeratorCoverage::BoundaryRandom { samples, seed } => {
            let half = 1u64 << (width - 1);
            let mut boundaries = vec![0, 1, half - 1, half, max];
            for v in [d.wrapping_sub(1), d, d + 1] {
                if v <= max {
                    boundaries.push(v);
                }
            }
            boundaries.sort_unstable();
            boundaries.dedup();
            for n in boundaries {
                f(n);
            }
            for i in 0..samples {
                f(rng::draw(seed, d, i) & max);
            }
        }
    }
}

fn for_each_signed_numerator(
    coverage: NumeratorCoverage,
    width: u32,
    d: i64,
    mut f: impl FnMut(i64),
) {
    let half = 1i64 << (width - 1);
    match coverage {
        NumeratorCoverage::Exhaustive => {
            for n in -half..half {
                f(n);
            }
        }
        NumeratorCoverage::BoundaryRandom { samples, seed } => {
            let mut boundaries = vec![0, 1, -1, -half, half - 1];
            for v in [d - 1, d, d + 1, -d - 1, -d, -d + 1] {
                if v >= -half && v < half {
                    boundaries.push(v);
                }
            }
            boundaries.sort_unstable();
            boundaries.dedup();
            for n in boundaries {
                f(n);
            }
            let mask = (1u64 << width) - 1;
            let sign = 1u64 << (width - 1);
            for i in 0..samples {
                let bits = rng::draw(seed, d as u64, i) & mask;
                // reinterpret the low `width` bits as two's complement
                let n = if bits & sign != 0 {
                    bits as i64 - (1i64 << width)
                } else {
                    bits as i64
                };
                f(n);
            }
        }
    }
}

enum LkkUnsigned {
    Real(UnsignedFastDivisor),
    Mirror(mirror::MirrorLkkUnsigned),
}

impl LkkUnsigned {
    fn prepare(d: u64, width: u32) -> Result<Self> {
        if width == 32 {
            Ok(Self::Real(UnsignedFastDivisor::new(d as u32)?))
        } else {
            Ok(Self::Mirror(mirror::MirrorLkkUnsigned::new(d, width)?))
        }
    }

    fn eval(&self, n: u64) -> (u64, u64, bool) {
        match self {
            Self::Real(div) => (
                u64::from(div.fastdiv(n as u32)),
                u64::from(div.fastmod(n as u32)),
                div.is_divisible(n as u32),
            ),
            Self::Mirror(m) => (m.fastdiv(n), m.fastmod(n), m.is_divisible(n)),
        }
    }
}

enum LkkSigned {
    Real(SignedFastDivisor),
    Mirror(mirror::MirrorLkkSigned),
}

impl LkkSigned {
    fn prepare(d: i64, width: u32) -> Result<Self> {
        if width == 32 {
            Ok(Self::Real(SignedFastDivisor::new(d as i32)?))
        } else {
            Ok(Self::Mirror(mirror::MirrorLkkSigned::new(d, width)?))
        }
    }

    fn eval(&self, n: i64) -> (i64, bool) {
        match self {
            Self::Real(div) => (i64::from(div.fastmod(n as i32)), div.is_divisible(n as i32)),
            Self::Mirror(m) => (m.fastmod(n), m.is_divisible(n)),
        }
    }
}

enum GmChecker {
    Real(GmDivisibility),
    Mirror(mirror::MirrorGmDivisibility),
}

impl GmChecker {
    fn prepare(d: u64, width: u32) -> Result<Self> {
        if width == 32 {
            Ok(Self::Real(GmDivisibility::new(d as u32)?))
        } else {
            Ok(Self::Mirror(mirror::MirrorGmDivisibility::new(d, width)?))
        }
    }

    fn eval(&self, n: u64) -> bool {
        match self {
            Self::Real(g) => g.is_divisible(n as u32),
            Self::Mirror(m) => m.is_divisible(n),
        }
    }
}

#[derive(Default, Clone)]
struct Tally {
    checked: u64,
    mismatch_count: u64,
    recorded: Vec<Mismatch>,
}

impl Tally {
    fn record(&mut self, m: Mismatch) {
        self.mismatch_count += 1;
        if self.recorded.len() < MAX_RECORDED_MISMATCHES {
            self.recorded.push(m);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.mismatch_count += other.mismatch_count;
        for m in other.recorded {
            if self.recorded.len() >= MAX_RECORDED_MISMATCHES {
                break;
            }
            self.recorded.push(m);
        }
    }
}

fn sweep_unsigned_divisor(spec: &SweepSpec, d: u64) -> Result<Vec<Tally>> {
    let lkk = if spec.strategies.contains(&Strategy::Lkk) {
        Some(LkkUnsigned::prepare(d, spec.width)?)
    } else {
        None
    };
    let gmw = if spec.strategies.contains(&Strategy::Gmw) {
        Some(if spec.width == 32 {
            GmwDivisor::new(d as u32)?
        } else {
            GmwDivisor::with_width(d as u32, spec.width)?
        })
    } else {
        None
    };
    let gm = if spec.strategies.contains(&Strategy::GmDivisibility) {
        Some(GmChecker::prepare(d, spec.width)?)
    } else {
        None
    };

    let mut tallies = vec![Tally::default(); spec.strategies.len()];
    for_each_unsigned_numerator(spec.numerators, spec.width, d, |n| {
        let (q, r) = (n / d, n % d);
        for (idx, strategy) in spec.strategies.iter().enumerate() {
            let tally = &mut tallies[idx];
            tally.checked += 1;
            let mut check = |operation: &str, expected: u64, actual: u64| {
                if expected != actual {
                    tally.record(Mismatch {
                        strategy: *strategy,
                        operation: operation.to_string(),
                        d: d as i64,
                        n: n as i64,
                        expected: expected as i64,
                        actual: actual as i64,
                    });
                }
            };
            match strategy {
                Strategy::Lkk => {
                    let (fq, fr, fdiv) = lkk.as_ref().unwrap().eval(n);
                    check("fastdiv", q, fq);
                    check("fastmod", r, fr);
                    check("is_divisible", u64::from(r == 0), u64::from(fdiv));
                }
                Strategy::Gmw => {
                    let g = gmw.as_ref().unwrap();
                    check("gmw_div", q, u64::from(g.div(n as u32)));
                    check("gmw_mod", r, u64::from(g.modulo(n as u32)));
                }
                Strategy::GmDivisibility => {
                    let got = gm.as_ref().unwrap().eval(n);
                    check("gm_divisible", u64::from(r == 0), u64::from(got));
                }
                Strategy::Oracle => {
                    // ground truth compared with the division identity
                    check("identity", n, q * d + r);
                }
            }
        }
    });
    Ok(tallies)
}

fn sweep_signed_divisor(spec: &SweepSpec, d: i64) -> Result<Vec<Tally>> {
    let lkk = if spec.strategies.contains(&Strategy::Lkk) {
        Some(LkkSigned::prepare(d, spec.width)?)
    } else {
        None
    };
    let mut tallies = vec![Tally::default(); spec.strategies.len()];
    for_each_signed_numerator(spec.numerators, spec.width, d, |n| {
        let r = n % d;
        for (idx, strategy) in spec.strategies.iter().enumerate() {
            let tally = &mut tallies[idx];
            match strategy {
                Strategy::Lkk => {
                    tally.checked += 1;
                    let (fr, fdiv) = lkk.as_ref().unwrap().eval(n);
                    if fr != r {
                        tally.record(Mismatch {
                            strategy: *strategy,
                            operation: "fastmod_signed".to_string(),
                            d,
                            n,
                            expected: r,
                            actual: fr,
                        });
                    }
                    if fdiv != (r == 0) {
                        tally.record(Mismatch {
                            strategy: *strategy,
                            operation: "is_divisible_signed".to_string(),
                            d,
                            n,
                            expected: i64::from(r == 0),
                            actual: i64::from(fdiv),
                        });
                    }
                }
                Strategy::Oracle => {
                    tally.checked += 1;
                    let q = n / d;
                    if q * d + r != n {
                        tally.record(Mismatch {
                            strategy: *strategy,
                            operation: "identity".to_string(),
                            d,
                            n,
                            expected: n,
                            actual: q * d + r,
                        });
                    }
                }
                // GMW and GM are unsigned-only strategies
                Strategy::Gmw | Strategy::GmDivisibility => {}
            }
        }
    });
    Ok(tallies)
}

/// Runs a full sweep. Divisors are partitioned across worker threads; the
/// merged report is identical to a single-threaded run.
pub fn run_sweep(spec: &SweepSpec) -> Result<MismatchReport> {
    spec.validate()?;
    let start = Instant::now();

    let mut totals = vec![Tally::default(); spec.strategies.len()];

    if matches!(spec.signedness, Signedness::Unsigned | Signedness::Both) {
        let divisors = expand_unsigned_divisors(spec);
        let partials: Vec<Vec<Tally>> = divisors
            .par_iter()
            .map(|&d| sweep_unsigned_divisor(spec, d))
            .collect::<Result<_>>()?;
        for partial in partials {
            for (total, t) in totals.iter_mut().zip(partial) {
                total.merge(t);
            }
        }
    }
    if matches!(spec.signedness, Signedness::Signed | Signedness::Both) {
        let divisors = expand_signed_divisors(spec);
        let partials: Vec<Vec<Tally>> = divisors
            .par_iter()
            .map(|&d| sweep_signed_divisor(spec, d))
            .collect::<Result<_>>()?;
        for partial in partials {
            for (total, t) in totals.iter_mut().zip(partial) {
                total.merge(t);
            }
        }
    }

    Ok(MismatchReport {
        spec: spec.clone(),
        seed: spec.seed(),
        elapsed_ns: start.elapsed().as_nanos() as u64,
        strategies: spec
            .strategies
            .iter()
            .zip(totals)
            .map(|(&strategy, t)| StrategyReport {
                strategy,
                numerators_checked: t.checked,
                mismatch_count: t.mismatch_count,
                first_mismatches: t.recorded,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub n_bits: u32,
    pub divisors_checked: u64,
    /// Divisors whose selected `L` is not minimal (condition fails at `L`
    /// or still holds at `L - 1`).
    pub violations: Vec<u32>,
}

impl MinimalityReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Confirms, for every divisor at width `n_bits`, that the selected number
/// of fractional bits is minimal: the validity condition holds at `L` and
/// fails at `L - 1` (non-powers-of-two with `L > 0`).
pub fn minimality_sweep(n_bits: u32) -> Result<MinimalityReport> {
    if n_bits == 0 || n_bits > 16 {
        return Err(Error::UnsupportedWidth(n_bits));
    }
    let mut violations = Vec::new();
    let mut checked = 0;
    for d in 1u32..(1 << n_bits) {
        checked += 1;
        let params = magic::minimal_unsigned_params(d, n_bits)?;
        if !params.is_valid() {
            violations.push(d);
            continue;
        }
        if d.is_power_of_two() {
            continue;
        }
        if params.l_bits > 0 {
            let l = params.l_bits - 1;
            let c = (1u128 << (n_bits + l)).div_ceil(u128::from(d)) as u64;
            if magic::check_unsigned_condition(c, d, n_bits, l) {
                violations.push(d);
            }
        }
    }
    Ok(MinimalityReport { n_bits, divisors_checked: checked, violations })
}

/// Searches for a numerator where parameters one fractional bit short of
/// minimal produce a wrong remainder. Returns `None` for powers of two or
/// divisors whose minimal `L` is already zero.
pub fn tightness_counterexample(d: u32, n_bits: u32) -> Result<Option<u64>> {
    let params = magic::minimal_unsigned_params(d, n_bits)?;
    if d.is_power_of_two() || params.l_bits == 0 {
        return Ok(None);
    }
    let f = params.f_bits - 1;
    let c = (1u128 << f).div_ceil(u128::from(d));
    for n in 0..(1u64 << n_bits) {
        let frac = (c * u128::from(n)) & ((1u128 << f) - 1);
        let r = ((frac * u128::from(d)) >> f) as u64;
        if r != n % u64::from(d) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_strategies() -> Vec<Strategy> {
        vec![
            Strategy::Lkk,
            Strategy::Gmw,
            Strategy::GmDivisibility,
            Strategy::Oracle,
        ]
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_divmod(23, 4).unwrap(), (5, 3));
        assert_eq!(oracle_divmod(0, 9).unwrap(), (0, 0));
        assert_eq!(oracle_divmod(-7, 3).unwrap(), (-2, -1));
        assert!(oracle_divmod(5, 0).is_err());
    }

    #[test]
    fn exhaustive_8_bit_mirror_passes() {
        let spec = SweepSpec {
            width: 8,
            divisors: DivisorSet::All,
            numerators: NumeratorCoverage::Exhaustive,
            signedness: Signedness::Both,
            strategies: all_strategies(),
        };
        let report = run_sweep(&spec).unwrap();
        assert!(report.pass(), "{:?}", report.strategies);
        assert!(report.strategies[0].numerators_checked > 0);
    }

    #[test]
    fn explicit_divisors_32_bit_sampled() {
        let spec = SweepSpec {
            width: 32,
            divisors: DivisorSet::Explicit(vec![6, 95, 128, (1 << 31) + 1]),
            numerators: NumeratorCoverage::BoundaryRandom { samples: 10_000, seed: 0xD1CE },
            signedness: Signedness::Both,
            strategies: all_strategies(),
        };
        let report = run_sweep(&spec).unwrap();
        assert!(report.pass(), "{:?}", report.strategies);
    }

    #[test]
    fn sweeps_are_deterministic() {
        let spec = SweepSpec {
            width: 16,
            divisors: DivisorSet::Structured,
            numerators: NumeratorCoverage::BoundaryRandom { samples: 500, seed: 7 },
            signedness: Signedness::Both,
            strategies: vec![Strategy::Lkk, Strategy::GmDivisibility],
        };
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a.strategies, b.strategies);
        assert_eq!(a.seed, 7);
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut spec = SweepSpec {
            width: 32,
            divisors: DivisorSet::All,
            numerators: NumeratorCoverage::Exhaustive,
            signedness: Signedness::Unsigned,
            strategies: vec![Strategy::Lkk],
        };
        assert!(run_sweep(&spec).is_err());
        spec.width = 12;
        assert!(run_sweep(&spec).is_err());
        spec.width = 16;
        spec.divisors = DivisorSet::Explicit(vec![0]);
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn minimality_small_widths() {
        for n_bits in [6, 8, 10] {
            let report = minimality_sweep(n_bits).unwrap();
            assert!(report.pass(), "N={n_bits}: {:?}", report.violations);
        }
        // the worked example: d=6 at N=6 needs exactly L=2
        let p = magic::minimal_unsigned_params(6, 6).unwrap();
        assert_eq!(p.l_bits, 2);
        let p8 = magic::minimal_unsigned_params(8, 6).unwrap();
        assert_eq!((p8.f_bits, p8.c), (3, 1));
    }

    #[test]
    fn tightness_examples() {
        // d=6 at N=12: dropping one fractional bit breaks some numerator
        let n = tightness_counterexample(6, 12).unwrap();
        assert_eq!(n, Some(2048)); // first failure, frozen from the oracle scan
        assert!(tightness_counterexample(8, 12).unwrap().is_none());
    }

    #[test]
    fn json_rows_schema() {
        let spec = SweepSpec {
            width: 8,
            divisors: DivisorSet::Explicit(vec![6]),
            numerators: NumeratorCoverage::Exhaustive,
            signedness: Signedness::Unsigned,
            strategies: vec![Strategy::Lkk],
        };
        let report = run_sweep(&spec).unwrap();
        let rows = report.json_rows();
        let row = &rows.as_array().unwrap()[0];
        for key in ["spec", "strategy", "mismatch_count", "first_mismatches", "elapsed_ns", "seed"] {
            assert!(row.get(key).is_some(), "missing key {key}");
        }
    }
}
