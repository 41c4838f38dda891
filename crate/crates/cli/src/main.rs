//! `fastrem`: magic-constant computation, divisibility queries, oracle
//! verification sweeps and benchmarks, from the command line.
//!
//! Exit codes: 0 success (verify pass, checksums agree, divisible true),
//! 1 verification mismatch / checksum disagreement / divisible false,
//! 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fastrem_core::bench::{
    self, BenchReport, BenchStrategy, LcgConfig, ReportFormat, CSV_HEADER,
};
use fastrem_core::magic;
use fastrem_core::verify::{
    self, DivisorSet, NumeratorCoverage, Signedness, Strategy, SweepSpec,
};
use fastrem_core::{GmDivisibility, SignedFastDivisor, UnsignedFastDivisor};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fastrem", version, about = "Fast remainder and divisibility by invariant 32-bit divisors")]
struct Cli {
    /// Print the resolved configuration before running.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute fixed-point reciprocal parameters (d, N, L, F, c) for a divisor.
    Magic(MagicArgs),
    /// Test whether d divides n.
    Divisible(DivisibleArgs),
    /// Sweep strategies against the native-division oracle.
    Verify(VerifyArgs),
    /// Run a benchmark.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Args)]
struct MagicArgs {
    /// Divisor, decimal or 0x-hex; negative only with --signed.
    #[arg(allow_hyphen_values = true)]
    d: String,
    /// Numerator bit width N, 1 to 32.
    #[arg(long, default_value_t = 32)]
    n_bits: u32,
    /// Signed parameters (divisor magnitude below 2^(N-1)).
    #[arg(long)]
    signed: bool,
    /// Smallest valid number of fractional bits.
    #[arg(long, conflicts_with = "convenient")]
    minimal: bool,
    /// F = 2N, valid for every divisor (the default).
    #[arg(long)]
    convenient: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DivisibleStrategy {
    Lkk,
    Gm,
    Hardware,
}

#[derive(Args)]
struct DivisibleArgs {
    /// Numerator, decimal or 0x-hex.
    #[arg(allow_hyphen_values = true)]
    n: String,
    /// Divisor, decimal or 0x-hex, nonzero.
    #[arg(allow_hyphen_values = true)]
    d: String,
    #[arg(long, value_enum, default_value = "lkk")]
    strategy: DivisibleStrategy,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Sweep width: 8, 16 or 32.
    #[arg(long, default_value_t = 32)]
    width: u32,
    /// "all" (widths <= 16), "structured", or a comma-separated divisor list.
    #[arg(long, default_value = "structured")]
    divisors: String,
    /// "exhaustive" or "random".
    #[arg(long, default_value = "random")]
    numerators: String,
    /// Random numerators per divisor (random coverage only).
    #[arg(long, default_value_t = 10_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0x5EED)]
    seed: u64,
    /// Sweep the signed paths instead of the unsigned ones.
    #[arg(long, conflicts_with = "both")]
    signed: bool,
    /// Sweep both signednesses.
    #[arg(long)]
    both: bool,
    /// Comma-separated subset of lkk,gmw,gm-divisibility,oracle.
    #[arg(long, default_value = "lkk,gmw,gm-divisibility,oracle")]
    strategies: String,
    /// Allow exhaustive numerators at width 32 (tens of seconds per divisor).
    #[arg(long)]
    slow: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Serial LCG x <- (a*x + b) mod d; reports ns per iteration.
    Lcg(LcgArgs),
    /// Count primes below a limit by trial divisibility.
    Primes(PrimesArgs),
}

#[derive(Args)]
struct LcgArgs {
    /// Divisor, decimal or 0x-hex.
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Signed variant (negated multiplier).
    #[arg(long)]
    signed: bool,
    /// Comma-separated subset of lkk,gmw,hardware (gmw is unsigned-only).
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long, default_value_t = bench::DEFAULT_LCG_ITERATIONS)]
    iters: u64,
    #[arg(long, default_value_t = bench::DEFAULT_WARMUP_ITERATIONS)]
    warmup: u64,
    #[arg(long, default_value_t = bench::DEFAULT_REPEATS)]
    repeats: u32,
    #[arg(long, default_value_t = bench::LCG_MULTIPLIER)]
    multiplier: u32,
    /// Run strategy cells on separate threads (pollutes timings; off by default).
    #[arg(long)]
    parallel_cells: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Args)]
struct PrimesArgs {
    #[arg(long, default_value_t = 40_000)]
    limit: u32,
    /// Comma-separated subset of lkk,gm,hardware.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    parallel_cells: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

/// A usage problem (exit 2), distinct from a mismatch (exit 1).
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_int(s: &str) -> Result<i64, UsageError> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let magnitude = if let Some(hex) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        body.parse::<u64>()
    }
    .map_err(|_| UsageError(format!("invalid number: {s}")))?;
    let limit = if negative { 1u64 << 63 } else { (1u64 << 63) - 1 };
    if magnitude > limit {
        return Err(UsageError(format!("number out of range: {s}")));
    }
    Ok(if negative { (magnitude as i64).wrapping_neg() } else { magnitude as i64 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Magic(args) => cmd_magic(&args, cli.verbose),
        Command::Divisible(args) => cmd_divisible(&args, cli.verbose),
        Command::Verify(args) => cmd_verify(&args, cli.verbose),
        Command::Bench(BenchCommand::Lcg(args)) => cmd_bench_lcg(&args, cli.verbose),
        Command::Bench(BenchCommand::Primes(args)) => cmd_bench_primes(&args, cli.verbose),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_magic(args: &MagicArgs, verbose: bool) -> Result<ExitCode, UsageError> {
    let d_raw = parse_int(&args.d)?;
    if d_raw < 0 && !args.signed {
        return Err(UsageError("negative divisor requires --signed".into()));
    }
    let magnitude = u32::try_from(d_raw.unsigned_abs())
        .map_err(|_| UsageError(format!("divisor out of range: {}", args.d)))?;
    if verbose {
        eprintln!(
            "magic: d={d_raw} n_bits={} signed={} mode={}",
            args.n_bits,
            args.signed,
            if args.minimal { "minimal" } else { "convenient" }
        );
    }
    let params = match (args.signed, args.minimal) {
        (false, true) => magic::minimal_unsigned_params(magnitude, args.n_bits)?,
        (false, false) => magic::convenient_unsigned_params(magnitude, args.n_bits)?,
        (true, true) => magic::minimal_signed_params(magnitude, args.n_bits)?,
        (true, false) => magic::convenient_signed_params(magnitude, args.n_bits)?,
    };
    match args.format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::json!({
                "params": params,
                "valid": params.is_valid(),
            })
        ),
        _ => {
            println!("d = {} (0x{:X})", params.d, params.d);
            println!(
                "N = {}  L = {}  F = {}  signed = {}  minimal = {}",
                params.n_bits, params.l_bits, params.f_bits, params.signed, params.minimal
            );
            println!("c = {} (0x{:X})", params.c, params.c);
            println!("valid = {}", params.is_valid());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_divisible(args: &DivisibleArgs, verbose: bool) -> Result<ExitCode, UsageError> {
    let n = parse_int(&args.n)?;
    let d = parse_int(&args.d)?;
    if d == 0 {
        return Err(UsageError("divisor must be nonzero".into()));
    }
    let signed = n < 0 || d < 0;
    if verbose {
        eprintln!("divisible: n={n} d={d} signed={signed}");
    }
    let divisible = match (args.strategy, signed) {
        (DivisibleStrategy::Lkk, false) => {
            let n = u32::try_from(n).map_err(|_| UsageError("n exceeds 32 bits".into()))?;
            let d = u32::try_from(d).map_err(|_| UsageError("d exceeds 32 bits".into()))?;
            UnsignedFastDivisor::new(d)?.is_divisible(n)
        }
        (DivisibleStrategy::Lkk, true) => {
            let n = i32::try_from(n).map_err(|_| UsageError("n exceeds 32 bits".into()))?;
            let d = i32::try_from(d).map_err(|_| UsageError("d exceeds 32 bits".into()))?;
            SignedFastDivisor::new(d)?.is_divisible(n)
        }
        (DivisibleStrategy::Gm, false) => {
            let n = u32::try_from(n).map_err(|_| UsageError("n exceeds 32 bits".into()))?;
            let d = u32::try_from(d).map_err(|_| UsageError("d exceeds 32 bits".into()))?;
            GmDivisibility::new(d)?.is_divisible(n)
        }
        (DivisibleStrategy::Gm, true) => {
            return Err(UsageError("gm strategy is unsigned-only".into()));
        }
        (DivisibleStrategy::Hardware, _) => n % d == 0,
    };
    match args.format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::json!({ "n": n, "d": d, "divisible": divisible })
        ),
        _ => println!("{divisible}"),
    }
    Ok(if divisible { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_verify_strategies(list: &str) -> Result<Vec<Strategy>, UsageError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s {
            "lkk" => Ok(Strategy::Lkk),
            "gmw" => Ok(Strategy::Gmw),
            "gm-divisibility" | "gm" => Ok(Strategy::GmDivisibility),
            "oracle" => Ok(Strategy::Oracle),
            other => Err(UsageError(format!("unknown strategy: {other}"))),
        })
        .collect()
}

fn cmd_verify(args: &VerifyArgs, verbose: bool) -> Result<ExitCode, UsageError> {
    let divisors = match args.divisors.as_str() {
        "all" => DivisorSet::All,
        "structured" => DivisorSet::Structured,
        list => DivisorSet::Explicit(
            list.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_int)
                .collect::<Result<_, _>>()?,
        ),
    };
    let numerators = match args.numerators.as_str() {
        "exhaustive" => {
            if args.width == 32 && !args.slow {
                return Err(UsageError(
                    "exhaustive numerators at width 32 take tens of seconds per divisor; \
                     pass --slow to confirm"
                        .into(),
                ));
            }
            NumeratorCoverage::Exhaustive
        }
        "random" => NumeratorCoverage::BoundaryRandom { samples: args.samples, seed: args.seed },
        other => return Err(UsageError(format!("unknown numerator coverage: {other}"))),
    };
    let spec = SweepSpec {
        width: args.width,
        divisors,
        numerators,
        signedness: match (args.both, args.signed) {
            (true, _) => Signedness::Both,
            (false, true) => Signedness::Signed,
            (false, false) => Signedness::Unsigned,
        },
        strategies: parse_verify_strategies(&args.strategies)?,
    };
    if verbose {
        eprintln!("verify: {}", serde_json::to_string(&spec).expect("spec serializes"));
    }
    let report = verify::run_sweep(&spec)?;
    match args.format {
        OutputFormat::Json => println!("{}", report.json_rows()),
        _ => {
            for s in &report.strategies {
                println!(
                    "{:<16} checked {:>12} numerators, {} mismatches",
                    s.strategy.name(),
                    s.numerators_checked,
                    s.mismatch_count
                );
                for m in s.first_mismatches.iter().take(5) {
                    println!(
                        "  {} d={} n={}: expected {}, got {}",
                        m.operation, m.d, m.n, m.expected, m.actual
                    );
                }
            }
            println!(
                "{} ({:.2}s)",
                if report.pass() { "PASS" } else { "FAIL" },
                report.elapsed_ns as f64 / 1e9
            );
        }
    }
    Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_bench_strategies(
    list: Option<&str>,
    default: &[BenchStrategy],
) -> Result<Vec<BenchStrategy>, UsageError> {
    let Some(list) = list else {
        return Ok(default.to_vec());
    };
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s {
            "lkk" => Ok(BenchStrategy::Lkk),
            "gmw" => Ok(BenchStrategy::Gmw),
            "gm" => Ok(BenchStrategy::Gm),
            "hardware" => Ok(BenchStrategy::Hardware),
            other => Err(UsageError(format!("unknown strategy: {other}"))),
        })
        .collect()
}

fn run_cells<F>(
    strategies: &[BenchStrategy],
    parallel: bool,
    run: F,
) -> Result<Vec<BenchReport>, UsageError>
where
    F: Fn(BenchStrategy) -> fastrem_core::error::Result<BenchReport> + Sync + Send,
{
    if parallel {
        let run = &run;
        let results: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = strategies
                .iter()
                .map(|&s| scope.spawn(move || run(s)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("cell panicked")).collect()
        });
        results.into_iter().collect::<Result<_, _>>().map_err(UsageError::from)
    } else {
        strategies.iter().map(|&s| run(s).map_err(UsageError::from)).collect()
    }
}

fn emit_bench(reports: &[BenchReport], format: OutputFormat) -> Result<ExitCode, UsageError> {
    match format {
        OutputFormat::Json => println!("{}", bench::emit_report(reports, ReportFormat::Json)?),
        OutputFormat::Csv => print!("{}", bench::emit_report(reports, ReportFormat::Csv)?),
        OutputFormat::Human => {
            println!("{}", CSV_HEADER.replace(',', "  "));
            for r in reports {
                println!(
                    "{}  {}  {}  {}  {}  {:.3}  {}",
                    r.benchmark,
                    r.strategy.name(),
                    r.divisor.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                    r.iterations,
                    r.elapsed_ns,
                    r.ns_per_op,
                    r.checksum
                );
            }
        }
    }
    if bench::checksums_agree(reports) {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: checksums disagree across strategies");
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench_lcg(args: &LcgArgs, verbose: bool) -> Result<ExitCode, UsageError> {
    let cfg = LcgConfig {
        divisor: parse_int(&args.d)?,
        signed: args.signed,
        multiplier: args.multiplier,
        iterations: args.iters,
        warmup_iterations: args.warmup,
        repeats: args.repeats,
    };
    let default: &[BenchStrategy] = if args.signed {
        &[BenchStrategy::Lkk, BenchStrategy::Hardware]
    } else {
        &[BenchStrategy::Lkk, BenchStrategy::Gmw, BenchStrategy::Hardware]
    };
    let strategies = parse_bench_strategies(args.strategy.as_deref(), default)?;
    if verbose {
        eprintln!(
            "bench lcg: d={} signed={} a={} iters={} warmup={} repeats={} parallel={}",
            cfg.divisor, cfg.signed, cfg.multiplier, cfg.iterations, cfg.warmup_iterations,
            cfg.repeats, args.parallel_cells
        );
    }
    let reports = run_cells(&strategies, args.parallel_cells, |s| bench::lcg_bench(&cfg, s))?;
    emit_bench(&reports, args.format)
}

fn cmd_bench_primes(args: &PrimesArgs, verbose: bool) -> Result<ExitCode, UsageError> {
    let default = [BenchStrategy::Lkk, BenchStrategy::Gm, BenchStrategy::Hardware];
    let strategies = parse_bench_strategies(args.strategy.as_deref(), &default)?;
    if verbose {
        eprintln!(
            "bench primes: limit={} parallel={}",
            args.limit, args.parallel_cells
        );
    }
    let limit = args.limit;
    let reports = run_cells(&strategies, args.parallel_cells, |s| {
        bench::prime_count_bench(limit, s)
    })?;
    emit_bench(&reports, args.format)
}
