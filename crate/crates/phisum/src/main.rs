use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phisum::run::{Algorithm, OutputFormat, RunRequest};
use phisum::selftest::selftest;
use phisum_core::mertens::{mertens_table, LargeMertensMap};
use phisum_core::sieve::mobius_upto;
use phisum_core::{isqrt, WideInt, MAX_N};

/// Totient-summatory function Φ(n) = φ(1) + … + φ(n).
#[derive(Debug, Parser)]
#[command(
    name = "phisum",
    version,
    args_conflicts_with_subcommands = true,
    subcommand_negates_reqs = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Argument n (decimal, or 1eK / 10^K), at most 10^19.
    #[arg(required = true, value_parser = parse_n)]
    n: Option<u64>,
    /// Algorithm; `auto` uses the oracle below 10^5 and space-saving above.
    #[arg(long = "alg", value_enum, default_value_t = Algorithm::Auto)]
    algorithm: Algorithm,
    /// Tuning coefficient for the split a ≈ c·(n / ln ln n)^{2/3}; `p/q` or decimal.
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    c: f64,
    /// Explicit split point a (overrides --c).
    #[arg(long = "a")]
    a: Option<u64>,
    /// Emit a single JSON object.
    #[arg(long)]
    json: bool,
    /// Expected value; exit status 2 if the result differs.
    #[arg(long)]
    verify: Option<WideInt>,
    /// Report sieve progress on stderr (at most once per second).
    #[arg(long)]
    progress: bool,
    /// Count Mertens contribution events per phase.
    #[arg(long)]
    instrument: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Differential test: oracle vs mertens-first vs space-saving.
    Selftest {
        /// Exhaustive range 1..=limit (at most 10^6).
        #[arg(long, default_value_t = 20_000)]
        limit: u64,
        /// Number of seeded random n in [10^5, 10^9].
        #[arg(long, default_value_t = 0)]
        random: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mertens function M(n), n ≤ 10^13.
    Mertens {
        #[arg(value_parser = parse_n)]
        n: u64,
    },
}

fn parse_n(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let exponent = s.strip_prefix("1e").or_else(|| s.strip_prefix("10^"));
    let n = match exponent {
        Some(e) => {
            let e: u32 = e
                .parse()
                .map_err(|_| format!("invalid exponent in {s:?}"))?;
            10u64
                .checked_pow(e)
                .ok_or_else(|| format!("{s} exceeds 10^19"))?
        }
        None => s
            .parse::<u64>()
            .map_err(|_| format!("{s:?} is not a decimal integer at most 10^19"))?,
    };
    if n == 0 {
        return Err("n must be at least 1".into());
    }
    if n > MAX_N {
        return Err(format!("{s} exceeds 10^19"));
    }
    Ok(n)
}

fn parse_rational(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {s:?}"))?;
            p / q
        }
        None => s
            .trim()
            .parse()
            .map_err(|_| format!("{s:?} is not a number"))?,
    };
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(format!("{s} is not a positive number"))
    }
}

fn mertens(n: u64) -> Result<i64, String> {
    const LIMIT: u64 = 10_000_000_000_000;
    if n > LIMIT {
        return Err(format!("mertens supports n <= {LIMIT}"));
    }
    let root = isqrt(n);
    let alpha = ((n as f64).powf(2.0 / 3.0) as u64).clamp(root.max(1), (1 << 25).max(root));
    let small = mertens_table(alpha);
    let map = LargeMertensMap::build(n, alpha, &small, &mobius_upto(root));
    Ok(map.get(1))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!(
                "error: {}",
                msg.lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ")
            );
            return ExitCode::from(1);
        }
    };

    match cli.command {
        Some(Command::Selftest {
            limit,
            random,
            seed,
        }) => match selftest(limit, random, seed) {
            Ok(out) => {
                print!("{}", out.report);
                if out.passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(2)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Some(Command::Mertens { n }) => match mertens(n) {
            Ok(m) => {
                println!("M({n}) = {m}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        None => {
            let args = cli.run;
            let req = RunRequest {
                n: args.n.expect("n is required"),
                algorithm: args.algorithm,
                c: args.c,
                a_override: args.a,
                output: if args.json {
                    OutputFormat::Json
                } else {
                    OutputFormat::Text
                },
                verify: args.verify,
                progress: args.progress,
                instrument: args.instrument,
            };
            match phisum::run(&req) {
                Ok(report) => {
                    match req.output {
                        OutputFormat::Json => println!("{}", report.to_json()),
                        OutputFormat::Text => print!("{}", report.to_text()),
                    }
                    if report.verified == Some(false) {
                        eprintln!(
                            "error: verification failed: expected {}, got {}",
                            req.verify.unwrap_or_default(),
                            report.phi
                        );
                        ExitCode::from(2)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
