use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use concordia::cover::parse;
use concordia::error::{Error, DEFAULT_ORACLE_BOUND};
use concordia::obstruct::{dbar_table, obstruction_report};
use concordia::oracle::{run_suite, Suite};
use concordia::report::{format_rational, ReportDocument};

#[derive(Parser)]
#[command(
    name = "concordia",
    version,
    about = "Knot concordance obstructions from 2-fold branched covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full obstruction report for a knot expression
    Report {
        /// Knot expression, e.g. "C(2,25;D) # -C(2,23;D) # -T(2,25) # T(2,23)"
        expr: String,
        /// Prime to use for the concordance bound (default: scan all primes
        /// meeting the hypothesis and report the strongest bound)
        #[arg(long)]
        prime: Option<u64>,
        /// Also write the report as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate d-bar over the order-p elements of a primary part
    Dbar {
        expr: String,
        /// Prime selecting the primary part (default: smallest prime
        /// dividing |H_1|)
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Run a randomized verification suite: lemma-key | metabolizers | selfconc
    Oracle {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Oracle cap on group orders (overrides CONCORDIA_ORACLE_BOUND)
        #[arg(long)]
        max_order: Option<u64>,
    },
}

fn oracle_bound(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("CONCORDIA_ORACLE_BOUND").ok().and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_ORACLE_BOUND)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Report { expr, prime, json } => {
            let ast = parse(&expr)?;
            let report = obstruction_report(&ast, prime)?;
            let doc = ReportDocument::from(&report);

            println!("knot: {}", doc.knot);
            println!("cover:");
            for piece in &doc.cover {
                let sign = if piece.sign >= 0 { '+' } else { '-' };
                println!("  {}S3_{}  V = {:?}", sign, piece.n, piece.vseq);
            }
            println!("H_1 invariant factors: {:?}", doc.homology_invariants);
            println!("g_Z lower bound: {}", doc.gz_lower);
            match (doc.gzc.p, doc.gzc.null_rank) {
                (Some(p), Some(r)) => println!(
                    "g_Z^c lower bound: {} (p = {p}, d-bar-null rank {r})",
                    doc.gzc.bound
                ),
                _ => println!(
                    "g_Z^c lower bound: {} (no prime meets the (Z/p^2)^(2n) hypothesis)",
                    doc.gzc.bound
                ),
            }
            for ann in &doc.annotations {
                println!("annotation: {} [{}]", ann.fact, ann.source);
            }
            if !doc.dbar_table.is_empty() {
                if doc.dbar_table.len() <= 32 {
                    println!("d-bar table:");
                    for e in &doc.dbar_table {
                        println!("  {:?} -> {}", e.element, e.value);
                    }
                } else {
                    let nonzero =
                        doc.dbar_table.iter().filter(|e| e.value != "0/1").count();
                    println!(
                        "d-bar table: {} order-p elements, {} with nonvanishing d-bar \
                         (full table in --json output)",
                        doc.dbar_table.len(),
                        nonzero
                    );
                }
            }

            if let Some(path) = json {
                std::fs::write(&path, doc.to_json()).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dbar { expr, prime } => {
            let ast = parse(&expr)?;
            let cover = concordia::cover::branched_double_cover(&ast)?;
            let group = cover.group();
            let p = match prime {
                Some(p) => Some(p),
                None => group.prime_divisors().first().copied(),
            };
            match p {
                None => {
                    println!("H_1 is trivial; the d-bar table is empty");
                    Ok(ExitCode::SUCCESS)
                }
                Some(p) => {
                    let table = dbar_table(&cover, p)?;
                    println!("d-bar over order-{p} elements of H_1(cover)_{p}:");
                    for (z, v) in &table {
                        println!("  {z} -> {}", format_rational(v));
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Oracle { suite, seed, max_order } => {
            let suite = Suite::from_name(&suite).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown suite '{suite}'; expected lemma-key, metabolizers, or selfconc"
                ))
            })?;
            let bound = oracle_bound(max_order);
            let outcome = run_suite(suite, seed, bound, suite.default_cases())?;
            println!("{}", outcome.summary());
            for failure in &outcome.failures {
                println!("  {failure}");
            }
            Ok(if outcome.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
