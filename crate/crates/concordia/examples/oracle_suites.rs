//! Runs the three randomized verification suites with a fixed seed: theorem
//! instances for the metabolizer-intersection lemma, re-verification of
//! enumerated metabolizers, and self-concordance sanity.
//!
//! ```bash
//! cargo run --example oracle_suites
//! ```

use concordia::oracle::{run_suite, Suite};
use concordia::DEFAULT_ORACLE_BOUND;

fn main() -> concordia::Result<()> {
    for suite in [Suite::LemmaKey, Suite::Metabolizers, Suite::SelfConc] {
        let outcome = run_suite(suite, 7, DEFAULT_ORACLE_BOUND, suite.default_cases())?;
        println!("{}", outcome.summary());
        for failure in &outcome.failures {
            println!("  {failure}");
        }
    }
    Ok(())
}
