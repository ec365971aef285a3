//! Exhaustive verification of the metabolizer-intersection lemma on a
//! desk-scale instance: for the form diag(1/4,-1/4,1/4,-1/4) on (Z/4)⁴
//! against diag(1/2,1/2) on (Z/2)², every metabolizer of the difference form
//! must meet the first summand in a subgroup containing Z/2.
//!
//! ```bash
//! cargo run --example lemma_oracle
//! ```

use concordia::algebra::FinAbGroup;
use concordia::linkform::{LinkingForm, QmodZ};
use concordia::obstruct::{verify_lemma_key, LemmaVerdict};
use concordia::DEFAULT_ORACLE_BOUND;

fn diag(orders: &[u64], entries: &[(i64, i64)]) -> concordia::Result<LinkingForm> {
    let group = FinAbGroup::new(orders)?;
    let k = group.rank();
    let mut gram = vec![vec![QmodZ::ZERO; k]; k];
    for (i, &(num, den)) in entries.iter().enumerate() {
        gram[i][i] = QmodZ::new(num, den)?;
    }
    LinkingForm::new(group, gram)
}

fn main() -> concordia::Result<()> {
    let f1 = diag(&[4, 4, 4, 4], &[(1, 4), (-1, 4), (1, 4), (-1, 4)])?;
    let f2 = diag(&[2, 2], &[(1, 2), (1, 2)])?;

    println!("first form:  diag(1/4,-1/4,1/4,-1/4) on {}", f1.group());
    println!("second form: diag(1/2,1/2) on {}", f2.group());
    println!("combined order {}, metabolizer order 32", 4u32.pow(4) * 4);

    match verify_lemma_key(&f1, &f2, 2, DEFAULT_ORACLE_BOUND)? {
        LemmaVerdict::Pass { metabolizers_checked } => {
            println!(
                "verified: all {metabolizers_checked} metabolizers intersect the first \
                 summand in a subgroup containing Z/2"
            );
        }
        LemmaVerdict::Fail { counterexample } => {
            println!(
                "THEOREM VIOLATED (this is a bug): metabolizer {:?}",
                counterexample.index_key()
            );
        }
    }
    Ok(())
}
