//! Finite abelian group machinery: canonical invariant factors via CRT
//! regrouping, primary parts with their embeddings, and deterministic
//! subgroup enumeration at oracle scale.
//!
//! ```bash
//! cargo run --example subgroups
//! ```

use concordia::algebra::{subgroups_of_order, FinAbGroup};
use concordia::DEFAULT_ORACLE_BOUND;

fn main() -> concordia::Result<()> {
    // The homology of the cabled example's cover: Z/25 + Z/23 + Z/25 + Z/23.
    let g = FinAbGroup::new(&[25, 23, 25, 23])?;
    println!("{g}");
    println!("  invariant factors: {:?}", g.invariants());
    println!("  generating rank:   {}", g.generating_rank());

    let (g5, embed) = g.primary_part(5)?;
    println!("  5-primary part:    {g5}");
    let x = g5.element(&[5, 0])?;
    println!("  embed {x} -> {} (ambient coordinates)", embed.embed(&x));

    let h = FinAbGroup::new(&[9, 9])?;
    let subs: Vec<_> = subgroups_of_order(&h, 9, DEFAULT_ORACLE_BOUND)?.collect();
    println!("\n{h} has {} subgroups of order 9:", subs.len());
    for s in &subs {
        println!(
            "  generated by {:?}",
            s.generators().iter().map(|e| e.to_string()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
