//! Metabolizer enumeration for torsion linking forms: every subgroup M with
//! M = M^⊥ of the hyperbolic-looking form diag(1/9, -1/9) on (Z/9)², and of
//! the cyclic form -1/25 on Z/25, re-verified against their orthogonal
//! complements.
//!
//! ```bash
//! cargo run --example metabolizers
//! ```

use concordia::algebra::FinAbGroup;
use concordia::linkform::{surgery_form, LinkingForm, QmodZ};
use concordia::{Sign, DEFAULT_ORACLE_BOUND};

fn show(name: &str, form: &LinkingForm) -> concordia::Result<()> {
    println!("{name} on {}:", form.group());
    let mets = form.metabolizers(DEFAULT_ORACLE_BOUND)?;
    if mets.is_empty() {
        println!("  no metabolizers");
    }
    for m in &mets {
        let perp = form.orthogonal_complement(m, DEFAULT_ORACLE_BOUND)?;
        println!(
            "  order {:2} subgroup generated by {:?}  (M = M-perp: {})",
            m.order(),
            m.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            perp.index_key() == m.index_key(),
        );
    }
    Ok(())
}

fn main() -> concordia::Result<()> {
    let q = |n: i64, d: i64| QmodZ::new(n, d);
    let g = FinAbGroup::new(&[9, 9])?;
    let hyperbolic = LinkingForm::new(
        g,
        vec![vec![q(1, 9)?, QmodZ::ZERO], vec![QmodZ::ZERO, q(-1, 9)?]],
    )?;
    show("diag(1/9, -1/9)", &hyperbolic)?;

    // The diagonal and anti-diagonal both self-annihilate, and so does the
    // 3-torsion subgroup: three metabolizers in total.

    println!();
    show("lambda(1,1) = -1/25", &surgery_form(25, Sign::Plus)?)?;

    println!();
    show("lambda(1,1) = -1/3", &surgery_form(3, Sign::Plus)?)?;
    println!("  (order 3 is not a perfect square, so none can exist)");
    Ok(())
}
