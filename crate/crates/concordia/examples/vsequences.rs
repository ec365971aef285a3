//! V-sequences and the surgery formula: thin-knot staircases from the
//! signature, and the resulting d-invariants of odd surgeries.
//!
//! ```bash
//! cargo run --example vsequences
//! ```

use concordia::dcalc::{d_lens, SurgeryPiece, VSequence};
use concordia::Sign;

fn main() -> concordia::Result<()> {
    // The doubled companion of the cabled summands is thin of signature -16
    // (the nu+ class of T(2,17)).
    let v = VSequence::thin(-16)?;
    println!("V(thin, sigma = -16) = {:?}", v.values());
    for i in [0u64, 5, 8, 12] {
        println!("  V_{i} = {}", v.get(i));
    }

    // Lens-space d-invariants of 25-surgery on the unknot.
    println!("\nd(S3_25(U), s_i):");
    for i in [0u64, 5, 10, 15, 20] {
        println!("  i = {i:2}: {}", d_lens(25, i)?);
    }

    // The Ni-Wu formula shifts those by the V-sequence of the companion.
    let piece = SurgeryPiece::new(Sign::Plus, 25, v)?;
    println!("\nd and d-bar of +S3_25 over the doubled companion:");
    for i in [0u64, 5, 10, 15, 20] {
        println!("  i = {i:2}: d = {:5}, d-bar = {}", piece.d(i)?, piece.dbar(i)?);
    }
    Ok(())
}
