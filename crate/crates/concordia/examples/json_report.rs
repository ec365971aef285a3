//! Builds the machine-readable report document programmatically and shows
//! the lossless JSON round trip.
//!
//! ```bash
//! cargo run --example json_report
//! ```

use concordia::cover::parse;
use concordia::obstruct::obstruction_report;
use concordia::report::ReportDocument;

fn main() -> concordia::Result<()> {
    let expr = parse("Kstar")?;
    let report = obstruction_report(&expr, Some(5))?;
    let doc = ReportDocument::from(&report);

    let json = doc.to_json();
    println!("{json}");

    let back = ReportDocument::from_json(&json).expect("valid JSON");
    assert_eq!(back, doc);
    eprintln!("round trip: lossless ({} bytes)", json.len());
    Ok(())
}
