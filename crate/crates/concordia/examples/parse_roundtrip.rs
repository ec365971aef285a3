//! The expression language: parsing, canonical printing, and positioned
//! error reporting.
//!
//! ```bash
//! cargo run --example parse_roundtrip
//! ```

use concordia::cover::parse;

fn main() {
    let good = [
        "C(2,25;D) # -C(2,23;D) # -T(2,25) # T(2,23)",
        "Kstar # Kstar",
        "C(2,9;WhD^2)",
        "-(T(2,3) # T(2,5))",
        "C(2,7;V[2,1])",
        "thin(-16)",
    ];
    println!("round trips:");
    for text in good {
        let ast = parse(text).expect("corpus parses");
        assert_eq!(ast.to_string(), text);
        println!("  {text}  ->  {ast:?}");
    }

    let bad = ["T(2,4)", "C(3,5;U)", "T(2,3) # # U", "V[4,2]", "WhD^0"];
    println!("\ndiagnostics:");
    for text in bad {
        match parse(text) {
            Ok(_) => println!("  {text}: unexpectedly parsed"),
            Err(e) => println!("  {text}: {e}"),
        }
    }
}
