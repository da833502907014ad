//! Cross-check closed forms, the solver and the constructions over a small range.
//!
//! cargo run --release --example verify -- total-star-product

use bchroma::verify::{run_suite, Suite, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let suite: Suite = std::env::args().nth(1).unwrap_or_else(|| "star-product".into()).parse()?;
    let opts = VerifyOptions { n: 2..=4, m: 2..=3, ..VerifyOptions::default() };
    let report = run_suite(suite, &opts);
    print!("{}", report.to_text());
    Ok(())
}
