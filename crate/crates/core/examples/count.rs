//! Count b-colorings with exactly k colors and report the fraction of all assignments.
//!
//! cargo run --release --example count -- "prod(complete:3,complete:3)" 3

use bchroma::{solver, GraphSpec, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let spec: GraphSpec = args.next().unwrap_or_else(|| "prod(complete:3,complete:3)".into()).parse()?;
    let k: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(3);
    let g = spec.build()?;
    let r = solver::count_b_colorings(&g, k, &SearchConfig::from_env())?;
    println!("B({spec}, {k}) = {}", r.count);
    println!("out of {} assignments, {} ({})", r.total_assignments, r.percent(3), r.percent(1));
    Ok(())
}
