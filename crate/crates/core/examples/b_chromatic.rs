//! Exact b-chromatic number of a graph expression, with the witness and per-k outcomes.
//!
//! cargo run --release --example b_chromatic -- "total(prod(star:4,star:3))"

use bchroma::{solver, GraphSpec, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "prod(star:3,star:3)".into());
    let spec: GraphSpec = text.parse()?;
    let g = spec.build()?;
    let report = solver::b_chromatic_number(&g, &SearchConfig::from_env())?;

    println!("{spec}: phi = {} (m-degree {})", report.phi, report.m_degree);
    for (k, outcome) in &report.per_k_outcomes {
        println!("  k={k:<3} {}", outcome.as_str());
    }
    for (color, &v) in report.witness.b_vertices.iter().enumerate() {
        println!("  color {} dominated by {}", color + 1, g.label(v));
    }
    println!("{} nodes in {:.3}s", report.nodes_explored, report.elapsed.as_secs_f64());
    Ok(())
}
