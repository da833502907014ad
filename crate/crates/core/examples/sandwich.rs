//! Clique number, chromatic number, b-chromatic number and m-degree side by side.
//!
//! cargo run --release --example sandwich

use bchroma::{solver, GraphSpec, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SearchConfig::from_env();
    let specs = ["path:6", "cycle:5", "prod(star:3,star:2)", "line(prod(star:3,star:2))", "pow(prod(star:2,star:2),2)"];
    println!("{:<30} {:>5} {:>5} {:>5} {:>5}", "graph", "omega", "chi", "phi", "m");
    for text in specs {
        let g = text.parse::<GraphSpec>()?.build()?;
        let omega = solver::clique_number(&g, &cfg)?;
        let chi = solver::chromatic_number(&g, &cfg)?.chi;
        let phi = solver::b_chromatic_number(&g, &cfg)?.phi;
        println!("{text:<30} {omega:>5} {chi:>5} {phi:>5} {:>5}", solver::m_degree(&g));
    }
    Ok(())
}
