//! Build star products and apply the line, total and power operators.
//!
//! cargo run --example operators -- 4 3

use bchroma::graph::star;
use bchroma::operators::{cartesian_product, graph_power, line_graph, total_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, m) = (args.first().copied().unwrap_or(4), args.get(1).copied().unwrap_or(3));

    let product = cartesian_product(&star(n), &star(m))?;
    let g = &product.graph;
    println!("S{n} x S{m}: {} vertices, {} edges, diameter {}", g.order(), g.size(), g.diameter()?);

    let line = line_graph(g)?;
    println!("line graph:  {} vertices, {} edges", line.order(), line.size());
    let total = total_graph(g)?;
    println!("total graph: {} vertices, {} edges", total.order(), total.size());
    for p in 1..=4 {
        let pow = graph_power(g, p)?;
        println!("power {p}:     {} edges, max degree {}", pow.size(), pow.max_degree());
    }
    Ok(())
}
