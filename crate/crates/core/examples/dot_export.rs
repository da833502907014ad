//! Write a b-coloring certificate as Graphviz DOT, b-vertices drawn bold.
//!
//! cargo run --example dot_export -- 3 3 > s3s3.dot && dot -Tsvg s3s3.dot > s3s3.svg

use bchroma::coloring::to_dot;
use bchroma::constructions::color_star_product;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, m) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(3));
    let c = color_star_product(n, m)?;
    print!("{}", to_dot(&c.graph, &c.certificate.coloring, &c.certificate.b_vertices));
    Ok(())
}
