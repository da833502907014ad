//! Run every explicit construction for one (n, m) and check its certificate.
//!
//! cargo run --example constructions -- 5 3

use bchroma::coloring::is_valid_certificate;
use bchroma::constructions::{
    color_line_star_product, color_power_star_product, color_star_product, color_total_star_product, Construction,
    ConstructionError,
};

fn report(name: &str, c: Result<Construction, ConstructionError>) {
    match c {
        Ok(c) => println!(
            "{name:<22} k={:<3} vertices={:<4} valid={}",
            c.k(),
            c.graph.order(),
            is_valid_certificate(&c.graph, &c.certificate)
        ),
        Err(e) => println!("{name:<22} {e}"),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, m) = (args.first().copied().unwrap_or(5), args.get(1).copied().unwrap_or(3));
    report("star product", color_star_product(n, m));
    report("line of star product", color_line_star_product(n, m));
    report("total of star product", color_total_star_product(n, m));
    for p in 2..=4 {
        report(&format!("power {p}"), color_power_star_product(n, m, p));
    }
    Ok(())
}
