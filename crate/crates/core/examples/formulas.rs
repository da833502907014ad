//! Closed-form b-chromatic numbers and m-degrees, with their preconditions.
//!
//! cargo run --example formulas

use bchroma::formulas::{
    m_degree_formula, phi_line_star_product, phi_star_product, phi_star_product_power, phi_total_star_product,
    MDegreeFamily,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{}", phi_star_product(4, 3));
    println!("{}", phi_line_star_product(4, 3)?);
    println!("{}", phi_total_star_product(5, 4)?);
    println!("{}", phi_total_star_product(8, 3)?);
    for k in 1..=4 {
        println!("{}", phi_star_product_power(4, 3, k)?);
    }
    println!("{}", phi_star_product(4, 1));

    for family in ["star_product", "line_star_product", "total_star_product", "power2", "power3"] {
        let f: MDegreeFamily = family.parse()?;
        println!("m-degree {family:<20} (5,3) = {}", m_degree_formula(f, 5, 3)?);
    }
    Ok(())
}
