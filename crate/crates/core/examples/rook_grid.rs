//! Rook grid colorings of K_n x K_3 and their embedding into the cube of a star product.
//!
//! cargo run --example rook_grid -- 5

use bchroma::constructions::{power3_from_grid, rook_grid_coloring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(5);
    let grid = rook_grid_coloring(n)?;
    println!("K{n} x K3, {} colors, circled cells are b-vertices:", grid.palette());
    print!("{}", grid.to_text());

    let lifted = power3_from_grid(n, 3, &grid)?;
    println!("cube of S{n} x S3 colored with {} colors", lifted.k());
    Ok(())
}
