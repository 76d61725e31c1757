//! Wirtinger presentation, Alexander polynomial, determinant and colorings.
//!
//! Run with `cargo run --example alexander -- [knot]`.

use knotwork::alexander::{
    alexander_polynomial, count_s3_homomorphisms, fox_colorings_count, genus_lower_bound, knot_determinant,
    wirtinger_presentation,
};
use knotwork::catalog::load_builtin_catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "trefoil".into());
    let catalog = load_builtin_catalog()?;
    let d = &catalog.lookup(&name)?.pd;

    let w = wirtinger_presentation(d)?;
    println!("{name}: {} crossings, {} Wirtinger generators", d.crossing_count(), w.generators);
    println!("H_1 free rank: {}", w.first_homology_rank());
    println!("Alexander: {}", alexander_polynomial(d)?.to_text("t"));
    println!("determinant: {}", knot_determinant(d)?);
    println!("genus >= {}", genus_lower_bound(d)?);
    println!("Fox 3-colorings: {}", fox_colorings_count(d, 3)?);
    println!("homomorphisms to S_3: {}", count_s3_homomorphisms(&w)?);
    Ok(())
}
