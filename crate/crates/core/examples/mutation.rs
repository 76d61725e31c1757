//! Conway mutation: the Kinoshita-Terasaka knot mutates into the Conway knot.

use knotwork::alexander::alexander_polynomial;
use knotwork::catalog::{kt_mutation_region, load_builtin_catalog};
use knotwork::jones::jones_polynomial;
use knotwork::khovanov::{khovanov_homology, FieldChoice};
use knotwork::TangleRegion;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = load_builtin_catalog()?;
    let kt = &catalog.lookup("kt")?.pd;
    let conway = &catalog.lookup("conway")?.pd;

    let region = kt_mutation_region(kt)?;
    let mutant = kt.mutate(&region)?;
    println!("mutant PD: {}", mutant.to_pd_string());
    println!("Alexander: {}", alexander_polynomial(&mutant)?.to_text("t"));
    println!("Jones agrees with Conway: {}", jones_polynomial(&mutant)? == jones_polynomial(conway)?);
    println!(
        "Khovanov (Q) agrees with Conway: {}",
        khovanov_homology(&mutant, FieldChoice::Q)? == khovanov_homology(conway, FieldChoice::Q)?
    );

    let regions = TangleRegion::enumerate(kt, 5);
    println!("{} candidate tangle regions with at most 5 crossings", regions.len());
    Ok(())
}
