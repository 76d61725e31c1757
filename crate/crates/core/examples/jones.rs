//! Kauffman bracket and Jones polynomial, with the state-sum oracle as a check.

use knotwork::catalog::load_builtin_catalog;
use knotwork::jones::{jones_polynomial, jones_polynomial_naive, kauffman_bracket};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = load_builtin_catalog()?;
    for name in ["trefoil", "left-trefoil", "figure-eight", "5_1"] {
        let d = &catalog.lookup(name)?.pd;
        let v = jones_polynomial(d)?;
        // 2^n states is cheap at this size.
        assert_eq!(v, jones_polynomial_naive(d)?);
        println!("{name:>13}  <D> = {}", kauffman_bracket(d).to_text("A"));
        println!("{:>13}  V   = {}", "", v.to_text("t"));
    }

    // Conway and Kinoshita-Terasaka are mutants, so their Jones polynomials agree.
    let conway = jones_polynomial(&catalog.lookup("conway")?.pd)?;
    let kt = jones_polynomial(&catalog.lookup("kt")?.pd)?;
    println!("conway == kt: {}", conway == kt);
    Ok(())
}
