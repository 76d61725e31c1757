//! Rasmussen's s-invariant from Lee's deformation.

use knotwork::catalog::load_builtin_catalog;
use knotwork::khovanov::s_invariant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = load_builtin_catalog()?;
    println!("{:>14} {:>4} {:>10} {:>10}", "knot", "s", "peak gens", "final");
    for name in ["unknot", "trefoil", "left-trefoil", "figure-eight", "5_1", "conway", "kt"] {
        let r = s_invariant(&catalog.lookup(name)?.pd)?;
        println!("{name:>14} {:>4} {:>10} {:>10}", r.s, r.peak_generators, r.final_generators);
    }

    // The s-invariant bounds the slice genus: |s| / 2 <= g_4.
    let mut mismatches = 0;
    for record in catalog.records() {
        let s = s_invariant(&record.pd)?.s;
        if record.reference.as_ref().and_then(|r| r.s).is_some_and(|want| want != s) {
            mismatches += 1;
        }
    }
    println!("catalog entries disagreeing with reference s: {mismatches}");
    Ok(())
}
