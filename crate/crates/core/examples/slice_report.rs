//! Slice obstructions for a few knots.

use knotwork::catalog::load_builtin_catalog;
use knotwork::slice::slice_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = load_builtin_catalog()?;
    for name in ["trefoil", "figure-eight", "6_1", "conway", "kt"] {
        let record = catalog.lookup(name)?;
        let report = slice_report(&record.name, &record.pd, true)?;
        println!("{report}");
    }
    Ok(())
}
