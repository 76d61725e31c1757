//! Catalog lookup, PD ingestion and JSON export.

use knotwork::catalog::{export_report, load_builtin_catalog, parse_pd_records, validate_report};
use knotwork::khovanov::{FieldChoice, KhovanovOptions};
use knotwork::slice::slice_report;

const EXTRA: &str = "\
# name: PD code
my-trefoil: X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = load_builtin_catalog()?;
    println!("{} bundled knots", catalog.records().len());
    for alias in ["trefoil", "figure-eight", "conway", "kinoshita-terasaka"] {
        let r = catalog.lookup(alias)?;
        println!("{alias:>20} -> {} ({} crossings)", r.name, r.pd.crossing_count());
    }

    let extra = parse_pd_records(EXTRA)?;
    println!("ingested: {}", extra.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", "));

    let records: Vec<_> = ["trefoil", "conway"].iter().map(|n| catalog.lookup(n).cloned()).collect::<Result<_, _>>()?;
    let reports = records.iter().map(|r| slice_report(&r.name, &r.pd, true)).collect::<Result<Vec<_>, _>>()?;
    let json = export_report(&records, &reports, Some(FieldChoice::Q), &KhovanovOptions::default())?;
    let doc = validate_report(&json)?;
    println!("exported schema v{} with {} knots, {} bytes", doc.schema_version, doc.knots.len(), json.len());
    Ok(())
}
