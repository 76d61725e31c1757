//! Transferring a sliceness obstruction between knots with diffeomorphic
//! 0-traces.
//!
//! The bundled certificate pairs the Conway knot with Piccirillo's knot K'.
//! K' is not bundled; supply a PD record named `kprime` through the file
//! named by `KNOTWORK_EXTRA_KNOTS` to run the transfer.

use knotwork::catalog::load_builtin_catalog;
use knotwork::slice::{slice_report, trace_transfer_verdict, transfer_summary, TraceSiblingCertificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/conway_kprime.cert");
    let cert: TraceSiblingCertificate = std::fs::read_to_string(path)?.parse()?;
    println!("certificate: {} <-> {} ({})", cert.a, cert.b, cert.provenance);

    let catalog = load_builtin_catalog()?.with_env_extras()?;
    let conway = catalog.lookup(&cert.a)?;
    let own = slice_report(&conway.name, &conway.pd, true)?;
    println!("{}", transfer_summary(&own));

    let Ok(sibling) = catalog.lookup(&cert.b) else {
        println!("no diagram for `{}`; set KNOTWORK_EXTRA_KNOTS to a PD file containing it", cert.b);
        return Ok(());
    };
    // Reports carry canonical record names, so the certificate must too.
    let cert = catalog.resolve_certificate(&cert)?;
    let other = slice_report(&sibling.name, &sibling.pd, true)?;
    let (a, b) = trace_transfer_verdict(&cert, &own, &other)?;
    println!("{}", transfer_summary(&a));
    println!("{}", transfer_summary(&b));
    Ok(())
}
