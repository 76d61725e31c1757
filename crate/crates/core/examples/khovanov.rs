//! Khovanov homology over F2 and Q, printed as bigraded tables.
//!
//! Run with `cargo run --release --example khovanov -- [knot]`.

use knotwork::catalog::load_builtin_catalog;
use knotwork::jones::unnormalized_jones;
use knotwork::khovanov::{khovanov_homology, khovanov_homology_full_cube, FieldChoice, Q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "conway".into());
    let catalog = load_builtin_catalog()?;
    let d = &catalog.lookup(&name)?.pd;

    for field in [FieldChoice::Q, FieldChoice::F2] {
        let kh = khovanov_homology(d, field)?;
        println!("Kh({name}; {field}), total rank {}", kh.total());
        print!("{kh}");
        // Graded Euler characteristic is the unnormalized Jones polynomial.
        assert_eq!(kh.euler_characteristic(), unnormalized_jones(d)?);
    }

    if d.crossing_count() <= 8 {
        let cube = khovanov_homology_full_cube::<Q>(d, 1 << 20)?;
        println!("full cube agrees: {}", cube == khovanov_homology(d, FieldChoice::Q)?);
    }
    Ok(())
}
