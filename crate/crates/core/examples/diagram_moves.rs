//! Planar diagram operations: Reidemeister moves, mirror, crossing changes,
//! connected sums.

use knotwork::alexander::alexander_polynomial;
use knotwork::catalog::{load_builtin_catalog, CONWAY_UNKNOTTING_CROSSING};
use knotwork::jones::jones_polynomial;
use knotwork::PlanarDiagram;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = load_builtin_catalog()?;
    let trefoil = catalog.lookup("trefoil")?.pd.clone();
    println!("trefoil: {}  writhe {}", trefoil.to_pd_string(), trefoil.writhe());

    // Grow the diagram with whatever moves are available, then shrink it back.
    let mut d = trefoil.clone();
    for _ in 0..3 {
        let Some(mv) = d.reidemeister_sites().into_iter().find(|m| m.crossing_delta() > 0) else { break };
        d = d.apply_reidemeister(&mv)?;
    }
    println!("after 3 moves: {} crossings", d.crossing_count());
    let back = d.greedy_simplify();
    println!("greedy simplify: {} crossings", back.crossing_count());
    assert_eq!(jones_polynomial(&d)?, jones_polynomial(&trefoil)?);

    let mirror = trefoil.mirror();
    println!("mirror writhe {}, Jones {}", mirror.writhe(), jones_polynomial(&mirror)?.to_text("t"));

    // Changing one crossing of the Conway knot unknots it.
    let conway = &catalog.lookup("conway")?.pd;
    let changed = conway.crossing_change(CONWAY_UNKNOTTING_CROSSING)?;
    println!("conway, crossing {CONWAY_UNKNOTTING_CROSSING} changed: V = {}", jones_polynomial(&changed)?.to_text("t"));

    // Granny knot: trefoil # trefoil.
    let granny: PlanarDiagram = trefoil.connected_sum(&trefoil, 1, 1)?;
    println!("granny: {} crossings, Alexander {}", granny.crossing_count(), alexander_polynomial(&granny)?.to_text("t"));
    Ok(())
}
