//! Randomized invariance checks over the bundled catalog.

mod common;

use knotwork::alexander::alexander_polynomial;
use knotwork::diagram::TangleRegion;
use knotwork::jones::jones_polynomial;
use knotwork::khovanov::{khovanov_homology, s_invariant, FieldChoice};
use knotwork::PlanarDiagram;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Catalog diagrams with at most `max` crossings.
fn small_knots(max: usize) -> Vec<(String, PlanarDiagram)> {
    common::catalog()
        .records()
        .iter()
        .filter(|r| r.pd.crossing_count() <= max)
        .map(|r| (r.name.clone(), r.pd.clone()))
        .collect()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn reidemeister_walks_preserve_invariants(idx in 0usize..64, seed: u64, len in 1usize..8) {
        let knots = small_knots(7);
        let (name, d) = &knots[idx % knots.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = common::random_walk(d, &mut rng, len, d.crossing_count() + 3);
        prop_assert!(alexander_polynomial(d).unwrap().equal_up_to_units(&alexander_polynomial(&e).unwrap()), "{name}");
        prop_assert_eq!(jones_polynomial(d).unwrap(), jones_polynomial(&e).unwrap(), "{}", name);
        prop_assert_eq!(
            khovanov_homology(d, FieldChoice::F2).unwrap(),
            khovanov_homology(&e, FieldChoice::F2).unwrap(),
            "{}", name
        );
        prop_assert_eq!(s_invariant(d).unwrap().s, s_invariant(&e).unwrap().s, "{}", name);
    }

    #[test]
    fn s_is_even_and_odd_under_mirror(idx in 0usize..128) {
        let knots = small_knots(9);
        let (name, d) = &knots[idx % knots.len()];
        let s = s_invariant(d).unwrap().s;
        prop_assert_eq!(s.rem_euclid(2), 0, "{}", name);
        prop_assert_eq!(s_invariant(&d.mirror()).unwrap().s, -s, "{}", name);
    }

    #[test]
    fn crossing_change_and_mirror_are_involutions(idx in 0usize..128, k in 0usize..16) {
        let knots = small_knots(9);
        let (_, d) = &knots[idx % knots.len()];
        prop_assert_eq!(&d.mirror().mirror(), d);
        if d.crossing_count() > 0 {
            let k = k % d.crossing_count();
            let back = d.crossing_change(k).unwrap().crossing_change(k).unwrap();
            prop_assert_eq!(&back, d);
            prop_assert_eq!(d.crossing_change(k).unwrap().writhe(), d.writhe() - 2 * d.crossings()[k].sign as i64);
        }
    }

    #[test]
    fn mutation_preserves_alexander_and_jones(idx in 0usize..128, pick in 0usize..1024) {
        let knots = small_knots(9);
        let (name, d) = &knots[idx % knots.len()];
        let regions = TangleRegion::enumerate(d, 4);
        prop_assume!(!regions.is_empty());
        let region = &regions[pick % regions.len()];
        let m = d.mutate(region).unwrap();
        prop_assert!(m.is_knot());
        prop_assert!(alexander_polynomial(d).unwrap().equal_up_to_units(&alexander_polynomial(&m).unwrap()), "{name}");
        prop_assert_eq!(jones_polynomial(d).unwrap(), jones_polynomial(&m).unwrap(), "{}", name);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn results_do_not_depend_on_thread_count(idx in 0usize..128) {
        let knots = small_knots(9);
        let (name, d) = &knots[idx % knots.len()];
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                (
                    khovanov_homology(d, FieldChoice::Q).unwrap(),
                    khovanov_homology(d, FieldChoice::F2).unwrap(),
                    s_invariant(d).unwrap().s,
                )
            })
        };
        prop_assert_eq!(run(1), run(4), "{}", name);
    }
}

#[test]
fn conway_and_kt_agree_across_thread_counts() {
    let cat = common::catalog();
    for name in ["conway", "kt"] {
        let d = &cat.lookup(name).unwrap().pd;
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| (khovanov_homology(d, FieldChoice::Q).unwrap(), s_invariant(d).unwrap().s));
        let b = four.install(|| (khovanov_homology(d, FieldChoice::Q).unwrap(), s_invariant(d).unwrap().s));
        assert_eq!(a, b, "{name}");
    }
}
