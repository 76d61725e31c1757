#![allow(dead_code)]

use std::path::PathBuf;

use knotwork::catalog::{ingest_pd_file, load_builtin_catalog, Catalog, KnotRecord, EXTRA_KNOTS_ENV};
use knotwork::PlanarDiagram;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn catalog() -> Catalog {
    load_builtin_catalog().expect("bundled catalog validates")
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// A record named `kprime`, from the extra-knots file if that variable is
/// set, else from `data/kprime.pd` if present.
pub fn kprime() -> Option<KnotRecord> {
    let path = std::env::var_os(EXTRA_KNOTS_ENV).map(PathBuf::from).unwrap_or_else(|| data_path("kprime.pd"));
    if !path.exists() {
        return None;
    }
    ingest_pd_file(&path).expect("K' file parses").into_iter().find(|r| r.name == "kprime")
}

/// Applies `len` random Reidemeister moves, never exceeding `max_crossings`.
pub fn random_walk<R: Rng>(d: &PlanarDiagram, rng: &mut R, len: usize, max_crossings: usize) -> PlanarDiagram {
    let mut cur = d.clone();
    for _ in 0..len {
        let n = cur.crossing_count() as i64;
        let sites: Vec<_> =
            cur.reidemeister_sites().into_iter().filter(|m| n + m.crossing_delta() <= max_crossings as i64).collect();
        // Pick the move type first so that R3 and the decreasing moves are
        // not drowned out by the many R2+ sites.
        let mut kinds: Vec<_> = sites.iter().map(std::mem::discriminant).collect();
        kinds.dedup();
        kinds.sort_by_key(|k| format!("{k:?}"));
        kinds.dedup();
        let Some(kind) = kinds.choose(rng).copied() else { break };
        let of_kind: Vec<_> = sites.iter().filter(|m| std::mem::discriminant(*m) == kind).collect();
        let mv = of_kind.choose(rng).expect("nonempty");
        cur = cur.apply_reidemeister(mv).expect("listed site applies");
    }
    cur
}
