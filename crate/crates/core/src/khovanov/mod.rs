//! Khovanov homology, Lee homology, and the Rasmussen s-invariant.
//!
//! The main engine ([`khovanov_homology`], [`s_invariant`]) builds the
//! complex over `F[t]` crossing by crossing with immediate simplification.
//! The `*_full_cube` functions work on the unreduced cube and serve as
//! independent checks on small diagrams.

mod cobordism;
mod complex;
mod cube;
mod field;
mod oracle;
mod ranks;
mod scan;

use serde::{Deserialize, Serialize};

pub use complex::{simplify_complex, FilteredChainComplex, Grading, Summand};
pub use cube::{cube_of_resolutions, CubeEdge, CubeVertex, EdgeKind, ResolutionCube};
pub use field::{Field, FieldChoice, F2, Q};
pub use oracle::{khovanov_homology_full_cube, lee_filtration_levels_full_cube, lee_rank_full_cube};
pub use ranks::BigradedRanks;
pub use scan::ScanStats;

use crate::diagram::PlanarDiagram;
use crate::error::KhovanovError;

/// Default cap on the number of generators held at once.
pub const DEFAULT_SIZE_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KhovanovOptions {
    pub size_limit: u64,
    /// Verify `d∘d = 0` after every crossing (and on the final complex).
    pub check_d_squared: bool,
}

impl Default for KhovanovOptions {
    fn default() -> Self {
        Self { size_limit: DEFAULT_SIZE_LIMIT, check_d_squared: true }
    }
}

/// Output of [`s_invariant`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SInvariantResult {
    pub s: i64,
    pub smin: i64,
    pub smax: i64,
    pub field: FieldChoice,
    /// Largest intermediate complex.
    pub peak_generators: usize,
    /// Generators left after simplification (the total Khovanov rank).
    pub final_generators: usize,
}

/// The simplified complex over `F[t]`; no entry connects generators of equal `q`.
pub fn reduced_complex<F: Field>(
    d: &PlanarDiagram,
    opts: &KhovanovOptions,
) -> Result<(FilteredChainComplex<F>, ScanStats), KhovanovError> {
    let s = scan::scan::<F>(d, opts.size_limit, opts.check_d_squared)?;
    Ok((s.complex, s.stats))
}

pub fn khovanov_homology(d: &PlanarDiagram, field: FieldChoice) -> Result<BigradedRanks, KhovanovError> {
    khovanov_homology_with(d, field, &KhovanovOptions::default())
}

pub fn khovanov_homology_with(
    d: &PlanarDiagram,
    field: FieldChoice,
    opts: &KhovanovOptions,
) -> Result<BigradedRanks, KhovanovError> {
    match field {
        FieldChoice::F2 => Ok(reduced_complex::<F2>(d, opts)?.0.generator_ranks()),
        FieldChoice::Q => Ok(reduced_complex::<Q>(d, opts)?.0.generator_ranks()),
    }
}

fn free_gradings<F: Field>(d: &PlanarDiagram, opts: &KhovanovOptions) -> Result<(Vec<Grading>, ScanStats), KhovanovError> {
    let (c, stats) = reduced_complex::<F>(d, opts)?;
    let free = c
        .decompose()
        .into_iter()
        .filter_map(|s| match s {
            Summand::Free(g) => Some(g),
            Summand::Torsion { .. } => None,
        })
        .collect();
    Ok((free, stats))
}

/// Total rank of Lee homology over `Q` (the rank of the free part of
/// homology over `Q[t]`). In characteristic 2 the relation `x^2 = t` does
/// not give Lee's theory, so only `Q` is offered.
pub fn lee_rank(d: &PlanarDiagram, opts: &KhovanovOptions) -> Result<usize, KhovanovError> {
    Ok(free_gradings::<Q>(d, opts)?.0.len())
}

/// Rasmussen's s-invariant over `Q`.
pub fn s_invariant(d: &PlanarDiagram) -> Result<SInvariantResult, KhovanovError> {
    s_invariant_with(d, &KhovanovOptions::default())
}

/// The two free summands of homology over `Q[t]` sit in degree 0 at
/// `q = s - 1` and `q = s + 1`.
pub fn s_invariant_with(d: &PlanarDiagram, opts: &KhovanovOptions) -> Result<SInvariantResult, KhovanovError> {
    let field = FieldChoice::Q;
    let (mut free, stats) = free_gradings::<Q>(d, opts)?;
    if free.len() != 2 {
        return Err(KhovanovError::LeeRank { rank: free.len() });
    }
    free.sort();
    let (lo, hi) = (free[0], free[1]);
    if lo.i != 0 || hi.i != 0 || hi.q != lo.q + 2 {
        return Err(KhovanovError::Internal(format!("free generators at {lo:?} and {hi:?}")));
    }
    Ok(SInvariantResult {
        s: lo.q + 1,
        smin: lo.q,
        smax: hi.q,
        field,
        peak_generators: stats.peak_generators,
        final_generators: stats.final_generators,
    })
}

/// s-invariant from the unreduced full cube (small diagrams only).
pub fn s_invariant_full_cube(d: &PlanarDiagram, size_limit: u64) -> Result<SInvariantResult, KhovanovError> {
    let (smin, smax) = lee_filtration_levels_full_cube::<Q>(d, size_limit)?;
    let cube = cube_of_resolutions(d, size_limit)?;
    let size = cube.vertices.iter().map(|v| 1usize << v.circles).sum();
    Ok(SInvariantResult { s: smin + 1, smin, smax, field: FieldChoice::Q, peak_generators: size, final_generators: size })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> PlanarDiagram {
        PlanarDiagram::parse_pd(s).unwrap()
    }

    fn trefoil() -> PlanarDiagram {
        pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    }

    #[test]
    fn unknot() {
        let r = khovanov_homology(&PlanarDiagram::unknot(), FieldChoice::Q).unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![((0, -1), 1), ((0, 1), 1)]);
        assert_eq!(s_invariant(&PlanarDiagram::unknot()).unwrap().s, 0);
    }

    #[test]
    fn kink_reduces_to_two_generators() {
        let k = pd("X[1,1,2,2]");
        let (c, _) = reduced_complex::<Q>(&k, &KhovanovOptions::default()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(s_invariant(&k).unwrap().s, 0);
        assert_eq!(s_invariant(&k.mirror()).unwrap().s, 0);
    }

    #[test]
    fn trefoil_homology() {
        let t = trefoil();
        let expected: BigradedRanks = [((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)].into_iter().collect();
        assert_eq!(khovanov_homology(&t, FieldChoice::Q).unwrap(), expected);
        assert_eq!(
            khovanov_homology(&t, FieldChoice::F2).unwrap(),
            khovanov_homology_full_cube::<F2>(&t, 1 << 20).unwrap()
        );
        let s = s_invariant(&t).unwrap();
        assert_eq!((s.s, s.smin, s.smax), (2, 1, 3));
        assert_eq!(s_invariant(&t.mirror()).unwrap().s, -2);
    }

    #[test]
    fn figure_eight() {
        let f = pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]");
        for field in [FieldChoice::Q, FieldChoice::F2] {
            let r = khovanov_homology(&f, field).unwrap();
            let oracle = match field {
                FieldChoice::Q => khovanov_homology_full_cube::<Q>(&f, 1 << 20).unwrap(),
                FieldChoice::F2 => khovanov_homology_full_cube::<F2>(&f, 1 << 20).unwrap(),
            };
            assert_eq!(r, oracle);
        }
        assert_eq!(s_invariant(&f).unwrap().s, 0);
        assert_eq!(lee_rank(&f, &KhovanovOptions::default()).unwrap(), 2);
    }

    #[test]
    fn size_limit_respected() {
        let opts = KhovanovOptions { size_limit: 3, ..Default::default() };
        assert!(matches!(khovanov_homology_with(&trefoil(), FieldChoice::Q, &opts), Err(KhovanovError::SizeLimit { .. })));
    }
}
