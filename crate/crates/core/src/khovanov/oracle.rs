//! Direct computations on the full cube, used to cross-check the scanning
//! engine on small diagrams.

use std::collections::{BTreeMap, HashMap};

use super::complex::FilteredChainComplex;
use super::cube::cube_of_resolutions;
use super::field::Field;
use super::ranks::BigradedRanks;
use crate::diagram::PlanarDiagram;
use crate::error::KhovanovError;

/// Incremental row echelon basis; the leading coordinate of a vector is its
/// smallest key.
struct Echelon<F: Field> {
    pivots: HashMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> Echelon<F> {
    fn new() -> Self {
        Self { pivots: HashMap::new() }
    }

    /// Inserts a vector; returns its leading coordinate if it was independent.
    fn insert(&mut self, mut v: BTreeMap<usize, F>) -> Option<usize> {
        while let Some((&lead, c)) = v.iter().next() {
            let Some(p) = self.pivots.get(&lead) else {
                let inv = c.inv();
                for x in v.values_mut() {
                    *x = x.mul(&inv);
                }
                self.pivots.insert(lead, v);
                return Some(lead);
            };
            let f = c.clone();
            for (k, pc) in p {
                let slot = v.entry(*k).or_insert_with(F::zero);
                *slot = slot.sub(&f.mul(pc));
                if slot.is_zero() {
                    v.remove(k);
                }
            }
        }
        None
    }
}

fn rank<F: Field>(vectors: impl IntoIterator<Item = BTreeMap<usize, F>>) -> usize {
    let mut e = Echelon::new();
    vectors.into_iter().filter(|v| e.insert(v.clone()).is_some()).count()
}

/// Image of every generator of degree `i` (optionally only its equal-`q` part).
fn columns<F: Field>(c: &FilteredChainComplex<F>, i: i64, q: Option<i64>) -> Vec<BTreeMap<usize, F>> {
    c.generators()
        .filter(|(_, g)| g.i == i && q.is_none_or(|q| g.q == q))
        .map(|(x, g)| {
            c.targets(x)
                .filter(|(y, _)| q.is_none() || c.grading(*y).q == g.q)
                .map(|(y, v)| (y, v.clone()))
                .collect()
        })
        .collect()
}

/// Khovanov homology from the unreduced full cube, by rank computations.
pub fn khovanov_homology_full_cube<F: Field>(d: &PlanarDiagram, size_limit: u64) -> Result<BigradedRanks, KhovanovError> {
    let c = cube_of_resolutions(d, size_limit)?.complex::<F>()?;
    c.check_d_squared()?;
    let mut dims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (_, g) in c.generators() {
        *dims.entry((g.i, g.q)).or_default() += 1;
    }
    let mut out = BigradedRanks::default();
    for (&(i, q), &dim) in &dims {
        let r_out = rank(columns(&c, i, Some(q)));
        let r_in = rank(columns(&c, i - 1, Some(q)));
        out.add(i, q, dim - r_out - r_in);
    }
    Ok(out)
}

/// Total rank of Lee homology (`t = 1`) from the full cube.
pub fn lee_rank_full_cube<F: Field>(d: &PlanarDiagram, size_limit: u64) -> Result<usize, KhovanovError> {
    let c = cube_of_resolutions(d, size_limit)?.complex::<F>()?;
    c.check_d_squared()?;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for (_, g) in c.generators() {
        *dims.entry(g.i).or_default() += 1;
    }
    Ok(dims.iter().map(|(&i, &dim)| dim - rank(columns(&c, i, None)) - rank(columns(&c, i - 1, None))).sum())
}

/// `(s_min, s_max)`: filtration levels of Lee homology in degree 0, computed
/// from the `q`-filtered full cube at `t = 1` without any simplification.
pub fn lee_filtration_levels_full_cube<F: Field>(
    d: &PlanarDiagram,
    size_limit: u64,
) -> Result<(i64, i64), KhovanovError> {
    let c = cube_of_resolutions(d, size_limit)?.complex::<F>()?;
    c.check_d_squared()?;
    filtration_levels(&c)
}

pub(crate) fn filtration_levels<F: Field>(c: &FilteredChainComplex<F>) -> Result<(i64, i64), KhovanovError> {
    // Cycles in F^j: scan degree-0 generators from high q to low; a generator
    // whose image is dependent on earlier images adds a cycle at its level.
    let mut deg0: Vec<(usize, i64)> = c.generators().filter(|(_, g)| g.i == 0).map(|(x, g)| (x, g.q)).collect();
    deg0.sort_by_key(|&(x, q)| (-q, x));
    let mut images = Echelon::new();
    let mut cycle_levels = Vec::new();
    for &(x, q) in &deg0 {
        let v: BTreeMap<usize, F> = c.targets(x).map(|(y, v)| (y, v.clone())).collect();
        if v.is_empty() || images.insert(v).is_none() {
            cycle_levels.push(q);
        }
    }
    // Boundaries in F^j: echelon form of the image of degree -1 with the
    // lowest-q coordinate leading.
    let mut position: HashMap<usize, usize> = HashMap::new();
    let mut by_q = deg0.clone();
    by_q.sort_by_key(|&(x, q)| (q, x));
    for (k, &(x, _)) in by_q.iter().enumerate() {
        position.insert(x, k);
    }
    let mut boundaries = Echelon::new();
    let mut boundary_levels = Vec::new();
    for (x, g) in c.generators() {
        if g.i != -1 {
            continue;
        }
        let v: BTreeMap<usize, F> = c.targets(x).map(|(y, v)| (position[&y], v.clone())).collect();
        if let Some(lead) = boundaries.insert(v) {
            boundary_levels.push(by_q[lead].1);
        }
    }
    let image_dim = |j: i64| {
        cycle_levels.iter().filter(|&&q| q >= j).count() as i64 - boundary_levels.iter().filter(|&&q| q >= j).count() as i64
    };
    let total = image_dim(i64::MIN);
    if total != 2 {
        return Err(KhovanovError::LeeRank { rank: total.max(0) as usize });
    }
    let levels: Vec<i64> = deg0.iter().map(|&(_, q)| q).collect();
    let s_max = levels.iter().copied().filter(|&j| image_dim(j) >= 1).max().expect("nonzero homology");
    let s_min = levels.iter().copied().filter(|&j| image_dim(j) >= 2).max().expect("rank two");
    Ok((s_min, s_max))
}

#[cfg(test)]
mod tests {
    use super::super::field::{F2, Q};
    use super::*;

    fn trefoil() -> PlanarDiagram {
        PlanarDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn trefoil_full_cube() {
        let r = khovanov_homology_full_cube::<Q>(&trefoil(), 1 << 20).unwrap();
        let expected: BigradedRanks = [((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)].into_iter().collect();
        assert_eq!(r, expected);
        let r2 = khovanov_homology_full_cube::<F2>(&trefoil(), 1 << 20).unwrap();
        assert_eq!(r2.total(), 6);
        assert_eq!(lee_rank_full_cube::<Q>(&trefoil(), 1 << 20).unwrap(), 2);
        assert_eq!(lee_filtration_levels_full_cube::<Q>(&trefoil(), 1 << 20).unwrap(), (1, 3));
        assert_eq!(lee_filtration_levels_full_cube::<Q>(&trefoil().mirror(), 1 << 20).unwrap(), (-3, -1));
    }

    #[test]
    fn kink_full_cube() {
        let k = PlanarDiagram::parse_pd("X[1,1,2,2]").unwrap();
        let r = khovanov_homology_full_cube::<Q>(&k, 1 << 20).unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![((0, -1), 1), ((0, 1), 1)]);
        assert_eq!(lee_filtration_levels_full_cube::<Q>(&k, 1 << 20).unwrap(), (-1, 1));
    }
}
