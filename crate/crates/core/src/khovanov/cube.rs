//! The full cube of resolutions and the complex built directly on it.

use serde::{Deserialize, Serialize};

use super::complex::{FilteredChainComplex, Grading};
use super::field::Field;
use crate::conventions::SMOOTHING;
use crate::diagram::PlanarDiagram;
use crate::error::KhovanovError;

/// Circles of one complete resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeVertex {
    /// Bit `c` is the smoothing at crossing `c`.
    pub state: u64,
    pub circles: usize,
    /// Circle containing each arc label (index `label - 1`).
    pub arc_circle: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Merge { from: [usize; 2], into: usize },
    Split { from: usize, into: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeEdge {
    pub from: u64,
    pub crossing: usize,
    pub sign: i8,
    pub kind: EdgeKind,
    /// Circles untouched by the edge, as `(index at source, index at target)`.
    pub carried: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCube {
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub vertices: Vec<CubeVertex>,
    pub edges: Vec<CubeEdge>,
}

fn resolve(d: &PlanarDiagram, state: u64) -> CubeVertex {
    let n = d.num_arcs();
    if n == 0 {
        return CubeVertex { state, circles: d.component_count(), arc_circle: Vec::new() };
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (c, cr) in d.crossings().iter().enumerate() {
        for (p, q) in SMOOTHING[(state >> c & 1) as usize] {
            let (a, b) = (find(&mut parent, cr.arcs[p] as usize - 1), find(&mut parent, cr.arcs[q] as usize - 1));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut arc_circle = vec![0; n];
    let mut circles = 0;
    for a in 0..n {
        let r = find(&mut parent, a);
        if index[r] == usize::MAX {
            index[r] = circles;
            circles += 1;
        }
        arc_circle[a] = index[r];
    }
    CubeVertex { state, circles, arc_circle }
}

/// Total number of Khovanov generators `sum_v 2^circles(v)`.
pub(crate) fn cube_size(vertices: &[CubeVertex]) -> u128 {
    vertices.iter().map(|v| 1u128 << v.circles).sum()
}

/// Resolves all `2^n` vertices and classifies all `n 2^(n-1)` edges.
pub fn cube_of_resolutions(d: &PlanarDiagram, size_limit: u64) -> Result<ResolutionCube, KhovanovError> {
    d.require_knot().map_err(KhovanovError::Diagram)?;
    let n = d.crossing_count();
    if n >= 40 {
        return Err(KhovanovError::SizeLimit { size: u64::MAX, limit: size_limit });
    }
    let vertices: Vec<CubeVertex> = (0..1u64 << n).map(|s| resolve(d, s)).collect();
    let size = cube_size(&vertices);
    if size > size_limit as u128 {
        return Err(KhovanovError::SizeLimit { size: size.min(u64::MAX as u128) as u64, limit: size_limit });
    }
    let mut edges = Vec::with_capacity(n << n.saturating_sub(1));
    for v in &vertices {
        for c in 0..n {
            if v.state >> c & 1 == 1 {
                continue;
            }
            let w = &vertices[(v.state | 1 << c) as usize];
            let arcs = d.crossings()[c].arcs.map(|a| a as usize - 1);
            let ones_before = (v.state & ((1u64 << c) - 1)).count_ones();
            let sign = if ones_before.is_multiple_of(2) { 1 } else { -1 };
            let (va, vb) = (v.arc_circle[arcs[0]], v.arc_circle[arcs[1]]);
            let kind = if va != vb {
                EdgeKind::Merge { from: [va, vb], into: w.arc_circle[arcs[0]] }
            } else {
                EdgeKind::Split { from: va, into: [w.arc_circle[arcs[0]], w.arc_circle[arcs[2]]] }
            };
            let touched: Vec<usize> = match kind {
                EdgeKind::Merge { from, .. } => from.to_vec(),
                EdgeKind::Split { from, .. } => vec![from],
            };
            let mut carried = Vec::new();
            for circle in 0..v.circles {
                if touched.contains(&circle) {
                    continue;
                }
                let arc = v.arc_circle.iter().position(|&x| x == circle).expect("circle has an arc");
                carried.push((circle, w.arc_circle[arc]));
            }
            edges.push(CubeEdge { from: v.state, crossing: c, sign, kind, carried });
        }
    }
    let (n_plus, n_minus) = d.signed_counts();
    Ok(ResolutionCube { crossings: n, n_plus, n_minus, vertices, edges })
}

impl ResolutionCube {
    /// Khovanov complex over `F[t]` with `x^2 = t` on each circle: labels are
    /// bitmasks with bit set meaning `x`.
    pub fn complex<F: Field>(&self) -> Result<FilteredChainComplex<F>, KhovanovError> {
        let mut c = FilteredChainComplex::new();
        let mut offset = Vec::with_capacity(self.vertices.len());
        let (np, nm) = (self.n_plus as i64, self.n_minus as i64);
        for v in &self.vertices {
            offset.push(c.len());
            let h = v.state.count_ones() as i64;
            for mask in 0..1u64 << v.circles {
                let xs = mask.count_ones() as i64;
                let q = v.circles as i64 - 2 * xs + h + np - 2 * nm;
                c.add_generator(Grading { i: h - nm, q });
            }
        }
        for e in &self.edges {
            let v = &self.vertices[e.from as usize];
            let to = (e.from | 1 << e.crossing) as usize;
            let sign = F::from_i64(e.sign as i64);
            for mask in 0..1u64 << v.circles {
                let mut base = 0u64;
                for &(a, b) in &e.carried {
                    base |= (mask >> a & 1) << b;
                }
                let bit = |i: usize| mask >> i & 1;
                let images: Vec<u64> = match e.kind {
                    EdgeKind::Merge { from: [a, b], into } => match bit(a) + bit(b) {
                        0 => vec![base],
                        1 => vec![base | 1 << into],
                        _ => vec![base], // x·x = t
                    },
                    EdgeKind::Split { from, into: [a, b] } => {
                        if bit(from) == 0 {
                            vec![base | 1 << a, base | 1 << b]
                        } else {
                            vec![base | 1 << a | 1 << b, base]
                        }
                    }
                };
                for img in images {
                    c.add_entry(offset[e.from as usize] + mask as usize, offset[to] + img as usize, sign.clone())?;
                }
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::Q;
    use super::*;
    use crate::jones::bracket_states;

    fn pd(s: &str) -> PlanarDiagram {
        PlanarDiagram::parse_pd(s).unwrap()
    }

    #[test]
    fn kink_cube() {
        let cube = cube_of_resolutions(&pd("X[1,1,2,2]"), 1 << 24).unwrap();
        let mut counts: Vec<usize> = cube.vertices.iter().map(|v| v.circles).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 2]);
        assert_eq!(cube.edges.len(), 1);
    }

    #[test]
    fn trefoil_cube_matches_states() {
        let t = pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
        let cube = cube_of_resolutions(&t, 1 << 24).unwrap();
        assert_eq!(cube.vertices.len(), 8);
        assert_eq!(cube.vertices[0].circles, 2);
        assert_eq!(cube.vertices[7].circles, 3);
        for (v, st) in cube.vertices.iter().zip(bracket_states(&t)) {
            assert_eq!(v.circles, st.circles);
        }
        for e in &cube.edges {
            let (a, b) = (&cube.vertices[e.from as usize], &cube.vertices[(e.from | 1 << e.crossing) as usize]);
            assert_eq!(a.circles.abs_diff(b.circles), 1);
        }
        let c = cube.complex::<Q>().unwrap();
        c.check_d_squared().unwrap();
    }

    #[test]
    fn size_limit_enforced() {
        let t = pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
        assert!(matches!(cube_of_resolutions(&t, 10), Err(KhovanovError::SizeLimit { .. })));
    }
}
