//! Diagram-level operations: mirror, reversal, crossing changes, connected
//! sum, and mutation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Arc, Crossing, Dart, PlanarDiagram};
use crate::error::DiagramError;

impl PlanarDiagram {
    /// Switches every crossing.
    pub fn mirror(&self) -> PlanarDiagram {
        PlanarDiagram {
            crossings: self.crossings.iter().map(Crossing::switched).collect(),
            components: self.components,
        }
    }

    /// Reverses the orientation of every component.
    pub fn reverse(&self) -> PlanarDiagram {
        let crossings = self.crossings.iter().map(Crossing::reversed).collect();
        PlanarDiagram::from_oriented(crossings).expect("reversal preserves validity")
    }

    /// Swaps over and under strands at crossing `index` (0-based).
    pub fn crossing_change(&self, index: usize) -> Result<PlanarDiagram, DiagramError> {
        if index >= self.crossings.len() {
            return Err(DiagramError::CrossingIndex { index, len: self.crossings.len() });
        }
        let mut crossings = self.crossings.clone();
        crossings[index] = crossings[index].switched();
        Ok(PlanarDiagram { crossings, components: self.components })
    }

    /// Connected sum, splicing `self` at arc `a1` and `other` at arc `a2`.
    pub fn connected_sum(&self, other: &PlanarDiagram, a1: Arc, a2: Arc) -> Result<PlanarDiagram, DiagramError> {
        self.require_knot()?;
        other.require_knot()?;
        if self.is_unknot_diagram() {
            return Ok(other.clone());
        }
        if other.is_unknot_diagram() {
            return Ok(self.clone());
        }
        for (d, a) in [(self, a1), (other, a2)] {
            if a == 0 || a as usize > d.num_arcs() {
                return Err(DiagramError::UnknownArc(a));
            }
        }
        let offset = self.num_arcs() as Arc;
        let head1 = self.arc_ends()[(a1 - 1) as usize].1;
        let head2 = other.arc_ends()[(a2 - 1) as usize].1;
        let mut crossings = self.crossings.clone();
        let n1 = crossings.len();
        crossings.extend(other.crossings.iter().map(|c| Crossing { arcs: c.arcs.map(|x| x + offset), sign: c.sign }));
        // a1 now runs into the second summand and a2 back into the first.
        crossings[head1.0].arcs[head1.1] = a2 + offset;
        crossings[n1 + head2.0].arcs[head2.1] = a1;
        PlanarDiagram::from_oriented(crossings)
    }

    /// Mutation: rotates the tangle by 180° in the projection plane and glues
    /// it back.
    pub fn mutate(&self, region: &TangleRegion) -> Result<PlanarDiagram, DiagramError> {
        Ok(self.mutate_with_region(region)?.0)
    }

    /// Like [`PlanarDiagram::mutate`], also returning the same region expressed in
    /// the mutant's labels (so mutating twice returns the original diagram).
    pub fn mutate_with_region(&self, region: &TangleRegion) -> Result<(PlanarDiagram, TangleRegion), DiagramError> {
        let computed = TangleRegion::from_crossings(self, region.crossings.iter().copied())?;
        if !same_circular_pairing(&computed.boundary_arcs, &region.boundary_arcs) {
            return Err(DiagramError::Region(format!(
                "boundary arcs {:?} are not in circular order (expected {:?} up to rotation/reflection)",
                region.boundary_arcs, computed.boundary_arcs
            )));
        }
        let inside: &BTreeSet<usize> = &region.crossings;
        let e = computed.boundary_arcs;
        let partner = self.partners();
        // Inside and outside dart of each boundary arc.
        let mut inner = [(0, 0); 4];
        let mut outer = [(0, 0); 4];
        for (k, &label) in e.iter().enumerate() {
            let (d1, d2) = self.darts_of(label, &partner);
            if inside.contains(&d1.0) {
                inner[k] = d1;
                outer[k] = d2;
            } else {
                inner[k] = d2;
                outer[k] = d1;
            }
        }
        let mut crossings = self.crossings.clone();
        for k in 0..4 {
            let (c, p) = inner[k];
            crossings[c].arcs[p] = e[(k + 2) % 4];
        }
        // After rotation the inner end now attached to arc e[k+2] sat at inner[k].
        let consistent = |cr: &[Crossing], inner: &[Dart; 4]| {
            (0..4).all(|k| {
                let (oc, op) = outer[(k + 2) % 4];
                let (ic, ip) = inner[k];
                cr[oc].is_incoming(op) != cr[ic].is_incoming(ip)
            })
        };
        if !consistent(&crossings, &inner) {
            for &c in inside {
                crossings[c] = crossings[c].reversed();
            }
            // Reversal moves each inner end to the opposite slot.
            for slot in inner.iter_mut() {
                slot.1 = (slot.1 + 2) % 4;
            }
            if !consistent(&crossings, &inner) {
                return Err(DiagramError::Region("rotated tangle cannot be oriented compatibly".into()));
            }
        }
        let mutant = PlanarDiagram::from_oriented(crossings)?;
        let image = TangleRegion {
            crossings: region.crossings.clone(),
            boundary_arcs: outer.map(|(c, p)| mutant.crossings[c].arcs[p]),
        };
        Ok((mutant, image))
    }

    /// Both darts carrying `label`.
    pub(crate) fn darts_of(&self, label: Arc, partner: &[[Dart; 4]]) -> (Dart, Dart) {
        for (ci, c) in self.crossings.iter().enumerate() {
            for pos in 0..4 {
                if c.arcs[pos] == label {
                    return ((ci, pos), partner[ci][pos]);
                }
            }
        }
        panic!("label {label} not in diagram")
    }
}

fn same_circular_pairing(a: &[Arc; 4], b: &[Arc; 4]) -> bool {
    let pairs = |x: &[Arc; 4]| {
        let mut p = [[x[0].min(x[2]), x[0].max(x[2])], [x[1].min(x[3]), x[1].max(x[3])]];
        p.sort();
        p
    };
    let sa: BTreeSet<Arc> = a.iter().copied().collect();
    let sb: BTreeSet<Arc> = b.iter().copied().collect();
    sa == sb && pairs(a) == pairs(b)
}

/// A 4-ended tangle inside a diagram: a connected set of crossings cut off by
/// exactly four arcs, listed in circular order around the tangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleRegion {
    pub crossings: BTreeSet<usize>,
    pub boundary_arcs: [Arc; 4],
}

impl TangleRegion {
    /// Computes the boundary arcs (in circular order) of a crossing subset.
    pub fn from_crossings<I: IntoIterator<Item = usize>>(d: &PlanarDiagram, crossings: I) -> Result<Self, DiagramError> {
        let set: BTreeSet<usize> = crossings.into_iter().collect();
        if set.is_empty() {
            return Err(DiagramError::Region("empty crossing set".into()));
        }
        if let Some(&bad) = set.iter().find(|&&c| c >= d.crossing_count()) {
            return Err(DiagramError::CrossingIndex { index: bad, len: d.crossing_count() });
        }
        let partner = d.partners();
        let mut boundary: BTreeSet<Dart> = BTreeSet::new();
        for &c in &set {
            for pos in 0..4 {
                if !set.contains(&partner[c][pos].0) {
                    boundary.insert((c, pos));
                }
            }
        }
        if boundary.len() != 4 {
            return Err(DiagramError::Region(format!("region is cut off by {} arcs, not 4", boundary.len())));
        }
        // Connectivity through internal arcs.
        let start = *set.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for pos in 0..4 {
                let o = partner[c][pos].0;
                if set.contains(&o) && seen.insert(o) {
                    stack.push(o);
                }
            }
        }
        if seen.len() != set.len() {
            return Err(DiagramError::Region("crossing set is disconnected".into()));
        }
        // Walk the faces of the tangle with each boundary arc treated as a
        // dangling edge; the outer face meets the four ends in circular order.
        let mut visited: BTreeSet<Dart> = BTreeSet::new();
        let mut order = None;
        for &c in &set {
            for pos in 0..4 {
                if visited.contains(&(c, pos)) {
                    continue;
                }
                let mut ends = Vec::new();
                let mut cur = (c, pos);
                while visited.insert(cur) {
                    let arrive = if boundary.contains(&cur) {
                        ends.push(d.crossings[cur.0].arcs[cur.1]);
                        cur
                    } else {
                        partner[cur.0][cur.1]
                    };
                    cur = (arrive.0, (arrive.1 + 3) % 4);
                }
                if !ends.is_empty() {
                    if ends.len() != 4 || order.is_some() {
                        return Err(DiagramError::Region("boundary arcs do not bound a disk".into()));
                    }
                    order = Some([ends[0], ends[1], ends[2], ends[3]]);
                }
            }
        }
        let boundary_arcs = order.ok_or_else(|| DiagramError::Region("no outer face".into()))?;
        Ok(Self { crossings: set, boundary_arcs })
    }

    /// Every connected 4-ended proper sub-tangle with at least two crossings,
    /// up to `max_size` crossings, in lexicographic order of crossing sets.
    pub fn enumerate(d: &PlanarDiagram, max_size: usize) -> Vec<TangleRegion> {
        let n = d.crossing_count();
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let partner = d.partners();
        let mut frontier: Vec<BTreeSet<usize>> = (0..n).map(|c| BTreeSet::from([c])).collect();
        for _ in 1..max_size.min(n.saturating_sub(1)) {
            let mut next = Vec::new();
            for s in &frontier {
                for &c in s {
                    for pos in 0..4 {
                        let o = partner[c][pos].0;
                        if !s.contains(&o) {
                            let mut t = s.clone();
                            t.insert(o);
                            if seen.insert(t.iter().copied().collect::<Vec<_>>()) {
                                next.push(t);
                            }
                        }
                    }
                }
            }
            for s in &next {
                if let Ok(r) = TangleRegion::from_crossings(d, s.iter().copied()) {
                    out.push(r);
                }
            }
            frontier = next;
        }
        out.sort_by(|a, b| a.crossings.cmp(&b.crossings));
        out
    }
}

/// Relabeling map helper used by the move implementations.
pub(crate) fn resolve(map: &BTreeMap<Arc, Arc>, mut x: Arc) -> Arc {
    let mut guard = 0;
    while let Some(&y) = map.get(&x) {
        if y == x || guard > map.len() {
            break;
        }
        x = y;
        guard += 1;
    }
    x
}
