//! Reidemeister moves and greedy simplification.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ops::resolve;
use super::{Arc, Crossing, Dart, PlanarDiagram};
use crate::error::DiagramError;

/// The four ways to add a kink to an arc: which pass goes under first, and
/// on which side of the strand the loop sits. The sign of the new crossing
/// is given by [`Kink::sign`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kink {
    /// Under first, loop between slots b and c.
    UnderFirstLeft,
    /// Under first, loop between slots c and d.
    UnderFirstRight,
    /// Over first, loop between slots d and a.
    OverFirstLeft,
    /// Over first, loop between slots a and b.
    OverFirstRight,
}

impl Kink {
    pub const ALL: [Kink; 4] = [Kink::UnderFirstLeft, Kink::UnderFirstRight, Kink::OverFirstLeft, Kink::OverFirstRight];

    pub fn sign(self) -> i8 {
        match self {
            Kink::UnderFirstLeft | Kink::OverFirstLeft => 1,
            Kink::UnderFirstRight | Kink::OverFirstRight => -1,
        }
    }

    /// Crossing for a strand entering on `p`, looping through `l`, leaving on `o`.
    fn crossing(self, p: Arc, l: Arc, o: Arc) -> Crossing {
        let arcs = match self {
            Kink::UnderFirstLeft => [p, l, l, o],
            Kink::UnderFirstRight => [p, o, l, l],
            Kink::OverFirstLeft => [l, p, o, l],
            Kink::OverFirstRight => [l, l, o, p],
        };
        Crossing { arcs, sign: self.sign() }
    }
}

/// A Reidemeister move together with its site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReidemeisterMove {
    /// Add a kink on `arc` (ignored for the 0-crossing unknot).
    R1Plus { arc: Arc, kink: Kink },
    /// Remove the kink at this crossing.
    R1Minus { crossing: usize },
    /// Push `over_arc` across `under_arc` through their common face.
    R2Plus { face: usize, over_arc: Arc, under_arc: Arc },
    /// Remove the bigon between these two crossings.
    R2Minus { crossings: (usize, usize) },
    /// Slide across the triangular face with this index.
    R3 { face: usize },
}

impl ReidemeisterMove {
    /// Change in crossing count.
    pub fn crossing_delta(&self) -> i64 {
        match self {
            Self::R1Plus { .. } => 1,
            Self::R1Minus { .. } => -1,
            Self::R2Plus { .. } => 2,
            Self::R2Minus { .. } => -2,
            Self::R3 { .. } => 0,
        }
    }
}

impl PlanarDiagram {
    pub fn apply_reidemeister(&self, mv: &ReidemeisterMove) -> Result<PlanarDiagram, DiagramError> {
        match *mv {
            ReidemeisterMove::R1Plus { arc, kink } => self.r1_plus(arc, kink),
            ReidemeisterMove::R1Minus { crossing } => self.r1_minus(crossing),
            ReidemeisterMove::R2Plus { face, over_arc, under_arc } => self.r2_plus(face, over_arc, under_arc),
            ReidemeisterMove::R2Minus { crossings } => self.r2_minus(crossings.0, crossings.1),
            ReidemeisterMove::R3 { face } => self.r3(face),
        }
    }

    /// Repeatedly removes kinks and bigons until neither applies.
    pub fn greedy_simplify(&self) -> PlanarDiagram {
        let mut d = self.clone();
        'outer: loop {
            for i in 0..d.crossing_count() {
                if let Ok(next) = d.r1_minus(i) {
                    d = next;
                    continue 'outer;
                }
            }
            for (i, j) in d.r2_minus_sites() {
                if let Ok(next) = d.r2_minus(i, j) {
                    d = next;
                    continue 'outer;
                }
            }
            return d;
        }
    }

    /// Every site where some move applies (R1+ on each arc with each kink,
    /// R1-, R2+ for each ordered pair of distinct arcs on a face, R2-, R3).
    pub fn reidemeister_sites(&self) -> Vec<ReidemeisterMove> {
        let mut out = Vec::new();
        if self.is_unknot_diagram() {
            for kink in Kink::ALL {
                out.push(ReidemeisterMove::R1Plus { arc: 1, kink });
            }
            return out;
        }
        for arc in self.arcs() {
            for kink in Kink::ALL {
                out.push(ReidemeisterMove::R1Plus { arc, kink });
            }
        }
        for i in 0..self.crossing_count() {
            if self.kink_loop(i).is_some() {
                out.push(ReidemeisterMove::R1Minus { crossing: i });
            }
        }
        let faces = self.faces();
        for (fi, face) in faces.iter().enumerate() {
            let labels: Vec<Arc> = face.iter().map(|&(c, p)| self.crossings[c].arcs[p]).collect();
            let distinct: BTreeSet<Arc> = labels.iter().copied().collect();
            for &a in &distinct {
                for &b in &distinct {
                    if a != b {
                        out.push(ReidemeisterMove::R2Plus { face: fi, over_arc: a, under_arc: b });
                    }
                }
            }
            if self.r3_data(&faces, fi).is_ok() {
                out.push(ReidemeisterMove::R3 { face: fi });
            }
        }
        for (i, j) in self.r2_minus_sites() {
            out.push(ReidemeisterMove::R2Minus { crossings: (i, j) });
        }
        out
    }

    fn fresh_label(&self) -> Arc {
        self.num_arcs() as Arc + 1
    }

    fn r1_plus(&self, arc: Arc, kink: Kink) -> Result<PlanarDiagram, DiagramError> {
        if self.is_unknot_diagram() {
            let c = kink.crossing(1, 2, 1);
            return PlanarDiagram::from_oriented(vec![c]);
        }
        if arc == 0 || arc as usize > self.num_arcs() {
            return Err(DiagramError::UnknownArc(arc));
        }
        let head = self.arc_ends()[(arc - 1) as usize].1;
        let (l, o) = (self.fresh_label(), self.fresh_label() + 1);
        let mut crossings = self.crossings.clone();
        crossings[head.0].arcs[head.1] = o;
        crossings.push(kink.crossing(arc, l, o));
        PlanarDiagram::from_oriented(crossings)
    }

    /// `(loop label, entering label, leaving label)` if crossing `i` is a kink.
    fn kink_loop(&self, i: usize) -> Option<(Arc, Arc, Arc)> {
        let c = self.crossings.get(i)?;
        for p in 0..4 {
            let q = (p + 1) % 4;
            if c.arcs[p] == c.arcs[q] {
                let (r, s) = ((p + 2) % 4, (p + 3) % 4);
                let (inc, out) = if c.is_incoming(r) { (r, s) } else { (s, r) };
                return Some((c.arcs[p], c.arcs[inc], c.arcs[out]));
            }
        }
        None
    }

    fn r1_minus(&self, i: usize) -> Result<PlanarDiagram, DiagramError> {
        if i >= self.crossing_count() {
            return Err(DiagramError::CrossingIndex { index: i, len: self.crossing_count() });
        }
        let (_, p, o) = self.kink_loop(i).ok_or_else(|| DiagramError::MoveSite(format!("crossing {i} is not a kink")))?;
        if p == o {
            if self.crossing_count() == 1 {
                return Ok(PlanarDiagram::unknot());
            }
            return Err(DiagramError::MoveSite("removing this kink would leave a free loop".into()));
        }
        let mut crossings = self.crossings.clone();
        crossings.remove(i);
        for c in &mut crossings {
            for x in &mut c.arcs {
                if *x == o {
                    *x = p;
                }
            }
        }
        PlanarDiagram::from_oriented(crossings)
    }

    fn r2_plus(&self, face: usize, over_arc: Arc, under_arc: Arc) -> Result<PlanarDiagram, DiagramError> {
        if over_arc == under_arc {
            return Err(DiagramError::MoveSite("R2 needs two distinct arcs".into()));
        }
        let faces = self.faces();
        let f = faces.get(face).ok_or_else(|| DiagramError::MoveSite(format!("no face {face}")))?;
        let ends = self.arc_ends();
        // Face on the left of the arc iff the face walk runs along the arc.
        let face_left = |arc: Arc| -> Option<bool> {
            f.iter()
                .find(|&&(c, p)| self.crossings[c].arcs[p] == arc)
                .map(|&dart| ends[(arc - 1) as usize].0 == dart)
        };
        let over_left = face_left(over_arc).ok_or_else(|| DiagramError::MoveSite(format!("arc {over_arc} not on face {face}")))?;
        let under_left =
            face_left(under_arc).ok_or_else(|| DiagramError::MoveSite(format!("arc {under_arc} not on face {face}")))?;

        // Local picture: the under arc runs along the x-axis with the face to
        // the north; the over arc runs above it with the face to the south and
        // dips down across it at x = -1 (west crossing) and x = +1 (east).
        let under_east = under_left;
        let over_east = !over_left;
        let base = self.fresh_label();
        let (m_over, o_over, m_under, o_under) = (base, base + 1, base + 2, base + 3);
        // Compass slots counterclockwise: E, N, W, S.
        const E: usize = 0;
        const N: usize = 1;
        const W: usize = 2;
        const S: usize = 3;
        let build = |west: bool| -> Crossing {
            let mut slot = [0; 4];
            let over_first = west == over_east;
            let (over_in, over_out) = if over_first { (over_arc, m_over) } else { (m_over, o_over) };
            let going_down = west == over_east;
            let (on, os) = if going_down { (over_in, over_out) } else { (over_out, over_in) };
            slot[N] = on;
            slot[S] = os;
            let under_first = west == under_east;
            let (under_in, under_out) = if under_first { (under_arc, m_under) } else { (m_under, o_under) };
            let under_in_slot = if under_east { W } else { E };
            slot[under_in_slot] = under_in;
            slot[(under_in_slot + 2) % 4] = under_out;
            let over_in_slot = if going_down { N } else { S };
            let arcs = [0, 1, 2, 3].map(|k| slot[(under_in_slot + k) % 4]);
            let over_in_pos = (over_in_slot + 4 - under_in_slot) % 4;
            Crossing { arcs, sign: if over_in_pos == 1 { 1 } else { -1 } }
        };
        let west = build(true);
        let east = build(false);
        let mut crossings = self.crossings.clone();
        let h_over = ends[(over_arc - 1) as usize].1;
        let h_under = ends[(under_arc - 1) as usize].1;
        crossings[h_over.0].arcs[h_over.1] = o_over;
        crossings[h_under.0].arcs[h_under.1] = o_under;
        crossings.push(west);
        crossings.push(east);
        PlanarDiagram::from_oriented(crossings)
    }

    fn r2_minus_sites(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for face in self.faces() {
            if face.len() == 2 {
                let (a, b) = (face[0].0, face[1].0);
                if a != b {
                    let key = (a.min(b), a.max(b));
                    if !out.contains(&key) && self.bigon_strands(key.0, key.1).is_ok() {
                        out.push(key);
                    }
                }
            }
        }
        out
    }

    /// For a removable bigon: the `(entering, leaving)` labels of both strands.
    fn bigon_strands(&self, i: usize, j: usize) -> Result<[(Arc, Arc); 2], DiagramError> {
        let n = self.crossing_count();
        if i >= n || j >= n || i == j {
            return Err(DiagramError::MoveSite(format!("invalid crossing pair ({i}, {j})")));
        }
        let faces = self.faces();
        let bigon = faces.iter().find(|f| {
            f.len() == 2 && {
                let cs: BTreeSet<usize> = f.iter().map(|d| d.0).collect();
                cs == BTreeSet::from([i, j])
            }
        });
        let bigon = bigon.ok_or_else(|| DiagramError::MoveSite(format!("crossings {i} and {j} do not bound a bigon")))?;
        let partner = self.partners();
        let mut strands = [(0, 0); 2];
        let mut over_flags = [[false; 2]; 2];
        for (k, &(c, p)) in bigon.iter().enumerate() {
            let other: Dart = partner[c][p];
            // The strand through the shared arc: enters at one crossing, leaves the other.
            let (first, second) = if self.crossings[c].is_incoming(p) { (other, (c, p)) } else { ((c, p), other) };
            // `first` is where the shared arc leaves; `second` where it enters.
            let entering = self.crossings[first.0].arcs[(first.1 + 2) % 4];
            let leaving = self.crossings[second.0].arcs[(second.1 + 2) % 4];
            strands[k] = (entering, leaving);
            over_flags[k] = [first.1 % 2 == 1, second.1 % 2 == 1];
        }
        let ok = |f: [bool; 2]| f[0] == f[1];
        if !(ok(over_flags[0]) && ok(over_flags[1]) && over_flags[0][0] != over_flags[1][0]) {
            return Err(DiagramError::MoveSite("bigon strands alternate over/under".into()));
        }
        Ok(strands)
    }

    fn r2_minus(&self, i: usize, j: usize) -> Result<PlanarDiagram, DiagramError> {
        let strands = self.bigon_strands(i, j)?;
        if self.crossing_count() == 2 {
            return if self.is_knot() {
                Ok(PlanarDiagram::unknot())
            } else {
                Err(DiagramError::MoveSite("would leave an unlink".into()))
            };
        }
        let mut rename = BTreeMap::new();
        for (inc, out) in strands {
            if inc != out {
                rename.insert(out, inc);
            }
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, c)| Crossing { arcs: c.arcs.map(|x| resolve(&rename, x)), sign: c.sign })
            .collect();
        let d = PlanarDiagram::from_oriented(crossings)?;
        if d.component_count() != self.component_count() {
            return Err(DiagramError::MoveSite("removing this bigon would leave a free loop".into()));
        }
        Ok(d)
    }

    /// Validates a triangular face for R3 and returns, per triangle edge,
    /// `(tail dart, head dart)`.
    fn r3_data(&self, faces: &[Vec<Dart>], face: usize) -> Result<Vec<(Dart, Dart)>, DiagramError> {
        let f = faces.get(face).ok_or_else(|| DiagramError::MoveSite(format!("no face {face}")))?;
        if f.len() != 3 {
            return Err(DiagramError::MoveSite(format!("face {face} is not a triangle")));
        }
        let cs: BTreeSet<usize> = f.iter().map(|d| d.0).collect();
        if cs.len() != 3 {
            return Err(DiagramError::MoveSite("triangle repeats a crossing".into()));
        }
        let ends = self.arc_ends();
        let edges: Vec<(Dart, Dart)> = f.iter().map(|&(c, p)| ends[(self.crossings[c].arcs[p] - 1) as usize]).collect();
        // Each edge is a strand segment; it is over or under at each end.
        let over_both = edges.iter().any(|(t, h)| t.1 % 2 == 1 && h.1 % 2 == 1);
        let under_both = edges.iter().any(|(t, h)| t.1 % 2 == 0 && h.1 % 2 == 0);
        if !(over_both || under_both) {
            return Err(DiagramError::MoveSite("triangle strands are cyclically layered".into()));
        }
        Ok(edges)
    }

    fn r3(&self, face: usize) -> Result<PlanarDiagram, DiagramError> {
        let faces = self.faces();
        let edges = self.r3_data(&faces, face)?;
        let mut crossings = self.crossings.clone();
        for (tail, head) in edges {
            let m = self.crossings[tail.0].arcs[tail.1];
            let before = self.crossings[tail.0].arcs[(tail.1 + 2) % 4];
            let after = self.crossings[head.0].arcs[(head.1 + 2) % 4];
            // The strand now meets the head crossing first.
            crossings[head.0].arcs[head.1] = before;
            crossings[head.0].arcs[(head.1 + 2) % 4] = m;
            crossings[tail.0].arcs[(tail.1 + 2) % 4] = m;
            crossings[tail.0].arcs[tail.1] = after;
        }
        PlanarDiagram::from_oriented(crossings)
    }
}
