//! Oriented knot and link diagrams as PD codes.

mod gauss;
mod moves;
mod ops;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conventions::{self, UNDER_IN, UNDER_OUT};
use crate::error::DiagramError;

pub use gauss::{GaussCode, GaussVisit};
pub use moves::{Kink, ReidemeisterMove};
pub use ops::TangleRegion;

/// Arc label.
pub type Arc = u32;

/// One crossing: arc labels counterclockwise from the incoming under-strand,
/// plus the cached sign (see [`crate::conventions`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [Arc; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    /// Whether the strand at `pos` is the over-strand.
    pub fn is_over(pos: usize) -> bool {
        pos % 2 == 1
    }

    /// Whether the given position is where a strand enters the crossing.
    pub fn is_incoming(&self, pos: usize) -> bool {
        pos == UNDER_IN || pos == conventions::over_in(self.sign)
    }

    /// The crossing with over and under strands exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        let arcs = if self.sign > 0 { [b, c, d, a] } else { [d, a, b, c] };
        Crossing { arcs, sign: -self.sign }
    }

    /// Same crossing with both strands reversed.
    pub fn reversed(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        Crossing { arcs: [c, d, a, b], sign: self.sign }
    }
}

/// A position on a crossing: `(crossing index, slot 0..4)`.
pub type Dart = (usize, usize);

/// Validated oriented planar diagram. The 0-crossing unknot is the diagram
/// with no crossings and one component.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    components: usize,
}

impl PlanarDiagram {
    /// The designated 0-crossing unknot.
    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), components: 1 }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn require_knot(&self) -> Result<(), DiagramError> {
        if self.is_knot() {
            Ok(())
        } else {
            Err(DiagramError::NotAKnot { components: self.components })
        }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// `(n_+, n_-)`
    pub fn signed_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.is_positive()).count();
        (pos, self.crossings.len() - pos)
    }

    pub fn num_arcs(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Labels `1..=2n`.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> {
        1..=(self.num_arcs() as Arc)
    }

    /// Parses the PD text format: whitespace-separated `X[a,b,c,d]` atoms, or a
    /// lone `U` for the 0-crossing unknot.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let tokens = tokenize_pd(text)?;
        if tokens.len() == 1 && tokens[0] == "U" {
            return Ok(Self::unknot());
        }
        if tokens.is_empty() {
            return Err(DiagramError::Syntax {
                token: String::new(),
                reason: "empty PD code (use `U` for the unknot)".into(),
            });
        }
        let mut raw = Vec::with_capacity(tokens.len());
        for tok in &tokens {
            raw.push(parse_atom(tok)?);
        }
        Self::from_labels(&raw)
    }

    /// Builds a diagram from raw 4-tuples, deducing orientation from label
    /// succession. Labels must be exactly `1..=2n`, each used twice.
    pub fn from_labels(raw: &[[Arc; 4]]) -> Result<Self, DiagramError> {
        let n = raw.len();
        if n == 0 {
            return Ok(Self::unknot());
        }
        let max = 2 * n as Arc;
        let mut count: BTreeMap<Arc, usize> = BTreeMap::new();
        for x in raw.iter().flatten() {
            if *x == 0 || *x > max {
                return Err(DiagramError::LabelRange { label: *x, expected_max: max });
            }
            *count.entry(*x).or_default() += 1;
        }
        for label in 1..=max {
            let c = count.get(&label).copied().unwrap_or(0);
            if c != 2 {
                return Err(DiagramError::LabelCount { label, count: c });
            }
        }
        let succ = successor_map(raw)?;
        let signs = deduce_signs(raw, &succ)?;
        let crossings: Vec<Crossing> = raw
            .iter()
            .zip(signs)
            .map(|(arcs, sign)| Crossing { arcs: *arcs, sign })
            .collect();
        let d = Self::from_oriented(crossings)?;
        Ok(d)
    }

    /// Builds a diagram from crossings whose signs already encode orientation.
    /// Labels may be arbitrary; the result is relabeled canonically (each
    /// component gets a consecutive range, starting from its smallest old label).
    pub(crate) fn from_oriented(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        if crossings.is_empty() {
            return Ok(Self::unknot());
        }
        let mut ends: BTreeMap<Arc, (Option<Dart>, Option<Dart>)> = BTreeMap::new();
        for (ci, c) in crossings.iter().enumerate() {
            for pos in 0..4 {
                let e = ends.entry(c.arcs[pos]).or_default();
                let slot = if c.is_incoming(pos) { &mut e.1 } else { &mut e.0 };
                if slot.is_some() {
                    return Err(DiagramError::Orientation {
                        crossing: ci,
                        reason: format!(
                            "arc {} {} twice",
                            c.arcs[pos],
                            if c.is_incoming(pos) { "enters a crossing" } else { "leaves a crossing" }
                        ),
                    });
                }
                *slot = Some((ci, pos));
            }
        }
        for (label, (tail, head)) in &ends {
            if tail.is_none() || head.is_none() {
                return Err(DiagramError::LabelCount { label: *label, count: 1 });
            }
        }
        let mut new_label: BTreeMap<Arc, Arc> = BTreeMap::new();
        let mut next = 1;
        let mut components = 0;
        for &start in ends.keys() {
            if new_label.contains_key(&start) {
                continue;
            }
            components += 1;
            let mut cur = start;
            loop {
                new_label.insert(cur, next);
                next += 1;
                let (hc, hp) = ends[&cur].1.unwrap();
                let nxt = crossings[hc].arcs[(hp + 2) % 4];
                if nxt == start {
                    break;
                }
                if new_label.contains_key(&nxt) {
                    return Err(DiagramError::Orientation {
                        crossing: hc,
                        reason: "strand does not close up".into(),
                    });
                }
                cur = nxt;
            }
        }
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .map(|c| Crossing { arcs: c.arcs.map(|x| new_label[&x]), sign: c.sign })
            .collect();
        let d = Self { crossings, components };
        d.check_planar()?;
        Ok(d)
    }

    /// For every dart, the dart at the other end of the same arc.
    pub(crate) fn partners(&self) -> Vec<[Dart; 4]> {
        let mut seen: BTreeMap<Arc, Dart> = BTreeMap::new();
        let mut out = vec![[(0usize, 0usize); 4]; self.crossings.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for pos in 0..4 {
                if let Some(other) = seen.remove(&c.arcs[pos]) {
                    out[ci][pos] = other;
                    out[other.0][other.1] = (ci, pos);
                } else {
                    seen.insert(c.arcs[pos], (ci, pos));
                }
            }
        }
        out
    }

    /// `(tail dart, head dart)` of every arc, indexed by `label - 1`.
    pub(crate) fn arc_ends(&self) -> Vec<(Dart, Dart)> {
        let mut ends = vec![((0, 0), (0, 0)); self.num_arcs()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for pos in 0..4 {
                let e = &mut ends[(c.arcs[pos] - 1) as usize];
                if c.is_incoming(pos) {
                    e.1 = (ci, pos);
                } else {
                    e.0 = (ci, pos);
                }
            }
        }
        ends
    }

    /// Faces of the diagram. Each face is the cyclic list of darts from which
    /// its boundary leaves along an arc, with the face on the left.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let partner = self.partners();
        let n = self.crossings.len();
        let mut visited = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for ci in 0..n {
            for pos in 0..4 {
                if visited[ci][pos] {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = (ci, pos);
                while !visited[cur.0][cur.1] {
                    visited[cur.0][cur.1] = true;
                    face.push(cur);
                    let (oc, op) = partner[cur.0][cur.1];
                    cur = (oc, (op + 3) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Number of connected pieces of the underlying 4-valent graph.
    pub(crate) fn graph_components(&self) -> usize {
        let n = self.crossings.len();
        if n == 0 {
            return 1;
        }
        let partner = self.partners();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(c) = stack.pop() {
                for pos in 0..4 {
                    let o = partner[c][pos].0;
                    if !seen[o] {
                        seen[o] = true;
                        stack.push(o);
                    }
                }
            }
        }
        count
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        let faces = self.faces().len();
        let expected = n + 1 + self.graph_components();
        if faces != expected {
            return Err(DiagramError::NonPlanar { faces, expected });
        }
        Ok(())
    }

    pub fn to_pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return "U".into();
        }
        self.crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_gauss_code(&self) -> GaussCode {
        GaussCode::from_diagram(self)
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[{}]", self.to_pd_string())
    }
}

impl FromStr for PlanarDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_pd(s)
    }
}

fn tokenize_pd(text: &str) -> Result<Vec<String>, DiagramError> {
    // Whitespace between atoms; tolerate spaces inside brackets.
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in text.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
                if depth < 0 {
                    return Err(DiagramError::Syntax { token: cur, reason: "unbalanced `]`".into() });
                }
            }
            c if c.is_whitespace() => {
                if depth == 0
                    && !cur.is_empty() {
                        tokens.push(std::mem::take(&mut cur));
                    }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(DiagramError::Syntax { token: cur, reason: "unbalanced `[`".into() });
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    Ok(tokens)
}

fn parse_atom(tok: &str) -> Result<[Arc; 4], DiagramError> {
    let err = |reason: &str| DiagramError::Syntax { token: tok.to_string(), reason: reason.into() };
    let inner = tok
        .strip_prefix("X[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err("expected `X[a,b,c,d]`"))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(err("a crossing needs exactly four labels"));
    }
    let mut arcs = [0; 4];
    for (slot, p) in arcs.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| err("labels must be positive integers"))?;
    }
    Ok(arcs)
}

/// Successor of each label along its component, from label succession within
/// the component's contiguous label range.
fn successor_map(raw: &[[Arc; 4]]) -> Result<BTreeMap<Arc, Arc>, DiagramError> {
    // Components as unoriented cycles: labels at opposite slots are adjacent.
    let mut adj: BTreeMap<Arc, Vec<Arc>> = BTreeMap::new();
    for c in raw {
        for (p, q) in [(0, 2), (1, 3)] {
            adj.entry(c[p]).or_default().push(c[q]);
            adj.entry(c[q]).or_default().push(c[p]);
        }
    }
    let mut succ = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::new();
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut i = 0;
        while i < comp.len() {
            for &nb in &adj[&comp[i]] {
                if seen.insert(nb) {
                    comp.push(nb);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        let (lo, hi) = (comp[0], comp[comp.len() - 1]);
        if (hi - lo + 1) as usize != comp.len() {
            return Err(DiagramError::Orientation {
                crossing: raw.iter().position(|c| c.contains(&lo)).unwrap_or(0),
                reason: format!("component labels {lo}..{hi} are not consecutive"),
            });
        }
        for &x in &comp {
            succ.insert(x, if x == hi { lo } else { x + 1 });
        }
    }
    Ok(succ)
}

fn deduce_signs(raw: &[[Arc; 4]], succ: &BTreeMap<Arc, Arc>) -> Result<Vec<i8>, DiagramError> {
    let n = raw.len();
    // in_at[label] / out_at[label] record the dart where the arc enters / leaves.
    let mut has_in: BTreeMap<Arc, bool> = BTreeMap::new();
    let mut has_out: BTreeMap<Arc, bool> = BTreeMap::new();
    for (ci, c) in raw.iter().enumerate() {
        if succ[&c[UNDER_IN]] != c[UNDER_OUT] {
            return Err(DiagramError::Orientation {
                crossing: ci,
                reason: format!("under-strand {} -> {} breaks label succession", c[0], c[2]),
            });
        }
        if has_in.insert(c[UNDER_IN], true).is_some() {
            return Err(DiagramError::Orientation {
                crossing: ci,
                reason: format!("arc {} enters two crossings", c[0]),
            });
        }
        if has_out.insert(c[UNDER_OUT], true).is_some() {
            return Err(DiagramError::Orientation {
                crossing: ci,
                reason: format!("arc {} leaves two crossings", c[2]),
            });
        }
    }
    let mut signs: Vec<Option<i8>> = vec![None; n];
    // Propagate: an arc that already enters somewhere must leave at its other end.
    loop {
        let mut progress = false;
        for (ci, c) in raw.iter().enumerate() {
            if signs[ci].is_some() {
                continue;
            }
            let (b, d) = (c[1], c[3]);
            if b == d {
                continue;
            }
            let known = |x: Arc, m: &BTreeMap<Arc, bool>| m.get(&x).copied().unwrap_or(false);
            let sign = if known(b, &has_in) || known(d, &has_out) {
                Some(-1)
            } else if known(d, &has_in) || known(b, &has_out) {
                Some(1)
            } else {
                None
            };
            if let Some(s) = sign {
                signs[ci] = Some(s);
                let (entering, leaving) = if s > 0 { (b, d) } else { (d, b) };
                if has_in.insert(entering, true).is_some() || has_out.insert(leaving, true).is_some() {
                    return Err(DiagramError::Orientation {
                        crossing: ci,
                        reason: format!("over-strand {entering} -> {leaving} conflicts with arc directions"),
                    });
                }
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    // Remaining crossings: use label succession directly.
    let mut out = Vec::with_capacity(n);
    for (ci, c) in raw.iter().enumerate() {
        let s = match signs[ci] {
            Some(s) => s,
            None => {
                let (b, d) = (c[1], c[3]);
                if succ[&b] == d {
                    1
                } else if succ[&d] == b {
                    -1
                } else {
                    return Err(DiagramError::Orientation {
                        crossing: ci,
                        reason: format!("over-strand {b} / {d} breaks label succession"),
                    });
                }
            }
        };
        let (over_in, over_out) = if s > 0 { (c[1], c[3]) } else { (c[3], c[1]) };
        if succ[&over_in] != over_out {
            return Err(DiagramError::Orientation {
                crossing: ci,
                reason: format!("over-strand {over_in} -> {over_out} breaks label succession"),
            });
        }
        out.push(s);
    }
    Ok(out)
}
