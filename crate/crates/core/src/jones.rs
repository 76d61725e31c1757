//! Kauffman bracket and Jones polynomial.

use std::collections::{BTreeSet, HashMap};

use crate::conventions::SMOOTHING;
use crate::diagram::{Arc, PlanarDiagram};
use crate::error::InvariantError;
use crate::laurent::LaurentPoly;

/// One smoothing choice per crossing (`0` or `1`) and the resulting circle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketState {
    pub smoothing: Vec<u8>,
    pub circles: usize,
}

fn delta() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Number of circles in the smoothing given by `bits` (bit `i` for crossing `i`).
pub(crate) fn circle_count(d: &PlanarDiagram, bits: &[u8]) -> usize {
    if d.is_unknot_diagram() {
        return d.component_count();
    }
    let n = d.num_arcs();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut joins = 0;
    for (c, &s) in d.crossings().iter().zip(bits) {
        for (p, q) in SMOOTHING[s as usize] {
            let (a, b) = (find(&mut parent, c.arcs[p] as usize - 1), find(&mut parent, c.arcs[q] as usize - 1));
            if a != b {
                parent[a] = b;
                joins += 1;
            }
        }
    }
    n - joins
}

/// All `2^n` states, in binary order of the smoothing vector.
pub fn bracket_states(d: &PlanarDiagram) -> impl Iterator<Item = BracketState> + '_ {
    let n = d.crossing_count();
    (0u64..1 << n).map(move |code| {
        let smoothing: Vec<u8> = (0..n).map(|i| (code >> i & 1) as u8).collect();
        let circles = circle_count(d, &smoothing);
        BracketState { smoothing, circles }
    })
}

/// State-sum bracket over all `2^n` smoothings. Reference implementation.
pub fn kauffman_bracket_naive(d: &PlanarDiagram) -> LaurentPoly {
    let dl = delta();
    let mut by_key: HashMap<(i64, usize), i64> = HashMap::new();
    for st in bracket_states(d) {
        let ones = st.smoothing.iter().filter(|&&s| s == 1).count() as i64;
        let zeros = st.smoothing.len() as i64 - ones;
        *by_key.entry((zeros - ones, st.circles)).or_default() += 1;
    }
    let mut total = LaurentPoly::zero();
    for ((exp, circles), count) in by_key {
        total = &total + &(&LaurentPoly::monomial(count, exp) * &dl.pow(circles as u32 - 1));
    }
    total
}

/// Crossing order for planar scanning: greedily take the crossing sharing the
/// most labels with the current boundary.
pub(crate) fn scan_order(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut used = vec![false; n];
    let mut boundary: BTreeSet<Arc> = BTreeSet::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&i| !used[i])
            .max_by_key(|&i| {
                let arcs = d.crossings()[i].arcs;
                let shared = arcs.iter().filter(|a| boundary.contains(a)).count() as i64;
                let repeated = 4 - arcs.iter().collect::<BTreeSet<_>>().len() as i64;
                (shared + repeated, -(i as i64))
            })
            .expect("some crossing remains");
        used[best] = true;
        order.push(best);
        for a in d.crossings()[best].arcs {
            if !boundary.remove(&a) {
                boundary.insert(a);
            }
        }
    }
    order
}

type Matching = Vec<(Arc, Arc)>;

/// Glues two new strands onto a boundary matching. Returns the new matching
/// (pairs sorted, each pair ascending) and the number of closed circles.
pub(crate) fn glue(old: &[(Arc, Arc)], new: &[(Arc, Arc)]) -> (Matching, usize) {
    let edges: Vec<(Arc, Arc)> = old.iter().chain(new).copied().collect();
    let mut adj: HashMap<Arc, Vec<usize>> = HashMap::new();
    for (e, &(x, y)) in edges.iter().enumerate() {
        adj.entry(x).or_default().push(e);
        adj.entry(y).or_default().push(e);
    }
    let mut used = vec![false; edges.len()];
    let other = |e: usize, x: Arc| if edges[e].0 == x { edges[e].1 } else { edges[e].0 };
    let mut matching = Vec::new();
    let mut ends: Vec<Arc> = adj.iter().filter(|(_, v)| v.len() == 1).map(|(&k, _)| k).collect();
    ends.sort_unstable();
    for start in ends {
        let first = adj[&start][0];
        if used[first] {
            continue;
        }
        let (mut cur, mut e) = (start, first);
        loop {
            used[e] = true;
            cur = other(e, cur);
            let nexts = &adj[&cur];
            match nexts.iter().find(|&&f| !used[f]) {
                Some(&f) if nexts.len() == 2 => e = f,
                _ => break,
            }
        }
        matching.push((start.min(cur), start.max(cur)));
    }
    let mut loops = 0;
    for e0 in 0..edges.len() {
        if used[e0] {
            continue;
        }
        loops += 1;
        let (mut cur, mut e) = (edges[e0].0, e0);
        loop {
            used[e] = true;
            cur = other(e, cur);
            match adj[&cur].iter().find(|&&f| !used[f]) {
                Some(&f) => e = f,
                None => break,
            }
        }
    }
    matching.sort_unstable();
    (matching, loops)
}

/// Bracket by planar scanning: crossings are added one at a time and partial
/// states with the same boundary matching are merged.
pub fn kauffman_bracket(d: &PlanarDiagram) -> LaurentPoly {
    if d.is_unknot_diagram() {
        return delta().pow(d.component_count() as u32 - 1);
    }
    let dl = delta();
    let mut states: HashMap<Matching, LaurentPoly> = HashMap::from([(Vec::new(), LaurentPoly::one())]);
    for ci in scan_order(d) {
        let arcs = d.crossings()[ci].arcs;
        let mut next: HashMap<Matching, LaurentPoly> = HashMap::new();
        for (m, poly) in &states {
            for (s, exp) in [(0usize, 1i64), (1, -1)] {
                let new: Vec<(Arc, Arc)> = SMOOTHING[s].iter().map(|&(p, q)| (arcs[p], arcs[q])).collect();
                let (m2, loops) = glue(m, &new);
                let term = &poly.shift(exp) * &dl.pow(loops as u32);
                let slot = next.entry(m2).or_insert_with(LaurentPoly::zero);
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let closed = states.remove(&Vec::new()).unwrap_or_else(LaurentPoly::zero);
    closed.div_exact(&dl).expect("at least one circle")
}

/// Jones polynomial `V(t)` of a knot.
pub fn jones_polynomial(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    d.require_knot()?;
    normalize(d, &kauffman_bracket(d))
}

/// Jones polynomial from the full state sum (exponential; for cross-checks).
pub fn jones_polynomial_naive(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    d.require_knot()?;
    normalize(d, &kauffman_bracket_naive(d))
}

fn normalize(d: &PlanarDiagram, bracket: &LaurentPoly) -> Result<LaurentPoly, InvariantError> {
    let w = d.writhe();
    let factor = LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, -3 * w);
    (&factor * bracket).divide_exponents(-4).ok_or(InvariantError::NonIntegralExponent)
}

/// `(q + q^-1) V(q^2)`, the graded Euler characteristic of Khovanov homology.
pub fn unnormalized_jones(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    let v = jones_polynomial(d)?;
    Ok(&LaurentPoly::from_terms([(1, 1), (-1, 1)]) * &v.substitute_power(2))
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
    fn kink_brackets() {
        let neg = pd("X[1,1,2,2]");
        assert_eq!(neg.writhe(), -1);
        assert_eq!(kauffman_bracket(&neg), LaurentPoly::monomial(-1, -3));
        assert_eq!(kauffman_bracket_naive(&neg), LaurentPoly::monomial(-1, -3));
        let pos = neg.mirror();
        assert_eq!(kauffman_bracket(&pos), LaurentPoly::monomial(-1, 3));
        assert_eq!(jones_polynomial(&pos).unwrap(), LaurentPoly::one());
        assert_eq!(jones_polynomial(&neg).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_jones() {
        let t = trefoil();
        assert_eq!(kauffman_bracket(&t), kauffman_bracket_naive(&t));
        assert_eq!(jones_polynomial(&t).unwrap().to_string(), "-t^4 + t^3 + t");
        assert_eq!(unnormalized_jones(&t).unwrap().to_text("q"), "-q^9 + q^5 + q^3 + q");
        assert_eq!(jones_polynomial(&t.mirror()).unwrap().to_string(), "t^-1 + t^-3 - t^-4");
    }

    #[test]
    fn unknot_values() {
        let u = PlanarDiagram::unknot();
        assert_eq!(kauffman_bracket(&u), LaurentPoly::one());
        assert_eq!(jones_polynomial(&u).unwrap(), LaurentPoly::one());
        assert_eq!(unnormalized_jones(&u).unwrap().to_text("q"), "q + q^-1");
    }

    #[test]
    fn states_count() {
        let t = trefoil();
        let states: Vec<_> = bracket_states(&t).collect();
        assert_eq!(states.len(), 8);
        assert!(states.iter().all(|s| s.circles >= 1));
        assert_eq!(states[0].circles, 2); // Seifert circles
        assert_eq!(states[7].circles, 3);
    }

    #[test]
    fn figure_eight_amphichiral() {
        let f = pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]");
        let v = jones_polynomial(&f).unwrap();
        assert_eq!(v.to_string(), "t^2 - t + 1 - t^-1 + t^-2");
        assert_eq!(v.invert_variable(), v);
    }

    #[test]
    fn glue_handles_repeated_labels() {
        assert_eq!(glue(&[], &[(1, 2), (1, 2)]), (vec![], 1));
        assert_eq!(glue(&[], &[(1, 1), (2, 2)]), (vec![], 2));
        assert_eq!(glue(&[(1, 2)], &[(2, 3), (4, 5)]), (vec![(1, 3), (4, 5)], 0));
    }
}
