//! Dotted cobordisms between crossingless matchings, reduced to a normal form
//! over `F[t]` with the relations of the Frobenius algebra `F[t][x]/(x^2 - t)`.
//!
//! Between matchings `S` and `T` on the same boundary points, every cobordism
//! is a combination of *simple* ones: one disk per circle of `S ∪ T`, each
//! with at most one dot, times a power of `t`. A morphism is stored as a map
//! `(dot mask, t-power) -> coefficient`, with bit `c` of the mask for the
//! `c`-th circle of `S ∪ T` (circles ordered by their smallest point).

use std::collections::{BTreeMap, HashMap};

use super::field::Field;

pub(crate) type Pt = u32;
pub(crate) type Matching = Vec<(Pt, Pt)>;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Mor<F: Field> {
    pub terms: BTreeMap<(u64, u32), F>,
}

impl<F: Field> Mor<F> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    #[cfg(test)]
    pub fn identity() -> Self {
        Self { terms: BTreeMap::from([((0, 0), F::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u64, k: u32, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((mask, k)).or_insert_with(F::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&(mask, k));
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (&(m, k), c) in &other.terms {
            self.add_term(m, k, c.clone());
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (&(m, k), x) in &self.terms {
            out.add_term(m, k, x.mul(c));
        }
        out
    }

    /// Coefficient of the identity-shaped term (no dots, `t^0`).
    pub fn unit_part(&self) -> Option<&F> {
        self.terms.get(&(0, 0))
    }
}

/// Partner lookup for a matching.
pub(crate) fn partners(m: &[(Pt, Pt)]) -> HashMap<Pt, Pt> {
    let mut p = HashMap::with_capacity(2 * m.len());
    for &(a, b) in m {
        p.insert(a, b);
        p.insert(b, a);
    }
    p
}

/// Circles of `a ∪ b` (matchings on the same points), each listed from its
/// smallest point, ordered by smallest point.
pub(crate) fn cycles(a: &[(Pt, Pt)], b: &[(Pt, Pt)]) -> Vec<Vec<Pt>> {
    let (pa, pb) = (partners(a), partners(b));
    let mut points: Vec<Pt> = pa.keys().copied().collect();
    points.sort_unstable();
    let mut seen: HashMap<Pt, ()> = HashMap::with_capacity(points.len());
    let mut out = Vec::new();
    for &p in &points {
        if seen.contains_key(&p) {
            continue;
        }
        let mut cyc = Vec::new();
        let mut cur = p;
        loop {
            let next = pa[&cur];
            seen.insert(cur, ());
            seen.insert(next, ());
            cyc.push(cur);
            cyc.push(next);
            cur = pb[&next];
            if cur == p {
                break;
            }
        }
        out.push(cyc);
    }
    out
}

/// One connected piece of an assembled surface.
#[derive(Clone, Debug, Default)]
pub(crate) struct Component {
    pub chi: i64,
    pub dots: u32,
    /// Indices of the output circles bounding this component.
    pub circles: Vec<usize>,
}

/// Expands a surface into simple form: each component of genus `g` with `d`
/// dots and `b > 0` boundary circles equals `Δ^(b-1)(2^g x^(d+g))`, capped by
/// disks; closed components evaluate to scalars. Returns
/// `(dot mask, t-power, integer coefficient)` terms.
pub(crate) fn evaluate(components: &[Component]) -> Vec<(u64, u32, i64)> {
    let mut acc: Vec<(u64, u32, i64)> = vec![(0, 0, 1)];
    for comp in components {
        let b = comp.circles.len() as i64;
        let two_g = 2 - b - comp.chi;
        assert!(two_g >= 0 && two_g % 2 == 0, "invalid surface: chi {} with {} boundary circles", comp.chi, b);
        let g = two_g / 2;
        let e = comp.dots as i64 + g;
        let coeff = 1i64 << g;
        let mut local: Vec<(u64, u32, i64)> = Vec::new();
        if b == 0 {
            if e % 2 == 1 {
                local.push((0, ((e - 1) / 2) as u32, coeff));
            }
        } else {
            let top = e + b - 1;
            for sub in 0u64..1 << b {
                let l = sub.count_ones() as i64;
                if (top - l) % 2 != 0 || l > top {
                    continue;
                }
                let mut mask = 0u64;
                for (j, &c) in comp.circles.iter().enumerate() {
                    if sub >> j & 1 == 1 {
                        mask |= 1 << c;
                    }
                }
                local.push((mask, ((top - l) / 2) as u32, coeff));
            }
        }
        if local.is_empty() {
            return Vec::new();
        }
        acc = acc
            .iter()
            .flat_map(|&(m, k, c)| local.iter().map(move |&(m2, k2, c2)| (m | m2, k + k2, c * c2)))
            .collect();
    }
    acc
}

/// Precomputed gluing of `S -> T` with `T -> U`.
#[derive(Clone, Debug)]
pub(crate) struct ComposePlan {
    /// Per component: bits of `S ∪ T` circles, bits of `T ∪ U` circles, and
    /// the template with Euler characteristic and output circles.
    comps: Vec<(u64, u64, Component)>,
}

impl ComposePlan {
    pub fn new(s: &[(Pt, Pt)], t: &[(Pt, Pt)], u: &[(Pt, Pt)]) -> Self {
        let st = cycles(s, t);
        let tu = cycles(t, u);
        let su = cycles(s, u);
        let index = |cs: &[Vec<Pt>]| {
            let mut m = HashMap::new();
            for (k, c) in cs.iter().enumerate() {
                for &p in c {
                    m.insert(p, k);
                }
            }
            m
        };
        let (ist, itu) = (index(&st), index(&tu));
        let n1 = st.len();
        let mut uf = UnionFind::new(n1 + tu.len());
        let mut chi = vec![1i64; n1 + tu.len()];
        for &(a, _) in t {
            let (x, y) = (ist[&a], n1 + itu[&a]);
            let (rx, ry) = (uf.find(x), uf.find(y));
            if rx != ry {
                uf.parent[rx] = ry;
                chi[ry] += chi[rx];
            }
            chi[ry] -= 1;
        }
        let mut by_root: BTreeMap<usize, (u64, u64, Component)> = BTreeMap::new();
        for piece in 0..n1 + tu.len() {
            let r = uf.find(piece);
            let e = by_root.entry(r).or_insert_with(|| (0, 0, Component { chi: chi[r], ..Default::default() }));
            if piece < n1 {
                e.0 |= 1 << piece;
            } else {
                e.1 |= 1 << (piece - n1);
            }
        }
        for (k, c) in su.iter().enumerate() {
            let r = uf.find(ist[&c[0]]);
            by_root.get_mut(&r).expect("component").2.circles.push(k);
        }
        Self { comps: by_root.into_values().collect() }
    }

    pub fn compose<F: Field>(&self, first: &Mor<F>, second: &Mor<F>) -> Mor<F> {
        let mut out = Mor::zero();
        let mut comps: Vec<Component> = self.comps.iter().map(|c| c.2.clone()).collect();
        for (&(m1, k1), c1) in &first.terms {
            for (&(m2, k2), c2) in &second.terms {
                for (comp, (b1, b2, _)) in comps.iter_mut().zip(&self.comps) {
                    comp.dots = (m1 & b1).count_ones() + (m2 & b2).count_ones();
                }
                let c = c1.mul(c2);
                for (mask, k, n) in evaluate(&comps) {
                    out.add_term(mask, k1 + k2 + k, c.mul(&F::from_i64(n)));
                }
            }
        }
        out
    }
}

pub(crate) struct UnionFind {
    pub parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::Q;
    use super::*;

    #[test]
    fn cycles_of_matchings() {
        let a = vec![(1, 2), (3, 4)];
        let b = vec![(1, 4), (2, 3)];
        assert_eq!(cycles(&a, &b), vec![vec![1, 2, 3, 4]]);
        assert_eq!(cycles(&a, &a).len(), 2);
    }

    #[test]
    fn closed_surfaces() {
        let sphere = |dots| evaluate(&[Component { chi: 2, dots, circles: vec![] }]);
        assert!(sphere(0).is_empty());
        assert_eq!(sphere(1), vec![(0, 0, 1)]);
        assert!(sphere(2).is_empty());
        assert_eq!(sphere(3), vec![(0, 1, 1)]);
        let torus = evaluate(&[Component { chi: 0, dots: 0, circles: vec![] }]);
        assert_eq!(torus, vec![(0, 0, 2)]);
    }

    #[test]
    fn tube_is_neck_cut() {
        // Annulus between two circles: x⊗1 + 1⊗x.
        let mut terms = evaluate(&[Component { chi: 0, dots: 0, circles: vec![0, 1] }]);
        terms.sort();
        assert_eq!(terms, vec![(1, 0, 1), (2, 0, 1)]);
        let mut dotted = evaluate(&[Component { chi: 0, dots: 1, circles: vec![0, 1] }]);
        dotted.sort();
        assert_eq!(dotted, vec![(0, 1, 1), (3, 0, 1)]);
    }

    #[test]
    fn saddle_then_saddle_is_a_tube() {
        // Points 1..4; S = {12,34}, T = {14,23}. S -> T -> S composes two saddles.
        let s = vec![(1, 2), (3, 4)];
        let t = vec![(1, 4), (2, 3)];
        let plan = ComposePlan::new(&s, &t, &s);
        let one: Mor<Q> = Mor::identity();
        let out = plan.compose(&one, &one);
        let mut keys: Vec<_> = out.terms.keys().copied().collect();
        keys.sort();
        assert_eq!(keys, vec![(1, 0), (2, 0)]);
    }

    #[test]
    fn identity_composition() {
        let s = vec![(1, 2), (3, 4)];
        let plan = ComposePlan::new(&s, &s, &s);
        let mut f: Mor<Q> = Mor::zero();
        f.add_term(1, 0, Q::from_i64(3));
        f.add_term(2, 1, Q::from_i64(-1));
        assert_eq!(plan.compose(&Mor::identity(), &f), f);
        assert_eq!(plan.compose(&f, &Mor::identity()), f);
    }
}
