//! Finite free chain complexes over `F[t]` with homogeneous differential.
//!
//! Generators carry a bigrading `(i, q)`. The differential raises `i` by one;
//! an entry from `x` to `y` with coefficient `c` stands for `c * t^k` with
//! `k = (q(y) - q(x)) / 4`. Setting `t = 0` gives the Khovanov complex,
//! `t = 1` the Lee complex filtered by `q`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::ranks::BigradedRanks;
use crate::error::KhovanovError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Grading {
    pub i: i64,
    pub q: i64,
}

#[derive(Clone, Debug)]
pub struct FilteredChainComplex<F: Field> {
    gens: Vec<Option<Grading>>,
    out: Vec<BTreeMap<usize, F>>,
    inc: Vec<BTreeSet<usize>>,
    live: usize,
}

impl<F: Field> Default for FilteredChainComplex<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// One split summand of a complex over `F[t]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    /// A free generator with zero differential.
    Free(Grading),
    /// `F[t] x -> F[t] y` by `t^k`; contributes torsion `F[t]/t^k`.
    Torsion { source: Grading, power: i64 },
}

impl<F: Field> FilteredChainComplex<F> {
    pub fn new() -> Self {
        Self { gens: Vec::new(), out: Vec::new(), inc: Vec::new(), live: 0 }
    }

    pub fn add_generator(&mut self, g: Grading) -> usize {
        self.gens.push(Some(g));
        self.out.push(BTreeMap::new());
        self.inc.push(BTreeSet::new());
        self.live += 1;
        self.gens.len() - 1
    }

    /// Adds `c` to the entry `src -> tgt`.
    pub fn add_entry(&mut self, src: usize, tgt: usize, c: F) -> Result<(), KhovanovError> {
        if c.is_zero() {
            return Ok(());
        }
        let (a, b) = (self.grading(src), self.grading(tgt));
        let dq = b.q - a.q;
        if b.i != a.i + 1 || dq < 0 || dq % 4 != 0 {
            return Err(KhovanovError::Internal(format!("inhomogeneous entry {a:?} -> {b:?}")));
        }
        self.accumulate(src, tgt, c);
        Ok(())
    }

    fn accumulate(&mut self, src: usize, tgt: usize, c: F) {
        let slot = self.out[src].entry(tgt).or_insert_with(F::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.out[src].remove(&tgt);
            self.inc[tgt].remove(&src);
        } else {
            self.inc[tgt].insert(src);
        }
    }

    pub fn grading(&self, g: usize) -> Grading {
        self.gens[g].expect("live generator")
    }

    /// Number of live generators.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn generators(&self) -> impl Iterator<Item = (usize, Grading)> + '_ {
        self.gens.iter().enumerate().filter_map(|(k, g)| g.map(|g| (k, g)))
    }

    pub fn targets(&self, g: usize) -> impl Iterator<Item = (usize, &F)> + '_ {
        self.out[g].iter().map(|(&k, c)| (k, c))
    }

    pub fn entry_count(&self) -> usize {
        self.out.iter().map(|m| m.len()).sum()
    }

    /// Verifies `d∘d = 0`.
    pub fn check_d_squared(&self) -> Result<(), KhovanovError> {
        for (x, gx) in self.generators() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (y, c1) in self.targets(x) {
                for (z, c2) in self.targets(y) {
                    let slot = acc.entry(z).or_insert_with(F::zero);
                    *slot = slot.add(&c1.mul(c2));
                }
            }
            if acc.values().any(|c| !c.is_zero()) {
                return Err(KhovanovError::DSquaredNonzero { degree: gx.i });
            }
        }
        Ok(())
    }

    fn remove(&mut self, g: usize) {
        for t in std::mem::take(&mut self.out[g]).into_keys() {
            self.inc[t].remove(&g);
        }
        for s in std::mem::take(&mut self.inc[g]) {
            self.out[s].remove(&g);
        }
        self.gens[g] = None;
        self.live -= 1;
    }

    /// Gaussian elimination of the isomorphism `b -> a` (same `q`).
    fn cancel(&mut self, b: usize, a: usize) {
        let inv = self.out[b][&a].inv();
        let sources: Vec<(usize, F)> =
            self.inc[a].iter().filter(|&&x| x != b).map(|&x| (x, self.out[x][&a].mul(&inv))).collect();
        let targets: Vec<(usize, F)> = self.out[b].iter().filter(|(&y, _)| y != a).map(|(&y, c)| (y, c.clone())).collect();
        for (x, cx) in &sources {
            for (y, cy) in &targets {
                self.accumulate(*x, *y, cx.mul(cy).neg());
            }
        }
        self.remove(a);
        self.remove(b);
    }

    /// Cancels every entry between generators of equal `q` until none remain.
    /// The result is chain homotopy equivalent over `F[t]`, so Khovanov and
    /// Lee homology and the `q`-filtration are unchanged.
    pub fn simplify(&mut self) {
        let mut queue: Vec<usize> = (0..self.gens.len()).rev().collect();
        while let Some(b) = queue.pop() {
            let Some(gb) = self.gens[b] else { continue };
            let pivot = self.out[b].keys().copied().find(|&a| self.grading(a).q == gb.q);
            if let Some(a) = pivot {
                let touched: Vec<usize> = self.inc[a].iter().copied().collect();
                self.cancel(b, a);
                queue.extend(touched.into_iter().filter(|&x| self.gens[x].is_some()));
            }
        }
    }

    /// Khovanov ranks, valid once no equal-`q` entry remains (after
    /// [`FilteredChainComplex::simplify`]).
    pub fn generator_ranks(&self) -> BigradedRanks {
        let mut ranks = BigradedRanks::default();
        for (_, g) in self.generators() {
            ranks.add(g.i, g.q, 1);
        }
        ranks
    }

    /// Splits the complex into free and torsion summands by repeatedly
    /// pivoting on an entry of minimal `t`-power.
    pub fn decompose(mut self) -> Vec<Summand> {
        let mut summands = Vec::new();
        loop {
            let mut best: Option<(i64, usize, usize)> = None;
            for (x, gx) in self.generators() {
                for (y, _) in self.targets(x) {
                    let k = (self.grading(y).q - gx.q) / 4;
                    if best.is_none_or(|b| k < b.0) {
                        best = Some((k, x, y));
                    }
                }
            }
            let Some((k, x, y)) = best else { break };
            let c_inv = self.out[x][&y].inv();
            // Clear the other sources into y (basis change among degree-i generators).
            let others: Vec<(usize, F)> =
                self.inc[y].iter().filter(|&&s| s != x).map(|&s| (s, self.out[s][&y].mul(&c_inv))).collect();
            for (s, lambda) in others {
                let row: Vec<(usize, F)> = self.out[x].iter().map(|(&t, c)| (t, c.clone())).collect();
                for (t, c) in row {
                    self.accumulate(s, t, lambda.mul(&c).neg());
                }
                let into_s: Vec<(usize, F)> = self.inc[s].iter().map(|&z| (z, self.out[z][&s].clone())).collect();
                for (z, c) in into_s {
                    self.accumulate(z, x, lambda.mul(&c));
                }
            }
            // Clear the other targets of x (basis change among degree-(i+1) generators).
            let others: Vec<(usize, F)> =
                self.out[x].iter().filter(|(&t, _)| t != y).map(|(&t, c)| (t, c.mul(&c_inv))).collect();
            for (t, mu) in others {
                let c = self.out[x][&y].clone();
                self.accumulate(x, t, mu.mul(&c).neg());
                let from_t: Vec<(usize, F)> = self.out[t].iter().map(|(&z, c)| (z, c.clone())).collect();
                for (z, c) in from_t {
                    self.accumulate(y, z, mu.mul(&c));
                }
            }
            debug_assert!(self.inc[x].is_empty() && self.out[y].is_empty());
            let source = self.grading(x);
            self.remove(x);
            self.remove(y);
            if k > 0 {
                summands.push(Summand::Torsion { source, power: k });
            }
        }
        summands.extend(self.generators().map(|(_, g)| Summand::Free(g)));
        summands
    }
}

/// Cancels all equal-`q` entries; see [`FilteredChainComplex::simplify`].
pub fn simplify_complex<F: Field>(mut c: FilteredChainComplex<F>) -> FilteredChainComplex<F> {
    c.simplify();
    c
}

#[cfg(test)]
mod tests {
    use super::super::field::{F2, Q};
    use super::*;

    fn g(i: i64, q: i64) -> Grading {
        Grading { i, q }
    }

    #[test]
    fn zero_differential_unchanged() {
        let mut c: FilteredChainComplex<Q> = FilteredChainComplex::new();
        c.add_generator(g(0, 1));
        c.add_generator(g(0, -1));
        let s = simplify_complex(c);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn single_cancellation() {
        let mut c: FilteredChainComplex<Q> = FilteredChainComplex::new();
        let a = c.add_generator(g(0, 1));
        let b = c.add_generator(g(1, 1));
        c.add_generator(g(0, -1));
        c.add_entry(a, b, Q::from_i64(-1)).unwrap();
        let s = simplify_complex(c);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn rejects_inhomogeneous_entries() {
        let mut c: FilteredChainComplex<F2> = FilteredChainComplex::new();
        let a = c.add_generator(g(0, 1));
        let b = c.add_generator(g(1, 3));
        assert!(c.add_entry(a, b, F2::one()).is_err());
    }

    #[test]
    fn decomposition_finds_torsion() {
        // x -> t y, plus a free generator.
        let mut c: FilteredChainComplex<Q> = FilteredChainComplex::new();
        let x = c.add_generator(g(0, 1));
        let y = c.add_generator(g(1, 5));
        c.add_generator(g(0, 3));
        c.add_entry(x, y, Q::from_i64(2)).unwrap();
        let parts = c.decompose();
        assert!(parts.contains(&Summand::Torsion { source: g(0, 1), power: 1 }));
        assert!(parts.contains(&Summand::Free(g(0, 3))));
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn decomposition_handles_shared_targets() {
        // x1 -> t y, x2 -> t^2 y: after the basis change one free generator survives.
        let mut c: FilteredChainComplex<Q> = FilteredChainComplex::new();
        let x1 = c.add_generator(g(0, 1));
        let x2 = c.add_generator(g(0, -3));
        let y = c.add_generator(g(1, 5));
        c.add_entry(x1, y, Q::one()).unwrap();
        c.add_entry(x2, y, Q::one()).unwrap();
        c.check_d_squared().unwrap();
        let parts = c.decompose();
        assert_eq!(parts, vec![Summand::Torsion { source: g(0, 1), power: 1 }, Summand::Free(g(0, -3))]);
    }
}
