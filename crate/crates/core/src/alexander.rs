//! Wirtinger presentations, Fox calculus, and the Alexander polynomial.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::PlanarDiagram;
use crate::error::InvariantError;
use crate::laurent::LaurentPoly;

/// `x_k = x_j^eps x_i x_j^-eps`: under-strand `i` passes beneath over-strand
/// `j` and becomes `k`. Indices are 0-based generator indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WirtingerRelation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub eps: i8,
}

/// Knot group presentation with one generator per overarc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerPresentation {
    pub generators: usize,
    pub relations: Vec<WirtingerRelation>,
}

/// Row per relation, column per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub entries: Vec<Vec<LaurentPoly>>,
}

/// Overarc index of every arc label (index `label - 1`) plus the overarc count.
pub(crate) fn overarcs(d: &PlanarDiagram) -> (Vec<usize>, usize) {
    let n = d.num_arcs();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for c in d.crossings() {
        let (b, dd) = (c.arcs[1] as usize - 1, c.arcs[3] as usize - 1);
        let (rb, rd) = (find(&mut parent, b), find(&mut parent, dd));
        parent[rb.max(rd)] = rb.min(rd);
    }
    let mut index = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut count = 0;
    for label in 0..n {
        let r = find(&mut parent, label);
        if index[r] == usize::MAX {
            index[r] = count;
            count += 1;
        }
        out[label] = index[r];
    }
    (out, count)
}

pub fn wirtinger_presentation(d: &PlanarDiagram) -> Result<WirtingerPresentation, InvariantError> {
    d.require_knot()?;
    if d.is_unknot_diagram() {
        return Ok(WirtingerPresentation { generators: 1, relations: Vec::new() });
    }
    let (gen, count) = overarcs(d);
    let g = |label: u32| gen[label as usize - 1];
    let relations = d
        .crossings()
        .iter()
        .map(|c| WirtingerRelation { i: g(c.arcs[0]), j: g(c.arcs[1]), k: g(c.arcs[2]), eps: c.sign })
        .collect();
    Ok(WirtingerPresentation { generators: count, relations })
}

impl WirtingerPresentation {
    /// Fox derivatives of each relator `x_j^eps x_i x_j^-eps x_k^-1` under
    /// abelianization `x -> t`, rows for negative crossings scaled by `t`.
    pub fn alexander_matrix(&self) -> AlexanderMatrix {
        let mut entries = vec![vec![LaurentPoly::zero(); self.generators]; self.relations.len()];
        for (row, r) in entries.iter_mut().zip(&self.relations) {
            let (ci, cj, ck) = if r.eps > 0 {
                (LaurentPoly::monomial(1, 1), LaurentPoly::from_terms([(0, 1), (1, -1)]), LaurentPoly::constant(-1))
            } else {
                (LaurentPoly::one(), LaurentPoly::from_terms([(1, 1), (0, -1)]), LaurentPoly::monomial(-1, 1))
            };
            row[r.i] = &row[r.i] + &ci;
            row[r.j] = &row[r.j] + &cj;
            row[r.k] = &row[r.k] + &ck;
        }
        AlexanderMatrix { entries }
    }

    /// Rank of `H_1` of the presented group's abelianization (free part).
    pub fn first_homology_rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::zero(); self.generators];
                row[r.i] += 1;
                row[r.k] -= 1;
                row
            })
            .collect();
        self.generators - rank_over_q(rows)
    }
}

fn rank_over_q(mut m: Vec<Vec<BigInt>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let (a, b) = (m[rank][col].clone(), m[r][col].clone());
                for c in 0..cols {
                    m[r][c] = &m[r][c] * &a - &m[rank][c] * &b;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for WirtingerPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|g| format!("x{g}")).collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| {
                let (a, b) = if r.eps > 0 { ("", "^-1") } else { ("^-1", "") };
                format!("x{} = x{}{a} x{} x{}{b}", r.k + 1, r.j + 1, r.i + 1, r.j + 1)
            })
            .collect();
        if rels.is_empty() {
            write!(f, "<{} | >", gens.join(", "))
        } else {
            write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
        }
    }
}

impl AlexanderMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// Determinant of the minor with the given row and column removed.
    pub fn minor_determinant(&self, row: usize, col: usize) -> LaurentPoly {
        let m: Vec<Vec<LaurentPoly>> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != row)
            .map(|(_, line)| line.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
            .collect();
        bareiss_determinant(m)
    }
}

/// Fraction-free determinant over the Laurent ring.
pub fn bareiss_determinant(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            // Prefer the sparsest nonzero pivot.
            let Some(p) = (k + 1..n).filter(|&r| !m[r][k].is_zero()).min_by_key(|&r| m[r][k].num_terms()) else {
                return LaurentPoly::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss quotient is exact");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Alexander polynomial in canonical form (lowest exponent 0, positive
/// leading coefficient).
pub fn alexander_polynomial(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    let w = wirtinger_presentation(d)?;
    if w.relations.is_empty() {
        return Ok(LaurentPoly::one());
    }
    let m = w.alexander_matrix();
    let det = m.minor_determinant(m.rows() - 1, w.generators - 1);
    Ok(det.normalize_up_to_units().expect("Alexander polynomial of a knot is nonzero"))
}

/// `|Δ(-1)|`.
pub fn knot_determinant(d: &PlanarDiagram) -> Result<u64, InvariantError> {
    let delta = alexander_polynomial(d)?;
    let v = delta.eval_int(-1).expect("nonzero evaluation point");
    v.to_integer()
        .abs()
        .to_u64()
        .ok_or_else(|| InvariantError::TooLarge("determinant exceeds u64".into()))
}

/// Half the degree span of the Alexander polynomial.
pub fn genus_lower_bound(d: &PlanarDiagram) -> Result<u64, InvariantError> {
    Ok(alexander_polynomial(d)?.degree_span().expect("Alexander polynomial is nonzero") / 2)
}

fn check_odd_prime(p: u64) -> Result<(), InvariantError> {
    let prime = p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q));
    if prime {
        Ok(())
    } else {
        Err(InvariantError::InvalidPrime(p))
    }
}

/// Dimension of the space of Fox `p`-colorings: the nullity of the matrix with
/// rows `2*over - in - out` over `F_p`.
pub fn coloring_nullity(d: &PlanarDiagram, p: u64) -> Result<usize, InvariantError> {
    check_odd_prime(p)?;
    let w = wirtinger_presentation(d)?;
    let mut rows: Vec<Vec<u64>> = w
        .relations
        .iter()
        .map(|r| {
            let mut row = vec![0u64; w.generators];
            row[r.j] = (row[r.j] + 2) % p;
            row[r.i] = (row[r.i] + p - 1) % p;
            row[r.k] = (row[r.k] + p - 1) % p;
            row
        })
        .collect();
    Ok(w.generators - rank_mod_p(&mut rows, p))
}

pub(crate) fn rank_mod_p(m: &mut [Vec<u64>], p: u64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |a: u64| mod_pow(a, p - 2, p);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let s = inv(m[rank][col]);
        for c in 0..cols {
            m[rank][c] = m[rank][c] * s % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..cols {
                    m[r][c] = (m[r][c] + p * p - f * m[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Number of Fox `p`-colorings (including the `p` constant ones).
pub fn fox_colorings_count(d: &PlanarDiagram, p: u64) -> Result<BigUint, InvariantError> {
    let nullity = coloring_nullity(d, p)?;
    Ok(BigUint::from(p).pow(nullity as u32))
}

/// Brute-force homomorphism count into the symmetric group `S_3`, with
/// constraint propagation. Only for presentations with at most 12 generators.
pub fn count_s3_homomorphisms(w: &WirtingerPresentation) -> Result<u64, InvariantError> {
    const LIMIT: usize = 12;
    if w.generators > LIMIT {
        return Err(InvariantError::TooLarge(format!("{} generators (limit {LIMIT})", w.generators)));
    }
    let mut assign = vec![None; w.generators];
    Ok(count_from(w, &mut assign))
}

type Perm = [u8; 3];

fn compose(a: Perm, b: Perm) -> Perm {
    // (a ∘ b)(x) = a(b(x))
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
}

fn inverse(a: Perm) -> Perm {
    let mut out = [0; 3];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

const S3: [Perm; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn conj(j: Perm, x: Perm, eps: i8) -> Perm {
    if eps > 0 {
        compose(compose(j, x), inverse(j))
    } else {
        compose(compose(inverse(j), x), j)
    }
}

fn count_from(w: &WirtingerPresentation, assign: &mut [Option<Perm>]) -> u64 {
    let saved = assign.to_vec();
    // Propagate: x_k determined by (x_i, x_j); x_i by (x_k, x_j).
    loop {
        let mut changed = false;
        for r in &w.relations {
            let (i, j, k) = (assign[r.i], assign[r.j], assign[r.k]);
            match (i, j, k) {
                (Some(xi), Some(xj), Some(xk)) => {
                    if conj(xj, xi, r.eps) != xk {
                        assign.copy_from_slice(&saved);
                        return 0;
                    }
                }
                (Some(xi), Some(xj), None) => {
                    assign[r.k] = Some(conj(xj, xi, r.eps));
                    changed = true;
                }
                (None, Some(xj), Some(xk)) => {
                    assign[r.i] = Some(conj(xj, xk, -r.eps));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let total = match assign.iter().position(|a| a.is_none()) {
        None => 1,
        Some(g) => {
            let mut sum = 0;
            for p in S3 {
                assign[g] = Some(p);
                sum += count_from(w, assign);
                assign[g] = None;
            }
            sum
        }
    };
    assign.copy_from_slice(&saved);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pd(s: &str) -> PlanarDiagram {
        PlanarDiagram::parse_pd(s).unwrap()
    }

    fn trefoil() -> PlanarDiagram {
        pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    }

    fn fig8() -> PlanarDiagram {
        pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")
    }

    #[test]
    fn unknot_presentation() {
        let w = wirtinger_presentation(&PlanarDiagram::unknot()).unwrap();
        assert_eq!(w.to_string(), "<x1 | >");
        assert_eq!(w.first_homology_rank(), 1);
        assert_eq!(alexander_polynomial(&PlanarDiagram::unknot()).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_values() {
        let t = trefoil();
        let w = wirtinger_presentation(&t).unwrap();
        assert_eq!((w.generators, w.relations.len()), (3, 3));
        assert_eq!(alexander_polynomial(&t).unwrap().to_string(), "t^2 - t + 1");
        assert_eq!(knot_determinant(&t).unwrap(), 3);
        assert_eq!(genus_lower_bound(&t).unwrap(), 1);
        assert_eq!(fox_colorings_count(&t, 3).unwrap(), BigUint::from(9u32));
        assert_eq!(fox_colorings_count(&t, 5).unwrap(), BigUint::from(5u32));
        assert!(count_s3_homomorphisms(&w).unwrap() > 6);
    }

    #[test]
    fn figure_eight_values() {
        let f = fig8();
        assert_eq!(alexander_polynomial(&f).unwrap().to_string(), "t^2 - 3*t + 1");
        assert_eq!(knot_determinant(&f).unwrap(), 5);
        assert_eq!(fox_colorings_count(&f, 5).unwrap(), BigUint::from(25u32));
        assert_eq!(fox_colorings_count(&f, 3).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn invalid_primes_rejected() {
        for p in [0, 1, 2, 9, 15] {
            assert!(matches!(fox_colorings_count(&trefoil(), p), Err(InvariantError::InvalidPrime(_))));
        }
    }

    #[test]
    fn link_rejected() {
        let hopf = pd("X[4,1,3,2] X[2,3,1,4]");
        assert!(alexander_polynomial(&hopf).is_err());
        assert!(wirtinger_presentation(&hopf).is_err());
    }

    /// Brute-force coloring count: every labeling of arcs by Z/p.
    fn brute_colorings(d: &PlanarDiagram, p: u64) -> u64 {
        let w = wirtinger_presentation(d).unwrap();
        let n = w.generators as u32;
        (0..p.pow(n))
            .filter(|&code| {
                let col: Vec<u64> = (0..n).map(|g| code / p.pow(g) % p).collect();
                w.relations.iter().all(|r| (2 * col[r.j] + 2 * p - col[r.i] - col[r.k]).is_multiple_of(p))
            })
            .count() as u64
    }

    #[test]
    fn colorings_match_brute_force() {
        for d in [trefoil(), fig8(), PlanarDiagram::unknot()] {
            for p in [3, 5, 7] {
                assert_eq!(fox_colorings_count(&d, p).unwrap(), BigUint::from(brute_colorings(&d, p)));
            }
        }
    }

    /// Column-deletion independence up to units.
    #[test]
    fn every_minor_agrees() {
        for d in [trefoil(), fig8()] {
            let m = wirtinger_presentation(&d).unwrap().alexander_matrix();
            let reference = alexander_polynomial(&d).unwrap();
            for r in 0..m.rows() {
                for c in 0..m.rows() {
                    assert!(m.minor_determinant(r, c).equal_up_to_units(&reference));
                }
            }
        }
    }

    /// Smith normal form over the integers: returns the diagonal.
    fn smith_diagonal(mut m: Vec<Vec<i64>>) -> Vec<i64> {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pr, pc)) = (t..rows)
                .flat_map(|r| (t..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| m[r][c] != 0)
                .min_by_key(|&(r, c)| m[r][c].abs())
            else {
                break;
            };
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
            let mut clean = true;
            for r in t + 1..rows {
                let q = m[r][t] / m[t][t];
                for c in t..cols {
                    m[r][c] -= q * m[t][c];
                }
                clean &= m[r][t] == 0;
            }
            for c in t + 1..cols {
                let q = m[t][c] / m[t][t];
                for r in t..rows {
                    m[r][c] -= q * m[r][t];
                }
                clean &= m[t][c] == 0;
            }
            if clean {
                diag.push(m[t][t].abs());
                t += 1;
            }
        }
        diag
    }

    #[test]
    fn abelianization_is_z() {
        for d in [trefoil(), fig8()] {
            let w = wirtinger_presentation(&d).unwrap();
            let m: Vec<Vec<i64>> = w
                .relations
                .iter()
                .map(|r| {
                    let mut row = vec![0; w.generators];
                    row[r.i] += 1;
                    row[r.k] -= 1;
                    row
                })
                .collect();
            let diag = smith_diagonal(m);
            assert!(diag.iter().all(|&x| x == 1));
            assert_eq!(w.generators - diag.len(), 1);
            assert_eq!(w.first_homology_rank(), 1);
        }
    }

    proptest! {
        #[test]
        fn alexander_symmetric(k in 0usize..4) {
            let d = [trefoil(), fig8(), trefoil().mirror(), fig8().mirror()][k].clone();
            let a = alexander_polynomial(&d).unwrap();
            prop_assert!(a.invert_variable().equal_up_to_units(&a));
            prop_assert_eq!(a.eval_int(1).unwrap().to_integer().abs(), BigInt::from(1));
            prop_assert!(knot_determinant(&d).unwrap() % 2 == 1);
        }
    }
}
