//! Bigraded rank tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::laurent::{BivariatePoly, LaurentPoly};

/// Ranks of a bigraded vector space, keyed by `(i, q)`. Zero ranks are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BigradedRanks {
    #[serde(with = "pairs")]
    ranks: BTreeMap<(i64, i64), usize>,
}

impl BigradedRanks {
    pub fn add(&mut self, i: i64, q: i64, n: usize) {
        if n > 0 {
            *self.ranks.entry((i, q)).or_default() += n;
        }
    }

    pub fn get(&self, i: i64, q: i64) -> usize {
        self.ranks.get(&(i, q)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.ranks.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }

    /// `sum (-1)^i q^j rank`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, q), &r) in &self.ranks {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(q, BigInt::from(sign * r as i64));
        }
        p
    }

    /// `sum u^i q^j rank`.
    pub fn poincare_polynomial(&self) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        for (&(i, q), &r) in &self.ranks {
            p.add_term(i, q, BigInt::from(r));
        }
        p
    }
}

impl FromIterator<((i64, i64), usize)> for BigradedRanks {
    fn from_iter<I: IntoIterator<Item = ((i64, i64), usize)>>(iter: I) -> Self {
        let mut r = BigradedRanks::default();
        for ((i, q), n) in iter {
            r.add(i, q, n);
        }
        r
    }
}

impl fmt::Display for BigradedRanks {
    /// Table with one row per `q` (descending) and one column per `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranks.is_empty() {
            return writeln!(f, "(zero)");
        }
        let is: Vec<i64> = {
            let lo = self.ranks.keys().map(|k| k.0).min().unwrap();
            let hi = self.ranks.keys().map(|k| k.0).max().unwrap();
            (lo..=hi).collect()
        };
        let mut qs: Vec<i64> = self.ranks.keys().map(|k| k.1).collect();
        qs.sort_unstable();
        qs.dedup();
        write!(f, "{:>6} |", "q\\i")?;
        for i in &is {
            write!(f, "{i:>4}")?;
        }
        writeln!(f)?;
        for q in qs.iter().rev() {
            write!(f, "{q:>6} |")?;
            for &i in &is {
                match self.get(i, *q) {
                    0 => write!(f, "{:>4}", ".")?,
                    r => write!(f, "{r:>4}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Entry {
        i: i64,
        j: i64,
        rank: usize,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(i64, i64), usize>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(&(i, q), &rank)| Entry { i, j: q, rank }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(i64, i64), usize>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter().filter(|e| e.rank > 0).map(|e| ((e.i, e.j), e.rank)).collect())
    }
}
