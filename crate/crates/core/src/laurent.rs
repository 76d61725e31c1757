//! Exact Laurent polynomials with integer coefficients.
//!
//! `LaurentPoly` is the workhorse for Alexander and Jones polynomials;
//! `BivariatePoly` holds Khovanov Poincaré polynomials in `(u, q)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Sparse one-variable Laurent polynomial over the integers.
///
/// No zero coefficient is ever stored, so structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^exp`
    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^k` (k may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Divides every exponent by `k`, failing if some exponent is not a multiple.
    pub fn divide_exponents(&self, k: i64) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e % k != 0 {
                return None;
            }
            out.add_term(e / k, c.clone());
        }
        Some(out)
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, PolyError> {
        if x.is_zero() {
            return Err(PolyError::EvalAtZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let pw = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), e.unsigned_abs() as usize)
            };
            acc += BigRational::from_integer(c.clone()) * pw;
        }
        Ok(acc)
    }

    pub fn eval_int(&self, x: i64) -> Result<BigRational, PolyError> {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dhi = divisor.max_exp()?;
        let dlead = divisor.terms[&dhi].clone();
        let dlo = divisor.min_exp()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_exp() {
            if hi - dhi < rem.min_exp()? - dlo {
                return None;
            }
            let c = &rem.terms[&hi];
            if !(c % &dlead).is_zero() {
                return None;
            }
            let step = Self::monomial(c / &dlead, hi - dhi);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Canonical representative of `±t^k * self`: lowest exponent 0 and
    /// positive leading coefficient.
    pub fn normalize_up_to_units(&self) -> Result<Self, PolyError> {
        let lo = self.min_exp().ok_or(PolyError::ZeroPolynomial)?;
        let shifted = self.shift(-lo);
        let lead_negative = shifted
            .terms
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative());
        Ok(if lead_negative { -shifted } else { shifted })
    }

    /// Whether `self = ±t^k * other` for some `k`.
    pub fn equal_up_to_units(&self, other: &Self) -> bool {
        match (self.normalize_up_to_units(), other.normalize_up_to_units()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Max exponent minus min exponent.
    pub fn degree_span(&self) -> Result<u64, PolyError> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as u64),
            _ => Err(PolyError::ZeroPolynomial),
        }
    }

    /// Renders in decreasing exponent order using the given variable name.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Parses the text form produced by [`LaurentPoly::to_text`]. Also accepts
    /// `t^(-2)` and terms in any order.
    pub fn parse(text: &str, var: &str) -> Result<Self, PolyError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if i > start && depth == 0 && bytes[i - 1] != b'^' => {
                    pieces.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        let mut p = Self::zero();
        for piece in pieces {
            let (exp, c) = parse_term(piece, var)?;
            p.add_term(exp, c);
        }
        Ok(p)
    }
}

fn parse_term(piece: &str, var: &str) -> Result<(i64, BigInt), PolyError> {
    let bad = || PolyError::Parse(format!("bad term `{piece}`"));
    let (sign, body) = match piece.as_bytes().first() {
        Some(b'-') => (-1, &piece[1..]),
        Some(b'+') => (1, &piece[1..]),
        _ => (1, piece),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coef_str, mono) = match body.find(var) {
        None => (body, None),
        Some(pos) => {
            let coef = body[..pos].trim_end_matches('*');
            (coef, Some(&body[pos + var.len()..]))
        }
    };
    let coef: BigInt = if coef_str.is_empty() {
        BigInt::one()
    } else {
        coef_str.parse().map_err(|_| bad())?
    };
    let exp = match mono {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let rest = rest.strip_prefix('^').ok_or_else(bad)?;
            let rest = rest.trim_start_matches('(').trim_end_matches(')');
            rest.parse::<i64>().map_err(|_| bad())?
        }
    };
    Ok((exp, coef * sign))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_text("t"))
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, "t")
    }
}

/// Serialized in text form, e.g. `"t^2 - t + 1"`.
impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text("t"))
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

/// Sparse two-variable Laurent polynomial in `(u, q)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, u_exp: i64, q_exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((u_exp, q_exp)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(u_exp, q_exp));
        }
    }

    pub fn coeff(&self, u_exp: i64, q_exp: i64) -> BigInt {
        self.terms.get(&(u_exp, q_exp)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Specializes `u` to an integer unit (`u = -1` gives the graded Euler characteristic).
    pub fn specialize_u(&self, u: i64) -> LaurentPoly {
        assert!(u == 1 || u == -1, "only unit specializations stay integral");
        LaurentPoly::from_terms(self.terms.iter().map(|((i, j), c)| {
            let sign = if u == -1 && i.rem_euclid(2) == 1 { -1 } else { 1 };
            (*j, c * sign)
        }))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((i, j), c) in &self.terms {
            let mut mono = Vec::new();
            if *i != 0 {
                mono.push(if *i == 1 { "u".to_string() } else { format!("u^{i}") });
            }
            if *j != 0 {
                mono.push(if *j == 1 { "q".to_string() } else { format!("q^{j}") });
            }
            let m = mono.join("*");
            parts.push(match (c.is_one(), m.is_empty()) {
                (_, true) => c.to_string(),
                (true, false) => m,
                (false, false) => format!("{c}*{m}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly({})", self.to_text())
    }
}
