//! Coefficient fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Exact coefficient field used by the chain complexes.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const CHOICE: FieldChoice;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Which field to compute over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldChoice {
    F2,
    Q,
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldChoice::F2 => "F2",
            FieldChoice::Q => "Q",
        })
    }
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "F2" | "Z2" | "2" => Ok(FieldChoice::F2),
            "Q" | "QQ" | "0" => Ok(FieldChoice::Q),
            other => Err(format!("unknown field `{other}` (expected F2 or Q)")),
        }
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct F2(pub bool);

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl Field for F2 {
    const CHOICE: FieldChoice = FieldChoice::F2;

    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn from_i64(n: i64) -> Self {
        F2(n.rem_euclid(2) == 1)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        F2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        assert!(self.0, "inverse of zero");
        *self
    }
}

/// Rational numbers. Small values stay on machine integers; anything that
/// would overflow moves to arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(BigRational),
}

impl Q {
    fn small(n: i64, d: i64) -> Self {
        debug_assert!(d > 0);
        let g = num_integer::gcd(n, d).max(1);
        let (n, d) = (n / g, d / g);
        if n.unsigned_abs() < 1 << 62 && d < 1 << 62 {
            Q::Small(n, d)
        } else {
            Q::Big(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn big(r: BigRational) -> Self {
        use num_traits::ToPrimitive;
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n.unsigned_abs() < 1 << 62 && d < 1 << 62 => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

impl Field for Q {
    const CHOICE: FieldChoice = FieldChoice::Q;

    fn zero() -> Self {
        Q::Small(0, 1)
    }
    fn one() -> Self {
        Q::Small(1, 1)
    }
    fn from_i64(n: i64) -> Self {
        Q::Small(n, 1)
    }
    fn is_zero(&self) -> bool {
        match self {
            Q::Small(n, _) => *n == 0,
            Q::Big(r) => r.is_zero(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        if let (Q::Small(a, b), Q::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Q::Small(s, 1);
                }
            }
            let num = a.checked_mul(*d).and_then(|x| c.checked_mul(*b).and_then(|y| x.checked_add(y)));
            if let (Some(n), Some(den)) = (num, b.checked_mul(*d)) {
                return Q::small(n, den);
            }
        }
        Q::big(self.to_rational() + other.to_rational())
    }
    fn mul(&self, other: &Self) -> Self {
        if let (Q::Small(a, b), Q::Small(c, d)) = (self, other) {
            if let (Some(n), Some(den)) = (a.checked_mul(*c), b.checked_mul(*d)) {
                return Q::small(n, den);
            }
        }
        Q::big(self.to_rational() * other.to_rational())
    }
    fn neg(&self) -> Self {
        match self {
            Q::Small(n, d) => Q::Small(-n, *d),
            Q::Big(r) => Q::Big(-r),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Q::Small(n, d) if *n < 0 => Q::Small(-d, -n),
            Q::Small(n, d) => Q::Small(*d, *n),
            Q::Big(r) => Q::big(r.recip()),
        }
    }
    fn is_one(&self) -> bool {
        match self {
            Q::Small(n, d) => *n == 1 && *d == 1,
            Q::Big(r) => r.is_one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f2_arithmetic() {
        assert_eq!(F2::from_i64(-3), F2::one());
        assert_eq!(F2::one().add(&F2::one()), F2::zero());
        assert_eq!(F2::from_i64(2), F2::zero());
    }

    #[test]
    fn q_overflow_promotes() {
        let big = Q::from_i64(i64::MAX / 2);
        let sq = big.mul(&big);
        assert!(matches!(sq, Q::Big(_)));
        assert_eq!(sq.mul(&big.inv()), big);
    }

    proptest! {
        #[test]
        fn q_matches_bigrational(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let (x, y) = (Q::small(a, b), Q::small(c, d));
            let (rx, ry) = (x.to_rational(), y.to_rational());
            prop_assert_eq!(x.add(&y).to_rational(), &rx + &ry);
            prop_assert_eq!(x.mul(&y).to_rational(), &rx * &ry);
            prop_assert_eq!(x.sub(&y).to_rational(), &rx - &ry);
            if !x.is_zero() {
                prop_assert_eq!(x.inv().to_rational(), rx.recip());
                prop_assert!(x.mul(&x.inv()).is_one());
            }
        }
    }
}
