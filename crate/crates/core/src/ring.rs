//! Exact commutative unital rings: the integers, the rationals and the
//! residue rings `Z/mZ` for any modulus `m >= 2`.
//!
//! Elements carry their [`RingSpec`] and are always stored in canonical form,
//! so structural equality is ring equality. The arithmetic operators on
//! references panic when the operands belong to different rings; the
//! `checked_*` methods report [`Error::RingMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    Residues { modulus: u64 },
}

impl RingSpec {
    pub fn residues(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(RingSpec::Residues { modulus })
    }

    pub fn zero(self) -> RingElem {
        RingElem::from_i64(self, 0)
    }

    pub fn one(self) -> RingElem {
        RingElem::from_i64(self, 1)
    }

    /// Selector string accepted by [`FromStr`]: `z`, `q` or `zmod:<m>`.
    pub fn selector(self) -> String {
        match self {
            RingSpec::Integers => "z".to_string(),
            RingSpec::Rationals => "q".to_string(),
            RingSpec::Residues { modulus } => format!("zmod:{modulus}"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Residues { modulus } => write!(f, "Z/{modulus}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(RingSpec::Integers),
            "q" => Ok(RingSpec::Rationals),
            _ => {
                let m = s
                    .strip_prefix("zmod:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRingSelector(s.to_string()))?;
                RingSpec::residues(m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
}

/// An exact scalar in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    spec: RingSpec,
    value: Value,
}

fn reduce(n: &BigInt, modulus: u64) -> u64 {
    n.mod_floor(&BigInt::from(modulus))
        .to_u64()
        .expect("residue below a u64 modulus")
}

/// Inverse of `n` modulo `m`, if it exists.
fn mod_inverse(n: u64, m: u64) -> Option<u64> {
    let egcd = (n as i128).extended_gcd(&(m as i128));
    if egcd.gcd != 1 {
        return None;
    }
    Some(egcd.x.rem_euclid(m as i128) as u64)
}

impl RingElem {
    pub fn from_i64(spec: RingSpec, n: i64) -> Self {
        Self::from_bigint(spec, BigInt::from(n))
    }

    pub fn from_bigint(spec: RingSpec, n: BigInt) -> Self {
        let value = match spec {
            RingSpec::Integers => Value::Int(n),
            RingSpec::Rationals => Value::Rat(BigRational::from_integer(n)),
            RingSpec::Residues { modulus } => Value::Res(reduce(&n, modulus)),
        };
        RingElem { spec, value }
    }

    /// A fraction `num/den`; only available over the rationals.
    pub fn from_fraction(spec: RingSpec, num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        match spec {
            RingSpec::Rationals => Ok(RingElem {
                spec,
                value: Value::Rat(BigRational::new(num, den)),
            }),
            _ => Err(Error::FractionOutsideRationals(format!("{num}/{den}"))),
        }
    }

    /// Parses an optional sign, decimal digits and (over the rationals only)
    /// an optional `/denominator`.
    pub fn parse(spec: RingSpec, text: &str) -> Result<Self> {
        let bad = || Error::ScalarParse(text.to_string());
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let digits = num_text.strip_prefix(['+', '-']).unwrap_or(num_text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num = BigInt::from_str(num_text).map_err(|_| bad())?;
        match den_text {
            None => Ok(Self::from_bigint(spec, num)),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                if spec != RingSpec::Rationals {
                    return Err(Error::FractionOutsideRationals(text.to_string()));
                }
                let den = BigInt::from_str(d).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator(text.to_string()));
                }
                Self::from_fraction(spec, num, den)
            }
        }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Rat(q) => q.is_zero(),
            Value::Res(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_one(),
            Value::Rat(q) => q.is_one(),
            Value::Res(r) => *r == 1,
        }
    }

    fn same_ring(&self, other: &RingElem) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        self.same_ring(other)?;
        Ok(self.add_same(other))
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.same_ring(other)?;
        Ok(self.add_same(&other.negated()))
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.same_ring(other)?;
        Ok(self.mul_same(other))
    }

    pub fn negated(&self) -> RingElem {
        let value = match (&self.value, self.spec) {
            (Value::Int(n), _) => Value::Int(-n),
            (Value::Rat(q), _) => Value::Rat(-q),
            (Value::Res(r), RingSpec::Residues { modulus }) => {
                Value::Res(if *r == 0 { 0 } else { modulus - r })
            }
            _ => unreachable!("value kind always matches spec"),
        };
        RingElem { spec: self.spec, value }
    }

    /// Divides by a positive integer, which must be a unit of the ring.
    /// Over `Z` only `n = 1` qualifies.
    pub fn div_int(&self, n: u64) -> Result<RingElem> {
        let not_invertible = || Error::NotInvertible {
            n,
            ring: self.spec.to_string(),
        };
        if n == 0 {
            return Err(not_invertible());
        }
        let value = match (&self.value, self.spec) {
            (Value::Int(v), _) if n == 1 => Value::Int(v.clone()),
            (Value::Int(_), _) => return Err(not_invertible()),
            (Value::Rat(q), _) => Value::Rat(q / BigRational::from_integer(BigInt::from(n))),
            (Value::Res(r), RingSpec::Residues { modulus }) => {
                let inv = mod_inverse(n % modulus, modulus).ok_or_else(not_invertible)?;
                Value::Res(((*r as u128 * inv as u128) % modulus as u128) as u64)
            }
            _ => unreachable!("value kind always matches spec"),
        };
        Ok(RingElem { spec: self.spec, value })
    }

    fn add_same(&self, other: &RingElem) -> RingElem {
        let value = match (&self.value, &other.value, self.spec) {
            (Value::Int(a), Value::Int(b), _) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b), _) => Value::Rat(a + b),
            (Value::Res(a), Value::Res(b), RingSpec::Residues { modulus }) => {
                Value::Res(((*a as u128 + *b as u128) % modulus as u128) as u64)
            }
            _ => unreachable!("value kind always matches spec"),
        };
        RingElem { spec: self.spec, value }
    }

    fn mul_same(&self, other: &RingElem) -> RingElem {
        let value = match (&self.value, &other.value, self.spec) {
            (Value::Int(a), Value::Int(b), _) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b), _) => Value::Rat(a * b),
            (Value::Res(a), Value::Res(b), RingSpec::Residues { modulus }) => {
                Value::Res(((*a as u128 * *b as u128) % modulus as u128) as u64)
            }
            _ => unreachable!("value kind always matches spec"),
        };
        RingElem { spec: self.spec, value }
    }

    /// Rebuilds the element from its printed form. Canonical elements are
    /// fixed points of this map.
    pub fn recanonicalize(&self) -> RingElem {
        Self::parse(self.spec, &self.to_string()).expect("printed scalars parse")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Value::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Value::Res(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! ring_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RingElem> for &RingElem {
            type Output = RingElem;

            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$checked(rhs).expect("ring mismatch in scalar arithmetic")
            }
        }

        impl $trait for RingElem {
            type Output = RingElem;

            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
    };
}

ring_binop!(Add, add, checked_add);
ring_binop!(Sub, sub, checked_sub);
ring_binop!(Mul, mul, checked_mul);

impl Neg for &RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        self.negated()
    }
}

impl Neg for RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        self.negated()
    }
}
