//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! All linear algebra in this crate is generic over [`Scalar`], a small
//! field trait layered on top of `num_traits::{Zero, One}`. Two scalars
//! are provided: [`crate::Rat`] (= `num_rational::BigRational`) and
//! [`Fp`], residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Which exact field a document or computation runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Parses `"rational"` or `"fp:<p>"`.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| FieldError::BadSpec(s.to_string()))?;
            if !is_prime(p) {
                return Err(FieldError::NotPrime(p));
            }
            return Ok(FieldSpec::Prime(p));
        }
        Err(FieldError::BadSpec(s.to_string()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("cannot parse field spec `{0}` (expected `rational` or `fp:<p>`)")]
    BadSpec(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse `{0}` as a scalar over {1}")]
    BadScalar(String, FieldSpec),
    #[error("scalar `{0}` does not belong to {1}")]
    WrongField(String, FieldSpec),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. `Zero + One` come from `num_traits`; on top of
/// that we only need subtraction, negation and exact inversion.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Embeds a small integer literal.
    fn from_int(n: i64) -> Self;

    /// Parses a scalar in the context of a field spec. Rationals accept
    /// `p/q` strings; prime fields accept integers (optionally `a/b`).
    fn parse(s: &str, spec: &FieldSpec) -> Result<Self, FieldError>;

    /// Whether this value lives in the field described by `spec`.
    fn matches_spec(&self, spec: &FieldSpec) -> bool;
}

impl Scalar for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn parse(s: &str, spec: &FieldSpec) -> Result<Self, FieldError> {
        if *spec != FieldSpec::Rational {
            return Err(FieldError::WrongField(s.to_string(), spec.clone()));
        }
        s.trim()
            .parse::<BigRational>()
            .map_err(|_| FieldError::BadScalar(s.to_string(), spec.clone()))
    }

    fn matches_spec(&self, spec: &FieldSpec) -> bool {
        *spec == FieldSpec::Rational
    }
}

/// Element of a prime field `F_p`.
///
/// The modulus travels with the value. Elements produced by `zero()` /
/// `one()` / `from_int` carry modulus 0, meaning "integer literal not yet
/// reduced"; they unify with a genuine residue the first time they meet
/// one in an arithmetic operation or comparison. Mixing two distinct
/// nonzero moduli is a programming error and panics.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        assert!(modulus < (1 << 31), "modulus must fit in 31 bits");
        Fp {
            value: value.rem_euclid(modulus as i64),
            modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    /// Reduces an integer literal into the modulus of `other`, when known.
    fn unify(self, other: &Fp) -> Fp {
        if self.modulus == 0 && other.modulus != 0 {
            Fp::new(self.value, other.modulus)
        } else {
            self
        }
    }

    fn check_same(a: &Fp, b: &Fp) {
        if a.modulus != 0 && b.modulus != 0 && a.modulus != b.modulus {
            panic!("mixed prime-field moduli {} and {}", a.modulus, b.modulus);
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        Fp::check_same(self, other);
        // after unification both sides carry the same modulus
        let a = self.unify(other);
        let b = other.unify(self);
        a.value == b.value
    }
}

impl Eq for Fp {}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        Fp::check_same(&self, &rhs);
        let a = self.unify(&rhs);
        let b = rhs.unify(&self);
        if a.modulus == 0 {
            Fp {
                value: a.value.checked_add(b.value).expect("literal overflow"),
                modulus: 0,
            }
        } else {
            Fp::new(a.value + b.value, a.modulus)
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            Fp {
                value: -self.value,
                modulus: 0,
            }
        } else {
            Fp::new(-self.value, self.modulus)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp::check_same(&self, &rhs);
        let a = self.unify(&rhs);
        let b = rhs.unify(&self);
        if a.modulus == 0 {
            Fp {
                value: a.value.checked_mul(b.value).expect("literal overflow"),
                modulus: 0,
            }
        } else {
            let v = (a.value as i128 * b.value as i128).rem_euclid(a.modulus as i128);
            Fp {
                value: v as i64,
                modulus: a.modulus,
            }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

impl Scalar for Fp {
    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        if self.modulus == 0 {
            return match self.value {
                1 => Some(*self),
                -1 => Some(*self),
                _ => panic!("inverse of integer literal {} without modulus", self.value),
            };
        }
        // extended Euclid
        let (mut r0, mut r1) = (self.modulus as i64, self.value);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus not prime?");
        Some(Fp::new(t0, self.modulus))
    }

    fn from_int(n: i64) -> Self {
        Fp {
            value: n,
            modulus: 0,
        }
    }

    fn parse(s: &str, spec: &FieldSpec) -> Result<Self, FieldError> {
        let p = match spec {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => {
                return Err(FieldError::WrongField(s.to_string(), spec.clone()))
            }
        };
        let bad = || FieldError::BadScalar(s.to_string(), spec.clone());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            let d: i64 = den.trim().parse().map_err(|_| bad())?;
            let d = Fp::new(d, p);
            let inv = d.inverse().ok_or_else(bad)?;
            Ok(Fp::new(n, p) * inv)
        } else {
            let n: i64 = s.parse().map_err(|_| bad())?;
            Ok(Fp::new(n, p))
        }
    }

    fn matches_spec(&self, spec: &FieldSpec) -> bool {
        match spec {
            FieldSpec::Prime(p) => self.modulus == 0 || self.modulus == *p,
            FieldSpec::Rational => false,
        }
    }
}

/// Formats a rational for reports: integers print bare, otherwise `p/q`.
pub fn rat_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Convenience: builds a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    assert!(d != 0);
    BigRational::new(n.into(), d.into())
}

/// True when the rational is a (possibly negative) integer.
pub fn rat_is_integer(x: &BigRational) -> bool {
    x.denom().is_one() || x.denom().abs().is_one()
}
