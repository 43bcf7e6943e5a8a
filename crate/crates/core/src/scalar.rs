//! Coefficient domains.
//!
//! Everything polynomial in this crate is generic over [`Field`]: an exact
//! field of characteristic zero. The two implementations are the rationals
//! and elements of a number-field tower ([`crate::numfield::FieldElement`]).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// The value as a rational number, if it is one.
    fn to_rational(&self) -> Option<Rational>;

    /// True when the printed form is a single signed term, so it can be
    /// used as a coefficient without parentheses.
    fn is_atomic(&self) -> bool;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_atomic(&self) -> bool {
        true
    }
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Writes `coeff * monomial` as one signed term. `first` controls whether a
/// leading `+` is dropped. `monomial` may be empty for the constant term.
pub(crate) fn write_term<K: Field>(out: &mut String, coeff: &K, monomial: &str, first: bool) {
    let text = coeff.to_string();
    let (negative, body) = if coeff.is_atomic() {
        match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        }
    } else {
        (false, format!("({text})"))
    };
    if first {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    if monomial.is_empty() {
        out.push_str(&body);
    } else if body == "1" {
        out.push_str(monomial);
    } else {
        out.push_str(&body);
        out.push('*');
        out.push_str(monomial);
    }
}
