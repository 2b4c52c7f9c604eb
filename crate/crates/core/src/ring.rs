//! Coefficient rings used throughout the crate.
//!
//! Rings are context objects: elements are plain values and every operation
//! goes through the ring, so that finite-field elements can stay small
//! `Copy` indices while the tables live in the shared field context.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity.
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Characteristic, `0` for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Human-readable rendering of an element.
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// True when rendering needs parentheses inside a product.
    fn needs_parens(&self, a: &Self::Elem) -> bool {
        let s = self.render(a);
        s[1..].contains(['+', '-'])
    }
}

/// An integral domain with exact division.
pub trait Domain: Ring {
    /// `a / b` when `b` divides `a`, otherwise `None`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

/// A field.
pub trait FieldRing: Domain {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl Domain for Integers {
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(a, b);
        r.is_zero().then_some(q)
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
    fn needs_parens(&self, a: &BigRational) -> bool {
        !a.is_integer() && a.is_negative()
    }
}

impl Domain for Rationals {
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
}

impl FieldRing for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn render_rational(a: &BigRational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}
