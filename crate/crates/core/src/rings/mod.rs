//! Exact coefficient rings.
//!
//! Every series in the crate is generic over [`Ring`]. Three concrete families
//! are provided:
//!
//! - [`Rational`]: arbitrary-precision rationals with an inline `i64` fast path
//! - [`Eisenstein`]: the field `Q(ω)`, `ω = e^{2πi/3}`, stored on the basis `{1, ω}`
//! - [`LaurentPoly`]: sparse Laurent polynomials in a single named variable
//!   (`a` or `z`, selected by a marker type) over another ring

mod eisenstein;
mod laurent;
mod rational;

use std::fmt;

use crate::error::Result;

pub use eisenstein::{omega_power, Eisenstein};
pub use laurent::{LaurentPoly, PolyA, PolyZ, VarA, VarName, VarZ};
pub use rational::Rational;

/// Commutative ring with exact arithmetic.
///
/// Implementations must keep values in a canonical form so that `==` is
/// mathematical equality.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse; fails with [`Error::NotAUnit`](crate::Error::NotAUnit)
    /// when `self` has none.
    fn inv(&self) -> Result<Self>;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn sub_assign(&mut self, rhs: &Self) {
        *self = self.sub(rhs);
    }

    fn is_unit(&self) -> bool {
        self.inv().is_ok()
    }

    /// `self^e`, inverting first when `e < 0`. `0^0 = 1`.
    fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

/// Rings containing a primitive cube root of unity.
pub trait HasOmega: Ring {
    /// `ω^k` for any integer `k`.
    fn omega_pow(k: i64) -> Self;
}

impl HasOmega for Eisenstein {
    fn omega_pow(k: i64) -> Self {
        omega_power(k)
    }
}

impl<V: VarName> HasOmega for LaurentPoly<Eisenstein, V> {
    fn omega_pow(k: i64) -> Self {
        LaurentPoly::constant(omega_power(k))
    }
}

/// Embedding of rationals into Eisenstein rationals.
pub trait FromRationalRing<S> {
    fn embed(x: &S) -> Self;
}

impl FromRationalRing<Rational> for Eisenstein {
    fn embed(x: &Rational) -> Self {
        Eisenstein::from_rational(x)
    }
}

impl<V: VarName> FromRationalRing<LaurentPoly<Rational, V>> for LaurentPoly<Eisenstein, V> {
    fn embed(x: &LaurentPoly<Rational, V>) -> Self {
        x.map_coeffs(Eisenstein::from_rational)
    }
}
