use std::fmt;

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Element `re + om·ω` of `Q(ω)` with `ω² = −1 − ω`.
///
/// Stored on the basis `{1, ω}` only, so equality is componentwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Eisenstein {
    pub re: Rational,
    pub om: Rational,
}

impl Eisenstein {
    pub fn new(re: Rational, om: Rational) -> Self {
        Eisenstein { re, om }
    }

    pub fn omega() -> Self {
        Eisenstein::new(Rational::zero(), Rational::one())
    }

    /// `N(x + yω) = x² − xy + y²`.
    pub fn norm(&self) -> Rational {
        let (x, y) = (&self.re, &self.om);
        x.mul(x).sub(&x.mul(y)).add(&y.mul(y))
    }

    /// Complex conjugate, which swaps `ω` and `ω²`.
    pub fn conj(&self) -> Self {
        // x + yω² = (x − y) − yω
        Eisenstein::new(self.re.sub(&self.om), self.om.neg())
    }

    pub fn is_rational(&self) -> bool {
        self.om.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Eisenstein::new(self.re.mul(r), self.om.mul(r))
    }
}

/// `ω^(k mod 3)` as `1`, `ω` or `−1 − ω`.
pub fn omega_power(k: i64) -> Eisenstein {
    match k.rem_euclid(3) {
        0 => Eisenstein::one(),
        1 => Eisenstein::omega(),
        _ => Eisenstein::new(Rational::from(-1), Rational::from(-1)),
    }
}

impl Ring for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(Rational::zero(), Rational::zero())
    }

    fn one() -> Self {
        Eisenstein::new(Rational::one(), Rational::zero())
    }

    fn from_int(n: i64) -> Self {
        Eisenstein::new(Rational::from(n), Rational::zero())
    }

    fn from_rational(r: &Rational) -> Self {
        Eisenstein::new(r.clone(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }

    fn is_one(&self) -> bool {
        self.re.is_one() && self.om.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Eisenstein::new(self.re.add(&rhs.re), self.om.add(&rhs.om))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Eisenstein::new(self.re.sub(&rhs.re), self.om.sub(&rhs.om))
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        if rhs.om.is_zero() {
            return self.scale(&rhs.re);
        }
        if self.om.is_zero() {
            return rhs.scale(&self.re);
        }
        let (a, b, c, d) = (&self.re, &self.om, &rhs.re, &rhs.om);
        let bd = b.mul(d);
        Eisenstein::new(a.mul(c).sub(&bd), a.mul(d).add(&b.mul(c)).sub(&bd))
    }

    fn neg(&self) -> Self {
        Eisenstein::new(self.re.neg(), self.om.neg())
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let n = self.norm().inv()?;
        Ok(self.conj().scale(&n))
    }

    fn add_assign(&mut self, rhs: &Self) {
        self.re.add_assign(&rhs.re);
        self.om.add_assign(&rhs.om);
    }

    fn sub_assign(&mut self, rhs: &Self) {
        self.re.sub_assign(&rhs.re);
        self.om.sub_assign(&rhs.om);
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.om.is_zero() {
            return write!(f, "{}", self.re);
        }
        let om = if self.om.is_one() {
            "omega".to_string()
        } else if self.om == Rational::from(-1) {
            "-omega".to_string()
        } else {
            format!("{}*omega", self.om)
        };
        if self.re.is_zero() {
            write!(f, "{om}")
        } else if om.starts_with('-') {
            write!(f, "{}{om}", self.re)
        } else {
            write!(f, "{}+{om}", self.re)
        }
    }
}

impl fmt::Debug for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
