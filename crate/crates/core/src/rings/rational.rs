use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Ring;
use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced with positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are stored inline and
/// combined with `i128` intermediates; anything larger spills into a
/// [`BigRational`]. The two representations never overlap, so the derived
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // numerator, denominator: reduced, den > 0, num != i64::MIN
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(n: i128) -> bool {
    n > i64::MIN as i128 && n <= i64::MAX as i128
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            Ring::neg(self)
        } else {
            self.clone()
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(b))),
        }
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Rational(Repr::Small(0, 1));
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        if fits(num) && fits(den) {
            Rational(Repr::Small(num as i64, den as i64))
        } else {
            Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))))
        }
    }

    fn small_add(a: (i64, i64), b: (i64, i64)) -> Self {
        let (an, ad) = (a.0 as i128, a.1 as i128);
        let (bn, bd) = (b.0 as i128, b.1 as i128);
        if ad == 1 && bd == 1 {
            let n = an + bn;
            if fits(n) {
                return Rational(Repr::Small(n as i64, 1));
            }
            return Self::from_i128(n, 1);
        }
        if ad == bd {
            return Self::from_i128(an + bn, ad);
        }
        // an*bd + bn*ad fits in i128 since each operand is below 2^63.
        Self::from_i128(an * bd + bn * ad, ad * bd)
    }

    fn small_mul(a: (i64, i64), b: (i64, i64)) -> Self {
        let (an, ad) = (a.0 as i128, a.1 as i128);
        let (bn, bd) = (b.0 as i128, b.1 as i128);
        if ad == 1 && bd == 1 {
            let n = an * bn;
            if fits(n) {
                return Rational(Repr::Small(n as i64, 1));
            }
            return Self::from_i128(n, 1);
        }
        let g1 = gcd_u128(an.unsigned_abs(), bd as u128).max(1) as i128;
        let g2 = gcd_u128(bn.unsigned_abs(), ad as u128).max(1) as i128;
        let num = (an / g1) * (bn / g2);
        let den = (ad / g2) * (bd / g1);
        if fits(num) && fits(den) {
            Rational(Repr::Small(num as i64, den as i64))
        } else {
            Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))))
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::new(n, 1)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(n))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn from_int(n: i64) -> Self {
        Rational::from(n)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => Self::small_add((*an, *ad), (*bn, *bd)),
            _ => Self::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            // bn != i64::MIN, so -bn cannot overflow
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => Self::small_add((*an, *ad), (-*bn, *bd)),
            _ => Self::from_big(self.to_big() - rhs.to_big()),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => Self::small_mul((*an, *ad), (*bn, *bd)),
            _ => Self::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-*n, *d)),
            Repr::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::NotAUnit("0".into())),
            Repr::Small(n, d) => Ok(if *n < 0 {
                Rational(Repr::Small(-*d, -*n))
            } else {
                Rational(Repr::Small(*d, *n))
            }),
            Repr::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        *self = Ring::add(self, rhs);
    }

    fn sub_assign(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        *self = Ring::sub(self, rhs);
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                (*an as i128 * *bd as i128).cmp(&(*bn as i128 * *ad as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::NonLowerable(format!("bad rational literal `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::from_bigs(n, d))
            }
            None => {
                let n: BigInt = s.trim().parse().map_err(|_| bad())?;
                Ok(Rational::from(n))
            }
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}
