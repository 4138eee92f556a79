use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{Rational, Ring};

/// Polynomial in the summation indices with rational coefficients.
///
/// Used for exponents and Pochhammer lengths; evaluation must land on an
/// integer. Monomials are keyed by exponent vectors with trailing zeros
/// trimmed, so `n₀²n₂` is `[2, 0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut key: Vec<u32>) -> Vec<u32> {
    while key.last() == Some(&0) {
        key.pop();
    }
    key
}

impl IndexPoly {
    pub fn zero() -> Self {
        IndexPoly::default()
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        let c = c.into();
        let mut p = IndexPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    /// The `i`-th index.
    pub fn var(i: usize) -> Self {
        let mut key = vec![0; i + 1];
        key[i] = 1;
        let mut p = IndexPoly::zero();
        p.terms.insert(key, Rational::one());
        p
    }

    /// `Σ coeffs[i]·n_i + c`.
    pub fn linear(coeffs: &[i64], c: i64) -> Self {
        let mut p = IndexPoly::constant(c);
        for (i, &k) in coeffs.iter().enumerate() {
            p = p.add(&IndexPoly::var(i).scale(&Rational::from(k)));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// The constant value if no index occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    /// Largest index position that occurs, plus one.
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|k| k.get(i).copied().unwrap_or(0) > 0)
    }

    fn insert(&mut self, key: Vec<u32>, c: Rational) {
        let key = trim(key);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        slot.add_assign(&c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = IndexPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v.mul(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = IndexPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let n = ka.len().max(kb.len());
                let key = (0..n)
                    .map(|i| ka.get(i).copied().unwrap_or(0) + kb.get(i).copied().unwrap_or(0))
                    .collect();
                out.insert(key, ca.mul(cb));
            }
        }
        out
    }

    /// `C(p, 2) = p(p − 1)/2`.
    pub fn binom2(&self) -> Self {
        self.mul(&self.sub(&IndexPoly::constant(1)))
            .scale(&Rational::new(1, 2))
    }

    /// Substitutes `n_i → n_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = IndexPoly::zero();
        for (k, c) in &self.terms {
            let n = perm.iter().copied().max().map_or(0, |m| m + 1).max(k.len());
            let mut key = vec![0; n];
            for (i, &e) in k.iter().enumerate() {
                key[perm.get(i).copied().unwrap_or(i)] += e;
            }
            out.insert(key, c.clone());
        }
        out
    }

    /// Exact rational value at the given index point.
    pub fn eval_rational(&self, idx: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            let mut m = c.clone();
            for (i, &e) in k.iter().enumerate() {
                let x = Rational::from(idx.get(i).copied().unwrap_or(0));
                for _ in 0..e {
                    m = m.mul(&x);
                }
            }
            acc.add_assign(&m);
        }
        acc
    }

    /// Integer value at the given index point.
    pub fn eval(&self, idx: &[i64]) -> Result<i64> {
        let v = self.eval_rational(idx);
        v.to_i64()
            .ok_or_else(|| Error::NonIntegerExponent(format!("{self} = {v} at {idx:?}")))
    }

    /// True when no monomial involving an index `≥ level` has total degree
    /// above one or a negative coefficient, so the value never decreases as
    /// those indices grow.
    pub fn nondecreasing_from(&self, level: usize) -> bool {
        self.terms.iter().all(|(k, c)| {
            let touches = k.iter().skip(level).any(|&e| e > 0);
            !touches || (k.iter().sum::<u32>() == 1 && !c.is_negative())
        })
    }

    /// True when no index `≥ level` occurs.
    pub fn independent_from(&self, level: usize) -> bool {
        self.terms.keys().all(|k| k.iter().skip(level).all(|&e| e == 0))
    }
}

impl From<i64> for IndexPoly {
    fn from(c: i64) -> Self {
        IndexPoly::constant(c)
    }
}

impl fmt::Display for IndexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (k, c)) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in k.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*n{i}")?,
                    _ => write!(f, "*n{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IndexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
