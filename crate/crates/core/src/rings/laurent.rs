use std::cmp::Ordering;
use std::fmt;
use std::marker::PhantomData;

use super::{Eisenstein, Rational, Ring};
use crate::error::{Error, Result};

/// Marker naming the indeterminate of a [`LaurentPoly`].
pub trait VarName: Clone + Copy + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;
}

/// The parameter `a` of bivariate identities.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct VarA;

/// The integration variable `z` of constant-term computations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct VarZ;

impl VarName for VarA {
    const NAME: &'static str = "a";
}

impl VarName for VarZ {
    const NAME: &'static str = "z";
}

/// Laurent polynomials in `a` over the rationals.
pub type PolyA = LaurentPoly<Rational, VarA>;

/// Laurent polynomials in `z` over `R`.
pub type PolyZ<R> = LaurentPoly<R, VarZ>;

/// Sparse Laurent polynomial in one variable.
///
/// Terms are kept sorted by exponent with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<R, V> {
    terms: Vec<(i64, R)>,
    _var: PhantomData<V>,
}

impl<R: Ring, V: VarName> LaurentPoly<R, V> {
    fn from_sorted(terms: Vec<(i64, R)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly {
            terms,
            _var: PhantomData,
        }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·x^k`.
    pub fn monomial(c: R, k: i64) -> Self {
        if c.is_zero() {
            Self::from_sorted(Vec::new())
        } else {
            Self::from_sorted(vec![(k, c)])
        }
    }

    /// The variable itself raised to `k`.
    pub fn var_pow(k: i64) -> Self {
        Self::monomial(R::one(), k)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut v: Vec<(i64, R)> = pairs.into_iter().collect();
        v.sort_by_key(|(k, _)| *k);
        let mut out: Vec<(i64, R)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => lc.add_assign(&c),
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self::from_sorted(out)
    }

    pub fn terms(&self) -> &[(i64, R)] {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> R {
        match self.terms.binary_search_by_key(&k, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term `(k, c)` if this is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &R)> {
        match self.terms.as_slice() {
            [(k, c)] => Some((*k, c)),
            _ => None,
        }
    }

    /// Multiplies by `c·x^k`.
    pub fn shift_scale(&self, c: &R, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, x)| {
                let y = x.mul(c);
                (!y.is_zero()).then_some((e + k, y))
            })
            .collect();
        Self::from_sorted(terms)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentPoly<S, V> {
        LaurentPoly::from_sorted(
            self.terms
                .iter()
                .filter_map(|(k, c)| {
                    let y = f(c);
                    (!y.is_zero()).then_some((*k, y))
                })
                .collect(),
        )
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (k, c) = &b[j];
                    out.push((*k, if negate_rhs { c.neg() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_rhs {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(out)
    }
}

impl<R: Ring, V: VarName> Ring for LaurentPoly<R, V> {
    fn zero() -> Self {
        Self::from_sorted(Vec::new())
    }

    fn one() -> Self {
        Self::constant(R::one())
    }

    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(R::from_rational(r))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(0, c)] if c.is_one())
    }

    fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.merge(rhs, false)
    }

    fn sub(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        self.merge(rhs, true)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some((k, c)) = rhs.as_monomial() {
            return self.shift_scale(c, k);
        }
        if let Some((k, c)) = self.as_monomial() {
            return rhs.shift_scale(c, k);
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut dense = vec![R::zero(); (hi - lo + 1) as usize];
        for (i, x) in &self.terms {
            for (j, y) in &rhs.terms {
                dense[(i + j - lo) as usize].add_assign(&x.mul(y));
            }
        }
        Self::from_sorted(
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        )
    }

    fn neg(&self) -> Self {
        Self::from_sorted(self.terms.iter().map(|(k, c)| (*k, c.neg())).collect())
    }

    fn inv(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((k, c)) => {
                let ci = c.inv().map_err(|_| Error::NotAUnit(self.to_string()))?;
                Ok(Self::monomial(ci, -k))
            }
            None => Err(Error::NotAUnit(self.to_string())),
        }
    }

    fn is_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((_, c)) if c.is_unit())
    }
}

fn needs_parens(s: &str) -> bool {
    s.char_indices().any(|(i, ch)| i > 0 && (ch == '+' || ch == '-' || ch == '/'))
}

impl<R: Ring, V: VarName> fmt::Display for LaurentPoly<R, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let var = match *k {
                0 => String::new(),
                1 => V::NAME.to_string(),
                k => format!("{}^{k}", V::NAME),
            };
            let cs = c.to_string();
            let term = if var.is_empty() {
                if needs_parens(&cs) {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                var
            } else if c.neg().is_one() {
                format!("-{var}")
            } else if needs_parens(&cs) {
                format!("({cs})*{var}")
            } else {
                format!("{cs}*{var}")
            };
            if idx > 0 && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl<R: Ring, V: VarName> fmt::Debug for LaurentPoly<R, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<V: VarName> LaurentPoly<Eisenstein, V> {
    /// True when every coefficient lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_rational())
    }
}
