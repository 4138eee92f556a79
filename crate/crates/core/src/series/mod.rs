//! Truncated Laurent series in `q`.
//!
//! A [`QSeries`] stores a dense window of coefficients together with the
//! exclusive order up to which they are exact. Every operation propagates the
//! guaranteed order, so a comparison can never silently look past the known
//! coefficients.

mod product;
mod theta;

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{Eisenstein, HasOmega, Rational, Ring};

pub use product::{eta_quotient, expand_product, pochhammer, Factor, Length, ProdSpec};
pub use theta::{phi_minus_q, psi};

/// Truncated Laurent series `Σ c_e q^e + O(q^order)`.
///
/// Coefficients for `min_exp ≤ e < order` are stored; anything below
/// `min_exp` is zero. The window is trimmed so that the coefficient at
/// `min_exp` is nonzero, except for the zero series, which has
/// `min_exp == order` and no stored coefficients.
#[derive(Clone, PartialEq)]
pub struct QSeries<R> {
    start: i64,
    order: i64,
    coeffs: Vec<R>,
}

/// First exponent at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: String,
    pub rhs: String,
}

impl<R: Ring> QSeries<R> {
    /// `O(q^order)`.
    pub fn zero(order: i64) -> Self {
        QSeries {
            start: order,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(R::one(), 0, order)
    }

    /// `c·q^e + O(q^order)`.
    pub fn monomial(c: R, e: i64, order: i64) -> Self {
        if e >= order || c.is_zero() {
            return Self::zero(order);
        }
        let mut coeffs = vec![R::zero(); (order - e) as usize];
        coeffs[0] = c;
        QSeries {
            start: e,
            order,
            coeffs,
        }
    }

    /// Series with coefficients `coeffs[i]` at `start + i`, exact below `order`.
    /// Entries at or beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(start: i64, mut coeffs: Vec<R>, order: i64) -> Self {
        if start >= order {
            return Self::zero(order);
        }
        coeffs.resize((order - start) as usize, R::zero());
        let mut s = QSeries {
            start,
            order,
            coeffs,
        };
        s.normalize();
        s
    }

    /// Builds a series from sparse `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, R)>, order: i64) -> Self {
        let terms: Vec<(i64, R)> = terms.into_iter().filter(|(e, _)| *e < order).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(order);
        };
        let mut coeffs = vec![R::zero(); (order - lo) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize].add_assign(&c);
        }
        Self::from_coeffs(lo, coeffs, order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
    }

    /// Lowest stored exponent; equals the valuation unless the series is zero.
    pub fn min_exp(&self) -> i64 {
        self.start
    }

    /// Exclusive bound of exactness.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the first nonzero coefficient, `None` for `O(q^order)`.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`; errors when `e` is not below the exact order.
    pub fn coeff(&self, e: i64) -> Result<R> {
        if e >= self.order {
            return Err(Error::PrecisionExceeded {
                requested: e + 1,
                available: self.order,
            });
        }
        Ok(self.coeff_unchecked(e))
    }

    fn coeff_unchecked(&self, e: i64) -> R {
        if e < self.start || e >= self.order {
            R::zero()
        } else {
            self.coeffs[(e - self.start) as usize].clone()
        }
    }

    /// Borrowed coefficient at `e`, or `None` outside the stored window.
    pub fn coeff_ref(&self, e: i64) -> Option<&R> {
        if e < self.start || e >= self.order {
            None
        } else {
            Some(&self.coeffs[(e - self.start) as usize])
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (i64, &R)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Drops everything at or beyond `order`. Raising the order is an error.
    pub fn truncate(&self, order: i64) -> Result<Self> {
        if order > self.order {
            return Err(Error::PrecisionExceeded {
                requested: order,
                available: self.order,
            });
        }
        if order <= self.start {
            return Ok(Self::zero(order));
        }
        let keep = (order - self.start) as usize;
        Ok(QSeries {
            start: self.start,
            order,
            coeffs: self.coeffs[..keep].to_vec(),
        })
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        QSeries::from_coeffs(self.start, self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn neg(&self) -> Self {
        QSeries {
            start: self.start,
            order: self.order,
            coeffs: self.coeffs.iter().map(R::neg).collect(),
        }
    }

    /// Coefficientwise sum; exact through the smaller of the two orders.
    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let order = self.order.min(rhs.order);
        let start = self.start.min(rhs.start).min(order);
        let mut coeffs = vec![R::zero(); (order - start) as usize];
        for (e, c) in self.iter_nonzero() {
            if e < order {
                coeffs[(e - start) as usize].add_assign(c);
            }
        }
        for (e, c) in rhs.iter_nonzero() {
            if e < order {
                let slot = &mut coeffs[(e - start) as usize];
                if negate {
                    slot.sub_assign(c);
                } else {
                    slot.add_assign(c);
                }
            }
        }
        Self::from_coeffs(start, coeffs, order)
    }

    /// In-place accumulation `self += rhs`.
    pub fn add_assign(&mut self, rhs: &Self) {
        if rhs.start >= self.start && rhs.order >= self.order {
            for (e, c) in rhs.iter_nonzero() {
                if e >= self.order {
                    break;
                }
                self.coeffs[(e - self.start) as usize].add_assign(c);
            }
            self.normalize();
        } else {
            *self = self.add(rhs);
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self::from_coeffs(self.start, self.coeffs.iter().map(|x| x.mul(c)).collect(), self.order)
    }

    /// Multiplies by `q^k`; the order moves with the exponents.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            start: self.start + k,
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Cauchy product.
    ///
    /// With valuations `v_f`, `v_g` the product is exact below
    /// `min(order_f + v_g, order_g + v_f)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = (self.order + rhs.start).min(rhs.order + self.start);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(order);
        }
        let start = self.start + rhs.start;
        if start >= order {
            return Self::zero(order);
        }
        let len = (order - start) as usize;
        let mut out = vec![R::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate().take(len - i) {
                if y.is_zero() {
                    continue;
                }
                out[i + j].add_assign(&x.mul(y));
            }
        }
        Self::from_coeffs(start, out, order)
    }

    /// Reciprocal. The leading coefficient must be a unit of the ring.
    ///
    /// For `f = q^v·u` exact below `order`, `1/f` starts at `−v` and is exact
    /// below `order − 2v`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit(format!("O(q^{})", self.order)));
        }
        let lead_inv = self.coeffs[0]
            .inv()
            .map_err(|_| Error::NotAUnit(format!("leading coefficient {}", self.coeffs[0])))?;
        let len = self.coeffs.len();
        let mut out: Vec<R> = Vec::with_capacity(len);
        out.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = R::zero();
            for k in 1..=n {
                let u = &self.coeffs[k];
                if !u.is_zero() {
                    acc.add_assign(&u.mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&lead_inv).neg());
        }
        Ok(Self::from_coeffs(-self.start, out, self.order - 2 * self.start))
    }

    /// Integer power; negative exponents go through [`QSeries::inv`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.order.max(1))))
    }

    /// In-place multiplication by the binomial `1 − c·q^k`.
    pub fn mul_binomial(&mut self, c: &R, k: i64) {
        if c.is_zero() || self.is_zero() {
            return;
        }
        let len = self.coeffs.len();
        match k.cmp(&0) {
            std::cmp::Ordering::Greater => {
                let k = k as usize;
                for idx in (k..len).rev() {
                    let (lo, hi) = self.coeffs.split_at_mut(idx);
                    let prev = &lo[idx - k];
                    if prev.is_zero() {
                        continue;
                    }
                    if c.is_one() {
                        hi[0].sub_assign(prev);
                    } else {
                        hi[0].sub_assign(&prev.mul(c));
                    }
                }
            }
            std::cmp::Ordering::Equal => {
                let f = R::one().sub(c);
                *self = self.scale(&f);
            }
            std::cmp::Ordering::Less => {
                // g[e] = f[e] − c·f[e − k]; storage index i holds exponent start + k + i
                let s = k.unsigned_abs() as usize;
                for idx in (0..len).rev() {
                    let mut v = self.coeffs[idx].mul(c).neg();
                    if idx >= s {
                        v.add_assign(&self.coeffs[idx - s]);
                    }
                    self.coeffs[idx] = v;
                }
                self.start += k;
                self.order += k;
                self.normalize();
            }
        }
    }

    /// In-place division by the binomial `1 − c·q^k`.
    ///
    /// For `k = 0` the factor `1 − c` must be a unit; for `k < 0`, `c` must be.
    pub fn div_binomial(&mut self, c: &R, k: i64) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match k.cmp(&0) {
            std::cmp::Ordering::Greater => {
                let k = k as usize;
                for idx in k..self.coeffs.len() {
                    let (lo, hi) = self.coeffs.split_at_mut(idx);
                    let prev = &lo[idx - k];
                    if prev.is_zero() {
                        continue;
                    }
                    if c.is_one() {
                        hi[0].add_assign(prev);
                    } else {
                        hi[0].add_assign(&prev.mul(c));
                    }
                }
                self.normalize();
                Ok(())
            }
            std::cmp::Ordering::Equal => {
                let f = R::one().sub(c);
                let fi = f
                    .inv()
                    .map_err(|_| Error::NotAUnit(format!("factor 1 - ({c})")))?;
                *self = self.scale(&fi);
                Ok(())
            }
            std::cmp::Ordering::Less => {
                // 1/(1 − c q^k) = −c⁻¹ q^{−k} / (1 − c⁻¹ q^{−k})
                let ci = c
                    .inv()
                    .map_err(|_| Error::NotAUnit(format!("factor 1 - ({c})*q^{k}")))?;
                *self = self.scale(&ci.neg()).shift(-k);
                self.div_binomial(&ci, -k)
            }
        }
    }

    /// Huffing operator: keeps the coefficients at exponents divisible by `m`,
    /// at their original exponents.
    pub fn huff(&self, m: i64) -> Self {
        assert!(m >= 1, "huffing modulus must be positive");
        self.residue_part(m, 0)
    }

    fn residue_part(&self, m: i64, r: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.start + i as i64).rem_euclid(m) == r {
                    c.clone()
                } else {
                    R::zero()
                }
            })
            .collect();
        Self::from_coeffs(self.start, coeffs, self.order)
    }

    /// `m`-dissection: component `r` holds the exponents `≡ r (mod m)`.
    pub fn dissect(&self, m: i64) -> Vec<Self> {
        assert!(m >= 1, "dissection modulus must be positive");
        (0..m).map(|r| self.residue_part(m, r)).collect()
    }

    /// Substitutes `q → q^m`. Exponent `e` moves to `m·e`; the order becomes
    /// `m·(order − 1) + 1`.
    pub fn scale_exponents(&self, m: i64) -> Self {
        assert!(m >= 1, "exponent scale must be positive");
        let order = m * (self.order - 1) + 1;
        Self::from_terms(self.iter_nonzero().map(|(e, c)| (m * e, c.clone())), order)
    }

    /// Substitutes `q → ω^k q`, multiplying the coefficient at `e` by `ω^{ke}`.
    pub fn subst_omega(&self, k: i64) -> Self
    where
        R: HasOmega,
    {
        let roots = [R::omega_pow(0), R::omega_pow(k), R::omega_pow(2 * k)];
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul(&roots[(self.start + i as i64).rem_euclid(3) as usize]))
            .collect();
        Self::from_coeffs(self.start, coeffs, self.order)
    }

    /// First disagreement over the common exact range, if any.
    pub fn first_difference(&self, rhs: &Self) -> Option<Mismatch> {
        let order = self.order.min(rhs.order);
        let lo = self.start.min(rhs.start);
        (lo..order).find_map(|e| {
            let (a, b) = (self.coeff_unchecked(e), rhs.coeff_unchecked(e));
            (a != b).then(|| Mismatch {
                exponent: e,
                lhs: a.to_string(),
                rhs: b.to_string(),
            })
        })
    }

    /// Compares through exponent `order − 1`. Both sides must be exact that far.
    pub fn compare_through(&self, rhs: &Self, order: i64) -> Result<Option<Mismatch>> {
        let available = self.order.min(rhs.order);
        if available < order {
            return Err(Error::PrecisionExceeded {
                requested: order,
                available,
            });
        }
        Ok(self.truncate(order)?.first_difference(&rhs.truncate(order)?))
    }
}

/// Rational series `q → ω^k q`, landing in `Q(ω)`.
pub fn subst_omega(f: &QSeries<Rational>, k: i64) -> QSeries<Eisenstein> {
    f.map_coeffs(Eisenstein::from_rational).subst_omega(k)
}

impl<R: Ring> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.iter_nonzero() {
            let cs = c.to_string();
            let cs = if cs.char_indices().any(|(i, ch)| i > 0 && (ch == '+' || ch == '-')) {
                format!("({cs})")
            } else {
                cs
            };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*q")?,
                _ => write!(f, "{cs}*q^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.order)
    }
}

impl<R: Ring> fmt::Debug for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
