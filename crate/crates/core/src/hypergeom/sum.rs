use super::IndexPoly;
use crate::error::{Error, Result};
use crate::rings::Ring;
use crate::series::{Factor, Length, ProdSpec, QSeries};

/// Pochhammer factor of a summand, `(c·q^offset; q^step)_len ^ power`, where
/// the offset and length may depend on the indices. `len = None` is `∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct SumPoch<R> {
    pub c: R,
    pub offset: IndexPoly,
    pub step: i64,
    pub len: Option<IndexPoly>,
    pub power: i64,
}

impl<R: Ring> SumPoch<R> {
    /// `(q^offset; q^step)_len ^ power` with constant offset.
    pub fn simple(offset: i64, step: i64, len: IndexPoly, power: i64) -> Self {
        SumPoch {
            c: R::one(),
            offset: IndexPoly::constant(offset),
            step,
            len: Some(len),
            power,
        }
    }

    fn factor(&self, idx: &[i64]) -> Result<Factor<R>> {
        let len = match &self.len {
            Some(l) => Length::Finite(l.eval(idx)?),
            None => Length::Infinite,
        };
        Ok(Factor::new(self.c.clone(), self.offset.eval(idx)?, self.step, len, self.power))
    }

    /// Whether the product contains the factor `1 − q^0` at this point.
    fn has_zero_factor(&self, idx: &[i64]) -> Result<bool> {
        if !self.c.is_one() {
            return Ok(false);
        }
        let Some(len) = &self.len else {
            return Ok(false);
        };
        let (j, m, n) = (self.offset.eval(idx)?, self.step, len.eval(idx)?);
        Ok(if m == 0 {
            j == 0 && n > 0
        } else {
            j % m == 0 && {
                let k = -j / m;
                k >= 0 && k < n
            }
        })
    }
}

/// Multi-index q-hypergeometric sum
///
/// `Σ coeff · (−1)^sign · q^q_exp · ∏ c_i^{p_i} · ∏ pochs`
///
/// over all indices `n_i ≥ lower_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SumSpec<R> {
    pub indices: Vec<(String, i64)>,
    pub coeff: R,
    pub sign: IndexPoly,
    pub q_exp: IndexPoly,
    pub powers: Vec<(R, IndexPoly)>,
    pub pochs: Vec<SumPoch<R>>,
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumConfig {
    /// Largest number of values tried for any single index.
    pub index_cap: u64,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig { index_cap: 10_000 }
    }
}

impl<R: Ring> SumSpec<R> {
    /// Empty summand `1` over indices `names`, each starting at zero.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        SumSpec {
            indices: names.into_iter().map(|n| (n.into(), 0)).collect(),
            coeff: R::one(),
            sign: IndexPoly::zero(),
            q_exp: IndexPoly::zero(),
            powers: Vec::new(),
            pochs: Vec::new(),
        }
    }

    pub fn sign(mut self, p: IndexPoly) -> Self {
        self.sign = p;
        self
    }

    pub fn q_exp(mut self, p: IndexPoly) -> Self {
        self.q_exp = p;
        self
    }

    pub fn power(mut self, c: R, p: IndexPoly) -> Self {
        self.powers.push((c, p));
        self
    }

    pub fn poch(mut self, p: SumPoch<R>) -> Self {
        self.pochs.push(p);
        self
    }

    /// The summand at a point, as a product specification.
    pub fn term(&self, idx: &[i64]) -> Result<ProdSpec<R>> {
        let mut coeff = self.coeff.clone();
        if self.sign.eval(idx)?.rem_euclid(2) == 1 {
            coeff = coeff.neg();
        }
        for (c, p) in &self.powers {
            coeff = coeff.mul(&c.pow(p.eval(idx)?)?);
        }
        let mut spec = ProdSpec::new().with_monomial(coeff, self.q_exp.eval(idx)?);
        for p in &self.pochs {
            spec.factors.push(p.factor(idx)?);
        }
        Ok(spec)
    }

    /// Reorders the indices: old index `i` becomes index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut indices = self.indices.clone();
        for (i, slot) in self.indices.iter().enumerate() {
            indices[perm[i]] = slot.clone();
        }
        SumSpec {
            indices,
            coeff: self.coeff.clone(),
            sign: self.sign.permute(perm),
            q_exp: self.q_exp.permute(perm),
            powers: self
                .powers
                .iter()
                .map(|(c, p)| (c.clone(), p.permute(perm)))
                .collect(),
            pochs: self
                .pochs
                .iter()
                .map(|p| SumPoch {
                    c: p.c.clone(),
                    offset: p.offset.permute(perm),
                    step: p.step,
                    len: p.len.as_ref().map(|l| l.permute(perm)),
                    power: p.power,
                })
                .collect(),
        }
    }

    /// Every later value of index `level` (and any inner index) also vanishes.
    fn persistent_zero(&self, level: usize, idx: &[i64]) -> Result<bool> {
        for p in &self.pochs {
            if p.power <= 0 {
                continue;
            }
            let Some(len) = &p.len else { continue };
            if p.offset.independent_from(level)
                && len.nondecreasing_from(level)
                && p.has_zero_factor(idx)?
            {
                return Ok(true);
            }
        }
        for (c, e) in &self.powers {
            if c.is_zero() && e.nondecreasing_from(level) && e.eval(idx)? > 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Sum of every term below `order`.
    pub fn eval(&self, order: i64, cfg: SumConfig) -> Result<QSeries<R>> {
        let mut acc = QSeries::zero(order);
        let mut idx: Vec<i64> = self.indices.iter().map(|(_, lo)| *lo).collect();
        self.walk(0, &mut idx, order, cfg, &mut acc)?;
        Ok(acc)
    }

    /// Enumerates the subtree below `level` and returns its least valuation.
    ///
    /// An index stops once the subtree valuation is at least `order` and no
    /// smaller than at the previous value, or once the terms vanish for good.
    fn walk(
        &self,
        level: usize,
        idx: &mut Vec<i64>,
        order: i64,
        cfg: SumConfig,
        acc: &mut QSeries<R>,
    ) -> Result<Option<i64>> {
        if level == idx.len() {
            let spec = self.term(idx)?;
            let v = spec.valuation()?;
            if matches!(v, Some(v) if v < order) {
                acc.add_assign(&spec.expand(order)?);
            }
            return Ok(v);
        }
        let lower = self.indices[level].1;
        let mut least: Option<i64> = None;
        let mut prev: Option<i64> = None;
        let mut count: u64 = 0;
        loop {
            if count >= cfg.index_cap {
                return Err(Error::NonTerminating {
                    index: self.indices[level].0.clone(),
                    order,
                    cap: cfg.index_cap,
                });
            }
            idx[level] = lower + count as i64;
            for (slot, (_, lo)) in idx.iter_mut().zip(&self.indices).skip(level + 1) {
                *slot = *lo;
            }
            match self.walk(level + 1, idx, order, cfg, acc)? {
                Some(v) => {
                    least = Some(least.map_or(v, |l| l.min(v)));
                    if v >= order && prev.is_some_and(|p| v >= p) {
                        break;
                    }
                    prev = Some(v);
                }
                None => {
                    for (slot, (_, lo)) in idx.iter_mut().zip(&self.indices).skip(level + 1) {
                        *slot = *lo;
                    }
                    if self.persistent_zero(level, idx)? {
                        break;
                    }
                }
            }
            count += 1;
        }
        Ok(least)
    }
}

/// Evaluates `spec` below `order` with default limits.
pub fn sum_eval<R: Ring>(spec: &SumSpec<R>, order: i64) -> Result<QSeries<R>> {
    spec.eval(order, SumConfig::default())
}
