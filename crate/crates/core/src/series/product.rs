use super::QSeries;
use crate::error::{Error, Result};
use crate::rings::Ring;

/// Length of a Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(i64),
    Infinite,
}

/// `(c·q^j; q^m)_len ^ power`, i.e. `∏_{k<len} (1 − c·q^{j+km})^power`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor<R> {
    pub c: R,
    pub j: i64,
    pub m: i64,
    pub len: Length,
    pub power: i64,
}

impl<R: Ring> Factor<R> {
    pub fn new(c: R, j: i64, m: i64, len: Length, power: i64) -> Self {
        Factor { c, j, m, len, power }
    }

    /// `(q^j; q^m)_∞ ^ power`.
    pub fn eta(j: i64, m: i64, power: i64) -> Self {
        Factor::new(R::one(), j, m, Length::Infinite, power)
    }

    /// Rewrites a negative finite length through `(x;q)_{−n} = 1/(x q^{−n};q)_n`.
    fn normalized(&self) -> Self {
        match self.len {
            Length::Finite(n) if n < 0 => Factor {
                c: self.c.clone(),
                j: self.j + n * self.m,
                m: self.m,
                len: Length::Finite(-n),
                power: -self.power,
            },
            _ => self.clone(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.len == Length::Infinite && self.m < 1 {
            return Err(Error::DivergentProduct(format!(
                "infinite product with step q^{}",
                self.m
            )));
        }
        Ok(())
    }

    /// Exponents `j + km` that are `≤ 0`, in generation order.
    fn nonpositive_exponents(&self) -> Vec<i64> {
        let count = match self.len {
            Length::Finite(n) => n.max(0),
            Length::Infinite => i64::MAX,
        };
        let mut out = Vec::new();
        let mut k = 0;
        while k < count {
            let e = self.j + k * self.m;
            if e <= 0 {
                out.push(e);
            } else if self.m >= 0 {
                break;
            }
            k += 1;
            if self.m == 0 && self.len == Length::Infinite {
                break;
            }
        }
        out
    }

    /// Positive exponents `j + km < bound`, ascending for `m > 0`.
    fn positive_exponents(&self, bound: i64) -> Vec<i64> {
        let count = match self.len {
            Length::Finite(n) => n.max(0),
            Length::Infinite => i64::MAX,
        };
        let mut out = Vec::new();
        if self.m > 0 {
            let k0 = if self.j > 0 { 0 } else { (-self.j) / self.m + 1 };
            let mut k = k0;
            while k < count {
                let e = self.j + k * self.m;
                if e >= bound {
                    break;
                }
                out.push(e);
                k += 1;
            }
        } else if let Length::Finite(n) = self.len {
            for k in 0..n.max(0) {
                let e = self.j + k * self.m;
                if e > 0 && e < bound {
                    out.push(e);
                }
            }
        }
        out
    }
}

/// Monomial times a product of Pochhammer factors.
#[derive(Clone, Debug, PartialEq)]
pub struct ProdSpec<R> {
    pub coeff: R,
    pub q_exp: i64,
    pub factors: Vec<Factor<R>>,
}

impl<R: Ring> Default for ProdSpec<R> {
    fn default() -> Self {
        ProdSpec::new()
    }
}

impl<R: Ring> ProdSpec<R> {
    pub fn new() -> Self {
        ProdSpec {
            coeff: R::one(),
            q_exp: 0,
            factors: Vec::new(),
        }
    }

    pub fn with_factor(mut self, f: Factor<R>) -> Self {
        self.factors.push(f);
        self
    }

    pub fn with_monomial(mut self, c: R, e: i64) -> Self {
        self.coeff = self.coeff.mul(&c);
        self.q_exp += e;
        self
    }

    /// Exact valuation of the product, or `None` if it vanishes identically.
    pub fn valuation(&self) -> Result<Option<i64>> {
        if self.coeff.is_zero() {
            return Ok(None);
        }
        let mut v = self.q_exp;
        for f in &self.factors {
            let f = f.normalized();
            f.check()?;
            if f.c.is_zero() || f.power == 0 {
                continue;
            }
            for e in f.nonpositive_exponents() {
                if e == 0 {
                    if f.c.is_one() {
                        if matches!(f.len, Length::Finite(_)) && f.power > 0 {
                            return Ok(None);
                        }
                        return Err(Error::ZeroFactor(format!(
                            "(1 - q^0) in ({}*q^{}; q^{})_{}",
                            f.c,
                            f.j,
                            f.m,
                            length_str(f.len)
                        )));
                    }
                } else {
                    v += f.power * e;
                }
            }
        }
        Ok(Some(v))
    }

    /// Expands the product exactly below `order`.
    ///
    /// Only the window between the valuation and `order` is ever stored, and
    /// factors whose exponent lies beyond it are skipped.
    pub fn expand(&self, order: i64) -> Result<QSeries<R>> {
        let Some(v) = self.valuation()? else {
            return Ok(QSeries::zero(order));
        };
        let window = order - v;
        if window <= 0 {
            return Ok(QSeries::zero(order));
        }
        let mut s = QSeries::monomial(self.coeff.clone(), self.q_exp, self.q_exp + window);
        for f in &self.factors {
            let f = f.normalized();
            if f.c.is_zero() || f.power == 0 {
                continue;
            }
            let mut exps = f.nonpositive_exponents();
            exps.extend(f.positive_exponents(window));
            for e in exps {
                apply(&mut s, &f.c, e, f.power)?;
            }
        }
        debug_assert!(s.is_zero() || s.order() == order);
        if s.is_zero() {
            return Ok(QSeries::zero(order));
        }
        Ok(s)
    }
}

fn apply<R: Ring>(s: &mut QSeries<R>, c: &R, e: i64, power: i64) -> Result<()> {
    if power > 0 {
        for _ in 0..power {
            s.mul_binomial(c, e);
        }
    } else {
        for _ in 0..-power {
            s.div_binomial(c, e)?;
        }
    }
    Ok(())
}

fn length_str(len: Length) -> String {
    match len {
        Length::Finite(n) => n.to_string(),
        Length::Infinite => "inf".to_string(),
    }
}

/// Expands `spec` below `order`.
pub fn expand_product<R: Ring>(spec: &ProdSpec<R>, order: i64) -> Result<QSeries<R>> {
    spec.expand(order)
}

/// `(c·q^j; q^m)_len` exactly below `order`.
pub fn pochhammer<R: Ring>(c: R, j: i64, m: i64, len: Length, order: i64) -> Result<QSeries<R>> {
    ProdSpec::new()
        .with_factor(Factor::new(c, j, m, len, 1))
        .expand(order)
}

/// `∏ (q^j; q^m)_∞ ^ power` over the given `(j, m, power)` triples.
pub fn eta_quotient<R: Ring>(factors: &[(i64, i64, i64)], order: i64) -> Result<QSeries<R>> {
    let mut spec = ProdSpec::new();
    for &(j, m, p) in factors {
        spec.factors.push(Factor::eta(j, m, p));
    }
    spec.expand(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn ints(s: &QSeries<Rational>, upto: i64) -> Vec<i64> {
        (0..upto).map(|e| s.coeff(e).unwrap().to_i64().unwrap()).collect()
    }

    /// Partitions of `n` into parts drawn from `parts`, by table.
    fn restricted_partitions(parts: &[i64], n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n];
        p[0] = 1;
        for &k in parts {
            for i in k as usize..n {
                p[i] += p[i - k as usize];
            }
        }
        p
    }

    #[test]
    fn finite_pochhammer() {
        let s = pochhammer(r(1), 1, 1, Length::Finite(2), 10).unwrap();
        assert_eq!(ints(&s, 10), vec![1, -1, -1, 1, 0, 0, 0, 0, 0, 0]);
        let one = pochhammer(r(5), 3, 2, Length::Finite(0), 10).unwrap();
        assert_eq!(one, QSeries::one(10));
    }

    #[test]
    fn zero_factor_policy() {
        let z = pochhammer(r(1), 0, 1, Length::Finite(1), 10).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.order(), 10);
        assert!(matches!(
            pochhammer(r(1), 0, 1, Length::Infinite, 10),
            Err(Error::ZeroFactor(_))
        ));
        let spec = ProdSpec::new().with_factor(Factor::new(r(1), 0, 1, Length::Finite(2), -1));
        assert!(matches!(spec.expand(5), Err(Error::ZeroFactor(_))));
        assert!(matches!(
            pochhammer(r(1), 1, 0, Length::Infinite, 10),
            Err(Error::DivergentProduct(_))
        ));
    }

    #[test]
    fn negative_offset_infinite() {
        // (q^-1; q^3)_∞ = (1 − q^-1)(1 − q^2)(1 − q^5)…
        let s = pochhammer(r(1), -1, 3, Length::Infinite, 4).unwrap();
        assert_eq!(s.min_exp(), -1);
        assert_eq!(s.order(), 4);
        let expect = QSeries::from_terms(
            [(-1, r(-1)), (0, r(1)), (1, r(1)), (2, r(-1))],
            4,
        );
        assert_eq!(s, expect);
    }

    #[test]
    fn rogers_ramanujan_product() {
        let s = eta_quotient::<Rational>(&[(1, 5, -1), (4, 5, -1)], 10).unwrap();
        assert_eq!(ints(&s, 10), vec![1, 1, 1, 1, 2, 2, 3, 3, 4, 5]);
        let t = eta_quotient::<Rational>(&[(2, 6, -1), (3, 6, -1)], 7).unwrap();
        assert_eq!(ints(&t, 7), vec![1, 0, 1, 1, 1, 1, 2]);
        assert_eq!(eta_quotient::<Rational>(&[], 5).unwrap(), QSeries::one(5));
    }

    #[test]
    fn partition_oracle() {
        let n = 60;
        let s = eta_quotient::<Rational>(&[(1, 1, -1)], n).unwrap();
        let parts: Vec<i64> = (1..n).collect();
        assert_eq!(ints(&s, n), restricted_partitions(&parts, n as usize));
        let s = eta_quotient::<Rational>(&[(2, 7, -1), (5, 7, -1), (3, 4, -1)], n).unwrap();
        let parts: Vec<i64> = (1..n).filter(|k| k % 7 == 2 || k % 7 == 5 || k % 4 == 3).collect();
        // overlapping classes contribute twice, once per factor
        let mut p = vec![0i64; n as usize];
        p[0] = 1;
        for k in (1..n).filter(|k| k % 7 == 2 || k % 7 == 5) {
            for i in k as usize..n as usize {
                p[i] += p[i - k as usize];
            }
        }
        for k in (1..n).filter(|k| k % 4 == 3) {
            for i in k as usize..n as usize {
                p[i] += p[i - k as usize];
            }
        }
        assert!(!parts.is_empty());
        assert_eq!(ints(&s, n), p);
    }

    #[test]
    fn recurrence_in_length() {
        for (c, j, m) in [(r(2), -2, 3), (Rational::new(-1, 3), 1, 1), (r(1), 2, 5)] {
            for n in 0..12 {
                let a = pochhammer(c.clone(), j, m, Length::Finite(n + 1), 40).unwrap();
                let mut b = pochhammer(c.clone(), j, m, Length::Finite(n), 40).unwrap();
                b.mul_binomial(&c, j + n * m);
                assert_eq!(a.first_difference(&b), None);
            }
        }
    }

    #[test]
    fn negative_length() {
        // (x;q)_{-1} = 1/(1 − x q^{-1})
        let s = pochhammer(r(1), 2, 1, Length::Finite(-1), 8).unwrap();
        let t = eta_quotient::<Rational>(&[], 8)
            .unwrap()
            .mul(&pochhammer(r(1), 1, 1, Length::Finite(1), 8).unwrap().inv().unwrap());
        assert_eq!(s.first_difference(&t), None);
    }

    #[test]
    fn theta_quotients() {
        let phi = super::super::phi_minus_q::<Rational>(100);
        let phi2 = eta_quotient::<Rational>(&[(1, 1, 2), (2, 2, -1)], 100).unwrap();
        assert_eq!(phi.compare_through(&phi2, 100).unwrap(), None);
        let psi = super::super::psi::<Rational>(100);
        let psi2 = eta_quotient::<Rational>(&[(2, 2, 2), (1, 1, -1)], 100).unwrap();
        assert_eq!(psi.compare_through(&psi2, 100).unwrap(), None);
    }
}
