//! Lowering of expressions to evaluation plans.
//!
//! A product of monomials, ring constants and Pochhammer symbols becomes a
//! single [`ProdSpec`]; a summand becomes a [`SumSpec`]. Anything else is
//! combined with exact series arithmetic, asking each operand for as much
//! precision as the result needs.

use super::ast::{BinOp, Expr};
use crate::ct::constant_term;
use crate::error::{Error, Result};
use crate::hypergeom::{IndexPoly, SumConfig, SumPoch, SumSpec};
use crate::rings::{omega_power, Eisenstein, LaurentPoly, PolyA, PolyZ, Rational, Ring};
use crate::series::{Factor, Length, ProdSpec, QSeries};

/// Coefficient rings the language can evaluate in.
pub trait DslRing: Ring {
    /// The ring element named `a`, `z` or `omega`.
    fn symbol(name: &str) -> Result<Self>;

    /// Plan for `ct(inner)`, evaluated over Laurent polynomials in `z`.
    fn lower_ct(_inner: &Expr) -> Result<Box<dyn SeriesPlan<Self>>> {
        Err(Error::RingConflict("ct(...) is not available here".into()))
    }

    fn theta(_order: i64) -> Result<QSeries<Self>> {
        Err(Error::RingConflict("jtp_theta() needs the variable z".into()))
    }

    fn subst_omega(_f: &QSeries<Self>, _k: i64) -> Result<QSeries<Self>> {
        Err(Error::RingConflict("q -> omega*q needs omega in the ring".into()))
    }
}

fn unavailable<T>(name: &str, ring: &str) -> Result<T> {
    match name {
        "a" | "z" | "omega" => Err(Error::RingConflict(format!("`{name}` in a {ring} identity"))),
        _ => Err(Error::UndeclaredVariable(name.to_string())),
    }
}

impl DslRing for Rational {
    fn symbol(name: &str) -> Result<Self> {
        unavailable(name, "rational")
    }

    fn lower_ct(inner: &Expr) -> Result<Box<dyn SeriesPlan<Self>>> {
        Ok(Box::new(CtPlan(lower::<PolyZ<Rational>>(inner)?)))
    }
}

impl DslRing for Eisenstein {
    fn symbol(name: &str) -> Result<Self> {
        match name {
            "omega" => Ok(omega_power(1)),
            _ => unavailable(name, "Eisenstein"),
        }
    }

    fn lower_ct(inner: &Expr) -> Result<Box<dyn SeriesPlan<Self>>> {
        Ok(Box::new(CtPlan(lower::<PolyZ<Eisenstein>>(inner)?)))
    }

    fn subst_omega(f: &QSeries<Self>, k: i64) -> Result<QSeries<Self>> {
        Ok(f.subst_omega(k))
    }
}

impl DslRing for PolyA {
    fn symbol(name: &str) -> Result<Self> {
        match name {
            "a" => Ok(LaurentPoly::var_pow(1)),
            _ => unavailable(name, "poly-a"),
        }
    }
}

impl DslRing for PolyZ<Rational> {
    fn symbol(name: &str) -> Result<Self> {
        match name {
            "z" => Ok(LaurentPoly::var_pow(1)),
            _ => unavailable(name, "laurent-z"),
        }
    }

    fn theta(order: i64) -> Result<QSeries<Self>> {
        Ok(crate::ct::theta_z(order))
    }
}

impl DslRing for PolyZ<Eisenstein> {
    fn symbol(name: &str) -> Result<Self> {
        match name {
            "z" => Ok(LaurentPoly::var_pow(1)),
            "omega" => Ok(LaurentPoly::constant(omega_power(1))),
            _ => unavailable(name, "laurent-z"),
        }
    }

    fn theta(order: i64) -> Result<QSeries<Self>> {
        Ok(crate::ct::theta_z(order))
    }

    fn subst_omega(f: &QSeries<Self>, k: i64) -> Result<QSeries<Self>> {
        Ok(f.subst_omega(k))
    }
}

/// Something that evaluates to a series exact below a requested order.
pub trait SeriesPlan<R>: Send + Sync {
    /// A series exact at least below `order`.
    fn eval_at_least(&self, order: i64) -> Result<QSeries<R>>;
}

struct CtPlan<S: Ring>(Plan<PolyZ<S>>)
where
    PolyZ<S>: DslRing;

impl<S: Ring> SeriesPlan<S> for CtPlan<S>
where
    PolyZ<S>: DslRing,
{
    fn eval_at_least(&self, order: i64) -> Result<QSeries<S>> {
        Ok(constant_term(&self.0.eval_at_least(order)?))
    }
}

/// Evaluation plan for one side of an identity.
pub enum Plan<R: DslRing> {
    Product(ProdSpec<R>),
    Sum(SumSpec<R>),
    Add(Box<Plan<R>>, Box<Plan<R>>),
    Sub(Box<Plan<R>>, Box<Plan<R>>),
    Neg(Box<Plan<R>>),
    Mul(Box<Plan<R>>, Box<Plan<R>>),
    Inv(Box<Plan<R>>),
    Pow(Box<Plan<R>>, u32),
    Huff(Box<Plan<R>>, i64),
    /// `q → q^m`.
    Dilate(Box<Plan<R>>, i64),
    SubstOmega(Box<Plan<R>>, i64),
    Theta,
    ConstantTerm(Box<dyn SeriesPlan<R>>),
}

const RETRIES: usize = 8;

impl<R: DslRing> Plan<R> {
    /// The series exactly below `order`.
    pub fn eval(&self, order: i64) -> Result<QSeries<R>> {
        self.eval_at_least(order)?.truncate(order)
    }

    fn mul_exact(a: &Plan<R>, b: &Plan<R>, n: i64) -> Result<QSeries<R>> {
        let (mut na, mut nb) = (n, n);
        for _ in 0..RETRIES {
            let fa = a.eval_at_least(na)?;
            let fb = b.eval_at_least(nb)?;
            let p = fa.mul(&fb);
            if p.order() >= n {
                return Ok(p);
            }
            let va = fa.valuation().unwrap_or(fa.order());
            let vb = fb.valuation().unwrap_or(fb.order());
            na = na.max(n - vb) + if fa.is_zero() { n.abs().max(8) } else { 0 };
            nb = nb.max(n - va) + if fb.is_zero() { n.abs().max(8) } else { 0 };
        }
        Err(Error::PrecisionExceeded {
            requested: n,
            available: n.min(na).min(nb),
        })
    }

    fn inv_exact(a: &Plan<R>, n: i64) -> Result<QSeries<R>> {
        let mut na = n;
        for _ in 0..RETRIES {
            let f = a.eval_at_least(na)?;
            match f.valuation() {
                None => na += na.abs().max(8),
                Some(v) => {
                    let g = f.inv()?;
                    if g.order() >= n {
                        return Ok(g);
                    }
                    na = na.max(n + 2 * v);
                }
            }
        }
        Err(Error::NotAUnit(format!("divisor vanishes below q^{na}")))
    }

    fn pow_exact(a: &Plan<R>, k: u32, n: i64) -> Result<QSeries<R>> {
        if k == 0 {
            return Ok(QSeries::one(n));
        }
        let mut na = n;
        for _ in 0..RETRIES {
            let p = a.eval_at_least(na)?.pow(k as i64)?;
            if p.order() >= n {
                return Ok(p);
            }
            na += n - p.order();
        }
        Err(Error::PrecisionExceeded {
            requested: n,
            available: na,
        })
    }
}

impl<R: DslRing> SeriesPlan<R> for Plan<R> {
    fn eval_at_least(&self, n: i64) -> Result<QSeries<R>> {
        match self {
            Plan::Product(spec) => spec.expand(n),
            Plan::Sum(spec) => spec.eval(n, SumConfig::default()),
            Plan::Add(a, b) => Ok(a.eval_at_least(n)?.add(&b.eval_at_least(n)?)),
            Plan::Sub(a, b) => Ok(a.eval_at_least(n)?.sub(&b.eval_at_least(n)?)),
            Plan::Neg(a) => Ok(a.eval_at_least(n)?.neg()),
            Plan::Mul(a, b) => Plan::mul_exact(a, b, n),
            Plan::Inv(a) => Plan::inv_exact(a, n),
            Plan::Pow(a, k) => Plan::pow_exact(a, *k, n),
            Plan::Huff(a, m) => Ok(a.eval_at_least(n)?.huff(*m)),
            Plan::Dilate(a, m) => {
                let inner = if n <= 1 { 1 } else { (n - 1 + m - 1) / m + 1 };
                Ok(a.eval_at_least(inner)?.scale_exponents(*m))
            }
            Plan::SubstOmega(a, k) => R::subst_omega(&a.eval_at_least(n)?, *k),
            Plan::Theta => R::theta(n),
            Plan::ConstantTerm(p) => p.eval_at_least(n),
        }
    }
}

/// Monomial-product normal form
/// `coeff · (−1)^sign · q^q_exp · ∏ c^e · ∏ pochs`, with exponents that may
/// depend on summation indices.
struct Mpf<R> {
    coeff: R,
    sign: IndexPoly,
    q_exp: IndexPoly,
    powers: Vec<(R, IndexPoly)>,
    pochs: Vec<SumPoch<R>>,
}

fn non_lowerable(msg: impl Into<String>) -> Error {
    Error::NonLowerable(msg.into())
}

fn integer(p: &IndexPoly, what: &str) -> Result<i64> {
    let c = p
        .as_constant()
        .ok_or_else(|| non_lowerable(format!("{what} must be a constant")))?;
    c.to_i64()
        .filter(|_| c.is_integer())
        .ok_or_else(|| Error::NonIntegerExponent(format!("{what} {c}")))
}

impl<R: DslRing> Mpf<R> {
    fn constant(coeff: R) -> Self {
        Mpf {
            coeff,
            sign: IndexPoly::zero(),
            q_exp: IndexPoly::zero(),
            powers: Vec::new(),
            pochs: Vec::new(),
        }
    }

    fn is_constant(&self) -> bool {
        self.sign.is_zero() && self.q_exp.is_zero() && self.powers.is_empty() && self.pochs.is_empty()
    }

    fn mul(mut self, o: Mpf<R>) -> Self {
        self.coeff = self.coeff.mul(&o.coeff);
        self.sign = self.sign.add(&o.sign);
        self.q_exp = self.q_exp.add(&o.q_exp);
        self.powers.extend(o.powers);
        self.pochs.extend(o.pochs);
        self
    }

    fn inv(self) -> Result<Self> {
        let coeff = self
            .coeff
            .inv()
            .map_err(|_| Error::NotAUnit(format!("division by {}", self.coeff)))?;
        Ok(Mpf {
            coeff,
            sign: self.sign,
            q_exp: self.q_exp.neg(),
            powers: self.powers.into_iter().map(|(c, e)| (c, e.neg())).collect(),
            pochs: self
                .pochs
                .into_iter()
                .map(|p| SumPoch { power: -p.power, ..p })
                .collect(),
        })
    }

    fn pow_int(self, k: i64) -> Result<Self> {
        let s = Rational::from(k);
        Ok(Mpf {
            coeff: self.coeff.pow(k)?,
            sign: self.sign.scale(&s),
            q_exp: self.q_exp.scale(&s),
            powers: self.powers.into_iter().map(|(c, e)| (c, e.scale(&s))).collect(),
            pochs: self
                .pochs
                .into_iter()
                .map(|p| SumPoch { power: p.power * k, ..p })
                .collect(),
        })
    }

    fn pow_poly(self, p: &IndexPoly) -> Result<Self> {
        if !self.pochs.is_empty() {
            return Err(non_lowerable("Pochhammer symbol raised to a variable power"));
        }
        let mut out = Mpf::constant(R::one());
        out.sign = self.sign.mul(p);
        if self.coeff.neg().is_one() {
            out.sign = out.sign.add(p);
        } else if !self.coeff.is_one() {
            out.powers.push((self.coeff, p.clone()));
        }
        out.q_exp = self.q_exp.mul(p);
        for (c, e) in self.powers {
            out.powers.push((c, e.mul(p)));
        }
        Ok(out)
    }

    fn to_prod(&self) -> Result<ProdSpec<R>> {
        let mut coeff = self.coeff.clone();
        if integer(&self.sign, "sign exponent")?.rem_euclid(2) == 1 {
            coeff = coeff.neg();
        }
        for (c, e) in &self.powers {
            coeff = coeff.mul(&c.pow(integer(e, "exponent")?)?);
        }
        let mut spec = ProdSpec::new().with_monomial(coeff, integer(&self.q_exp, "q-exponent")?);
        for p in &self.pochs {
            let len = match &p.len {
                Some(l) => Length::Finite(integer(l, "Pochhammer length")?),
                None => Length::Infinite,
            };
            spec.factors.push(Factor::new(
                p.c.clone(),
                integer(&p.offset, "q-exponent")?,
                p.step,
                len,
                p.power,
            ));
        }
        Ok(spec)
    }
}

const RESERVED: [&str; 4] = ["q", "a", "z", "omega"];

/// Exponent expression as a polynomial in the summation indices.
fn to_poly(e: &Expr, binders: &[String]) -> Result<IndexPoly> {
    let p = match e {
        Expr::Num(r) => IndexPoly::constant(r.clone()),
        Expr::Var(v) => match binders.iter().rposition(|b| b == v) {
            Some(i) => IndexPoly::var(i),
            None if RESERVED.contains(&v.as_str()) => {
                return Err(Error::RingConflict(format!("`{v}` cannot appear in an exponent")))
            }
            None => return Err(Error::UndeclaredVariable(v.clone())),
        },
        Expr::Neg(x) => to_poly(x, binders)?.neg(),
        Expr::Binom2(x) => to_poly(x, binders)?.binom2(),
        Expr::Bin(op, a, b) => {
            let (pa, pb) = (to_poly(a, binders)?, to_poly(b, binders)?);
            match op {
                BinOp::Add => pa.add(&pb),
                BinOp::Sub => pa.sub(&pb),
                BinOp::Mul => pa.mul(&pb),
                BinOp::Div => match pb.as_constant() {
                    Some(c) if !c.is_zero() => pa.scale(&c.inv()?),
                    _ => return Err(non_lowerable("exponent divided by a non-constant")),
                },
                BinOp::Pow => {
                    let k = integer(&pb, "power inside an exponent")?;
                    if !(0..=2).contains(&k) {
                        return Err(non_lowerable("exponents are at most quadratic"));
                    }
                    (0..k).fold(IndexPoly::constant(1), |acc, _| acc.mul(&pa))
                }
            }
        }
        _ => return Err(non_lowerable("only integer arithmetic is allowed in exponents")),
    };
    if p.degree() > 2 {
        return Err(non_lowerable("exponents are at most quadratic"));
    }
    Ok(p)
}

/// The normal form of `e`, or `None` when `e` is not a product of monomials
/// and Pochhammer symbols.
fn to_mpf<R: DslRing>(e: &Expr, binders: &[String]) -> Result<Option<Mpf<R>>> {
    Ok(Some(match e {
        Expr::Num(r) => Mpf::constant(R::from_rational(r)),
        Expr::Var(v) if v == "q" => {
            let mut m = Mpf::constant(R::one());
            m.q_exp = IndexPoly::constant(1);
            m
        }
        Expr::Var(v) if binders.contains(v) => {
            return Err(non_lowerable(format!("index `{v}` used outside an exponent")))
        }
        Expr::Var(v) => Mpf::constant(R::symbol(v)?),
        Expr::Neg(x) => match to_mpf::<R>(x, binders)? {
            Some(mut m) => {
                m.coeff = m.coeff.neg();
                m
            }
            None => return Ok(None),
        },
        Expr::Bin(op @ (BinOp::Add | BinOp::Sub), a, b) => {
            let (Some(ma), Some(mb)) = (to_mpf::<R>(a, binders)?, to_mpf::<R>(b, binders)?) else {
                return Ok(None);
            };
            if !(ma.is_constant() && mb.is_constant()) {
                return Ok(None);
            }
            Mpf::constant(if *op == BinOp::Add {
                ma.coeff.add(&mb.coeff)
            } else {
                ma.coeff.sub(&mb.coeff)
            })
        }
        Expr::Bin(op @ (BinOp::Mul | BinOp::Div), a, b) => {
            let Some(ma) = to_mpf::<R>(a, binders)? else { return Ok(None) };
            let Some(mb) = to_mpf::<R>(b, binders)? else { return Ok(None) };
            if *op == BinOp::Mul {
                ma.mul(mb)
            } else {
                ma.mul(mb.inv()?)
            }
        }
        Expr::Bin(BinOp::Pow, b, x) => {
            let p = to_poly(x, binders)?;
            let Some(mb) = to_mpf::<R>(b, binders)? else { return Ok(None) };
            if p.as_constant().is_some() {
                mb.pow_int(integer(&p, "exponent")?)?
            } else {
                mb.pow_poly(&p)?
            }
        }
        Expr::Poch { bases, step, len } => {
            let step = match to_mpf::<R>(step, binders)? {
                Some(m) if m.coeff.is_one() && m.sign.is_zero() && m.powers.is_empty() && m.pochs.is_empty() => {
                    integer(&m.q_exp, "Pochhammer step")?
                }
                _ => return Err(non_lowerable("Pochhammer step must be q^m")),
            };
            let len = len.as_ref().map(|l| to_poly(l, binders)).transpose()?;
            let mut out = Mpf::constant(R::one());
            for b in bases {
                let m = match to_mpf::<R>(b, binders)? {
                    Some(m) if m.powers.is_empty() && m.pochs.is_empty() => m,
                    _ => return Err(non_lowerable("Pochhammer base must be a monomial c*q^j")),
                };
                let mut c = m.coeff;
                match m.sign.as_constant() {
                    Some(s) => {
                        if integer(&IndexPoly::constant(s), "sign exponent")?.rem_euclid(2) == 1 {
                            c = c.neg();
                        }
                    }
                    None => return Err(non_lowerable("Pochhammer base with a variable sign")),
                }
                out.pochs.push(SumPoch {
                    c,
                    offset: m.q_exp,
                    step,
                    len: len.clone(),
                    power: 1,
                });
            }
            out
        }
        Expr::Binom2(_) => return Err(non_lowerable("C(x, 2) outside an exponent")),
        Expr::Sum { .. }
        | Expr::Ct(_)
        | Expr::Huff(..)
        | Expr::Scale(..)
        | Expr::Subst(..)
        | Expr::Theta => return Ok(None),
    }))
}

fn collect_factors<'a>(e: &'a Expr, inverse: bool, out: &mut Vec<(&'a Expr, bool)>) {
    match e {
        Expr::Bin(BinOp::Mul, a, b) => {
            collect_factors(a, inverse, out);
            collect_factors(b, inverse, out);
        }
        Expr::Bin(BinOp::Div, a, b) => {
            collect_factors(a, inverse, out);
            collect_factors(b, !inverse, out);
        }
        _ => out.push((e, inverse)),
    }
}

fn lower_sum<R: DslRing>(binders: &[(String, Expr)], body: &Expr) -> Result<Plan<R>> {
    let mut names: Vec<String> = Vec::new();
    let mut indices = Vec::new();
    for (name, lo) in binders {
        if RESERVED.contains(&name.as_str()) || names.contains(name) {
            return Err(non_lowerable(format!("`{name}` cannot be a summation index")));
        }
        let lo = integer(&to_poly(lo, &names)?, "lower bound")?;
        names.push(name.clone());
        indices.push((name.clone(), lo));
    }
    let m = to_mpf::<R>(body, &names)?.ok_or_else(|| {
        non_lowerable("summand must be a product of monomials and Pochhammer symbols")
    })?;
    Ok(Plan::Sum(SumSpec {
        indices,
        coeff: m.coeff,
        sign: m.sign,
        q_exp: m.q_exp,
        powers: m.powers,
        pochs: m.pochs,
    }))
}

/// Lowers a closed expression.
pub fn lower<R: DslRing>(e: &Expr) -> Result<Plan<R>> {
    let boxed = |e: &Expr| lower::<R>(e).map(Box::new);
    match e {
        Expr::Sum { binders, body } => lower_sum(binders, body),
        Expr::Ct(x) => Ok(Plan::ConstantTerm(R::lower_ct(x)?)),
        Expr::Huff(x, m) => Ok(Plan::Huff(boxed(x)?, *m)),
        Expr::Scale(x, m) => Ok(Plan::Dilate(boxed(x)?, *m)),
        Expr::Subst(x, 0) => lower(x),
        Expr::Subst(x, k) => Ok(Plan::SubstOmega(boxed(x)?, *k)),
        Expr::Theta => Ok(Plan::Theta),
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => {
            let mut fs = Vec::new();
            collect_factors(e, false, &mut fs);
            let mut acc = Mpf::constant(R::one());
            let mut rest = Vec::new();
            for (f, inverse) in fs {
                match to_mpf::<R>(f, &[])? {
                    Some(m) => acc = acc.mul(if inverse { m.inv()? } else { m }),
                    None => {
                        let p = boxed(f)?;
                        rest.push(if inverse { Plan::Inv(p) } else { *p });
                    }
                }
            }
            let trivial = acc.is_constant() && acc.coeff.is_one() && !rest.is_empty();
            let mut plan = if trivial { rest.remove(0) } else { Plan::Product(acc.to_prod()?) };
            for p in rest {
                plan = Plan::Mul(Box::new(plan), Box::new(p));
            }
            Ok(plan)
        }
        _ => {
            if let Some(m) = to_mpf::<R>(e, &[])? {
                return Ok(Plan::Product(m.to_prod()?));
            }
            match e {
                Expr::Bin(BinOp::Add, a, b) => Ok(Plan::Add(boxed(a)?, boxed(b)?)),
                Expr::Bin(BinOp::Sub, a, b) => Ok(Plan::Sub(boxed(a)?, boxed(b)?)),
                Expr::Neg(x) => Ok(Plan::Neg(boxed(x)?)),
                Expr::Bin(BinOp::Pow, b, x) => {
                    let k = integer(&to_poly(x, &[])?, "power of a series")?;
                    let base = boxed(b)?;
                    Ok(if k >= 0 {
                        Plan::Pow(base, k as u32)
                    } else {
                        Plan::Pow(Box::new(Plan::Inv(base)), k.unsigned_abs() as u32)
                    })
                }
                _ => Err(non_lowerable("unsupported expression")),
            }
        }
    }
}

/// Lowers and evaluates `e` exactly below `order`.
pub fn eval_expr<R: DslRing>(e: &Expr, order: i64) -> Result<QSeries<R>> {
    lower::<R>(e)?.eval(order)
}
