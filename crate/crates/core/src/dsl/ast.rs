use serde::Serialize;

use crate::rings::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Expression tree of the identity language.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Nonnegative integer literal.
    Num(Rational),
    /// `q`, `a`, `z`, `omega` or a summation index.
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// `poch(A1, A2, ...; Q; n)`; `len = None` is `inf`.
    Poch {
        bases: Vec<Expr>,
        step: Box<Expr>,
        len: Option<Box<Expr>>,
    },
    /// `sum(n >= 0, m >= 0; body)`.
    Sum {
        binders: Vec<(String, Expr)>,
        body: Box<Expr>,
    },
    Ct(Box<Expr>),
    Huff(Box<Expr>, i64),
    Scale(Box<Expr>, i64),
    /// `subst(E; q -> omega^k*q)` with `k` in `0..3`.
    Subst(Box<Expr>, i64),
    /// `jtp_theta()`.
    Theta,
    /// `C(x, 2)`.
    Binom2(Box<Expr>),
}

impl Expr {
    pub fn num(n: i64) -> Expr {
        Expr::Num(Rational::from(n))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    /// Visits every node in prefix order.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Num(_) | Expr::Var(_) | Expr::Theta => {}
            Expr::Neg(x)
            | Expr::Ct(x)
            | Expr::Huff(x, _)
            | Expr::Scale(x, _)
            | Expr::Subst(x, _)
            | Expr::Binom2(x) => x.walk(f),
            Expr::Bin(_, a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Expr::Poch { bases, step, len } => {
                for b in bases {
                    b.walk(f);
                }
                step.walk(f);
                if let Some(l) = len {
                    l.walk(f);
                }
            }
            Expr::Sum { binders, body } => {
                for (_, lo) in binders {
                    lo.walk(f);
                }
                body.walk(f);
            }
        }
    }
}

/// Coefficient ring requested by an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RingHint {
    Rational,
    Eisenstein,
    PolyA,
    LaurentZ,
}

impl RingHint {
    pub fn keyword(self) -> &'static str {
        match self {
            RingHint::Rational => "rational",
            RingHint::Eisenstein => "eisenstein",
            RingHint::PolyA => "poly-a",
            RingHint::LaurentZ => "laurent-z",
        }
    }

    pub fn from_keyword(s: &str) -> Option<RingHint> {
        Some(match s {
            "rational" => RingHint::Rational,
            "eisenstein" => RingHint::Eisenstein,
            "poly-a" => RingHint::PolyA,
            "laurent-z" => RingHint::LaurentZ,
            _ => return None,
        })
    }
}

/// A named identity `lhs = rhs` from a catalog.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityEntry {
    pub name: String,
    pub order: Option<i64>,
    pub ring: Option<RingHint>,
    pub tags: Vec<String>,
    pub lhs: Expr,
    pub rhs: Expr,
}
