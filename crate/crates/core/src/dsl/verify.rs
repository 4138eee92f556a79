use std::time::Instant;

use serde::Serialize;

use super::ast::{BinOp, Expr, IdentityEntry, RingHint};
use super::infer::{infer_entry, infer_expr, RingKind};
use super::lower::{lower, DslRing};
use crate::error::{Error, Result};
use crate::rings::{Eisenstein, PolyA, PolyZ, Rational};
use crate::series::{Mismatch, QSeries};

/// Truncation order used when neither the caller nor the entry sets one.
pub const DEFAULT_ORDER: i64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Outcome of checking one entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub status: Status,
    pub order: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_diff_exp: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_coeff: Option<String>,
    /// Error variant name; not part of the JSON report.
    #[serde(skip)]
    pub error_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Order for an entry: explicit request, then the entry's own, then the default.
pub fn resolve_order(entry: &IdentityEntry, requested: Option<i64>) -> i64 {
    requested.or(entry.order).unwrap_or(DEFAULT_ORDER)
}

fn compare_in<R: DslRing>(entry: &IdentityEntry, order: i64) -> Result<Option<Mismatch>> {
    let lhs = lower::<R>(&entry.lhs)?;
    let rhs = lower::<R>(&entry.rhs)?;
    lhs.eval(order)?.compare_through(&rhs.eval(order)?, order)
}

/// First disagreement of the two sides below `order`, if any.
pub fn compare_entry(entry: &IdentityEntry, order: i64) -> Result<Option<Mismatch>> {
    match infer_entry(entry)? {
        RingKind::Rational => compare_in::<Rational>(entry, order),
        RingKind::Eisenstein => compare_in::<Eisenstein>(entry, order),
        RingKind::PolyA => compare_in::<PolyA>(entry, order),
        RingKind::LaurentZ => compare_in::<PolyZ<Rational>>(entry, order),
        RingKind::LaurentZOmega => compare_in::<PolyZ<Eisenstein>>(entry, order),
    }
}

/// Checks `entry` through `q^{order−1}`, the order resolved by [`resolve_order`].
pub fn verify(entry: &IdentityEntry, requested: Option<i64>) -> VerificationReport {
    let order = resolve_order(entry, requested);
    let start = Instant::now();
    let outcome = compare_entry(entry, order);
    let mut report = VerificationReport {
        name: entry.name.clone(),
        status: Status::Pass,
        order,
        first_diff_exp: None,
        lhs_coeff: None,
        rhs_coeff: None,
        error_kind: None,
        error: None,
        ms: start.elapsed().as_millis() as u64,
    };
    match outcome {
        Ok(None) => {}
        Ok(Some(m)) => {
            report.status = Status::Fail;
            report.first_diff_exp = Some(m.exponent);
            report.lhs_coeff = Some(m.lhs);
            report.rhs_coeff = Some(m.rhs);
        }
        Err(e) => {
            report.status = Status::Error;
            report.error_kind = Some(e.kind().to_string());
            report.error = Some(e.to_string());
        }
    }
    report
}

/// Nonzero coefficients of an expression, rendered as strings.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub ring: RingKind,
    pub order: i64,
    pub terms: Vec<(i64, String)>,
}

fn expand_in<R: DslRing>(e: &Expr, order: i64) -> Result<Vec<(i64, String)>> {
    let f: QSeries<R> = lower::<R>(e)?.eval(order)?;
    Ok(f.iter_nonzero().map(|(k, c)| (k, c.to_string())).collect())
}

/// Evaluates a lone expression exactly below `order`.
pub fn expand(e: &Expr, hint: Option<RingHint>, order: i64) -> Result<Expansion> {
    let ring = infer_expr(e, hint)?;
    let terms = match ring {
        RingKind::Rational => expand_in::<Rational>(e, order)?,
        RingKind::Eisenstein => expand_in::<Eisenstein>(e, order)?,
        RingKind::PolyA => expand_in::<PolyA>(e, order)?,
        RingKind::LaurentZ => expand_in::<PolyZ<Rational>>(e, order)?,
        RingKind::LaurentZOmega => expand_in::<PolyZ<Eisenstein>>(e, order)?,
    };
    Ok(Expansion { ring, order, terms })
}

/// Wraps `e` in `ct(...)` unless it already is one.
pub fn as_constant_term(e: Expr) -> Expr {
    match e {
        Expr::Ct(_) => e,
        _ => Expr::Ct(Box::new(e)),
    }
}

fn is_q(e: &Expr) -> bool {
    matches!(e, Expr::Var(v) if v == "q")
}

/// Raises the first explicit power of `q` by one, skipping any that would
/// become `q^0`. Pochhammer steps and lengths are left alone.
fn bump_q(e: &mut Expr) -> bool {
    match e {
        _ if is_q(e) => {
            *e = Expr::bin(BinOp::Pow, Expr::var("q"), Expr::num(2));
            true
        }
        Expr::Bin(BinOp::Pow, b, x) if is_q(b) => {
            let k = match &**x {
                Expr::Num(k) => k.to_i64(),
                Expr::Neg(inner) => match &**inner {
                    Expr::Num(k) => k.to_i64().map(|k| -k),
                    _ => None,
                },
                _ => None,
            };
            match k {
                Some(-1) => false,
                Some(k) if k + 1 < 0 => {
                    **x = Expr::Neg(Box::new(Expr::num(-(k + 1))));
                    true
                }
                Some(k) => {
                    **x = Expr::num(k + 1);
                    true
                }
                None => {
                    let old = std::mem::replace(&mut **x, Expr::num(0));
                    **x = Expr::bin(BinOp::Add, old, Expr::num(1));
                    true
                }
            }
        }
        Expr::Bin(BinOp::Pow, b, _) => bump_q(b),
        Expr::Bin(_, a, b) => bump_q(a) || bump_q(b),
        Expr::Neg(x) | Expr::Ct(x) | Expr::Huff(x, _) | Expr::Scale(x, _) | Expr::Subst(x, _) => {
            bump_q(x)
        }
        Expr::Poch { bases, .. } => bases.iter_mut().any(bump_q),
        Expr::Sum { body, .. } => bump_q(body),
        Expr::Num(_) | Expr::Var(_) | Expr::Theta | Expr::Binom2(_) => false,
    }
}

/// Negative control: the entry with one `q`-exponent perturbed, on the
/// right-hand side if possible. `None` if there is nothing to perturb.
pub fn mutate(entry: &IdentityEntry) -> Option<IdentityEntry> {
    let mut out = entry.clone();
    out.name = format!("{}~mutated", entry.name);
    if bump_q(&mut out.rhs) || bump_q(&mut out.lhs) {
        Some(out)
    } else {
        None
    }
}

/// Parses and verifies every entry of a catalog in order.
pub fn verify_catalog(src: &str, requested: Option<i64>) -> Result<Vec<VerificationReport>, Error> {
    Ok(super::parse_catalog(src)?
        .iter()
        .map(|e| verify(e, requested))
        .collect())
}
