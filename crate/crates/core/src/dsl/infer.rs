use super::ast::{BinOp, Expr, IdentityEntry, RingHint};
use crate::error::{Error, Result};

/// Concrete coefficient ring an identity is evaluated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Rational,
    Eisenstein,
    PolyA,
    /// Laurent polynomials in `z` over `Q`.
    LaurentZ,
    /// Laurent polynomials in `z` over `Q(ω)`.
    LaurentZOmega,
}

#[derive(Default, Debug)]
struct Usage {
    a: bool,
    omega: bool,
    ct: bool,
    /// `z` or `jtp_theta()` outside any `ct`.
    free_z: bool,
    /// `z` or `jtp_theta()` inside a `ct`.
    bound_z: bool,
}

fn conflict(msg: impl Into<String>) -> Error {
    Error::RingConflict(msg.into())
}

const SYMBOLS: [&str; 4] = ["q", "a", "z", "omega"];

/// Symbols `q`, `a`, `z`, `omega` may not occur where an integer is expected.
fn check_exponent(e: &Expr) -> Result<()> {
    let mut bad = None;
    e.walk(&mut |x| {
        if let Expr::Var(v) = x {
            if bad.is_none() && SYMBOLS.contains(&v.as_str()) {
                bad = Some(v.clone());
            }
        }
        if matches!(x, Expr::Theta) && bad.is_none() {
            bad = Some("jtp_theta()".into());
        }
    });
    match bad {
        Some(v) => Err(conflict(format!("`{v}` cannot appear in an exponent or index bound"))),
        None => Ok(()),
    }
}

fn scan(e: &Expr, in_ct: bool, u: &mut Usage) -> Result<()> {
    match e {
        Expr::Num(_) => Ok(()),
        Expr::Var(v) => {
            match v.as_str() {
                "a" => u.a = true,
                "omega" => u.omega = true,
                "z" if in_ct => u.bound_z = true,
                "z" => u.free_z = true,
                _ => {}
            }
            Ok(())
        }
        Expr::Theta => {
            if in_ct {
                u.bound_z = true;
            } else {
                u.free_z = true;
            }
            Ok(())
        }
        Expr::Neg(x) | Expr::Huff(x, _) | Expr::Scale(x, _) => scan(x, in_ct, u),
        Expr::Subst(x, k) => {
            if *k != 0 {
                u.omega = true;
            }
            scan(x, in_ct, u)
        }
        Expr::Binom2(x) => check_exponent(x),
        Expr::Bin(BinOp::Pow, b, x) => {
            check_exponent(x)?;
            scan(b, in_ct, u)
        }
        Expr::Bin(_, a, b) => {
            scan(a, in_ct, u)?;
            scan(b, in_ct, u)
        }
        Expr::Poch { bases, step, len } => {
            for b in bases {
                scan(b, in_ct, u)?;
            }
            scan(step, in_ct, u)?;
            if let Some(l) = len {
                check_exponent(l)?;
            }
            Ok(())
        }
        Expr::Sum { binders, body } => {
            for (_, lo) in binders {
                check_exponent(lo)?;
            }
            scan(body, in_ct, u)
        }
        Expr::Ct(x) => {
            if in_ct {
                return Err(conflict("nested ct(...)"));
            }
            u.ct = true;
            scan(x, true, u)
        }
    }
}

fn infer(exprs: &[&Expr], hint: Option<RingHint>) -> Result<RingKind> {
    let mut u = Usage::default();
    for e in exprs {
        scan(e, false, &mut u)?;
    }
    let any_z = u.free_z || u.bound_z || u.ct;
    if u.a && (any_z || u.omega) {
        return Err(conflict("`a` cannot be mixed with `z`, `omega` or ct(...)"));
    }
    let kind = match hint {
        Some(RingHint::PolyA) => {
            if any_z || u.omega {
                return Err(conflict("ring poly-a admits only `a` and `q`"));
            }
            RingKind::PolyA
        }
        Some(RingHint::LaurentZ) => {
            if u.a {
                return Err(conflict("ring laurent-z does not admit `a`"));
            }
            if u.ct {
                return Err(conflict("ct(...) inside a laurent-z identity"));
            }
            if u.omega {
                RingKind::LaurentZOmega
            } else {
                RingKind::LaurentZ
            }
        }
        Some(h @ (RingHint::Rational | RingHint::Eisenstein)) => {
            if u.a {
                return Err(conflict(format!("ring {} does not admit `a`", h.keyword())));
            }
            if u.free_z {
                return Err(conflict("`z` outside ct(...) needs ring laurent-z"));
            }
            if u.omega && h == RingHint::Rational {
                return Err(conflict("`omega` in a rational identity"));
            }
            if u.omega || h == RingHint::Eisenstein {
                RingKind::Eisenstein
            } else {
                RingKind::Rational
            }
        }
        None => {
            if u.free_z {
                return Err(conflict("`z` outside ct(...) needs ring laurent-z"));
            }
            if u.a {
                RingKind::PolyA
            } else if u.omega {
                RingKind::Eisenstein
            } else {
                RingKind::Rational
            }
        }
    };
    Ok(kind)
}

/// Ring of an entry, from its symbols and its optional hint.
pub fn infer_entry(entry: &IdentityEntry) -> Result<RingKind> {
    infer(&[&entry.lhs, &entry.rhs], entry.ring)
}

/// Ring of a lone expression.
pub fn infer_expr(e: &Expr, hint: Option<RingHint>) -> Result<RingKind> {
    infer(&[e], hint)
}
