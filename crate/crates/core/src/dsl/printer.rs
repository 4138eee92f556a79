use std::fmt::Write;

use super::ast::{BinOp, Expr, IdentityEntry};

const ADD: u8 = 1;
const MUL: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

/// Renders an expression so that it parses back to the same tree.
pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, ADD);
    s
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => ADD,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => MUL,
        Expr::Neg(_) => UNARY,
        Expr::Bin(BinOp::Pow, ..) => 4,
        _ => ATOM,
    }
}

fn write_expr(s: &mut String, e: &Expr, min: u8) {
    if prec(e) < min {
        s.push('(');
        write_expr(s, e, ADD);
        s.push(')');
        return;
    }
    match e {
        Expr::Num(r) => write!(s, "{r}").unwrap(),
        Expr::Var(v) => s.push_str(v),
        Expr::Neg(x) => {
            s.push('-');
            write_expr(s, x, UNARY);
        }
        Expr::Bin(op, a, b) => {
            let (text, l, r) = match op {
                BinOp::Add => (" + ", ADD, MUL),
                BinOp::Sub => (" - ", ADD, MUL),
                BinOp::Mul => ("*", MUL, UNARY),
                BinOp::Div => ("/", MUL, UNARY),
                BinOp::Pow => ("^", ATOM, UNARY),
            };
            write_expr(s, a, l);
            s.push_str(text);
            write_expr(s, b, r);
        }
        Expr::Poch { bases, step, len } => {
            s.push_str("poch(");
            for (i, b) in bases.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                write_expr(s, b, ADD);
            }
            s.push_str("; ");
            write_expr(s, step, ADD);
            s.push_str("; ");
            match len {
                Some(l) => write_expr(s, l, ADD),
                None => s.push_str("inf"),
            }
            s.push(')');
        }
        Expr::Sum { binders, body } => {
            s.push_str("sum(");
            for (i, (v, lo)) in binders.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                write!(s, "{v} >= ").unwrap();
                write_expr(s, lo, ADD);
            }
            s.push_str("; ");
            write_expr(s, body, ADD);
            s.push(')');
        }
        Expr::Ct(x) => {
            s.push_str("ct(");
            write_expr(s, x, ADD);
            s.push(')');
        }
        Expr::Huff(x, m) | Expr::Scale(x, m) => {
            s.push_str(if matches!(e, Expr::Huff(..)) { "huff(" } else { "scale(" });
            write_expr(s, x, ADD);
            write!(s, ", {m})").unwrap();
        }
        Expr::Subst(x, k) => {
            s.push_str("subst(");
            write_expr(s, x, ADD);
            match k {
                0 => s.push_str("; q -> q)"),
                1 => s.push_str("; q -> omega*q)"),
                _ => write!(s, "; q -> omega^{k}*q)").unwrap(),
            }
        }
        Expr::Theta => s.push_str("jtp_theta()"),
        Expr::Binom2(x) => {
            s.push_str("C(");
            write_expr(s, x, ADD);
            s.push_str(", 2)");
        }
    }
}

fn quote(name: &str) -> String {
    format!("\"{name}\"")
}

/// Renders one catalog entry.
pub fn print_entry(entry: &IdentityEntry) -> String {
    let mut s = format!("identity {}", quote(&entry.name));
    if let Some(n) = entry.order {
        write!(s, " order {n}").unwrap();
    }
    if let Some(r) = entry.ring {
        write!(s, " ring {}", r.keyword()).unwrap();
    }
    if !entry.tags.is_empty() {
        let tags: Vec<String> = entry.tags.iter().map(|t| quote(t)).collect();
        write!(s, " tags({})", tags.join(", ")).unwrap();
    }
    write!(
        s,
        " {{\n  lhs = {};\n  rhs = {};\n}}\n",
        print_expr(&entry.lhs),
        print_expr(&entry.rhs)
    )
    .unwrap();
    s
}

pub fn print_catalog(entries: &[IdentityEntry]) -> String {
    entries.iter().map(print_entry).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::super::parser::{parse_catalog, parse_expr};
    use super::*;

    #[test]
    fn round_trips() {
        for src in [
            "-q^2*3 + 1",
            "(q^2)^3",
            "q^(n + 1)",
            "a - (b - c)",
            "a/(b*c)",
            "-(-q)",
            "(-1)^n*q^C(n, 2)/poch(q, -q^-1; q^2; n)",
            "subst(poch(q; q; inf); q -> omega^2*q)",
            "huff(ct(poch(z, q/z; q; inf)), 3) - scale(jtp_theta(), 2)",
            "sum(m >= 0, n >= 1; q^(m*n)/poch(q; q; m + n))",
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(parse_expr(&print_expr(&e)).unwrap(), e, "{src}");
        }
    }

    #[test]
    fn entries_round_trip() {
        let src = "identity \"x-1\" order 30 ring eisenstein tags(a, b) { lhs = omega rhs = 1 }";
        let cat = parse_catalog(src).unwrap();
        assert_eq!(parse_catalog(&print_catalog(&cat)).unwrap(), cat);
    }
}
