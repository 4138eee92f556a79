use super::ast::{BinOp, Expr, IdentityEntry, RingHint};
use super::lexer::{syntax, tokenize, Tok, Token};
use crate::error::Result;
use crate::rings::Rational;

/// Parses a whole catalog.
pub fn parse_catalog(src: &str) -> Result<Vec<IdentityEntry>> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while p.peek() != &Tok::Eof {
        out.push(p.entry()?);
    }
    Ok(out)
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of expression"));
    }
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> crate::Error {
        let t = self.here();
        syntax(
            t.line,
            t.column,
            format!("expected {wanted}, found {}", t.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if self.peek() == &tok {
            Ok(self.next())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    /// Closes a group opened by `open`; a missing closer is reported at the opener.
    fn close(&mut self, open: &Token, closer: Tok) -> Result<()> {
        if self.eat(&closer) {
            return Ok(());
        }
        Err(syntax(
            open.line,
            open.column,
            format!(
                "unclosed {}: expected {} before {}",
                open.tok.describe(),
                closer.describe(),
                self.peek().describe()
            ),
        ))
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.next();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{word}`"))),
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    /// A quoted string, or identifiers and integers joined by `-` (`poly-a`, `k2-i1`).
    fn word(&mut self, what: &str) -> Result<String> {
        let mut w = match self.peek().clone() {
            Tok::Str(s) => {
                self.next();
                return Ok(s);
            }
            Tok::Ident(s) => s,
            _ => return Err(self.unexpected(what)),
        };
        self.next();
        while self.peek() == &Tok::Minus && matches!(self.peek_at(1), Tok::Ident(_) | Tok::Int(_)) {
            self.next();
            match self.next().tok {
                Tok::Ident(s) | Tok::Int(s) => {
                    w.push('-');
                    w.push_str(&s);
                }
                _ => unreachable!(),
            }
        }
        Ok(w)
    }

    fn int(&mut self) -> Result<i64> {
        let negative = self.eat(&Tok::Minus);
        let t = self.here().clone();
        match &t.tok {
            Tok::Int(s) => {
                self.next();
                let v: i64 = s
                    .parse()
                    .map_err(|_| syntax(t.line, t.column, "integer out of range"))?;
                Ok(if negative { -v } else { v })
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn entry(&mut self) -> Result<IdentityEntry> {
        self.keyword("identity")?;
        let name = self.word("an identity name")?;
        let mut entry = IdentityEntry {
            name,
            order: None,
            ring: None,
            tags: Vec::new(),
            lhs: Expr::num(0),
            rhs: Expr::num(0),
        };
        loop {
            if self.is_keyword("order") {
                self.next();
                let t = self.here().clone();
                let n = self.int()?;
                if n < 1 {
                    return Err(syntax(t.line, t.column, "order must be positive"));
                }
                entry.order = Some(n);
            } else if self.is_keyword("ring") {
                self.next();
                let t = self.here().clone();
                let word = self.word("a ring name")?;
                entry.ring = Some(RingHint::from_keyword(&word).ok_or_else(|| {
                    syntax(t.line, t.column, format!("unknown ring `{word}`"))
                })?);
            } else if self.is_keyword("tags") {
                self.next();
                let open = self.expect(Tok::LParen)?;
                while !matches!(self.peek(), Tok::RParen | Tok::Eof) {
                    entry.tags.push(self.word("a tag")?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.close(&open, Tok::RParen)?;
            } else {
                break;
            }
        }
        let open = self.expect(Tok::LBrace)?;
        self.keyword("lhs")?;
        self.expect(Tok::Eq)?;
        entry.lhs = self.expr()?;
        self.eat(&Tok::Semi);
        self.keyword("rhs")?;
        self.expect(Tok::Eq)?;
        entry.rhs = self.expr()?;
        self.eat(&Tok::Semi);
        self.close(&open, Tok::RBrace)?;
        Ok(entry)
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next();
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            return Ok(Expr::bin(BinOp::Pow, base, self.unary()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.here().clone();
        match &t.tok {
            Tok::Int(s) => {
                self.next();
                let r: Rational = s
                    .parse()
                    .map_err(|_| syntax(t.line, t.column, "bad integer literal"))?;
                Ok(Expr::Num(r))
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.close(&t, Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if self.peek_at(1) == &Tok::LParen => {
                let name = name.clone();
                self.next();
                let open = self.next();
                let e = self.call(&name, &t)?;
                self.close(&open, Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.next();
                Ok(Expr::Var(name.clone()))
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    /// Body of `name( ... )` after the opening parenthesis.
    fn call(&mut self, name: &str, at: &Token) -> Result<Expr> {
        match name {
            "poch" => {
                let mut bases = vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    bases.push(self.expr()?);
                }
                self.expect(Tok::Semi)?;
                let step = self.expr()?;
                self.expect(Tok::Semi)?;
                let len = if self.is_keyword("inf") {
                    self.next();
                    None
                } else {
                    Some(Box::new(self.expr()?))
                };
                Ok(Expr::Poch {
                    bases,
                    step: Box::new(step),
                    len,
                })
            }
            "sum" => {
                let mut binders = Vec::new();
                loop {
                    let v = self.ident()?;
                    self.expect(Tok::Ge)?;
                    binders.push((v, self.expr()?));
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::Semi)?;
                Ok(Expr::Sum {
                    binders,
                    body: Box::new(self.expr()?),
                })
            }
            "ct" => Ok(Expr::Ct(Box::new(self.expr()?))),
            "huff" | "scale" => {
                let e = self.expr()?;
                self.expect(Tok::Comma)?;
                let t = self.here().clone();
                let m = self.int()?;
                if m < 1 {
                    return Err(syntax(t.line, t.column, format!("{name} needs a positive modulus")));
                }
                Ok(if name == "huff" {
                    Expr::Huff(Box::new(e), m)
                } else {
                    Expr::Scale(Box::new(e), m)
                })
            }
            "subst" => {
                let e = self.expr()?;
                self.expect(Tok::Semi)?;
                let t = self.here().clone();
                if self.ident()? != "q" {
                    return Err(syntax(t.line, t.column, "only `q` can be substituted"));
                }
                self.expect(Tok::Arrow)?;
                let t = self.here().clone();
                let target = self.expr()?;
                let k = omega_shift(&target).ok_or_else(|| {
                    syntax(t.line, t.column, "substitution target must be omega^k*q")
                })?;
                Ok(Expr::Subst(Box::new(e), k))
            }
            "jtp_theta" => Ok(Expr::Theta),
            "C" => {
                let e = self.expr()?;
                self.expect(Tok::Comma)?;
                let t = self.here().clone();
                if self.int()? != 2 {
                    return Err(syntax(t.line, t.column, "only C(x, 2) is supported"));
                }
                Ok(Expr::Binom2(Box::new(e)))
            }
            _ => Err(syntax(at.line, at.column, format!("unknown function `{name}`"))),
        }
    }
}

/// `k` for a target of the form `q`, `omega^k*q` or `q*omega^k`.
fn omega_shift(e: &Expr) -> Option<i64> {
    fn omega_power(e: &Expr) -> Option<i64> {
        match e {
            Expr::Var(v) if v == "omega" => Some(1),
            Expr::Bin(BinOp::Pow, b, k) => match (&**b, &**k) {
                (Expr::Var(v), Expr::Num(n)) if v == "omega" => n.to_i64(),
                _ => None,
            },
            _ => None,
        }
    }
    let is_q = |e: &Expr| matches!(e, Expr::Var(v) if v == "q");
    let k = match e {
        _ if is_q(e) => 0,
        Expr::Bin(BinOp::Mul, a, b) if is_q(b) => omega_power(a)?,
        Expr::Bin(BinOp::Mul, a, b) if is_q(a) => omega_power(b)?,
        _ => return None,
    };
    Some(k.rem_euclid(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn precedence() {
        let e = parse_expr("-q^2*3 + 1").unwrap();
        let expect = Expr::bin(
            BinOp::Add,
            Expr::bin(
                BinOp::Mul,
                Expr::Neg(Box::new(Expr::bin(BinOp::Pow, Expr::var("q"), Expr::num(2)))),
                Expr::num(3),
            ),
            Expr::num(1),
        );
        assert_eq!(e, expect);
        let e = parse_expr("q^n^2").unwrap();
        let expect = Expr::bin(
            BinOp::Pow,
            Expr::var("q"),
            Expr::bin(BinOp::Pow, Expr::var("n"), Expr::num(2)),
        );
        assert_eq!(e, expect);
        let e = parse_expr("q^-1").unwrap();
        assert_eq!(
            e,
            Expr::bin(BinOp::Pow, Expr::var("q"), Expr::Neg(Box::new(Expr::num(1))))
        );
    }

    #[test]
    fn constructs() {
        let e = parse_expr("sum(n>=0, m>=1; q^C(n,2)/poch(q, -q;q^2;n))").unwrap();
        let Expr::Sum { binders, body } = e else { panic!() };
        assert_eq!(binders.len(), 2);
        assert_eq!(binders[1].0, "m");
        assert!(matches!(*body, Expr::Bin(BinOp::Div, _, _)));
        assert_eq!(
            parse_expr("subst(q; q -> omega^2*q)").unwrap(),
            Expr::Subst(Box::new(Expr::var("q")), 2)
        );
        assert_eq!(
            parse_expr("poch(q;q;inf)").unwrap(),
            Expr::Poch {
                bases: vec![Expr::var("q")],
                step: Box::new(Expr::var("q")),
                len: None
            }
        );
        assert!(matches!(parse_expr("huff(ct(jtp_theta()), 3)").unwrap(), Expr::Huff(_, 3)));
    }

    #[test]
    fn entries() {
        let src = r#"
# two entries
identity "RR-1" order 40 ring rational tags(classical, "sum side") {
  lhs = sum(n>=0; q^(n^2)/poch(q;q;n));
  rhs = 1/(poch(q;q^5;inf)*poch(q^4;q^5;inf))
}
identity long-series-2 ring poly-a tags(constant-term) { lhs = poch(a;q;3) rhs = 1 }
"#;
        let cat = parse_catalog(src).unwrap();
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[0].name, "RR-1");
        assert_eq!(cat[0].order, Some(40));
        assert_eq!(cat[0].tags, vec!["classical", "sum side"]);
        assert_eq!(cat[1].ring, Some(RingHint::PolyA));
        assert_eq!(cat[1].name, "long-series-2");
        assert_eq!(cat[1].tags, vec!["constant-term"]);
    }

    #[test]
    fn unclosed_paren_points_at_opener() {
        let src = "identity x {\n  lhs = sum(n>=0; q^n\n  rhs = 1\n}";
        match parse_catalog(src) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 12)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stray_tokens() {
        assert!(matches!(parse_expr("q +"), Err(Error::Syntax { line: 1, column: 4, .. })));
        assert!(matches!(parse_expr("q q"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("C(n, 3)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("subst(q; q -> 2*q)"), Err(Error::Syntax { .. })));
    }
}
