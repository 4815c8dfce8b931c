//! Polynomial expressions: `+ - * / ^`, parentheses, integer literals and
//! identifiers. `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.
//! Juxtaposition is not multiplication.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{tokenize, Pos, Tok, Token};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Parsed expression; equality ignores source positions.
#[derive(Clone, Debug)]
pub enum Expr {
    Num(BigInt, Pos),
    Name(String, Pos),
    Neg(Box<Expr>, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32, Pos),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Num(_, p) | Expr::Name(_, p) | Expr::Neg(_, p) => *p,
            Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Div(a, _, _) | Expr::Pow(a, _, _) => a.pos(),
        }
    }

    /// Every identifier in the expression with its position.
    pub fn names(&self, out: &mut Vec<(String, Pos)>) {
        match self {
            Expr::Num(..) => {}
            Expr::Name(n, p) => out.push((n.clone(), *p)),
            Expr::Neg(a, _) | Expr::Pow(a, _, _) => a.names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.names(out);
                b.names(out);
            }
        }
    }

    /// Evaluates in `ring`. Identifiers that are not ring variables are
    /// looked up through `lookup`.
    pub fn eval(&self, ring: &PolyRing, lookup: &dyn Fn(&str) -> Option<Poly>) -> Result<Poly> {
        Ok(match self {
            Expr::Num(n, _) => ring.constant(ring.field().from_bigint(n)),
            Expr::Name(n, p) => match ring.var_index(n) {
                Some(i) => ring.var(i),
                None => lookup(n).ok_or_else(|| p.error(format!("undeclared identifier `{n}`")))?,
            },
            Expr::Neg(a, _) => -&a.eval(ring, lookup)?,
            Expr::Add(a, b) => a.eval(ring, lookup)?.checked_add(&b.eval(ring, lookup)?)?,
            Expr::Sub(a, b) => a.eval(ring, lookup)?.checked_sub(&b.eval(ring, lookup)?)?,
            Expr::Mul(a, b) => a.eval(ring, lookup)?.checked_mul(&b.eval(ring, lookup)?)?,
            Expr::Div(a, b, p) => {
                let d = b.eval(ring, lookup)?;
                if !d.is_constant() {
                    return Err(p.error("division is only allowed by nonzero constants"));
                }
                let c = d.constant_coeff();
                if c.is_zero() {
                    return Err(p.error("division by zero"));
                }
                a.eval(ring, lookup)?.scale(&c.inv()?)
            }
            Expr::Pow(a, e, _) => a.eval(ring, lookup)?.pow(*e),
        })
    }
}

/// Token cursor shared by the expression and statement parsers.
pub struct Cursor {
    toks: Vec<Token>,
    i: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Self {
        Cursor { toks, i: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    pub fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.i + k).min(self.toks.len() - 1)]
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    pub fn at(&self, t: &Tok) -> bool {
        &self.peek().tok == t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok, what: &str) -> Result<Token> {
        if self.at(t) {
            Ok(self.next())
        } else {
            Err(self.unexpected(what))
        }
    }

    pub fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        t.pos.error(format!("expected {expected}, found {}", t.tok.describe()))
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, Pos)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let p = self.next().pos;
                Ok((s, p))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// True when the next token can begin an expression.
    pub fn at_expr_start(&self) -> bool {
        matches!(
            self.peek().tok,
            Tok::Ident(_) | Tok::Int(_) | Tok::Minus | Tok::Plus | Tok::LParen
        )
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.at(&Tok::Slash) {
                let p = self.next().pos;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), p);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.at(&Tok::Minus) {
            let p = self.next().pos;
            return Ok(Expr::Neg(Box::new(self.unary()?), p));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.at(&Tok::Caret) {
            let p = self.next().pos;
            let t = self.next();
            let e = match t.tok {
                Tok::Int(n) => n.to_u32().ok_or_else(|| t.pos.error("exponent too large"))?,
                other => {
                    return Err(t.pos.error(format!(
                        "expected a nonnegative integer exponent, found {}",
                        other.describe()
                    )))
                }
            };
            if self.at(&Tok::Caret) {
                return Err(self.peek().pos.error("chained exponents need parentheses"));
            }
            return Ok(Expr::Pow(Box::new(base), e, p));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::Num(n, t.pos))
            }
            Tok::Ident(s) => {
                self.next();
                Ok(Expr::Name(s, t.pos))
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

/// Parses a single polynomial over the variables of `ring`.
pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly> {
    let mut c = Cursor::new(tokenize(text)?);
    let e = c.expr()?;
    if !c.at(&Tok::Eof) {
        return Err(c.unexpected("an operator or end of input"));
    }
    e.eval(ring, &|_| None)
}
