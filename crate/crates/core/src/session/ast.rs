//! Statements of the session language and their parser.
//!
//! ```text
//! ring R = QQ[x,y,z] degrevlex;          # or GF(32003)[...], weights(...)
//! ideal I = x^2 + y, y^2 - z;
//! poly f = x^3 - y^2;
//! matrix M = [[x, y], [z, 0]];
//! point P = 1:-1:0;
//! divisor D = 2*P - Q;
//! gb I lex;                              # command: name, arguments
//! let J = intersect I K;                 # bind a command result
//! use R;                                 # switch the active ring
//! ```

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::expr::{Cursor, Expr};
use super::lexer::{tokenize, Pos, Tok};
use crate::error::Result;

/// Command arguments.
#[derive(Clone, Debug)]
pub enum Arg {
    Word(String, Pos),
    /// `name(args)` with the parenthesis touching the name.
    Call(String, Vec<Arg>, Pos),
    Num(BigRational, Pos),
    Expr(Expr, Pos),
    List(Vec<Arg>, Pos),
    /// `a:b:c`
    Tuple(Vec<Arg>, Pos),
}

impl Arg {
    pub fn pos(&self) -> Pos {
        match self {
            Arg::Word(_, p)
            | Arg::Call(_, _, p)
            | Arg::Num(_, p)
            | Arg::Expr(_, p)
            | Arg::List(_, p)
            | Arg::Tuple(_, p) => *p,
        }
    }
}

impl PartialEq for Arg {
    /// Structural equality ignoring positions.
    fn eq(&self, other: &Arg) -> bool {
        self.to_string() == other.to_string()
    }
}

fn fmt_num(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Word(w, _) => write!(f, "{w}"),
            Arg::Call(n, a, _) => write!(f, "{n}({})", join(a, ", ")),
            Arg::Num(q, _) => write!(f, "{}", fmt_num(q)),
            Arg::Expr(e, _) => write!(f, "({e})"),
            Arg::List(a, _) => {
                // list elements are parsed as expressions, so no parentheses
                let items: Vec<String> = a
                    .iter()
                    .map(|x| match x {
                        Arg::Expr(e, _) => e.to_string(),
                        other => other.to_string(),
                    })
                    .collect();
                write!(f, "[{}]", items.join(", "))
            }
            Arg::Tuple(a, _) => write!(f, "{}", join(a, ":")),
        }
    }
}

// precedence levels for printing: sum 1, product 2, unary 3, power 4, atom 5
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(..) | Expr::Name(..) => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) >= min {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n, _) => write!(f, "{n}"),
            Expr::Name(n, _) => write!(f, "{n}"),
            Expr::Neg(a, _) => write!(f, "-{}", wrap(a, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Div(a, b, _) => write!(f, "{}/{}", wrap(a, 2), wrap(b, 3)),
            Expr::Pow(a, e, _) => write!(f, "{}^{e}", wrap(a, 5)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StatementKind {
    Ring {
        name: String,
        field: FieldSpec,
        vars: Vec<String>,
        weights: Option<Vec<u32>>,
        ordering: Option<Arg>,
    },
    Use(String),
    Ideal(String, Vec<Expr>),
    Poly(String, Expr),
    Matrix(String, Vec<Vec<Expr>>),
    Point(String, Vec<Arg>),
    Divisor(String, Vec<(i64, String)>),
    Command {
        bind: Option<String>,
        op: String,
        args: Vec<Arg>,
    },
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub kind: StatementKind,
    pub pos: Pos,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Statement) -> bool {
        self.kind == other.kind
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.to_string() == other.to_string()
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StatementKind::Ring {
                name,
                field,
                vars,
                weights,
                ordering,
            } => {
                write!(f, "ring {name} = {field}[{}]", vars.join(","))?;
                if let Some(w) = weights {
                    write!(f, " weights({})", join(w, ","))?;
                }
                if let Some(o) = ordering {
                    write!(f, " {o}")?;
                }
            }
            StatementKind::Use(n) => write!(f, "use {n}")?,
            StatementKind::Ideal(n, gens) => {
                write!(f, "ideal {n} = ")?;
                if gens.is_empty() {
                    write!(f, "0")?;
                } else {
                    write!(f, "{}", join(gens, ", "))?;
                }
            }
            StatementKind::Poly(n, e) => write!(f, "poly {n} = {e}")?,
            StatementKind::Matrix(n, rows) => {
                let r: Vec<String> = rows.iter().map(|row| format!("[{}]", join(row, ", "))).collect();
                write!(f, "matrix {n} = [{}]", r.join(", "))?;
            }
            StatementKind::Point(n, c) => write!(f, "point {n} = {}", join(c, ":"))?,
            StatementKind::Divisor(n, terms) => {
                write!(f, "divisor {n} = ")?;
                if terms.is_empty() {
                    write!(f, "0")?;
                }
                for (k, (c, p)) in terms.iter().enumerate() {
                    let (sign, abs) = if *c < 0 {
                        ("-", c.unsigned_abs())
                    } else {
                        ("+", *c as u64)
                    };
                    match (k, sign) {
                        (0, "+") => {}
                        (0, _) => write!(f, "-")?,
                        _ => write!(f, " {sign} ")?,
                    }
                    if abs != 1 {
                        write!(f, "{abs}*")?;
                    }
                    write!(f, "{p}")?;
                }
            }
            StatementKind::Command { bind, op, args } => {
                if let Some(b) = bind {
                    write!(f, "let {b} = ")?;
                }
                write!(f, "{op}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
            }
        }
        write!(f, ";")
    }
}

/// A parsed session.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SessionAst {
    pub statements: Vec<Statement>,
}

impl fmt::Display for SessionAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Argument count range and result category of each command.
pub(crate) fn command_arity(op: &str) -> Option<(usize, usize)> {
    Some(match op {
        "dim" | "closure" | "homogenize" | "std" | "localdim" | "syz" | "dual" => (1, 1),
        "gb" | "resolve" | "betti" | "hilbert" => (1, 2),
        "nf" => (2, 3),
        "contains" | "intersect" | "quotient" | "saturate" | "mult" | "milnor" | "adjoint" => (2, 2),
        "eliminate" => (2, usize::MAX),
        "imult" | "kernel" | "pluecker" => (3, 3),
        "genus" => (1, 2),
        "rrspace" => (2, 3),
        "bezout" => (4, 4),
        _ => return None,
    })
}

pub const COMMANDS: &[&str] = &[
    "gb",
    "nf",
    "contains",
    "eliminate",
    "dim",
    "intersect",
    "quotient",
    "saturate",
    "closure",
    "homogenize",
    "syz",
    "kernel",
    "resolve",
    "betti",
    "hilbert",
    "std",
    "localdim",
    "imult",
    "mult",
    "milnor",
    "dual",
    "pluecker",
    "genus",
    "adjoint",
    "rrspace",
    "bezout",
];

const KEYWORDS: &[&str] = &["ring", "use", "ideal", "poly", "matrix", "point", "divisor", "let"];

struct Parser {
    c: Cursor,
}

impl Parser {
    fn end(&mut self) -> Result<()> {
        self.c.expect(&Tok::Semi, "`;`").map(|_| ())
    }

    fn small_int(&mut self, what: &str) -> Result<u64> {
        let t = self.c.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.c.next();
                n.to_u64().ok_or_else(|| t.pos.error(format!("{what} too large")))
            }
            _ => Err(self.c.unexpected(what)),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let t = self.c.peek().clone();
        let pos = t.pos;
        let Tok::Ident(word) = &t.tok else {
            return Err(self.c.unexpected("a statement"));
        };
        let kind = match word.as_str() {
            "ring" => {
                self.c.next();
                self.ring()?
            }
            "use" => {
                self.c.next();
                StatementKind::Use(self.c.ident("a ring name")?.0)
            }
            "ideal" => {
                self.c.next();
                let name = self.binder()?;
                let mut gens = vec![self.c.expr()?];
                while self.c.eat(&Tok::Comma) {
                    gens.push(self.c.expr()?);
                }
                if gens.len() == 1 && matches!(&gens[0], Expr::Num(n, _) if n.is_zero()) {
                    gens.clear();
                }
                StatementKind::Ideal(name, gens)
            }
            "poly" => {
                self.c.next();
                let name = self.binder()?;
                StatementKind::Poly(name, self.c.expr()?)
            }
            "matrix" => {
                self.c.next();
                let name = self.binder()?;
                StatementKind::Matrix(name, self.matrix_rows()?)
            }
            "point" => {
                self.c.next();
                let name = self.binder()?;
                let a = self.arg()?;
                let coords = match a {
                    Arg::Tuple(v, _) => v,
                    other => vec![other],
                };
                for x in &coords {
                    if !matches!(x, Arg::Num(..) | Arg::Expr(..)) {
                        return Err(x.pos().error("point coordinates must be numbers"));
                    }
                }
                StatementKind::Point(name, coords)
            }
            "divisor" => {
                self.c.next();
                let name = self.binder()?;
                StatementKind::Divisor(name, self.divisor_terms()?)
            }
            "let" => {
                self.c.next();
                let name = self.binder()?;
                let (op, args) = self.command()?;
                StatementKind::Command {
                    bind: Some(name),
                    op,
                    args,
                }
            }
            _ => {
                let (op, args) = self.command()?;
                StatementKind::Command { bind: None, op, args }
            }
        };
        self.end()?;
        Ok(Statement { kind, pos })
    }

    fn binder(&mut self) -> Result<String> {
        let (name, p) = self.c.ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) || COMMANDS.contains(&name.as_str()) {
            return Err(p.error(format!("`{name}` is reserved")));
        }
        self.c.expect(&Tok::Eq, "`=`")?;
        Ok(name)
    }

    fn ring(&mut self) -> Result<StatementKind> {
        let name = self.binder()?;
        let (f, fp) = self.c.ident("a field (QQ or GF(p))")?;
        let field = match f.as_str() {
            "QQ" => FieldSpec::Rationals,
            "GF" => {
                self.c.expect(&Tok::LParen, "`(`")?;
                let p = self.small_int("a prime")?;
                self.c.expect(&Tok::RParen, "`)`")?;
                FieldSpec::Prime(p)
            }
            _ => return Err(fp.error(format!("unknown field `{f}`; expected QQ or GF(p)"))),
        };
        self.c.expect(&Tok::LBracket, "`[`")?;
        let mut vars = vec![self.c.ident("a variable name")?.0];
        while self.c.eat(&Tok::Comma) {
            vars.push(self.c.ident("a variable name")?.0);
        }
        self.c.expect(&Tok::RBracket, "`]`")?;
        let mut weights = None;
        if matches!(&self.c.peek().tok, Tok::Ident(w) if w == "weights") {
            self.c.next();
            self.c.expect(&Tok::LParen, "`(`")?;
            let mut w = Vec::new();
            loop {
                let t = self.c.peek().pos;
                let v = self.small_int("a weight")?;
                w.push(u32::try_from(v).map_err(|_| t.error("weight too large"))?);
                if !self.c.eat(&Tok::Comma) {
                    break;
                }
            }
            self.c.expect(&Tok::RParen, "`)`")?;
            weights = Some(w);
        }
        let ordering = if self.c.at(&Tok::Semi) { None } else { Some(self.arg()?) };
        Ok(StatementKind::Ring {
            name,
            field,
            vars,
            weights,
            ordering,
        })
    }

    fn matrix_rows(&mut self) -> Result<Vec<Vec<Expr>>> {
        self.c.expect(&Tok::LBracket, "`[`")?;
        let mut rows = Vec::new();
        loop {
            self.c.expect(&Tok::LBracket, "`[` starting a row")?;
            let mut row = vec![self.c.expr()?];
            while self.c.eat(&Tok::Comma) {
                row.push(self.c.expr()?);
            }
            self.c.expect(&Tok::RBracket, "`]`")?;
            rows.push(row);
            if !self.c.eat(&Tok::Comma) {
                break;
            }
        }
        self.c.expect(&Tok::RBracket, "`]`")?;
        Ok(rows)
    }

    fn divisor_terms(&mut self) -> Result<Vec<(i64, String)>> {
        if matches!(&self.c.peek().tok, Tok::Int(n) if n.is_zero()) && self.c.peek_at(1).tok == Tok::Semi {
            self.c.next();
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let sign = if self.c.eat(&Tok::Minus) {
                -1
            } else if self.c.eat(&Tok::Plus) || first {
                1
            } else {
                break;
            };
            first = false;
            let mut coeff = 1i64;
            if let Tok::Int(_) = self.c.peek().tok {
                let p = self.c.peek().pos;
                coeff =
                    i64::try_from(self.small_int("a coefficient")?).map_err(|_| p.error("coefficient too large"))?;
                self.c.expect(&Tok::Star, "`*`")?;
            }
            let (name, _) = self.c.ident("a point name")?;
            out.push((sign * coeff, name));
        }
        Ok(out)
    }

    fn command(&mut self) -> Result<(String, Vec<Arg>)> {
        let (op, p) = self.c.ident("a command")?;
        let Some((lo, hi)) = command_arity(&op) else {
            return Err(p.error(format!("unknown command `{op}`")));
        };
        let mut args = Vec::new();
        while !self.c.at(&Tok::Semi) && !self.c.at(&Tok::Eof) {
            args.push(self.arg()?);
        }
        if args.len() < lo || args.len() > hi {
            let want = if lo == hi {
                lo.to_string()
            } else if hi == usize::MAX {
                format!("at least {lo}")
            } else {
                format!("{lo} to {hi}")
            };
            return Err(p.error(format!("`{op}` takes {want} arguments, got {}", args.len())));
        }
        Ok((op, args))
    }

    fn arg(&mut self) -> Result<Arg> {
        let first = self.item()?;
        if !self.c.at(&Tok::Colon) {
            return Ok(first);
        }
        let pos = first.pos();
        let mut items = vec![first];
        while self.c.eat(&Tok::Colon) {
            items.push(self.item()?);
        }
        Ok(Arg::Tuple(items, pos))
    }

    /// Inside brackets, elements are full expressions (`[x*y, z - 1]`).
    fn list_element(&mut self) -> Result<Arg> {
        let first = self.list_item()?;
        if !self.c.at(&Tok::Colon) {
            return Ok(first);
        }
        let pos = first.pos();
        let mut items = vec![first];
        while self.c.eat(&Tok::Colon) {
            items.push(self.list_item()?);
        }
        Ok(Arg::Tuple(items, pos))
    }

    fn list_item(&mut self) -> Result<Arg> {
        let is_call = matches!(self.c.peek().tok, Tok::Ident(_)) && self.c.peek_at(1).tok == Tok::LParen;
        if is_call || !self.c.at_expr_start() {
            return self.item();
        }
        let e = self.c.expr()?;
        Ok(match e {
            Expr::Name(n, p) => Arg::Word(n, p),
            e => match constant(&e) {
                Some(q) => Arg::Num(q, e.pos()),
                None => Arg::Expr(e.clone(), e.pos()),
            },
        })
    }

    fn arg_list(&mut self, close: &Tok, what: &str) -> Result<Vec<Arg>> {
        let mut out = Vec::new();
        if self.c.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.arg()?);
            if self.c.eat(close) {
                return Ok(out);
            }
            self.c.expect(&Tok::Comma, what)?;
        }
    }

    fn item(&mut self) -> Result<Arg> {
        let t = self.c.peek().clone();
        match &t.tok {
            Tok::Ident(w) => {
                self.c.next();
                let nt = self.c.peek();
                let touching =
                    nt.tok == Tok::LParen && nt.pos.line == t.pos.line && nt.pos.column == t.pos.column + w.len();
                if touching {
                    self.c.next();
                    let args = self.arg_list(&Tok::RParen, "`,` or `)`")?;
                    return Ok(Arg::Call(w.clone(), args, t.pos));
                }
                Ok(Arg::Word(w.clone(), t.pos))
            }
            Tok::Minus | Tok::Int(_) => {
                let neg = self.c.eat(&Tok::Minus);
                let n = match self.c.next().tok {
                    Tok::Int(n) => n,
                    _ => return Err(t.pos.error("expected a number after `-`")),
                };
                let mut q = BigRational::from_integer(if neg { -n } else { n });
                if self.c.at(&Tok::Slash) {
                    let sp = self.c.next().pos;
                    let d = match self.c.next().tok {
                        Tok::Int(d) => d,
                        _ => return Err(sp.error("expected a denominator")),
                    };
                    if d.is_zero() {
                        return Err(sp.error("division by zero"));
                    }
                    q /= BigRational::from_integer(d);
                }
                Ok(Arg::Num(q, t.pos))
            }
            Tok::LParen => {
                self.c.next();
                let e = self.c.expr()?;
                self.c.expect(&Tok::RParen, "`)`")?;
                Ok(Arg::Expr(e, t.pos))
            }
            Tok::LBracket => {
                self.c.next();
                let mut items = Vec::new();
                if !self.c.eat(&Tok::RBracket) {
                    loop {
                        items.push(self.list_element()?);
                        if self.c.eat(&Tok::RBracket) {
                            break;
                        }
                        self.c.expect(&Tok::Comma, "`,` or `]`")?;
                    }
                }
                Ok(Arg::List(items, t.pos))
            }
            _ => Err(self.c.unexpected("an argument")),
        }
    }
}

/// What a name refers to during the static check.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Ring(Vec<String>),
    Object,
}

/// Rejects names used before they are declared.
fn check(ast: &SessionAst) -> Result<()> {
    let mut scope: HashMap<String, Kind> = HashMap::new();
    let mut vars: Option<Vec<String>> = None;
    let no_ring = |p: Pos| p.error("no ring declared yet");
    let check_expr = |e: &Expr, scope: &HashMap<String, Kind>, vars: &Option<Vec<String>>| -> Result<()> {
        let mut names = Vec::new();
        e.names(&mut names);
        let vs = vars.as_ref().ok_or_else(|| no_ring(e.pos()))?;
        for (n, p) in names {
            if !vs.contains(&n) && scope.get(&n) != Some(&Kind::Object) {
                return Err(p.error(format!("undeclared identifier `{n}`")));
            }
        }
        Ok(())
    };
    for s in &ast.statements {
        match &s.kind {
            StatementKind::Ring { name, vars: v, .. } => {
                scope.insert(name.clone(), Kind::Ring(v.clone()));
                vars = Some(v.clone());
            }
            StatementKind::Use(n) => match scope.get(n) {
                Some(Kind::Ring(v)) => vars = Some(v.clone()),
                _ => return Err(s.pos.error(format!("`{n}` is not a ring"))),
            },
            StatementKind::Ideal(n, gens) => {
                if vars.is_none() {
                    return Err(no_ring(s.pos));
                }
                for g in gens {
                    check_expr(g, &scope, &vars)?;
                }
                scope.insert(n.clone(), Kind::Object);
            }
            StatementKind::Poly(n, e) => {
                check_expr(e, &scope, &vars)?;
                scope.insert(n.clone(), Kind::Object);
            }
            StatementKind::Matrix(n, rows) => {
                for e in rows.iter().flatten() {
                    check_expr(e, &scope, &vars)?;
                }
                scope.insert(n.clone(), Kind::Object);
            }
            StatementKind::Point(n, coords) => {
                if vars.is_none() {
                    return Err(no_ring(s.pos));
                }
                for c in coords {
                    if let Arg::Expr(e, _) = c {
                        let mut names = Vec::new();
                        e.names(&mut names);
                        if let Some((n, p)) = names.into_iter().next() {
                            return Err(p.error(format!("point coordinates must be constants, found `{n}`")));
                        }
                    }
                }
                scope.insert(n.clone(), Kind::Object);
            }
            StatementKind::Divisor(n, terms) => {
                for (_, p) in terms {
                    if scope.get(p) != Some(&Kind::Object) {
                        return Err(s.pos.error(format!("undeclared point `{p}`")));
                    }
                }
                scope.insert(n.clone(), Kind::Object);
            }
            StatementKind::Command { bind, op, args } => {
                if vars.is_none() && !matches!(op.as_str(), "pluecker" | "genus") {
                    return Err(no_ring(s.pos));
                }
                // bare words may be objects, variables or keywords such as
                // orderings; they are resolved during evaluation
                for a in args {
                    if let Arg::Expr(e, _) = a {
                        check_expr(e, &scope, &vars)?;
                    }
                }
                if let Some(b) = bind {
                    scope.insert(b.clone(), Kind::Object);
                }
            }
        }
    }
    Ok(())
}

/// Parses a whole session: statements terminated by `;`.
pub fn parse_session(text: &str) -> Result<SessionAst> {
    let mut p = Parser {
        c: Cursor::new(tokenize(text)?),
    };
    let mut statements = Vec::new();
    while !p.c.at(&Tok::Eof) {
        statements.push(p.statement()?);
    }
    let ast = SessionAst { statements };
    check(&ast)?;
    Ok(ast)
}

/// Small integer value of a numeric argument.
/// Value of a literal like `3`, `-2` or `-1/2`.
fn constant(e: &Expr) -> Option<BigRational> {
    match e {
        Expr::Num(n, _) => Some(BigRational::from_integer(n.clone())),
        Expr::Neg(a, _) => constant(a).map(|q| -q),
        Expr::Div(a, b, _) => {
            let (a, b) = (constant(a)?, constant(b)?);
            (!b.is_zero()).then(|| a / b)
        }
        _ => None,
    }
}

pub(crate) fn arg_int(a: &Arg) -> Result<i64> {
    match a {
        Arg::Num(q, p) if q.is_integer() => q.numer().to_i64().ok_or_else(|| p.error("integer too large")),
        other => Err(other.pos().error(format!("expected an integer, found `{other}`"))),
    }
}
