//! The diagram DSL: abstract syntax, parser and printer.
//!
//! Precedence from loosest to tightest: `+`/`-`, stacking `;` (left operand
//! first), tensor `|`, scalar product `*`, power `^` (scalars only).

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::parse::{Cursor, Tok};
use crate::ring::{Gen, Monomial, Poly, Rational};
use crate::statespace::Prim;

/// Largest projector index accepted by the macros.
pub const MAX_MACRO_STRANDS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Macro {
    /// Jones–Wenzl projector `p_n`.
    Jw(usize),
    /// Alternating dot sum `Σ (−1)^{i−1} dot_i`.
    Z(usize),
    /// `U_n : P_n → P_{n+2}`.
    U(usize),
    /// `D_n : P_n → P_{n−2}`.
    D(usize),
    /// Crossing `s_i = id − cupcap_i` on `n` strands, `i` one-based.
    S(usize, usize),
    /// Identity on `n` strands.
    Id(usize),
}

impl Macro {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Macro::Jw(n) | Macro::Z(n) | Macro::S(_, n) | Macro::Id(n) => (n, n),
            Macro::U(n) => (n, n + 2),
            Macro::D(n) => (n, n - 2),
        }
    }

    fn validate(self) -> std::result::Result<(), String> {
        let bound = |what: &str, v: usize| {
            if v > MAX_MACRO_STRANDS {
                Err(format!("{what} exceeds {MAX_MACRO_STRANDS} strands"))
            } else {
                Ok(())
            }
        };
        match self {
            Macro::Jw(n) => bound("jw", n),
            Macro::Z(0) => Err("z(n) needs n ≥ 1".into()),
            Macro::Z(n) => bound("z", n),
            Macro::U(n) => bound("u", n + 2),
            Macro::D(n) if n < 2 => Err("d(n) needs n ≥ 2".into()),
            Macro::D(n) => bound("d", n),
            Macro::S(i, n) if i == 0 || i >= n => Err(format!("s({i},{n}) needs 1 ≤ i < n")),
            Macro::S(_, n) => bound("s", n),
            Macro::Id(n) => bound("id", n),
        }
    }

    /// Definition in terms of primitives and smaller macros.
    pub fn body(self) -> Expr {
        use Expr as X;
        match self {
            Macro::Id(n) => X::Identity(n),
            Macro::S(i, n) => {
                let cupcap = X::stack(X::Prim(Prim::Cap), X::Prim(Prim::Cup));
                let local = X::sum(X::Identity(2), X::negate(cupcap));
                local.embed(i - 1, n - i - 1)
            }
            Macro::Z(n) => (1..=n)
                .map(|i| {
                    let t = X::Prim(Prim::Dot).embed(i - 1, n - i);
                    if i % 2 == 1 {
                        t
                    } else {
                        X::negate(t)
                    }
                })
                .reduce(X::sum)
                .expect("n ≥ 1"),
            Macro::Jw(0) => X::Identity(0),
            Macro::Jw(1) => X::Identity(1),
            Macro::Jw(m) => {
                let k = m - 1;
                let pk = X::tensor(X::Macro(Macro::Jw(k)), X::Identity(1));
                let cap = X::Prim(Prim::Cap).embed(k - 1, 0);
                let cup = X::Prim(Prim::Cup).embed(k - 1, 0);
                // Grouped so the only dense product passes through k − 1 strands.
                let sandwich = X::stack(X::stack(pk.clone(), cap), X::stack(cup, pk.clone()));
                X::sum(
                    pk,
                    X::scale(
                        Poly::constant(Rational::new(-(k as i64), m as i64)),
                        sandwich,
                    ),
                )
            }
            Macro::U(n) => {
                let dotted_cup = X::stack(X::Prim(Prim::Cup), X::Prim(Prim::Dot).embed(0, 1));
                X::stack(
                    X::Macro(Macro::Jw(n)),
                    X::stack(dotted_cup.embed(n, 0), X::Macro(Macro::Jw(n + 2))),
                )
            }
            Macro::D(n) => {
                let dotted_cap = X::stack(X::Prim(Prim::Dot).embed(0, 1), X::Prim(Prim::Cap));
                X::scale(
                    Poly::int((n * (n - 1)) as i64),
                    X::stack(
                        X::stack(X::Macro(Macro::Jw(n)), dotted_cap.embed(n - 2, 0)),
                        X::Macro(Macro::Jw(n - 2)),
                    ),
                )
            }
        }
    }
}

impl fmt::Display for Macro {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Macro::Jw(n) => write!(f, "jw({n})"),
            Macro::Z(n) => write!(f, "z({n})"),
            Macro::U(n) => write!(f, "u({n})"),
            Macro::D(n) => write!(f, "d({n})"),
            Macro::S(i, n) => write!(f, "s({i},{n})"),
            Macro::Id(n) => write!(f, "id({n})"),
        }
    }
}

/// Abstract diagram expression. Constructors do not check arities; use
/// [`Expr::arity`] to validate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Prim(Prim),
    /// Identity on `n` strands, including the empty diagram for `n = 0`.
    Identity(usize),
    Macro(Macro),
    Scale(Poly, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    /// Left operand applied first.
    Stack(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn scalar(c: Poly) -> Expr {
        Expr::Scale(c, Box::new(Expr::Identity(0)))
    }

    pub fn scale(c: Poly, e: Expr) -> Expr {
        Expr::Scale(c, Box::new(e))
    }

    pub fn negate(e: Expr) -> Expr {
        Expr::scale(Poly::int(-1), e)
    }

    pub fn sum(a: Expr, b: Expr) -> Expr {
        Expr::Sum(Box::new(a), Box::new(b))
    }

    pub fn difference(a: Expr, b: Expr) -> Expr {
        Expr::sum(a, Expr::negate(b))
    }

    pub fn stack(a: Expr, b: Expr) -> Expr {
        Expr::Stack(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Expr, b: Expr) -> Expr {
        Expr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn embed(self, left: usize, right: usize) -> Expr {
        let mut e = self;
        if left > 0 {
            e = Expr::tensor(Expr::Identity(left), e);
        }
        if right > 0 {
            e = Expr::tensor(e, Expr::Identity(right));
        }
        e
    }

    /// Source and target strand counts.
    pub fn arity(&self) -> Result<(usize, usize)> {
        match self {
            Expr::Prim(p) => Ok(p.arity()),
            Expr::Identity(n) => Ok((*n, *n)),
            Expr::Macro(m) => Ok(m.arity()),
            Expr::Scale(_, e) => e.arity(),
            Expr::Sum(a, b) => {
                let (x, y) = (a.arity()?, b.arity()?);
                if x != y {
                    return Err(Error::Dimension(format!(
                        "sum of {}→{} and {}→{}",
                        x.0, x.1, y.0, y.1
                    )));
                }
                Ok(x)
            }
            Expr::Stack(a, b) => {
                let (x, y) = (a.arity()?, b.arity()?);
                if x.1 != y.0 {
                    return Err(Error::StrandMismatch {
                        slice: 1,
                        expected: x.1,
                        found: y.0,
                    });
                }
                Ok((x.0, y.1))
            }
            Expr::Tensor(a, b) => {
                let (x, y) = (a.arity()?, b.arity()?);
                Ok((x.0 + y.0, x.1 + y.1))
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(..) => 0,
            Expr::Stack(..) => 1,
            Expr::Tensor(..) => 2,
            Expr::Scale(..) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Prim(p) => write!(f, "{}", p.name()),
            Expr::Identity(0) => write!(f, "1"),
            Expr::Identity(1) => write!(f, "id"),
            Expr::Identity(n) => write!(f, "id({n})"),
            Expr::Macro(m) => write!(f, "{m}"),
            Expr::Scale(c, e) => {
                if matches!(**e, Expr::Identity(0)) {
                    return write!(f, "({c})");
                }
                write!(f, "({c})*")?;
                e.fmt_at(f, 4)
            }
            Expr::Sum(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " + ")?;
                b.fmt_at(f, 1)
            }
            Expr::Stack(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " ; ")?;
                b.fmt_at(f, 2)
            }
            Expr::Tensor(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "|")?;
                b.fmt_at(f, 3)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        parse_expr(s)
    }
}

/// Parses a DSL expression and checks all strand counts.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        cur: Cursor::new(text)?,
    };
    let (e, _) = p.sum()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    cur: Cursor,
}

type Parsed = (Expr, (usize, usize));

impl Parser {
    fn sum(&mut self) -> Result<Parsed> {
        let start = self.cur.pos();
        let mut acc = if self.cur.eat('-') {
            let (e, a) = self.stack()?;
            (Expr::negate(e), a)
        } else {
            self.stack()?
        };
        loop {
            let negate = if self.cur.eat('+') {
                false
            } else if self.cur.eat('-') {
                true
            } else {
                break;
            };
            let pos = self.cur.pos();
            let (e, a) = self.stack()?;
            if a != acc.1 {
                return Err(Error::Parse {
                    pos,
                    msg: format!(
                        "summand has arity {}→{} but expression starting at {start} has {}→{}",
                        a.0, a.1, acc.1 .0, acc.1 .1
                    ),
                });
            }
            let e = if negate { Expr::negate(e) } else { e };
            acc = (Expr::sum(acc.0, e), a);
        }
        Ok(acc)
    }

    fn stack(&mut self) -> Result<Parsed> {
        let mut acc = self.tensor()?;
        let mut slice = 0;
        while self.cur.eat(';') {
            slice += 1;
            let (e, a) = self.tensor()?;
            if a.0 != acc.1 .1 {
                return Err(Error::StrandMismatch {
                    slice,
                    expected: acc.1 .1,
                    found: a.0,
                });
            }
            acc = (Expr::stack(acc.0, e), (acc.1 .0, a.1));
        }
        Ok(acc)
    }

    fn tensor(&mut self) -> Result<Parsed> {
        let mut acc = self.product()?;
        while self.cur.eat('|') {
            let (e, a) = self.product()?;
            acc = (Expr::tensor(acc.0, e), (acc.1 .0 + a.0, acc.1 .1 + a.1));
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Parsed> {
        let mut acc = self.power()?;
        while self.cur.peek() == Some(&Tok::Sym('*')) {
            let pos = self.cur.pos();
            self.cur.bump();
            let rhs = self.power()?;
            acc = match (scalar_of(&acc.0), scalar_of(&rhs.0)) {
                (Some(c), _) => (Expr::scale(c, rhs.0), rhs.1),
                (None, Some(c)) => (Expr::scale(c, acc.0), acc.1),
                (None, None) => {
                    return Err(Error::Parse {
                        pos,
                        msg: "`*` needs a scalar on one side; use `|` or `;` for diagrams".into(),
                    })
                }
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Parsed> {
        let base = self.atom()?;
        if self.cur.peek() != Some(&Tok::Sym('^')) {
            return Ok(base);
        }
        let pos = self.cur.pos();
        self.cur.bump();
        let k = self.cur.small_int()?;
        let c = scalar_of(&base.0).ok_or_else(|| Error::Parse {
            pos,
            msg: "`^` applies to scalars only".into(),
        })?;
        if k < 0 {
            return Err(Error::Parse {
                pos,
                msg: "negative powers are not allowed".into(),
            });
        }
        Ok((Expr::scalar(c.pow(k as u32)), (0, 0)))
    }

    fn atom(&mut self) -> Result<Parsed> {
        let pos = self.cur.pos();
        match self.cur.peek().cloned() {
            Some(Tok::Int(_)) => {
                let c = self.cur.rational_literal()?;
                Ok((Expr::scalar(Poly::constant(c)), (0, 0)))
            }
            Some(Tok::Sym('(')) => {
                self.cur.bump();
                let inner = self.sum()?;
                self.cur.expect(')')?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.cur.bump();
                let e = match name.as_str() {
                    "id" if self.cur.peek() == Some(&Tok::Sym('(')) => {
                        let args = self.args(1)?;
                        self.make_macro(Macro::Id(args[0]), pos)?
                    }
                    "id" => Expr::Prim(Prim::Id),
                    "dot" => Expr::Prim(Prim::Dot),
                    "cup" => Expr::Prim(Prim::Cup),
                    "cap" => Expr::Prim(Prim::Cap),
                    "jw" => {
                        let a = self.args(1)?;
                        self.make_macro(Macro::Jw(a[0]), pos)?
                    }
                    "z" => {
                        let a = self.args(1)?;
                        self.make_macro(Macro::Z(a[0]), pos)?
                    }
                    "u" => {
                        let a = self.args(1)?;
                        self.make_macro(Macro::U(a[0]), pos)?
                    }
                    "d" => {
                        let a = self.args(1)?;
                        self.make_macro(Macro::D(a[0]), pos)?
                    }
                    "s" => {
                        let a = self.args(2)?;
                        self.make_macro(Macro::S(a[0], a[1]), pos)?
                    }
                    "E1" | "E2" => {
                        let g = Gen::from_name(&name).expect("E generator");
                        Expr::scalar(Poly::monomial(Monomial::gen(g)))
                    }
                    _ => return Err(Error::Parse {
                        pos,
                        msg: format!("unknown name `{name}`"),
                    }),
                };
                let a = e.arity()?;
                Ok((e, a))
            }
            Some(_) => Err(self.cur.error("expected a diagram, scalar or `(`")),
            None => Err(self.cur.error("unexpected end of input")),
        }
    }

    fn args(&mut self, n: usize) -> Result<Vec<usize>> {
        self.cur.expect('(')?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.cur.expect(',')?;
            }
            let pos = self.cur.pos();
            let v = self.cur.small_int()?;
            if v < 0 {
                return Err(Error::Parse {
                    pos,
                    msg: "macro arguments must be non-negative".into(),
                });
            }
            out.push(v as usize);
        }
        self.cur.expect(')')?;
        Ok(out)
    }

    fn make_macro(&self, m: Macro, pos: usize) -> Result<Expr> {
        m.validate().map_err(|msg| Error::Parse { pos, msg })?;
        Ok(match m {
            Macro::Id(n) => Expr::Identity(n),
            _ => Expr::Macro(m),
        })
    }
}

/// The scalar value of a closed `0→0` expression built from literals only.
fn scalar_of(e: &Expr) -> Option<Poly> {
    match e {
        Expr::Identity(0) => Some(Poly::one()),
        Expr::Scale(c, inner) => scalar_of(inner).map(|x| &x * c),
        Expr::Sum(a, b) => Some(&scalar_of(a)? + &scalar_of(b)?),
        Expr::Stack(a, b) | Expr::Tensor(a, b) => Some(&scalar_of(a)? * &scalar_of(b)?),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_of_basic_forms() {
        assert_eq!(parse_expr("cap ; cup").unwrap().arity().unwrap(), (2, 2));
        assert_eq!(parse_expr("(id|id) - 1/2*(cap ; cup)").unwrap().arity().unwrap(), (2, 2));
        assert_eq!(parse_expr("E1*dot - E2*id").unwrap().arity().unwrap(), (1, 1));
        assert_eq!(parse_expr("u(2)").unwrap().arity().unwrap(), (2, 4));
        assert_eq!(parse_expr("(E1^2 - 2*E2)*cup").unwrap().arity().unwrap(), (0, 2));
    }

    #[test]
    fn stacking_mismatch_reports_slice() {
        let err = parse_expr("cup ; dot ; cap").unwrap_err();
        assert_eq!(
            err,
            Error::StrandMismatch {
                slice: 1,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_expr("dot ; ; cap").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 6),
            e => panic!("{e}"),
        }
        assert!(matches!(parse_expr("dot * dot"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("jw(9)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("dot + cup"), Err(Error::Parse { .. })));
    }

    #[test]
    fn printer_reparses() {
        for s in ["cap ; cup", "(id|id) - 1/2*(cap ; cup)", "dot|(cup ; dot|id) + E1*(id|cup ; dot|id|id)", "2*jw(3)"] {
            let e = parse_expr(s).unwrap();
            let back = parse_expr(&e.to_string()).unwrap();
            assert_eq!(e.arity().unwrap(), back.arity().unwrap(), "{s}");
        }
    }
}
