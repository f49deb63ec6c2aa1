//! Tokenizer shared by the polynomial grammar and the diagram DSL, plus the
//! polynomial parser itself.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Gen, Monomial, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<Token>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(n),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s[start..i].to_string()),
                pos: start,
            });
        } else if "+-*/^();|,".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                pos: i,
            });
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<Token>,
    at: usize,
    len: usize,
}

impl Cursor {
    pub fn new(s: &str) -> Result<Self> {
        Ok(Cursor {
            toks: tokenize(s)?,
            at: 0,
            len: s.len(),
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|t| &t.tok)
    }

    pub fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.pos).unwrap_or(self.len)
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.tok.clone());
        self.at += 1;
        t
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    pub fn int(&mut self) -> Result<BigInt> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            _ => {
                self.at -= 1;
                Err(self.error("expected integer"))
            }
        }
    }

    pub fn small_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let n = self.int()?;
        let n: i64 = n.try_into().map_err(|_| self.error("integer too large"))?;
        Ok(if neg { -n } else { n })
    }

    /// `p` or `p/q` (unsigned).
    pub fn rational_literal(&mut self) -> Result<Rational> {
        let n = self.int()?;
        if self.peek() == Some(&Tok::Sym('/')) && matches!(self.peek_at(1), Some(Tok::Int(_))) {
            self.at += 1;
            let d = self.int()?;
            if d == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::from_big(n, d))
        } else {
            Ok(Rational::from_big(n, BigInt::from(1)))
        }
    }
}

/// Parses the canonical polynomial text form, e.g. `4*E2 - E1^2` or `1/2*E1*A0^-1`.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let mut c = Cursor::new(s)?;
    if c.at_end() {
        return Err(c.error("empty polynomial"));
    }
    let p = poly_sum(&mut c)?;
    if !c.at_end() {
        return Err(c.error("trailing input"));
    }
    Ok(p)
}

fn poly_sum(c: &mut Cursor) -> Result<Poly> {
    let mut acc = if c.eat('-') {
        -poly_product(c)?
    } else {
        c.eat('+');
        poly_product(c)?
    };
    loop {
        if c.eat('+') {
            acc += &poly_product(c)?;
        } else if c.eat('-') {
            acc -= &poly_product(c)?;
        } else {
            return Ok(acc);
        }
    }
}

fn poly_product(c: &mut Cursor) -> Result<Poly> {
    let mut acc = poly_power(c)?;
    while c.eat('*') {
        acc = &acc * &poly_power(c)?;
    }
    Ok(acc)
}

fn poly_power(c: &mut Cursor) -> Result<Poly> {
    let base = poly_atom(c)?;
    if !c.eat('^') {
        return Ok(base);
    }
    let e = c.small_int()?;
    raise(&base, e).map_err(|m| c.error(m))
}

pub(crate) fn raise(base: &Poly, e: i64) -> std::result::Result<Poly, String> {
    if e >= 0 {
        return Ok(base.pow(e as u32));
    }
    match base.terms() {
        [(m, coef)] => {
            let mut inv = [0; 4];
            for g in Gen::ALL {
                inv[g.index()] = -m.exp(g) * (-e as i32);
            }
            let m = Monomial::new(inv).map_err(|err| err.to_string())?;
            Ok(Poly::term(m, coef.pow(e as i32)))
        }
        _ => Err("negative power of a non-monomial".into()),
    }
}

fn poly_atom(c: &mut Cursor) -> Result<Poly> {
    match c.peek().cloned() {
        Some(Tok::Int(_)) => Ok(Poly::constant(c.rational_literal()?)),
        Some(Tok::Ident(name)) => {
            let g = Gen::from_name(&name).ok_or_else(|| c.error(format!("unknown generator `{name}`")))?;
            c.bump();
            Ok(Poly::gen(g))
        }
        Some(Tok::Sym('(')) => {
            c.bump();
            let p = poly_sum(c)?;
            c.expect(')')?;
            Ok(p)
        }
        _ => Err(c.error("expected number, generator or `(`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_features() {
        let p = parse_poly("(E1 + 1)^2 - 2*E1").unwrap();
        assert_eq!(p.to_string(), "1 + E1^2");
        let q = parse_poly("3/6*A0^-2*A1").unwrap();
        assert_eq!(q.to_string(), "1/2*A1*A0^-2");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("E1 + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("E3").is_err());
        assert!(parse_poly("E1^-1").is_err());
        assert!(parse_poly("(E1+E2)^-1").is_err());
    }
}
