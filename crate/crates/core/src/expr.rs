//! A small expression grammar for exact scalars and projective points.
//!
//! ```text
//! expr   := term  (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-')* power
//! power  := atom ('^' uint)?
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! Points are written `a:b:c` with each component an `expr`.

use std::collections::BTreeMap;

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Rational, Tower};

/// Named constants available to the parser, all living in one tower.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    tower: Tower,
    entries: BTreeMap<String, FieldElement>,
}

impl SymbolTable {
    /// Just the generators of the given tower.
    pub fn for_tower(tower: &Tower) -> SymbolTable {
        let mut entries = BTreeMap::new();
        for level in tower.levels() {
            let g = tower
                .generator(level.name())
                .expect("generator of own level");
            entries.insert(level.name().to_string(), g);
        }
        SymbolTable {
            tower: tower.clone(),
            entries,
        }
    }

    /// The default tower with the derived names `eps = eta^3` (a primitive
    /// cube root of unity) and `sqrt3 = qrt3^2` bound as well.
    pub fn standard() -> SymbolTable {
        let tower = Tower::standard();
        let mut table = SymbolTable::for_tower(&tower);
        let eta = tower.generator("eta").expect("eta");
        let qrt3 = tower.generator("qrt3").expect("qrt3");
        table.insert("eps", eta.pow(3).expect("eta^3"));
        table.insert("sqrt3", &qrt3 * &qrt3);
        table
    }

    pub fn insert(&mut self, name: &str, value: FieldElement) {
        let lifted = value.lift_to(&self.tower).expect("symbol from another tower");
        self.entries.insert(name.to_string(), lifted);
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    fn lookup(&self, name: &str) -> Option<&FieldElement> {
        self.entries.get(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digit run");
                out.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", input[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    symbols: &'a SymbolTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        let mut negate = false;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = !negate;
                }
                _ => break,
            }
        }
        let v = self.power()?;
        Ok(if negate { -v } else { v })
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = i64::try_from(&n).map_err(|_| Error::Parse {
                        pos: at,
                        msg: "exponent out of range".into(),
                    })?;
                    base.pow(e)
                }
                _ => Err(Error::Parse {
                    pos: at,
                    msg: "expected a nonnegative integer exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FieldElement> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(self
                .symbols
                .tower()
                .rational(Rational::from_integer(n))),
            Some(Tok::Ident(name)) => match self.symbols.lookup(&name) {
                Some(v) => Ok(v.clone()),
                None => Err(Error::UnknownSymbol(name)),
            },
            Some(Tok::LParen) => {
                let v = self.expr()?;
                let at = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(Error::Parse {
                        pos: at,
                        msg: "expected `)`".into(),
                    }),
                }
            }
            _ => Err(Error::Parse {
                pos: at,
                msg: "expected an integer, symbol or parenthesized expression".into(),
            }),
        }
    }
}

/// Parse one scalar expression against a symbol table.
pub fn parse_scalar(input: &str, symbols: &SymbolTable) -> Result<FieldElement> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
        symbols,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse {
            pos: p.here(),
            msg: "trailing input after expression".into(),
        });
    }
    Ok(v)
}

/// Parse `a:b:c` into three scalars.
pub fn parse_point(input: &str, symbols: &SymbolTable) -> Result<[FieldElement; 3]> {
    let parts: Vec<&str> = input.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidPoint(format!(
            "expected three `:`-separated coordinates, found {}",
            parts.len()
        )));
    }
    Ok([
        parse_scalar(parts[0], symbols)?,
        parse_scalar(parts[1], symbols)?,
        parse_scalar(parts[2], symbols)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_powers() {
        let sym = SymbolTable::standard();
        let t = sym.tower().clone();
        assert_eq!(parse_scalar("2^3*3", &sym).unwrap(), t.int(24));
        assert_eq!(parse_scalar("2+3*4", &sym).unwrap(), t.int(14));
        assert_eq!(parse_scalar("(2+3)*4", &sym).unwrap(), t.int(20));
        assert_eq!(parse_scalar("1/2 + 1/3", &sym).unwrap(), t.ratio(5, 6));
        assert_eq!(parse_scalar("5/3", &sym).unwrap(), t.ratio(5, 3));
    }

    #[test]
    fn signs_fold() {
        let sym = SymbolTable::standard();
        let t = sym.tower().clone();
        assert_eq!(parse_scalar("--7", &sym).unwrap(), t.int(7));
        assert_eq!(parse_scalar("-+-7", &sym).unwrap(), t.int(7));
        let eta = t.generator("eta").unwrap();
        assert_eq!(parse_scalar("-eta^4", &sym).unwrap(), -eta.pow(4).unwrap());
    }

    #[test]
    fn standard_symbols() {
        let sym = SymbolTable::standard();
        let t = sym.tower().clone();
        assert_eq!(parse_scalar("eps^3", &sym).unwrap(), t.one());
        assert_eq!(parse_scalar("eps*eps*eps", &sym).unwrap(), t.one());
        assert_eq!(parse_scalar("sqrt3^2", &sym).unwrap(), t.int(3));
        assert_eq!(parse_scalar("qrt3^2", &sym).unwrap(), parse_scalar("sqrt3", &sym).unwrap());
        assert_eq!(parse_scalar("cbrt2^3", &sym).unwrap(), t.int(2));
        assert_eq!(
            parse_scalar("(1+sqrt3)^3", &sym).unwrap(),
            parse_scalar("10+6*sqrt3", &sym).unwrap()
        );
        assert_eq!(
            parse_scalar("eta^3", &sym).unwrap(),
            parse_scalar("eps", &sym).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let sym = SymbolTable::standard();
        match parse_scalar("1+boop", &sym) {
            Err(Error::UnknownSymbol(s)) => assert_eq!(s, "boop"),
            other => panic!("expected unknown symbol, got {other:?}"),
        }
        match parse_scalar("2*(3+4", &sym) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_scalar("1 ? 2", &sym) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_scalar("1/0", &sym),
            Err(Error::DivisionByZero)
        ));
        match parse_scalar("1 1", &sym) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn points_parse() {
        let sym = SymbolTable::standard();
        let t = sym.tower().clone();
        let [a, b, c] = parse_point("1:-1:0", &sym).unwrap();
        assert_eq!(a, t.int(1));
        assert_eq!(b, t.int(-1));
        assert_eq!(c, t.int(0));
        let [a, b, c] = parse_point("eta^8 : eta^4 : 1", &sym).unwrap();
        let eta = t.generator("eta").unwrap();
        assert_eq!(a, eta.pow(8).unwrap());
        assert_eq!(b, eta.pow(4).unwrap());
        assert_eq!(c, t.one());
        assert!(parse_point("1:2", &sym).is_err());
    }
}
