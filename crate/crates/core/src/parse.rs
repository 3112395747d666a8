//! Parser for the canonical expression syntax.
//!
//! The grammar is the same one the `Display` impls emit:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' ['-'] integer]
//! atom   := number | variable | '(' expr ')' | 'exp' '(' expr ')'
//! number := integer ['/' integer]
//! ```
//!
//! Variables are single letters. When an alphabet is supplied, names outside
//! it are rejected at parse time.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{ExpExpr, LaurentPoly, Rat, VarId};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Var(char),
    Exp,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str, line: usize, col_offset: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = col_offset + i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, line, col });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, line, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, line, col });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, line, col });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, line, col });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, line, col });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
                let mut denom = BigInt::from(1);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(Error::syntax(line, col_offset + i + 1, "expected digits after `/`"));
                    }
                    denom = chars[dstart..i].iter().collect::<String>().parse().unwrap();
                    if denom.is_zero() {
                        return Err(Error::syntax(line, col, "zero denominator"));
                    }
                }
                out.push(Spanned { tok: Tok::Num(Rat::new(numer, denom)), line, col });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "exp" {
                    out.push(Spanned { tok: Tok::Exp, line, col });
                } else if word.len() == 1 {
                    out.push(Spanned { tok: Tok::Var(c), line, col });
                } else {
                    return Err(Error::syntax(line, col, format!("unknown name `{word}`")));
                }
            }
            other => {
                return Err(Error::syntax(line, col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alphabet: Option<&'a BTreeSet<VarId>>,
    line: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => (self.line, self.end_col),
        }
    }

    fn bump(&mut self) -> Option<Spanned> {
        let s = self.toks.get(self.pos).cloned();
        if s.is_some() {
            self.pos += 1;
        }
        s
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let (line, col) = self.here();
        match self.bump() {
            Some(s) if s.tok == tok => Ok(()),
            _ => Err(Error::syntax(line, col, format!("expected {what}"))),
        }
    }

    fn err_here<T>(&self, msg: impl std::fmt::Display) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::syntax(line, col, msg))
    }

    fn expr(&mut self) -> Result<ExpExpr> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExpExpr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExpExpr> {
        let atom = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let k = self.exponent()?;
            let (line, col) = self.here();
            return atom.pow(k).map_err(|e| match e {
                Error::NonUnitInverse => Error::syntax(line, col, "negative power of a non-unit"),
                other => other,
            });
        }
        Ok(atom)
    }

    fn exponent(&mut self) -> Result<i64> {
        let mut sign = 1i64;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            sign = -1;
        }
        let (line, col) = self.here();
        match self.bump() {
            Some(Spanned { tok: Tok::Num(r), .. }) if r.is_integer() => match r.numer().to_i64() {
                Some(n) => Ok(sign * n),
                None => Err(Error::syntax(line, col, "exponent out of range")),
            },
            _ => Err(Error::syntax(line, col, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<ExpExpr> {
        let (line, col) = self.here();
        match self.bump() {
            Some(Spanned { tok: Tok::Num(r), .. }) => {
                Ok(ExpExpr::from_laurent(LaurentPoly::constant(r)))
            }
            Some(Spanned { tok: Tok::Var(c), .. }) => {
                let v = VarId::new(c)?;
                if let Some(alpha) = self.alphabet {
                    if !alpha.contains(&v) {
                        return Err(Error::UnknownVariable(c.to_string()));
                    }
                }
                Ok(ExpExpr::from_laurent(LaurentPoly::from_var(v)))
            }
            Some(Spanned { tok: Tok::LParen, .. }) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Spanned { tok: Tok::Exp, .. }) => {
                self.expect(Tok::LParen, "`(` after exp")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                match inner.as_laurent() {
                    Some(arg) => Ok(ExpExpr::exp_of(arg)),
                    None => Err(Error::syntax(line, col, "nested exponentials are not supported")),
                }
            }
            _ => Err(Error::syntax(line, col, "expected a number, variable or `(`")),
        }
    }
}

pub(crate) fn parse_expexpr_at(
    src: &str,
    alphabet: Option<&BTreeSet<VarId>>,
    line: usize,
    col_offset: usize,
) -> Result<ExpExpr> {
    let toks = lex(src, line, col_offset)?;
    let end_col = col_offset + src.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, alphabet, line, end_col };
    if p.peek().is_none() {
        return p.err_here("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err_here("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression in the exponential algebra.
pub fn parse_expexpr(src: &str, alphabet: Option<&BTreeSet<VarId>>) -> Result<ExpExpr> {
    parse_expexpr_at(src, alphabet, 1, 0)
}

/// Parses a plain Laurent polynomial (no `exp`).
pub fn parse_laurent(src: &str, alphabet: Option<&BTreeSet<VarId>>) -> Result<LaurentPoly> {
    let e = parse_expexpr_at(src, alphabet, 1, 0)?;
    e.as_laurent()
        .ok_or_else(|| Error::syntax(1, 1, "exponentials are not allowed here"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_rendering() {
        for src in [
            "2 + 4*u + 3*u^2",
            "-u^-1*z^-1 + z^-1",
            "v + (1 + u)*exp(u^-1)",
            "3/2*u*v^-2",
            "z*exp(u^-1)",
        ] {
            let e = parse_expexpr(src, None).unwrap();
            assert_eq!(e.to_string(), src, "round trip for `{src}`");
        }
    }

    #[test]
    fn rejects_unknown_alphabet_names() {
        let alpha: BTreeSet<VarId> =
            ['u', 'v', 'z'].iter().map(|&c| VarId::new(c).unwrap()).collect();
        assert!(parse_expexpr("u*v", Some(&alpha)).is_ok());
        assert_eq!(
            parse_expexpr("u*w", Some(&alpha)),
            Err(Error::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_expexpr("v*", None) {
            Err(Error::Syntax { line: 1, col: 3, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(parse_expexpr("", None).is_err());
        assert!(parse_expexpr("foo", None).is_err());
        assert!(parse_laurent("exp(u)", None).is_err());
    }

    #[test]
    fn negative_powers_need_units() {
        assert!(parse_expexpr("(v*z)^-1", None).is_ok());
        assert!(parse_expexpr("(1 + u)^-1", None).is_err());
    }
}
