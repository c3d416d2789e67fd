use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{MultiPoly, Rational, RatFunc, Var};
use crate::error::RingError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: &str) -> RingError {
    RingError::Parse {
        pos,
        msg: msg.to_string(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, RingError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            let n: BigInt = s.parse().map_err(|_| err(i, "bad integer"))?;
            out.push((i, Tok::Num(n)));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_alphanumeric() || c == '_' {
                    s.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Ident(s)));
            continue;
        }
        it.next();
        let tok = match ch {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => {
                if it.peek().map(|p| p.1) == Some('*') {
                    it.next();
                    Tok::Caret
                } else {
                    Tok::Star
                }
            }
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(i, &format!("unexpected character '{ch}'"))),
        };
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFunc, RingError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, RingError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.here();
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| err(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, RingError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, RingError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.here();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let e = match self.bump() {
            Some(Tok::Num(n)) => i32::try_from(n).map_err(|_| err(at, "exponent too large"))?,
            _ => return Err(err(at, "expected integer exponent")),
        };
        base.pow(if neg { -e } else { e }).map_err(|_| err(at, "zero to a negative power"))
    }

    fn atom(&mut self) -> Result<RatFunc, RingError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(RatFunc::constant(Rational::from_integer(n))),
            Some(Tok::Ident(name)) => Var::from_name(&name)
                .map(RatFunc::var)
                .ok_or_else(|| err(at, &format!("unknown symbol '{name}'"))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(_) => Err(err(at, "unexpected token")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parses an infix rational expression over the known symbols, e.g. `(eta+1)/(eta-1)^3`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, RingError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(f)
}

/// Parses an infix expression that must reduce to a polynomial.
pub fn parse_poly(src: &str) -> Result<MultiPoly, RingError> {
    let f = parse_ratfunc(src)?;
    if !f.is_polynomial() {
        return Err(err(0, "expression is not a polynomial"));
    }
    Ok(f.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn precedence() {
        let f = parse_ratfunc("-x^2+2*x/4").unwrap();
        let x = Var::X;
        assert_eq!(f.evaluate(&[(x, int(3))]).unwrap(), rat(-15, 2));
        assert_eq!(parse_ratfunc("2^-2").unwrap(), RatFunc::constant(rat(1, 4)));
        assert_eq!(parse_ratfunc("η**2").unwrap(), parse_ratfunc("eta^2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_ratfunc("1/(t-t)"), Err(RingError::Parse { pos: 2, .. })));
        assert!(matches!(parse_ratfunc("t+zeta"), Err(RingError::Parse { pos: 2, .. })));
        assert!(matches!(parse_ratfunc("(t+1"), Err(RingError::Parse { pos: 4, .. })));
        assert!(matches!(parse_ratfunc("t 1"), Err(RingError::Parse { pos: 2, .. })));
        assert!(parse_poly("1/t").is_err());
        assert_eq!(parse_poly("(t+1)^2").unwrap(), parse_poly("t^2+2*t+1").unwrap());
    }
}
