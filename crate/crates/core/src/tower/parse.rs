//! Parser for rational functions in x with integer coefficients, reduced mod p.
//!
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | '(' expr ')'

use crate::algebra::{FpPoly, RatFunc};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    X,
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            let v = lit.parse().map_err(|_| Error::InvalidSpec(format!("integer literal {lit} too large")))?;
            out.push(Tok::Num(v));
        } else if c == 'x' {
            out.push(Tok::X);
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::InvalidSpec(format!("unexpected character '{c}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    p: u32,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::InvalidSpec(format!("{what} at token {} in \"{}\"", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?, self.p);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?, self.p);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?, self.p);
            } else if self.eat('/') {
                let d = self.unary()?;
                let inv = d.inv(self.p).ok_or_else(|| self.err("division by zero"))?;
                acc = acc.mul(&inv, self.p);
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::X) | Some(Tok::Op('('))) {
                acc = acc.mul(&self.unary()?, self.p);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(self.unary()?.neg(self.p));
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = match self.peek() {
            Some(Tok::Num(e)) => *e,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        if e > 1 << 16 {
            return Err(self.err("exponent too large"));
        }
        let p = self.p;
        Ok(RatFunc::new(base.num.pow(e, p), base.den.pow(e, p), p))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let p = self.p;
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(RatFunc::constant((v % p as u64) as u32, p))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(RatFunc::poly(FpPoly::x()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, x or '('")),
        }
    }
}

/// Parse a rational function in x over F_p.
pub fn parse_ratfunc(s: &str, p: u32) -> Result<RatFunc> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::InvalidSpec("empty rational function".into()));
    }
    let mut parser = Parser { toks, pos: 0, p, src: s };
    let f = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[u32]) -> RatFunc {
        RatFunc::poly(FpPoly::new(c.to_vec()))
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_ratfunc("x^3", 2).unwrap(), poly(&[0, 0, 0, 1]));
        assert_eq!(parse_ratfunc("x^3 + x", 2).unwrap(), poly(&[0, 1, 0, 1]));
        assert_eq!(parse_ratfunc("3x^2 - 1", 5).unwrap(), poly(&[4, 0, 3]));
        assert_eq!(parse_ratfunc("(x+1)^2", 2).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(parse_ratfunc("0", 3).unwrap(), RatFunc::zero());
        assert_eq!(parse_ratfunc("2*x*x", 2).unwrap(), RatFunc::zero());
    }

    #[test]
    fn fractions() {
        let f = parse_ratfunc("x^3+1/x", 2).unwrap();
        assert_eq!(f, RatFunc::new(FpPoly::new(vec![1, 0, 0, 0, 1]), FpPoly::x(), 2));
        let g = parse_ratfunc("1/(x-1)", 3).unwrap();
        assert_eq!(g.den, FpPoly::new(vec![2, 1]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("x^", 2).is_err());
        assert!(parse_ratfunc("y", 2).is_err());
        assert!(parse_ratfunc("1/0", 2).is_err());
        assert!(parse_ratfunc("(x", 2).is_err());
        assert!(parse_ratfunc("", 2).is_err());
        assert!(parse_ratfunc("x)", 2).is_err());
    }
}
