//! Parser for the canonical text form of Gaussian rationals and polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*      -- '/' only by a nonzero constant
//! factor := atom ['^' integer]
//! atom   := rational ['i'] | 'i' | identifier | '(' expr ')'
//! ```
//!
//! `rational` is `digits` or `digits/digits` lexed as one token, so `1/4i`
//! reads as `(1/4)*i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GaussianRational, Params, Poly};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational, bool),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let num: BigInt = digits(&mut i).parse().map_err(|_| Error::Parse(text.to_string()))?;
            let mut value = BigRational::from_integer(num);
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let den: BigInt = digits(&mut i).parse().map_err(|_| Error::Parse(text.to_string()))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {text:?}")));
                }
                value /= BigRational::from_integer(den);
            }
            let imaginary = i < chars.len()
                && chars[i] == 'i'
                && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric() || *c == '_');
            if imaginary {
                i += 1;
            }
            out.push(Token::Num(value, imaginary));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {text:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    params: &'a Params,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.text))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, Error> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.factor()?)?;
            } else if self.eat('/') {
                let d = self.factor()?;
                let c = d.constant_value().ok_or_else(|| self.err("division by a non-constant"))?;
                acc = acc.scale(&c.inv().map_err(|_| self.err("division by zero"))?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n, false)) if n.is_integer() => {
                    self.pos += 1;
                    let k: u32 = n.to_integer().try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, Error> {
        match self.peek().cloned() {
            Some(Token::Num(v, imaginary)) => {
                self.pos += 1;
                let c = if imaginary {
                    GaussianRational::new(BigRational::zero(), v)
                } else {
                    GaussianRational::from(v)
                };
                Ok(Poly::constant(c))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    Ok(Poly::constant(GaussianRational::i()))
                } else {
                    Poly::var(self.params, &name)
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, parameter or '('")),
        }
    }
}

/// Parse a polynomial over the given parameter names. The result is always
/// expressed over exactly those parameters (constants included).
pub fn parse_poly(text: &str, params: &[String]) -> Result<Poly, Error> {
    let params = Params::new(params);
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".to_string()));
    }
    let mut parser = Parser { tokens, pos: 0, params: &params, text };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    poly.lift_to(&params)
}

pub fn parse_gaussian(text: &str) -> Result<GaussianRational, Error> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn lab_style_entries() {
        let t = names(&["t"]);
        let p = parse_poly("3*t^2-1/2*t", &t).unwrap();
        assert_eq!(p.to_string(), "3*t^2-1/2*t");
        assert_eq!(parse_poly("t/2", &t).unwrap().to_string(), "1/2*t");
        assert_eq!(parse_poly("(t+1)^2", &t).unwrap().to_string(), "t^2+2*t+1");
    }

    #[test]
    fn gaussian_forms() {
        assert_eq!(parse_gaussian("3/4+1/4i").unwrap().to_string(), "3/4+1/4*i");
        assert_eq!(parse_gaussian("-1/2").unwrap().to_string(), "-1/2");
        assert_eq!(parse_gaussian("2*i").unwrap(), parse_gaussian("2i").unwrap());
        assert_eq!(parse_gaussian("(1+i)*(1-i)").unwrap().to_string(), "2");
    }

    #[test]
    fn rejects_garbage() {
        let t = names(&["t"]);
        assert!(parse_poly("", &t).is_err());
        assert!(parse_poly("t +", &t).is_err());
        assert!(parse_poly("s", &t).is_err());
        assert!(parse_poly("1/t", &t).is_err());
        assert!(parse_poly("1/0", &t).is_err());
        assert!(parse_poly("(t", &t).is_err());
        assert!(parse_poly("t^t", &t).is_err());
        assert!(parse_gaussian("t").is_err());
    }
}
