//! A small expression parser for polynomials.
//!
//! Accepts integers, variables, `E(d)` for the primitive root exp(2 pi i/d),
//! parentheses, `+ - * ^` and division by nonzero constants. Variables are
//! `x, y, z` (when n <= 3) or `x1 ... xn`.

use crate::exactnum::CycNum;

use super::{MPoly, PolyError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = cs[start..i].iter().collect();
            out.push(Tok::Int(text.parse().map_err(|_| PolyError::Parse(format!("integer too large: {text}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
    m: u32,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), PolyError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(PolyError::Parse(format!("expected {op:?} at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = match (d.len(), d.leading_term()) {
                    (1, Some((mono, c))) if mono.is_one() => c.clone(),
                    _ => return Err(PolyError::Parse("division by a non-constant".into())),
                };
                acc = acc.scale(&c.inverse().map_err(|_| PolyError::DivisionByZero)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, PolyError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e = u32::try_from(e).map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(PolyError::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, PolyError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                let k = i64::try_from(k).map_err(|_| PolyError::Parse("integer too large".into()))?;
                Ok(MPoly::constant(self.nvars, CycNum::from_int(self.m, k)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "E" {
                    self.expect('(')?;
                    let d = match self.toks.get(self.pos).cloned() {
                        Some(Tok::Int(d)) if d > 0 => d as u32,
                        _ => return Err(PolyError::Parse("E(d) needs a positive integer".into())),
                    };
                    self.pos += 1;
                    self.expect(')')?;
                    if self.m % d != 0 {
                        return Err(PolyError::Parse(format!("E({d}) does not lie in the field of conductor {}", self.m)));
                    }
                    return Ok(MPoly::constant(self.nvars, CycNum::root_of_unity(self.m, (self.m / d) as i64)));
                }
                match self.names.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(self.nvars, self.m, i % self.nvars)),
                    None => Err(PolyError::Parse(format!("unknown variable {name:?}"))),
                }
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Variable names accepted for `n` variables. Index `i` and `i + n` both name `x_{i+1}`.
fn names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = Vec::new();
    if n <= 3 {
        v.extend(["x", "y", "z"].iter().take(n).map(|s| s.to_string()));
    }
    if v.len() != n {
        v.clear();
        v.extend((1..=n).map(|i| format!("x{i}")));
    }
    v.extend((1..=n).map(|i| format!("x{i}")));
    v
}

pub fn parse_poly(s: &str, nvars: usize, m: u32) -> Result<MPoly, PolyError> {
    let names = names(nvars);
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
        nvars,
        m,
        names: &names,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products() {
        let p = parse_poly("(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)", 3, 1).unwrap();
        assert_eq!(p.degree(), Some(9));
        assert_eq!(p.len(), 6);
        let q = parse_poly("x1^2 + 2*x2 - x3/3", 3, 1).unwrap();
        let r = parse_poly("x^2 + 2*y - 1/3*z", 3, 1).unwrap();
        assert_eq!(q, r);
    }

    #[test]
    fn roots_of_unity() {
        let p = parse_poly("E(4)^2", 1, 12).unwrap();
        assert_eq!(p, MPoly::constant(1, CycNum::from_int(12, -1)));
        assert!(parse_poly("E(5)", 1, 12).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_poly("x +", 2, 1).is_err());
        assert!(parse_poly("x / y", 2, 1).is_err());
        assert!(parse_poly("w", 2, 1).is_err());
        assert!(parse_poly("x / 0", 2, 1).is_err());
    }
}
