//! Plain-text polynomial syntax: `x^5 - m*x^2 + x + 1`, `3/2*a*b^2`, parentheses allowed.

use num_bigint::BigInt;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(Error::parse(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [&'a str],
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' {
                acc.add(&rhs)
            } else {
                acc.sub(&rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let col = self.col();
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs);
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(Error::parse(
                        self.line,
                        col,
                        "division only by a nonzero constant",
                    ));
                }
                let c = rhs.coefficient(&vec![0; self.vars.len()]);
                acc = acc.scale(&c.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = (&n)
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                let col = self.col();
                self.pos += 1;
                MultiPoly::var(self.vars, &name)
                    .map_err(|_| Error::parse(self.line, col, format!("unknown variable `{name}`")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_on_line(s: &str, vars: &[&str], line: usize) -> Result<MultiPoly> {
    let toks = tokenize(s, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        line,
        end_col: s.chars().count() + 1,
    };
    if p.toks.is_empty() {
        return Err(p.err("empty polynomial"));
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

pub(crate) fn parse_with_vars(s: &str, vars: &[&str]) -> Result<MultiPoly> {
    parse_on_line(s, vars, 1)
}

/// Parses several polynomials, collecting variables in order of first appearance.
/// Each input string counts as one line in error positions.
pub fn parse_polys(inputs: &[&str]) -> Result<(Vec<String>, Vec<MultiPoly>)> {
    let mut vars: Vec<String> = Vec::new();
    for (i, s) in inputs.iter().enumerate() {
        for (t, _) in tokenize(s, i + 1)? {
            if let Tok::Ident(name) = t {
                if !vars.contains(&name) {
                    vars.push(name);
                }
            }
        }
    }
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let polys = inputs
        .iter()
        .enumerate()
        .map(|(i, s)| parse_on_line(s, &refs, i + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok((vars, polys))
}
