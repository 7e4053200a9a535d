//! Text syntax for exact expressions and vector fields.
//!
//! Expressions use integer/rational coefficients, `+ - * / ^`, parentheses,
//! and variable names matching `[a-zA-Z][a-zA-Z0-9_]*`. Vector fields are
//! sums of `coeff * d/d<var>` items. Everything is parsed exactly into
//! `RatFn` arithmetic.

use crate::error::{Error, Result};
use crate::poly::Vars;
use crate::ratfn::RatFn;
use crate::scalar::Scalar;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    /// `d/d<var>` derivative marker in field expressions.
    Deriv(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    /// Recognize `d/d<var>` as a derivative token (field syntax only).
    field_mode: bool,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize, field_mode: bool) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line,
            col: 1,
            field_mode,
        }
    }

    fn bump(&mut self) -> u8 {
        let b = self.src[self.pos];
        self.pos += 1;
        self.col += 1;
        b
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn lex(mut self) -> Result<Vec<Spanned>> {
        let mut out = Vec::new();
        while let Some(b) = self.peek() {
            let (line, col) = (self.line, self.col);
            match b {
                b' ' | b'\t' => {
                    self.bump();
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b'0'..=b'9')) {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let n: BigInt = text.parse().unwrap();
                    out.push(Spanned { tok: Tok::Int(n), line, col });
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    if self.field_mode && self.matches_deriv() {
                        // consume `d/d`
                        self.bump();
                        self.bump();
                        self.bump();
                        let start = self.pos;
                        while matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_')) {
                            self.bump();
                        }
                        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                        out.push(Spanned {
                            tok: Tok::Deriv(name.to_string()),
                            line,
                            col,
                        });
                        continue;
                    }
                    let start = self.pos;
                    while matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_')) {
                        self.bump();
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push(Spanned {
                        tok: Tok::Ident(name.to_string()),
                        line,
                        col,
                    });
                }
                b'+' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Plus, line, col });
                }
                b'-' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Minus, line, col });
                }
                b'*' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Star, line, col });
                }
                b'/' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Slash, line, col });
                }
                b'^' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Caret, line, col });
                }
                b'(' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::LParen, line, col });
                }
                b')' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::RParen, line, col });
                }
                other => {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("unexpected character `{}`", other as char),
                    ))
                }
            }
        }
        Ok(out)
    }

    fn matches_deriv(&self) -> bool {
        self.src[self.pos] == b'd'
            && self.src.get(self.pos + 1) == Some(&b'/')
            && self.src.get(self.pos + 2) == Some(&b'd')
            && matches!(
                self.src.get(self.pos + 3),
                Some(b'a'..=b'z' | b'A'..=b'Z' | b'_')
            )
    }
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    vars: Vars,
    line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.line, 0))
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    let (line, col) = self.here();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| Error::parse(line, col, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFn> {
        let mut negate = false;
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate = !negate;
        }
        let mut base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            let (line, col) = self.here();
            self.bump();
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return Err(Error::parse(line, col, "exponent must be a nonnegative integer"));
            };
            self.bump();
            let e: u32 = n
                .try_into()
                .map_err(|_| Error::parse(line, col, "exponent out of range"))?;
            let mut acc = RatFn::one(self.vars.clone());
            for _ in 0..e {
                acc = acc.mul(&base)?;
            }
            base = acc;
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<RatFn> {
        let (line, col) = self.here();
        match self.bump().map(|s| s.tok.clone()) {
            Some(Tok::Int(n)) => Ok(RatFn::constant(
                self.vars.clone(),
                Scalar::from_big(n, BigInt::from(1)).unwrap(),
            )),
            Some(Tok::Ident(name)) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::parse(line, col, format!("unknown variable `{name}`")))?;
                Ok(RatFn::var(self.vars.clone(), idx))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump().map(|s| s.tok.clone()) {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::parse(line, col, "unclosed parenthesis")),
                }
            }
            other => Err(Error::parse(
                line,
                col,
                format!("expected a value, found {other:?}"),
            )),
        }
    }
}

/// Parse an exact rational-function expression over the given variables.
pub fn parse_ratfn(src: &str, vars: &Vars, line: usize) -> Result<RatFn> {
    let toks = Lexer::new(src, line, false).lex()?;
    if toks.is_empty() {
        return Err(Error::parse(line, 1, "empty expression"));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars: vars.clone(),
        line,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        let (l, c) = p.here();
        return Err(Error::parse(l, c, "trailing input after expression"));
    }
    Ok(e)
}

/// Parse a vector-field expression `c1 * d/dx1 + c2 * d/dx2 + ...` into one
/// coefficient per chart coordinate. A bare `d/dx` means coefficient 1, and a
/// literal `0` denotes the zero field.
pub fn parse_field_expr(src: &str, vars: &Vars, line: usize) -> Result<Vec<RatFn>> {
    let toks = Lexer::new(src, line, true).lex()?;
    if toks.is_empty() {
        return Err(Error::parse(line, 1, "empty field expression"));
    }
    let mut coeffs: Vec<RatFn> = (0..vars.len()).map(|_| RatFn::zero(vars.clone())).collect();
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars: vars.clone(),
        line,
    };
    // `0` alone is the zero field.
    if toks.len() == 1 {
        if let Tok::Int(n) = &toks[0].tok {
            if n == &BigInt::from(0) {
                return Ok(coeffs);
            }
        }
    }
    let mut first = true;
    loop {
        let mut negate = false;
        match p.peek() {
            Some(Tok::Plus) if !first => {
                p.bump();
            }
            Some(Tok::Minus) => {
                p.bump();
                negate = true;
            }
            Some(_) if first => {}
            None if !first => break,
            _ => {
                let (l, c) = p.here();
                return Err(Error::parse(l, c, "expected `+` or `-` between field terms"));
            }
        }
        first = false;
        // Either `d/dv` directly or `coeff * d/dv`.
        let (coeff, var) = if let Some(Tok::Deriv(v)) = p.peek().cloned() {
            p.bump();
            (RatFn::one(vars.clone()), v)
        } else {
            let c = p.field_coeff()?;
            let (l, co) = p.here();
            match p.bump().map(|s| s.tok.clone()) {
                Some(Tok::Deriv(v)) => (c, v),
                _ => return Err(Error::parse(l, co, "expected `d/d<var>` after coefficient")),
            }
        };
        let (l, c0) = p.here();
        let idx = vars
            .iter()
            .position(|w| *w == var)
            .ok_or_else(|| Error::parse(l, c0, format!("unknown coordinate `{var}` in d/d{var}")))?;
        let signed = if negate { coeff.neg() } else { coeff };
        coeffs[idx] = coeffs[idx].add(&signed)?;
        if p.peek().is_none() {
            break;
        }
    }
    Ok(coeffs)
}

impl<'a> Parser<'a> {
    /// A product of factors ending just before `* d/dv`; the final `*` before
    /// the derivative marker is consumed here.
    fn field_coeff(&mut self) -> Result<RatFn> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    if let Some(Spanned { tok: Tok::Deriv(_), .. }) = self.toks.get(self.pos + 1) {
                        self.bump();
                        return Ok(acc);
                    }
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    let (line, col) = self.here();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| Error::parse(line, col, "division by zero"))?;
                }
                Some(Tok::Deriv(_)) => return Ok(acc),
                _ => return Ok(acc),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    #[test]
    fn parses_polynomials() {
        let vs = vars(&["x", "y"]);
        let p = parse_ratfn("3*x^2 - 1/2*y + 4", &vs, 1).unwrap();
        assert!(p.is_polynomial());
        assert_eq!(p.to_string(), "3*x^2 - 1/2*y + 4");
    }

    #[test]
    fn parses_rational_functions() {
        let vs = vars(&["x", "y"]);
        let p = parse_ratfn("(x + 1)/(y^2)", &vs, 1).unwrap();
        assert_eq!(p.to_string(), "(x + 1)/(y^2)");
        // display/parse fixed point
        let again = parse_ratfn(&p.to_string(), &vs, 1).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rejects_unknown_variable() {
        let vs = vars(&["x"]);
        assert!(matches!(
            parse_ratfn("x + z", &vs, 3),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn parses_field_expressions() {
        let vs = vars(&["x", "y", "z"]);
        let coeffs = parse_field_expr("1 * d/dy + x * d/dz", &vs, 1).unwrap();
        assert!(coeffs[0].is_zero());
        assert_eq!(coeffs[1].to_string(), "1");
        assert_eq!(coeffs[2].to_string(), "x");
        let bare = parse_field_expr("d/dx - y^2 * d/dz", &vs, 1).unwrap();
        assert_eq!(bare[0].to_string(), "1");
        assert_eq!(bare[2].to_string(), "-y^2");
        let zero = parse_field_expr("0", &vs, 1).unwrap();
        assert!(zero.iter().all(RatFn::is_zero));
    }
}
