//! Session language.
//!
//! ```text
//! # comment
//! ring x, y, z;
//! ideal h = x^3 + x*y^3 + 2*x^2*z + 2*z^2;
//! ideal g = x^2 + y^3, z;
//! ```
//!
//! Expressions use `+ - * / ^`, unary minus and parentheses. Numbers are
//! integers; `/` divides by a nonzero constant, so `2/3*x` is `(2/3)*x`.
//! Juxtaposition (`2x`) is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::gb::Ideal;
use crate::polyring::{Polynomial, Rational, RingContext};

const MAX_DEPTH: usize = 200;
const MAX_EXPONENT: u32 = 100_000;
const MAX_TERMS: f64 = 200_000.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed session: one ring and named ideals in declaration order.
#[derive(Debug, Clone)]
pub struct Session {
    pub ring: RingContext,
    bindings: Vec<(String, Ideal)>,
}

impl Session {
    pub fn get(&self, name: &str) -> Option<&Ideal> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
    }

    pub fn bindings(&self) -> &[(String, Ideal)] {
        &self.bindings
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semi => f.write_str("';'"),
            Tok::Eq => f.write_str("'='"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_' || chars[i] == '(') {
                return Err(err(
                    line,
                    col + (i - start),
                    "implicit multiplication is not allowed; use '*'",
                ));
            }
            let digits: String = chars[start..i].iter().collect();
            let n: BigInt = digits
                .parse()
                .map_err(|_| err(tl, tc, "malformed integer"))?;
            col += i - start;
            out.push(Spanned {
                tok: Tok::Int(n),
                line: tl,
                column: tc,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: tl,
                column: tc,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => return Err(err(tl, tc, format!("unexpected character '{other}'"))),
        };
        i += 1;
        col += 1;
        out.push(Spanned {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ring: Option<&'a RingContext>,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned, ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(err(
                t.line,
                t.column,
                format!("expected {want}, found {}", t.tok),
            ))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.column)),
            other => Err(err(
                t.line,
                t.column,
                format!("expected a name, found {other}"),
            )),
        }
    }

    fn ring(&self) -> &'a RingContext {
        self.ring.expect("ring checked before expressions")
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek();
            return Err(err(t.line, t.column, "expression nested too deeply"));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let t = self.next();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(err(
                            t.line,
                            t.column,
                            "division by a non-constant expression",
                        ));
                    }
                    let c = d.constant_coeff();
                    if c.is_zero() {
                        return Err(err(t.line, t.column, "division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                    let t = self.peek();
                    return Err(err(
                        t.line,
                        t.column,
                        "implicit multiplication is not allowed; use '*'",
                    ));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.next();
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    let t = self.peek();
                    return Err(err(t.line, t.column, "expression nested too deeply"));
                }
                let v = -self.unary()?;
                self.depth -= 1;
                Ok(v)
            }
            Tok::Plus => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.next();
        let t = self.next();
        let e = match t.tok {
            Tok::Int(n) => n,
            other => {
                return Err(err(
                    t.line,
                    t.column,
                    format!("exponent must be a nonnegative integer, found {other}"),
                ))
            }
        };
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(err(t.line, t.column, "exponent too large")),
        };
        if self.peek().tok == Tok::Caret {
            let t = self.peek();
            return Err(err(t.line, t.column, "chained exponents need parentheses"));
        }
        // bound the expansion size: C(e + n - 1, n - 1) terms at most
        let n = base.num_terms();
        if n > 1 {
            let mut bound = 1.0f64;
            for k in 1..n {
                bound *= (e as f64 + k as f64) / k as f64;
            }
            if bound > MAX_TERMS {
                return Err(err(caret.line, caret.column, "expansion too large"));
            }
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let nvars = self.ring().nvars();
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(nvars, Rational::from_integer(n))),
            Tok::Ident(name) => match self.ring().var_index(&name) {
                Some(i) => Ok(Polynomial::var(nvars, i)),
                None => Err(err(t.line, t.column, format!("unknown variable '{name}'"))),
            },
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            other => Err(err(
                t.line,
                t.column,
                format!("expected an expression, found {other}"),
            )),
        }
    }
}

/// Parses a whole session file.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let toks = lex(text)?;
    let mut ring: Option<RingContext> = None;
    let mut bindings: Vec<(String, Ideal)> = Vec::new();
    let mut pos = 0usize;
    loop {
        let t = toks[pos].clone();
        match &t.tok {
            Tok::Eof => break,
            Tok::Ident(kw) if kw == "ring" => {
                if ring.is_some() {
                    return Err(err(t.line, t.column, "ring already declared"));
                }
                let mut p = Parser {
                    toks: toks.clone(),
                    pos: pos + 1,
                    ring: None,
                    depth: 0,
                };
                let mut names: Vec<String> = Vec::new();
                loop {
                    let (name, l, c) = p.ident()?;
                    if name == "ring" || name == "ideal" {
                        return Err(err(l, c, format!("'{name}' is a keyword")));
                    }
                    if names.contains(&name) {
                        return Err(err(l, c, format!("duplicate variable '{name}'")));
                    }
                    names.push(name);
                    match p.next() {
                        Spanned {
                            tok: Tok::Comma, ..
                        } => continue,
                        Spanned { tok: Tok::Semi, .. } => break,
                        s => {
                            return Err(err(
                                s.line,
                                s.column,
                                format!("expected ',' or ';', found {}", s.tok),
                            ))
                        }
                    }
                }
                ring = Some(
                    RingContext::new(&names).map_err(|e| err(t.line, t.column, e.to_string()))?,
                );
                pos = p.pos;
            }
            Tok::Ident(kw) if kw == "ideal" => {
                let Some(r) = ring.as_ref() else {
                    return Err(err(t.line, t.column, "no ring declared"));
                };
                let mut p = Parser {
                    toks: toks.clone(),
                    pos: pos + 1,
                    ring: Some(r),
                    depth: 0,
                };
                let (name, l, c) = p.ident()?;
                if name == "ring" || name == "ideal" {
                    return Err(err(l, c, format!("'{name}' is a keyword")));
                }
                if bindings.iter().any(|(n, _)| *n == name) {
                    return Err(err(l, c, format!("duplicate binding '{name}'")));
                }
                p.expect(Tok::Eq)?;
                let mut gens = vec![p.expr()?];
                loop {
                    match p.next() {
                        Spanned {
                            tok: Tok::Comma, ..
                        } => gens.push(p.expr()?),
                        Spanned { tok: Tok::Semi, .. } => break,
                        s => {
                            return Err(err(
                                s.line,
                                s.column,
                                format!("expected ',' or ';', found {}", s.tok),
                            ))
                        }
                    }
                }
                bindings.push((name, Ideal::new(r.nvars(), gens)));
                pos = p.pos;
            }
            other => {
                return Err(err(
                    t.line,
                    t.column,
                    format!("expected 'ring' or 'ideal', found {other}"),
                ));
            }
        }
    }
    let ring = ring.ok_or_else(|| err(1, 1, "no ring declared"))?;
    Ok(Session { ring, bindings })
}

/// Parses one polynomial expression in `ctx`.
pub fn parse_poly(text: &str, ctx: &RingContext) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ring: Some(ctx),
        depth: 0,
    };
    let v = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::Eof {
        return Err(err(
            t.line,
            t.column,
            format!("unexpected {} after expression", t.tok),
        ));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> RingContext {
        RingContext::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn session_example() {
        let s = parse_session(
            "ring x,y,z; ideal h = x^3 + x*y^3 + 2*x^2*z + 2*z^2; ideal g = x^2+y^3, z;",
        )
        .unwrap();
        assert_eq!(s.ring.nvars(), 3);
        let ctx = &s.ring;
        assert_eq!(
            s.get("h").unwrap().generators(),
            &[parse_poly("x^3 + x*y^3 + 2*x^2*z + 2*z^2", ctx).unwrap()]
        );
        assert_eq!(s.get("g").unwrap().generators().len(), 2);
    }

    #[test]
    fn zero_ideal() {
        let s = parse_session("ring x; ideal z = 0;").unwrap();
        assert!(s.get("z").unwrap().generators().is_empty());
    }

    #[test]
    fn no_ring() {
        let e = parse_session("ideal g = x;").unwrap_err();
        assert_eq!(e.message, "no ring declared");
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn expressions() {
        let ctx = xyz();
        let h = parse_poly("x^2*y + y*z + z^2", &ctx).unwrap();
        assert_eq!(h.num_terms(), 3);
        assert!(parse_poly("-(x - x)", &ctx).unwrap().is_zero());
        let f = parse_poly("2/3*x*y", &ctx).unwrap();
        assert_eq!(
            f.terms().next().unwrap().1,
            &Rational::new(2.into(), 3.into())
        );
        assert_eq!(
            parse_poly("(x+y)^2", &ctx).unwrap(),
            parse_poly("x^2 + 2*x*y + y^2", &ctx).unwrap()
        );
        assert_eq!(
            parse_poly("-x^2", &ctx).unwrap(),
            -parse_poly("x^2", &ctx).unwrap()
        );
    }

    #[test]
    fn errors_are_positioned() {
        let ctx = xyz();
        let e = parse_poly("2x", &ctx).unwrap_err();
        assert!(e.message.contains("implicit multiplication"), "{e}");
        let e = parse_poly("x y", &ctx).unwrap_err();
        assert!(e.message.contains("implicit multiplication"));
        assert_eq!(e.column, 3);
        let e = parse_poly("x + w", &ctx).unwrap_err();
        assert_eq!(e.message, "unknown variable 'w'");
        assert_eq!(e.column, 5);
        assert!(parse_poly("x/y", &ctx).is_err());
        assert!(parse_poly("x/0", &ctx).is_err());
        assert!(parse_poly("x^y", &ctx).is_err());
        assert!(parse_poly("(x+y", &ctx).is_err());
        assert!(parse_poly("(x+y+z)^99999", &ctx).is_err());

        let e = parse_session("ring x;\nideal a = x;\nideal a = x^2;").unwrap_err();
        assert_eq!(e.message, "duplicate binding 'a'");
        assert_eq!((e.line, e.column), (3, 7));
        assert!(parse_session("ring x; ring y;").is_err());
        assert!(parse_session("ring x, x;").is_err());
    }

    #[test]
    fn comments() {
        let s = parse_session("# header\nring x, y; # vars\nideal i = x*y; # done\n").unwrap();
        assert_eq!(s.bindings().len(), 1);
    }
}
