//! Textual front-end: polynomial expressions in and deterministic canonical
//! text out.
//!
//! Grammar: integers and rationals `p/q`, declared variable names, `+`, `-`
//! (binary and unary), `*`, `^` with non-negative integer exponents, and
//! parentheses. Juxtaposition is not multiplication. Every error carries a
//! line and column.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::Monomial;
use crate::{MPoly, Q};

/// A polynomial expression together with its variable context.
#[derive(Debug, Clone)]
pub struct PolySource {
    pub variables: Vec<String>,
    pub expression: String,
    /// When present, homogeneity of exactly this degree is enforced.
    pub declared_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                chars.next();
                col += 1;
                let tok = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                toks.push(Spanned {
                    tok,
                    line: l,
                    col: c,
                });
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits.parse().expect("digit string");
                toks.push(Spanned {
                    tok: Tok::Int(n),
                    line: l,
                    col: c,
                });
            }
            _ if ch.is_ascii_alphabetic() || ch == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push(Spanned {
                    tok: Tok::Ident(name),
                    line: l,
                    col: c,
                });
            }
            _ => return Err(err(l, c, format!("unexpected character '{ch}'"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    variables: &'a [String],
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |s| (s.line, s.col))
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|s| &s.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.variables.len()
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.term()?;
                acc = acc.try_add(&rhs).expect("same ring");
            } else if self.eat(&Tok::Minus) {
                let rhs = self.term()?;
                acc = acc.try_sub(&rhs).expect("same ring");
            } else {
                break;
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            let rhs = self.factor()?;
            acc = acc.try_mul(&rhs).expect("same ring");
        }
        Ok(acc)
    }

    // factor := '-'* power
    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let mut negate = false;
        while self.eat(&Tok::Minus) {
            negate = !negate;
        }
        let p = self.power()?;
        Ok(if negate { p.neg() } else { p })
    }

    // power := primary ('^' uint)?
    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            let (l, c) = self.here();
            match self.bump().map(|s| s.tok.clone()) {
                Some(Tok::Int(n)) => {
                    if n.is_negative() || n > BigInt::from(MAX_EXPONENT) {
                        return Err(err(l, c, format!("exponent overflow: {n}")));
                    }
                    let e: u32 = n.to_string().parse().expect("bounded exponent");
                    Ok(base.pow(e))
                }
                _ => Err(err(l, c, "expected integer exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    // primary := rational | var | '(' expr ')'
    fn primary(&mut self) -> Result<MPoly, ParseError> {
        let (l, c) = self.here();
        match self.bump().map(|s| s.tok.clone()) {
            Some(Tok::Int(n)) => {
                // Optional '/ q' makes a rational literal.
                if self.eat(&Tok::Slash) {
                    let (dl, dc) = self.here();
                    match self.bump().map(|s| s.tok.clone()) {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(err(dl, dc, "zero denominator"));
                            }
                            Ok(MPoly::constant(self.nvars(), Q::new(n, d)))
                        }
                        _ => Err(err(dl, dc, "expected integer denominator after '/'")),
                    }
                } else {
                    Ok(MPoly::constant(self.nvars(), Q::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.variables.iter().position(|v| v == &name) {
                Some(i) => Ok(MPoly::var(self.nvars(), i).expect("declared variable")),
                None => Err(err(l, c, format!("undeclared variable '{name}'"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    let (el, ec) = self.here();
                    return Err(err(el, ec, "expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Slash) => Err(err(
                l,
                c,
                "division is only allowed between integer literals",
            )),
            Some(other) => Err(err(l, c, format!("unexpected token {other:?}"))),
            None => Err(err(l, c, "unexpected end of expression")),
        }
    }
}

/// Parses a polynomial expression over the declared variables.
pub fn parse_polynomial(src: &PolySource) -> Result<MPoly, ParseError> {
    for (i, a) in src.variables.iter().enumerate() {
        if src.variables[i + 1..].contains(a) {
            return Err(err(0, 0, format!("duplicate variable name '{a}'")));
        }
    }
    let toks = lex(&src.expression)?;
    let lines = src.expression.lines().count().max(1);
    let last_len = src.expression.lines().last().map_or(1, |l| l.len() + 1);
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        variables: &src.variables,
        end: (lines, last_len),
    };
    if parser.peek().is_none() {
        return Err(err(1, 1, "empty expression"));
    }
    let poly = parser.expr()?;
    if let Some(s) = parser.peek() {
        return Err(err(
            s.line,
            s.col,
            format!("unexpected trailing token {:?}", s.tok),
        ));
    }
    if let Some(d) = src.declared_degree {
        match poly.homogeneous_degree() {
            Some(got) if got == d => {}
            got => {
                return Err(err(
                    1,
                    1,
                    format!("homogeneity violation: declared degree {d}, found {got:?}"),
                ));
            }
        }
    }
    Ok(poly)
}

fn render_coeff(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Deterministic canonical rendering: terms in descending graded-lex order,
/// explicit `*` between factors, `^` only for exponents above 1.
/// `parse(render(p)) == p` for every polynomial.
pub fn render_polynomial(p: &MPoly, variables: &[String]) -> Result<String, ParseError> {
    if variables.len() != p.nvars() {
        return Err(err(
            0,
            0,
            format!(
                "{} variable names for a {}-variable polynomial",
                variables.len(),
                p.nvars()
            ),
        ));
    }
    if p.is_zero() {
        return Ok("0".to_string());
    }
    let mut out = String::new();
    let terms: Vec<(&Monomial, &Q)> = p.terms().collect();
    for (k, (mono, coeff)) in terms.iter().rev().enumerate() {
        let negative = coeff.is_negative();
        let abs = if negative {
            -(*coeff).clone()
        } else {
            (*coeff).clone()
        };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !abs.is_one() || mono.degree() == 0 {
            factors.push(render_coeff(&abs));
        }
        for (i, &e) in mono.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(variables[i].clone()),
                _ => factors.push(format!("{}^{}", variables[i], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    Ok(out)
}
