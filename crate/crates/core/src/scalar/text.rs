//! Stable text grammar for scalar expressions.
//!
//! The grammar is used by [`Display`](std::fmt::Display), by the golden-file
//! tests and by the CLI report. It is documented here once and kept stable:
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | param ['^' int] | 'exp(' ['-'] [digits] 'f)'
//!           | jet ['^' digits] | '(' expr ')'
//! rational := digits ['/' digits]
//! param    := 't' | 's' | 'a' | 'd' | 'l1' | 'l2' | 'l3' | 'ap' | 'alpha'
//! jet      := 'f' [1-4]+          (sorted multi-index, e.g. f1, f12, f112)
//! ```
//!
//! Rendered terms follow the canonical internal order with the factor order
//! `coefficient * parameters * jets * exponential`, e.g. `2*f1*exp(2f)` or
//! `t^2*s^-2`. Whitespace and `#`-to-end-of-line comments are ignored when
//! parsing.

use std::fmt;

use num::{BigInt, One, Signed};
use thiserror::Error;

use super::expr::{ScalarExpr, TermKey};
use super::jet::JetSymbol;
use super::param::Param;
use super::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at token {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid jet index `{0}`: directions must lie in 1..=4")]
    BadJetIndex(String),
    #[error("invalid basis index `{0}`")]
    BadBasisIndex(String),
    #[error("mixed coframe bases in one expression")]
    MixedBasis,
    #[error("mixed form degrees in one expression")]
    MixedDegree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Number(BigInt),
    /// Letters followed by optional digits, e.g. ("f", "12"), ("alpha", "").
    Ident(String, String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(n) => write!(f, "`{n}`"),
            Token::Ident(a, b) => write!(f, "`{a}{b}`"),
            Token::Plus => write!(f, "`+`"),
            Token::Minus => write!(f, "`-`"),
            Token::Star => write!(f, "`*`"),
            Token::Slash => write!(f, "`/`"),
            Token::Caret => write!(f, "`^`"),
            Token::LParen => write!(f, "`(`"),
            Token::RParen => write!(f, "`)`"),
        }
    }
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits parse");
                tokens.push(Token::Number(n));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_lowercase() {
                    i += 1;
                }
                let letters = input[start..i].to_string();
                let dstart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = input[dstart..i].to_string();
                tokens.push(Token::Ident(letters, digits));
            }
            other => return Err(ParseError::UnexpectedChar(other, i)),
        }
    }
    Ok(tokens)
}

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(input: &str) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(input)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    pub(crate) fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn expect(&mut self, want: &Token) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if &t == want => Ok(()),
            Some(t) => Err(ParseError::Unexpected {
                expected: format!("{want}"),
                found: format!("{t}"),
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn parse_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = matches!(self.peek(), Some(Token::Minus));
        if neg {
            self.next();
        }
        match self.next() {
            Some(Token::Number(n)) => Ok(if neg { -n } else { n }),
            Some(t) => Err(ParseError::Unexpected {
                expected: "integer".into(),
                found: format!("{t}"),
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn parse_exponent(&mut self) -> Result<i32, ParseError> {
        if matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            let n = self.parse_int()?;
            n.try_into().map_err(|_| ParseError::Unexpected {
                expected: "small exponent".into(),
                found: "huge integer".into(),
            })
        } else {
            Ok(1)
        }
    }

    /// A single multiplicative factor; `None` when the factor is a basis
    /// monomial, which the form-level parser handles (`scalar_only` forbids
    /// that case).
    fn parse_scalar_factor(&mut self, scalar_only: bool) -> Result<Option<ScalarExpr>, ParseError> {
        match self.peek().cloned() {
            Some(Token::Number(_)) => {
                let n = self.parse_int()?;
                let q = if matches!(self.peek(), Some(Token::Slash)) {
                    self.next();
                    let d = self.parse_int()?;
                    Q::new(n, d)
                } else {
                    Q::from_integer(n)
                };
                let k = if matches!(self.peek(), Some(Token::Caret)) {
                    self.next();
                    let e: i32 =
                        self.parse_int()?
                            .try_into()
                            .map_err(|_| ParseError::Unexpected {
                                expected: "small exponent".into(),
                                found: "huge integer".into(),
                            })?;
                    e
                } else {
                    1
                };
                let mut v = Q::one();
                for _ in 0..k.unsigned_abs() {
                    v *= &q;
                }
                if k < 0 {
                    v = Q::one() / v;
                }
                Ok(Some(ScalarExpr::from_q(v)))
            }
            Some(Token::LParen) => {
                self.next();
                let e = self.parse_scalar_expr()?;
                self.expect(&Token::RParen)?;
                let k = self.parse_exponent()?;
                if k < 0 {
                    let inv = e.invert_monomial().ok_or_else(|| ParseError::Unexpected {
                        expected: "invertible factor".into(),
                        found: "negative power of a sum".into(),
                    })?;
                    Ok(Some(inv.pow((-k) as u32)))
                } else {
                    Ok(Some(e.pow(k as u32)))
                }
            }
            Some(Token::Ident(letters, digits)) => {
                if letters == "exp" && digits.is_empty() {
                    self.next();
                    self.expect(&Token::LParen)?;
                    let neg = matches!(self.peek(), Some(Token::Minus));
                    if neg {
                        self.next();
                    }
                    let mag: i32 = match self.peek().cloned() {
                        Some(Token::Number(_)) => {
                            let n = self.parse_int()?;
                            n.try_into().map_err(|_| ParseError::Unexpected {
                                expected: "small exponential power".into(),
                                found: "huge integer".into(),
                            })?
                        }
                        _ => 1,
                    };
                    match self.next() {
                        Some(Token::Ident(l, d)) if l == "f" && d.is_empty() => {}
                        other => {
                            return Err(ParseError::Unexpected {
                                expected: "`f` inside exp(...)".into(),
                                found: other.map_or("end".into(), |t| format!("{t}")),
                            })
                        }
                    }
                    self.expect(&Token::RParen)?;
                    let k = if neg { -mag } else { mag };
                    return Ok(Some(ScalarExpr::exp_f(k)));
                }
                if letters == "f" && !digits.is_empty() {
                    self.next();
                    let dirs: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
                    if dirs.iter().any(|&d| !(1..=4).contains(&d)) {
                        return Err(ParseError::BadJetIndex(digits));
                    }
                    let k = self.parse_exponent()?;
                    if k < 0 {
                        return Err(ParseError::Unexpected {
                            expected: "non-negative jet power".into(),
                            found: format!("{k}"),
                        });
                    }
                    let sym = JetSymbol::new(&dirs);
                    return Ok(Some(ScalarExpr::term(
                        Q::one(),
                        Default::default(),
                        0,
                        vec![sym; k as usize],
                    )));
                }
                if (letters == "e" || letters == "eb") && !digits.is_empty() {
                    if scalar_only {
                        return Err(ParseError::Unexpected {
                            expected: "scalar factor".into(),
                            found: format!("basis monomial `{letters}{digits}`"),
                        });
                    }
                    return Ok(None);
                }
                let name = format!("{letters}{digits}");
                match Param::from_name(&name) {
                    Some(p) => {
                        self.next();
                        let k = self.parse_exponent()?;
                        Ok(Some(ScalarExpr::param_pow(p, k)))
                    }
                    None => Err(ParseError::UnknownSymbol(name)),
                }
            }
            Some(t) => Err(ParseError::Unexpected {
                expected: "factor".into(),
                found: format!("{t}"),
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    /// Product of scalar factors. Returns the scalar part plus, when present,
    /// the trailing basis monomial `(letters, digits)`.
    pub(crate) fn parse_term(
        &mut self,
        scalar_only: bool,
    ) -> Result<(ScalarExpr, Option<(String, String)>), ParseError> {
        let mut acc = ScalarExpr::one();
        loop {
            match self.parse_scalar_factor(scalar_only)? {
                Some(factor) => acc = &acc * &factor,
                None => {
                    // current token is a basis monomial
                    if let Some(Token::Ident(l, d)) = self.next() {
                        return Ok((acc, Some((l, d))));
                    }
                    unreachable!("peeked basis token disappeared");
                }
            }
            if matches!(self.peek(), Some(Token::Star)) {
                self.next();
            } else {
                return Ok((acc, None));
            }
        }
    }

    pub(crate) fn parse_scalar_expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = ScalarExpr::zero();
        let mut sign = 1i64;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            sign = -1;
        } else if matches!(self.peek(), Some(Token::Plus)) {
            self.next();
        }
        loop {
            let (term, _) = self.parse_term(true)?;
            acc = &acc + &term.scale_int(sign);
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    sign = 1;
                }
                Some(Token::Minus) => {
                    self.next();
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses a scalar expression in the documented grammar.
pub fn parse_scalar(input: &str) -> Result<ScalarExpr, ParseError> {
    let mut p = Parser::new(input)?;
    let e = p.parse_scalar_expr()?;
    if !p.at_end() {
        return Err(ParseError::Unexpected {
            expected: "end of input".into(),
            found: p.peek().map_or("?".into(), |t| format!("{t}")),
        });
    }
    Ok(e)
}

fn format_q_magnitude(q: &Q) -> String {
    let a = q.abs();
    if a.denom().is_one() {
        format!("{}", a.numer())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Renders one term (sign excluded) in canonical factor order.
fn format_term_magnitude(key: &TermKey, coeff: &Q) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mag = format_q_magnitude(coeff);
    let structural = !key.params.is_one() || key.exp_pow != 0 || !key.jets.is_empty();
    if mag != "1" || !structural {
        parts.push(mag);
    }
    for (p, k) in key.params.iter() {
        if k == 1 {
            parts.push(p.name().to_string());
        } else {
            parts.push(format!("{}^{}", p.name(), k));
        }
    }
    let mut i = 0;
    while i < key.jets.len() {
        let j = &key.jets[i];
        let mut n = 1;
        while i + n < key.jets.len() && key.jets[i + n] == *j {
            n += 1;
        }
        if n == 1 {
            parts.push(j.to_string());
        } else {
            parts.push(format!("{j}^{n}"));
        }
        i += n;
    }
    if key.exp_pow != 0 {
        let k = key.exp_pow;
        if k == 1 {
            parts.push("exp(f)".into());
        } else if k == -1 {
            parts.push("exp(-f)".into());
        } else {
            parts.push(format!("exp({k}f)"));
        }
    }
    parts.join("*")
}

pub(crate) fn format_scalar(expr: &ScalarExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if expr.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (key, coeff) in expr.terms() {
        if first {
            if coeff.is_negative() {
                f.write_str("-")?;
            }
            first = false;
        } else if coeff.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        f.write_str(&format_term_magnitude(key, coeff))?;
    }
    Ok(())
}

/// Renders one scalar as a coefficient of a basis monomial: single terms are
/// rendered inline and sums are parenthesized.
pub(crate) fn format_coefficient(expr: &ScalarExpr) -> (bool, String) {
    let mut it = expr.terms();
    match (it.next(), it.next()) {
        (Some((key, coeff)), None) => (coeff.is_negative(), format_term_magnitude(key, coeff)),
        _ => (false, format!("({expr})")),
    }
}
