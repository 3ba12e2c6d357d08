//! Text surface for algebra elements.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr   := term { ("+" | "-") term }
//! term   := unary { ("*" | "/") unary }
//! unary  := "-" unary | factor
//! factor := atom [ "^" ["-"] int ]
//! atom   := "s" digits | "t" | "v" | int | "T(" int { "," int } ")" | "(" expr ")"
//! ```
//!
//! `s0` evaluates to `t·s1·t⁻¹`. Division is only allowed by scalars
//! (multiples of the unit), so `(v+1)/2` and `3/2` are both scalars.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeff::{Field, Rat};
use crate::hecke::{HeckeConfig, HeckeElement, HeckeError};
use crate::weyl::{AffinePerm, Generator, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator s{index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("window literal has {found} entries, rank is {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("window {0:?} is not an affine permutation")]
    InvalidWindow(Vec<i64>),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("division by a non-scalar element")]
    NonScalarDivision,
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    Prod(Vec<Expr>),
    Quot(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Gen(Generator),
    ScalarV,
    ScalarQ(Rat),
    BasisLit(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Gen(usize),
    T,
    V,
    Basis,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes: Vec<(usize, char)> = input.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let digits_from = |mut j: usize| {
        let start = j;
        while j < bytes.len() && bytes[j].1.is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    while k < bytes.len() {
        let (pos, ch) = bytes[k];
        let tok = match ch {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '0'..='9' => {
                let (s, e) = digits_from(k);
                let text: String = bytes[s..e].iter().map(|p| p.1).collect();
                k = e;
                out.push((pos, Tok::Int(text.parse().expect("ascii digits"))));
                continue;
            }
            's' => {
                let (s, e) = digits_from(k + 1);
                if s == e {
                    return Err(syntax(pos, "expected generator index after 's'"));
                }
                let text: String = bytes[s..e].iter().map(|p| p.1).collect();
                let index = text
                    .parse()
                    .map_err(|_| syntax(pos, "generator index too large"))?;
                k = e;
                out.push((pos, Tok::Gen(index)));
                continue;
            }
            't' => Tok::T,
            'v' => Tok::V,
            'T' => Tok::Basis,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
        };
        out.push((pos, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    rank: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    items.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    items.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Sum(items)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.unary()?];
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    items.push(self.unary()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    let den = self.unary()?;
                    let num = if items.len() == 1 {
                        items.pop().unwrap()
                    } else {
                        Expr::Prod(std::mem::take(&mut items))
                    };
                    items.push(quotient(num, den, pos)?);
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Prod(items)
        })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            let inner = self.unary()?;
            return Ok(match inner {
                Expr::ScalarQ(q) => Expr::ScalarQ(q.neg()),
                other => Expr::Neg(Box::new(other)),
            });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let exp = match self.bump() {
            Some(Tok::Int(n)) => i64::try_from(n).map_err(|_| syntax(pos, "exponent too large"))?,
            _ => return Err(syntax(pos, "expected integer exponent")),
        };
        let exp = if neg { -exp } else { exp };
        Ok(match exp {
            0 => Expr::ScalarQ(Rat::one()),
            1 => base,
            e => Expr::Pow(Box::new(base), e),
        })
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let v = i64::try_from(n).map_err(|_| syntax(pos, "integer too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(syntax(pos, "expected integer")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::ScalarQ(Rat::from_bigint(n))),
            Some(Tok::V) => Ok(Expr::ScalarV),
            Some(Tok::T) => Ok(Expr::Gen(Generator::T)),
            Some(Tok::Gen(i)) => {
                if self.rank < 2 || i >= self.rank {
                    return Err(ParseError::IndexOutOfRange {
                        index: i,
                        rank: self.rank,
                    });
                }
                Ok(Expr::Gen(Generator::S(i)))
            }
            Some(Tok::Basis) => {
                self.expect(Tok::LParen, "'(' after T")?;
                let mut window = vec![self.signed_int()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.bump();
                    window.push(self.signed_int()?);
                }
                self.expect(Tok::RParen, "')' closing window")?;
                if window.len() != self.rank {
                    return Err(ParseError::RankMismatch {
                        expected: self.rank,
                        found: window.len(),
                    });
                }
                AffinePerm::new(window.clone())
                    .map_err(|_| ParseError::InvalidWindow(window.clone()))?;
                Ok(Expr::BasisLit(window))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(_) => Err(syntax(pos, "unexpected token")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

fn quotient(num: Expr, den: Expr, pos: usize) -> Result<Expr, ParseError> {
    match (&num, &den) {
        (_, Expr::ScalarQ(d)) if d.is_zero() => Err(syntax(pos, "division by zero")),
        (Expr::ScalarQ(n), Expr::ScalarQ(d)) => Ok(Expr::ScalarQ(n.div(d).expect("nonzero"))),
        _ => Ok(Expr::Quot(Box::new(num), Box::new(den))),
    }
}

/// Parses an expression for an algebra of the given rank.
pub fn parse(input: &str, rank: usize) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
        end: input.len(),
        rank,
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Evaluates a parsed expression in `H(r, z)`.
pub fn eval_expr<C: Field>(
    e: &Expr,
    config: &HeckeConfig<C>,
) -> Result<HeckeElement<C>, ParseError> {
    Ok(match e {
        Expr::Sum(items) => {
            let mut acc = HeckeElement::zero(config);
            for it in items {
                acc = acc.add(&eval_expr(it, config)?)?;
            }
            acc
        }
        Expr::Neg(inner) => eval_expr(inner, config)?.neg(),
        Expr::Prod(items) => {
            let mut acc = HeckeElement::unit(config);
            for it in items {
                acc = acc.mul(&eval_expr(it, config)?)?;
            }
            acc
        }
        Expr::Quot(num, den) => {
            let d = eval_expr(den, config)?
                .as_scalar()
                .ok_or(ParseError::NonScalarDivision)?;
            let inv = d.inv().map_err(HeckeError::from)?;
            eval_expr(num, config)?.scale(&inv)
        }
        Expr::Pow(base, exp) => eval_expr(base, config)?.pow(*exp)?,
        Expr::Gen(g) => HeckeElement::gen(config, *g).map_err(|err| match err {
            HeckeError::Weyl(WeylError::IndexOutOfRange { index, rank }) => {
                ParseError::IndexOutOfRange { index, rank }
            }
            other => other.into(),
        })?,
        Expr::ScalarV => {
            let v = C::indeterminate().ok_or_else(|| {
                ParseError::ModeMismatch("'v' requires a symbolic parameter".into())
            })?;
            HeckeElement::scalar(config, v)
        }
        Expr::ScalarQ(q) => HeckeElement::scalar(config, C::from_rat(q.clone())),
        Expr::BasisLit(window) => {
            let w = AffinePerm::new(window.clone())
                .map_err(|_| ParseError::InvalidWindow(window.clone()))?;
            HeckeElement::basis(config, w)?
        }
    })
}

/// Parses and evaluates in one step.
pub fn eval_str<C: Field>(
    input: &str,
    config: &HeckeConfig<C>,
) -> Result<HeckeElement<C>, ParseError> {
    eval_expr(&parse(input, config.rank())?, config)
}

/// Whether a rendered coefficient needs parentheses before `*T(...)`.
fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Canonical text form: terms ordered by decreasing length, then by window,
/// written `c*T(...)` with negative terms as `- c*T(...)`.
pub fn pretty<C: Field>(e: &HeckeElement<C>) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<_> = e.terms().iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.length().cmp(&a.length()).then_with(|| a.cmp(b)));
    let mut out = String::new();
    for (n, (w, c)) in terms.into_iter().enumerate() {
        let negative = c.prints_negative();
        let mag = if negative { c.neg() } else { c.clone() };
        let body = if mag.is_one() {
            w.to_string()
        } else {
            let s = mag.to_string();
            if needs_parens(&s) {
                format!("({s})*{w}")
            } else {
                format!("{s}*{w}")
            }
        };
        match (n, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
            Expr::Neg(inner) => write!(f, "-({inner})"),
            Expr::Prod(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
            Expr::Quot(n, d) => write!(f, "({n})/({d})"),
            Expr::Pow(b, e) => write!(f, "({b})^{e}"),
            Expr::Gen(Generator::S(i)) => write!(f, "s{i}"),
            Expr::Gen(Generator::T) => write!(f, "t"),
            Expr::Gen(Generator::Tinv) => write!(f, "t^-1"),
            Expr::ScalarV => write!(f, "v"),
            Expr::ScalarQ(q) => write!(f, "({q})"),
            Expr::BasisLit(w) => {
                let parts: Vec<String> = w.iter().map(i64::to_string).collect();
                write!(f, "T({})", parts.join(","))
            }
        }
    }
}
