//! The coloring expression language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '×' | 'mod' | '%') unary)*
//! unary   := '-' unary | primary
//! primary := integer | variable | 'floor' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Variables are `x`, `y`, `z` (coordinates 1 to 3) and `x1`, `x2`, ….
//! Values are exact elements of Q(√d); `mod` takes integer operands and
//! returns the nonnegative residue.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::QuadScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Int(BigInt),
    /// Zero-based coordinate index.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Mod(Box<Expr>, Box<Expr>),
    Floor(Box<Expr>),
}

impl Expr {
    /// Highest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Int(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Neg(e) | Expr::Floor(e) => e.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Mod(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }

    pub fn eval(&self, point: &[QuadScalar]) -> Result<QuadScalar> {
        Ok(match self {
            Expr::Int(n) => QuadScalar::from_bigint(n.clone()),
            Expr::Var(i) => point
                .get(*i)
                .cloned()
                .ok_or(Error::DimensionMismatch {
                    expected: i + 1,
                    found: point.len(),
                })?,
            Expr::Neg(e) => -e.eval(point)?,
            Expr::Add(a, b) => a.eval(point)?.try_add(&b.eval(point)?)?,
            Expr::Sub(a, b) => a.eval(point)?.try_sub(&b.eval(point)?)?,
            Expr::Mul(a, b) => a.eval(point)?.try_mul(&b.eval(point)?)?,
            Expr::Mod(a, b) => QuadScalar::from_bigint(int_mod(&a.eval(point)?, &b.eval(point)?)?),
            Expr::Floor(e) => QuadScalar::from_bigint(e.eval(point)?.floor()),
        })
    }

    /// Folds constant subtrees and redundant floors.
    pub fn simplify(self) -> Result<Expr> {
        let folded = match self {
            Expr::Int(_) | Expr::Var(_) => return Ok(self),
            Expr::Neg(e) => Expr::Neg(Box::new(e.simplify()?)),
            Expr::Add(a, b) => Expr::Add(Box::new(a.simplify()?), Box::new(b.simplify()?)),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.simplify()?), Box::new(b.simplify()?)),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.simplify()?), Box::new(b.simplify()?)),
            Expr::Mod(a, b) => Expr::Mod(Box::new(a.simplify()?), Box::new(b.simplify()?)),
            Expr::Floor(e) => match e.simplify()? {
                inner @ (Expr::Floor(_) | Expr::Mod(_, _) | Expr::Int(_)) => inner,
                inner => Expr::Floor(Box::new(inner)),
            },
        };
        if folded.max_var().is_none() {
            let v = folded.eval(&[])?;
            if let Some(n) = v.as_integer() {
                return Ok(Expr::Int(n));
            }
        }
        Ok(folded)
    }
}

fn int_mod(a: &QuadScalar, m: &QuadScalar) -> Result<BigInt> {
    let (Some(a), Some(m)) = (a.as_integer(), m.as_integer()) else {
        return Err(Error::NonIntegerMod(format!("{a} mod {m}")));
    };
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.mod_floor(&m.abs()))
}

impl fmt::Display for Expr {
    /// Fully parenthesized; reparses to an equivalent tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) if n.is_negative() => write!(f, "(-{})", -n),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Mod(a, b) => write!(f, "({a} mod {b})"),
            Expr::Floor(e) => write!(f, "floor({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Mod,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let token = if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
                col += 1;
            }
            Token::Int(digits.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                word.push(d);
                chars.next();
                col += 1;
            }
            if word == "mod" {
                Token::Mod
            } else {
                Token::Ident(word)
            }
        } else {
            chars.next();
            col += 1;
            match c {
                '+' => Token::Plus,
                '-' | '−' => Token::Minus,
                '*' | '×' => Token::Star,
                '%' => Token::Mod,
                '(' => Token::LParen,
                ')' => Token::RParen,
                other => {
                    return Err(Error::Syntax {
                        line: tline,
                        col: tcol,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push(Spanned {
            token,
            line: tline,
            col: tcol,
        });
    }
    out.push(Spanned {
        token: Token::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: at.line,
            col: at.col,
            message: message.into(),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<()> {
        let t = self.bump();
        if t.token == token {
            Ok(())
        } else {
            Err(self.error(&t, format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().token {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().token {
                Token::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Mod => {
                    self.bump();
                    lhs = Expr::Mod(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().token == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.token {
            Token::Int(n) => Ok(Expr::Int(n)),
            Token::LParen => {
                let e = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(e)
            }
            Token::Ident(ref name) if name == "floor" => {
                self.expect(Token::LParen, "`(` after floor")?;
                let e = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(Expr::Floor(Box::new(e)))
            }
            Token::Ident(ref name) => variable_index(name).map(Expr::Var).ok_or_else(|| {
                Error::UnknownIdentifier {
                    name: name.clone(),
                    line: t.line,
                    col: t.col,
                }
            }),
            Token::End => Err(self.error(&t, "unexpected end of expression")),
            _ => Err(self.error(&t, "expected a number, variable, floor or `(`")),
        }
    }
}

fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.starts_with('0') {
                return None;
            }
            let k: usize = digits.parse().ok()?;
            (k >= 1).then(|| k - 1)
        }
    }
}

/// Parses an expression without simplifying it.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let e = parser.expr()?;
    let rest = parser.peek().clone();
    if rest.token != Token::End {
        return Err(parser.error(&rest, "unexpected trailing input"));
    }
    Ok(e)
}
