//! A small expression language over the symmetric quantities of the roots.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' integer)?
//! atom   := integer | name '(' integer ')' | '(' expr ')'
//! ```
//!
//! `name` is one of `e p h T V W F`. `^` does not chain: `2^3^2` is rejected.
//! Evaluation is exact at a fixed order `m`:
//!
//! - `e(k)`: `(-1)^{k+1}` for `1 <= k <= m`, `1` for `k = 0`, `0` past `m`
//! - `p(k)`, `h(k)`: power sums and complete homogeneous sums of the roots
//! - `T(n)`: Tribonacci, only at `m = 3`; `F(n)`: Fibonacci, only at `m = 2`
//! - `V(n)`: the all-ones-head sequence of order `m`; `W(n)`: zero-padded
//!   m-bonacci of order `m`

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::recurrences::{make_family, Family};
use crate::symmetric::{h_sequence, power_sums, vieta};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Integer,
    Identifier,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Byte offset of the first character.
    pub offset: usize,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                TokenKind::Integer
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                TokenKind::Identifier
            }
            _ => {
                i += 1;
                match c {
                    b'+' => TokenKind::Plus,
                    b'-' => TokenKind::Minus,
                    b'*' => TokenKind::Star,
                    b'^' => TokenKind::Caret,
                    b'(' => TokenKind::LParen,
                    b')' => TokenKind::RParen,
                    _ => {
                        let found = input[start..].chars().next().expect("in bounds");
                        return Err(Error::Lex { offset: start, found });
                    }
                }
            }
        };
        tokens.push(Token {
            kind,
            lexeme: input[start..i].to_string(),
            offset: start,
        });
    }
    tokens.push(Token {
        kind: TokenKind::End,
        lexeme: String::new(),
        offset: input.len(),
    });
    Ok(tokens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    E,
    P,
    H,
    T,
    V,
    W,
    F,
}

impl Func {
    pub const ALL: [Func; 7] = [Func::E, Func::P, Func::H, Func::T, Func::V, Func::W, Func::F];

    pub fn name(self) -> &'static str {
        match self {
            Func::E => "e",
            Func::P => "p",
            Func::H => "h",
            Func::T => "T",
            Func::V => "V",
            Func::W => "W",
            Func::F => "F",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Expression tree. Equality ignores source offsets.
#[derive(Debug, Clone, Eq)]
pub enum Ast {
    Int(BigUint),
    Call { func: Func, arg: u64, offset: usize },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

impl PartialEq for Ast {
    fn eq(&self, other: &Self) -> bool {
        use Ast::*;
        match (self, other) {
            (Int(a), Int(b)) => a == b,
            (Call { func: f, arg: a, .. }, Call { func: g, arg: b, .. }) => f == g && a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) => a == c && b == d,
            (Pow(a, j), Pow(b, k)) => j == k && a == b,
            _ => false,
        }
    }
}

impl Ast {
    pub fn int(v: u64) -> Ast {
        Ast::Int(BigUint::from(v))
    }

    pub fn call(func: Func, arg: u64) -> Ast {
        Ast::Call { func, arg, offset: 0 }
    }

    fn precedence(&self) -> u8 {
        match self {
            Ast::Add(..) | Ast::Sub(..) => 1,
            Ast::Mul(..) => 2,
            Ast::Neg(..) => 3,
            Ast::Pow(..) => 4,
            Ast::Int(_) | Ast::Call { .. } => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Ast::Int(v) => write!(f, "{v}"),
            Ast::Call { func, arg, .. } => write!(f, "{}({arg})", func.name()),
            Ast::Neg(x) => {
                f.write_str("-")?;
                x.fmt_at(f, 3)
            }
            Ast::Add(a, b) | Ast::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(if matches!(self, Ast::Add(..)) { " + " } else { " - " })?;
                b.fmt_at(f, 2)
            }
            Ast::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str("*")?;
                b.fmt_at(f, 3)
            }
            Ast::Pow(base, k) => {
                base.fmt_at(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// Minimal parenthesization; re-parsing the output yields an equal tree.
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    /// byte length of the source, for clamping end-of-input offsets
    source_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &'a Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> &'a Token {
        let t = &self.tokens[self.pos];
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, tok: &Token, message: impl Into<String>) -> Error {
        let offset = if tok.kind == TokenKind::End {
            tok.offset.min(self.source_len.saturating_sub(1))
        } else {
            tok.offset
        };
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    fn describe(tok: &Token) -> String {
        match tok.kind {
            TokenKind::End => "end of input".into(),
            _ => format!("{:?}", tok.lexeme),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                TokenKind::Minus => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let tok = self.bump();
        if tok.kind != TokenKind::Integer {
            return Err(self.error(tok, format!("expected integer exponent, found {}", Self::describe(tok))));
        }
        let k: u32 = tok
            .lexeme
            .parse()
            .map_err(|_| self.error(tok, format!("exponent {} is too large", tok.lexeme)))?;
        let next = self.peek();
        if next.kind == TokenKind::Caret {
            return Err(self.error(next, "'^' does not chain; parenthesize the base"));
        }
        Ok(Ast::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Ast> {
        let tok = self.bump();
        match tok.kind {
            TokenKind::Integer => Ok(Ast::Int(tok.lexeme.parse().expect("digit run"))),
            TokenKind::Identifier => {
                let func = Func::from_name(&tok.lexeme).ok_or_else(|| {
                    self.error(
                        tok,
                        format!("unknown function {:?}; expected one of e p h T V W F", tok.lexeme),
                    )
                })?;
                let open = self.bump();
                if open.kind != TokenKind::LParen {
                    return Err(self.error(
                        open,
                        format!("expected '(' after {}, found {}", func.name(), Self::describe(open)),
                    ));
                }
                let arg_tok = self.bump();
                if arg_tok.kind != TokenKind::Integer {
                    return Err(self.error(
                        arg_tok,
                        format!(
                            "expected a non-negative integer argument, found {}",
                            Self::describe(arg_tok)
                        ),
                    ));
                }
                let arg: u64 = arg_tok
                    .lexeme
                    .parse()
                    .map_err(|_| self.error(arg_tok, format!("argument {} is too large", arg_tok.lexeme)))?;
                let close = self.bump();
                if close.kind != TokenKind::RParen {
                    return Err(self.error(close, format!("expected ')', found {}", Self::describe(close))));
                }
                Ok(Ast::Call {
                    func,
                    arg,
                    offset: tok.offset,
                })
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.kind != TokenKind::RParen {
                    return Err(self.error(
                        close,
                        format!(
                            "unmatched '(' at offset {}: expected ')', found {}",
                            tok.offset,
                            Self::describe(close)
                        ),
                    ));
                }
                Ok(inner)
            }
            TokenKind::RParen => Err(self.error(tok, "unmatched ')'")),
            _ => Err(self.error(
                tok,
                format!(
                    "expected integer, function call, '-' or '(', found {}",
                    Self::describe(tok)
                ),
            )),
        }
    }
}

/// Parses a token stream produced by [`tokenize`].
pub fn parse(tokens: &[Token]) -> Result<Ast> {
    let source_len = tokens.last().map_or(0, |t| t.offset);
    if tokens.last().map(|t| t.kind) != Some(TokenKind::End) {
        return Err(Error::Parse {
            offset: source_len,
            message: "token stream is not terminated".into(),
        });
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        source_len,
    };
    let ast = p.expr()?;
    let tail = p.peek();
    if tail.kind != TokenKind::End {
        let message = if tail.kind == TokenKind::RParen {
            "unmatched ')'".to_string()
        } else {
            format!("expected operator or end of input, found {}", Parser::describe(tail))
        };
        return Err(p.error(tail, message));
    }
    Ok(ast)
}

/// Tokenizes and parses in one step.
pub fn parse_str(input: &str) -> Result<Ast> {
    parse(&tokenize(input)?)
}

fn eval_call(func: Func, arg: u64, offset: usize, m: usize) -> Result<BigInt> {
    let fail = |message: String| Error::Eval { offset, message };
    let idx = usize::try_from(arg).map_err(|_| fail(format!("index {arg} is too large")))?;
    Ok(match func {
        Func::E => vieta(m)?.get(idx),
        Func::P => power_sums(m, idx)?.values.swap_remove(idx),
        Func::H => h_sequence(m, idx)?.values.swap_remove(idx),
        Func::T if m != 3 => {
            return Err(fail(format!(
                "T(n) is the Tribonacci sequence and needs m = 3, not {m}"
            )))
        }
        Func::F if m != 2 => return Err(fail(format!("F(n) is the Fibonacci sequence and needs m = 2, not {m}"))),
        Func::T | Func::W => make_family(Family::PaddedW, m)?.term(arg),
        Func::F => make_family(Family::Fibonacci, m)?.term(arg),
        Func::V => make_family(Family::ConjectureV, m)?.term(arg),
    })
}

/// Exact value of `ast` with the roots of the order-`m` characteristic
/// polynomial.
pub fn evaluate(ast: &Ast, m: usize) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::InvalidOrder(m));
    }
    Ok(match ast {
        Ast::Int(v) => BigInt::from(v.clone()),
        Ast::Call { func, arg, offset } => eval_call(*func, *arg, *offset, m)?,
        Ast::Neg(x) => -evaluate(x, m)?,
        Ast::Add(a, b) => evaluate(a, m)? + evaluate(b, m)?,
        Ast::Sub(a, b) => evaluate(a, m)? - evaluate(b, m)?,
        Ast::Mul(a, b) => evaluate(a, m)? * evaluate(b, m)?,
        Ast::Pow(base, k) => num_traits::pow(evaluate(base, m)?, *k as usize),
    })
}

/// Tokenize, parse and evaluate.
pub fn eval_str(input: &str, m: usize) -> Result<BigInt> {
    evaluate(&parse_str(input)?, m)
}
