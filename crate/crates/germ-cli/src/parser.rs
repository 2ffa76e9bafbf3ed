//! Recursive-descent parser for the expression grammar.
//!
//! Precedence, tightest first: `^` (integer exponent), unary `-`, then `*`,
//! `/`, and juxtaposition (writing two factors side by side, as in `3i` or
//! `2x`), then binary `+` and `-`. Literals: `diff(a, b)` for a
//! diffeomorphism, `curve(a; b)` for a parametrized curve, `vf(a; b)` for a
//! vector field, and `group(d1, d2, …)` over diffeomorphisms.

use crate::lexer::{lex, TokKind, Token};
use crate::Diag;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallKind {
    Diff,
    Curve,
    Vf,
    Group,
}

impl CallKind {
    pub fn name(self) -> &'static str {
        match self {
            CallKind::Diff => "diff",
            CallKind::Curve => "curve",
            CallKind::Vf => "vf",
            CallKind::Group => "group",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Int(u64),
    Name(String),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(CallKind, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: u32,
    pub col: u32,
}

impl Expr {
    fn new(kind: ExprKind, at: (u32, u32)) -> Expr {
        Expr { kind, line: at.0, col: at.1 }
    }
}

pub fn parse(text: &str) -> Result<Expr, Diag> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.expr()?;
    p.expect(TokKind::Eof)?;
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn at(&self) -> (u32, u32) {
        (self.peek().line, self.peek().col)
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokKind) -> Result<Token, Diag> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            let t = self.peek();
            Err(Diag::new(
                t.line,
                t.col,
                format!("expected {}, found {}", kind.describe(), t.kind.describe()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, Diag> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokKind::Plus => BinOp::Add,
                TokKind::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let at = self.at();
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::new(ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)), at);
        }
    }

    fn term(&mut self) -> Result<Expr, Diag> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().kind {
                TokKind::Star | TokKind::Slash => {
                    let op = if self.peek().kind == TokKind::Star { BinOp::Mul } else { BinOp::Div };
                    let at = self.at();
                    self.advance();
                    let rhs = self.factor()?;
                    lhs = Expr::new(ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)), at);
                }
                // Juxtaposition multiplies: `3i`, `2x`, `1/2i`.
                TokKind::Int(_) | TokKind::Ident(_) => {
                    let at = self.at();
                    let rhs = self.factor()?;
                    lhs = Expr::new(ExprKind::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs)), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, Diag> {
        if self.peek().kind == TokKind::Minus {
            let at = self.at();
            self.advance();
            let inner = self.factor()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), at));
        }
        let base = self.atom()?;
        if self.peek().kind == TokKind::Caret {
            let at = self.at();
            self.advance();
            let exp_tok = self.advance();
            let exp = match exp_tok.kind {
                TokKind::Int(n) if n <= u32::MAX as u64 => n as u32,
                _ => {
                    return Err(Diag::new(
                        exp_tok.line,
                        exp_tok.col,
                        format!(
                            "expected a nonnegative integer exponent, found {}",
                            exp_tok.kind.describe()
                        ),
                    ))
                }
            };
            return Ok(Expr::new(ExprKind::Pow(Box::new(base), exp), at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Diag> {
        let at = self.at();
        match self.peek().kind.clone() {
            TokKind::Int(n) => {
                self.advance();
                Ok(Expr::new(ExprKind::Int(n), at))
            }
            TokKind::Ident(name) => {
                self.advance();
                let call = match name.as_str() {
                    "diff" => Some(CallKind::Diff),
                    "curve" => Some(CallKind::Curve),
                    "vf" => Some(CallKind::Vf),
                    "group" => Some(CallKind::Group),
                    _ => None,
                };
                match call {
                    Some(kind) if self.peek().kind == TokKind::LParen => self.call(kind, at),
                    Some(_) => Err(Diag::new(
                        at.0,
                        at.1,
                        format!("'{name}' starts a literal and needs '(' after it"),
                    )),
                    None => Ok(Expr::new(ExprKind::Name(name), at)),
                }
            }
            TokKind::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(TokKind::RParen)?;
                Ok(inner)
            }
            other => Err(Diag::new(
                at.0,
                at.1,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }

    fn call(&mut self, kind: CallKind, at: (u32, u32)) -> Result<Expr, Diag> {
        self.expect(TokKind::LParen)?;
        let args = match kind {
            CallKind::Diff => self.two_components(kind, TokKind::Comma)?,
            CallKind::Curve | CallKind::Vf => self.two_components(kind, TokKind::Semi)?,
            CallKind::Group => {
                let mut args = vec![self.expr()?];
                while self.peek().kind == TokKind::Comma {
                    self.advance();
                    args.push(self.expr()?);
                }
                self.expect(TokKind::RParen)?;
                args
            }
        };
        Ok(Expr::new(ExprKind::Call(kind, args), at))
    }

    fn two_components(&mut self, kind: CallKind, sep: TokKind) -> Result<Vec<Expr>, Diag> {
        let first = self.expr()?;
        if self.peek().kind == TokKind::RParen {
            let t = self.peek();
            return Err(Diag::new(
                t.line,
                t.col,
                format!("expected two components in {}(...)", kind.name()),
            ));
        }
        self.expect(sep)?;
        let second = self.expr()?;
        if self.peek().kind != TokKind::RParen {
            let t = self.peek();
            return Err(Diag::new(
                t.line,
                t.col,
                format!("expected two components in {}(...)", kind.name()),
            ));
        }
        self.advance();
        Ok(vec![first, second])
    }
}
