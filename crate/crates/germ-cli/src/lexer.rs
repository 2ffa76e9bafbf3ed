//! Tokenizer for the expression grammar. Every token carries its source
//! position so later stages can point diagnostics back at the input.

use crate::Diag;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokKind {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl TokKind {
    pub fn describe(&self) -> String {
        match self {
            TokKind::Int(n) => format!("number {n}"),
            TokKind::Ident(s) => format!("'{s}'"),
            TokKind::Plus => "'+'".into(),
            TokKind::Minus => "'-'".into(),
            TokKind::Star => "'*'".into(),
            TokKind::Slash => "'/'".into(),
            TokKind::Caret => "'^'".into(),
            TokKind::LParen => "'('".into(),
            TokKind::RParen => "')'".into(),
            TokKind::Comma => "','".into(),
            TokKind::Semi => "';'".into(),
            TokKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub kind: TokKind,
    pub line: u32,
    pub col: u32,
}

pub fn lex(text: &str) -> Result<Vec<Token>, Diag> {
    let mut tokens = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let kind = match c {
            '+' => {
                bump(&mut chars);
                TokKind::Plus
            }
            '-' => {
                bump(&mut chars);
                TokKind::Minus
            }
            '*' => {
                bump(&mut chars);
                TokKind::Star
            }
            '/' => {
                bump(&mut chars);
                TokKind::Slash
            }
            '^' => {
                bump(&mut chars);
                TokKind::Caret
            }
            '(' => {
                bump(&mut chars);
                TokKind::LParen
            }
            ')' => {
                bump(&mut chars);
                TokKind::RParen
            }
            ',' => {
                bump(&mut chars);
                TokKind::Comma
            }
            ';' => {
                bump(&mut chars);
                TokKind::Semi
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dig as u64))
                            .ok_or_else(|| Diag::new(tline, tcol, "number literal too large"))?;
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                TokKind::Int(value)
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                TokKind::Ident(name)
            }
            other => {
                return Err(Diag::new(tline, tcol, format!("unexpected character '{other}'")));
            }
        };
        tokens.push(Token { kind, line: tline, col: tcol });
    }
    tokens.push(Token { kind: TokKind::Eof, line, col });
    Ok(tokens)
}
