use std::iter::Peekable;
use std::str::Chars;

use super::ast::{Operator, SourceSpan};
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Identifier(String),
    Integer(i64),
    Decimal(f64),
    Str(String),
    Boolean(bool),
    Colon,
    Semicolon,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Op(Operator),
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Identifier(name) => format!("identifier '{name}'"),
            TokenKind::Integer(v) => format!("integer {v}"),
            TokenKind::Decimal(v) => format!("decimal {v}"),
            TokenKind::Str(_) => "string literal".to_string(),
            TokenKind::Boolean(v) => format!("'{v}'"),
            TokenKind::Colon => "':'".to_string(),
            TokenKind::Semicolon => "';'".to_string(),
            TokenKind::LBrace => "'{'".to_string(),
            TokenKind::RBrace => "'}'".to_string(),
            TokenKind::LParen => "'('".to_string(),
            TokenKind::RParen => "')'".to_string(),
            TokenKind::Op(op) => format!("'{}'", op.symbol()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    chars: Peekable<Chars<'a>>,
    line: u32,
    column: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn bump_if(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.bump();
            true
        } else {
            false
        }
    }
}

/// Splits Nanosyntax source into tokens. Whitespace and `//` comments are
/// skipped.
pub fn tokenize(source: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut cursor = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cursor.peek() {
        if c.is_whitespace() {
            cursor.bump();
            continue;
        }
        let (line, column) = (cursor.line, cursor.column);
        let span_to = |cursor: &Cursor<'_>| {
            // Tokens never contain newlines except strings, which report their
            // length on the opening line.
            let length = if cursor.line == line {
                cursor.column - column
            } else {
                1
            };
            SourceSpan::new(line, column, length)
        };
        let lex_error = |message: String, length: u32| SyntaxError::Lex {
            message,
            span: SourceSpan::new(line, column, length),
        };

        let kind = match c {
            '/' => {
                cursor.bump();
                if cursor.bump_if('/') {
                    while let Some(c) = cursor.peek() {
                        if c == '\n' {
                            break;
                        }
                        cursor.bump();
                    }
                    continue;
                }
                TokenKind::Op(Operator::Divide)
            }
            ':' => single(&mut cursor, TokenKind::Colon),
            ';' => single(&mut cursor, TokenKind::Semicolon),
            '{' => single(&mut cursor, TokenKind::LBrace),
            '}' => single(&mut cursor, TokenKind::RBrace),
            '(' => single(&mut cursor, TokenKind::LParen),
            ')' => single(&mut cursor, TokenKind::RParen),
            '+' => single(&mut cursor, TokenKind::Op(Operator::Plus)),
            '-' => single(&mut cursor, TokenKind::Op(Operator::Minus)),
            '*' => single(&mut cursor, TokenKind::Op(Operator::Times)),
            '>' => {
                cursor.bump();
                if cursor.bump_if('=') {
                    TokenKind::Op(Operator::Geq)
                } else {
                    TokenKind::Op(Operator::Gt)
                }
            }
            '<' => {
                cursor.bump();
                if cursor.bump_if('=') {
                    TokenKind::Op(Operator::Leq)
                } else {
                    TokenKind::Op(Operator::Lt)
                }
            }
            '=' => {
                cursor.bump();
                if !cursor.bump_if('=') {
                    return Err(lex_error("expected '==', found lone '='".into(), 1));
                }
                TokenKind::Op(Operator::Eq)
            }
            '!' => {
                cursor.bump();
                if !cursor.bump_if('=') {
                    return Err(lex_error("expected '!=', found lone '!'".into(), 1));
                }
                TokenKind::Op(Operator::Neq)
            }
            '"' => {
                cursor.bump();
                let mut text = String::new();
                loop {
                    match cursor.bump() {
                        None => {
                            return Err(lex_error("unterminated string literal".into(), 1));
                        }
                        Some('"') => break,
                        Some('\\') => match cursor.bump() {
                            Some('n') => text.push('\n'),
                            Some('t') => text.push('\t'),
                            Some('"') => text.push('"'),
                            Some('\\') => text.push('\\'),
                            Some(other) => {
                                return Err(SyntaxError::Lex {
                                    message: format!("unknown escape '\\{other}'"),
                                    span: SourceSpan::new(cursor.line, cursor.column - 2, 2),
                                });
                            }
                            None => {
                                return Err(lex_error("unterminated string literal".into(), 1));
                            }
                        },
                        Some(c) => text.push(c),
                    }
                }
                TokenKind::Str(text)
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(d) = cursor.peek().filter(char::is_ascii_digit) {
                    text.push(d);
                    cursor.bump();
                }
                if cursor.peek() == Some('.') {
                    cursor.bump();
                    text.push('.');
                    let mut fraction = 0;
                    while let Some(d) = cursor.peek().filter(char::is_ascii_digit) {
                        text.push(d);
                        cursor.bump();
                        fraction += 1;
                    }
                    if fraction == 0 {
                        let length = span_to(&cursor).length;
                        return Err(lex_error(
                            format!("expected digits after decimal point in '{text}'"),
                            length,
                        ));
                    }
                    // Digit strings always parse as f64.
                    TokenKind::Decimal(text.parse().expect("digit string"))
                } else {
                    match text.parse() {
                        Ok(v) => TokenKind::Integer(v),
                        Err(_) => {
                            let length = span_to(&cursor).length;
                            return Err(lex_error(
                                format!("integer literal '{text}' out of range"),
                                length,
                            ));
                        }
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(c) = cursor
                    .peek()
                    .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    text.push(c);
                    cursor.bump();
                }
                match text.as_str() {
                    "true" => TokenKind::Boolean(true),
                    "false" => TokenKind::Boolean(false),
                    _ => TokenKind::Identifier(text),
                }
            }
            other => {
                return Err(lex_error(format!("unrecognized character '{other}'"), 1));
            }
        };
        tokens.push(Token {
            kind,
            span: span_to(&cursor),
        });
    }
    Ok(tokens)
}

fn single(cursor: &mut Cursor<'_>, kind: TokenKind) -> TokenKind {
    cursor.bump();
    kind
}
