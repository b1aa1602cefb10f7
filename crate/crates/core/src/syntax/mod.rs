//! Nanosyntax front end: tokenizer, recursive-descent parser, expression
//! lowering and a pretty-printer.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;

use thiserror::Error;

pub use ast::{AstNode, Operator, Primitive, SourceSpan, ROOT_IDENTIFIER};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{lower_expression, parse};
pub use printer::print_document;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SyntaxError {
    #[error("{span}: lex error: {message}")]
    Lex { message: String, span: SourceSpan },
    #[error("{span}: parse error: {message}")]
    Parse { message: String, span: SourceSpan },
}

impl SyntaxError {
    pub fn span(&self) -> SourceSpan {
        match self {
            SyntaxError::Lex { span, .. } | SyntaxError::Parse { span, .. } => *span,
        }
    }
}

/// Tokenizes and parses a complete document.
pub fn parse_source(source: &str) -> Result<AstNode, SyntaxError> {
    parse(&tokenize(source)?)
}
