//! Recursive-descent parser.
//!
//! ```text
//! document  := statement* EOF
//! statement := value ( ';' | <nothing, when value ended in '}'> )
//! value     := IDENT ':' value            -- assignment of one value
//!            | IDENT '{' statement* '}'   -- block assignment
//!            | expr
//! expr      := operand ( OP operand )*    -- precedence climbing
//! operand   := literal | IDENT | '(' expr ')' | '-' number
//! ```

use super::ast::{AstNode, Operator, Primitive, SourceSpan};
use super::lexer::{Token, TokenKind};
use super::SyntaxError;

/// Nesting guard so pathological input fails with an error instead of
/// exhausting the stack.
pub const MAX_NESTING: usize = 512;

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    depth: usize,
}

/// Parses a token stream into the hidden-root assignment.
pub fn parse(tokens: &[Token]) -> Result<AstNode, SyntaxError> {
    let mut parser = Parser::new(tokens);
    let mut statements = Vec::new();
    while let Some(token) = parser.peek() {
        if token.kind == TokenKind::RBrace {
            return Err(parse_error("unmatched '}'", token.span));
        }
        statements.push(parser.statement()?);
    }
    Ok(AstNode::root(statements))
}

/// Lowers a complete infix expression into nested operator assignments.
pub fn lower_expression(tokens: &[Token]) -> Result<AstNode, SyntaxError> {
    let mut parser = Parser::new(tokens);
    let node = parser.expression(0)?;
    if let Some(token) = parser.peek() {
        return Err(parse_error(
            format!("unexpected {} after expression", token.kind.describe()),
            token.span,
        ));
    }
    Ok(node)
}

fn parse_error(message: impl Into<String>, span: SourceSpan) -> SyntaxError {
    SyntaxError::Parse {
        message: message.into(),
        span,
    }
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token]) -> Self {
        Parser {
            tokens,
            pos: 0,
            depth: 0,
        }
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self, offset: usize) -> Option<&'t TokenKind> {
        self.tokens.get(self.pos + offset).map(|t| &t.kind)
    }

    fn advance(&mut self) -> Option<&'t Token> {
        let token = self.tokens.get(self.pos)?;
        self.pos += 1;
        Some(token)
    }

    /// Span just past the last token, for errors at end of input.
    fn eof_span(&self) -> SourceSpan {
        match self.tokens.last() {
            Some(last) => SourceSpan::new(last.span.line, last.span.column + last.span.length, 0),
            None => SourceSpan::start(),
        }
    }

    fn here(&self) -> SourceSpan {
        self.peek().map_or_else(|| self.eof_span(), |t| t.span)
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(parse_error(
                format!("nesting deeper than {MAX_NESTING} levels"),
                self.here(),
            ));
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<AstNode, SyntaxError> {
        let value = self.value()?;
        let closed_by_brace = self.pos > 0 && self.tokens[self.pos - 1].kind == TokenKind::RBrace;
        match self.peek() {
            Some(t) if t.kind == TokenKind::Semicolon => {
                self.advance();
            }
            _ if closed_by_brace => {}
            Some(t) => {
                return Err(parse_error(
                    format!("expected ';' but found {}", t.kind.describe()),
                    t.span,
                ));
            }
            None => return Err(parse_error("expected ';' at end of input", self.eof_span())),
        }
        Ok(value)
    }

    fn value(&mut self) -> Result<AstNode, SyntaxError> {
        self.enter()?;
        let result = self.value_inner();
        self.depth -= 1;
        result
    }

    fn value_inner(&mut self) -> Result<AstNode, SyntaxError> {
        if let Some(TokenKind::Identifier(name)) = self.peek_kind(0) {
            match self.peek_kind(1) {
                Some(TokenKind::Colon) => {
                    let ident = self.advance().expect("peeked");
                    let colon = self.advance().expect("peeked");
                    match self.peek() {
                        None => {
                            return Err(parse_error(
                                format!("expected a value after '{name}:'"),
                                colon.span,
                            ))
                        }
                        Some(t) if matches!(t.kind, TokenKind::Semicolon | TokenKind::RBrace) => {
                            return Err(parse_error(
                                format!("expected a value after '{name}:'"),
                                t.span,
                            ))
                        }
                        Some(_) => {}
                    }
                    let inner = self.value()?;
                    return Ok(AstNode::assignment(name.clone(), vec![inner], ident.span));
                }
                Some(TokenKind::LBrace) => {
                    let ident = self.advance().expect("peeked");
                    let open = self.advance().expect("peeked");
                    let mut children = Vec::new();
                    loop {
                        match self.peek() {
                            None => return Err(parse_error("unclosed '{'", open.span)),
                            Some(t) if t.kind == TokenKind::RBrace => {
                                self.advance();
                                break;
                            }
                            Some(_) => children.push(self.statement()?),
                        }
                    }
                    return Ok(AstNode::assignment(name.clone(), children, ident.span));
                }
                _ => {}
            }
        }
        match self.peek() {
            None => Err(parse_error("expected a value at end of input", self.eof_span())),
            Some(t) if t.kind == TokenKind::LBrace => Err(parse_error(
                "a block must be introduced by an identifier",
                t.span,
            )),
            Some(_) => self.expression(0),
        }
    }

    /// Precedence climbing: parses operators binding tighter than `min_prec`.
    fn expression(&mut self, min_prec: u8) -> Result<AstNode, SyntaxError> {
        self.enter()?;
        let result = self.expression_inner(min_prec);
        self.depth -= 1;
        result
    }

    fn expression_inner(&mut self, min_prec: u8) -> Result<AstNode, SyntaxError> {
        let mut lhs = self.operand()?;
        while let Some(Token {
            kind: TokenKind::Op(op),
            span,
        }) = self.peek()
        {
            let prec = op.precedence();
            if prec <= min_prec {
                break;
            }
            self.advance();
            if self.peek().is_none() {
                return Err(parse_error(
                    format!("dangling operator '{}'", op.symbol()),
                    *span,
                ));
            }
            let rhs = self.expression(prec)?;
            lhs = AstNode::assignment(op.name(), vec![lhs, rhs], *span);
        }
        Ok(lhs)
    }

    fn operand(&mut self) -> Result<AstNode, SyntaxError> {
        let Some(token) = self.advance() else {
            return Err(parse_error("expected an operand at end of input", self.eof_span()));
        };
        let span = token.span;
        let node = match &token.kind {
            TokenKind::Integer(v) => AstNode::primitive(Primitive::Integer(*v), span),
            TokenKind::Decimal(v) => AstNode::primitive(Primitive::Decimal(*v), span),
            TokenKind::Str(s) => AstNode::primitive(Primitive::Str(s.clone()), span),
            TokenKind::Boolean(b) => AstNode::primitive(Primitive::Boolean(*b), span),
            TokenKind::Identifier(name) => AstNode::reference(name.clone(), span),
            TokenKind::LParen => {
                let inner = self.expression(0)?;
                match self.advance() {
                    Some(t) if t.kind == TokenKind::RParen => inner,
                    Some(t) => {
                        return Err(parse_error(
                            format!("expected ')' but found {}", t.kind.describe()),
                            t.span,
                        ))
                    }
                    None => return Err(parse_error("unclosed '('", span)),
                }
            }
            TokenKind::Op(Operator::Minus) => {
                // Unary minus is only defined on numeric literals.
                let literal_span = |t: &Token| SourceSpan::new(span.line, span.column, t.span.length + 1);
                match self.advance() {
                    Some(t @ Token { kind: TokenKind::Integer(v), .. }) => {
                        AstNode::primitive(Primitive::Integer(-v), literal_span(t))
                    }
                    Some(t @ Token { kind: TokenKind::Decimal(v), .. }) => {
                        AstNode::primitive(Primitive::Decimal(-v), literal_span(t))
                    }
                    Some(t) => {
                        return Err(parse_error(
                            "unary '-' applies only to numeric literals",
                            t.span,
                        ))
                    }
                    None => return Err(parse_error("dangling operator '-'", span)),
                }
            }
            other => {
                return Err(parse_error(
                    format!("expected a value but found {}", other.describe()),
                    span,
                ))
            }
        };
        Ok(node)
    }
}
