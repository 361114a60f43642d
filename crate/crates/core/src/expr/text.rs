//! Infix text format.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" unary)?
//! atom   := number | "v" index | name "(" expr ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus. A minus
//! applied directly to a literal yields a negative parameter, otherwise it
//! yields `neg(...)`. Printing parenthesises exactly what is needed to
//! re-parse the same tree.

use super::{BinaryOp, ExprNode, UnaryOp};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    /// 1-based character offset; `len + 1` means end of input.
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Sym(char),
}

struct Lexer {
    tokens: Vec<(Token, usize)>,
    end: usize,
}

fn lex(input: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                j += 1;
            }
            if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                let mut k = j + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    j = k;
                }
            }
            let text: String = chars[i..j].iter().collect();
            let value = text.parse::<f64>().map_err(|_| ParseError {
                position: start,
                message: format!("malformed number `{text}`"),
            })?;
            tokens.push((Token::Number(value), start));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            tokens.push((Token::Ident(chars[i..j].iter().collect()), start));
            i = j;
        } else if "+-*/^()".contains(c) {
            tokens.push((Token::Sym(c), start));
            i += 1;
        } else {
            return Err(ParseError {
                position: start,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(Lexer {
        tokens,
        end: chars.len() + 1,
    })
}

struct Parser {
    lexer: Lexer,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.lexer.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.lexer
            .tokens
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.lexer.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinaryOp::Add
            } else if self.eat('-') {
                BinaryOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = ExprNode::binary(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinaryOp::Mul
            } else if self.eat('/') {
                BinaryOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = ExprNode::binary(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<ExprNode, ParseError> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                ExprNode::Parameter(v) => ExprNode::Parameter(-v),
                other => ExprNode::unary(UnaryOp::Neg, other),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprNode, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let exponent = self.unary()?;
            return Ok(ExprNode::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprNode, ParseError> {
        match self.peek().cloned() {
            Some(Token::Number(v)) => {
                self.pos += 1;
                Ok(ExprNode::Parameter(v))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                if let Some(index) = variable_index(&name) {
                    self.pos += 1;
                    return Ok(ExprNode::Variable(index));
                }
                let Some(op) = UnaryOp::from_name(&name) else {
                    return self.error(format!("unknown name `{name}`"));
                };
                self.pos += 1;
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(ExprNode::unary(op, arg))
            }
            Some(Token::Sym(c)) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }
}

fn variable_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('v')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&i| i >= 1)
}

/// Parses infix text into an expression tree.
pub fn parse(text: &str) -> Result<ExprNode, ParseError> {
    let mut parser = Parser {
        lexer: lex(text)?,
        pos: 0,
    };
    let expr = parser.expr()?;
    if parser.pos != parser.lexer.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(expr)
}

fn precedence(node: &ExprNode) -> u8 {
    match node {
        ExprNode::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
        ExprNode::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
        ExprNode::Binary(BinaryOp::Pow, ..) => 3,
        _ => 4,
    }
}

fn write_operand(node: &ExprNode, parens: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parens {
        f.write_str("(")?;
        write_expr(node, f)?;
        f.write_str(")")
    } else {
        write_expr(node, f)
    }
}

pub(super) fn write_expr(node: &ExprNode, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match node {
        ExprNode::Parameter(v) => {
            if v.is_sign_negative() {
                write!(f, "({v:?})")
            } else {
                write!(f, "{v:?}")
            }
        }
        ExprNode::Variable(i) => write!(f, "v{i}"),
        ExprNode::Unary(op, c) => {
            write!(f, "{}(", op.name())?;
            write_expr(c, f)?;
            f.write_str(")")
        }
        ExprNode::Binary(op, l, r) => {
            let p = precedence(node);
            let (lp, rp) = (precedence(l), precedence(r));
            let left_parens = if *op == BinaryOp::Pow { lp <= p } else { lp < p };
            let right_parens = if *op == BinaryOp::Pow { rp < p } else { rp <= p };
            write_operand(l, left_parens, f)?;
            write!(f, " {} ", op.symbol())?;
            write_operand(r, right_parens, f)
        }
    }
}
