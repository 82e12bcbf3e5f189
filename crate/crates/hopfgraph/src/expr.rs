//! Expression language over one host graph: subgraph literals, the
//! unit, rational coefficients, `+`, `-`, `*`, and the function forms
//! delta(...), eps(...), S(...), Z(...). Parsing and evaluation run in
//! one recursive descent; every error carries the byte position of the
//! offending token.
//!
//! Grammar: expr := ['-'] term (('+'|'-') term)* ;
//! term := rational [factor ('*' factor)*] | factor ('*' factor)* ;
//! factor := subgraph | '1' | func '(' expr ')' ;
//! subgraph := '{' intlist ['|' edgelist] '}'.
//! The bare-rational term and the leading minus extend the grammar just
//! enough that every rendered Element re-parses to itself.
//!
//! delta(...) yields a tensor, which no operator accepts, so a coproduct
//! can only be the whole expression.

use std::fmt;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::dual::{dual_coproduct, dual_counit, DualElement, DualOps, DualTensorElement};
use crate::enumerate::BasisTable;
use crate::graph::{ConnectedSubgraph, Graph, GraphError};
use crate::hopf::{antipode_recursive, coproduct, Element, Monomial, Scalar, TensorElement};

#[derive(Debug, Error, PartialEq)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("invalid subgraph literal at byte {pos}: {source}")]
    BadSubgraph { pos: usize, source: GraphError },
    #[error("subgraph at byte {pos} is not contained in the host graph: {literal}")]
    NotInHost { pos: usize, literal: String },
    #[error("type error at byte {pos}: {message}")]
    Type { pos: usize, message: String },
    #[error("zero denominator at byte {pos}")]
    ZeroDenominator { pos: usize },
}

fn syntax(pos: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        pos,
        message: message.into(),
    }
}

fn type_error(pos: usize, message: impl Into<String>) -> ExprError {
    ExprError::Type {
        pos,
        message: message.into(),
    }
}

/// What an expression evaluates to. Tensors appear only when the whole
/// expression is a delta(...) call.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Element(Element),
    Tensor(TensorElement),
    Dual(DualElement),
    DualTensor(DualTensorElement),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Element(_) => "element",
            Value::Tensor(_) => "tensor",
            Value::Dual(_) => "dual element",
            Value::DualTensor(_) => "dual tensor",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(a) => a.fmt(f),
            Value::Tensor(t) => t.fmt(f),
            Value::Dual(z) => z.fmt(f),
            Value::DualTensor(t) => t.fmt(f),
        }
    }
}

/// The coefficient if the value is a scalar multiple of the unit
/// element; lets `2 * Z(...)`-style mixes work through `1` and eps(...).
fn as_scalar(a: &Element) -> Option<Scalar> {
    match a.term_count() {
        0 => Some(Scalar::zero()),
        1 => {
            let c = a.coefficient(&Monomial::unit());
            if c.is_zero() {
                None
            } else {
                Some(c)
            }
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LBrace,
    RBrace,
    Pipe,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Int(String),
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::Pipe => write!(f, "'|'"),
            Tok::Comma => write!(f, "','"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Int(s) => write!(f, "'{s}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
        }
    }
}

struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ExprError> {
    let mut tokens = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some(&(pos, ch)) = iter.peek() {
        let tok = match ch {
            c if c.is_whitespace() => {
                iter.next();
                continue;
            }
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '|' => Tok::Pipe,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let mut end = pos;
                while let Some(&(i, c)) = iter.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = i + c.len_utf8();
                    iter.next();
                }
                tokens.push(Token {
                    tok: Tok::Int(text[pos..end].to_string()),
                    pos,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = pos;
                while let Some(&(i, c)) = iter.peek() {
                    if !c.is_ascii_alphanumeric() && c != '_' {
                        break;
                    }
                    end = i + c.len_utf8();
                    iter.next();
                }
                tokens.push(Token {
                    tok: Tok::Ident(text[pos..end].to_string()),
                    pos,
                });
                continue;
            }
            other => {
                return Err(syntax(pos, format!("unexpected character '{other}'")));
            }
        };
        tokens.push(Token { tok, pos });
        iter.next();
    }
    Ok(tokens)
}

/// Parses and evaluates `text` against the host graph behind `table`.
pub fn eval(text: &str, table: &BasisTable) -> Result<Value, ExprError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        i: 0,
        end: text.len(),
        table,
        ops: DualOps::new(table),
    };
    let value = parser.expression()?;
    match parser.peek() {
        None => Ok(value),
        Some(t) => Err(syntax(t.pos, format!("unexpected {} after expression", t.tok))),
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    i: usize,
    end: usize,
    table: &'a BasisTable,
    ops: DualOps<'a>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.i)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.i);
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn expect_tok(&mut self, want: Tok) -> Result<usize, ExprError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t.tok == want => Ok(t.pos),
            Some(t) => Err(syntax(t.pos, format!("expected {want}, found {}", t.tok))),
            None => Err(syntax(pos, format!("expected {want}, found end of input"))),
        }
    }

    fn expression(&mut self) -> Result<Value, ExprError> {
        let mut negate = false;
        if matches!(self.peek(), Some(t) if t.tok == Tok::Minus) {
            self.bump();
            negate = true;
        }
        let pos = self.here();
        let mut acc = self.term()?;
        if negate {
            acc = negate_value(acc, pos)?;
        }
        loop {
            let subtract = match self.peek() {
                Some(t) if t.tok == Tok::Plus => false,
                Some(t) if t.tok == Tok::Minus => true,
                _ => return Ok(acc),
            };
            let op_pos = self.bump().expect("operator peeked").pos;
            let mut rhs = self.term()?;
            if subtract {
                rhs = negate_value(rhs, op_pos)?;
            }
            acc = add_values(acc, rhs, op_pos)?;
        }
    }

    fn term(&mut self) -> Result<Value, ExprError> {
        if matches!(self.peek(), Some(t) if matches!(t.tok, Tok::Int(_))) {
            let pos = self.here();
            let coeff = self.rational()?;
            let mut acc = Value::Element(Element::unit(coeff));
            if self.starts_factor() {
                let rhs = self.factor_chain()?;
                return mul_values(acc, rhs, pos, &self.ops);
            }
            // `1 * {…}` reads the integer as the unit factor, so a
            // leading rational may also continue with stars.
            while matches!(self.peek(), Some(t) if t.tok == Tok::Star) {
                let op_pos = self.bump().expect("star peeked").pos;
                let rhs = self.factor()?;
                acc = mul_values(acc, rhs, op_pos, &self.ops)?;
            }
            return Ok(acc);
        }
        self.factor_chain()
    }

    /// True when the next token can begin a factor. `1` cannot: any
    /// integer here was already consumed by the rational prefix.
    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(t) if matches!(t.tok, Tok::LBrace | Tok::Ident(_))
        )
    }

    fn factor_chain(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(t) if t.tok == Tok::Star) {
            let op_pos = self.bump().expect("star peeked").pos;
            let rhs = self.factor()?;
            acc = mul_values(acc, rhs, op_pos, &self.ops)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, ExprError> {
        let pos = self.here();
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::LBrace) => {
                let c = self.subgraph()?;
                Ok(Value::Element(Element::from_monomial(Monomial::single(c))))
            }
            Some(Tok::Int(ref digits)) if digits == "1" => {
                self.bump();
                Ok(Value::Element(Element::one()))
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                self.expect_tok(Tok::LParen)?;
                let inner = self.expression()?;
                self.expect_tok(Tok::RParen)?;
                apply_function(&name, inner, pos)
            }
            Some(tok) => Err(syntax(
                pos,
                format!("expected a subgraph, '1', or a function call, found {tok}"),
            )),
            None => Err(syntax(
                pos,
                "expected a subgraph, '1', or a function call, found end of input",
            )),
        }
    }

    fn rational(&mut self) -> Result<Scalar, ExprError> {
        let numerator = self.integer()?;
        if matches!(self.peek(), Some(t) if t.tok == Tok::Slash) {
            self.bump();
            let pos = self.here();
            let denominator = self.integer()?;
            if denominator.is_zero() {
                return Err(ExprError::ZeroDenominator { pos });
            }
            return Ok(BigRational::new(numerator, denominator));
        }
        Ok(BigRational::from_integer(numerator))
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        let pos = self.here();
        match self.bump() {
            Some(t) => match &t.tok {
                Tok::Int(digits) => Ok(BigInt::parse_bytes(digits.as_bytes(), 10)
                    .expect("digit runs parse as integers")),
                other => Err(syntax(t.pos, format!("expected an integer, found {other}"))),
            },
            None => Err(syntax(pos, "expected an integer, found end of input")),
        }
    }

    fn label(&mut self) -> Result<u64, ExprError> {
        let pos = self.here();
        let n = self.integer()?;
        u64::try_from(n).map_err(|_| syntax(pos, "vertex label out of range"))
    }

    fn subgraph(&mut self) -> Result<ConnectedSubgraph, ExprError> {
        let open = self.expect_tok(Tok::LBrace)?;
        let mut vertices = vec![self.label()?];
        while matches!(self.peek(), Some(t) if t.tok == Tok::Comma) {
            self.bump();
            vertices.push(self.label()?);
        }
        let mut edges = Vec::new();
        if matches!(self.peek(), Some(t) if t.tok == Tok::Pipe) {
            self.bump();
            loop {
                let from = self.label()?;
                self.expect_tok(Tok::Minus)?;
                let to = self.label()?;
                edges.push((from, to));
                if matches!(self.peek(), Some(t) if t.tok == Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_tok(Tok::RBrace)?;

        let build = || -> Result<ConnectedSubgraph, GraphError> {
            let vertices = vertices
                .iter()
                .map(|&v| crate::graph::VertexId::new(v))
                .collect::<Result<Vec<_>, _>>()?;
            let edges = vertices_to_edges(&edges)?;
            ConnectedSubgraph::new(Graph::new(vertices, edges)?)
        };
        let c = build().map_err(|source| ExprError::BadSubgraph { pos: open, source })?;
        if !c.graph().is_subgraph_of(self.table.host()) {
            return Err(ExprError::NotInHost {
                pos: open,
                literal: c.graph().to_string(),
            });
        }
        Ok(c)
    }
}

fn vertices_to_edges(pairs: &[(u64, u64)]) -> Result<Vec<crate::graph::Edge>, GraphError> {
    pairs
        .iter()
        .map(|&(u, v)| {
            crate::graph::Edge::new(
                crate::graph::VertexId::new(u)?,
                crate::graph::VertexId::new(v)?,
            )
        })
        .collect()
}

fn combine_error(op: &str, a: &Value, b: &Value, pos: usize) -> ExprError {
    let hint = if matches!(a, Value::Tensor(_) | Value::DualTensor(_))
        || matches!(b, Value::Tensor(_) | Value::DualTensor(_))
    {
        "; delta(...) must be the whole expression"
    } else {
        ""
    };
    type_error(
        pos,
        format!("cannot {} {} and {}{}", op, a.kind(), b.kind(), hint),
    )
}

fn add_values(a: Value, b: Value, pos: usize) -> Result<Value, ExprError> {
    match (a, b) {
        (Value::Element(x), Value::Element(y)) => Ok(Value::Element(&x + &y)),
        (Value::Dual(x), Value::Dual(y)) => Ok(Value::Dual(&x + &y)),
        (a, b) => Err(combine_error("add", &a, &b, pos)),
    }
}

fn negate_value(v: Value, pos: usize) -> Result<Value, ExprError> {
    match v {
        Value::Element(x) => Ok(Value::Element(-&x)),
        Value::Dual(x) => Ok(Value::Dual(-&x)),
        v => Err(type_error(
            pos,
            format!("cannot negate {}; delta(...) must be the whole expression", v.kind()),
        )),
    }
}

fn mul_values(a: Value, b: Value, pos: usize, ops: &DualOps<'_>) -> Result<Value, ExprError> {
    match (a, b) {
        (Value::Element(x), Value::Element(y)) => Ok(Value::Element(&x * &y)),
        (Value::Dual(x), Value::Dual(y)) => Ok(Value::Dual(ops.product(&x, &y))),
        (Value::Element(x), Value::Dual(y)) => match as_scalar(&x) {
            Some(k) => Ok(Value::Dual(y.scale(&k))),
            None => Err(combine_error("multiply", &Value::Element(x), &Value::Dual(y), pos)),
        },
        (Value::Dual(x), Value::Element(y)) => match as_scalar(&y) {
            Some(k) => Ok(Value::Dual(x.scale(&k))),
            None => Err(combine_error("multiply", &Value::Dual(x), &Value::Element(y), pos)),
        },
        (a, b) => Err(combine_error("multiply", &a, &b, pos)),
    }
}

fn apply_function(name: &str, arg: Value, pos: usize) -> Result<Value, ExprError> {
    match (name, arg) {
        ("delta", Value::Element(a)) => Ok(Value::Tensor(coproduct(&a))),
        ("delta", Value::Dual(z)) => Ok(Value::DualTensor(dual_coproduct(&z))),
        ("eps", Value::Element(a)) => Ok(Value::Element(Element::unit(a.counit()))),
        ("eps", Value::Dual(z)) => Ok(Value::Element(Element::unit(dual_counit(&z)))),
        ("S", Value::Element(a)) => Ok(Value::Element(antipode_recursive(&a))),
        ("Z", Value::Element(a)) => Ok(Value::Dual(DualElement::lift(&a))),
        ("delta" | "eps" | "S" | "Z", arg) => Err(type_error(
            pos,
            format!("{name}(...) does not accept a {}", arg.kind()),
        )),
        (_, _) => Err(syntax(pos, format!("unknown function '{name}'"))),
    }
}
