//! Coefficient expressions, linear forms and the arrangement file format.
//!
//! Expressions use integers, `+ - * / ^`, parentheses, the variables
//! `x, y, z` (linear forms only) and the field's adjoined symbol. A factor
//! followed directly by a letter or `(` is an implicit product, so `2z`,
//! `t(t-1)y` and `ez` read as they are typeset.
//!
//! Every letter is its own symbol; `ez` is `e*z`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{ArrangementError, DynArrangement};
use crate::field::{FieldDescriptor, FieldError, FieldScalar, QuadraticElement, Rational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("found the Unicode minus sign U+2212; write an ASCII '-' instead")]
    UnicodeMinus,
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown symbol '{0}' for field {1}")]
    UnknownSymbol(char, String),
    #[error("exponent must be a non-negative integer literal")]
    BadExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not linear in x, y, z")]
    Nonlinear,
    #[error("linear form has a nonzero constant term")]
    ConstantTerm,
    #[error("linear form is identically zero")]
    ZeroForm,
    #[error("{0}")]
    Field(FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Letter(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(n) => write!(f, "number {n}"),
            Token::Letter(c) => write!(f, "symbol '{c}'"),
            Token::Plus => write!(f, "'+'"),
            Token::Minus => write!(f, "'-'"),
            Token::Star => write!(f, "'*'"),
            Token::Slash => write!(f, "'/'"),
            Token::Caret => write!(f, "'^'"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let err = |kind| ParseError { column, kind };
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Token::Num(digits.parse().expect("ascii digits")), column));
                continue;
            }
            c if c.is_ascii_alphabetic() => Token::Letter(c),
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '\u{2212}' | '\u{2013}' => return Err(err(ParseErrorKind::UnicodeMinus)),
            other => return Err(err(ParseErrorKind::UnexpectedChar(other))),
        };
        out.push((tok, column));
        i += 1;
    }
    Ok(out)
}

/// Abstract syntax of a coefficient or linear-form expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Symbol(char, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>, usize),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32, usize),
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |(_, c)| *c)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            column: self.column(),
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.error(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let column = self.column();
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?), column);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), column);
                }
                Some(Token::Letter(_)) | Some(Token::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?), column);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        let column = self.column();
        self.pos += 1;
        match self.peek() {
            Some(Token::Num(n)) => {
                let exp = u32::try_from(n.clone()).map_err(|_| self.error(ParseErrorKind::BadExponent))?;
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), exp, column))
            }
            Some(_) => Err(self.error(ParseErrorKind::BadExponent)),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Token::Letter(c)) => {
                self.pos += 1;
                Ok(Expr::Symbol(c, column))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end_column: text.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// An affine-linear value `c + a·x + b·y + d·z` during evaluation.
#[derive(Clone)]
struct Affine {
    constant: FieldScalar,
    linear: [FieldScalar; 3],
}

impl Affine {
    fn is_constant(&self) -> bool {
        self.linear.iter().all(FieldScalar::is_zero)
    }
}

struct Evaluator<'a> {
    descriptor: &'a FieldDescriptor,
    allow_vars: bool,
}

impl Evaluator<'_> {
    fn constant(&self, c: FieldScalar) -> Affine {
        let z = self.descriptor.zero();
        Affine {
            constant: c,
            linear: [z.clone(), z.clone(), z],
        }
    }

    fn field(column: usize) -> impl Fn(FieldError) -> ParseError {
        move |e| ParseError {
            column,
            kind: match e {
                FieldError::DivisionByZero => ParseErrorKind::DivisionByZero,
                other => ParseErrorKind::Field(other),
            },
        }
    }

    fn symbol(&self, c: char, column: usize) -> Result<Affine, ParseError> {
        if self.allow_vars {
            if let Some(i) = "xyz".find(c) {
                let mut v = self.constant(self.descriptor.zero());
                v.linear[i] = self.descriptor.one();
                return Ok(v);
            }
        }
        let value = match self.descriptor {
            FieldDescriptor::Quadratic(ctx) if ctx.symbol().starts_with(c) && ctx.symbol().len() == 1 => {
                Some(FieldScalar::Quadratic(QuadraticElement::generator(ctx)))
            }
            FieldDescriptor::RationalFunctions { symbol } if symbol.starts_with(c) && symbol.len() == 1 => {
                Some(FieldScalar::Function(RationalFunction::parameter()))
            }
            _ => None,
        };
        value.map(|v| self.constant(v)).ok_or(ParseError {
            column,
            kind: ParseErrorKind::UnknownSymbol(c, self.descriptor.to_string()),
        })
    }

    fn eval(&self, e: &Expr) -> Result<Affine, ParseError> {
        match e {
            Expr::Num(n) => Ok(self.constant(self.descriptor.from_rational(&Rational::from(n.clone())))),
            Expr::Symbol(c, column) => self.symbol(*c, *column),
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                Ok(Affine {
                    constant: a.constant.neg(),
                    linear: a.linear.map(|c| c.neg()),
                })
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let op = |x: &FieldScalar, y: &FieldScalar| {
                    if matches!(e, Expr::Add(..)) {
                        x.add(y)
                    } else {
                        x.sub(y)
                    }
                };
                let f = Self::field(0);
                Ok(Affine {
                    constant: op(&a.constant, &b.constant).map_err(&f)?,
                    linear: [
                        op(&a.linear[0], &b.linear[0]).map_err(&f)?,
                        op(&a.linear[1], &b.linear[1]).map_err(&f)?,
                        op(&a.linear[2], &b.linear[2]).map_err(&f)?,
                    ],
                })
            }
            Expr::Mul(a, b, column) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let (scalar, other) = match (a.is_constant(), b.is_constant()) {
                    (true, _) => (a.constant, b),
                    (false, true) => (b.constant, a),
                    (false, false) => {
                        return Err(ParseError {
                            column: *column,
                            kind: ParseErrorKind::Nonlinear,
                        })
                    }
                };
                self.scale(&other, &scalar, *column)
            }
            Expr::Div(a, b, column) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                if !b.is_constant() {
                    return Err(ParseError {
                        column: *column,
                        kind: ParseErrorKind::Nonlinear,
                    });
                }
                let inv = b.constant.inv().map_err(Self::field(*column))?;
                self.scale(&a, &inv, *column)
            }
            Expr::Pow(a, exp, column) => {
                let a = self.eval(a)?;
                if a.is_constant() {
                    return Ok(self.constant(a.constant.pow(*exp)));
                }
                match exp {
                    0 => Ok(self.constant(self.descriptor.one())),
                    1 => Ok(a),
                    _ => Err(ParseError {
                        column: *column,
                        kind: ParseErrorKind::Nonlinear,
                    }),
                }
            }
        }
    }

    fn scale(&self, v: &Affine, s: &FieldScalar, column: usize) -> Result<Affine, ParseError> {
        let f = Self::field(column);
        Ok(Affine {
            constant: v.constant.mul(s).map_err(&f)?,
            linear: [
                v.linear[0].mul(s).map_err(&f)?,
                v.linear[1].mul(s).map_err(&f)?,
                v.linear[2].mul(s).map_err(&f)?,
            ],
        })
    }
}

/// Evaluates a scalar expression in the given field.
pub fn parse_scalar(text: &str, descriptor: &FieldDescriptor) -> Result<FieldScalar, ParseError> {
    let e = parse_expr(text)?;
    let ev = Evaluator {
        descriptor,
        allow_vars: false,
    };
    Ok(ev.eval(&e)?.constant)
}

/// Reads `a·x + b·y + c·z` and returns `[a, b, c]`.
pub fn parse_linear_form(text: &str, descriptor: &FieldDescriptor) -> Result<[FieldScalar; 3], ParseError> {
    let e = parse_expr(text)?;
    let ev = Evaluator {
        descriptor,
        allow_vars: true,
    };
    let v = ev.eval(&e)?;
    if !v.constant.is_zero() {
        return Err(ParseError {
            column: 1,
            kind: ParseErrorKind::ConstantTerm,
        });
    }
    if v.is_constant() {
        return Err(ParseError {
            column: 1,
            kind: ParseErrorKind::ZeroForm,
        });
    }
    Ok(v.linear)
}

/// Renders a linear form so that [`parse_linear_form`] reads it back.
pub fn format_linear_form(coeffs: &[FieldScalar; 3], descriptor: &FieldDescriptor) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (c, var) in coeffs.iter().zip(['x', 'y', 'z']) {
        if c.is_zero() {
            continue;
        }
        let s = format_scalar(c, descriptor);
        let term = if c.is_one() {
            var.to_string()
        } else if c.neg().is_one() {
            format!("-{var}")
        } else {
            format!("({s})*{var}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Renders a scalar using the descriptor's symbol names.
pub fn format_scalar(c: &FieldScalar, descriptor: &FieldDescriptor) -> String {
    match (c, descriptor) {
        (FieldScalar::Function(f), FieldDescriptor::RationalFunctions { symbol }) => f.display_with(symbol),
        _ => c.to_string(),
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed arrangement file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid field declaration: {0}")]
    Field(String),
    #[error("line {index} ({text:?}): {source}")]
    Line {
        index: usize,
        text: String,
        source: ParseError,
    },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl LoadError {
    /// Parse-level failures versus an invalid (e.g. non-reduced) arrangement.
    pub fn is_invalid_arrangement(&self) -> bool {
        matches!(
            self,
            LoadError::Arrangement(_)
                | LoadError::Line {
                    source: ParseError {
                        kind: ParseErrorKind::ZeroForm,
                        ..
                    },
                    ..
                }
        )
    }
}

/// A rational number in a file: a JSON integer or a string such as `"-3/2"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RationalLiteral {
    Int(i64),
    Text(String),
}

impl RationalLiteral {
    fn to_rational(&self) -> Result<Rational, LoadError> {
        match self {
            RationalLiteral::Int(n) => Ok(Rational::from(*n)),
            RationalLiteral::Text(s) => match parse_scalar(s, &FieldDescriptor::Rationals) {
                Ok(FieldScalar::Rational(r)) => Ok(r),
                Ok(_) => unreachable!("rational descriptor"),
                Err(e) => Err(LoadError::Field(format!("{s:?}: {e}"))),
            },
        }
    }

    fn from_rational(r: &Rational) -> Self {
        match r.to_i64() {
            Some(n) => RationalLiteral::Int(n),
            None => RationalLiteral::Text(r.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FieldSpec {
    /// Only `"Q"` is accepted.
    Name(String),
    Quadratic {
        quadratic: [RationalLiteral; 2],
    },
    RationalFunction {
        rational_function: String,
    },
}

/// On-disk arrangement document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub lines: Vec<String>,
}

impl ArrangementFile {
    pub fn descriptor(&self) -> Result<FieldDescriptor, LoadError> {
        match &self.field {
            FieldSpec::Name(n) if n == "Q" => Ok(FieldDescriptor::Rationals),
            FieldSpec::Name(n) => Err(LoadError::Field(format!("unknown field {n:?}; expected \"Q\""))),
            FieldSpec::Quadratic { quadratic: [p, q] } => {
                FieldDescriptor::quadratic(p.to_rational()?, q.to_rational()?)
                    .map_err(|e| LoadError::Field(e.to_string()))
            }
            FieldSpec::RationalFunction { rational_function: s } => {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) if c.is_ascii_alphabetic() && !"xyz".contains(c) => {
                        Ok(FieldDescriptor::rational_functions(s.clone()))
                    }
                    _ => Err(LoadError::Field(format!(
                        "parameter symbol must be one letter other than x, y, z; got {s:?}"
                    ))),
                }
            }
        }
    }

    pub fn from_arrangement(arr: &DynArrangement, name: Option<String>) -> Self {
        let descriptor = arr.descriptor();
        let field = match &descriptor {
            FieldDescriptor::Rationals => FieldSpec::Name("Q".into()),
            FieldDescriptor::Quadratic(ctx) => FieldSpec::Quadratic {
                quadratic: [
                    RationalLiteral::from_rational(ctx.p()),
                    RationalLiteral::from_rational(ctx.q()),
                ],
            },
            FieldDescriptor::RationalFunctions { symbol } => FieldSpec::RationalFunction {
                rational_function: symbol.clone(),
            },
        };
        let lines = arr
            .scalar_lines()
            .iter()
            .map(|l| format_linear_form(l, &descriptor))
            .collect();
        ArrangementFile { name, field, lines }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn into_arrangement(self) -> Result<DynArrangement, LoadError> {
        let descriptor = self.descriptor()?;
        let mut forms = Vec::with_capacity(self.lines.len());
        for (index, text) in self.lines.into_iter().enumerate() {
            match parse_linear_form(&text, &descriptor) {
                Ok(f) => forms.push(f),
                Err(source) => return Err(LoadError::Line { index, text, source }),
            }
        }
        Ok(DynArrangement::from_scalars(forms, descriptor)?)
    }
}

/// Parses arrangement file contents.
pub fn load_arrangement_str(text: &str) -> Result<DynArrangement, LoadError> {
    let file: ArrangementFile = serde_json::from_str(text)?;
    file.into_arrangement()
}

pub fn load_arrangement(path: &std::path::Path) -> Result<DynArrangement, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_arrangement_str(&text)
}
