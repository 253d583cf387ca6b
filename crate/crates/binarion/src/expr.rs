//! A small expression language over one algebra signature.
//!
//! Grammar, loosest to tightest binding:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' integer)*
//! primary := number atom? | atom | ident '(' expr ')' | '(' expr ')'
//! atom    := 'I' | 'E'
//! ```
//!
//! A number directly followed by an atom is implicit multiplication
//! folded into one literal: `3E` is the literal 3E, `3*E` the longhand.
//! Lexing is longest-match, so `2E3` is the number 2000 (exponent
//! notation wins) while `2E` is the number 2 followed by the atom E:
//! an exponent marker not followed by digits is not consumed.
//!
//! `^` takes a bare integer literal only; fractional and negative powers
//! must be spelled with `sqrt` and `inv`. Positions in errors are byte
//! offsets into the source.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Binarion, Signature};
use crate::error::Error as AlgebraError;
use crate::functions;

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("lex error at {pos}: unexpected character {ch:?}")]
    Lex { pos: usize, ch: char },
    #[error("parse error at {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
    #[error("evaluation error at {pos}: {source}")]
    Eval {
        pos: usize,
        #[source]
        source: AlgebraError,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Number(f64),
    AtomI,
    AtomE,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub pos: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let kind = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => {
                i += 1;
                TokenKind::Plus
            }
            '-' => {
                i += 1;
                TokenKind::Minus
            }
            '*' => {
                i += 1;
                TokenKind::Star
            }
            '/' => {
                i += 1;
                TokenKind::Slash
            }
            '^' => {
                i += 1;
                TokenKind::Caret
            }
            '(' => {
                i += 1;
                TokenKind::LParen
            }
            ')' => {
                i += 1;
                TokenKind::RParen
            }
            'I' => {
                i += 1;
                TokenKind::AtomI
            }
            'E' => {
                i += 1;
                TokenKind::AtomE
            }
            '0'..='9' | '.' => {
                i = scan_number(bytes, start);
                let lexeme = &src[start..i];
                let value: f64 = lexeme.parse().map_err(|_| ExprError::Lex {
                    pos: start,
                    ch: c,
                })?;
                TokenKind::Number(value)
            }
            'a'..='z' => {
                while i < bytes.len() && bytes[i].is_ascii_lowercase() {
                    i += 1;
                }
                TokenKind::Ident(src[start..i].to_string())
            }
            other => return Err(ExprError::Lex { pos: start, ch: other }),
        };
        tokens.push(Token {
            kind,
            lexeme: src[start..i].to_string(),
            pos: start,
        });
    }
    Ok(tokens)
}

/// Longest-match scan of a float starting at `start`: digits, optional
/// fraction, and an exponent part only when `e`/`E` is actually followed
/// by digits (with an optional sign). Returns the end index.
fn scan_number(bytes: &[u8], start: usize) -> usize {
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            i = j;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    i
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    I,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
    Conj,
    Inv,
    Det,
    Tr,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::Exp,
        Func::Ln,
        Func::Sin,
        Func::Cos,
        Func::Sqrt,
        Func::Conj,
        Func::Inv,
        Func::Det,
        Func::Tr,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub const fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Conj => "conj",
            Func::Inv => "inv",
            Func::Det => "det",
            Func::Tr => "tr",
        }
    }
}

/// Parsed expression. `pos` fields locate each node in the source for
/// error reporting; equality deliberately ignores them so that
/// re-parsing a pretty-printed tree compares equal.
#[derive(Clone, Debug)]
pub enum Ast {
    /// `coeff` times the I or E atom. Bare numbers parse as I-literals.
    /// Parser-produced coefficients are nonnegative ('-' is [`Ast::Neg`]);
    /// the printer relies on that.
    Lit { coeff: f64, axis: Axis, pos: usize },
    Neg { expr: Box<Ast>, pos: usize },
    Bin {
        op: BinOp,
        lhs: Box<Ast>,
        rhs: Box<Ast>,
        pos: usize,
    },
    Pow { base: Box<Ast>, exp: u32, pos: usize },
    Call { func: Func, arg: Box<Ast>, pos: usize },
}

impl PartialEq for Ast {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Ast::Lit { coeff: a, axis: ax, .. },
                Ast::Lit { coeff: b, axis: bx, .. },
            ) => a == b && ax == bx,
            (Ast::Neg { expr: a, .. }, Ast::Neg { expr: b, .. }) => a == b,
            (
                Ast::Bin { op: ao, lhs: al, rhs: ar, .. },
                Ast::Bin { op: bo, lhs: bl, rhs: br, .. },
            ) => ao == bo && al == bl && ar == br,
            (
                Ast::Pow { base: a, exp: ae, .. },
                Ast::Pow { base: b, exp: be, .. },
            ) => ae == be && a == b,
            (
                Ast::Call { func: af, arg: aa, .. },
                Ast::Call { func: bf, arg: ba, .. },
            ) => af == bf && aa == ba,
            _ => false,
        }
    }
}

impl Ast {
    fn pos(&self) -> usize {
        match self {
            Ast::Lit { pos, .. }
            | Ast::Neg { pos, .. }
            | Ast::Bin { pos, .. }
            | Ast::Pow { pos, .. }
            | Ast::Call { pos, .. } => *pos,
        }
    }

    /// Binding strength for the printer: addition 1, multiplication 2,
    /// unary minus 3, power 4, literals and calls 5.
    fn prec(&self) -> u8 {
        match self {
            Ast::Bin { op: BinOp::Add | BinOp::Sub, .. } => 1,
            Ast::Bin { .. } => 2,
            Ast::Neg { .. } => 3,
            Ast::Pow { .. } => 4,
            Ast::Lit { .. } | Ast::Call { .. } => 5,
        }
    }
}

impl fmt::Display for Ast {
    /// Prints with exactly the parentheses needed for a re-parse to
    /// rebuild the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, node: &Ast, needed: bool| {
            if needed {
                write!(f, "({node})")
            } else {
                write!(f, "{node}")
            }
        };
        match self {
            Ast::Lit { coeff, axis, .. } => {
                let a = if *axis == Axis::I { 'I' } else { 'E' };
                write!(f, "{coeff}{a}")
            }
            Ast::Neg { expr, .. } => {
                write!(f, "-")?;
                paren(f, expr, expr.prec() < 3)
            }
            Ast::Bin { op, lhs, rhs, .. } => {
                let mine = self.prec();
                paren(f, lhs, lhs.prec() < mine)?;
                // spaces around + and - keep a preceding E atom from
                // re-lexing as an exponent marker: without them "0E+0I"
                // scans as the single number 0e+0 followed by I
                match op {
                    BinOp::Add | BinOp::Sub => write!(f, " {} ", op.symbol())?,
                    BinOp::Mul | BinOp::Div => write!(f, "{}", op.symbol())?,
                }
                // right operand of a left-associative chain: equal
                // precedence needs grouping too
                paren(f, rhs, rhs.prec() <= mine)
            }
            Ast::Pow { base, exp, .. } => {
                // grammar allows only primaries (or a power chain) as base
                paren(f, base, base.prec() < 4)?;
                write!(f, "^{exp}")
            }
            Ast::Call { func, arg, .. } => write!(f, "{}({arg})", func.name()),
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error(&self, expected: impl Into<String>) -> ExprError {
        ExprError::Parse {
            pos: self.here(),
            expected: expected.into(),
        }
    }

    fn expr(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let pos = self.next().expect("operator peeked").pos;
            let rhs = self.term()?;
            lhs = Ast::Bin {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            let pos = self.next().expect("operator peeked").pos;
            let rhs = self.unary()?;
            lhs = Ast::Bin {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                pos,
            };
        }
    }

    fn unary(&mut self) -> Result<Ast, ExprError> {
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            let pos = self.next().expect("minus peeked").pos;
            return Ok(Ast::Neg {
                expr: Box::new(self.unary()?),
                pos,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ExprError> {
        let mut base = self.primary()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            let pos = self.next().expect("caret peeked").pos;
            let exp_pos = self.here();
            let Some(Token { kind: TokenKind::Number(v), .. }) = self.next() else {
                return Err(ExprError::Parse {
                    pos: exp_pos,
                    expected: "an integer exponent".to_string(),
                });
            };
            if v.fract() != 0.0 || !(0.0..=u32::MAX as f64).contains(&v) {
                return Err(ExprError::Parse {
                    pos: exp_pos,
                    expected: format!("a nonnegative integer exponent, got {v}"),
                });
            }
            base = Ast::Pow {
                base: Box::new(base),
                exp: v as u32,
                pos,
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Ast, ExprError> {
        let Some(tok) = self.next() else {
            return Err(self.error("an expression"));
        };
        match tok.kind {
            TokenKind::Number(coeff) => {
                let axis = match self.peek().map(|t| &t.kind) {
                    Some(TokenKind::AtomI) => {
                        self.next();
                        Axis::I
                    }
                    Some(TokenKind::AtomE) => {
                        self.next();
                        Axis::E
                    }
                    _ => Axis::I, // a bare number is a scalar, i.e. an I-multiple
                };
                Ok(Ast::Lit {
                    coeff,
                    axis,
                    pos: tok.pos,
                })
            }
            TokenKind::AtomI => Ok(Ast::Lit {
                coeff: 1.0,
                axis: Axis::I,
                pos: tok.pos,
            }),
            TokenKind::AtomE => Ok(Ast::Lit {
                coeff: 1.0,
                axis: Axis::E,
                pos: tok.pos,
            }),
            TokenKind::Ident(name) => {
                let Some(func) = Func::from_name(&name) else {
                    return Err(ExprError::Parse {
                        pos: tok.pos,
                        expected: format!(
                            "a function name (exp, ln, sin, cos, sqrt, conj, inv, det, tr), got {name:?}"
                        ),
                    });
                };
                if !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::LParen)) {
                    return Err(self.error(format!("'(' after {name}")));
                }
                self.next();
                let arg = self.expr()?;
                if !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::RParen)) {
                    return Err(self.error("')'"));
                }
                self.next();
                Ok(Ast::Call {
                    func,
                    arg: Box::new(arg),
                    pos: tok.pos,
                })
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                if !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::RParen)) {
                    return Err(self.error("')'"));
                }
                self.next();
                Ok(inner)
            }
            _ => Err(ExprError::Parse {
                pos: tok.pos,
                expected: format!("an expression, got {:?}", tok.lexeme),
            }),
        }
    }
}

pub fn parse(src: &str) -> Result<Ast, ExprError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        tokens,
        idx: 0,
        end: src.len(),
    };
    let ast = parser.expr()?;
    if let Some(extra) = parser.peek() {
        return Err(ExprError::Parse {
            pos: extra.pos,
            expected: format!("end of input, got {:?}", extra.lexeme),
        });
    }
    Ok(ast)
}

pub fn eval(ast: &Ast, sig: Signature) -> Result<Binarion, ExprError> {
    let value = eval_node(ast, sig)?;
    // Arithmetic on in-range operands can still overflow; surface that
    // as an error instead of letting non-finite values escape.
    Binarion::try_new(value.x(), value.y(), sig).map_err(|source| ExprError::Eval {
        pos: ast.pos(),
        source,
    })
}

fn eval_node(ast: &Ast, sig: Signature) -> Result<Binarion, ExprError> {
    let wrap = |pos: usize| move |source: AlgebraError| ExprError::Eval { pos, source };
    match ast {
        Ast::Lit { coeff, axis, pos } => {
            let (x, y) = match axis {
                Axis::I => (*coeff, 0.0),
                Axis::E => (0.0, *coeff),
            };
            Binarion::try_new(x, y, sig).map_err(wrap(*pos))
        }
        Ast::Neg { expr, .. } => Ok(-eval_node(expr, sig)?),
        Ast::Bin { op, lhs, rhs, pos } => {
            let a = eval_node(lhs, sig)?;
            let b = eval_node(rhs, sig)?;
            match op {
                BinOp::Add => Ok(a + b),
                BinOp::Sub => Ok(a - b),
                BinOp::Mul => Ok(a * b),
                BinOp::Div => a.checked_div(b).map_err(wrap(*pos)),
            }
        }
        Ast::Pow { base, exp, .. } => Ok(eval_node(base, sig)?.powi(*exp)),
        Ast::Call { func, arg, pos } => {
            let a = eval_node(arg, sig)?;
            let wrap = wrap(*pos);
            match func {
                Func::Exp => Ok(functions::exp(a)),
                Func::Ln => functions::ln(a).map_err(wrap),
                Func::Sin => functions::sin(a).map_err(wrap),
                Func::Cos => functions::cos(a).map_err(wrap),
                Func::Sqrt => functions::sqrt(a).map_err(wrap),
                Func::Conj => Ok(a.conj()),
                Func::Inv => a.inv().map_err(wrap),
                Func::Det => Binarion::try_new(a.det(), 0.0, sig).map_err(wrap),
                Func::Tr => Binarion::try_new(a.trace(), 0.0, sig).map_err(wrap),
            }
        }
    }
}

pub fn eval_str(src: &str, sig: Signature) -> Result<Binarion, ExprError> {
    eval(&parse(src)?, sig)
}
