//! A small expression language for series and arrays.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" ["-"] INT)?
//! atom   := INT | "t" | NAME | FUNC "(" args ")" | "R" "(" expr ";" expr ")"
//!         | "O" "(" "t" ["^" INT] ")" | "(" expr ")"
//! ```
//!
//! Named series are `C`, `F`, `M`, `Rr` and `barC`; any catalog array name
//! (`pas`, `cat`, `sha`, `fib`, `jac`, `T`, ...) denotes that array. Arrays
//! are written `R(d; h)`. `O(t^k)` marks the remaining precision.

use std::fmt;

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::catalog;
use crate::derflip;
use crate::error::{Error, Result};
use crate::riordan::RiordanArray;
use crate::series::{Rat, Series};
use crate::sums::{try_add, Sumray};

pub const SERIES_NAMES: &[&str] = &["C", "F", "M", "Rr", "barC"];

/// Deepest nesting the parser accepts before reporting an error.
const MAX_DEPTH: usize = 200;

/// Largest exponent magnitude the evaluator accepts.
const MAX_EXPONENT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Der,
    Flip,
    Inv,
    Sigma,
    Sqrt,
    D,
    Rev,
    Comp,
}

impl Func {
    const ALL: [Func; 8] =
        [Func::Der, Func::Flip, Func::Inv, Func::Sigma, Func::Sqrt, Func::D, Func::Rev, Func::Comp];

    pub fn name(self) -> &'static str {
        match self {
            Func::Der => "der",
            Func::Flip => "flip",
            Func::Inv => "inv",
            Func::Sigma => "sigma",
            Func::Sqrt => "sqrt",
            Func::D => "D",
            Func::Rev => "rev",
            Func::Comp => "comp",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    fn arity(self) -> usize {
        if self == Func::Comp {
            2
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var,
    Name(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Func, Vec<Expr>),
    Array(Box<Expr>, Box<Expr>),
    /// `O(t^k)`
    BigO(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {}{}", expected.join(" or "), found.as_ref().map(|f| format!(", found `{f}`")).unwrap_or_default())]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Sym(c) => write!(f, "{c}"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse::<BigInt>().expect("ascii digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if b"+-*/^();,".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let found = text[i..].chars().next().map(|ch| ch.to_string());
            return Err(ParseError {
                offset: i,
                expected: vec!["number".into(), "name".into(), "operator".into()],
                found,
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

fn expected_operand() -> Vec<String> {
    ["number", "t", "name", "(", "-"].iter().map(|s| s.to_string()).collect()
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<String>) -> ParseError {
        ParseError { offset: self.offset(), expected, found: Some(self.peek().to_string()) }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(vec![c.to_string()]))
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError {
                offset: self.offset(),
                expected: vec![format!("nesting depth at most {MAX_DEPTH}")],
                found: None,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn small_int(&mut self) -> PResult<i64> {
        match self.peek().clone() {
            Tok::Int(n) => match i64::try_from(&n) {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => Err(self.error(vec!["integer that fits in 64 bits".into()])),
            },
            _ => Err(self.error(vec!["integer".into()])),
        }
    }

    fn exponent(&mut self) -> PResult<i64> {
        let paren = *self.peek() == Tok::Sym('(');
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Sym('-');
        if neg {
            self.bump();
        }
        let e = self.small_int()?;
        if paren {
            self.expect_sym(')')?;
        }
        Ok(if neg { -e } else { e })
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let tok = self.peek().clone();
        match tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.offset();
                self.bump();
                let call = *self.peek() == Tok::Sym('(');
                match name.as_str() {
                    "t" => Ok(Expr::Var),
                    "R" if call => {
                        self.bump();
                        let d = self.expr()?;
                        self.expect_sym(';')?;
                        let h = self.expr()?;
                        self.expect_sym(')')?;
                        Ok(Expr::Array(Box::new(d), Box::new(h)))
                    }
                    "O" if call => {
                        self.bump();
                        if *self.peek() != Tok::Ident("t".into()) {
                            return Err(self.error(vec!["t".into()]));
                        }
                        self.bump();
                        let k = if *self.peek() == Tok::Sym('^') {
                            self.bump();
                            let k = self.small_int()?;
                            usize::try_from(k).map_err(|_| self.error(vec!["non-negative integer".into()]))?
                        } else {
                            1
                        };
                        self.expect_sym(')')?;
                        Ok(Expr::BigO(k))
                    }
                    _ if call => {
                        let Some(func) = Func::from_name(&name) else {
                            return Err(ParseError {
                                offset: at,
                                expected: Func::ALL.iter().map(|f| f.name().to_string()).collect(),
                                found: Some(name),
                            });
                        };
                        self.bump();
                        self.enter()?;
                        let mut args = vec![self.expr()?];
                        while *self.peek() == Tok::Sym(',') {
                            self.bump();
                            args.push(self.expr()?);
                        }
                        self.depth -= 1;
                        if args.len() != func.arity() {
                            return Err(ParseError {
                                offset: at,
                                expected: vec![format!("{} with {} argument(s)", func.name(), func.arity())],
                                found: Some(format!("{} arguments", args.len())),
                            });
                        }
                        self.expect_sym(')')?;
                        Ok(Expr::Call(func, args))
                    }
                    _ => Ok(Expr::Name(name)),
                }
            }
            _ => Err(self.error(expected_operand())),
        }
    }
}

/// Parses an expression. Never panics; every failure is a [`ParseError`].
pub fn parse(text: &str) -> std::result::Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let mut expected = vec!["operator".to_string(), "end of input".to_string()];
        if matches!(p.peek(), Tok::Sym(')')) {
            expected.push("matching (".into());
        }
        return Err(p.error(expected));
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

struct Wrap<'a>(&'a Expr, bool);

impl fmt::Display for Wrap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var => f.write_str("t"),
            Expr::Name(s) => f.write_str(s),
            Expr::Neg(e) => write!(f, "-{}", Wrap(e, prec(e) < 3)),
            Expr::Bin(op, a, b) => {
                let p = prec(self);
                let sym = match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write!(f, "{}{sym}{}", Wrap(a, prec(a) < p), Wrap(b, prec(b) <= p))
            }
            Expr::Pow(b, e) => write!(f, "{}^{e}", Wrap(b, prec(b) < 5)),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Expr::Array(d, h) => write!(f, "R({d}; {h})"),
            Expr::BigO(k) => write!(f, "O(t^{k})"),
        }
    }
}

/// The result of evaluating an expression.
#[derive(Clone, Debug)]
pub enum Value {
    Series(Series),
    Array(RiordanArray),
    Sumray(Sumray),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Series(_) => "series",
            Value::Array(_) => "array",
            Value::Sumray(_) => "sumray",
        }
    }

    pub fn into_series(self) -> Result<Series> {
        match self {
            Value::Series(s) => Ok(s),
            other => Err(Error::Type(format!("expected a series, found {}", other.kind()))),
        }
    }

    pub fn into_array(self) -> Result<RiordanArray> {
        match self {
            Value::Array(a) => Ok(a),
            other => Err(Error::Type(format!("expected an array, found {}", other.kind()))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Series(s) => write!(f, "{s}"),
            Value::Array(a) => write!(f, "{a}"),
            Value::Sumray(y) => write!(f, "{y}"),
        }
    }
}

fn type_error(op: &str, a: &Value, b: &Value) -> Error {
    Error::Type(format!("cannot apply {op} to {} and {}", a.kind(), b.kind()))
}

fn named(name: &str, order: usize) -> Result<Value> {
    match name {
        "C" => catalog::catalan(order).map(Value::Series),
        "F" => Ok(Value::Series(catalog::fibonacci(order))),
        "M" => catalog::motzkin(order).map(Value::Series),
        "Rr" => catalog::riordan_numbers(order).map(Value::Series),
        "barC" => catalog::catalan_shifted(order).map(Value::Series),
        _ => catalog::array(name, order).map(Value::Array),
    }
}

/// Evaluates at truncation order `order`.
pub fn eval(e: &Expr, order: usize) -> Result<Value> {
    use Value::*;
    Ok(match e {
        Expr::Int(n) => Series(crate::series::Series::constant(Rat::from_integer(n.clone()), order)),
        Expr::Var => Series(crate::series::Series::t(order)),
        Expr::Name(s) => named(s, order)?,
        Expr::BigO(k) => Series(crate::series::Series::zero(order).with_valid_len(*k)),
        Expr::Neg(a) => match eval(a, order)? {
            Series(s) => Series(s.neg()),
            other => return Err(Error::Type(format!("cannot negate {}", other.kind()))),
        },
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval(a, order)?, eval(b, order)?);
            match (op, a, b) {
                (BinOp::Add, Series(x), Series(y)) => Series(x.add(&y)?),
                (BinOp::Sub, Series(x), Series(y)) => Series(x.sub(&y)?),
                (BinOp::Mul, Series(x), Series(y)) => Series(x.mul(&y)?),
                (BinOp::Div, Series(x), Series(y)) => Series(x.div(&y)?),
                (BinOp::Mul, Array(x), Array(y)) => Array(x.multiply(&y)?),
                (BinOp::Div, Array(x), Array(y)) => Array(x.multiply(&y.inverse()?)?),
                (BinOp::Add, Array(x), Array(y)) => match try_add(&x, &y) {
                    Ok(sum) => Array(sum),
                    Err(_) => Sumray(crate::sums::Sumray::new(x, y)?),
                },
                (op, a, b) => return Err(type_error(&format!("{op:?}").to_lowercase(), &a, &b)),
            }
        }
        Expr::Pow(b, k) => {
            if k.unsigned_abs() > MAX_EXPONENT {
                return Err(Error::OutOfRange(format!("exponent {k} exceeds {MAX_EXPONENT}")));
            }
            match eval(b, order)? {
                Series(s) => Series(s.pow(*k)?),
                Array(a) => Array(a.pow(*k)?),
                other => return Err(Error::Type(format!("cannot raise {} to a power", other.kind()))),
            }
        }
        Expr::Array(d, h) => {
            let d = eval(d, order)?.into_series()?;
            let h = eval(h, order)?.into_series()?;
            Array(RiordanArray::new(d, h)?)
        }
        Expr::Call(func, args) => {
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                vals.push(eval(a, order)?);
            }
            let mut vals = vals.into_iter();
            let x = vals.next().expect("arity checked by the parser");
            match (func, x) {
                (Func::Der, Array(a)) => Array(derflip::der(&a)?),
                (Func::Flip, Array(a)) => Array(derflip::flip(&a)?),
                (Func::Sigma, Array(a)) => Array(a.sigma()?),
                (Func::Inv, Array(a)) => Array(a.inverse()?),
                (Func::Inv, Series(s)) => Series(s.reciprocal()?),
                (Func::Sqrt, Series(s)) => Series(s.sqrt1()?),
                (Func::D, Series(s)) => Series(s.derivative()),
                (Func::Rev, Series(s)) => Series(s.comp_inverse()?),
                (Func::Comp, Series(f)) => {
                    let g = vals.next().expect("arity checked by the parser").into_series()?;
                    Series(f.compose(&g)?)
                }
                (func, other) => {
                    return Err(Error::Type(format!("{} does not accept {}", func.name(), other.kind())))
                }
            }
        }
    })
}

/// Parses and evaluates in one step, mapping parse errors into the crate
/// error type.
pub fn eval_str(text: &str, order: usize) -> std::result::Result<Value, EvalError> {
    let e = parse(text)?;
    Ok(eval(&e, order)?)
}

pub fn parse_series(text: &str, order: usize) -> std::result::Result<Series, EvalError> {
    Ok(eval_str(text, order)?.into_series()?)
}

pub fn parse_array(text: &str, order: usize) -> std::result::Result<RiordanArray, EvalError> {
    Ok(eval_str(text, order)?.into_array()?)
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] Error),
}

/// Integers as a literal: used when rendering sequences back into the
/// language.
pub fn int_literal(n: i64) -> Expr {
    let lit = Expr::Int(BigInt::from(n.unsigned_abs()));
    if n < 0 {
        Expr::Neg(Box::new(lit))
    } else {
        lit
    }
}

/// `p/q` as an expression tree, with the sign on the numerator.
pub fn rational_literal(r: &Rat) -> Expr {
    let mag = Expr::Int(r.numer().magnitude().clone().into());
    let num = if r.numer() < &BigInt::zero() { Expr::Neg(Box::new(mag)) } else { mag };
    if r.denom().is_one() {
        num
    } else {
        Expr::Bin(BinOp::Div, Box::new(num), Box::new(Expr::Int(r.denom().clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    const N: usize = 12;

    #[test]
    fn parses_fibonacci_gf() {
        let s = parse_series("1/(1-t-t^2)", N).unwrap();
        assert_eq!(s, catalog::fibonacci(N));
    }

    #[test]
    fn parses_catalan_array() {
        let a = parse_array("R(C; t*C)", N).unwrap();
        assert_eq!(a, catalog::array("cat", N).unwrap());
    }

    #[test]
    fn reports_offset_of_truncated_input() {
        let err = parse("1/(1-").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.expected.contains(&"number".to_string()));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-t^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var), 2))));
        let s = parse_series("1 - 2*t^2 / 2 + 3", N).unwrap();
        assert_eq!(s, Series::from_ints(N, &[4, 0, -1]));
        assert_eq!(parse_series("(1-t)^-1", N).unwrap(), Series::geometric(rat(1), N));
    }

    #[test]
    fn big_o_limits_precision() {
        let s = parse_series("1 + t + O(t^3)", N).unwrap();
        assert_eq!(s.valid_len(), 3);
        assert_eq!(s.to_string(), "1 + t + O(t^3)");
    }

    #[test]
    fn display_reparses() {
        for text in [
            "1/(1 - t - t^2)",
            "-(1 + t)^2",
            "R(1/(1 - t); t/(1 - t))",
            "der(flip(cat))*inv(pas)",
            "comp(C, t - t^2) - -3",
            "2/3*t^-1",
            "O(t^4)",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text}");
        }
    }

    #[test]
    fn series_display_reparses() {
        let s = parse_series("(1 - 2*t)/(3 + t)", N).unwrap();
        assert_eq!(parse_series(&s.to_string(), N).unwrap(), s);
    }

    #[test]
    fn arrays_and_sumrays() {
        let v = eval_str("pas + s1", N).unwrap();
        assert!(matches!(v, Value::Array(_)));
        let v = eval_str("pas + cat", N).unwrap();
        assert!(matches!(v, Value::Sumray(_)));
        let id = eval_str("pas * inv(pas)", N).unwrap().into_array().unwrap();
        assert!(id.agrees(&RiordanArray::identity(N)));
    }

    #[test]
    fn structured_errors() {
        assert!(parse("foo(1)").is_err());
        assert!(parse("comp(t)").is_err());
        assert!(parse("1)").is_err());
        assert!(parse("t^99999999999999999999").is_err());
        assert!(parse(&"(".repeat(10_000)).is_err());
        assert!(parse(&"-".repeat(10_000)).is_err());
        assert!(matches!(eval_str("nope", N), Err(EvalError::Eval(Error::UnknownName(_)))));
        assert!(matches!(eval_str("pas + t", N), Err(EvalError::Eval(Error::Type(_)))));
    }

    #[test]
    fn literals() {
        assert_eq!(rational_literal(&crate::series::ratio(-3, 4)).to_string(), "-3/4");
        assert_eq!(int_literal(-2).to_string(), "-2");
    }
}
