//! Text syntax for polynomials and operators.
//!
//! ```text
//! operator   := expr                      (terms carry d[..] or y[..])
//! expr       := term (("+" | "-") term)*
//! term       := factor (("*" factor) | ("/" integer))*
//! factor     := ("-" | "+") factor | atom ("^" integer)?
//! atom       := integer | "i" | "x" index | "d[" ints "]" | "y[" ints "]" | "(" expr ")"
//! ```
//!
//! `d[a1,…,am]` is the derivative `∂^α` in a linear operator, so the Lewy
//! operator reads `d[1,0,0] + i*d[0,1,0] + (-2*i*x1 + 2*x2)*d[0,0,1]`.
//! `y[a1,…,am]` is the jet coordinate `y_α` inside a nonlinear symbol body,
//! e.g. `y[1]^2`. Whitespace is insignificant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{MultiIndex, MultiPoly, Scalar};
use crate::jet::{enumerate_multiindices, graded_lex_position, jet_dimension};
use crate::symbol::{GeneralSymbol, LinearSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Tokens that would have been accepted at this position, if known.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    I,
    X(usize),
    D,
    Y,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::I => "'i'".into(),
            Tok::X(k) => format!("'x{k}'"),
            Tok::D => "'d'".into(),
            Tok::Y => "'y'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const ATOM_START: &[&str] = &["integer", "i", "x<k>", "d[", "y[", "(", "-"];

fn tokenize(text: &str, first_line: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (first_line, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let single = match c {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            k += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            col += k - start;
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            let word: String = chars[start..k].iter().collect();
            col += k - start;
            let tok = match word.as_str() {
                "i" => Tok::I,
                "d" => Tok::D,
                "y" => Tok::Y,
                w if w.starts_with('x') && w.len() > 1 && w[1..].chars().all(|ch| ch.is_ascii_digit()) => {
                    let idx: usize = w[1..].parse().map_err(|_| pos.error("variable index too large", &[]))?;
                    if idx == 0 {
                        return Err(pos.error("variables are numbered from x1", &[]));
                    }
                    Tok::X(idx)
                }
                w => return Err(pos.error(format!("unknown identifier '{w}'"), ATOM_START)),
            };
            out.push((tok, pos));
            continue;
        }
        return Err(pos.error(format!("unexpected character '{c}'"), ATOM_START));
    }
    out.push((Tok::End, Pos { line, column: col }));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigRational),
    I,
    X(usize),
    D(Vec<u32>),
    Y(Vec<u32>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>, Pos),
    Div(Box<Expr>, BigRational),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.pos().error(format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[label]))
        }
    }

    fn parse_all(&mut self) -> Result<Expr, ParseError> {
        let e = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(self.unexpected(&["+", "-", "*", "/", "^", "end of input"]));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    let pos = self.pos();
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?), pos);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let Tok::Int(n) = self.bump() else {
                        return Err(pos.error("only division by an integer literal is supported", &["integer"]));
                    };
                    if n.is_zero() {
                        return Err(pos.error("division by zero", &[]));
                    }
                    lhs = Expr::Div(Box::new(lhs), BigRational::from_integer(n));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                return Ok(Expr::Neg(Box::new(self.factor()?)));
            }
            Tok::Plus => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            let pos = self.pos();
            self.bump();
            let epos = self.pos();
            let Tok::Int(n) = self.bump() else {
                return Err(epos.error("exponent must be a nonnegative integer", &["integer"]));
            };
            let e = n.to_u32().ok_or_else(|| epos.error("exponent too large", &[]))?;
            return Ok(Expr::Pow(Box::new(base), e, pos));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Tok::I => {
                self.bump();
                Ok(Expr::I)
            }
            Tok::X(k) => {
                self.bump();
                Ok(Expr::X(k))
            }
            Tok::D => {
                self.bump();
                Ok(Expr::D(self.index_list()?))
            }
            Tok::Y => {
                self.bump();
                Ok(Expr::Y(self.index_list()?))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(e)
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn index_list(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(Tok::LBracket, "[")?;
        let mut v = Vec::new();
        loop {
            let pos = self.pos();
            match self.bump() {
                Tok::Int(n) => v.push(n.to_u32().ok_or_else(|| pos.error("multiindex entry too large", &[]))?),
                other => return Err(pos.error(format!("unexpected {}", other.describe()), &["integer"])),
            }
            let pos = self.pos();
            match self.bump() {
                Tok::Comma => continue,
                Tok::RBracket => return Ok(v),
                other => return Err(pos.error(format!("unexpected {}", other.describe()), &[",", "]"])),
            }
        }
    }
}

/// What the expression tree mentions, for dimension inference.
#[derive(Default)]
struct Usage {
    max_x: usize,
    d_len: Option<usize>,
    y_len: Option<usize>,
    max_d_weight: usize,
    max_y_weight: usize,
    uses_d: bool,
    uses_y: bool,
}

fn scan(e: &Expr, u: &mut Usage) -> Result<(), String> {
    let unify = |slot: &mut Option<usize>, len: usize| match slot {
        Some(l) if *l != len => Err(format!("multiindices of lengths {l} and {len} mixed")),
        _ => {
            *slot = Some(len);
            Ok(())
        }
    };
    match e {
        Expr::Num(_) | Expr::I => Ok(()),
        Expr::X(k) => {
            u.max_x = u.max_x.max(*k);
            Ok(())
        }
        Expr::D(v) => {
            unify(&mut u.d_len, v.len())?;
            u.uses_d = true;
            u.max_d_weight = u.max_d_weight.max(v.iter().map(|&a| a as usize).sum());
            Ok(())
        }
        Expr::Y(v) => {
            unify(&mut u.y_len, v.len())?;
            u.uses_y = true;
            u.max_y_weight = u.max_y_weight.max(v.iter().map(|&a| a as usize).sum());
            Ok(())
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b, _) => {
            scan(a, u)?;
            scan(b, u)
        }
        Expr::Div(a, _) | Expr::Neg(a) | Expr::Pow(a, _, _) => scan(a, u),
    }
}

/// A linear-operator value: scalar polynomial part plus `d[α]` parts.
#[derive(Clone)]
struct LinValue {
    scalar: MultiPoly,
    ops: BTreeMap<MultiIndex, MultiPoly>,
}

impl LinValue {
    fn scalar(p: MultiPoly) -> Self {
        LinValue { scalar: p, ops: BTreeMap::new() }
    }

    fn combine(mut self, other: LinValue, sign: &Scalar) -> LinValue {
        self.scalar = &self.scalar + &other.scalar.scale(sign);
        for (a, c) in other.ops {
            let slot = self.ops.entry(a).or_insert_with(|| MultiPoly::zero(c.num_vars()));
            *slot = &*slot + &c.scale(sign);
        }
        self.ops.retain(|_, c| !c.is_zero());
        self
    }

    fn scale_poly(&self, p: &MultiPoly) -> LinValue {
        LinValue {
            scalar: &self.scalar * p,
            ops: self.ops.iter().map(|(a, c)| (a.clone(), c * p)).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

fn eval_linear(e: &Expr, m: usize) -> Result<LinValue, (Option<Pos>, String)> {
    Ok(match e {
        Expr::D(v) => {
            let mut ops = BTreeMap::new();
            ops.insert(MultiIndex::new(v.clone()), MultiPoly::one(m));
            LinValue { scalar: MultiPoly::zero(m), ops }
        }
        Expr::Add(a, b) => eval_linear(a, m)?.combine(eval_linear(b, m)?, &Scalar::one()),
        Expr::Sub(a, b) => eval_linear(a, m)?.combine(eval_linear(b, m)?, &-Scalar::one()),
        Expr::Neg(a) => LinValue::scalar(MultiPoly::zero(m)).combine(eval_linear(a, m)?, &-Scalar::one()),
        Expr::Div(a, q) => eval_linear(a, m)?.scale_poly(&MultiPoly::constant(m, Scalar::from_rational(q.recip()))),
        Expr::Mul(a, b, pos) => {
            let (a, b) = (eval_linear(a, m)?, eval_linear(b, m)?);
            match (a.ops.is_empty(), b.ops.is_empty()) {
                (true, _) => b.scale_poly(&a.scalar),
                (_, true) => a.scale_poly(&b.scalar),
                _ => {
                    return Err((
                        Some(*pos),
                        "product of two derivative terms is not linear; write nonlinear symbols with y[..]".into(),
                    ))
                }
            }
        }
        Expr::Pow(a, n, pos) => {
            let a = eval_linear(a, m)?;
            if a.ops.is_empty() {
                LinValue::scalar(a.scalar.pow(*n))
            } else if *n == 1 {
                a
            } else {
                return Err((Some(*pos), "power of a derivative term is not linear".into()));
            }
        }
        other => LinValue::scalar(eval_poly(other, m, &|_| None).map_err(|msg| (None, msg))?),
    })
}

/// Evaluates a polynomial expression in `num_vars` variables; `x_k` maps to
/// variable `k − 1` and `y[α]` goes through `y_var`.
fn eval_poly(e: &Expr, num_vars: usize, y_var: &dyn Fn(&[u32]) -> Option<usize>) -> Result<MultiPoly, String> {
    Ok(match e {
        Expr::Num(q) => MultiPoly::constant(num_vars, Scalar::from_rational(q.clone())),
        Expr::I => MultiPoly::constant(num_vars, Scalar::i()),
        Expr::X(k) => MultiPoly::var(num_vars, k - 1),
        Expr::Y(v) => {
            MultiPoly::var(num_vars, y_var(v).ok_or_else(|| format!("jet variable y{:?} not available here", v))?)
        }
        Expr::D(_) => return Err("d[..] may only appear in a linear operator".into()),
        Expr::Add(a, b) => &eval_poly(a, num_vars, y_var)? + &eval_poly(b, num_vars, y_var)?,
        Expr::Sub(a, b) => &eval_poly(a, num_vars, y_var)? - &eval_poly(b, num_vars, y_var)?,
        Expr::Mul(a, b, _) => &eval_poly(a, num_vars, y_var)? * &eval_poly(b, num_vars, y_var)?,
        Expr::Div(a, q) => eval_poly(a, num_vars, y_var)?.scale(&Scalar::from_rational(q.recip())),
        Expr::Neg(a) => -&eval_poly(a, num_vars, y_var)?,
        Expr::Pow(a, n, _) => eval_poly(a, num_vars, y_var)?.pow(*n),
    })
}

fn parse_tree(text: &str, first_line: usize) -> Result<(Expr, Pos), ParseError> {
    let toks = tokenize(text, first_line)?;
    let start = toks[0].1;
    let mut p = Parser { toks, at: 0 };
    Ok((p.parse_all()?, start))
}

/// Parses a polynomial in `x1..x_m`.
pub fn parse_polynomial(text: &str, m: usize) -> Result<MultiPoly, ParseError> {
    let (tree, start) = parse_tree(text, 1)?;
    let mut usage = Usage::default();
    scan(&tree, &mut usage).map_err(|msg| start.error(msg, &[]))?;
    if usage.uses_d || usage.uses_y {
        return Err(start.error("d[..] and y[..] are not allowed in a polynomial", &[]));
    }
    if usage.max_x > m {
        return Err(start.error(format!("variable x{} exceeds dimension {m}", usage.max_x), &[]));
    }
    eval_poly(&tree, m, &|_| None).map_err(|msg| start.error(msg, &[]))
}

/// A parsed operator: linear (written with `d[..]`) or a general
/// polynomial symbol (written with `y[..]`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParsedOperator {
    Linear(LinearSymbol),
    General(GeneralSymbol),
}

impl ParsedOperator {
    pub fn base_dim(&self) -> usize {
        match self {
            ParsedOperator::Linear(s) => s.base_dim(),
            ParsedOperator::General(g) => g.base_dim(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            ParsedOperator::Linear(s) => s.order(),
            ParsedOperator::General(g) => g.order(),
        }
    }

    /// Every operator as a general symbol.
    pub fn to_general(&self) -> GeneralSymbol {
        match self {
            ParsedOperator::Linear(s) => s.to_general(),
            ParsedOperator::General(g) => g.clone(),
        }
    }
}

/// Parses operator text. `dim` and `order` override inference from the
/// multiindex lengths and the largest term weight.
pub fn parse_operator(text: &str, dim: Option<usize>, order: Option<usize>) -> Result<ParsedOperator, ParseError> {
    parse_operator_at(text, dim, order, 1)
}

fn parse_operator_at(
    text: &str,
    dim: Option<usize>,
    order: Option<usize>,
    first_line: usize,
) -> Result<ParsedOperator, ParseError> {
    let (tree, start) = parse_tree(text, first_line)?;
    let mut u = Usage::default();
    scan(&tree, &mut u).map_err(|msg| start.error(msg, &[]))?;
    if u.uses_d && u.uses_y {
        return Err(start.error("an operator uses either d[..] (linear) or y[..] (nonlinear), not both", &[]));
    }
    let index_len = u.d_len.or(u.y_len);
    let m = match (dim, index_len) {
        (Some(d), Some(l)) if d != l => {
            return Err(start.error(format!("multiindices have length {l} but the dimension is {d}"), &[]))
        }
        (Some(d), _) => d,
        (None, Some(l)) => l,
        (None, None) if u.max_x > 0 => u.max_x,
        (None, None) => return Err(start.error("cannot infer the dimension; give it explicitly", &[])),
    };
    if m == 0 {
        return Err(start.error("dimension must be at least 1", &[]));
    }
    if u.max_x > m {
        return Err(start.error(format!("variable x{} exceeds dimension {m}", u.max_x), &[]));
    }
    let weight = u.max_d_weight.max(u.max_y_weight);
    let r = order.unwrap_or(weight);
    if r < weight {
        return Err(start.error(format!("declared order {r} is below the largest term weight {weight}"), &[]));
    }

    if u.uses_y {
        let nvars = m + jet_dimension(m, r);
        let y_var = |v: &[u32]| Some(m + graded_lex_position(&MultiIndex::new(v.to_vec())));
        let body = eval_poly(&tree, nvars, &y_var).map_err(|msg| start.error(msg, &[]))?;
        let g = GeneralSymbol::new(m, r, body).map_err(|e| start.error(e.to_string(), &[]))?;
        return Ok(ParsedOperator::General(g));
    }

    let value = eval_linear(&tree, m).map_err(|(pos, msg)| pos.unwrap_or(start).error(msg, &[]))?;
    if !value.scalar.is_zero() {
        return Err(
            start.error(format!("polynomial part '{}' carries no d[..]", format_polynomial(&value.scalar)), &[])
        );
    }
    let sym = LinearSymbol::new(m, r, value.ops).map_err(|e| start.error(e.to_string(), &[]))?;
    Ok(ParsedOperator::Linear(sym))
}

/// A `.pdo` file: first line `dim m order r`, then the operator text.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorSpec {
    pub dim: usize,
    pub order: usize,
    pub text: String,
}

impl OperatorSpec {
    pub fn parse(&self) -> Result<ParsedOperator, ParseError> {
        parse_operator_at(&self.text, Some(self.dim), Some(self.order), 2)
    }
}

pub fn parse_pdo(contents: &str) -> Result<OperatorSpec, ParseError> {
    let mut lines = contents.splitn(2, '\n');
    let header = lines.next().unwrap_or("").trim_start_matches('\u{feff}');
    let body = lines.next().unwrap_or("").to_string();
    let head = Pos { line: 1, column: 1 };
    let words: Vec<&str> = header.split_whitespace().collect();
    let [kw_dim, m, kw_order, r] = words.as_slice() else {
        return Err(head.error("header must read 'dim <m> order <r>'", &["dim"]));
    };
    if *kw_dim != "dim" || *kw_order != "order" {
        return Err(head.error("header must read 'dim <m> order <r>'", &["dim"]));
    }
    let dim = m.parse().map_err(|_| head.error(format!("bad dimension '{m}'"), &["integer"]))?;
    let order = r.parse().map_err(|_| head.error(format!("bad order '{r}'"), &["integer"]))?;
    Ok(OperatorSpec { dim, order, text: body })
}

/// Renders one monomial `c·x^e` with the given variable names.
fn format_monomial(c: &Scalar, e: &MultiIndex, name: &dyn Fn(usize) -> String) -> String {
    let vars: Vec<String> = e
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(k, &a)| if a == 1 { name(k) } else { format!("{}^{a}", name(k)) })
        .collect();
    if vars.is_empty() {
        return c.to_string();
    }
    let vars = vars.join("*");
    if c.is_one() {
        vars
    } else if (-c).is_one() {
        format!("-{vars}")
    } else {
        format!("{c}*{vars}")
    }
}

fn join_signed(parts: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for part in parts {
        if out.is_empty() {
            out = part;
        } else if let Some(rest) = part.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&part);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Highest degree first, with caller-chosen variable names.
pub fn format_polynomial_with(p: &MultiPoly, name: &dyn Fn(usize) -> String) -> String {
    join_signed(p.terms().iter().rev().map(|(e, c)| format_monomial(c, e, name)))
}

/// Renders `p` in `x1..x_m`; `parse_polynomial` reads it back exactly.
pub fn format_polynomial(p: &MultiPoly) -> String {
    format_polynomial_with(p, &|k| format!("x{}", k + 1))
}

fn format_index(a: &MultiIndex) -> String {
    a.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Renders a linear symbol in operator syntax, terms in graded-lex order.
pub fn format_operator(sym: &LinearSymbol) -> String {
    join_signed(sym.terms().iter().map(|(alpha, coeff)| {
        let d = format!("d[{}]", format_index(alpha));
        if coeff.len() == 1 {
            let (e, c) = coeff.terms().iter().next().unwrap();
            if e.is_zero() {
                if c.is_one() {
                    return d;
                }
                if (-c).is_one() {
                    return format!("-{d}");
                }
                return format!("{c}*{d}");
            }
            format!("{}*{d}", format_monomial(c, e, &|k| format!("x{}", k + 1)))
        } else {
            format!("({})*{d}", format_polynomial(coeff))
        }
    }))
}

/// Renders a general symbol body with `x1..x_m` and `y[α]`.
pub fn format_general(g: &GeneralSymbol) -> String {
    let m = g.base_dim();
    let labels = enumerate_multiindices(m, g.order());
    format_polynomial_with(g.body(), &|k| {
        if k < m {
            format!("x{}", k + 1)
        } else {
            format!("y[{}]", format_index(&labels[k - m]))
        }
    })
}

pub fn format_parsed(op: &ParsedOperator) -> String {
    match op {
        ParsedOperator::Linear(s) => format_operator(s),
        ParsedOperator::General(g) => format_general(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEWY: &str = "d[1,0,0] + i*d[0,1,0] + (-2*i*x1 + 2*x2)*d[0,0,1]";

    fn lin(text: &str) -> LinearSymbol {
        match parse_operator(text, None, None).unwrap() {
            ParsedOperator::Linear(s) => s,
            ParsedOperator::General(_) => panic!("expected linear"),
        }
    }

    #[test]
    fn lewy_parses() {
        let s = lin(LEWY);
        assert_eq!((s.base_dim(), s.order()), (3, 1));
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.coefficient(&[0, 1, 0].into()), Some(&MultiPoly::constant(3, Scalar::i())));
        let c = s.coefficient(&[0, 0, 1].into()).unwrap();
        assert_eq!(c, &parse_polynomial("2*x2 - 2*i*x1", 3).unwrap());
        // −2i(x₁ + i x₂) expands to the same coefficient.
        assert_eq!(lin("d[1,0,0] + i*d[0,1,0] - 2*i*(x1 + i*x2)*d[0,0,1]"), s);
    }

    #[test]
    fn simple_operator() {
        let s = lin("x1^2*d[1]");
        assert_eq!(s.coefficient(&[1].into()), Some(&parse_polynomial("x1^2", 1).unwrap()));
    }

    #[test]
    fn parse_errors_located() {
        let err = parse_operator("d[1", None, None).unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        assert!(err.expected.contains(&"]".to_string()));

        let err = parse_operator("x1 + * 2", Some(1), None).unwrap_err();
        assert_eq!(err.column, 6);
        assert!(err.expected.contains(&"x<k>".to_string()));

        assert!(parse_operator("d[1]*d[1]", None, None).is_err());
        assert!(parse_operator("d[1,0] + d[1]", None, None).is_err());
        assert!(parse_operator("d[1] + y[1]", None, None).is_err());
        assert!(parse_operator("x1 + d[1]", None, None).is_err());
        assert!(parse_operator("x3*d[1]", None, None).is_err());
        assert!(parse_operator("d[2]", None, Some(1)).is_err());
        assert!(parse_polynomial("x1/x2", 2).is_err());
        assert!(parse_polynomial("q", 2).is_err());
    }

    #[test]
    fn rational_literals_and_division() {
        assert_eq!(parse_polynomial("3/2*x1^2*x2", 2).unwrap(), parse_polynomial("x1^2*x2*3/2", 2).unwrap());
        let p = parse_polynomial("-1", 3).unwrap();
        assert_eq!(p, MultiPoly::constant(3, Scalar::from_integer(-1)));
        assert_eq!(parse_polynomial("i*x3", 3).unwrap().coefficient(&[0, 0, 1].into()), Scalar::i());
    }

    #[test]
    fn general_symbol_parses() {
        let ParsedOperator::General(g) = parse_operator("y[1]^2 + x1*y[0]", None, None).unwrap() else { panic!() };
        assert_eq!((g.base_dim(), g.order()), (1, 1));
        assert_eq!(format_general(&g), "y[1]^2 + x1*y[0]");
    }

    #[test]
    fn operator_roundtrip() {
        for text in [LEWY, "x1^2*d[1]", "d[0] + d[2]", "-d[1] - 3/2*x1*d[0]", "(1 + x1)*d[1,1] + (2 - i)*x2^3*d[0,2]"] {
            let op = parse_operator(text, None, None).unwrap();
            let printed = format_parsed(&op);
            assert_eq!(
                parse_operator(&printed, Some(op.base_dim()), Some(op.order())).unwrap(),
                op,
                "{text} -> {printed}"
            );
        }
    }

    #[test]
    fn pdo_file() {
        let spec = parse_pdo("dim 3 order 1\nd[1,0,0] + i*d[0,1,0]\n  + (-2*i*x1 + 2*x2)*d[0,0,1]\n").unwrap();
        assert_eq!((spec.dim, spec.order), (3, 1));
        assert_eq!(spec.parse().unwrap(), ParsedOperator::Linear(lin(LEWY)));
        let bad = parse_pdo("dim 1 order 1\nd[1] +\n").unwrap().parse().unwrap_err();
        assert_eq!(bad.line, 3);
        assert!(parse_pdo("dimension 3\nd[1]").is_err());
    }

    #[test]
    fn polynomial_printing() {
        let p = parse_polynomial("1 - x1 + x1^2", 1).unwrap();
        assert_eq!(format_polynomial(&p), "x1^2 - x1 + 1");
        assert_eq!(format_polynomial(&MultiPoly::zero(2)), "0");
        assert_eq!(format_polynomial(&parse_polynomial("(1+2*i)*x1 - i", 1).unwrap()), "(1 + 2*i)*x1 - i");
    }
}
