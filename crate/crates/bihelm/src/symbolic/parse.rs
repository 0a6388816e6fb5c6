//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' integer)?
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' factor
//! ```
//!
//! Numbers are unsigned integer literals of arbitrary length; `1/2` is exact
//! rational division. Parsing goes through an uninterpreted syntax tree
//! ([`RawAst`]) before lowering into canonical [`Expr`] form, so tests can
//! compare canonicalized evaluation against direct tree evaluation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::poly::{FuncKind, Q};
#[cfg(test)]
use super::EvalPoint;
use super::{Expr, ExprContext};
use crate::error::SymbolicError;

#[derive(Clone, Debug)]
pub(crate) struct RawAst {
    pub off: usize,
    pub node: RawNode,
}

#[derive(Clone, Debug)]
pub(crate) enum RawNode {
    Int(BigInt),
    Coord(usize),
    Jet { coord: usize, order: u8 },
    Param(Arc<str>),
    Call(FuncKind, Box<RawAst>),
    Neg(Box<RawAst>),
    Add(Box<RawAst>, Box<RawAst>),
    Sub(Box<RawAst>, Box<RawAst>),
    Mul(Box<RawAst>, Box<RawAst>),
    Div(Box<RawAst>, Box<RawAst>),
    Pow(Box<RawAst>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, SymbolicError> {
    Err(SymbolicError::Parse {
        offset,
        message: message.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SymbolicError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digit run parses");
                out.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character {:?}", src[i..].chars().next().unwrap())),
        }
    }
    Ok(out)
}

/// Strict jet spelling: `u<digits>` or `u<digits>_<digits>`.
fn jet_shaped(name: &str) -> Option<(&str, Option<&str>)> {
    let rest = name.strip_prefix('u')?;
    if rest.is_empty() {
        return None;
    }
    let (coord, order) = match rest.split_once('_') {
        Some((c, o)) => (c, Some(o)),
        None => (rest, None),
    };
    if coord.is_empty() || !coord.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if let Some(o) = order {
        if o.is_empty() || !o.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
    }
    Some((coord, order))
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a ExprContext,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, SymbolicError> {
        match self.bump() {
            Some((o, t)) if t == want => Ok(o),
            Some((o, t)) => err(o, format!("expected {what}, found {t:?}")),
            None => err(self.end, format!("expected {what}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<RawAst, SymbolicError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => RawNode::Add as fn(_, _) -> _,
                Some(Tok::Minus) => RawNode::Sub as fn(_, _) -> _,
                _ => return Ok(lhs),
            };
            let (off, _) = self.bump().unwrap();
            let rhs = self.term()?;
            lhs = RawAst {
                off,
                node: op(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn term(&mut self) -> Result<RawAst, SymbolicError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => RawNode::Mul as fn(_, _) -> _,
                Some(Tok::Slash) => RawNode::Div as fn(_, _) -> _,
                _ => return Ok(lhs),
            };
            let (off, _) = self.bump().unwrap();
            let rhs = self.factor()?;
            lhs = RawAst {
                off,
                node: op(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn factor(&mut self) -> Result<RawAst, SymbolicError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let (off, _) = self.bump().unwrap();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some((o, Tok::Int(n))) => {
                let mag = n
                    .to_i32()
                    .filter(|v| *v <= 1 << 20)
                    .ok_or(SymbolicError::ExponentOverflow);
                let mag = match mag {
                    Ok(v) => v,
                    Err(_) => return err(o, "exponent out of supported range"),
                };
                let e = if negative { -mag } else { mag };
                Ok(RawAst {
                    off,
                    node: RawNode::Pow(Box::new(base), e),
                })
            }
            Some((o, t)) => err(o, format!("expected integer exponent, found {t:?}")),
            None => err(self.end, "expected integer exponent, found end of input"),
        }
    }

    fn atom(&mut self) -> Result<RawAst, SymbolicError> {
        match self.bump() {
            Some((off, Tok::Int(n))) => Ok(RawAst {
                off,
                node: RawNode::Int(n),
            }),
            Some((off, Tok::Minus)) => {
                let inner = self.factor()?;
                Ok(RawAst {
                    off,
                    node: RawNode::Neg(Box::new(inner)),
                })
            }
            Some((off, Tok::LParen)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(RawAst {
                    off,
                    node: inner.node,
                })
            }
            Some((off, Tok::Ident(name))) => {
                if self.peek() == Some(&Tok::LParen) {
                    let Some(kind) = FuncKind::from_name(&name) else {
                        return err(off, format!("unknown function `{name}`"));
                    };
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "closing parenthesis")?;
                    return Ok(RawAst {
                        off,
                        node: RawNode::Call(kind, Box::new(arg)),
                    });
                }
                self.resolve_ident(off, &name)
            }
            Some((off, t)) => err(off, format!("expected an operand, found {t:?}")),
            None => err(self.end, "expected an operand, found end of input"),
        }
    }

    fn resolve_ident(&self, off: usize, name: &str) -> Result<RawAst, SymbolicError> {
        if let Some(i) = self.ctx.chart.iter().position(|c| c == name) {
            return Ok(RawAst {
                off,
                node: RawNode::Coord(i),
            });
        }
        let mut jet_problem: Option<String> = None;
        if let Some((coord_str, order_str)) = jet_shaped(name) {
            let coord: Option<usize> = coord_str.parse().ok();
            let order: Option<u8> = match order_str {
                None => Some(1),
                Some(o) => o.parse().ok(),
            };
            match (coord, order) {
                (Some(c), Some(s)) if c >= 1 && (1..=4).contains(&s) => {
                    if c <= self.ctx.chart.len() {
                        return Ok(RawAst {
                            off,
                            node: RawNode::Jet {
                                coord: c - 1,
                                order: s,
                            },
                        });
                    }
                    jet_problem = Some(format!(
                        "jet coordinate {c} outside chart of dimension {}",
                        self.ctx.chart.len()
                    ));
                }
                (Some(c), Some(s)) if c >= 1 => {
                    jet_problem = Some(format!("jet order {s} outside 1..=4"));
                }
                _ => {
                    jet_problem = Some(format!("malformed jet variable `{name}`"));
                }
            }
        }
        if self.ctx.params.iter().any(|p| p == name) {
            return Ok(RawAst {
                off,
                node: RawNode::Param(Arc::from(name)),
            });
        }
        match jet_problem {
            Some(msg) => err(off, msg),
            None => err(off, format!("unknown symbol `{name}`")),
        }
    }
}

pub(crate) fn parse_raw(text: &str, ctx: &ExprContext) -> Result<RawAst, SymbolicError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        end: text.len(),
    };
    let ast = p.expr()?;
    if let Some((o, t)) = p.toks.get(p.pos) {
        return err(*o, format!("unexpected trailing {t:?}"));
    }
    Ok(ast)
}

pub(crate) fn parse(text: &str, ctx: &ExprContext) -> Result<Expr, SymbolicError> {
    lower(&parse_raw(text, ctx)?)
}

fn lower(ast: &RawAst) -> Result<Expr, SymbolicError> {
    match &ast.node {
        RawNode::Int(n) => Ok(Expr::from_q(Q::from_integer(n.clone()))),
        RawNode::Coord(i) => Ok(Expr::coord(*i)),
        RawNode::Jet { coord, order } => Expr::jet(*coord, *order),
        RawNode::Param(name) => Ok(Expr::param(name)),
        RawNode::Call(kind, arg) => {
            let a = lower(arg)?;
            Ok(match kind {
                FuncKind::Sin => a.sin(),
                FuncKind::Cos => a.cos(),
                FuncKind::Sinh => a.sinh(),
                FuncKind::Cosh => a.cosh(),
                FuncKind::Exp => a.exp(),
                FuncKind::Sqrt => a.sqrt(),
                FuncKind::Log => a.log().map_err(|e| position(e, ast.off))?,
            })
        }
        RawNode::Neg(inner) => Ok(-lower(inner)?),
        RawNode::Add(a, b) => Ok(lower(a)? + lower(b)?),
        RawNode::Sub(a, b) => Ok(lower(a)? - lower(b)?),
        RawNode::Mul(a, b) => Ok(lower(a)? * lower(b)?),
        RawNode::Div(a, b) => {
            let lhs = lower(a)?;
            // `a/(f)^k` divides by the factor k times rather than by the
            // expanded power, so factored denominators re-parse to the same
            // canonical form they were rendered from
            if let RawNode::Pow(base, e) = &b.node {
                let inv = lower(base)?
                    .pow(-*e)
                    .map_err(|err| position(err, b.off))?;
                return Ok(lhs * inv);
            }
            lhs.checked_div(&lower(b)?)
                .map_err(|e| position(e, ast.off))
        }
        RawNode::Pow(base, e) => lower(base)?.pow(*e).map_err(|e| position(e, ast.off)),
    }
}

/// Attach a byte offset to lowering-stage errors that lack one.
fn position(e: SymbolicError, off: usize) -> SymbolicError {
    match e {
        SymbolicError::Parse { .. } => e,
        other => SymbolicError::Parse {
            offset: off,
            message: other.to_string(),
        },
    }
}

/// Direct evaluation of the uninterpreted tree, bypassing canonicalization.
/// Used to cross-check that simplification preserves value.
#[cfg(test)]
pub(crate) fn eval_raw(ast: &RawAst, point: &EvalPoint) -> Result<f64, SymbolicError> {
    let v = match &ast.node {
        RawNode::Int(n) => n.to_f64().ok_or(SymbolicError::NonFiniteResult)?,
        RawNode::Coord(i) => *point
            .coords
            .get(i)
            .ok_or_else(|| SymbolicError::UnboundSymbol(format!("coordinate #{}", i + 1)))?,
        RawNode::Jet { coord, order } => *point
            .jets
            .get(&(*coord, *order))
            .ok_or_else(|| SymbolicError::UnboundSymbol(format!("u{}_{order}", coord + 1)))?,
        RawNode::Param(name) => *point
            .params
            .get(name.as_ref())
            .ok_or_else(|| SymbolicError::UnboundSymbol(name.to_string()))?,
        RawNode::Call(kind, arg) => {
            let x = eval_raw(arg, point)?;
            match kind {
                FuncKind::Sin => x.sin(),
                FuncKind::Cos => x.cos(),
                FuncKind::Sinh => x.sinh(),
                FuncKind::Cosh => x.cosh(),
                FuncKind::Exp => x.exp(),
                FuncKind::Log => x.ln(),
                FuncKind::Sqrt => x.sqrt(),
            }
        }
        RawNode::Neg(inner) => -eval_raw(inner, point)?,
        RawNode::Add(a, b) => eval_raw(a, point)? + eval_raw(b, point)?,
        RawNode::Sub(a, b) => eval_raw(a, point)? - eval_raw(b, point)?,
        RawNode::Mul(a, b) => eval_raw(a, point)? * eval_raw(b, point)?,
        RawNode::Div(a, b) => {
            let d = eval_raw(b, point)?;
            if d == 0.0 {
                return Err(SymbolicError::DivisionByZero);
            }
            eval_raw(a, point)? / d
        }
        RawNode::Pow(base, e) => eval_raw(base, point)?.powi(*e),
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SymbolicError::NonFiniteResult)
    }
}
