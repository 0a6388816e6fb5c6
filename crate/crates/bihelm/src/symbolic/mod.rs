//! Exact symbolic expressions.
//!
//! [`Expr`] is an immutable handle to a canonical rational form: an expanded
//! multivariate polynomial numerator over a multiset of primitive denominator
//! factors, with a small directed rewrite system for the supported
//! transcendental functions. Equality of the canonical form is structural;
//! semantic equality is decided by [`Expr::equivalent`], which is sound and
//! complete on this class because a difference is zero exactly when its
//! canonical numerator is the zero polynomial.
//!
//! Variables come in three flavors:
//!
//! * **coordinates** of a chart, addressed by 0-based index and displayed
//!   with the names a [`ExprContext`] provides,
//! * **jet variables** `u<i>_<s>` (1-based coordinate `i`, derivative order
//!   `1..=4`, with `u<i>` as shorthand for order 1) tracking derivatives of a
//!   separated logarithmic profile along one coordinate,
//! * **parameters**: free named constants.

mod display;
mod frac;
mod parse;
mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use frac::EvalPoint;
pub(crate) use frac::DeriveVar;
use frac::{Frac, SubKey};
use num_bigint::BigInt;
pub(crate) use poly::{Atom, FuncKind, Monomial, Poly, Q};
pub use poly::MAX_JET_ORDER;

use crate::error::SymbolicError;

/// Chart and parameter names used for parsing and rendering expressions.
///
/// Identifier resolution during parsing tries, in order: chart coordinate
/// names, the jet-variable spelling `u<i>` / `u<i>_<s>`, then declared
/// parameter names. An identifier directly followed by `(` is a function
/// name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExprContext {
    pub chart: Vec<String>,
    pub params: Vec<String>,
}

impl ExprContext {
    pub fn new<S: Into<String>>(
        chart: impl IntoIterator<Item = S>,
        params: impl IntoIterator<Item = S>,
    ) -> Self {
        ExprContext {
            chart: chart.into_iter().map(Into::into).collect(),
            params: params.into_iter().map(Into::into).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.chart.len()
    }
}

/// An exact symbolic expression in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Expr(Arc<Frac>);

impl Expr {
    fn wrap(f: Frac) -> Expr {
        Expr(Arc::new(f))
    }

    pub(crate) fn frac(&self) -> &Frac {
        &self.0
    }

    // ---- constructors ----

    pub fn zero() -> Expr {
        Expr::wrap(Frac::zero())
    }

    pub fn one() -> Expr {
        Expr::wrap(Frac::one())
    }

    pub fn from_int(n: i64) -> Expr {
        Expr::wrap(Frac::constant(Q::from_integer(BigInt::from(n))))
    }

    /// Exact rational constant `num/den`.
    pub fn rational(num: i64, den: i64) -> Result<Expr, SymbolicError> {
        if den == 0 {
            return Err(SymbolicError::DivisionByZero);
        }
        Ok(Expr::wrap(Frac::constant(Q::new(
            BigInt::from(num),
            BigInt::from(den),
        ))))
    }

    pub(crate) fn from_q(q: Q) -> Expr {
        Expr::wrap(Frac::constant(q))
    }

    /// Coordinate variable by 0-based chart index.
    pub fn coord(index: usize) -> Expr {
        Expr::wrap(Frac::from_atom(Atom::Coord(index)))
    }

    /// Jet variable: `order`-th derivative of the separated profile along
    /// coordinate `coord` (0-based). Orders outside `1..=4` are rejected.
    pub fn jet(coord: usize, order: u8) -> Result<Expr, SymbolicError> {
        if order == 0 || order > MAX_JET_ORDER {
            return Err(SymbolicError::JetOrderOutOfRange(order));
        }
        Ok(Expr::wrap(Frac::from_atom(Atom::Jet { coord, order })))
    }

    pub fn param(name: &str) -> Expr {
        Expr::wrap(Frac::from_atom(Atom::Param(Arc::from(name))))
    }

    fn func(kind: FuncKind, arg: &Expr) -> Expr {
        Expr::wrap(Frac::from_atom(Atom::Func {
            kind,
            arg: Arc::new(arg.0.as_ref().clone()),
        }))
    }

    pub fn sin(&self) -> Expr {
        Expr::func(FuncKind::Sin, self)
    }

    pub fn cos(&self) -> Expr {
        Expr::func(FuncKind::Cos, self)
    }

    pub fn sinh(&self) -> Expr {
        Expr::func(FuncKind::Sinh, self)
    }

    pub fn cosh(&self) -> Expr {
        Expr::func(FuncKind::Cosh, self)
    }

    pub fn exp(&self) -> Expr {
        Expr::func(FuncKind::Exp, self)
    }

    pub fn sqrt(&self) -> Expr {
        Expr::func(FuncKind::Sqrt, self)
    }

    pub fn log(&self) -> Result<Expr, SymbolicError> {
        if self.is_zero() {
            return Err(SymbolicError::UndefinedValue { func: "log" });
        }
        Ok(Expr::func(FuncKind::Log, self))
    }

    // ---- arithmetic beyond the operator impls ----

    pub fn checked_div(&self, rhs: &Expr) -> Result<Expr, SymbolicError> {
        Ok(Expr::wrap(self.0.div(&rhs.0)?))
    }

    pub fn pow(&self, exponent: i32) -> Result<Expr, SymbolicError> {
        Ok(Expr::wrap(self.0.pow(i64::from(exponent))?))
    }

    // ---- predicates and inspection ----

    /// Canonical zero test: sound and complete on the supported class.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Semantic equality, decided as `(self - other).is_zero()`.
    pub fn equivalent(&self, other: &Expr) -> bool {
        if self.0 == other.0 {
            return true;
        }
        self.0.sub(&other.0).is_zero()
    }

    /// True when the expression is a rational constant.
    pub fn is_constant(&self) -> bool {
        self.0.is_rational()
    }

    /// True when no coordinate or jet variable occurs (parameters allowed).
    pub fn is_coordinate_free(&self) -> bool {
        !self.0.has_coordinate_like()
    }

    pub fn contains_jet(&self) -> bool {
        self.0.contains_jet()
    }

    /// Coordinates mentioned anywhere, through coordinate or jet variables.
    pub fn coords(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.0.collect_coords(&mut out);
        out
    }

    /// Coordinates mentioned through jet variables only.
    pub fn jet_coords(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.0.collect_jet_coords(&mut out);
        out
    }

    /// All jet variables mentioned, as (coordinate, order) pairs.
    pub fn jets(&self) -> BTreeSet<(usize, u8)> {
        fn walk(a: &Atom, out: &mut BTreeSet<(usize, u8)>) {
            match a {
                Atom::Jet { coord, order } => {
                    out.insert((*coord, *order));
                }
                Atom::Func { arg, .. } => arg.for_each_atom(&mut |inner| walk(inner, out)),
                Atom::Coord(_) | Atom::Param(_) => {}
            }
        }
        let mut out = BTreeSet::new();
        self.0.for_each_atom(&mut |a| walk(a, &mut out));
        out
    }

    /// Numerator of the canonical fraction, as an expression.
    pub(crate) fn numerator(&self) -> Expr {
        Expr::wrap(Frac::from_poly(self.0.num.clone()))
    }

    /// Additive split of the equation `self = 0` into parts each supported
    /// on at most one coordinate. The denominator is cleared first (sound
    /// for an equation), then terms group by coordinate support; a term
    /// touching two or more coordinates aborts with that coordinate set.
    /// Coordinate-free terms fold into the unique coordinate part when
    /// exactly one exists, otherwise they stay under `None`.
    pub fn split_by_coordinate(&self) -> Result<Vec<(Option<usize>, Expr)>, Vec<usize>> {
        let mut groups: BTreeMap<Option<usize>, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (mono, coeff) in &self.0.num.terms {
            let mut coords = BTreeSet::new();
            for (atom, _) in &mono.0 {
                atom.collect_coords(&mut coords);
            }
            let key = match coords.len() {
                0 => None,
                1 => coords.iter().next().copied(),
                _ => return Err(coords.into_iter().collect()),
            };
            groups
                .entry(key)
                .or_default()
                .push((mono.clone(), coeff.clone()));
        }
        if groups.contains_key(&None) && groups.len() == 2 {
            let free = groups.remove(&None).unwrap();
            groups.values_mut().next().unwrap().extend(free);
        }
        Ok(groups
            .into_iter()
            .map(|(key, terms)| (key, Expr::wrap(Frac::from_poly(Poly::from_terms(terms)))))
            .collect())
    }

    // ---- calculus ----

    /// Partial derivative by the coordinate with the given 0-based index.
    /// Expressions containing jet variables are rejected: their coordinate
    /// dependence is only defined through a lifted derivation, not a bare
    /// partial.
    pub fn differentiate(&self, coord: usize) -> Result<Expr, SymbolicError> {
        if self.contains_jet() {
            return Err(SymbolicError::DifferentiateJet);
        }
        Ok(self.d_coord(coord))
    }

    /// Formal partial by a coordinate, treating jet variables as constants.
    pub(crate) fn d_coord(&self, coord: usize) -> Expr {
        Expr::wrap(frac::derive(&self.0, DeriveVar::Coord(coord), None))
    }

    /// Formal partial by a jet variable.
    pub(crate) fn d_jet(&self, coord: usize, order: u8) -> Expr {
        Expr::wrap(frac::derive(&self.0, DeriveVar::Jet { coord, order }, None))
    }

    /// Formal partial with a parameter promotion rule: parameters for which
    /// `rule` returns Some are treated as unknown fields with the returned
    /// derivative instead of constants.
    pub(crate) fn derive_with(
        &self,
        var: DeriveVar,
        rule: &dyn Fn(&str) -> Option<Expr>,
    ) -> Expr {
        let lowered = |name: &str| rule(name).map(|e| e.0.as_ref().clone());
        Expr::wrap(frac::derive(&self.0, var, Some(&lowered)))
    }

    // ---- substitution and evaluation ----

    pub fn substitute(&self, subst: &Substitution) -> Result<Expr, SymbolicError> {
        if subst.map.is_empty() {
            return Ok(self.clone());
        }
        Ok(Expr::wrap(frac::substitute(&self.0, &subst.map)?))
    }

    pub fn evaluate(&self, point: &EvalPoint) -> Result<f64, SymbolicError> {
        frac::evaluate(&self.0, point)
    }

    // ---- text ----

    /// Parse an expression. See [`ExprContext`] for identifier resolution.
    pub fn parse(text: &str, ctx: &ExprContext) -> Result<Expr, SymbolicError> {
        parse::parse(text, ctx)
    }

    /// Render to text that re-parses to an equal expression under the same
    /// context.
    pub fn to_text(&self, ctx: &ExprContext) -> String {
        display::render(&self.0, ctx)
    }
}

/// A set of simultaneous variable bindings for [`Expr::substitute`].
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    map: BTreeMap<SubKey, Frac>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn bind_coord(&mut self, index: usize, value: &Expr) -> &mut Self {
        self.map
            .insert(SubKey::Coord(index), value.0.as_ref().clone());
        self
    }

    pub fn bind_jet(
        &mut self,
        coord: usize,
        order: u8,
        value: &Expr,
    ) -> Result<&mut Self, SymbolicError> {
        if order == 0 || order > MAX_JET_ORDER {
            return Err(SymbolicError::JetOrderOutOfRange(order));
        }
        self.map
            .insert(SubKey::Jet { coord, order }, value.0.as_ref().clone());
        Ok(self)
    }

    pub fn bind_param(&mut self, name: &str, value: &Expr) -> &mut Self {
        self.map
            .insert(SubKey::Param(Arc::from(name)), value.0.as_ref().clone());
        self
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $frac_method:ident) => {
        impl $trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::wrap(self.0.$frac_method(&rhs.0))
            }
        }
        impl $trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::wrap(self.0.neg())
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

#[cfg(test)]
mod tests;
