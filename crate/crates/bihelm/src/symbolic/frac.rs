//! Canonical rational normal form.
//!
//! A [`Frac`] is an expanded numerator polynomial over a multiset of
//! primitive, non-constant denominator factors. All arithmetic funnels
//! through [`Frac::normalize`], which
//!
//! 1. applies the directed transcendental rewrites
//!    (sin² -> 1 - cos², sinh² -> cosh² - 1, exp(a)·exp(b) -> exp(a+b),
//!    sqrt(a)² -> a, constant folding at special points),
//! 2. splits single-atom factors out of denominator factors and reduces each
//!    factor to primitive form (integer content 1, positive leading
//!    coefficient), folding the content into the numerator coefficients,
//! 3. cancels by repeated exact trial division of the numerator by each
//!    denominator factor.
//!
//! Within this class a fraction is zero iff its numerator is the zero
//! polynomial, so `is_zero` is sound and complete.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Atom, FuncKind, Monomial, Poly, Q};
use crate::error::SymbolicError;

/// Iteration cap for the rewrite fixpoint; pipeline expressions settle in a
/// few passes, the cap guards against a non-terminating rewrite interaction.
const REWRITE_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) struct Frac {
    pub num: Poly,
    /// Distinct primitive non-constant factors with multiplicities, sorted.
    pub den: Vec<(Poly, u32)>,
}

impl Frac {
    pub fn zero() -> Self {
        Frac {
            num: Poly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Frac {
            num: Poly::one(),
            den: Vec::new(),
        }
    }

    pub fn constant(q: Q) -> Self {
        Frac {
            num: Poly::constant(q),
            den: Vec::new(),
        }
    }

    pub fn from_atom(a: Atom) -> Self {
        Frac {
            num: Poly::from_atom(a),
            den: Vec::new(),
        }
        .normalized()
    }

    pub fn from_poly(p: Poly) -> Self {
        Frac {
            num: p,
            den: Vec::new(),
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.den.is_empty() && self.num.is_constant()
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn contains_jet(&self) -> bool {
        let mut found = false;
        self.for_each_atom(&mut |a| found |= a.contains_jet());
        found
    }

    pub fn has_coordinate_like(&self) -> bool {
        let mut found = false;
        self.for_each_atom(&mut |a| found |= a.is_coordinate_like());
        found
    }

    pub fn collect_coords(&self, out: &mut std::collections::BTreeSet<usize>) {
        self.for_each_atom(&mut |a| a.collect_coords(out));
    }

    pub fn collect_jet_coords(&self, out: &mut std::collections::BTreeSet<usize>) {
        self.for_each_atom(&mut |a| a.collect_jet_coords(out));
    }

    pub fn for_each_atom(&self, f: &mut impl FnMut(&Atom)) {
        self.num.for_each_atom(f);
        for (p, _) in &self.den {
            p.for_each_atom(f);
        }
    }

    // ---- arithmetic ----

    pub fn add(&self, other: &Frac) -> Frac {
        // union denominator: per factor the max multiplicity
        let mut union: BTreeMap<Poly, u32> = BTreeMap::new();
        for (p, k) in self.den.iter().chain(other.den.iter()) {
            let e = union.entry(p.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
        let mut num_a = self.num.clone();
        let mut num_b = other.num.clone();
        for (p, k) in &union {
            let ka = self.den.iter().find(|(q, _)| q == p).map_or(0, |(_, k)| *k);
            let kb = other
                .den
                .iter()
                .find(|(q, _)| q == p)
                .map_or(0, |(_, k)| *k);
            if *k > ka {
                num_a = num_a.mul(&p.pow(*k - ka));
            }
            if *k > kb {
                num_b = num_b.mul(&p.pow(*k - kb));
            }
        }
        Frac {
            num: num_a.add(&num_b),
            den: union.into_iter().collect(),
        }
        .normalized()
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Frac) -> Frac {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        if self.is_zero() || other.is_zero() {
            return Frac::zero();
        }
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        for (p, k) in self.den.iter().chain(other.den.iter()) {
            *den.entry(p.clone()).or_insert(0) += *k;
        }
        Frac {
            num: self.num.mul(&other.num),
            den: den.into_iter().collect(),
        }
        .normalized()
    }

    pub fn recip(&self) -> Result<Frac, SymbolicError> {
        if self.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        // numerator of the result: product of the old denominator factors
        let mut num = Poly::one();
        for (p, k) in &self.den {
            num = num.mul(&p.pow(*k));
        }
        // old numerator becomes denominator material
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        let (content, prim) = self.num.content_primitive();
        num = num.scale(&content.recip());
        // split off single-atom factors so the factor vocabulary stays fine-grained
        let mono = prim.monomial_content();
        let mut rest = prim;
        if !mono.is_unit() {
            let m_poly = Poly {
                terms: vec![(mono.clone(), Q::one())],
            };
            rest = rest
                .exact_div(&m_poly)
                .expect("monomial content divides its polynomial");
            for (a, e) in mono.0 {
                *den.entry(Poly::from_atom(a)).or_insert(0) += e;
            }
        }
        if !rest.is_constant() {
            *den.entry(rest.clone()).or_insert(0) += 1;
        } else if let Some(c) = rest.as_constant() {
            // constant residue (content already removed means c == 1)
            debug_assert!(c.is_one());
        }
        Ok(Frac {
            num,
            den: den.into_iter().collect(),
        }
        .normalized())
    }

    pub fn div(&self, other: &Frac) -> Result<Frac, SymbolicError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: i64) -> Result<Frac, SymbolicError> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let e = u32::try_from(e).map_err(|_| SymbolicError::ExponentOverflow)?;
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        for (p, k) in &self.den {
            *den.entry(p.clone()).or_insert(0) += *k * e;
        }
        Ok(Frac {
            num: self.num.pow(e),
            den: den.into_iter().collect(),
        }
        .normalized())
    }

    // ---- canonicalization ----

    pub fn normalized(self) -> Frac {
        let mut cur = self;
        for _ in 0..REWRITE_CAP {
            cur = cur.normalize_once();
            match cur.rewrite_pass() {
                Some(next) => cur = next,
                None => return cur,
            }
        }
        panic!("rewrite fixpoint not reached after {REWRITE_CAP} passes");
    }

    /// Denominator primitivization, factor splitting, trial-division
    /// cancellation. No transcendental rewrites.
    fn normalize_once(self) -> Frac {
        let mut num = self.num;
        if num.is_zero() {
            return Frac::zero();
        }
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        for (p, k) in self.den {
            if k == 0 {
                continue;
            }
            let (content, prim) = p.content_primitive();
            if !content.is_one() {
                num = num.scale(&content.recip().pow(k as i32));
            }
            if prim.is_constant() {
                continue; // content fully absorbed
            }
            let mono = prim.monomial_content();
            let mut rest = prim;
            if !mono.is_unit() {
                let m_poly = Poly {
                    terms: vec![(mono.clone(), Q::one())],
                };
                rest = rest
                    .exact_div(&m_poly)
                    .expect("monomial content divides its polynomial");
                for (a, e) in mono.0 {
                    *den.entry(Poly::from_atom(a)).or_insert(0) += e * k;
                }
            }
            if !rest.is_constant() {
                *den.entry(rest).or_insert(0) += k;
            }
        }
        // cancel numerator against factors until a full pass makes no progress
        loop {
            let mut progress = false;
            for (p, k) in den.iter_mut() {
                while *k > 0 {
                    match num.exact_div(p) {
                        Some(q) => {
                            num = q;
                            *k -= 1;
                            progress = true;
                            if num.is_constant() {
                                break;
                            }
                        }
                        None => break,
                    }
                }
            }
            den.retain(|_, k| *k > 0);
            if !progress || num.is_zero() {
                break;
            }
        }
        if num.is_zero() {
            return Frac::zero();
        }
        Frac {
            num,
            den: den.into_iter().collect(),
        }
    }

    /// One pass of the directed rewrite list over numerator and denominator
    /// factors. Returns None when nothing changed.
    fn rewrite_pass(&self) -> Option<Frac> {
        let num_rw = rewrite_poly(&self.num);
        let mut den_rw: Vec<Option<Frac>> = Vec::with_capacity(self.den.len());
        let mut any = num_rw.is_some();
        for (p, _) in &self.den {
            let r = rewrite_poly(p);
            any |= r.is_some();
            den_rw.push(r);
        }
        if !any {
            return None;
        }
        let mut acc = match num_rw {
            Some(f) => f,
            None => Frac {
                num: self.num.clone(),
                den: Vec::new(),
            },
        };
        for ((p, k), rw) in self.den.iter().zip(den_rw) {
            let base = match rw {
                Some(f) => f,
                None => Frac {
                    num: p.clone(),
                    den: Vec::new(),
                },
            };
            let powed = base
                .pow(-(i64::from(*k)))
                .expect("denominator factor cannot rewrite to zero");
            acc = acc.mul(&powed);
        }
        Some(acc)
    }
}

/// Rewrite a polynomial; None when already in rewritten form.
fn rewrite_poly(p: &Poly) -> Option<Frac> {
    let mut unchanged: Vec<(Monomial, Q)> = Vec::new();
    let mut changed: Vec<Frac> = Vec::new();
    for (m, c) in &p.terms {
        match rewrite_monomial(m) {
            None => unchanged.push((m.clone(), c.clone())),
            Some(f) => changed.push(f.mul(&Frac::constant(c.clone()))),
        }
    }
    if changed.is_empty() {
        return None;
    }
    let mut acc = Frac {
        num: Poly::from_terms(unchanged),
        den: Vec::new(),
    };
    for f in changed {
        acc = acc.add(&f);
    }
    Some(acc)
}

/// Rewrite one monomial; None when no rule applies.
fn rewrite_monomial(m: &Monomial) -> Option<Frac> {
    // detect a redex first so untouched monomials stay allocation-free
    let mut exp_atoms = 0usize;
    let mut has_redex = false;
    for (a, e) in &m.0 {
        if let Atom::Func { kind, arg } = a {
            match kind {
                FuncKind::Sin | FuncKind::Sinh | FuncKind::Sqrt if *e >= 2 => has_redex = true,
                FuncKind::Exp => {
                    exp_atoms += 1;
                    if *e >= 2 {
                        has_redex = true;
                    }
                }
                _ => {}
            }
            if fold_constant(*kind, arg).is_some() {
                has_redex = true;
            }
        }
    }
    if exp_atoms >= 2 {
        has_redex = true;
    }
    if !has_redex {
        return None;
    }

    let mut acc = Frac::one();
    let mut plain = Monomial::unit();
    let mut exp_arg: Option<Frac> = None;
    for (a, e) in &m.0 {
        let Atom::Func { kind, arg } = a else {
            plain = plain.mul(&Monomial(vec![(a.clone(), *e)]));
            continue;
        };
        if let Some(v) = fold_constant(*kind, arg) {
            acc = acc.mul(&v.pow(i64::from(*e)).expect("folded constant power"));
            continue;
        }
        match kind {
            FuncKind::Sin | FuncKind::Sinh if *e >= 2 => {
                let half = *e / 2;
                let parity = *e % 2;
                let cok = if *kind == FuncKind::Sin {
                    FuncKind::Cos
                } else {
                    FuncKind::Cosh
                };
                let co = Poly::from_atom(Atom::Func {
                    kind: cok,
                    arg: arg.clone(),
                });
                // sin² = 1 - cos², sinh² = cosh² - 1
                let sq = if *kind == FuncKind::Sin {
                    Poly::one().sub(&co.mul(&co))
                } else {
                    co.mul(&co).sub(&Poly::one())
                };
                acc = acc.mul(&Frac::from_poly(sq.pow(half)));
                if parity == 1 {
                    plain = plain.mul(&Monomial::atom(a.clone()));
                }
            }
            FuncKind::Sqrt if *e >= 2 => {
                let half = *e / 2;
                let parity = *e % 2;
                acc = acc.mul(
                    &arg.as_ref()
                        .clone()
                        .pow(i64::from(half))
                        .expect("sqrt argument power"),
                );
                if parity == 1 {
                    plain = plain.mul(&Monomial::atom(a.clone()));
                }
            }
            FuncKind::Exp => {
                let scaled = arg
                    .as_ref()
                    .mul(&Frac::constant(Q::from_integer(BigInt::from(*e))));
                exp_arg = Some(match exp_arg {
                    None => scaled,
                    Some(prev) => prev.add(&scaled),
                });
            }
            _ => {
                plain = plain.mul(&Monomial(vec![(a.clone(), *e)]));
            }
        }
    }
    if let Some(arg) = exp_arg {
        if !arg.is_zero() {
            plain = plain.mul(&Monomial::atom(Atom::Func {
                kind: FuncKind::Exp,
                arg: Arc::new(arg),
            }));
        }
    }
    let plain_frac = Frac {
        num: Poly {
            terms: vec![(plain, Q::one())],
        },
        den: Vec::new(),
    };
    Some(acc.mul(&plain_frac))
}

/// Constant folding for function atoms with rational arguments.
fn fold_constant(kind: FuncKind, arg: &Frac) -> Option<Frac> {
    let q = arg.as_rational()?;
    match kind {
        FuncKind::Sin | FuncKind::Sinh if q.is_zero() => Some(Frac::zero()),
        FuncKind::Cos | FuncKind::Cosh | FuncKind::Exp if q.is_zero() => Some(Frac::one()),
        FuncKind::Log if q.is_one() => Some(Frac::zero()),
        FuncKind::Sqrt => {
            if q.is_zero() {
                return Some(Frac::zero());
            }
            if q.is_negative() {
                return None;
            }
            let ns = q.numer().sqrt();
            let ds = q.denom().sqrt();
            if &(&ns * &ns) == q.numer() && &(&ds * &ds) == q.denom() {
                Some(Frac::constant(Q::new(ns, ds)))
            } else {
                None
            }
        }
        _ => None,
    }
}

// ---- calculus, substitution, evaluation ----

/// Differentiation direction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum DeriveVar {
    Coord(usize),
    Jet { coord: usize, order: u8 },
}

/// Derivative of a fraction. `param_rule` optionally promotes parameters to
/// formal fields with known derivatives (used by the independent
/// double-application construction); parameters default to constants.
pub(crate) fn derive(
    f: &Frac,
    var: DeriveVar,
    param_rule: Option<&dyn Fn(&str) -> Option<Frac>>,
) -> Frac {
    let mut acc = derive_poly(&f.num, var, param_rule);
    if f.den.is_empty() {
        return acc;
    }
    // d(n * prod p^-k) = dn * prod p^-k + n * sum_j (-k_j) dp_j p_j^-(k_j+1) prod_{i != j} p_i^-k_i
    let den_frac = |extra: &[(usize, u32)]| -> Frac {
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        for (idx, (p, k)) in f.den.iter().enumerate() {
            let bump: u32 = extra
                .iter()
                .filter(|(i, _)| *i == idx)
                .map(|(_, b)| *b)
                .sum();
            *den.entry(p.clone()).or_insert(0) += k + bump;
        }
        Frac {
            num: Poly::one(),
            den: den.into_iter().collect(),
        }
    };
    acc = acc.mul(&den_frac(&[]).normalized());
    for (j, (p, k)) in f.den.iter().enumerate() {
        let dp = derive_poly(p, var, param_rule);
        if dp.is_zero() {
            continue;
        }
        let factor = Frac::from_poly(f.num.clone())
            .mul(&Frac::constant(-Q::from_integer(BigInt::from(*k))))
            .mul(&dp)
            .mul(&den_frac(&[(j, 1)]).normalized());
        acc = acc.add(&factor);
    }
    acc
}

fn derive_poly(
    p: &Poly,
    var: DeriveVar,
    param_rule: Option<&dyn Fn(&str) -> Option<Frac>>,
) -> Frac {
    let mut acc = Frac::zero();
    for (m, c) in &p.terms {
        for (idx, (a, e)) in m.0.iter().enumerate() {
            let da = derive_atom(a, var, param_rule);
            if da.is_zero() {
                continue;
            }
            // c * e * a^(e-1) * da * rest
            let mut rest = Vec::new();
            for (jdx, (b, eb)) in m.0.iter().enumerate() {
                if jdx == idx {
                    if *e > 1 {
                        rest.push((b.clone(), *eb - 1));
                    }
                } else {
                    rest.push((b.clone(), *eb));
                }
            }
            let base = Frac {
                num: Poly {
                    terms: vec![(Monomial(rest), c * Q::from_integer(BigInt::from(*e)))],
                },
                den: Vec::new(),
            };
            acc = acc.add(&base.mul(&da));
        }
    }
    acc
}

fn derive_atom(
    a: &Atom,
    var: DeriveVar,
    param_rule: Option<&dyn Fn(&str) -> Option<Frac>>,
) -> Frac {
    match (a, var) {
        (Atom::Coord(i), DeriveVar::Coord(j)) if *i == j => Frac::one(),
        (Atom::Coord(_), _) => Frac::zero(),
        (Atom::Jet { coord, order }, DeriveVar::Jet { coord: c, order: s })
            if *coord == c && *order == s =>
        {
            Frac::one()
        }
        (Atom::Jet { .. }, _) => Frac::zero(),
        (Atom::Param(name), _) => match param_rule {
            Some(rule) => rule(name).unwrap_or_else(Frac::zero),
            None => Frac::zero(),
        },
        (Atom::Func { kind, arg }, _) => {
            let darg = derive(arg, var, param_rule);
            if darg.is_zero() {
                return Frac::zero();
            }
            let outer = match kind {
                FuncKind::Sin => Frac::from_atom(Atom::Func {
                    kind: FuncKind::Cos,
                    arg: arg.clone(),
                }),
                FuncKind::Cos => Frac::from_atom(Atom::Func {
                    kind: FuncKind::Sin,
                    arg: arg.clone(),
                })
                .neg(),
                FuncKind::Sinh => Frac::from_atom(Atom::Func {
                    kind: FuncKind::Cosh,
                    arg: arg.clone(),
                }),
                FuncKind::Cosh => Frac::from_atom(Atom::Func {
                    kind: FuncKind::Sinh,
                    arg: arg.clone(),
                }),
                FuncKind::Exp => Frac::from_atom(Atom::Func {
                    kind: FuncKind::Exp,
                    arg: arg.clone(),
                }),
                FuncKind::Log => arg
                    .as_ref()
                    .recip()
                    .expect("log argument is nonzero in the supported class"),
                FuncKind::Sqrt => {
                    // 1 / (2 sqrt(arg))
                    let s = Frac::from_atom(Atom::Func {
                        kind: FuncKind::Sqrt,
                        arg: arg.clone(),
                    });
                    Frac::constant(Q::new(BigInt::one(), BigInt::from(2)))
                        .div(&s)
                        .expect("sqrt atom is nonzero")
                }
            };
            outer.mul(&darg)
        }
    }
}

/// Substitution key: anything bindable by name or index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum SubKey {
    Coord(usize),
    Jet { coord: usize, order: u8 },
    Param(Arc<str>),
}

impl SubKey {
    fn matches(&self, a: &Atom) -> bool {
        match (self, a) {
            (SubKey::Coord(i), Atom::Coord(j)) => i == j,
            (
                SubKey::Jet { coord, order },
                Atom::Jet {
                    coord: c,
                    order: s,
                },
            ) => coord == c && order == s,
            (SubKey::Param(n), Atom::Param(m)) => n == m,
            _ => false,
        }
    }
}

/// Simultaneous substitution. Errors when a binding drives a denominator to
/// zero or puts a function outside its domain.
pub(crate) fn substitute(
    f: &Frac,
    bindings: &BTreeMap<SubKey, Frac>,
) -> Result<Frac, SymbolicError> {
    let mut acc = substitute_poly(&f.num, bindings)?;
    for (p, k) in &f.den {
        let sub = substitute_poly(p, bindings)?;
        acc = acc.mul(&sub.pow(-(i64::from(*k)))?);
    }
    Ok(acc)
}

fn substitute_poly(p: &Poly, bindings: &BTreeMap<SubKey, Frac>) -> Result<Frac, SymbolicError> {
    let mut acc = Frac::zero();
    for (m, c) in &p.terms {
        let mut term = Frac::constant(c.clone());
        for (a, e) in &m.0 {
            let image = substitute_atom(a, bindings)?;
            term = term.mul(&image.pow(i64::from(*e))?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn substitute_atom(a: &Atom, bindings: &BTreeMap<SubKey, Frac>) -> Result<Frac, SymbolicError> {
    for (key, image) in bindings {
        if key.matches(a) {
            return Ok(image.clone());
        }
    }
    if let Atom::Func { kind, arg } = a {
        let sub = substitute(arg, bindings)?;
        if &sub != arg.as_ref() {
            if *kind == FuncKind::Log && sub.is_zero() {
                return Err(SymbolicError::UndefinedValue { func: "log" });
            }
            return Ok(Frac::from_atom(Atom::Func {
                kind: *kind,
                arg: Arc::new(sub),
            }));
        }
    }
    Ok(Frac::from_atom(a.clone()))
}

/// Numeric bindings for evaluation.
#[derive(Clone, Debug, Default)]
pub struct EvalPoint {
    pub coords: BTreeMap<usize, f64>,
    pub jets: BTreeMap<(usize, u8), f64>,
    pub params: BTreeMap<String, f64>,
}

pub(crate) fn evaluate(f: &Frac, point: &EvalPoint) -> Result<f64, SymbolicError> {
    let num = evaluate_poly(&f.num, point)?;
    let mut den = 1.0_f64;
    for (p, k) in &f.den {
        let v = evaluate_poly(p, point)?;
        den *= v.powi(*k as i32);
    }
    if den == 0.0 {
        return Err(SymbolicError::DivisionByZero);
    }
    let out = num / den;
    if !out.is_finite() {
        return Err(SymbolicError::NonFiniteResult);
    }
    Ok(out)
}

fn evaluate_poly(p: &Poly, point: &EvalPoint) -> Result<f64, SymbolicError> {
    let mut acc = 0.0_f64;
    for (m, c) in &p.terms {
        let mut t = c.to_f64().ok_or(SymbolicError::NonFiniteResult)?;
        for (a, e) in &m.0 {
            t *= evaluate_atom(a, point)?.powi(*e as i32);
        }
        acc += t;
    }
    if !acc.is_finite() {
        return Err(SymbolicError::NonFiniteResult);
    }
    Ok(acc)
}

fn evaluate_atom(a: &Atom, point: &EvalPoint) -> Result<f64, SymbolicError> {
    match a {
        Atom::Coord(i) => point
            .coords
            .get(i)
            .copied()
            .ok_or_else(|| SymbolicError::UnboundSymbol(format!("coordinate #{}", i + 1))),
        Atom::Jet { coord, order } => point
            .jets
            .get(&(*coord, *order))
            .copied()
            .ok_or_else(|| SymbolicError::UnboundSymbol(format!("u{}_{}", coord + 1, order))),
        Atom::Param(name) => point
            .params
            .get(name.as_ref())
            .copied()
            .ok_or_else(|| SymbolicError::UnboundSymbol(name.to_string())),
        Atom::Func { kind, arg } => {
            let x = evaluate(arg, point)?;
            let v = match kind {
                FuncKind::Sin => x.sin(),
                FuncKind::Cos => x.cos(),
                FuncKind::Sinh => x.sinh(),
                FuncKind::Cosh => x.cosh(),
                FuncKind::Exp => x.exp(),
                FuncKind::Log => x.ln(),
                FuncKind::Sqrt => x.sqrt(),
            };
            if !v.is_finite() {
                return Err(SymbolicError::NonFiniteResult);
            }
            Ok(v)
        }
    }
}
