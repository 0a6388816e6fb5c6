//! Sparse multivariate polynomials over exact rationals.
//!
//! Variables ("atoms") are coordinates, jet variables, named parameters and
//! transcendental function applications. Monomials are ordered by graded
//! lexicographic order, which is multiplicative and therefore makes the
//! leading-term exact-division algorithm in [`Poly::exact_div`] complete for
//! single divisors.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::frac::Frac;

pub(crate) type Q = BigRational;

/// Maximum jet derivative order. Terms of the separated quantity involve
/// derivatives of u up to 4th order only; anything above is a programming
/// error.
pub const MAX_JET_ORDER: u8 = 4;

/// Elementary function heads supported by the expression class.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FuncKind {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Log,
    Sqrt,
}

impl FuncKind {
    pub fn name(self) -> &'static str {
        match self {
            FuncKind::Sin => "sin",
            FuncKind::Cos => "cos",
            FuncKind::Sinh => "sinh",
            FuncKind::Cosh => "cosh",
            FuncKind::Exp => "exp",
            FuncKind::Log => "log",
            FuncKind::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => FuncKind::Sin,
            "cos" => FuncKind::Cos,
            "sinh" => FuncKind::Sinh,
            "cosh" => FuncKind::Cosh,
            "exp" => FuncKind::Exp,
            "log" => FuncKind::Log,
            "sqrt" => FuncKind::Sqrt,
            _ => return None,
        })
    }
}

/// An indivisible symbolic variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum Atom {
    /// Coordinate q^i (0-based chart index).
    Coord(usize),
    /// Jet variable u_i^(s), `coord` 0-based, 1 <= order <= 4.
    Jet { coord: usize, order: u8 },
    /// Named parameter (separation constants, lambda, metric parameters).
    Param(Arc<str>),
    /// Function application; the argument is a canonical fraction.
    Func { kind: FuncKind, arg: Arc<Frac> },
}

impl Atom {
    pub fn is_coordinate_like(&self) -> bool {
        match self {
            Atom::Coord(_) | Atom::Jet { .. } => true,
            Atom::Param(_) => false,
            Atom::Func { arg, .. } => arg.has_coordinate_like(),
        }
    }

    pub fn contains_jet(&self) -> bool {
        match self {
            Atom::Jet { .. } => true,
            Atom::Coord(_) | Atom::Param(_) => false,
            Atom::Func { arg, .. } => arg.contains_jet(),
        }
    }

    /// Coordinates mentioned anywhere in the atom (as coordinates or jets).
    pub fn collect_coords(&self, out: &mut std::collections::BTreeSet<usize>) {
        match self {
            Atom::Coord(i) => {
                out.insert(*i);
            }
            Atom::Jet { coord, .. } => {
                out.insert(*coord);
            }
            Atom::Param(_) => {}
            Atom::Func { arg, .. } => arg.collect_coords(out),
        }
    }

    pub fn collect_jet_coords(&self, out: &mut std::collections::BTreeSet<usize>) {
        match self {
            Atom::Jet { coord, .. } => {
                out.insert(*coord);
            }
            Atom::Coord(_) | Atom::Param(_) => {}
            Atom::Func { arg, .. } => arg.collect_jet_coords(out),
        }
    }
}

/// Power product of atoms; factors sorted ascending by atom, exponents >= 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Monomial(pub Vec<(Atom, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Exact quotient self / other, or None when some exponent underflows.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for (a, e) in &other.0 {
            loop {
                if i >= self.0.len() {
                    return None;
                }
                match self.0[i].0.cmp(a) {
                    Ordering::Less => {
                        out.push(self.0[i].clone());
                        i += 1;
                    }
                    Ordering::Equal => {
                        if self.0[i].1 < *e {
                            return None;
                        }
                        if self.0[i].1 > *e {
                            out.push((self.0[i].0.clone(), self.0[i].1 - *e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Monomial(out))
    }

    /// Componentwise gcd (min of exponents over shared atoms).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1.min(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }
}

// Graded lexicographic order: total degree first, then on the first atom
// (ascending) where exponents differ, the larger exponent wins. Monomial
// orders of this shape are compatible with multiplication, which the exact
// division algorithm relies on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                // self has a factor on a smaller atom that other lacks
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    match self.0[i].1.cmp(&other.0[j].1) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        match (i < self.0.len(), j < other.0.len()) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial: term list sorted descending by monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) struct Poly {
    pub terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(q: Q) -> Self {
        if q.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::unit(), q)],
            }
        }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn from_atom(a: Atom) -> Self {
        Poly {
            terms: vec![(Monomial::atom(a), Q::one())],
        }
    }

    pub fn from_terms(mut terms: Vec<(Monomial, Q)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        // merge equal monomials
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push((m, c));
        }
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_unit())
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc: std::collections::BTreeMap<Monomial, Q> = std::collections::BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                let e = acc.entry(m).or_insert_with(Q::zero);
                *e += c;
            }
        }
        let mut terms: Vec<(Monomial, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse(); // BTreeMap ascending -> descending
        Poly { terms }
    }

    pub fn scale(&self, q: &Q) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division: Some(q) with self = q * d, or None when not divisible.
    /// For a single divisor the leading-term algorithm is complete: if
    /// self = q*d then every intermediate remainder is still divisible by d
    /// and its leading term is divisible by LT(d).
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = &d.terms[0];
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Q)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = &rem.terms[0];
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            let t = Poly {
                terms: vec![(qm.clone(), qc.clone())],
            };
            rem = rem.sub(&t.mul(d));
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(quot))
    }

    /// Rational content c > 0 such that self = c * primitive-part with integer
    /// coefficients of gcd 1 and positive leading coefficient. Returns
    /// (signed content, primitive part); zero polynomial yields (1, 0).
    pub fn content_primitive(&self) -> (Q, Poly) {
        if self.is_zero() {
            return (Q::one(), Poly::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = Q::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        let prim = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * &inv))
                .collect(),
        };
        (content, prim)
    }

    /// Monomial gcd of all terms (for splitting single-atom denominator
    /// factors out of a polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::unit();
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_unit() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn for_each_atom(&self, f: &mut impl FnMut(&Atom)) {
        for (m, _) in &self.terms {
            for (a, _) in &m.0 {
                f(a);
            }
        }
    }
}
