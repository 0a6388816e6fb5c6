//! Text rendering of canonical forms.
//!
//! Output re-parses under the same [`ExprContext`] to a structurally equal
//! expression: division is left-associative in the grammar, so a fraction is
//! emitted as the numerator (parenthesized when it is a sum) followed by one
//! `/factor` segment per denominator factor.

use num_traits::{One, Signed};

use super::frac::Frac;
use super::poly::{Atom, Monomial, Poly, Q};
use super::ExprContext;

pub(crate) fn render(f: &Frac, ctx: &ExprContext) -> String {
    if f.num.is_zero() {
        return "0".to_string();
    }
    let mut out = if !f.den.is_empty() && f.num.terms.len() > 1 {
        format!("({})", poly_str(&f.num, ctx))
    } else {
        poly_str(&f.num, ctx)
    };
    for (p, k) in &f.den {
        out.push('/');
        out.push_str(&den_factor_str(p, *k, ctx));
    }
    out
}

fn den_factor_str(p: &Poly, k: u32, ctx: &ExprContext) -> String {
    let single_atom = p.terms.len() == 1
        && p.terms[0].1.is_one()
        && p.terms[0].0 .0.len() == 1
        && p.terms[0].0 .0[0].1 == 1;
    let base = if single_atom {
        atom_str(&p.terms[0].0 .0[0].0, ctx)
    } else {
        format!("({})", poly_str(p, ctx))
    };
    if k > 1 {
        format!("{base}^{k}")
    } else {
        base
    }
}

fn poly_str(p: &Poly, ctx: &ExprContext) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms.iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&term_str(m, &c.abs(), ctx));
    }
    out
}

fn term_str(m: &Monomial, c: &Q, ctx: &ExprContext) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() || m.is_unit() {
        if c.denom().is_one() {
            parts.push(c.numer().to_string());
        } else {
            parts.push(format!("{}/{}", c.numer(), c.denom()));
        }
    }
    for (a, e) in &m.0 {
        let s = atom_str(a, ctx);
        if *e > 1 {
            parts.push(format!("{s}^{e}"));
        } else {
            parts.push(s);
        }
    }
    parts.join("*")
}

fn atom_str(a: &Atom, ctx: &ExprContext) -> String {
    match a {
        Atom::Coord(i) => ctx
            .chart
            .get(*i)
            .cloned()
            .unwrap_or_else(|| format!("x{}", i + 1)),
        Atom::Jet { coord, order } => {
            if *order == 1 {
                format!("u{}", coord + 1)
            } else {
                format!("u{}_{}", coord + 1, order)
            }
        }
        Atom::Param(name) => name.to_string(),
        Atom::Func { kind, arg } => format!("{}({})", kind.name(), render(arg, ctx)),
    }
}
