//! Profile relations and the polynomial reduction used for conformally
//! flat charts of the form g = (f(q¹) + g(q²))(dq¹² + dq²²).
//!
//! A flat profile pair satisfies f″ = kf + D and f′² = kf² + 2Df + Λ with
//! constants k, D, Λ (and mirrored g-relations with −k and its own Λ̃).
//! The reduction eliminates f″ and f′ from a rational equation through
//! those relations, clears denominators, and returns the coefficients of
//! the resulting polynomial in f — which must vanish individually because
//! powers of f are linearly independent.

use num_traits::One;

use crate::error::SeparationError;
use crate::symbolic::{DeriveVar, Expr, Q, Substitution};

/// Constants of the profile relations f″ = kf + D, f′² = kf² + 2Df + Λ.
#[derive(Debug, Clone)]
pub struct LiouvilleRelations {
    pub k: Expr,
    pub d: Expr,
    pub lam: Expr,
}

/// The free constants appearing in the reduced fourth-order equation, as
/// parameter expressions.
#[derive(Debug, Clone)]
pub struct LiouvilleConstants {
    pub c: Expr,
    pub c1: Expr,
    pub c2: Expr,
    pub d1: Expr,
    pub d2: Expr,
    pub alpha: Expr,
    pub beta: Expr,
    pub gamma: Expr,
    pub delta: Expr,
}

impl LiouvilleConstants {
    pub fn standard() -> Self {
        LiouvilleConstants {
            c: Expr::param("C"),
            c1: Expr::param("C1"),
            c2: Expr::param("C2"),
            d1: Expr::param("D1"),
            d2: Expr::param("D2"),
            alpha: Expr::param("alpha"),
            beta: Expr::param("beta"),
            gamma: Expr::param("gamma"),
            delta: Expr::param("delta"),
        }
    }
}

/// Extract the profile constants from a concrete one-coordinate profile:
/// k = f‴/f′, D = f″ − kf, Λ = f′² − kf² − 2Df, each of which must be
/// coordinate-free.
pub fn liouville_relations(f: &Expr) -> Result<LiouvilleRelations, SeparationError> {
    let not = |msg: &str| SeparationError::ProfileNotLiouville(msg.to_string());
    if f.contains_jet() {
        return Err(not("profile contains jet variables"));
    }
    let coords = f.coords();
    if coords.len() > 1 {
        return Err(not("profile depends on more than one coordinate"));
    }
    let c = coords.iter().next().copied().unwrap_or(0);
    let fp = f.d_coord(c);
    if fp.is_zero() {
        return Err(not("profile derivative vanishes identically"));
    }
    let fpp = fp.d_coord(c);
    let fppp = fpp.d_coord(c);
    let k = fppp.checked_div(&fp)?;
    if !k.is_coordinate_free() {
        return Err(not("third-to-first derivative ratio is not constant"));
    }
    let d = &fpp - &k * f;
    if !d.is_coordinate_free() {
        return Err(not("second derivative is not affine in the profile"));
    }
    let two = Expr::from_int(2);
    let lam = &fp * &fp - &k * f * f - &two * &d * f;
    if !lam.is_coordinate_free() {
        return Err(not("squared derivative is not quadratic in the profile"));
    }
    Ok(LiouvilleRelations { k, d, lam })
}

impl LiouvilleRelations {
    /// Λ̃ of the mirrored relations g″ = −kg + D, g′² = −kg² + 2Dg + Λ̃,
    /// after verifying that the second-derivative relation holds for `g`.
    pub fn mirror_lambda(&self, g: &Expr) -> Result<Expr, SeparationError> {
        let not = |msg: &str| SeparationError::ProfileNotLiouville(msg.to_string());
        let coords = g.coords();
        if coords.len() > 1 {
            return Err(not("mirror profile depends on more than one coordinate"));
        }
        let c = coords.iter().next().copied().unwrap_or(0);
        let gp = g.d_coord(c);
        let gpp = gp.d_coord(c);
        if !(&gpp + &self.k * g - &self.d).is_zero() {
            return Err(not("mirror profile fails the second-derivative relation"));
        }
        let two = Expr::from_int(2);
        let lam_tilde = &gp * &gp + &self.k * g * g - &two * &self.d * g;
        if !lam_tilde.is_coordinate_free() {
            return Err(not("mirror squared derivative is not quadratic"));
        }
        Ok(lam_tilde)
    }
}

/// Parameter names standing for the profile and its first two derivatives
/// in an expression handed to [`liouville_reduce`].
#[derive(Debug, Clone)]
pub struct ProfileVars {
    pub f: String,
    pub fp: String,
    pub fpp: String,
}

impl Default for ProfileVars {
    fn default() -> Self {
        ProfileVars {
            f: "f".to_string(),
            fp: "fp".to_string(),
            fpp: "fpp".to_string(),
        }
    }
}

/// Reduce a rational equation in (f, f′, f″) to polynomial coefficients in
/// f: substitute f″ = kf + D, clear the (f′-free) denominator, replace
/// even powers of f′ by (kf² + 2Df + Λ)^{e/2}, require the odd remainder
/// to cancel, and expand in powers of f.
pub fn liouville_reduce(
    e: &Expr,
    rel: &LiouvilleRelations,
    vars: &ProfileVars,
) -> Result<Vec<Expr>, SeparationError> {
    let f = Expr::param(&vars.f);
    let two = Expr::from_int(2);
    let mut sub = Substitution::new();
    sub.bind_param(&vars.fpp, &(&rel.k * &f + &rel.d));
    let e1 = e.substitute(&sub)?;
    if mentions_param_in_den(&e1, &vars.fp) {
        return Err(SeparationError::DerivativeInDenominator);
    }
    let p = e1.numerator();

    let fp_square = &(&rel.k * &f * &f) + &(&two * &rel.d * &f + &rel.lam);
    let fp_coeffs = param_coefficients(&p, &vars.fp)?;
    let mut even = Expr::zero();
    let mut odd = Expr::zero();
    for (j, coeff) in fp_coeffs.into_iter().enumerate() {
        let carried = coeff * fp_square.pow((j / 2) as i32)?;
        if j % 2 == 0 {
            even = even + carried;
        } else {
            odd = odd + carried;
        }
    }
    if !odd.is_zero() {
        return Err(SeparationError::OddDerivativePower);
    }
    param_coefficients(&even, &vars.f)
}

/// Formal derivative by a parameter: differentiate by a coordinate no
/// expression contains, promoting exactly that parameter.
pub(super) fn d_param(e: &Expr, name: &str) -> Expr {
    e.derive_with(DeriveVar::Coord(usize::MAX), &|p| {
        (p == name).then(Expr::one)
    })
}

/// Coefficients of powers of the parameter `name`, lowest first. The
/// dependence must be polynomial.
fn param_coefficients(e: &Expr, name: &str) -> Result<Vec<Expr>, SeparationError> {
    let mut zero_sub = Substitution::new();
    zero_sub.bind_param(name, &Expr::zero());
    let mut out = Vec::new();
    let mut cur = e.clone();
    let mut factorial = Q::one();
    for j in 0..=16u32 {
        if j > 0 {
            factorial = factorial * Q::from_integer(j.into());
        }
        let at_zero = cur.substitute(&zero_sub)?;
        out.push(at_zero.checked_div(&Expr::from_q(factorial.clone()))?);
        cur = d_param(&cur, name);
        if cur.is_zero() {
            break;
        }
    }
    if !cur.is_zero() {
        return Err(SeparationError::ProfileNotLiouville(format!(
            "expression is not polynomial in {name}"
        )));
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

/// Does any denominator factor mention the parameter?
fn mentions_param_in_den(e: &Expr, name: &str) -> bool {
    use crate::symbolic::Atom;
    fn walk(a: &Atom, name: &str, found: &mut bool) {
        match a {
            Atom::Param(p) => {
                if p.as_ref() == name {
                    *found = true;
                }
            }
            Atom::Func { arg, .. } => {
                arg.for_each_atom(&mut |inner| walk(inner, name, found));
            }
            Atom::Coord(_) | Atom::Jet { .. } => {}
        }
    }
    let mut found = false;
    for (poly, _) in &e.frac().den {
        poly.for_each_atom(&mut |a| walk(a, name, &mut found));
    }
    found
}
