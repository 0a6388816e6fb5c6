//! Separability analysis for the fourth-order field equation.
//!
//! For a product ansatz ψ = exp(Σ_c u_c(q^c)) the equation Δ²ψ = λψ becomes
//! a polynomial condition H_s = λ in the per-coordinate jet variables
//! u_c^(s), s ≤ 4. This module builds H_s from the operator coefficient
//! families, forms the lifted derivations D_i and their closing functions
//! R_i, decides regular separability through the commutation obstructions
//! D_iR_j, and verifies constrained (non-regular) separation on a jet
//! submanifold described by a [`ConstraintSet`].

mod constraint;
mod liouville;

pub use constraint::{
    Condition, ConstraintReport, ConstraintSet, Relation, ResidualEntry, ResidualStatus, Verdict,
};
pub use liouville::{
    liouville_reduce, liouville_relations, LiouvilleConstants, LiouvilleRelations, ProfileVars,
};

use crate::error::SeparationError;
use crate::geometry::Metric;
use crate::symbolic::{Expr, ExprContext, Substitution, MAX_JET_ORDER};

/// The jet polynomial E_k for one coordinate: ∂^k ψ / ψ expressed in the
/// jet variables u_c^(s) of log ψ. E_0 = 1, E_1 = u_c, and the recursion
/// E_{k+1} = shift(E_k) + u_c·E_k, where shift bumps each jet order once.
pub(crate) fn e_poly(coord: usize, order: usize) -> Expr {
    let u1 = Expr::jet(coord, 1).expect("order 1 is valid");
    let mut e = Expr::one();
    for _ in 0..order {
        e = jet_shift(&e, coord) + &u1 * &e;
    }
    e
}

/// Formal d/dq^c on a jet expression without the closing R-term: each
/// u_c^(s) contributes u_c^(s+1)·∂/∂u_c^(s). Only valid below top order.
fn jet_shift(e: &Expr, coord: usize) -> Expr {
    let mut out = Expr::zero();
    for s in 1..MAX_JET_ORDER {
        out = out + Expr::jet(coord, s + 1).expect("order <= 4") * e.d_jet(coord, s);
    }
    out
}

/// Product of E polynomials for a multi-index given as repeated coordinate
/// indices (order = multiplicity per coordinate).
fn e_product(dim: usize, indices: &[usize]) -> Expr {
    let mut counts = vec![0usize; dim];
    for &c in indices {
        counts[c] += 1;
    }
    let mut out = Expr::one();
    for (c, &k) in counts.iter().enumerate() {
        if k > 0 {
            out = out * e_poly(c, k);
        }
    }
    out
}

/// One commutation obstruction D_iR_j together with the three witness
/// coefficients that can never all vanish.
#[derive(Debug, Clone)]
pub struct ObstructionEntry {
    pub i: usize,
    pub j: usize,
    /// D_iR_j in canonical form; identically zero iff the pair commutes.
    pub obstruction: Expr,
    /// Coefficient of u_i^(4)·u_j^(2).
    pub coeff_i4_j2: Expr,
    /// Coefficient of u_i^(3)·u_j^(3).
    pub coeff_i3_j3: Expr,
    /// Coefficient of u_i^(2)·u_j^(4).
    pub coeff_i2_j4: Expr,
}

/// Outcome of the regular-separability test.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    /// True iff every off-diagonal obstruction vanishes identically.
    pub regular: bool,
    pub entries: Vec<ObstructionEntry>,
}

/// Separation analyzer for one metric: holds H_s, the closing functions
/// R_i, and the separation constant.
#[derive(Debug, Clone)]
pub struct Separation {
    metric: Metric,
    lambda: Expr,
    ctx: ExprContext,
    hs: Expr,
    hs_parts: [Expr; 4],
    ri: Vec<Expr>,
}

impl Separation {
    /// Build the analyzer. `lambda` must be a constant (a parameter or a
    /// number); every diagonal metric component must be nonzero, since the
    /// closing functions divide by (g^{ii})².
    pub fn new(metric: Metric, lambda: Expr) -> Result<Self, SeparationError> {
        if !lambda.is_coordinate_free() {
            return Err(SeparationError::LambdaNotConstant);
        }
        let dim = metric.dim();
        for i in 0..dim {
            if metric.g_contra(i, i).is_zero() {
                return Err(SeparationError::NullCoordinate(i));
            }
        }
        let mut params = metric.params().to_vec();
        if !params.iter().any(|p| p == "lambda") {
            params.push("lambda".to_string());
        }
        let ctx = ExprContext::new(metric.chart().to_vec(), params);

        // One sum per coefficient family. The family index doubles as the
        // metric-derivative order of its coefficients, so the jet weight of
        // each part is 4 minus that index.
        let co = metric.coeffs();
        let mut parts = [Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero()];
        for i in 0..dim {
            parts[3] = &parts[3] + co.d(i) * e_product(dim, &[i]);
            for j in 0..dim {
                if !co.c(i, j).is_zero() {
                    parts[2] = &parts[2] + co.c(i, j) * e_product(dim, &[i, j]);
                }
                for k in 0..dim {
                    if !co.b(i, j, k).is_zero() {
                        parts[1] = &parts[1] + co.b(i, j, k) * e_product(dim, &[i, j, k]);
                    }
                    for l in 0..dim {
                        if !co.a(i, j, k, l).is_zero() {
                            parts[0] =
                                &parts[0] + co.a(i, j, k, l) * e_product(dim, &[i, j, k, l]);
                        }
                    }
                }
            }
        }
        let hs = &(&parts[0] + &parts[1]) + &(&parts[2] + &parts[3]);

        let mut ri = Vec::with_capacity(dim);
        for i in 0..dim {
            // R_i closes D_iH_s = 0; the coefficient of u_i^(4) in H_s is
            // exactly (g^{ii})², so the truncated lift divides by it.
            let scale = metric.g_contra(i, i).pow(2)?;
            let truncated = jet_shift(&hs, i) + hs.d_coord(i);
            ri.push(-truncated.checked_div(&scale)?);
        }

        Ok(Separation {
            metric,
            lambda,
            ctx,
            hs,
            hs_parts: parts,
            ri,
        })
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    /// Chart and parameters extended with the separation constant.
    pub fn ctx(&self) -> &ExprContext {
        &self.ctx
    }

    pub fn lambda(&self) -> &Expr {
        &self.lambda
    }

    /// The jet-space form H_s of Δ²ψ/ψ on the product ansatz.
    pub fn hs(&self) -> &Expr {
        &self.hs
    }

    /// Per-family contractions of H_s, indexed by the metric-derivative
    /// order 0..=3 of the coefficient family; they sum to [`Self::hs`] and
    /// carry jet weight 4 minus the index.
    pub fn hs_parts(&self) -> &[Expr; 4] {
        &self.hs_parts
    }

    /// Closing function R_i of the lifted derivation D_i.
    pub fn ri(&self, i: usize) -> &Expr {
        &self.ri[i]
    }

    /// Apply the lifted derivation D_i = ∂_i + Σ_s u_i^(s+1)∂/∂u_i^(s)
    /// + R_i ∂/∂u_i^(4).
    pub fn apply_di(&self, e: &Expr, i: usize) -> Expr {
        e.d_coord(i) + jet_shift(e, i) + &self.ri[i] * e.d_jet(i, MAX_JET_ORDER)
    }

    /// The commutation obstruction D_iR_j.
    pub fn obstruction(&self, i: usize, j: usize) -> Expr {
        self.apply_di(&self.ri[j], i)
    }

    /// Regular separability requires every D_iR_j (i ≠ j) to vanish; the
    /// report carries the canonical obstructions and the three witness
    /// coefficients.
    pub fn regular_report(&self) -> Result<SeparationReport, SeparationError> {
        let dim = self.metric.dim();
        let mut pairs = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    pairs.push((i, j));
                }
            }
        }
        let compute = |&(i, j): &(usize, usize)| -> Result<ObstructionEntry, SeparationError> {
            let obstruction = self.obstruction(i, j);
            Ok(ObstructionEntry {
                i,
                j,
                coeff_i4_j2: jet_pair_coefficient(&obstruction, (i, 4), (j, 2))?,
                coeff_i3_j3: jet_pair_coefficient(&obstruction, (i, 3), (j, 3))?,
                coeff_i2_j4: jet_pair_coefficient(&obstruction, (i, 2), (j, 4))?,
                obstruction,
            })
        };
        #[cfg(feature = "parallel")]
        let entries: Vec<ObstructionEntry> = {
            use rayon::prelude::*;
            pairs
                .par_iter()
                .map(compute)
                .collect::<Result<Vec<_>, _>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let entries: Vec<ObstructionEntry> =
            pairs.iter().map(compute).collect::<Result<Vec<_>, _>>()?;
        let regular = entries.iter().all(|e| e.obstruction.is_zero());
        Ok(SeparationReport { regular, entries })
    }

    /// Independent reconstruction of H_s: apply the Laplacian twice to a
    /// formal undetermined function, then substitute the product-ansatz
    /// value E-product for each formal partial derivative.
    pub fn hs_reference(&self) -> Result<Expr, SeparationError> {
        let dim = self.metric.dim();
        let mut base = String::from("w");
        while self
            .metric
            .params()
            .iter()
            .chain(self.metric.chart().iter())
            .any(|p| p.starts_with(&base))
        {
            base.push('w');
        }
        let name_of = |idx: &[usize]| {
            let mut s = base.clone();
            for &c in idx {
                s.push_str(&(c + 1).to_string());
            }
            s
        };
        let parse_suffix = |name: &str| -> Option<Vec<usize>> {
            let rest = name.strip_prefix(&base)?;
            if rest.len() > 3 || !rest.chars().all(|ch| ch.is_ascii_digit()) {
                return None;
            }
            let idx: Vec<usize> = rest
                .chars()
                .map(|ch| ch.to_digit(10).unwrap() as usize - 1)
                .collect();
            if idx.iter().any(|&c| c + 1 > dim) {
                return None;
            }
            Some(idx)
        };
        let rule = |i: usize, name: &str| -> Option<Expr> {
            let mut idx = parse_suffix(name)?;
            idx.push(i);
            idx.sort_unstable();
            Some(Expr::param(&name_of(&idx)))
        };
        let lap1 = self.metric.laplacian_with(&Expr::param(&base), &rule);
        let lap2 = self.metric.laplacian_with(&lap1, &rule);

        let mut sub = Substitution::new();
        let mut stack = vec![Vec::new()];
        while let Some(idx) = stack.pop() {
            sub.bind_param(&name_of(&idx), &e_product(dim, &idx));
            if idx.len() < 4 {
                let lo = idx.last().copied().unwrap_or(0);
                for c in lo..dim {
                    let mut next = idx.clone();
                    next.push(c);
                    stack.push(next);
                }
            }
        }
        Ok(lap2.substitute(&sub)?)
    }

    /// Restrict H_s − λ to the constraint submanifold and split the result
    /// into parts each supported on a single coordinate.
    pub fn restrict_and_split(
        &self,
        n: &ConstraintSet,
    ) -> Result<Vec<(Option<usize>, Expr)>, SeparationError> {
        let eq = &self.hs - &self.lambda;
        let restricted = n.restrict(&eq)?;
        restricted
            .split_by_coordinate()
            .map_err(SeparationError::InvalidSplit)
    }

    /// Verify constrained separation on N: tangency of each lifted
    /// derivation to N, commutation obstructions restricted to N, and the
    /// restricted equation itself. Residuals that vanish only under a
    /// parameter condition produce a `Conditional` verdict with the
    /// condition attached; anything else nonzero fails.
    pub fn check_constraints(&self, n: &ConstraintSet) -> Result<ConstraintReport, SeparationError> {
        let dim = self.metric.dim();
        let mut tangency = Vec::new();
        for rel in n.relations() {
            let fa = Expr::jet(rel.coord, rel.order)? - &rel.rhs;
            for i in 0..dim {
                let res = n.restrict(&self.apply_di(&fa, i))?;
                tangency.push(self.entry(format!("D{}[{}]", i + 1, rel.label), res));
            }
        }
        let mut commutation = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    let res = n.restrict(&self.obstruction(i, j))?;
                    commutation.push(self.entry(format!("D{}R{}", i + 1, j + 1), res));
                }
            }
        }
        let mut equation = Vec::new();
        let mut reduced = Vec::new();
        for (key, part) in self.restrict_and_split(n)? {
            if part.contains_jet() {
                reduced.push((key, part));
            } else if !part.is_zero() {
                let label = match key {
                    Some(c) => format!("equation[{}]", self.ctx.chart[c]),
                    None => "equation".to_string(),
                };
                equation.push(self.entry(label, part));
            }
        }

        let mut conditions: Vec<Condition> = Vec::new();
        let mut any_fail = false;
        for e in tangency.iter().chain(&commutation).chain(&equation) {
            match &e.status {
                ResidualStatus::Zero => {}
                ResidualStatus::Conditional(c) => {
                    if !conditions.contains(c) {
                        conditions.push(c.clone());
                    }
                }
                ResidualStatus::Nonzero => any_fail = true,
            }
        }
        let verdict = if any_fail {
            Verdict::Fail
        } else if !conditions.is_empty() {
            Verdict::Conditional
        } else {
            Verdict::Pass
        };
        Ok(ConstraintReport {
            tangency,
            commutation,
            equation,
            reduced,
            conditions,
            verdict,
        })
    }

    fn entry(&self, label: String, residual: Expr) -> ResidualEntry {
        let status = self.classify(&residual);
        ResidualEntry {
            label,
            residual,
            status,
        }
    }

    /// A residual passes outright when zero, conditionally when it is a
    /// pure parameter relation or dies with the separation constant, and
    /// fails otherwise.
    fn classify(&self, res: &Expr) -> ResidualStatus {
        if res.is_zero() {
            return ResidualStatus::Zero;
        }
        if res.is_coordinate_free() {
            return ResidualStatus::Conditional(Condition::ParamRelation(res.clone()));
        }
        if self.lambda == Expr::param("lambda") {
            let mut sub = Substitution::new();
            sub.bind_param("lambda", &Expr::zero());
            if let Ok(at_zero) = res.substitute(&sub) {
                if at_zero.is_zero() {
                    return ResidualStatus::Conditional(Condition::LambdaZero);
                }
            }
        }
        ResidualStatus::Nonzero
    }
}

/// Coefficient of the exact jet monomial u_a^(s_a)·u_b^(s_b) in `e`: the
/// mixed second jet derivative with all remaining jets set to zero.
fn jet_pair_coefficient(
    e: &Expr,
    a: (usize, u8),
    b: (usize, u8),
) -> Result<Expr, SeparationError> {
    let d2 = e.d_jet(a.0, a.1).d_jet(b.0, b.1);
    let mut sub = Substitution::new();
    for (c, s) in d2.jets() {
        sub.bind_jet(c, s, &Expr::zero())?;
    }
    Ok(d2.substitute(&sub)?)
}
