//! Constraint submanifolds in solved form, and the reports produced by
//! checking them.
//!
//! A constraint set describes a jet submanifold N by relations
//! `target = rhs`, each solved for a single jet variable, plus named
//! constants: combinations of jet variables that are constant on N. A
//! constant introduces a fresh parameter and is converted into one more
//! solved relation by isolating its highest-order jet.

use serde::Deserialize;

use crate::error::SeparationError;
use crate::geometry::{valid_ident, Metric, RESERVED};
use crate::symbolic::{Expr, ExprContext, Substitution};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstraints {
    #[serde(default)]
    constants: Vec<RawConstant>,
    #[serde(default)]
    relations: Vec<RawRelation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstant {
    name: String,
    equals: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    target: String,
    rhs: String,
}

/// One solved relation `u_coord^(order) = rhs` holding on N.
#[derive(Debug, Clone)]
pub struct Relation {
    pub coord: usize,
    pub order: u8,
    pub rhs: Expr,
    /// Jet spelling of the target, for report labels.
    pub label: String,
}

/// A jet submanifold in solved form, with its extended expression context
/// (metric names plus constants plus the separation constant).
#[derive(Debug, Clone)]
pub struct ConstraintSet {
    relations: Vec<Relation>,
    constants: Vec<(String, Expr)>,
    ctx: ExprContext,
    sub: Substitution,
}

impl ConstraintSet {
    /// Parse the JSON form:
    /// `{ "constants": [{"name","equals"}], "relations": [{"target","rhs"}] }`.
    pub fn from_json(text: &str, metric: &Metric) -> Result<ConstraintSet, SeparationError> {
        let raw: RawConstraints =
            serde_json::from_str(text).map_err(|e| SeparationError::Json(e.to_string()))?;
        let constants: Vec<(&str, &str)> = raw
            .constants
            .iter()
            .map(|c| (c.name.as_str(), c.equals.as_str()))
            .collect();
        let relations: Vec<(&str, &str)> = raw
            .relations
            .iter()
            .map(|r| (r.target.as_str(), r.rhs.as_str()))
            .collect();
        ConstraintSet::from_texts(metric, &constants, &relations)
    }

    /// Build from textual pieces. Constants parse in declaration order and
    /// each may reference the ones before it; relations see all of them.
    pub fn from_texts(
        metric: &Metric,
        constants: &[(&str, &str)],
        relations: &[(&str, &str)],
    ) -> Result<ConstraintSet, SeparationError> {
        let mut ctx = extended_ctx(metric);
        let mut parsed_constants = Vec::new();
        for (name, equals) in constants {
            let e = Expr::parse(equals, &ctx).map_err(|source| SeparationError::Relation {
                target: (*name).to_string(),
                source,
            })?;
            parsed_constants.push(((*name).to_string(), e));
            check_constant_name(name, &ctx)?;
            ctx.params.push((*name).to_string());
        }
        let mut parsed_relations = Vec::new();
        for (target, rhs) in relations {
            let (coord, order) = parse_target(target, &ctx)?;
            let e = Expr::parse(rhs, &ctx).map_err(|source| SeparationError::Relation {
                target: (*target).to_string(),
                source,
            })?;
            parsed_relations.push(((coord, order), e));
        }
        ConstraintSet::assemble(ctx, parsed_constants, parsed_relations)
    }

    /// Build from already-constructed expressions. Constants introduce
    /// their parameters in order; relation targets are (coordinate, order).
    pub fn from_parts(
        metric: &Metric,
        constants: Vec<(String, Expr)>,
        relations: Vec<((usize, u8), Expr)>,
    ) -> Result<ConstraintSet, SeparationError> {
        let mut ctx = extended_ctx(metric);
        for (name, _) in &constants {
            check_constant_name(name, &ctx)?;
            ctx.params.push(name.clone());
        }
        ConstraintSet::assemble(ctx, constants, relations)
    }

    fn assemble(
        ctx: ExprContext,
        constants: Vec<(String, Expr)>,
        explicit: Vec<((usize, u8), Expr)>,
    ) -> Result<ConstraintSet, SeparationError> {
        let mut relations: Vec<Relation> = Vec::new();
        for (name, equals) in &constants {
            relations.push(solve_constant(name, equals)?);
        }
        for ((coord, order), rhs) in explicit {
            Expr::jet(coord, order).map_err(|source| SeparationError::Relation {
                target: format!("u{}_{}", coord + 1, order),
                source,
            })?;
            relations.push(Relation {
                coord,
                order,
                rhs,
                label: jet_label(coord, order),
            });
        }
        let mut sub = Substitution::new();
        for rel in &relations {
            if relations
                .iter()
                .filter(|r| r.coord == rel.coord && r.order == rel.order)
                .count()
                > 1
            {
                return Err(SeparationError::DuplicateTarget(rel.label.clone()));
            }
            if rel.rhs.jets().contains(&(rel.coord, rel.order)) {
                return Err(SeparationError::SelfReference(rel.label.clone()));
            }
            sub.bind_jet(rel.coord, rel.order, &rel.rhs)?;
        }
        Ok(ConstraintSet {
            relations,
            constants,
            ctx,
            sub,
        })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The constant names with their defining jet combinations.
    pub fn constants(&self) -> &[(String, Expr)] {
        &self.constants
    }

    pub fn ctx(&self) -> &ExprContext {
        &self.ctx
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Restriction to N: substitute the solved relations simultaneously
    /// until a fixed point. Orders strictly decrease along same-coordinate
    /// references, so a well-formed set converges within the cap.
    pub fn restrict(&self, e: &Expr) -> Result<Expr, SeparationError> {
        if self.relations.is_empty() {
            return Ok(e.clone());
        }
        let mut cur = e.clone();
        for _ in 0..32 {
            let next = cur.substitute(&self.sub)?;
            if next == cur {
                return Ok(next);
            }
            cur = next;
        }
        Err(SeparationError::RestrictionDiverged)
    }
}

/// Metric context plus the separation constant.
fn extended_ctx(metric: &Metric) -> ExprContext {
    let mut params = metric.params().to_vec();
    if !params.iter().any(|p| p == "lambda") {
        params.push("lambda".to_string());
    }
    ExprContext::new(metric.chart().to_vec(), params)
}

fn check_constant_name(name: &str, ctx: &ExprContext) -> Result<(), SeparationError> {
    if !valid_ident(name)
        || RESERVED.contains(&name)
        || ctx.chart.iter().any(|c| c == name)
        || ctx.params.iter().any(|p| p == name)
    {
        return Err(SeparationError::BadConstantName(name.to_string()));
    }
    Ok(())
}

fn jet_label(coord: usize, order: u8) -> String {
    if order == 1 {
        format!("u{}", coord + 1)
    } else {
        format!("u{}_{}", coord + 1, order)
    }
}

/// A constant `name = equals` becomes a relation by isolating the
/// highest-order jet: equals = A·top + B with A, B free of top, giving
/// top = (name − B)/A.
fn solve_constant(name: &str, equals: &Expr) -> Result<Relation, SeparationError> {
    let jets = equals.jets();
    let Some(&(coord, order)) = jets.iter().max_by_key(|&&(c, s)| (s, c)) else {
        return Err(SeparationError::ConstantWithoutJet {
            name: name.to_string(),
        });
    };
    let a = equals.d_jet(coord, order);
    if a.is_zero() || a.jets().contains(&(coord, order)) {
        return Err(SeparationError::ConstantNotSolvable {
            name: name.to_string(),
        });
    }
    let top = Expr::jet(coord, order)?;
    let b = equals - &a * &top;
    if b.jets().contains(&(coord, order)) {
        return Err(SeparationError::ConstantNotSolvable {
            name: name.to_string(),
        });
    }
    let rhs = (Expr::param(name) - b).checked_div(&a)?;
    Ok(Relation {
        coord,
        order,
        rhs,
        label: jet_label(coord, order),
    })
}

/// Parse a relation target, which must spell a single jet variable.
fn parse_target(target: &str, ctx: &ExprContext) -> Result<(usize, u8), SeparationError> {
    let bad = || SeparationError::BadConstraintTarget(target.to_string());
    let e = Expr::parse(target, ctx).map_err(|_| bad())?;
    let jets = e.jets();
    if jets.len() != 1 {
        return Err(bad());
    }
    let &(coord, order) = jets.iter().next().expect("nonempty");
    if e != Expr::jet(coord, order)? {
        return Err(bad());
    }
    Ok((coord, order))
}

/// Why a residual is acceptable only conditionally.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    /// Vanishes when the separation constant is zero.
    LambdaZero,
    /// A coordinate-free relation among parameters that must vanish.
    ParamRelation(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResidualStatus {
    Zero,
    Conditional(Condition),
    Nonzero,
}

/// One checked residual with its classification.
#[derive(Debug, Clone)]
pub struct ResidualEntry {
    pub label: String,
    pub residual: Expr,
    pub status: ResidualStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Conditional,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Conditional => write!(f, "conditional"),
            Verdict::Fail => write!(f, "fail"),
        }
    }
}

/// Everything [`super::Separation::check_constraints`] establishes about a
/// constraint set.
#[derive(Debug, Clone)]
pub struct ConstraintReport {
    /// D_i applied to each relation residual, restricted to N.
    pub tangency: Vec<ResidualEntry>,
    /// Commutation obstructions D_iR_j restricted to N.
    pub commutation: Vec<ResidualEntry>,
    /// Jet-free parts of the restricted equation that did not vanish.
    pub equation: Vec<ResidualEntry>,
    /// Jet-bearing single-coordinate parts of the restricted equation:
    /// the separated ordinary differential equations that remain.
    pub reduced: Vec<(Option<usize>, Expr)>,
    /// Deduplicated conditions under which every residual vanishes.
    pub conditions: Vec<Condition>,
    pub verdict: Verdict,
}
