//! Seeded random expression generation shared by the unit-test suites.
//!
//! Trees are generated as *text* in the expression grammar, so every sample
//! exercises the lexer and parser as well as the algebra. Generation is
//! deterministic per seed (fixed-stream counter RNG), keeping failures
//! reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::symbolic::{EvalPoint, ExprContext};

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) struct GenCfg {
    pub ctx: ExprContext,
    pub max_depth: usize,
    pub allow_jets: bool,
    pub allow_div: bool,
    pub allow_funcs: bool,
}

impl GenCfg {
    pub fn standard() -> Self {
        GenCfg {
            ctx: ExprContext::new(["x", "y"], ["a", "b"]),
            max_depth: 4,
            allow_jets: true,
            allow_div: true,
            allow_funcs: true,
        }
    }
}

pub(crate) fn gen_text(r: &mut ChaCha8Rng, cfg: &GenCfg) -> String {
    gen_expr(r, cfg, cfg.max_depth)
}

fn gen_leaf(r: &mut ChaCha8Rng, cfg: &GenCfg) -> String {
    let dim = cfg.ctx.chart.len();
    loop {
        match r.gen_range(0..4) {
            0 => return r.gen_range(0..10).to_string(),
            1 if dim > 0 => return cfg.ctx.chart[r.gen_range(0..dim)].clone(),
            2 if cfg.allow_jets && dim > 0 => {
                let coord = r.gen_range(1..=dim);
                let order = r.gen_range(1..=4);
                return if order == 1 {
                    format!("u{coord}")
                } else {
                    format!("u{coord}_{order}")
                };
            }
            3 if !cfg.ctx.params.is_empty() => {
                return cfg.ctx.params[r.gen_range(0..cfg.ctx.params.len())].clone()
            }
            _ => continue,
        }
    }
}

fn gen_expr(r: &mut ChaCha8Rng, cfg: &GenCfg, depth: usize) -> String {
    if depth == 0 {
        return gen_leaf(r, cfg);
    }
    match r.gen_range(0..100) {
        0..=24 => gen_leaf(r, cfg),
        25..=39 => format!(
            "({} + {})",
            gen_expr(r, cfg, depth - 1),
            gen_expr(r, cfg, depth - 1)
        ),
        40..=54 => format!(
            "({} - {})",
            gen_expr(r, cfg, depth - 1),
            gen_expr(r, cfg, depth - 1)
        ),
        55..=69 => format!(
            "{}*{}",
            gen_factor(r, cfg, depth - 1),
            gen_factor(r, cfg, depth - 1)
        ),
        70..=79 if cfg.allow_div => format!(
            "{}/{}",
            gen_factor(r, cfg, depth - 1),
            gen_factor(r, cfg, depth - 1)
        ),
        80..=87 => format!("{}^{}", gen_factor(r, cfg, depth - 1), r.gen_range(0..=3)),
        88..=93 => format!("-{}", gen_factor(r, cfg, depth - 1)),
        _ if cfg.allow_funcs => {
            let f = ["sin", "cos", "sinh", "cosh", "exp", "sqrt", "log"][r.gen_range(0..7)];
            format!("{f}({})", gen_expr(r, cfg, depth - 1))
        }
        _ => gen_leaf(r, cfg),
    }
}

/// A parenthesized unit usable as a grammar `factor`.
fn gen_factor(r: &mut ChaCha8Rng, cfg: &GenCfg, depth: usize) -> String {
    format!("({})", gen_expr(r, cfg, depth))
}

/// Random evaluation point with every symbol of the context bound to a value
/// in [0.4, 1.6), away from poles and branch points of the function heads.
pub(crate) fn gen_point(r: &mut ChaCha8Rng, ctx: &ExprContext) -> EvalPoint {
    let mut p = EvalPoint::default();
    for i in 0..ctx.chart.len() {
        p.coords.insert(i, r.gen_range(0.4..1.6));
        for order in 1..=4u8 {
            p.jets.insert((i, order), r.gen_range(0.4..1.6));
        }
    }
    for name in &ctx.params {
        p.params.insert(name.clone(), r.gen_range(0.4..1.6));
    }
    p
}
