//! Metrics and the geometric data derived from them.
//!
//! A [`Metric`] is given by its contravariant components on a named chart.
//! Construction validates shape, symmetry and non-degeneracy, then derives
//! everything the separation analysis needs: the covariant components, the
//! contracted Christoffel symbols, the Laplace–Beltrami operator, and the
//! coefficient tensors of the iterated (fourth-order) operator.
//!
//! The iterated-operator coefficients come in four families, graded by how
//! many metric derivatives they carry:
//!
//! * `a` (rank 4, no derivatives): symmetrized `g^{ij} g^{kl}`,
//! * `b` (rank 3, first derivatives): `2 (g^{h(i} ∂_h g^{jk)} - g^{(ij} Γ^{k)})`,
//! * `c` (rank 2, second derivatives):
//!   `g^{kl} ∂_k ∂_l g^{ij} - 2 g^{k(i} ∂_k Γ^{j)} - Γ^k ∂_k g^{ij} + Γ^i Γ^j`,
//! * `d` (rank 1, third derivatives): `-Δ Γ^i`,
//!
//! with round brackets denoting symmetrization over the enclosed indices.

use serde::Deserialize;

use crate::error::{GeometryError, SymbolicError};
use crate::symbolic::{DeriveVar, Expr, ExprContext};

/// Raw JSON shape of a metric description.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricSpec {
    chart: Vec<String>,
    #[serde(default)]
    params: Vec<String>,
    g_contra: Vec<Vec<String>>,
}

/// A pseudo-Riemannian metric on a coordinate chart, with derived data.
#[derive(Debug, Clone)]
pub struct Metric {
    ctx: ExprContext,
    g_contra: Vec<Vec<Expr>>,
    g_cov: Vec<Vec<Expr>>,
    det_contra: Expr,
    /// Contracted Christoffel symbols `Γ^k = g^{ij} Γ^k_{ij}`.
    gamma: Vec<Expr>,
    /// First-order coefficients of the Laplace–Beltrami operator; equals
    /// `-Γ^k` identically, but is computed independently from the
    /// determinant so the two derivations cross-check each other in tests.
    drift: Vec<Expr>,
    coeffs: BiLapCoeffs,
}

/// Coefficient tensors of the iterated operator, stored dense.
#[derive(Debug, Clone)]
pub struct BiLapCoeffs {
    dim: usize,
    a: Vec<Expr>,
    b: Vec<Expr>,
    c: Vec<Expr>,
    d: Vec<Expr>,
}

impl BiLapCoeffs {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a(&self, i: usize, j: usize, k: usize, l: usize) -> &Expr {
        &self.a[((i * self.dim + j) * self.dim + k) * self.dim + l]
    }

    pub fn b(&self, i: usize, j: usize, k: usize) -> &Expr {
        &self.b[(i * self.dim + j) * self.dim + k]
    }

    pub fn c(&self, i: usize, j: usize) -> &Expr {
        &self.c[i * self.dim + j]
    }

    pub fn d(&self, i: usize) -> &Expr {
        &self.d[i]
    }

    /// Number of metric-derivative orders carried by each family, used by
    /// the grading checks: family `a` has 0, `b` 1, `c` 2, `d` 3.
    pub fn derivative_order(family: char) -> u8 {
        match family {
            'a' => 0,
            'b' => 1,
            'c' => 2,
            'd' => 3,
            _ => panic!("unknown coefficient family {family}"),
        }
    }
}

pub(crate) fn valid_ident(s: &str) -> bool {
    let mut bytes = s.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

pub(crate) const RESERVED: &[&str] =
    &["lambda", "sin", "cos", "sinh", "cosh", "exp", "log", "sqrt"];

impl Metric {
    /// Parse and validate a JSON metric description:
    ///
    /// ```json
    /// {"chart": ["r", "theta"], "params": ["a"],
    ///  "g_contra": [["1", "0"], ["0", "1/r^2"]]}
    /// ```
    pub fn from_json(text: &str) -> Result<Metric, GeometryError> {
        let spec: MetricSpec =
            serde_json::from_str(text).map_err(|e| GeometryError::Json(e.to_string()))?;
        Metric::new(spec.chart, spec.params, spec.g_contra)
    }

    pub fn new(
        chart: Vec<String>,
        params: Vec<String>,
        entries: Vec<Vec<String>>,
    ) -> Result<Metric, GeometryError> {
        let dim = chart.len();
        if dim == 0 || entries.len() != dim || entries.iter().any(|row| row.len() != dim) {
            return Err(GeometryError::BadShape {
                rows: entries.len(),
                cols: entries.iter().map(|r| r.len()).collect(),
            });
        }
        let mut seen: Vec<&String> = Vec::new();
        for name in chart.iter().chain(params.iter()) {
            if !valid_ident(name) || RESERVED.contains(&name.as_str()) {
                return Err(GeometryError::ReservedName(name.clone()));
            }
            if seen.contains(&name) {
                return Err(GeometryError::DuplicateName(name.clone()));
            }
            seen.push(name);
        }
        let ctx = ExprContext {
            chart,
            params,
        };
        let mut g_contra: Vec<Vec<Expr>> = Vec::with_capacity(dim);
        for (i, row) in entries.iter().enumerate() {
            let mut out = Vec::with_capacity(dim);
            for (j, text) in row.iter().enumerate() {
                let e = Expr::parse(text, &ctx)
                    .map_err(|source| GeometryError::Entry { i, j, source })?;
                if e.contains_jet() {
                    return Err(GeometryError::JetEntry { i, j });
                }
                out.push(e);
            }
            g_contra.push(out);
        }
        Metric::assemble(ctx, g_contra)
    }

    /// Build a metric from already-constructed component expressions. Same
    /// validation as [`Metric::new`] apart from parsing.
    pub fn from_components(
        chart: Vec<String>,
        params: Vec<String>,
        entries: Vec<Vec<Expr>>,
    ) -> Result<Metric, GeometryError> {
        let dim = chart.len();
        if dim == 0 || entries.len() != dim || entries.iter().any(|row| row.len() != dim) {
            return Err(GeometryError::BadShape {
                rows: entries.len(),
                cols: entries.iter().map(|r| r.len()).collect(),
            });
        }
        let mut seen: Vec<&String> = Vec::new();
        for name in chart.iter().chain(params.iter()) {
            if !valid_ident(name) || RESERVED.contains(&name.as_str()) {
                return Err(GeometryError::ReservedName(name.clone()));
            }
            if seen.contains(&name) {
                return Err(GeometryError::DuplicateName(name.clone()));
            }
            seen.push(name);
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.contains_jet() {
                    return Err(GeometryError::JetEntry { i, j });
                }
            }
        }
        Metric::assemble(ExprContext { chart, params }, entries)
    }

    fn assemble(ctx: ExprContext, g_contra: Vec<Vec<Expr>>) -> Result<Metric, GeometryError> {
        let dim = ctx.chart.len();
        for i in 0..dim {
            for j in (i + 1)..dim {
                if !g_contra[i][j].equivalent(&g_contra[j][i]) {
                    return Err(GeometryError::NotSymmetric { i, j });
                }
            }
        }
        let det_contra = determinant(&g_contra);
        if det_contra.is_zero() {
            return Err(GeometryError::Degenerate);
        }
        let g_cov = invert(&g_contra, &det_contra)?;

        // contracted Christoffel symbols from the covariant components
        let half = Expr::rational(1, 2).expect("exact constant");
        let mut gamma = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut acc = Expr::zero();
            for i in 0..dim {
                for j in 0..dim {
                    let mut inner = Expr::zero();
                    for l in 0..dim {
                        let s = g_cov[l][j].d_coord(i) + g_cov[l][i].d_coord(j)
                            - g_cov[i][j].d_coord(l);
                        inner = inner + &g_contra[k][l] * s;
                    }
                    acc = acc + &g_contra[i][j] * &half * inner;
                }
            }
            gamma.push(acc);
        }

        // Laplace-Beltrami drift terms from the determinant:
        // b^j = ∂_i g^{ij} + g^{ij} ∂_i(det g_cov) / (2 det g_cov), where
        // det g_cov = 1/det g^{..} turns the ratio into
        // -∂_i(det g^{..}) / (2 det g^{..}).
        let mut drift = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut acc = Expr::zero();
            for i in 0..dim {
                let log_half = det_contra
                    .d_coord(i)
                    .checked_div(&det_contra)
                    .expect("determinant is nonzero")
                    * &half;
                acc = acc + g_contra[i][j].d_coord(i) - &g_contra[i][j] * log_half;
            }
            drift.push(acc);
        }

        let mut metric = Metric {
            ctx,
            g_contra,
            g_cov,
            det_contra,
            gamma,
            drift,
            coeffs: BiLapCoeffs {
                dim,
                a: Vec::new(),
                b: Vec::new(),
                c: Vec::new(),
                d: Vec::new(),
            },
        };
        metric.coeffs = metric.derive_coeffs();
        Ok(metric)
    }

    /// Dimension of the chart.
    pub fn dim(&self) -> usize {
        self.ctx.chart.len()
    }

    pub fn chart(&self) -> &[String] {
        &self.ctx.chart
    }

    pub fn params(&self) -> &[String] {
        &self.ctx.params
    }

    pub fn ctx(&self) -> &ExprContext {
        &self.ctx
    }

    pub fn g_contra(&self, i: usize, j: usize) -> &Expr {
        &self.g_contra[i][j]
    }

    pub fn g_cov(&self, i: usize, j: usize) -> &Expr {
        &self.g_cov[i][j]
    }

    pub fn det_contra(&self) -> &Expr {
        &self.det_contra
    }

    pub fn gamma(&self, k: usize) -> &Expr {
        &self.gamma[k]
    }

    #[cfg(test)]
    pub(crate) fn drift(&self, j: usize) -> &Expr {
        &self.drift[j]
    }

    pub fn coeffs(&self) -> &BiLapCoeffs {
        &self.coeffs
    }

    /// Laplace-Beltrami operator applied to a jet-free scalar.
    pub fn laplacian(&self, f: &Expr) -> Result<Expr, SymbolicError> {
        if f.contains_jet() {
            return Err(SymbolicError::DifferentiateJet);
        }
        Ok(self.laplacian_with(f, &|_, _| None))
    }

    /// The Laplacian combination over caller-supplied formal derivative
    /// expressions: sum of g^{ij}·second[i][j] minus Γ^i·first[i].
    pub fn laplacian_apply(
        &self,
        second: &[Vec<Expr>],
        first: &[Expr],
    ) -> Result<Expr, GeometryError> {
        let dim = self.dim();
        if second.len() != dim || second.iter().any(|r| r.len() != dim) || first.len() != dim {
            return Err(GeometryError::BadShape {
                rows: second.len(),
                cols: second.iter().map(|r| r.len()).collect(),
            });
        }
        let mut acc = Expr::zero();
        for i in 0..dim {
            acc = acc - &self.gamma[i] * &first[i];
            for j in 0..dim {
                acc = acc + &self.g_contra[i][j] * &second[i][j];
            }
        }
        Ok(acc)
    }

    /// Laplace-Beltrami application with a parameter promotion rule: when
    /// `rule(i, name)` returns Some, the parameter `name` is treated as an
    /// unknown field whose `i`-th coordinate derivative is the returned
    /// expression. Used to apply the operator to formal (undetermined)
    /// functions.
    pub(crate) fn laplacian_with(
        &self,
        f: &Expr,
        rule: &dyn Fn(usize, &str) -> Option<Expr>,
    ) -> Expr {
        let dim = self.dim();
        let d = |e: &Expr, i: usize| e.derive_with(DeriveVar::Coord(i), &|name| rule(i, name));
        let mut acc = Expr::zero();
        for i in 0..dim {
            let di = d(f, i);
            acc = acc + &self.drift[i] * &di;
            for j in 0..dim {
                acc = acc + &self.g_contra[i][j] * d(&di, j);
            }
        }
        acc
    }

    /// Gaussian curvature of a 2-dimensional metric via the determinant
    /// formula in the covariant first-fundamental-form components.
    pub fn gaussian_curvature(&self) -> Result<Expr, GeometryError> {
        if self.dim() != 2 {
            return Err(GeometryError::CurvatureDimension(self.dim()));
        }
        let half = Expr::rational(1, 2).expect("exact constant");
        let e = &self.g_cov[0][0];
        let f = &self.g_cov[0][1];
        let g = &self.g_cov[1][1];
        let (eu, ev) = (e.d_coord(0), e.d_coord(1));
        let (fu, fv) = (f.d_coord(0), f.d_coord(1));
        let (gu, gv) = (g.d_coord(0), g.d_coord(1));
        let evv = ev.d_coord(1);
        let fuv = fu.d_coord(1);
        let guu = gu.d_coord(0);

        let m1 = [
            [
                -&half * evv + fuv - &half * guu,
                &half * &eu,
                fu - &half * &ev,
            ],
            [fv - &half * &gu, e.clone(), f.clone()],
            [&half * &gv, f.clone(), g.clone()],
        ];
        let m2 = [
            [Expr::zero(), &half * &ev, &half * &gu],
            [&half * &ev, e.clone(), f.clone()],
            [&half * &gu, f.clone(), g.clone()],
        ];
        // cyclic-column 3x3 determinant: every term carries a + sign
        let det3 = |m: &[[Expr; 3]; 3]| {
            let mut acc = Expr::zero();
            for c in 0..3usize {
                let minor = &m[1][(c + 1) % 3] * &m[2][(c + 2) % 3]
                    - &m[1][(c + 2) % 3] * &m[2][(c + 1) % 3];
                acc = acc + &m[0][c] * minor;
            }
            acc
        };
        let num = det3(&m1) - det3(&m2);
        let den = (e * g - f * f).pow(2)?;
        Ok(num.checked_div(&den)?)
    }

    fn derive_coeffs(&self) -> BiLapCoeffs {
        let dim = self.dim();
        let g = &self.g_contra;
        let s4 = permutations(4);
        let s3 = permutations(3);
        let sixth = Expr::rational(1, 6).expect("exact constant");
        let quarter24 = Expr::rational(1, 24).expect("exact constant");

        let mut a = Vec::with_capacity(dim.pow(4));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        let idx = [i, j, k, l];
                        let mut acc = Expr::zero();
                        for p in &s4 {
                            acc = acc + &g[idx[p[0]]][idx[p[1]]] * &g[idx[p[2]]][idx[p[3]]];
                        }
                        a.push(acc * &quarter24);
                    }
                }
            }
        }

        let mut b = Vec::with_capacity(dim.pow(3));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let idx = [i, j, k];
                    let mut acc = Expr::zero();
                    for p in &s3 {
                        let (pi, pj, pk) = (idx[p[0]], idx[p[1]], idx[p[2]]);
                        let mut grad = Expr::zero();
                        for h in 0..dim {
                            grad = grad + &g[h][pi] * g[pj][pk].d_coord(h);
                        }
                        acc = acc + grad - &g[pi][pj] * &self.gamma[pk];
                    }
                    b.push(acc * &sixth * Expr::from_int(2));
                }
            }
        }

        let mut c = Vec::with_capacity(dim.pow(2));
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = &self.gamma[i] * &self.gamma[j];
                for k in 0..dim {
                    acc = acc - &g[k][i] * self.gamma[j].d_coord(k)
                        - &g[k][j] * self.gamma[i].d_coord(k)
                        - &self.gamma[k] * g[i][j].d_coord(k);
                    for l in 0..dim {
                        acc = acc + &g[k][l] * g[i][j].d_coord(k).d_coord(l);
                    }
                }
                c.push(acc);
            }
        }

        let d = (0..dim)
            .map(|i| -self.laplacian_with(&self.gamma[i], &|_, _| None))
            .collect();

        BiLapCoeffs { dim, a, b, c, d }
    }
}

/// Determinant by Laplace expansion along the first row; fine for the small
/// dimensions charts have.
fn determinant(m: &[Vec<Expr>]) -> Expr {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Expr::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Expr>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * determinant(&minor);
        acc = if col % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Inverse via adjugate over determinant.
fn invert(m: &[Vec<Expr>], det: &Expr) -> Result<Vec<Vec<Expr>>, GeometryError> {
    let n = m.len();
    if n == 1 {
        return Ok(vec![vec![Expr::one().checked_div(det)?]]);
    }
    let mut out = vec![vec![Expr::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Expr>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != i)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let cof = determinant(&minor);
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            out[i][j] = signed.checked_div(det)?;
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests;
