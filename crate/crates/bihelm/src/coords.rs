//! Catalog of the flat-plane coordinate systems with known separation
//! behaviour, each packaged as a metric plus the constraint sets whose
//! verdicts are established: Cartesian and polar charts carry genuine
//! non-regular separation, while the conformal (Liouville) charts only
//! admit the trivial second-order reduction.

use crate::error::SeparationError;
use crate::geometry::Metric;
use crate::separation::{ConstraintSet, Verdict};
use crate::symbolic::Expr;

/// A constraint set shipped with a catalog metric, together with the
/// verdict `check_constraints` is known to reach on it.
#[derive(Debug, Clone)]
pub struct KnownConstraint {
    pub label: String,
    pub set: ConstraintSet,
    pub expected: Verdict,
    /// Human-readable parameter condition when the verdict is conditional,
    /// e.g. `lambda = 0`.
    pub condition: Option<String>,
}

/// A named coordinate system with its known constraint sets.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub metric: Metric,
    pub known_constraints: Vec<KnownConstraint>,
}

fn metric(chart: &[&str], params: &[&str], rows: &[&[&str]]) -> Result<Metric, SeparationError> {
    Ok(Metric::new(
        chart.iter().map(|s| s.to_string()).collect(),
        params.iter().map(|s| s.to_string()).collect(),
        rows.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect(),
    )?)
}

fn known(
    label: &str,
    set: ConstraintSet,
    expected: Verdict,
    condition: Option<&str>,
) -> KnownConstraint {
    KnownConstraint {
        label: label.to_string(),
        set,
        expected,
        condition: condition.map(|s| s.to_string()),
    }
}

/// The Cartesian chart. Both one-sided constraint sets pass: the equation
/// separates non-regularly on the submanifold where one profile satisfies
/// a second-order exponential-type equation with constant `c1` (or `c2`),
/// leaving a linear fourth-order equation for the other profile.
pub fn cartesian2() -> CatalogEntry {
    let m = metric(&["x", "y"], &[], &[&["1", "0"], &["0", "1"]]).expect("cartesian metric");
    let x_side = ConstraintSet::from_texts(
        &m,
        &[("c1", "u1_2 + u1^2")],
        &[
            ("u1_3", "-2*u1_2*u1"),
            ("u1_4", "-2*u1_2^2 - 2*u1_3*u1"),
        ],
    )
    .expect("cartesian x-side constraints");
    let y_side = ConstraintSet::from_texts(
        &m,
        &[("c2", "u2_2 + u2^2")],
        &[
            ("u2_3", "-2*u2_2*u2"),
            ("u2_4", "-2*u2_2^2 - 2*u2_3*u2"),
        ],
    )
    .expect("cartesian y-side constraints");
    CatalogEntry {
        name: "cartesian".to_string(),
        metric: m,
        known_constraints: vec![
            known("x-side", x_side, Verdict::Pass, None),
            known("y-side", y_side, Verdict::Pass, None),
        ],
    }
}

/// The polar chart. The angular constraint set passes unconditionally;
/// the radial one is tangent to the lifted flow only when the separation
/// constant vanishes.
pub fn polar() -> CatalogEntry {
    let m = metric(&["r", "theta"], &[], &[&["1", "0"], &["0", "1/r^2"]])
        .expect("polar metric");
    let theta_side = ConstraintSet::from_texts(
        &m,
        &[("c2", "u2_2 + u2^2")],
        &[
            ("u2_3", "-2*u2_2*u2"),
            ("u2_4", "-2*u2_2^2 - 2*u2_3*u2"),
        ],
    )
    .expect("polar angular constraints");
    let radial = ConstraintSet::from_texts(
        &m,
        &[("c1", "r^2*(u1_2 + u1^2) - r*u1")],
        &[
            ("u1_3", "-2*c1/r^3 - 2*u1*u1_2 + u1_2/r - u1/r^2"),
            (
                "u1_4",
                "6*c1/r^4 - 2*u1*u1_3 - 2*u1_2^2 + u1_3/r - 2*u1_2/r^2 + 2*u1/r^3",
            ),
            (
                "u2_4",
                "lambda*r^4 - c1^2 - 2*c1*u2^2 - 2*c1*u2_2 - u2^4 - 6*u2^2*u2_2 \
                 - 4*u2^2 - 4*u2*u2_3 - 3*u2_2^2 - 4*u2_2",
            ),
        ],
    )
    .expect("polar radial constraints");
    CatalogEntry {
        name: "polar".to_string(),
        metric: m,
        known_constraints: vec![
            known("theta-side", theta_side, Verdict::Pass, None),
            known(
                "radial",
                radial,
                Verdict::Conditional,
                Some("lambda = 0"),
            ),
        ],
    }
}

/// The parabolic chart, a conformal metric with profiles f = u², g = v².
pub fn parabolic() -> CatalogEntry {
    liouville_entry("parabolic", "u^2", "v^2", &[]).expect("parabolic entry")
}

/// The elliptic-hyperbolic chart with half-focal parameter named `a`:
/// profiles a²cosh²u and −a²cos²v. Fails if the parameter name collides
/// with a chart or reserved name.
pub fn elliptic_hyperbolic(a: &str) -> Result<CatalogEntry, SeparationError> {
    liouville_entry(
        "elliptic-hyperbolic",
        &format!("{a}^2*cosh(u)^2"),
        &format!("-{a}^2*cos(v)^2"),
        &[a],
    )
}

/// A general conformal metric (f(u) + g(v))(du² + dv²) given by profile
/// texts in the chart (u, v). `params` lists extra symbolic parameter
/// names the profiles use. The shipped constraint set is the trivial
/// second-order reduction ∆ψ = γψ lifted to jets; it is conditional on
/// γ² = λ.
pub fn liouville(
    f_profile: &str,
    g_profile: &str,
    params: &[&str],
) -> Result<CatalogEntry, SeparationError> {
    liouville_entry("liouville", f_profile, g_profile, params)
}

/// JSON form for user-supplied conformal profiles:
/// `{"f": "...", "g": "...", "params": ["a"]}`.
pub fn liouville_from_json(text: &str) -> Result<CatalogEntry, SeparationError> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct RawProfiles {
        f: String,
        g: String,
        #[serde(default)]
        params: Vec<String>,
    }
    let raw: RawProfiles =
        serde_json::from_str(text).map_err(|e| SeparationError::Json(e.to_string()))?;
    let params: Vec<&str> = raw.params.iter().map(|s| s.as_str()).collect();
    liouville(&raw.f, &raw.g, &params)
}

fn liouville_entry(
    name: &str,
    f_profile: &str,
    g_profile: &str,
    params: &[&str],
) -> Result<CatalogEntry, SeparationError> {
    // "gamma" is reserved for the trivial-reduction constant and lives in
    // the metric parameter list so constraint texts can mention it.
    let mut all_params: Vec<&str> = params.to_vec();
    if !all_params.contains(&"gamma") {
        all_params.push("gamma");
    }
    let conformal = format!("1/({f_profile} + ({g_profile}))");
    let m = metric(
        &["u", "v"],
        &all_params,
        &[&[&conformal, "0"], &["0", &conformal]],
    )?;
    let f = Expr::parse(f_profile, m.ctx()).map_err(SeparationError::Symbolic)?;
    let g = Expr::parse(g_profile, m.ctx()).map_err(SeparationError::Symbolic)?;
    let set = helmholtz_set(&m, &f, &g)?;
    Ok(CatalogEntry {
        name: name.to_string(),
        metric: m,
        known_constraints: vec![known(
            "helmholtz",
            set,
            Verdict::Conditional,
            Some("gamma^2 = lambda"),
        )],
    })
}

/// The trivial-reduction constraint set for a conformal metric: on the
/// product ansatz, ∆ψ = γψ separates into U″ = (c + γf)U and
/// V″ = (−c + γg)V; differentiating those twice in each coordinate closes
/// the jet relations through order four.
fn helmholtz_set(m: &Metric, f: &Expr, g: &Expr) -> Result<ConstraintSet, SeparationError> {
    let gamma = Expr::param("gamma");
    let c = Expr::param("c");
    let two = Expr::from_int(2);
    let (fp, gp) = (f.d_coord(0), g.d_coord(1));
    let (fpp, gpp) = (fp.d_coord(0), gp.d_coord(1));
    let u1 = Expr::jet(0, 1).unwrap();
    let u1_2 = Expr::jet(0, 2).unwrap();
    let u1_3 = Expr::jet(0, 3).unwrap();
    let u2 = Expr::jet(1, 1).unwrap();
    let u2_2 = Expr::jet(1, 2).unwrap();
    let u2_3 = Expr::jet(1, 3).unwrap();

    let constants = vec![("c".to_string(), &u1_2 + &u1 * &u1 - &gamma * f)];
    let relations = vec![
        ((0, 3), &gamma * &fp - &two * &u1 * &u1_2),
        (
            (0, 4),
            &gamma * &fpp - &two * &u1_2 * &u1_2 - &two * &u1 * &u1_3,
        ),
        ((1, 2), &gamma * g - &c - &u2 * &u2),
        ((1, 3), &gamma * &gp - &two * &u2 * &u2_2),
        (
            (1, 4),
            &gamma * &gpp - &two * &u2_2 * &u2_2 - &two * &u2 * &u2_3,
        ),
    ];
    ConstraintSet::from_parts(m, constants, relations)
}

/// Resolve one of the four fixed catalog names: `cartesian`, `polar`,
/// `parabolic`, `elliptic-hyperbolic`.
pub fn by_name(name: &str) -> Option<CatalogEntry> {
    match name {
        "cartesian" => Some(cartesian2()),
        "polar" => Some(polar()),
        "parabolic" => Some(parabolic()),
        "elliptic-hyperbolic" | "elliptic_hyperbolic" => {
            Some(elliptic_hyperbolic("a").expect("fixed catalog entry"))
        }
        _ => None,
    }
}

/// The fixed catalog names accepted by [`by_name`].
pub const CATALOG_NAMES: [&str; 4] = ["cartesian", "polar", "parabolic", "elliptic-hyperbolic"];
