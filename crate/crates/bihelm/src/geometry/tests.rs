use super::*;
use crate::error::GeometryError;
use crate::symbolic::Expr;

const POLAR: &str =
    r#"{"chart": ["r", "theta"], "g_contra": [["1", "0"], ["0", "1/r^2"]]}"#;

fn polar() -> Metric {
    Metric::from_json(POLAR).unwrap()
}

fn pe(m: &Metric, s: &str) -> Expr {
    Expr::parse(s, m.ctx()).unwrap()
}

#[test]
fn polar_covariant_and_determinant() {
    let m = polar();
    assert!(m.g_cov(0, 0).equivalent(&Expr::one()));
    assert!(m.g_cov(1, 1).equivalent(&pe(&m, "r^2")));
    assert!(m.g_cov(0, 1).is_zero());
    assert!(m.det_contra().equivalent(&pe(&m, "1/r^2")));
}

#[test]
fn polar_christoffel_and_drift() {
    let m = polar();
    assert!(m.gamma(0).equivalent(&pe(&m, "-1/r")));
    assert!(m.gamma(1).is_zero());
    for k in 0..2 {
        assert!(
            m.gamma(k).equivalent(&-m.drift(k).clone()),
            "contracted symbols and determinant drift disagree at {k}"
        );
    }
}

#[test]
fn polar_laplacian() {
    let m = polar();
    assert!(m
        .laplacian(&pe(&m, "r^2"))
        .unwrap()
        .equivalent(&Expr::from_int(4)));
    // log r is harmonic away from the origin
    assert!(m.laplacian(&pe(&m, "log(r)")).unwrap().is_zero());
    // angular dependence picks up the 1/r^2 factor
    assert!(m
        .laplacian(&pe(&m, "sin(theta)"))
        .unwrap()
        .equivalent(&pe(&m, "-sin(theta)/r^2")));
    assert!(m.laplacian(&pe(&m, "u1")).is_err());
}

#[test]
fn polar_iterated_operator_coefficients() {
    let m = polar();
    let c = m.coeffs();
    assert!(c.a(0, 0, 0, 0).equivalent(&Expr::one()));
    assert!(c.a(1, 1, 1, 1).equivalent(&pe(&m, "1/r^4")));
    assert!(c.a(0, 0, 1, 1).equivalent(&pe(&m, "1/(3*r^2)")));
    assert!(c.a(0, 1, 0, 1).equivalent(&pe(&m, "1/(3*r^2)")));
    assert!(c.b(0, 0, 0).equivalent(&pe(&m, "2/r")));
    assert!(c.b(0, 1, 1).equivalent(&pe(&m, "-2/(3*r^3)")));
    assert!(c.c(0, 0).equivalent(&pe(&m, "-1/r^2")));
    assert!(c.d(0).equivalent(&pe(&m, "1/r^3")));
    assert!(c.d(1).is_zero());
}

#[test]
fn flat_chart_is_trivial() {
    let m = Metric::from_json(
        r#"{"chart": ["x", "y"], "g_contra": [["1", "0"], ["0", "1"]]}"#,
    )
    .unwrap();
    for k in 0..2 {
        assert!(m.gamma(k).is_zero());
        assert!(m.drift(k).is_zero());
        assert!(m.coeffs().d(k).is_zero());
    }
    for i in 0..2 {
        for j in 0..2 {
            assert!(m.coeffs().c(i, j).is_zero());
            for k in 0..2 {
                assert!(m.coeffs().b(i, j, k).is_zero());
            }
        }
    }
    assert!(m.coeffs().a(0, 0, 0, 0).equivalent(&Expr::one()));
    assert!(m
        .coeffs()
        .a(0, 0, 1, 1)
        .equivalent(&Expr::rational(1, 3).unwrap()));
    assert!(m.gaussian_curvature().unwrap().is_zero());
}

#[test]
fn polar_curvature_vanishes() {
    assert!(polar().gaussian_curvature().unwrap().is_zero());
}

#[test]
fn sphere_curvature_is_constant_one() {
    let m = Metric::from_json(
        r#"{"chart": ["theta", "phi"], "g_contra": [["1", "0"], ["0", "1/sin(theta)^2"]]}"#,
    )
    .unwrap();
    let k = m.gaussian_curvature().unwrap();
    assert!(k.equivalent(&Expr::one()), "sphere curvature came out as {k:?}");
}

#[test]
fn indefinite_signature_is_accepted() {
    let m = Metric::from_json(
        r#"{"chart": ["t", "x"], "g_contra": [["1", "0"], ["0", "-1"]]}"#,
    )
    .unwrap();
    assert!(m.det_contra().equivalent(&Expr::from_int(-1)));
    assert!(m.gaussian_curvature().unwrap().is_zero());
    assert!(m.gamma(0).is_zero());
}

#[test]
fn christoffel_matches_determinant_drift_off_diagonal() {
    let m = Metric::from_json(
        r#"{"chart": ["x", "y"],
            "g_contra": [["1 + y^2", "x*y"], ["x*y", "1 + x^2"]]}"#,
    )
    .unwrap();
    for k in 0..2 {
        assert!(
            m.gamma(k).equivalent(&-m.drift(k).clone()),
            "derivation mismatch at component {k}"
        );
    }
}

#[test]
fn parameters_flow_into_entries() {
    let m = Metric::from_json(
        r#"{"chart": ["x", "y"], "params": ["a"],
            "g_contra": [["a^2", "0"], ["0", "a^2"]]}"#,
    )
    .unwrap();
    assert!(m.g_cov(0, 0).equivalent(&pe(&m, "1/a^2")));
    assert!(m.gaussian_curvature().unwrap().is_zero());
}

#[test]
fn validation_rejects_malformed_input() {
    let shape = Metric::from_json(r#"{"chart": ["x", "y"], "g_contra": [["1", "0"]]}"#);
    assert!(matches!(shape, Err(GeometryError::BadShape { .. })));

    let asym = Metric::from_json(
        r#"{"chart": ["x", "y"], "g_contra": [["1", "x"], ["0", "1"]]}"#,
    );
    assert!(matches!(asym, Err(GeometryError::NotSymmetric { i: 0, j: 1 })));

    let degen = Metric::from_json(
        r#"{"chart": ["x", "y"], "g_contra": [["1", "1"], ["1", "1"]]}"#,
    );
    assert!(matches!(degen, Err(GeometryError::Degenerate)));

    let unknown = Metric::from_json(
        r#"{"chart": ["x"], "gcontra": [["1"]]}"#,
    );
    assert!(matches!(unknown, Err(GeometryError::Json(_))));

    let jet = Metric::from_json(r#"{"chart": ["x"], "g_contra": [["u1"]]}"#);
    assert!(matches!(jet, Err(GeometryError::JetEntry { i: 0, j: 0 })));

    let reserved = Metric::from_json(
        r#"{"chart": ["x"], "params": ["lambda"], "g_contra": [["1"]]}"#,
    );
    assert!(matches!(reserved, Err(GeometryError::ReservedName(_))));

    let dup = Metric::from_json(
        r#"{"chart": ["x", "x"], "g_contra": [["1", "0"], ["0", "1"]]}"#,
    );
    assert!(matches!(dup, Err(GeometryError::DuplicateName(_))));

    let bad_entry = Metric::from_json(r#"{"chart": ["x"], "g_contra": [["1 +"]]}"#);
    assert!(matches!(bad_entry, Err(GeometryError::Entry { .. })));

    let m1 = Metric::from_json(r#"{"chart": ["x"], "g_contra": [["1"]]}"#).unwrap();
    assert!(matches!(
        m1.gaussian_curvature(),
        Err(GeometryError::CurvatureDimension(1))
    ));
}
