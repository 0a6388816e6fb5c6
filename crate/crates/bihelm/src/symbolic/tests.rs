use super::*;
use crate::error::SymbolicError;
use crate::proptools::{gen_point, gen_text, rng, GenCfg};

fn ctx2() -> ExprContext {
    ExprContext::new(["x", "y"], ["a", "b"])
}

fn p(s: &str) -> Expr {
    Expr::parse(s, &ctx2()).unwrap_or_else(|e| panic!("parse `{s}`: {e}"))
}

#[test]
fn directed_rewrites_reach_zero() {
    assert!(p("sin(x)^2 + cos(x)^2 - 1").is_zero());
    assert!(p("cosh(x)^2 - sinh(x)^2 - 1").is_zero());
    assert!(p("sqrt(x)^2 - x").is_zero());
    assert!(p("sqrt(x)^3 - x*sqrt(x)").is_zero());
    assert!(p("exp(x)*exp(y) - exp(x + y)").is_zero());
    assert!(p("exp(x)^3 - exp(3*x)").is_zero());
    assert!(p("sin(x)^4 - (1 - cos(x)^2)^2").is_zero());
}

#[test]
fn constant_folding() {
    assert!(p("sin(0)").is_zero());
    assert!(p("sinh(0)").is_zero());
    assert!(p("log(1)").is_zero());
    assert!(p("cos(0) - 1").is_zero());
    assert!(p("cosh(0) - 1").is_zero());
    assert!(p("exp(0) - 1").is_zero());
    assert!(p("sqrt(0)").is_zero());
    assert!(p("sqrt(4/9) - 2/3").is_zero());
    // non-square rationals stay symbolic
    assert!(!p("sqrt(2)").is_constant());
}

#[test]
fn exact_rational_arithmetic() {
    assert!(p("1/2 + 1/3 - 5/6").is_zero());
    assert!(p("2^-1 - 1/2").is_zero());
    assert_eq!(p("7/1").to_text(&ctx2()), "7");
    assert_eq!(p("-3/6").to_text(&ctx2()), "-1/2");
}

#[test]
fn expansion_decides_zero() {
    assert!(p("(x + y)^2 - x^2 - 2*x*y - y^2").is_zero());
    assert!(p("(x + 1)*(x - 1) - x^2 + 1").is_zero());
    assert!(!p("(x + y)^2 - x^2 - y^2").is_zero());
}

#[test]
fn division_cancels_common_factors() {
    assert!(p("(x^2 - 1)/(x - 1) - x - 1").is_zero());
    assert!(p("x/x - 1").is_zero());
    assert!(p("(x^2*y + x)/x - x*y - 1").is_zero());
}

#[test]
fn denominators_are_primitive() {
    // integer content of a denominator factor moves into the coefficients
    assert_eq!(p("1/(2*x + 2)").to_text(&ctx2()), "1/2/(x + 1)");
    assert!(p("1/(2*x + 2) - (1/2)/(x + 1)").is_zero());
    // monomial content splits into single-atom factors
    assert_eq!(p("1/(x^2*y + x^2)").to_text(&ctx2()), "1/(y + 1)/x^2");
}

#[test]
fn structural_equality_of_canonical_forms() {
    assert_eq!(p("(x + 1)^2"), p("x^2 + 2*x + 1"));
    assert_eq!(p("(x - y)*(x + y)"), p("x^2 - y^2"));
    // semantically equal but differently factored denominators
    let lhs = p("(1/exp(x))*(1/exp(y))");
    let rhs = p("1/exp(x + y)");
    assert!(lhs.equivalent(&rhs));
}

#[test]
fn zero_denominator_is_rejected() {
    match Expr::parse("1/(x - x)", &ctx2()) {
        Err(SymbolicError::Parse { message, .. }) => {
            assert!(message.contains("division by zero"), "{message}")
        }
        other => panic!("expected positioned division error, got {other:?}"),
    }
    assert!(Expr::one().checked_div(&Expr::zero()).is_err());
    assert!(Expr::zero().pow(-2).is_err());
    assert!(p("x").pow(0).unwrap().equivalent(&Expr::one()));
}

#[test]
fn jet_variable_bounds() {
    assert!(Expr::jet(0, 1).is_ok());
    assert!(Expr::jet(0, 4).is_ok());
    assert!(matches!(
        Expr::jet(0, 0),
        Err(SymbolicError::JetOrderOutOfRange(0))
    ));
    assert!(matches!(
        Expr::jet(0, 5),
        Err(SymbolicError::JetOrderOutOfRange(5))
    ));
    // u1 is shorthand for the first-order jet along the first coordinate
    assert_eq!(p("u1"), Expr::jet(0, 1).unwrap());
    assert_eq!(p("u2_4"), Expr::jet(1, 4).unwrap());
    match Expr::parse("u3", &ctx2()) {
        Err(SymbolicError::Parse { message, .. }) => {
            assert!(message.contains("dimension"), "{message}")
        }
        other => panic!("expected chart-dimension error, got {other:?}"),
    }
    match Expr::parse("u1_7", &ctx2()) {
        Err(SymbolicError::Parse { message, .. }) => {
            assert!(message.contains("order"), "{message}")
        }
        other => panic!("expected jet-order error, got {other:?}"),
    }
}

#[test]
fn identifier_resolution_precedence() {
    // a chart named like a jet shadows the jet spelling
    let ctx = ExprContext::new(vec!["u1".to_string()], vec![]);
    let e = Expr::parse("u1", &ctx).unwrap();
    assert_eq!(e, Expr::coord(0));
    // declared parameters win over out-of-chart jet spellings
    let ctx = ExprContext::new(vec!["x".to_string()], vec!["u9".to_string()]);
    assert_eq!(Expr::parse("u9", &ctx).unwrap(), Expr::param("u9"));
}

#[test]
fn differentiation_rules() {
    let ctx = ctx2();
    let d = |s: &str, i: usize| p(s).differentiate(i).unwrap();
    assert!(d("sin(x)*y", 0).equivalent(&p("cos(x)*y")));
    assert!(d("sin(x)*y", 1).equivalent(&p("sin(x)")));
    assert!(d("log(x)", 0).equivalent(&p("1/x")));
    assert!(d("sqrt(x^2 + 1)", 0).equivalent(&p("x/sqrt(x^2 + 1)")));
    assert!(d("x/y", 1).equivalent(&p("-x/y^2")));
    assert!(d("exp(2*x)", 0).equivalent(&p("2*exp(2*x)")));
    assert!(d("cosh(x*y)", 0).equivalent(&p("y*sinh(x*y)")));
    let _ = ctx;
}

#[test]
fn coordinate_differentiation_rejects_jets() {
    assert!(matches!(
        p("u1_2*x").differentiate(0),
        Err(SymbolicError::DifferentiateJet)
    ));
    // the formal partials treat jets as opaque constants / variables
    assert!(p("u1_2*x").d_coord(0).equivalent(&p("u1_2")));
    assert!(p("u1_2^2*x").d_jet(0, 2).equivalent(&p("2*u1_2*x")));
    assert!(p("u1_2*x").d_jet(0, 3).is_zero());
}

#[test]
fn substitution_binds_all_variable_kinds() {
    let mut s = Substitution::new();
    s.bind_coord(0, &p("y + 1"));
    assert!(p("x^2")
        .substitute(&s)
        .unwrap()
        .equivalent(&p("(y + 1)^2")));

    let mut s = Substitution::new();
    s.bind_param("a", &p("3"));
    assert!(p("a*x").substitute(&s).unwrap().equivalent(&p("3*x")));

    let mut s = Substitution::new();
    s.bind_jet(0, 2, &p("u1^2")).unwrap();
    assert!(p("u1_2 - u1^2").substitute(&s).unwrap().is_zero());
    assert!(Substitution::new().bind_jet(0, 9, &p("x")).is_err());

    // substitution reaches function arguments
    let mut s = Substitution::new();
    s.bind_coord(0, &p("0"));
    assert!(p("sin(x)").substitute(&s).unwrap().is_zero());

    let mut s = Substitution::new();
    s.bind_coord(0, &p("0"));
    assert!(matches!(
        p("1/x").substitute(&s),
        Err(SymbolicError::DivisionByZero)
    ));
    assert!(matches!(
        p("log(x)").substitute(&s),
        Err(SymbolicError::UndefinedValue { func: "log" })
    ));
}

#[test]
fn evaluation_and_unbound_symbols() {
    let e = p("x^2 + a");
    let mut pt = EvalPoint::default();
    pt.coords.insert(0, 2.0);
    assert!(matches!(
        e.evaluate(&pt),
        Err(SymbolicError::UnboundSymbol(_))
    ));
    pt.params.insert("a".into(), 0.5);
    assert!((e.evaluate(&pt).unwrap() - 4.5).abs() < 1e-15);
}

#[test]
fn parse_errors_carry_byte_offsets() {
    let ctx = ctx2();
    let off = |s: &str| match Expr::parse(s, &ctx) {
        Err(SymbolicError::Parse { offset, .. }) => offset,
        other => panic!("expected parse error for `{s}`, got {other:?}"),
    };
    assert_eq!(off("x + * y"), 4);
    assert_eq!(off("(x + y"), 6);
    assert_eq!(off("x y"), 2);
    assert_eq!(off("2 + foo(x)"), 4);
    assert_eq!(off("bar"), 0);
    assert_eq!(off(""), 0);
    assert_eq!(off("x ^ y"), 4);
    assert_eq!(off("x @ y"), 2);
}

#[test]
fn display_orders_terms_by_graded_lex() {
    let ctx = ctx2();
    assert_eq!(p("1 + x + x^2").to_text(&ctx), "x^2 + x + 1");
    assert_eq!(p("x*y + x^2").to_text(&ctx), "x^2 + x*y");
    assert_eq!(p("x^2 + y^3").to_text(&ctx), "y^3 + x^2");
    assert_eq!(p("-x + 2").to_text(&ctx), "-x + 2");
    assert_eq!(p("3*x/(2*y)").to_text(&ctx), "3/2*x/y");
}

#[test]
fn ring_axioms_on_random_trees() {
    let cfg = GenCfg::standard();
    let mut r = rng(0xB1_4E7);
    let mut sampled = 0usize;
    while sampled < 334 {
        let (ta, tb, tc) = (
            gen_text(&mut r, &cfg),
            gen_text(&mut r, &cfg),
            gen_text(&mut r, &cfg),
        );
        let (Ok(a), Ok(b), Ok(c)) = (
            Expr::parse(&ta, &cfg.ctx),
            Expr::parse(&tb, &cfg.ctx),
            Expr::parse(&tc, &cfg.ctx),
        ) else {
            continue; // e.g. a random denominator was canonically zero
        };
        sampled += 1;
        assert_eq!(&a + &b, &b + &a, "{ta} | {tb}");
        assert_eq!(&a * &b, &b * &a, "{ta} | {tb}");
        assert_eq!((&a + &b) + &c, &a + (&b + &c), "{ta} | {tb} | {tc}");
        assert_eq!((&a * &b) * &c, &a * (&b * &c), "{ta} | {tb} | {tc}");
        assert_eq!(&a * (&b + &c), &a * &b + &a * &c, "{ta} | {tb} | {tc}");
        assert!((&a - &a).is_zero());
        assert_eq!(&a + Expr::zero(), a);
        assert_eq!(&a * Expr::one(), a);
        assert_eq!(-(-&a), a);
    }
}

#[test]
fn mixed_partials_commute() {
    let cfg = GenCfg::standard();
    let mut r = rng(0xD1FF);
    let mut sampled = 0usize;
    while sampled < 100 {
        let t = gen_text(&mut r, &cfg);
        let Ok(e) = Expr::parse(&t, &cfg.ctx) else {
            continue;
        };
        sampled += 1;
        let xy = e.d_coord(0).d_coord(1);
        let yx = e.d_coord(1).d_coord(0);
        assert!(xy.equivalent(&yx), "coordinate partials disagree on {t}");
        let cj = e.d_coord(0).d_jet(1, 2);
        let jc = e.d_jet(1, 2).d_coord(0);
        assert!(cj.equivalent(&jc), "mixed coordinate/jet partials on {t}");
    }
}

#[test]
fn canonicalization_preserves_value() {
    let cfg = GenCfg::standard();
    let mut r = rng(0x5EED);
    let mut samples = 0usize;
    let mut comparisons = 0usize;
    let mut attempts = 0usize;
    while samples < 100 {
        attempts += 1;
        assert!(attempts < 5000, "generator kept producing invalid samples");
        let t = gen_text(&mut r, &cfg);
        let Ok(raw) = super::parse::parse_raw(&t, &cfg.ctx) else {
            continue;
        };
        let Ok(e) = Expr::parse(&t, &cfg.ctx) else {
            continue;
        };
        samples += 1;
        for _ in 0..10 {
            let pt = gen_point(&mut r, &cfg.ctx);
            let (Ok(v_raw), Ok(v_canon)) =
                (super::parse::eval_raw(&raw, &pt), e.evaluate(&pt))
            else {
                continue;
            };
            if v_raw.abs() > 1e6 || v_canon.abs() > 1e6 {
                continue; // ill-conditioned sample, float comparison meaningless
            }
            comparisons += 1;
            let tol = 1e-9 * v_raw.abs().max(v_canon.abs()).max(1.0);
            assert!(
                (v_raw - v_canon).abs() <= tol,
                "value drift on `{t}`: raw {v_raw} vs canonical {v_canon}"
            );
        }
    }
    assert!(comparisons >= 500, "only {comparisons} usable comparisons");
}

#[test]
fn display_round_trips() {
    let cfg = GenCfg::standard();
    let mut r = rng(0x707);
    let mut sampled = 0usize;
    while sampled < 200 {
        let t = gen_text(&mut r, &cfg);
        let Ok(e) = Expr::parse(&t, &cfg.ctx) else {
            continue;
        };
        sampled += 1;
        let rendered = e.to_text(&cfg.ctx);
        let back = Expr::parse(&rendered, &cfg.ctx)
            .unwrap_or_else(|err| panic!("rendered `{rendered}` fails to parse: {err}"));
        assert_eq!(back, e, "round trip changed `{t}` via `{rendered}`");
    }
}

#[test]
fn coordinate_support_queries() {
    let e = p("u1_2*y + sin(x)*a");
    assert_eq!(e.coords().into_iter().collect::<Vec<_>>(), vec![0, 1]);
    assert_eq!(e.jet_coords().into_iter().collect::<Vec<_>>(), vec![0]);
    assert!(e.contains_jet());
    assert!(!e.is_coordinate_free());
    assert!(p("a^2 - b").is_coordinate_free());
    assert!(!p("a^2 - b").contains_jet());
    assert!(p("3/4").is_constant());
    assert!(!p("a").is_constant());
}
