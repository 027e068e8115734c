mod common;

use common::*;
use proptest::prelude::*;
use triharm_core::algebra::{rat, Base, Frame};
use triharm_core::derivation::RewriteSystem;
use triharm_core::expr::{expr_of_poly, parse_equation, parse_expression, Expr};
use triharm_core::reference::DISPLAYS;
use triharm_core::Error;

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..=12, 1i64..=5).prop_map(|(n, d)| Expr::Num(rat(n, d))),
        prop::sample::select(Base::ALL.to_vec()).prop_map(Expr::Sym),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e| Box::new(e);
        prop_oneof![
            (arb_frame(), inner.clone()).prop_map(move |(i, e)| Expr::Derive(i, b(e))),
            inner.clone().prop_map(move |e| Expr::Laplacian(b(e))),
            inner.clone().prop_map(move |e| Expr::Neg(b(e))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner, 0u32..4).prop_map(move |(x, n)| Expr::Pow(b(x), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_parse_round_trip(e in arb_expr()) {
        let text = e.to_string();
        let back = parse_expression(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e, "{}", text);
    }

    #[test]
    fn poly_text_round_trip(p in arb_poly()) {
        let rs = RewriteSystem::generic();
        let parsed = parse_expression(&p.to_string()).unwrap().to_poly(&rs);
        prop_assert_eq!(parsed, rs.normalize(&p));
        prop_assert_eq!(expr_of_poly(&p).to_string(), p.to_string());
    }
}

#[test]
fn display_corpus_round_trips() {
    for d in DISPLAYS {
        let eq = d.equation().unwrap_or_else(|e| panic!("{}: {e}", d.id));
        let text = eq.to_string();
        let back = parse_equation(&text).unwrap_or_else(|e| panic!("{}: {text}: {e}", d.id));
        assert_eq!(back, eq, "{}", d.id);
        assert_eq!(back.to_string(), text);
        let rs = d.regime.rules();
        assert_eq!(back.to_poly(&rs), d.poly(), "{}", d.id);
    }
    assert!(DISPLAYS.len() >= 50);
}

#[test]
fn canonical_text_is_a_fixed_point() {
    for src in ["k1^2 - k1*f2", "1/2*k1 - 3/4", "-353*sigma^4 - c^2"] {
        assert_eq!(parse_expression(src).unwrap().to_string(), src);
    }
}

#[test]
fn omega_rule_as_an_expression() {
    let p = parse_expression("e1(sigma) - 2*k1*sigma").unwrap().to_poly(&RewriteSystem::omega());
    assert!(p.is_zero());
}

#[test]
fn precedence() {
    let e = parse_expression("-k1^2*f2 + c").unwrap();
    let k1 = Box::new(Expr::Sym(Base::K1));
    let expected = Expr::Add(
        Box::new(Expr::Mul(
            Box::new(Expr::Neg(Box::new(Expr::Pow(k1, 2)))),
            Box::new(Expr::Sym(Base::F2)),
        )),
        Box::new(Expr::Sym(Base::C)),
    );
    assert_eq!(e, expected);
    let d = parse_expression("e3(e1(k1))").unwrap();
    assert!(matches!(d, Expr::Derive(Frame::E3, _)));
}

#[test]
fn errors_carry_positions() {
    assert!(matches!(
        parse_expression("e4(k1)"),
        Err(Error::UnknownSymbol { ref name, line: 1, column: 1 }) if name == "e4"
    ));
    assert!(matches!(parse_expression("k1 +\n  * f2"), Err(Error::Syntax { line: 2, column: 3, .. })));
    assert!(matches!(parse_expression("k1^f2"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expression("1/0"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expression("(k1"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expression("k1 f2"), Err(Error::Syntax { .. })));
}
