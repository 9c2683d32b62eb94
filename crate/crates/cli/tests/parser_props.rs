use num_bigint::BigInt;
use proptest::prelude::*;
use tama_cli::expr::{evaluate, parse, render, Expr};
use tama_core::Rational;

fn leaf() -> impl Strategy<Value = Expr> {
    let idx = 1usize..=5;
    prop_oneof![
        (0i64..40, 1i64..6).prop_map(|(p, q)| Expr::Num(Rational::new(BigInt::from(p), BigInt::from(q)))),
        idx.clone().prop_map(Expr::X),
        idx.clone().prop_map(Expr::Y),
        idx.clone().prop_map(Expr::E),
        (idx.clone(), idx.clone()).prop_map(|(i, j)| Expr::L(i, j)),
        prop::collection::vec(idx, 2..=5).prop_map(Expr::O),
        Just(Expr::Dirac),
        Just(Expr::Coord),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parse_inverts_render(e in expr()) {
        let text = render(&e);
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn whitespace_is_insignificant(e in expr()) {
        let text = render(&e);
        let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse(&squeezed).unwrap(), parse(&text).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sums_evaluate_termwise(a in leaf(), b in leaf()) {
        let n = 5;
        let sum = Expr::Add(Box::new(a.clone()), Box::new(b.clone()));
        if let (Ok(x), Ok(y)) = (evaluate(&a, n), evaluate(&b, n)) {
            prop_assert_eq!(evaluate(&sum, n).unwrap(), &x + &y);
        }
    }
}
