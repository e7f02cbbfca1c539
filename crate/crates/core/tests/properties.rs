use num::BigInt;
use proptest::prelude::*;
use riordan::derflip::flip;
use riordan::expr::{parse, BinOp, Expr, Func};
use riordan::riordan::matrix_from_az;
use riordan::sums::try_add;
use riordan::{rat, RiordanArray, Series};

const N: usize = 10;

fn series_with(c0: impl Strategy<Value = i64>) -> impl Strategy<Value = Series> {
    (c0, prop::collection::vec(-4i64..=4, 0..6)).prop_map(|(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        Series::from_ints(N, &c)
    })
}

fn any_series() -> impl Strategy<Value = Series> {
    series_with(-4i64..=4)
}

fn unit_series() -> impl Strategy<Value = Series> {
    series_with(prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)])
}

fn array_strategy() -> impl Strategy<Value = RiordanArray> {
    (unit_series(), unit_series()).prop_map(|(d, h1)| {
        // h = t * (series with non-zero constant)
        RiordanArray::new(d, h1.shift(1).expect("shift within order")).expect("valid by construction")
    })
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..1000).prop_map(|n| Expr::Int(BigInt::from(n))),
        Just(Expr::Var),
        prop::sample::select(vec!["pas", "cat", "C", "F", "barC", "T"]).prop_map(|s| Expr::Name(s.into())),
        (0usize..12).prop_map(Expr::BigO),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        let op = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]);
        let unary = prop::sample::select(vec![
            Func::Der,
            Func::Flip,
            Func::Inv,
            Func::Sigma,
            Func::Sqrt,
            Func::D,
            Func::Rev,
        ]);
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| Expr::Bin(o, Box::new(a), Box::new(b))),
            (inner.clone(), -3i64..=6).prop_map(|(b, e)| Expr::Pow(Box::new(b), e)),
            (unary, inner.clone()).prop_map(|(f, a)| Expr::Call(f, vec![a])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Call(Func::Comp, vec![a, b])),
            (inner.clone(), inner).prop_map(|(d, h)| Expr::Array(Box::new(d), Box::new(h))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        prop_assert_eq!(a.mul(&Series::one(N)).unwrap(), a.clone());
    }

    #[test]
    fn reciprocal_and_product_rule(a in unit_series(), b in any_series()) {
        prop_assert_eq!(a.mul(&a.reciprocal().unwrap()).unwrap(), Series::one(N));
        let lhs = a.mul(&b).unwrap().derivative();
        let rhs = a.derivative().mul(&b).unwrap().add(&a.mul(&b.derivative()).unwrap()).unwrap();
        prop_assert!(lhs.agrees(&rhs));
    }

    #[test]
    fn compositional_inverse(h in array_strategy()) {
        let h = h.h();
        let hbar = h.comp_inverse().unwrap();
        prop_assert!(h.compose(&hbar).unwrap().agrees(&Series::t(N)));
        prop_assert!(hbar.compose(h).unwrap().agrees(&Series::t(N)));
    }

    #[test]
    fn group_laws(a in array_strategy(), b in array_strategy(), c in array_strategy()) {
        let m = 8;
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(ab.matrix(m).unwrap(), a.matrix(m).unwrap().mul(&b.matrix(m).unwrap()));
        prop_assert!(ab.multiply(&c).unwrap().agrees(&a.multiply(&b.multiply(&c).unwrap()).unwrap()));
        let id = RiordanArray::identity(N);
        prop_assert!(a.multiply(&a.inverse().unwrap()).unwrap().agrees(&id));
        prop_assert!(a.inverse().unwrap().multiply(&a).unwrap().agrees(&id));
        let inv_ab = ab.inverse().unwrap();
        prop_assert!(inv_ab.agrees(&b.inverse().unwrap().multiply(&a.inverse().unwrap()).unwrap()));
    }

    #[test]
    fn a_and_z_rebuild_the_array(a in array_strategy()) {
        let m = 8;
        let rebuilt = matrix_from_az(&a.entry(0, 0).unwrap(), &a.a_sequence().unwrap(), &a.z_sequence().unwrap(), m);
        prop_assert_eq!(rebuilt, a.matrix(m).unwrap());
    }

    #[test]
    fn flip_is_an_involution(a in array_strategy()) {
        let twice = flip(&flip(&a).unwrap()).unwrap();
        prop_assert!(twice.agrees(&a));
    }

    #[test]
    fn sums_with_a_shared_h(a in array_strategy(), d in unit_series()) {
        let b = RiordanArray::new(d, a.h().clone()).unwrap();
        match try_add(&a, &b) {
            Ok(sum) => prop_assert_eq!(sum.matrix(8).unwrap(), a.matrix(8).unwrap().add(&b.matrix(8).unwrap())),
            Err(_) => prop_assert_eq!(a.d().coeff(0) + b.d().coeff(0), rat(0)),
        }
    }

    #[test]
    fn printing_round_trips_through_the_parser(e in expr_strategy()) {
        let printed = e.to_string();
        let back = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(back, e, "printed as {}", printed);
    }

    #[test]
    fn parser_never_panics(s in "\\PC{0,40}") {
        if let Err(e) = parse(&s) {
            prop_assert!(e.offset <= s.len());
        }
    }
}
