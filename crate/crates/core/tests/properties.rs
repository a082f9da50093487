use costlr::corpus::{graph_functions, type_of_closed};
use costlr::relations::{Rel, RelEnv, Relator};
use costlr::semantics::{
    add_cost, app_cost, beta_count_closed, capp, ccons, cpair, eval_cost, eval_std, strip, Env,
};
use costlr::{parse_term, parse_type, typecheck, CostVal, Costed, Ctx, Ground, Ty};
use proptest::prelude::*;

fn ground() -> impl Strategy<Value = Ground> {
    (0u64..5).prop_map(Ground::Nat).prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(Ground::List),
            (inner.clone(), inner).prop_map(|(a, b)| Ground::pair(a, b)),
        ]
    })
}

fn costed() -> impl Strategy<Value = Costed> {
    (ground(), -10i64..10).prop_map(|(g, c)| Costed::new(g.to_cost_val(), c))
}

fn costed_list() -> impl Strategy<Value = Costed> {
    (prop::collection::vec(ground(), 0..4), -10i64..10)
        .prop_map(|(gs, c)| Costed::new(Ground::List(gs).to_cost_val(), c))
}

/// Closed graph functions over `Nat`, with their costed denotation.
fn nat_functions() -> Vec<Costed> {
    graph_functions()
        .into_iter()
        .filter(|(_, t)| matches!(type_of_closed(t), Ty::Arrow(d, _) if *d == Ty::Nat))
        .map(|(_, t)| eval_cost(&Env::new(), &t))
        .collect()
}

fn ty() -> impl Strategy<Value = Ty> {
    prop_oneof![Just(Ty::Nat), Just(Ty::var("a")), Just(Ty::var("b"))].prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Ty::list),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ty::pair(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Ty::arrow(a, b)),
        ]
    })
}

/// Source text of a closed term of type `Nat`, well typed by construction.
fn nat_program() -> impl Strategy<Value = String> {
    (0u64..6).prop_map(|n| n.to_string()).prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), 0u64..3).prop_map(|(a, k)| format!(r"((\x:Nat. x + {k}) {a})")),
            (inner.clone(), 0u64..4).prop_map(|(a, m)| format!(r"ifold(\z:Nat. z + 1, {a}, {m})")),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| format!(r"lfold(\x:Nat. \y:Nat. x + y, 0, {a} : {b} : nil[Nat])")),
            (inner.clone(), inner.clone(), inner.clone())
                .prop_map(|(a, b, c)| format!("(ncase {a} {{0 -> {b}; n -> n + {c}}})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(pcase ({a}, {b}) {{(p, q) -> q}})")),
            inner.clone().prop_map(|a| format!("(lcase {a} : nil[Nat] {{nil -> 0; h:t -> h}})")),
            inner.prop_map(|a| format!(r"((\f:Nat->Nat. f {a}) (\y:Nat. y + 1))")),
        ]
    })
}

proptest! {
    #[test]
    fn add_cost_composes(c in -20i64..20, d in -20i64..20, x in costed()) {
        prop_assert!(add_cost(c, add_cost(d, x.clone())) == add_cost(c + d, x.clone()));
        prop_assert!(add_cost(0, x.clone()) == x);
    }

    #[test]
    fn cost_floats_through_cons(c in -20i64..20, x in costed(), xs in costed_list()) {
        let outer = add_cost(c, ccons(x.clone(), xs.clone()));
        prop_assert!(outer == ccons(add_cost(c, x.clone()), xs.clone()));
        prop_assert!(outer == ccons(x, add_cost(c, xs)));
    }

    #[test]
    fn cost_floats_through_pairs(c in -20i64..20, x in costed(), y in costed()) {
        let outer = add_cost(c, cpair(x.clone(), y.clone()));
        prop_assert!(outer == cpair(add_cost(c, x.clone()), y.clone()));
        prop_assert!(outer == cpair(x, add_cost(c, y)));
    }

    #[test]
    fn cost_floats_through_application(c in -20i64..20, pick in 0usize..64, n in 0u64..6, k in -5i64..5) {
        let fs = nat_functions();
        let f = fs[pick % fs.len()].clone();
        let x = Costed::new(CostVal::Nat(n), k);
        let outer = add_cost(c, capp(&f, &x));
        prop_assert!(outer == capp(&add_cost(c, f.clone()), &x));
        prop_assert!(outer == capp(&f, &add_cost(c, x)));
    }

    #[test]
    fn app_cost_ignores_argument_cost(c in -20i64..20, pick in 0usize..64, n in 0u64..6) {
        let fs = nat_functions();
        let f = fs[pick % fs.len()].clone();
        let x = Costed::free(CostVal::Nat(n));
        prop_assert_eq!(app_cost(&f, &add_cost(c, x.clone())), app_cost(&f, &x));
        prop_assert_eq!(app_cost(&add_cost(c, f.clone()), &x), app_cost(&f, &x) + c);
    }

    #[test]
    fn types_round_trip(t in ty()) {
        let printed = t.to_string();
        prop_assert_eq!(parse_type(&printed).unwrap(), t);
    }

    #[test]
    fn generated_programs_agree_with_oracle(src in nat_program()) {
        let t = parse_term(&src).unwrap();
        prop_assert_eq!(typecheck(&Ctx::new(), &t).unwrap(), Ty::Nat);
        let r = eval_cost(&Env::new(), &t);
        let (v, count) = beta_count_closed(&t);
        prop_assert_eq!(r.cost, count as i64);
        prop_assert!(r.cost >= 0);
        prop_assert!(strip(&r.val).unwrap() == v);
        prop_assert!(eval_std(&Env::new(), &t) == v);
        prop_assert!(eval_cost(&Env::new(), &t) == r);
    }

    #[test]
    fn generated_programs_round_trip(src in nat_program()) {
        let t = parse_term(&src).unwrap();
        let again = parse_term(&t.to_string()).unwrap();
        prop_assert_eq!(again, t);
    }
}

fn first_order_ty() -> impl Strategy<Value = Ty> {
    prop_oneof![Just(Ty::Nat), Just(Ty::var("a"))].prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Ty::list),
            (inner.clone(), inner).prop_map(|(a, b)| Ty::pair(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lifted_relation_is_closed_under_common_shifts(
        t in first_order_ty(),
        i in 0usize..1000,
        j in 0usize..1000,
        c in -3i64..4,
    ) {
        let mut rho = RelEnv::new();
        rho.insert("a".into(), Rel::nats([(0, 1), (1, 1), (2, 0)]));
        let r = Relator::new(&rho);
        let dom = r.embedded_domain(&t).unwrap();
        let lefts: Vec<&CostVal> = dom.iter().map(|(x, _)| x).collect();
        let rights: Vec<&CostVal> = dom.iter().map(|(_, y)| y).collect();
        prop_assume!(!lefts.is_empty());
        let x = Costed::new(lefts[i % lefts.len()].clone(), 1);
        let y = Costed::new(rights[j % rights.len()].clone(), 1);
        let base = r.lifted(&t, &x, &y).unwrap();
        let shifted = r.lifted(&t, &add_cost(c, x), &add_cost(c, y)).unwrap();
        prop_assert_eq!(base, shifted);
    }
}
