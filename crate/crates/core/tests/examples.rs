//! Worked examples for the evaluators, the relations and the witness
//! procedures. Expected costs come from the beta-counting oracle or from
//! hand expansion of the definitions, never from `eval_cost` itself.

use costlr::relations::{graph_rel, member_embedded, member_lifted, member_std, param_check, GraphRel, Rel, RelEnv};
use costlr::semantics::{
    add_cost, app_cost, beta_count_closed, capp, ccons, clist, eval_cost, eval_std, Env,
};
use costlr::stdlib::{map_list_value, LENGTH_SRC, MAP_LIST_SRC, MAP_PAIR_SRC};
use costlr::syntax::subst_type_in_term;
use costlr::{parse_term, parse_type, CostVal, Costed, Ctx, Term, Ty, Value};

fn nat(n: u64) -> CostVal {
    CostVal::Nat(n)
}

fn costed(src: &str) -> Costed {
    eval_cost(&Env::new(), &parse_term(src).unwrap())
}

fn rho_a(pairs: &[(u64, u64)]) -> RelEnv {
    RelEnv::from([("a".to_string(), Rel::nats(pairs.iter().copied()))])
}

const DOUBLE: &str = r"\n:Nat. n + n";

#[test]
fn length_of_two_element_list() {
    let src = format!("({LENGTH_SRC}) (1 : 2 : nil[Nat])");
    let t = parse_term(&src).unwrap();
    let r = eval_cost(&Env::new(), &t);
    assert!(r.val == nat(2));
    assert_eq!(r.cost, 5);
    assert_eq!(beta_count_closed(&t), (Value::Nat(2), 5));
    assert!(eval_std(&Env::new(), &t) == Value::Nat(2));
}

#[test]
fn single_beta_and_ifold() {
    assert_eq!(beta_count_closed(&parse_term(r"(\x:Nat. x) 5").unwrap()), (Value::Nat(5), 1));
    let t = parse_term(r"ifold(\x:Nat. x + 1, 0, 3)").unwrap();
    assert_eq!(beta_count_closed(&t), (Value::Nat(3), 3));
    let r = eval_cost(&Env::new(), &t);
    assert!(r.val == nat(3));
    assert_eq!(r.cost, 3);
}

#[test]
fn cost_algebra_examples() {
    assert!(add_cost(2, Costed::new(nat(1), 3)) == Costed::new(nat(1), 5));
    let xs = ccons(Costed::new(nat(1), 1), Costed::new(CostVal::List(vec![]), 2));
    assert!(xs == Costed::new(CostVal::nat_list([1]), 3));
}

#[test]
fn identity_costs_one_step() {
    let id = costed(r"\x:a. x");
    let seven = Costed::free(nat(7));
    assert!(capp(&id, &seven) == Costed::new(nat(7), 1));
    assert_eq!(app_cost(&id, &seven), 1);
}

#[test]
fn app_cost_excludes_argument_cost() {
    let g = costed(DOUBLE);
    assert!(capp(&g, &Costed::free(nat(1))) == Costed::new(nat(2), 1));
    assert_eq!(app_cost(&g, &Costed::new(nat(2), 3)), 1);
}

#[test]
fn standard_relation_examples() {
    let empty = RelEnv::new();
    assert!(member_std(&parse_type("Nat").unwrap(), &empty, &Value::Nat(3), &Value::Nat(3)).unwrap());
    let a = parse_type("a").unwrap();
    assert!(!member_std(&a, &rho_a(&[(1, 2)]), &Value::Nat(1), &Value::Nat(3)).unwrap());
    let id = eval_std(&Env::new(), &parse_term(r"\x:a. x").unwrap());
    let arrow = parse_type("a -> a").unwrap();
    assert!(member_std(&arrow, &rho_a(&[(1, 2), (2, 4)]), &id, &id).unwrap());
}

#[test]
fn embedded_relation_examples() {
    let arrow = parse_type("a -> a").unwrap();
    let rho = rho_a(&[(1, 2)]);
    let id = costed(r"\x:a. x").val;
    assert!(member_embedded(&parse_type("Nat").unwrap(), &RelEnv::new(), &nat(3), &nat(3)).unwrap());
    assert!(member_embedded(&arrow, &rho, &id, &id).unwrap());
    let delayed = CostVal::fun(|v| Costed::new(v, 2));
    assert!(!member_embedded(&arrow, &rho, &id, &delayed).unwrap());
}

#[test]
fn lifted_relation_examples() {
    let a = parse_type("a").unwrap();
    let rho = rho_a(&[(1, 2)]);
    assert!(member_lifted(&a, &rho, &Costed::new(nat(1), 5), &Costed::new(nat(2), 5)).unwrap());
    assert!(!member_lifted(&a, &rho, &Costed::new(nat(1), 5), &Costed::new(nat(2), 6)).unwrap());
    let n = parse_type("Nat").unwrap();
    for c in [-4, 0, 9] {
        assert!(member_lifted(&n, &RelEnv::new(), &Costed::new(nat(3), c), &Costed::new(nat(3), c)).unwrap());
    }
}

fn doubling(points: &[u64]) -> GraphRel {
    graph_rel(costed(DOUBLE), points.iter().map(|&p| Costed::free(nat(p))).collect()).unwrap()
}

#[test]
fn graph_relations() {
    let r = doubling(&[1, 2]);
    assert_eq!(r.rel().len(), 2);
    assert!(r.rel().relates(&nat(1), &nat(2)) && r.rel().relates(&nat(2), &nat(4)));
    assert_eq!(r.app_costs(), &[1, 1]);

    let id = graph_rel(costed(r"\x:Nat. x"), vec![Costed::free(nat(5))]).unwrap();
    assert!(id.rel().relates(&nat(5), &nat(5)));
    assert_eq!(id.app_costs(), &[1]);

    let dup = doubling(&[3, 3]);
    assert_eq!(dup.rel().len(), 1);
    assert_eq!(dup.app_costs().len(), 2);
}

#[test]
fn base_witness() {
    let r = doubling(&[1]);
    let (x, y) = (Costed::new(nat(1), 1), Costed::new(nat(2), 1));
    let w = r.witness_base(&x, &y).unwrap();
    assert_eq!((w.index, w.c), (0, 0));
    assert!(r.replay_base(&w, &x, &y));
    assert!(r.base_consequence(&w, &x, &y));
    assert!(r.witness_base(&x, &Costed::new(nat(2), 2)).is_none());
}

/// A stdlib combinator with every type variable instantiated at `Nat`.
fn mono(src: &str) -> Term {
    let mut t = parse_term(src).unwrap();
    for v in ["a", "b", "c", "d"] {
        t = subst_type_in_term(&t, v, &Ty::Nat);
    }
    t
}

#[test]
fn pair_witness() {
    let r = doubling(&[1]);
    let g = parse_term(DOUBLE).unwrap();
    let applied = Term::apps(
        mono(MAP_PAIR_SRC),
        [Term::pair(g.clone(), g), Term::pair(Term::nat(1), Term::nat(1))],
    );
    let (v, k) = beta_count_closed(&applied);
    assert!(v == Value::pair(Value::Nat(2), Value::Nat(2)));
    let k = k as i64;

    let p = Costed::new(CostVal::pair(nat(1), nat(1)), k);
    let q = Costed::new(CostVal::pair(nat(2), nat(2)), k);
    let w = GraphRel::witness_pair(&r, &r, &p, &q).unwrap();
    assert_eq!((w.i, w.j, w.c), (0, 0, 0));
    assert!(GraphRel::replay_pair(&r, &r, &w, &p, &q));
    assert!(GraphRel::pair_consequence(&r, &r, &w, &p, &q));
    let off = Costed::new(CostVal::pair(nat(2), nat(3)), k);
    assert!(GraphRel::witness_pair(&r, &r, &p, &off).is_none());
}

#[test]
fn list_witness_recovers_construction() {
    let r = doubling(&[10, 20]);
    let f = capp(&map_list_value(), &costed(DOUBLE));
    // Selected points in order 1, 0.
    let picked = clist([Costed::free(nat(20)), Costed::free(nat(10))]);
    let applied = Term::apps(
        mono(MAP_LIST_SRC),
        [parse_term(DOUBLE).unwrap(), parse_term("20 : 10 : nil[Nat]").unwrap()],
    );
    let (v, k) = beta_count_closed(&applied);
    assert!(v == Value::nat_list([40, 20]));
    let k = k as i64;
    assert_eq!(app_cost(&f, &picked), k);

    for c in [0, -1, 2] {
        let xs = add_cost(c, add_cost(k, picked.clone()));
        let ys = add_cost(c, capp(&f, &picked));
        assert!(ys.val == CostVal::nat_list([40, 20]));
        let w = r.witness_list(&xs, &ys).unwrap();
        assert_eq!(w.indices, vec![1, 0]);
        assert_eq!(w.c, c);
        assert!(w.value_clause);
        assert!(r.replay_list(&w, &xs, &ys));
        assert!(r.list_consequence(&w, &xs, &ys));
    }
}

#[test]
fn list_witness_on_empty_lists() {
    let r = doubling(&[1]);
    let g = capp(&map_list_value(), &costed(DOUBLE));
    let empty = clist([]);
    let k = app_cost(&g, &empty);
    let xs = Costed::new(CostVal::List(vec![]), k + 3);
    let ys = Costed::new(CostVal::List(vec![]), k + 3);
    let w = r.witness_list(&xs, &ys).unwrap();
    assert!(w.indices.is_empty());
    assert_eq!(w.c, 3);
}

#[test]
fn parametricity_examples() {
    let ctx = Ctx::with_type_vars(["a"]);
    let env = Env::new();
    let id = parse_term(r"\x:a. x").unwrap();
    assert!(param_check(&ctx, &id, &rho_a(&[(1, 2)]), &env, &env).unwrap());
    let fst = parse_term(r"\x:a. \y:a. x").unwrap();
    assert!(param_check(&ctx, &fst, &rho_a(&[(1, 2), (2, 4), (3, 6)]), &env, &env).unwrap());
}
