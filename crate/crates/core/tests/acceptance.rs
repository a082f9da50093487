//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use costlr::corpus::{self, ground_terms, poly_terms};
use costlr::relations::{
    graph_rel, grid_pairs, grid_rel_envs, grid_types, member_lifted, param_test, with_grid_costs, Bounds,
    GraphRel, ParamTestConfig, RelEnv, Relator,
};
use costlr::semantics::{
    add_cost, beta_count_closed, capp, ccons, cpair, eval_cost, eval_std, strip, CostVal, Costed, Env,
};
use costlr::syntax::{parse_term, subst_type_in_term};
use costlr::theorems::{fusion_counterexample, fusion_good, negative_control, shape_instances, Shape, Verdict};
use costlr::{typecheck, Ctx, Ty};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed(src: &str) -> Costed {
    eval_cost(&Env::new(), &parse_term(src).unwrap())
}

fn length_golden_trace() -> Outcome {
    let t = parse_term(corpus::file("length_12.lam").unwrap()).unwrap();
    let got = eval_cost(&Env::new(), &t);
    ensure(got == CostVal::Nat(2).with_cost(5), || format!("eval_cost gave {got}"))?;
    let (v, n) = beta_count_closed(&t);
    ensure(n == 5 && v == costlr::Value::Nat(2), || format!("oracle gave ({v}, {n})"))?;
    Ok("value 2, cost 5, oracle count 5".into())
}

fn identity_costs_one() -> Outcome {
    let id = closed(r"\x:a. x");
    let probes = [
        CostVal::Nat(0),
        CostVal::Nat(7),
        CostVal::nat_list([1, 2, 3]),
        CostVal::pair(CostVal::Nat(1), CostVal::List(vec![])),
        CostVal::fun(|v| v.with_cost(4)),
    ];
    for p in &probes {
        let out = capp(&id, &Costed::free(p.clone()));
        ensure(out.cost == 1, || format!("cost {} on probe {p}", out.cost))?;
        if p.is_ground() {
            ensure(out.val == *p, || format!("value changed on probe {p}"))?;
        }
    }
    Ok(format!("{} probes", probes.len()))
}

fn oracle_agreement() -> Outcome {
    let terms = ground_terms();
    for (name, t) in &terms {
        let c = eval_cost(&Env::new(), t);
        let (v, n) = beta_count_closed(t);
        let stripped = strip(&c.val).map_err(|_| format!("{name}: non-ground result"))?;
        ensure(c.cost == n as i64, || format!("{name}: cost {} vs {n} betas", c.cost))?;
        ensure(stripped == v, || format!("{name}: {stripped} vs oracle {v}"))?;
        ensure(eval_std(&Env::new(), t) == v, || format!("{name}: standard semantics disagrees"))?;
    }
    Ok(format!("{} closed terms", terms.len()))
}

fn random_ground(rng: &mut ChaCha8Rng, depth: u32) -> CostVal {
    match rng.gen_range(0..if depth == 0 { 1 } else { 3 }) {
        0 => CostVal::Nat(rng.gen_range(0..10)),
        1 => CostVal::List((0..rng.gen_range(0..4)).map(|_| random_ground(rng, depth - 1)).collect()),
        _ => CostVal::pair(random_ground(rng, depth - 1), random_ground(rng, depth - 1)),
    }
}

fn random_costed(rng: &mut ChaCha8Rng) -> Costed {
    random_ground(rng, 2).with_cost(rng.gen_range(-20..20))
}

/// Equal costs and equal values; function values are compared on a probe.
fn same(a: &Costed, b: &Costed) -> bool {
    a.cost == b.cost
        && match (&a.val, &b.val) {
            (CostVal::Fun(_), CostVal::Fun(_)) => {
                let p = nat(1, 0);
                same(&capp(a, &p), &capp(b, &p))
            }
            _ => a.val == b.val,
        }
}

fn cost_algebra_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let fns = [
        closed(r"\n:Nat. n + n"),
        closed(r"\x:a. x"),
        closed(r"\x:a. \y:Nat. y"),
        closed(r"\x:a. ifold(\y:a. y, x, 3)"),
    ];
    let triples = 1000;
    for _ in 0..triples {
        let c: i64 = rng.gen_range(-50..50);
        let c2: i64 = rng.gen_range(-50..50);
        let x = random_costed(&mut rng);
        let y = random_costed(&mut rng);
        let xs = CostVal::List((0..rng.gen_range(0..4)).map(|_| random_ground(&mut rng, 1)).collect())
            .with_cost(rng.gen_range(-20..20));
        let mut f = fns[rng.gen_range(0..fns.len())].clone();
        f.cost = rng.gen_range(-5..5);
        let arg = nat(rng.gen_range(0..5), rng.gen_range(-5..5));

        ensure(add_cost(c, add_cost(c2, x.clone())) == add_cost(c + c2, x.clone()), || {
            format!("shift composition fails at c={c} c'={c2} x={x}")
        })?;
        let lhs = add_cost(c, ccons(x.clone(), xs.clone()));
        ensure(
            lhs == ccons(add_cost(c, x.clone()), xs.clone()) && lhs == ccons(x.clone(), add_cost(c, xs.clone())),
            || format!("cons law fails at c={c} x={x} xs={xs}"),
        )?;
        let lhs = add_cost(c, cpair(x.clone(), y.clone()));
        ensure(
            lhs == cpair(add_cost(c, x.clone()), y.clone()) && lhs == cpair(x.clone(), add_cost(c, y.clone())),
            || format!("pair law fails at c={c} x={x} y={y}"),
        )?;
        let lhs = add_cost(c, capp(&f, &arg));
        ensure(
            same(&lhs, &capp(&add_cost(c, f.clone()), &arg)) && same(&lhs, &capp(&f, &add_cost(c, arg.clone()))),
            || format!("application law fails at c={c} arg={arg}"),
        )?;
    }
    Ok(format!("{triples} random operand triples, 4 laws"))
}

fn lifted_matches_embedded() -> Outcome {
    let b = Bounds::DEFAULT;
    let types = grid_types(&b);
    let envs = grid_rel_envs(&b);
    let mut checked = 0usize;
    let mut related = 0usize;
    for rho in &envs {
        let r = Relator::new(rho);
        for ty in &types {
            for (x, y) in grid_pairs(&r, ty).map_err(|e| e.to_string())? {
                let emb = r.embedded(ty, &x, &y).map_err(|e| e.to_string())?;
                for (cx, cy) in with_grid_costs(&b, &x, &y) {
                    let lifted = r.lifted(ty, &cx, &cy).map_err(|e| e.to_string())?;
                    let expected = cx.cost == cy.cost && emb;
                    ensure(lifted == expected, || {
                        format!("at {ty}: ({cx}, {cy}) lifted={lifted} but embedded={emb}")
                    })?;
                    checked += 1;
                    related += lifted as usize;
                }
            }
        }
    }
    Ok(format!(
        "{} types x {} environments, {checked} cases ({related} related), 0 discrepancies",
        types.len(),
        envs.len()
    ))
}

fn nat(n: u64, c: i64) -> Costed {
    CostVal::Nat(n).with_cost(c)
}

fn rho(pairs: &[(&str, &GraphRel)]) -> RelEnv {
    pairs.iter().map(|(a, r)| (a.to_string(), r.rel().clone())).collect()
}

fn witnesses_match_brute_force() -> Outcome {
    let b = Bounds::DEFAULT;
    let double = closed(r"\n:Nat. n + n");
    let succ = closed(r"\n:Nat. n + 1");
    let const3 = closed(r"\n:Nat. 3");
    let mut cases = 0usize;
    let mut hits = 0usize;

    // base: every value x cost pair on a small grid
    for r in [
        graph_rel(double.clone(), vec![nat(1, 0), nat(2, 1)]).unwrap(),
        graph_rel(const3.clone(), vec![nat(1, 0), nat(2, 0), nat(1, 2)]).unwrap(),
    ] {
        let env = rho(&[("a", &r)]);
        for xv in 0..=4 {
            for yv in 0..=4 {
                for cx in b.cost_range() {
                    for cy in b.cost_range() {
                        let (x, y) = (nat(xv, cx), nat(yv, cy));
                        let brute = member_lifted(&Ty::var("a"), &env, &x, &y).unwrap();
                        let w = r.witness_base(&x, &y);
                        ensure(w.is_some() == brute, || format!("base disagreement at ({x}, {y})"))?;
                        if let Some(w) = w {
                            ensure(r.replay_base(&w, &x, &y) && r.base_consequence(&w, &x, &y), || {
                                format!("base witness {w:?} does not replay at ({x}, {y})")
                            })?;
                            hits += 1;
                        }
                        cases += 1;
                    }
                }
            }
        }
    }

    // pairs: the two component grids crossed
    let rg = graph_rel(double.clone(), vec![nat(1, 0), nat(2, 0)]).unwrap();
    let rh = graph_rel(succ, vec![nat(0, 0), nat(3, 1)]).unwrap();
    let env = rho(&[("a", &rg), ("b", &rh)]);
    let pair_ty = Ty::pair(Ty::var("a"), Ty::var("b"));
    let lefts = [1u64, 2, 4];
    let rights = [0u64, 1, 4];
    for &p1 in &lefts {
        for &p2 in &rights {
            for &q1 in &lefts {
                for &q2 in &rights {
                    let pv = CostVal::pair(CostVal::Nat(p1), CostVal::Nat(p2));
                    let qv = CostVal::pair(CostVal::Nat(q1), CostVal::Nat(q2));
                    for (p, q) in with_grid_costs(&b, &pv, &qv) {
                        let brute = member_lifted(&pair_ty, &env, &p, &q).unwrap();
                        let w = GraphRel::witness_pair(&rg, &rh, &p, &q);
                        ensure(w.is_some() == brute, || format!("pair disagreement at ({p}, {q})"))?;
                        if let Some(w) = w {
                            ensure(
                                GraphRel::replay_pair(&rg, &rh, &w, &p, &q)
                                    && GraphRel::pair_consequence(&rg, &rh, &w, &p, &q),
                                || format!("pair witness {w:?} does not replay"),
                            )?;
                            hits += 1;
                        }
                        cases += 1;
                    }
                }
            }
        }
    }

    // lists: lengths up to three over a two-point graph
    let r = graph_rel(double, vec![nat(10, 0), nat(20, 0)]).unwrap();
    let env = rho(&[("a", &r)]);
    let list_ty = Ty::list(Ty::var("a"));
    let lists = |alphabet: [u64; 2]| {
        let mut out: Vec<Vec<u64>> = vec![vec![]];
        let mut frontier: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..b.grid_list_len {
            frontier = frontier
                .iter()
                .flat_map(|p| {
                    alphabet.iter().map(move |&x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
            out.extend(frontier.iter().cloned());
        }
        out
    };
    let xs_grid = lists([10, 20]);
    let ys_grid = lists([20, 40]);
    for xs in &xs_grid {
        for ys in &ys_grid {
            let (xv, yv) = (CostVal::nat_list(xs.clone()), CostVal::nat_list(ys.clone()));
            for (x, y) in with_grid_costs(&b, &xv, &yv) {
                let brute = member_lifted(&list_ty, &env, &x, &y).unwrap();
                let w = r.witness_list(&x, &y);
                ensure(w.is_some() == brute, || format!("list disagreement at ({x}, {y})"))?;
                if let Some(w) = w {
                    ensure(
                        r.replay_list(&w, &x, &y) && r.list_consequence(&w, &x, &y) && w.value_clause,
                        || format!("list witness {w:?} does not replay"),
                    )?;
                    hits += 1;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} grid cases, {hits} witnesses replayed exactly"))
}

fn parametricity_driver() -> Outcome {
    let clean = param_test(ParamTestConfig::new(0, 1000));
    ensure(clean.ok(), || format!("{} failures, first: {:?}", clean.failures.len(), clean.failures.first()))?;
    let mutated = param_test(ParamTestConfig {
        mutate_beta: true,
        ..ParamTestConfig::new(0, 200)
    });
    ensure(!mutated.ok(), || "mutated cost model went undetected".into())?;
    Ok(format!(
        "seed 0: {}/{} pass; beta cost 2 on one side: {}/{} fail",
        clean.passed,
        clean.iterations,
        mutated.failures.len(),
        mutated.iterations
    ))
}

fn free_theorem_shapes() -> Outcome {
    let mut counts = Vec::new();
    for shape in Shape::ALL {
        let insts: Vec<_> = shape_instances().iter().filter(|i| i.shape == shape).collect();
        ensure(insts.len() >= 3, || format!("{shape}: only {} instances", insts.len()))?;
        for inst in &insts {
            let r = inst.check().map_err(|e| format!("{shape}/{}: {e}", inst.name))?;
            ensure(r.verdict == Verdict::Holds && r.value_equal && !r.witness.matched.is_empty(), || {
                format!("{shape}/{}: {r:?}", inst.name)
            })?;
            ensure(r.witness.predicted.iter().any(|p| p.value == r.delta), || {
                format!("{shape}/{}: delta {} not predicted", inst.name, r.delta)
            })?;
        }
        counts.push(format!("{shape} {}", insts.len()));
    }
    Ok(counts.join(", "))
}

fn monomorphic_negative_control() -> Outcome {
    let f = parse_term(corpus::file("countdown.lam").unwrap()).unwrap();
    let g = parse_term(corpus::file("double.lam").unwrap()).unwrap();
    let zero = parse_term("0").unwrap();
    let mut deltas = Vec::new();
    for t1 in 2..=5u64 {
        let r = negative_control(&f, &g, &parse_term(&t1.to_string()).unwrap(), &zero).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Violated, || format!("t1 = {t1} was not flagged: {r:?}"))?;
        deltas.push(r.delta);
    }
    let poly = parse_term(corpus::file("fst.lam").unwrap()).unwrap();
    let r = negative_control(&poly, &g, &parse_term("4").unwrap(), &zero).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Holds, || "polymorphic projection was flagged".into())?;
    Ok(format!("violated for t1 in 2..=5 with deltas {deltas:?}; polymorphic f holds"))
}

fn shortcut_fusion() -> Outcome {
    let mut gaps = Vec::new();
    let mut lhs_costs = Vec::new();
    for n in [10, 100, 1000] {
        let r = fusion_counterexample(n).check().map_err(|e| e.to_string())?;
        ensure(r.value_equal && !r.improvement_holds, || format!("N = {n}: {r:?}"))?;
        gaps.push(r.rhs_cost - r.lhs_cost);
        lhs_costs.push(r.lhs_cost);
    }
    ensure(gaps.windows(2).all(|w| w[0] < w[1]), || format!("gaps {gaps:?} not increasing"))?;
    ensure(lhs_costs.windows(2).all(|w| w[0] == w[1]), || format!("lhs costs {lhs_costs:?} vary"))?;
    let good = fusion_good().check().map_err(|e| e.to_string())?;
    ensure(good.value_equal && good.improvement_holds, || format!("good producer: {good:?}"))?;
    Ok(format!("gaps {gaps:?} at N = 10, 100, 1000; good producer {} -> {}", good.lhs_cost, good.rhs_cost))
}

/// Same cost, and at arrow types the same behaviour on sampled arguments.
fn agree(r: &Relator, ty: &Ty, x: &Costed, y: &Costed) -> bool {
    if x.cost != y.cost {
        return false;
    }
    match ty {
        Ty::Arrow(d, c) => r
            .embedded_domain(d)
            .unwrap()
            .iter()
            .flat_map(|(p, q)| [p.clone().with_cost(0), q.clone().with_cost(1)])
            .all(|p| agree(r, c, &capp(x, &p), &capp(y, &p))),
        _ => x.val == y.val,
    }
}

fn substitution_invariance() -> Outcome {
    let empty = RelEnv::new();
    let r = Relator::new(&empty);
    let taus = [Ty::Nat, Ty::list(Ty::Nat), Ty::pair(Ty::Nat, Ty::Nat)];
    let mut checked = 0;
    for e in poly_terms().iter().filter(|e| e.type_vars.len() == 1 && e.free.is_empty()) {
        let t = e.term();
        let alpha = e.type_vars[0];
        let ty = typecheck(&e.ctx(), &t).map_err(|err| format!("{}: {err}", e.name))?;
        let before = eval_cost(&Env::new(), &t);
        for tau in &taus {
            let inst = subst_type_in_term(&t, alpha, tau);
            typecheck(&Ctx::new(), &inst).map_err(|err| format!("{}[{tau}]: {err}", e.name))?;
            let after = eval_cost(&Env::new(), &inst);
            ensure(agree(&r, &ty.subst(alpha, tau), &before, &after), || {
                format!("{} changes under [{tau}/{alpha}]", e.name)
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} terms x {} instantiations", taus.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("length program golden trace", length_golden_trace),
        ("identity costs exactly one", identity_costs_one),
        ("beta-count oracle agreement", oracle_agreement),
        ("cost algebra laws", cost_algebra_laws),
        ("lifted relation = cost-lifted embedded relation", lifted_matches_embedded),
        ("graph witnesses vs brute force", witnesses_match_brute_force),
        ("randomized parametricity checks", parametricity_driver),
        ("free-theorem shape suite", free_theorem_shapes),
        ("monomorphic negative control", monomorphic_negative_control),
        ("short-cut fusion counterexample", shortcut_fusion),
        ("type substitution invariance", substitution_invariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
