//! Denotational evaluators for the standard and the cost semantics.
//!
//! Both assume well-typed input; a shape mismatch panics.

use std::sync::Arc;

use super::cost::{add_cost, capp, ccons, cpair, CostModel};
use super::env::Env;
use super::value::{CostVal, Costed, Value};
use crate::syntax::{Term, TermKind};

fn shape_fault(what: &str, t: &Term) -> ! {
    panic!("shape fault: expected {what} at {} in `{t}`", t.span)
}

pub fn eval_std(env: &Env<Value>, t: &Term) -> Value {
    match &t.kind {
        TermKind::Var(x) => env
            .lookup(x)
            .cloned()
            .unwrap_or_else(|| panic!("unbound variable `{x}` at {}", t.span)),
        TermKind::Nat(n) => Value::Nat(*n),
        TermKind::NatCase {
            scrutinee,
            zero,
            binder,
            pos,
        } => match eval_std(env, scrutinee) {
            Value::Nat(0) => eval_std(env, zero),
            Value::Nat(n) => eval_std(&env.extend(binder.clone(), Value::Nat(n)), pos),
            _ => shape_fault("a natural", scrutinee),
        },
        TermKind::Add(a, b) => match (eval_std(env, a), eval_std(env, b)) {
            (Value::Nat(x), Value::Nat(y)) => Value::Nat(x.checked_add(y).expect("natural overflow")),
            _ => shape_fault("naturals", t),
        },
        TermKind::Nil(_) => Value::List(Vec::new()),
        TermKind::Cons(h, tl) => {
            let head = eval_std(env, h);
            match eval_std(env, tl) {
                Value::List(mut items) => {
                    items.insert(0, head);
                    Value::List(items)
                }
                _ => shape_fault("a list", tl),
            }
        }
        TermKind::ListCase {
            scrutinee,
            nil,
            head,
            tail,
            cons,
        } => match eval_std(env, scrutinee) {
            Value::List(items) if items.is_empty() => eval_std(env, nil),
            Value::List(mut items) => {
                let first = items.remove(0);
                let env = env
                    .extend(head.clone(), first)
                    .extend(tail.clone(), Value::List(items));
                eval_std(&env, cons)
            }
            _ => shape_fault("a list", scrutinee),
        },
        TermKind::Pair(a, b) => Value::pair(eval_std(env, a), eval_std(env, b)),
        TermKind::PairCase {
            scrutinee,
            fst,
            snd,
            body,
        } => match eval_std(env, scrutinee) {
            Value::Pair(a, b) => {
                let env = env.extend(fst.clone(), *a).extend(snd.clone(), *b);
                eval_std(&env, body)
            }
            _ => shape_fault("a pair", scrutinee),
        },
        TermKind::Lam { binder, body, .. } => {
            let env = env.clone();
            let binder = binder.clone();
            let body = Arc::clone(body);
            Value::fun(move |v| eval_std(&env.extend(binder.clone(), v), &body))
        }
        TermKind::App(f, a) => {
            let fv = eval_std(env, f);
            let av = eval_std(env, a);
            fv.apply(av)
        }
        TermKind::LFold { step, init, list } => {
            let g = eval_std(env, step);
            let z = eval_std(env, init);
            match eval_std(env, list) {
                Value::List(items) => items
                    .into_iter()
                    .rev()
                    .fold(z, |acc, v| g.apply(v).apply(acc)),
                _ => shape_fault("a list", list),
            }
        }
        TermKind::IFold { step, init, count } => {
            let g = eval_std(env, step);
            let z = eval_std(env, init);
            match eval_std(env, count) {
                Value::Nat(n) => (0..n).fold(z, |acc, _| g.apply(acc)),
                _ => shape_fault("a natural", count),
            }
        }
    }
}

pub fn eval_cost(env: &Env<CostVal>, t: &Term) -> Costed {
    eval_cost_with(CostModel::STANDARD, env, t)
}

/// Cost semantics under an explicit [`CostModel`].
pub fn eval_cost_with(model: CostModel, env: &Env<CostVal>, t: &Term) -> Costed {
    let ev = |env: &Env<CostVal>, t: &Term| eval_cost_with(model, env, t);
    match &t.kind {
        TermKind::Var(x) => Costed::free(
            env.lookup(x)
                .cloned()
                .unwrap_or_else(|| panic!("unbound variable `{x}` at {}", t.span)),
        ),
        TermKind::Nat(n) => Costed::free(CostVal::Nat(*n)),
        TermKind::NatCase {
            scrutinee,
            zero,
            binder,
            pos,
        } => {
            let s = ev(env, scrutinee);
            let c = s.cost + model.nat_case;
            match s.val {
                CostVal::Nat(0) => add_cost(c, ev(env, zero)),
                CostVal::Nat(n) => add_cost(c, ev(&env.extend(binder.clone(), CostVal::Nat(n)), pos)),
                _ => shape_fault("a natural", scrutinee),
            }
        }
        TermKind::Add(a, b) => {
            let (x, y) = (ev(env, a), ev(env, b));
            match (x.val, y.val) {
                (CostVal::Nat(n1), CostVal::Nat(n2)) => Costed::new(
                    CostVal::Nat(n1.checked_add(n2).expect("natural overflow")),
                    x.cost + y.cost,
                ),
                _ => shape_fault("naturals", t),
            }
        }
        TermKind::Nil(_) => Costed::free(CostVal::List(Vec::new())),
        TermKind::Cons(h, tl) => add_cost(model.cons, ccons(ev(env, h), ev(env, tl))),
        TermKind::ListCase {
            scrutinee,
            nil,
            head,
            tail,
            cons,
        } => {
            let s = ev(env, scrutinee);
            let c = s.cost + model.list_case;
            match s.val {
                CostVal::List(items) if items.is_empty() => add_cost(c, ev(env, nil)),
                CostVal::List(mut items) => {
                    let first = items.remove(0);
                    let env = env
                        .extend(head.clone(), first)
                        .extend(tail.clone(), CostVal::List(items));
                    add_cost(c, ev(&env, cons))
                }
                _ => shape_fault("a list", scrutinee),
            }
        }
        TermKind::Pair(a, b) => add_cost(model.pair, cpair(ev(env, a), ev(env, b))),
        TermKind::PairCase {
            scrutinee,
            fst,
            snd,
            body,
        } => {
            let s = ev(env, scrutinee);
            let c = s.cost + model.pair_case;
            match s.val {
                CostVal::Pair(a, b) => {
                    let env = env.extend(fst.clone(), *a).extend(snd.clone(), *b);
                    add_cost(c, ev(&env, body))
                }
                _ => shape_fault("a pair", scrutinee),
            }
        }
        TermKind::Lam { binder, body, .. } => {
            let env = env.clone();
            let binder = binder.clone();
            let body = Arc::clone(body);
            Costed::free(CostVal::fun(move |v| {
                add_cost(model.beta, eval_cost_with(model, &env.extend(binder.clone(), v), &body))
            }))
        }
        TermKind::App(f, a) => capp(&ev(env, f), &ev(env, a)),
        TermKind::LFold { step, init, list } => {
            let g = ev(env, step);
            let z = ev(env, init);
            let xs = ev(env, list);
            match xs.val {
                CostVal::List(items) => {
                    let folded = items
                        .into_iter()
                        .rev()
                        .fold(z, |acc, v| capp(&g.val.call(v), &acc));
                    add_cost(g.cost + xs.cost, folded)
                }
                _ => shape_fault("a list", list),
            }
        }
        TermKind::IFold { step, init, count } => {
            let g = ev(env, step);
            let z = ev(env, init);
            let n = ev(env, count);
            // The step function's own cost is charged once, not per iteration.
            let step_fn = Costed::free(g.val.clone());
            match n.val {
                CostVal::Nat(k) => {
                    let folded = (0..k).fold(z, |acc, _| capp(&step_fn, &acc));
                    add_cost(g.cost + n.cost, folded)
                }
                _ => shape_fault("a natural", count),
            }
        }
    }
}
