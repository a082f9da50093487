//! A cost-blind evaluator that counts beta steps.
//!
//! Written independently of [`eval_cost`](super::eval_cost): closures are
//! plain records, application goes through one `enter` function that bumps a
//! counter, and folds are unrolled into explicit loops over closures.

use std::sync::Arc;

use super::value::Value;
use crate::syntax::{Term, TermKind};

#[derive(Clone)]
enum OVal {
    Nat(u64),
    List(Vec<OVal>),
    Pair(Box<OVal>, Box<OVal>),
    Closure {
        param: String,
        body: Arc<Term>,
        env: Vec<(String, OVal)>,
    },
    /// A function handed in from outside through the environment; calling it
    /// is not a beta step of the program under test.
    Foreign(Value),
}

struct Machine {
    betas: u64,
}

fn lookup<'a>(env: &'a [(String, OVal)], x: &str) -> &'a OVal {
    env.iter()
        .rev()
        .find(|(n, _)| n == x)
        .map(|(_, v)| v)
        .unwrap_or_else(|| panic!("oracle: unbound variable `{x}`"))
}

fn bind(env: &[(String, OVal)], binds: Vec<(String, OVal)>) -> Vec<(String, OVal)> {
    let mut out = env.to_vec();
    out.extend(binds);
    out
}

impl Machine {
    fn enter(&mut self, f: OVal, arg: OVal) -> OVal {
        match f {
            OVal::Closure { param, body, env } => {
                self.betas += 1;
                let env = bind(&env, vec![(param, arg)]);
                self.run(&env, &body)
            }
            OVal::Foreign(v) => from_value(v.apply(to_value(arg))),
            _ => panic!("oracle: application of a non-function"),
        }
    }

    fn nat(&mut self, env: &[(String, OVal)], t: &Term) -> u64 {
        match self.run(env, t) {
            OVal::Nat(n) => n,
            _ => panic!("oracle: expected a natural"),
        }
    }

    fn list(&mut self, env: &[(String, OVal)], t: &Term) -> Vec<OVal> {
        match self.run(env, t) {
            OVal::List(v) => v,
            _ => panic!("oracle: expected a list"),
        }
    }

    fn run(&mut self, env: &[(String, OVal)], t: &Term) -> OVal {
        match &t.kind {
            TermKind::Var(x) => lookup(env, x).clone(),
            TermKind::Nat(n) => OVal::Nat(*n),
            TermKind::Add(a, b) => {
                let x = self.nat(env, a);
                let y = self.nat(env, b);
                OVal::Nat(x + y)
            }
            TermKind::NatCase {
                scrutinee,
                zero,
                binder,
                pos,
            } => {
                let n = self.nat(env, scrutinee);
                if n == 0 {
                    self.run(env, zero)
                } else {
                    self.run(&bind(env, vec![(binder.clone(), OVal::Nat(n))]), pos)
                }
            }
            TermKind::Nil(_) => OVal::List(vec![]),
            TermKind::Cons(h, tl) => {
                let head = self.run(env, h);
                let mut out = vec![head];
                out.extend(self.list(env, tl));
                OVal::List(out)
            }
            TermKind::ListCase {
                scrutinee,
                nil,
                head,
                tail,
                cons,
            } => {
                let items = self.list(env, scrutinee);
                match items.split_first() {
                    None => self.run(env, nil),
                    Some((h, rest)) => {
                        let env = bind(
                            env,
                            vec![
                                (head.clone(), h.clone()),
                                (tail.clone(), OVal::List(rest.to_vec())),
                            ],
                        );
                        self.run(&env, cons)
                    }
                }
            }
            TermKind::Pair(a, b) => {
                let x = self.run(env, a);
                let y = self.run(env, b);
                OVal::Pair(Box::new(x), Box::new(y))
            }
            TermKind::PairCase {
                scrutinee,
                fst,
                snd,
                body,
            } => match self.run(env, scrutinee) {
                OVal::Pair(a, b) => {
                    let env = bind(env, vec![(fst.clone(), *a), (snd.clone(), *b)]);
                    self.run(&env, body)
                }
                _ => panic!("oracle: expected a pair"),
            },
            TermKind::Lam { binder, body, .. } => OVal::Closure {
                param: binder.clone(),
                body: Arc::clone(body),
                env: env.to_vec(),
            },
            TermKind::App(f, a) => {
                let fv = self.run(env, f);
                let av = self.run(env, a);
                self.enter(fv, av)
            }
            TermKind::LFold { step, init, list } => {
                let g = self.run(env, step);
                let mut acc = self.run(env, init);
                let items = self.list(env, list);
                let mut i = items.len();
                while i > 0 {
                    i -= 1;
                    let partial = self.enter(g.clone(), items[i].clone());
                    acc = self.enter(partial, acc);
                }
                acc
            }
            TermKind::IFold { step, init, count } => {
                let g = self.run(env, step);
                let mut acc = self.run(env, init);
                let n = self.nat(env, count);
                for _ in 0..n {
                    acc = self.enter(g.clone(), acc);
                }
                acc
            }
        }
    }
}

fn from_value(v: Value) -> OVal {
    match v {
        Value::Nat(n) => OVal::Nat(n),
        Value::List(vs) => OVal::List(vs.into_iter().map(from_value).collect()),
        Value::Pair(a, b) => OVal::Pair(Box::new(from_value(*a)), Box::new(from_value(*b))),
        f @ Value::Fun(_) => OVal::Foreign(f),
    }
}

fn to_value(v: OVal) -> Value {
    match v {
        OVal::Nat(n) => Value::Nat(n),
        OVal::List(vs) => Value::List(vs.into_iter().map(to_value).collect()),
        OVal::Pair(a, b) => Value::pair(to_value(*a), to_value(*b)),
        OVal::Foreign(f) => f,
        clo @ OVal::Closure { .. } => Value::fun(move |arg| {
            let mut m = Machine { betas: 0 };
            to_value(m.enter(clo.clone(), from_value(arg)))
        }),
    }
}

/// Evaluate `t` under `env`, returning its standard value and the number of
/// lambda bodies entered along the way.
pub fn beta_count_oracle(env: &[(String, Value)], t: &Term) -> (Value, u64) {
    let env: Vec<(String, OVal)> = env
        .iter()
        .map(|(x, v)| (x.clone(), from_value(v.clone())))
        .collect();
    let mut m = Machine { betas: 0 };
    let v = m.run(&env, t);
    (to_value(v), m.betas)
}

/// Convenience wrapper for closed terms.
pub fn beta_count_closed(t: &Term) -> (Value, u64) {
    beta_count_oracle(&[], t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    #[test]
    fn counts_single_beta() {
        let (v, n) = beta_count_closed(&parse_term(r"(\x:Nat. x) 5").unwrap());
        assert_eq!(v, Value::Nat(5));
        assert_eq!(n, 1);
    }

    #[test]
    fn counts_length_example() {
        let t = parse_term(r"(\xs:[Nat]. lfold(\x:Nat. \y:Nat. 1 + y, 0, xs)) (1:2:nil[Nat])").unwrap();
        assert_eq!(beta_count_closed(&t), (Value::Nat(2), 5));
    }

    #[test]
    fn counts_inside_ifold() {
        let t = parse_term(r"ifold(\x:Nat. x+1, 0, 3)").unwrap();
        assert_eq!(beta_count_closed(&t), (Value::Nat(3), 3));
    }

    #[test]
    fn foreign_functions_are_not_counted() {
        let double = Value::fun(|v| match v {
            Value::Nat(n) => Value::Nat(2 * n),
            _ => unreachable!(),
        });
        let t = parse_term("f 4").unwrap();
        assert_eq!(
            beta_count_oracle(&[("f".into(), double)], &t),
            (Value::Nat(8), 0)
        );
    }

    #[test]
    fn function_results_stay_callable() {
        let (f, n) = beta_count_closed(&parse_term(r"\x:Nat. x + 1").unwrap());
        assert_eq!(n, 0);
        assert_eq!(f.apply(Value::Nat(1)), Value::Nat(2));
    }
}
