//! Parametricity checks: a well-typed term is related to itself under any
//! interpretation of its type variables, given related environments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::{graph_rel, RelEnv, RelError, Relator};
use crate::corpus::{graph_functions, poly_terms, type_of_closed};
use crate::semantics::{eval_cost, eval_cost_with, eval_std, CostModel, CostVal, Costed, Env, Value};
use crate::syntax::{Term, Ty};
use crate::typecheck::{typecheck, Ctx, TypeError};

#[derive(Debug, Error)]
pub enum ParamError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error("environment has no value for `{0}`")]
    MissingBinding(String),
    #[error("precondition violated: the environments disagree on `{var}` at type `{ty}`")]
    Precondition { var: String, ty: Ty },
}

/// Typecheck `t` in `ctx`, check that `env1` and `env2` are related at
/// every term variable of `ctx`, then decide whether the two evaluations of
/// `t` are related by the fully lifted relation.
pub fn param_check(
    ctx: &Ctx,
    t: &Term,
    rho: &RelEnv,
    env1: &Env<CostVal>,
    env2: &Env<CostVal>,
) -> Result<bool, ParamError> {
    param_check_with([CostModel::STANDARD; 2], ctx, t, rho, env1, env2)
}

/// As [`param_check`], evaluating the left side under `models[0]` and the
/// right side under `models[1]`.
pub fn param_check_with(
    models: [CostModel; 2],
    ctx: &Ctx,
    t: &Term,
    rho: &RelEnv,
    env1: &Env<CostVal>,
    env2: &Env<CostVal>,
) -> Result<bool, ParamError> {
    let ty = typecheck(ctx, t)?;
    let relator = Relator::new(rho);
    for (x, x_ty) in visible_vars(ctx) {
        let v1 = env1.lookup(&x).ok_or_else(|| ParamError::MissingBinding(x.clone()))?;
        let v2 = env2.lookup(&x).ok_or_else(|| ParamError::MissingBinding(x.clone()))?;
        if !relator.lifted(&x_ty, &Costed::free(v1.clone()), &Costed::free(v2.clone()))? {
            return Err(ParamError::Precondition { var: x, ty: x_ty });
        }
    }
    let lhs = eval_cost_with(models[0], env1, t);
    let rhs = eval_cost_with(models[1], env2, t);
    Ok(relator.lifted(&ty, &lhs, &rhs)?)
}

/// The standard-semantics counterpart, against the relation Δ.
pub fn param_check_std(
    ctx: &Ctx,
    t: &Term,
    rho: &RelEnv,
    env1: &Env<Value>,
    env2: &Env<Value>,
) -> Result<bool, ParamError> {
    let ty = typecheck(ctx, t)?;
    let relator = Relator::new(rho);
    for (x, x_ty) in visible_vars(ctx) {
        let v1 = env1.lookup(&x).ok_or_else(|| ParamError::MissingBinding(x.clone()))?;
        let v2 = env2.lookup(&x).ok_or_else(|| ParamError::MissingBinding(x.clone()))?;
        if !relator.std(&x_ty, v1, v2)? {
            return Err(ParamError::Precondition { var: x, ty: x_ty });
        }
    }
    Ok(relator.std(&ty, &eval_std(env1, t), &eval_std(env2, t))?)
}

/// Term variables of `ctx`, innermost binding only.
fn visible_vars(ctx: &Ctx) -> Vec<(String, Ty)> {
    let mut out: Vec<(String, Ty)> = Vec::new();
    for (x, ty) in ctx.term_vars().iter().rev() {
        if !out.iter().any(|(y, _)| y == x) {
            out.push((x.clone(), ty.clone()));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamTestConfig {
    pub seed: u64,
    pub iterations: usize,
    /// Charge 2 per beta step on the right-hand evaluation only. A correct
    /// checker must then report failures.
    pub mutate_beta: bool,
}

impl ParamTestConfig {
    pub fn new(seed: u64, iterations: usize) -> Self {
        ParamTestConfig {
            seed,
            iterations,
            mutate_beta: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamFailure {
    pub iteration: usize,
    pub term: String,
    pub rho: RelEnv,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamTestReport {
    pub seed: u64,
    pub iterations: usize,
    pub passed: usize,
    pub failures: Vec<ParamFailure>,
}

impl ParamTestReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random small ground value of a first-order closed type.
fn random_value(rng: &mut ChaCha8Rng, ty: &Ty) -> CostVal {
    match ty {
        Ty::Nat => CostVal::Nat(rng.gen_range(0..=4)),
        Ty::List(e) => {
            let n = rng.gen_range(0..=3);
            CostVal::List((0..n).map(|_| random_value(rng, e)).collect())
        }
        Ty::Pair(l, r) => CostVal::pair(random_value(rng, l), random_value(rng, r)),
        Ty::Var(_) | Ty::Arrow(..) => panic!("no random values at type {ty}"),
    }
}

/// Run randomized parametricity checks over the polymorphic corpus, each
/// type variable interpreted as the graph of a random corpus function over
/// random points.
pub fn param_test(config: ParamTestConfig) -> ParamTestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let fns: Vec<(Costed, Ty)> = graph_functions()
        .iter()
        .map(|(_, t)| {
            let dom = match type_of_closed(t) {
                Ty::Arrow(d, _) => *d,
                other => panic!("graph function of type {other}"),
            };
            (eval_cost(&Env::new(), t), dom)
        })
        .collect();
    let entries = poly_terms();
    let models = if config.mutate_beta {
        [CostModel::STANDARD, CostModel::STANDARD.with_beta(2)]
    } else {
        [CostModel::STANDARD; 2]
    };
    let mut report = ParamTestReport {
        seed: config.seed,
        iterations: config.iterations,
        passed: 0,
        failures: Vec::new(),
    };
    for iteration in 0..config.iterations {
        let entry = entries.choose(&mut rng).expect("corpus is not empty");
        let mut rho = RelEnv::new();
        for a in entry.type_vars {
            let (g, dom) = fns.choose(&mut rng).expect("graph functions exist");
            let n = rng.gen_range(1..=3);
            let points = (0..n)
                .map(|_| random_value(&mut rng, dom).with_cost(rng.gen_range(0..=2)))
                .collect();
            let r = graph_rel(g.clone(), points).expect("graph functions are first order");
            rho.insert(a.to_string(), r.rel().clone());
        }
        let ctx = entry.ctx();
        let relator = Relator::new(&rho);
        let mut env1 = Env::new();
        let mut env2 = Env::new();
        let mut missing = None;
        for (x, ty) in entry.free {
            let ty: Ty = crate::syntax::parse_type(ty).expect("corpus type parses");
            let sample = relator.embedded_domain(&ty).expect("context types are bound");
            match sample.choose(&mut rng) {
                Some((v1, v2)) => {
                    env1 = env1.extend(*x, v1.clone());
                    env2 = env2.extend(*x, v2.clone());
                }
                None => missing = Some(x.to_string()),
            }
        }
        let outcome = match missing {
            Some(x) => Err(format!("no related values to bind `{x}`")),
            None => match param_check_with(models, &ctx, &entry.term(), &rho, &env1, &env2) {
                Ok(true) => Ok(()),
                Ok(false) => Err("evaluations are not related".to_string()),
                Err(e) => Err(e.to_string()),
            },
        };
        match outcome {
            Ok(()) => report.passed += 1,
            Err(reason) => report.failures.push(ParamFailure {
                iteration,
                term: entry.name.to_string(),
                rho,
                reason,
            }),
        }
    }
    report
}
