//! Short-cut fusion: `lfold(k, z, g cons nil)` against `g k z`.

use serde::Serialize;

use super::shapes::{sqsubseteq, TheoremError};
use crate::semantics::{eval_cost, eval_std, Costed, Env, Value};
use crate::syntax::{parse_term, subst_type_in_term, Term, Ty};
use crate::typecheck::{typecheck, Ctx};

#[derive(Debug, Clone, Serialize)]
pub struct FusionReport {
    #[serde(rename = "valueEqual")]
    pub value_equal: bool,
    #[serde(rename = "lhsCost")]
    pub lhs_cost: i64,
    #[serde(rename = "rhsCost")]
    pub rhs_cost: i64,
    /// Whether the fused form is an improvement: `rhs ⊑ lhs`.
    #[serde(rename = "improvementHolds")]
    pub improvement_holds: bool,
    /// Length of the list `g` builds when given cons and nil.
    #[serde(rename = "intermediateLength")]
    pub intermediate_length: usize,
    pub lhs: Costed,
    pub rhs: Costed,
}

/// A bundled producer/consumer combination.
#[derive(Debug, Clone)]
pub struct FusionCase {
    pub g: Term,
    pub k: Term,
    pub z: Term,
    pub tau: Ty,
    pub tau_prime: Ty,
}

fn typed(what: &str, ctx: &Ctx, t: &Term, expected: &Ty) -> Result<(), TheoremError> {
    let found = typecheck(ctx, t).map_err(|source| TheoremError::Type {
        what: what.to_string(),
        source,
    })?;
    if &found != expected {
        return Err(TheoremError::Mismatch {
            what: what.to_string(),
            expected: expected.clone(),
            found,
        });
    }
    Ok(())
}

/// Compare `lfold(k, z, g[[tau]/a] (\x:tau. \xs:[tau]. x : xs) nil[tau])`
/// with `g[tau'/a] k z`.
pub fn shortcut_check(g: &Term, k: &Term, z: &Term, tau: &Ty, tau_prime: &Ty) -> Result<FusionReport, TheoremError> {
    let a = Ty::var("a");
    let g_ty = Ty::arrows(
        [Ty::arrows([tau.clone(), a.clone()], a.clone()), a.clone()],
        a.clone(),
    );
    typed("g", &Ctx::with_type_vars(["a"]), g, &g_ty)?;
    let k_ty = Ty::arrows([tau.clone(), tau_prime.clone()], tau_prime.clone());
    typed("k", &Ctx::new(), k, &k_ty)?;
    typed("z", &Ctx::new(), z, tau_prime)?;

    let list_ty = Ty::list(tau.clone());
    let cons_builder = Term::lam(
        "x",
        tau.clone(),
        Term::lam("xs", list_ty.clone(), Term::cons(Term::var("x"), Term::var("xs"))),
    );
    let producer = Term::apps(subst_type_in_term(g, "a", &list_ty), [cons_builder, Term::nil(tau.clone())]);
    let lhs_term = Term::lfold(k.clone(), z.clone(), producer.clone());
    let rhs_term = Term::apps(subst_type_in_term(g, "a", tau_prime), [k.clone(), z.clone()]);

    let env = Env::new();
    let lhs = eval_cost(&env, &lhs_term);
    let rhs = eval_cost(&env, &rhs_term);
    let intermediate_length = match eval_std(&Env::new(), &producer) {
        Value::List(items) => items.len(),
        _ => unreachable!("producer was checked to build a list"),
    };
    Ok(FusionReport {
        value_equal: lhs.val == rhs.val,
        lhs_cost: lhs.cost,
        rhs_cost: rhs.cost,
        improvement_holds: sqsubseteq(&rhs, &lhs),
        intermediate_length,
        lhs,
        rhs,
    })
}

fn case(g: &str, k: &str, z: &str) -> FusionCase {
    FusionCase {
        g: parse_term(g).expect("bundled producer parses"),
        k: parse_term(k).expect("bundled consumer parses"),
        z: parse_term(z).expect("bundled seed parses"),
        tau: Ty::Nat,
        tau_prime: Ty::Nat,
    }
}

/// A producer emitting two elements, consumed by addition.
pub fn fusion_good() -> FusionCase {
    case(r"\k:Nat->a->a. \z:a. k 1 (k 2 z)", r"\x:Nat. \y:Nat. x + y", "0")
}

/// A producer that calls `k` but discards the result. With `k` spinning
/// `n` times, the fused form pays for that call while the unfused form,
/// whose intermediate list is empty, never makes it.
pub fn fusion_counterexample(n: u64) -> FusionCase {
    case(
        r"\k:Nat->a->a. \z:a. (\x:a. z) (k 5 z)",
        &format!(r"\x:Nat. \y:Nat. ifold(\w:Nat. w, y, {n})"),
        "0",
    )
}

/// A producer that emits nothing.
pub fn fusion_empty_producer() -> FusionCase {
    case(r"\k:Nat->a->a. \z:a. z", r"\x:Nat. \y:Nat. x + y", "0")
}

impl FusionCase {
    pub fn check(&self) -> Result<FusionReport, TheoremError> {
        shortcut_check(&self.g, &self.k, &self.z, &self.tau, &self.tau_prime)
    }
}
