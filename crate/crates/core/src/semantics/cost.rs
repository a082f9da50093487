//! The cost algebra: `add_cost`, cost-propagating cons/pair/application, and
//! `app_cost`.

use super::value::{CostVal, Costed};

/// Per-construct charges of the cost semantics.
///
/// [`CostModel::STANDARD`] charges one unit per beta step and nothing else.
/// The other entries let alternative placements (constructors, case
/// analysis) be explored without touching the evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    /// Charged when a lambda body is entered.
    pub beta: i64,
    pub cons: i64,
    pub pair: i64,
    pub nat_case: i64,
    pub list_case: i64,
    pub pair_case: i64,
}

impl CostModel {
    pub const STANDARD: CostModel = CostModel {
        beta: 1,
        cons: 0,
        pair: 0,
        nat_case: 0,
        list_case: 0,
        pair_case: 0,
    };

    pub fn with_beta(self, beta: i64) -> Self {
        CostModel { beta, ..self }
    }
}

impl Default for CostModel {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// `c ↝ x`: add `c` to the cost component.
pub fn add_cost(c: i64, x: Costed) -> Costed {
    Costed {
        val: x.val,
        cost: c + x.cost,
    }
}

/// `x ⊕ xs`. Panics if `xs` is not a list.
pub fn ccons(x: Costed, xs: Costed) -> Costed {
    match xs.val {
        CostVal::List(mut items) => {
            items.insert(0, x.val);
            Costed {
                val: CostVal::List(items),
                cost: x.cost + xs.cost,
            }
        }
        other => panic!("shape fault: cons onto non-list {other:?}"),
    }
}

/// `x ⊗ y`.
pub fn cpair(x: Costed, y: Costed) -> Costed {
    Costed {
        val: CostVal::pair(x.val, y.val),
        cost: x.cost + y.cost,
    }
}

/// `f ⊛ x`. Panics if `f` is not a function.
pub fn capp(f: &Costed, x: &Costed) -> Costed {
    add_cost(f.cost + x.cost, f.val.call(x.val.clone()))
}

/// Cost of applying `f` to `x`, excluding the cost of `x` itself.
pub fn app_cost(f: &Costed, x: &Costed) -> i64 {
    capp(f, x).cost - x.cost
}

/// `⟨x1, ..., xn⟩ = x1 ⊕ ... ⊕ xn ⊕ ([], 0)`.
pub fn clist(items: impl IntoIterator<Item = Costed>) -> Costed {
    let items: Vec<Costed> = items.into_iter().collect();
    items
        .into_iter()
        .rev()
        .fold(Costed::free(CostVal::List(Vec::new())), |acc, x| ccons(x, acc))
}
