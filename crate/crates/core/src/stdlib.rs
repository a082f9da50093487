//! Library functions written in the calculus itself.
//!
//! Their semantic values are always obtained by evaluating these terms, so
//! whatever costs they carry come from the cost model, never from a table.

use std::sync::OnceLock;

use crate::semantics::{eval_cost, Costed, Env};
use crate::syntax::{parse_term, parse_type, Term, Ty};

pub const MAP_LIST_SRC: &str = r"\g:a->b. \ys:[a]. lfold(\x:a. \xs:[b]. (g x) : xs, nil[b], ys)";
pub const MAP_PAIR_SRC: &str =
    r"\p:(a->c, b->d). \q:(a, b). pcase p {(f1, f2) -> pcase q {(x1, x2) -> (f1 x1, f2 x2)}}";
pub const LENGTH_SRC: &str = r"\xs:[a]. lfold(\x:a. \y:Nat. 1 + y, 0, xs)";

pub struct StdLib {
    pub map_list: Term,
    pub map_pair: Term,
    pub length: Term,
}

impl StdLib {
    pub fn get() -> &'static StdLib {
        static LIB: OnceLock<StdLib> = OnceLock::new();
        LIB.get_or_init(|| StdLib {
            map_list: parse_term(MAP_LIST_SRC).expect("mapList parses"),
            map_pair: parse_term(MAP_PAIR_SRC).expect("mapPair parses"),
            length: parse_term(LENGTH_SRC).expect("length parses"),
        })
    }

    pub fn map_list_type() -> Ty {
        parse_type("(a -> b) -> [a] -> [b]").unwrap()
    }

    pub fn map_pair_type() -> Ty {
        parse_type("(a -> c, b -> d) -> (a, b) -> (c, d)").unwrap()
    }

    pub fn length_type() -> Ty {
        parse_type("[a] -> Nat").unwrap()
    }
}

/// The cost-semantics value of `mapList`.
pub fn map_list_value() -> Costed {
    eval_cost(&Env::new(), &StdLib::get().map_list)
}

/// The cost-semantics value of `mapPair`.
pub fn map_pair_value() -> Costed {
    eval_cost(&Env::new(), &StdLib::get().map_pair)
}

/// The cost-semantics value of `length`.
pub fn length_value() -> Costed {
    eval_cost(&Env::new(), &StdLib::get().length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{capp, clist, cpair, CostVal};
    use crate::typecheck::{typecheck, Ctx};

    #[test]
    fn library_terms_have_their_types() {
        let lib = StdLib::get();
        let ctx = Ctx::with_type_vars(["a", "b", "c", "d"]);
        assert_eq!(typecheck(&ctx, &lib.map_list).unwrap(), StdLib::map_list_type());
        assert_eq!(typecheck(&ctx, &lib.map_pair).unwrap(), StdLib::map_pair_type());
        assert_eq!(typecheck(&ctx, &lib.length).unwrap(), StdLib::length_type());
    }

    #[test]
    fn map_pair_costs_two_betas_plus_components() {
        let id = eval_cost(&Env::new(), &parse_term(r"\x:a. x").unwrap());
        let fns = cpair(id.clone(), id);
        let arg = cpair(Costed::free(CostVal::Nat(1)), Costed::free(CostVal::Nat(2)));
        let out = capp(&capp(&map_pair_value(), &fns), &arg);
        assert_eq!(out.val, CostVal::pair(CostVal::Nat(1), CostVal::Nat(2)));
        assert_eq!(out.cost, 2 + 2);
    }

    #[test]
    fn map_list_maps() {
        let double = eval_cost(&Env::new(), &parse_term(r"\n:Nat. n + n").unwrap());
        let xs = clist([Costed::free(CostVal::Nat(1)), Costed::free(CostVal::Nat(2))]);
        let out = capp(&capp(&map_list_value(), &double), &xs);
        assert_eq!(out.val, CostVal::nat_list([2, 4]));
        // two betas for mapList, two per element for the step, one per element for g
        assert_eq!(out.cost, 2 + 4 + 2);
    }
}
