//! Bundled free-theorem instances, at least three per shape.

use super::shapes::{check_free_theorem, Shape, TheoremError, TheoremReport};
use crate::syntax::{parse_term, parse_type, Term, Ty};

#[derive(Debug, Clone, Copy)]
pub struct ShapeInstance {
    pub shape: Shape,
    pub name: &'static str,
    pub f: &'static str,
    pub g: &'static str,
    pub args: &'static [&'static str],
    pub tau1: &'static str,
    pub tau2: &'static str,
}

const DOUBLE: &str = r"\n:Nat. n + n";
const TWIN: &str = r"\n:Nat. n : n : nil[Nat]";
const SUCC: &str = r"\n:Nat. n + 1";
const LIST_SUM: &str = r"\xs:[Nat]. lfold(\x:Nat. \y:Nat. x + y, 0, xs)";

const fn inst(
    shape: Shape,
    name: &'static str,
    f: &'static str,
    g: &'static str,
    args: &'static [&'static str],
) -> ShapeInstance {
    ShapeInstance {
        shape,
        name,
        f,
        g,
        args,
        tau1: "Nat",
        tau2: "Nat",
    }
}

const INSTANCES: &[ShapeInstance] = &[
    inst(Shape::ConstNat, "const_seven", r"\x:a. 7", DOUBLE, &["3"]),
    inst(Shape::ConstNat, "ncase_literal", r"\x:a. ncase 3 {0 -> 0; n -> n}", SUCC, &["4"]),
    inst(Shape::ConstNat, "ifold_count", r"\x:a. ifold(\n:Nat. n + 1, 0, 3)", DOUBLE, &["2"]),
    ShapeInstance {
        tau2: "[Nat]",
        ..inst(Shape::ConstNat, "discard_after_beta", r"\x:a. (\y:a. 2) x", TWIN, &["5"])
    },
    inst(Shape::Proj, "first", r"\x:a. \y:a. x", DOUBLE, &["1", "2"]),
    inst(Shape::Proj, "second", r"\x:a. \y:a. y", DOUBLE, &["1", "2"]),
    inst(Shape::Proj, "second_via_id", r"\x:a. \y:a. (\z:a. z) y", SUCC, &["3", "0"]),
    ShapeInstance {
        tau2: "[Nat]",
        ..inst(Shape::Proj, "second_via_pair", r"\x:a. \y:a. pcase (x, y) {(p, q) -> q}", TWIN, &["1", "2"])
    },
    inst(Shape::Dup, "dup", r"\x:a. (x, x)", DOUBLE, &["3"]),
    inst(Shape::Dup, "dup_swapped", r"\x:a. pcase (x, x) {(p, q) -> (q, p)}", SUCC, &["4"]),
    ShapeInstance {
        tau2: "[Nat]",
        ..inst(Shape::Dup, "dup_via_beta", r"\x:a. (\y:a. (y, x)) x", TWIN, &["1"])
    },
    inst(Shape::PairConsume, "first", r"\p:(a, a). pcase p {(x, y) -> x}", DOUBLE, &["(1, 2)"]),
    inst(Shape::PairConsume, "second", r"\p:(a, a). pcase p {(x, y) -> y}", SUCC, &["(1, 2)"]),
    ShapeInstance {
        tau1: "[Nat]",
        ..inst(
            Shape::PairConsume,
            "first_via_id",
            r"\p:(a, a). pcase p {(x, y) -> (\z:a. z) x}",
            LIST_SUM,
            &["(1 : 2 : nil[Nat], 3 : nil[Nat])"],
        )
    },
    inst(Shape::ListLen, "length", crate::stdlib::LENGTH_SRC, DOUBLE, &["1 : 2 : 3 : nil[Nat]"]),
    inst(Shape::ListLen, "nonempty", r"\xs:[a]. lcase xs {nil -> 0; h:t -> 1}", SUCC, &["4 : 5 : nil[Nat]"]),
    ShapeInstance {
        tau2: "[Nat]",
        ..inst(
            Shape::ListLen,
            "odd_weights",
            r"\xs:[a]. lfold(\x:a. \n:Nat. n + n + 1, 0, xs)",
            TWIN,
            &["1 : 2 : nil[Nat]"],
        )
    },
    inst(Shape::ListToList, "reverse", include_str!("../../corpus/reverse.lam"), DOUBLE, &["1 : 2 : 3 : nil[Nat]"]),
    inst(Shape::ListToList, "tail", r"\xs:[a]. lcase xs {nil -> nil[a]; h:t -> t}", SUCC, &["1 : 2 : 3 : nil[Nat]"]),
    inst(
        Shape::ListToList,
        "double_head",
        r"\xs:[a]. lcase xs {nil -> nil[a]; h:t -> h : h : t}",
        DOUBLE,
        &["5 : 6 : nil[Nat]"],
    ),
    ShapeInstance {
        tau2: "[Nat]",
        ..inst(Shape::ListToList, "identity", r"\xs:[a]. xs", TWIN, &["1 : 2 : nil[Nat]"])
    },
];

pub fn shape_instances() -> &'static [ShapeInstance] {
    INSTANCES
}

impl ShapeInstance {
    pub fn terms(&self) -> (Term, Term, Vec<Term>, Ty, Ty) {
        let p = |s: &str| parse_term(s).unwrap_or_else(|e| panic!("instance {}: {e}", self.name));
        (
            p(self.f),
            p(self.g),
            self.args.iter().map(|a| p(a)).collect(),
            parse_type(self.tau1).expect("instance type parses"),
            parse_type(self.tau2).expect("instance type parses"),
        )
    }

    pub fn check(&self) -> Result<TheoremReport, TheoremError> {
        let (f, g, args, tau1, tau2) = self.terms();
        check_free_theorem(self.shape, &f, &g, &args, &tau1, &tau2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::Verdict;

    #[test]
    fn every_instance_holds() {
        for inst in shape_instances() {
            let r = inst.check().unwrap_or_else(|e| panic!("{}: {e}", inst.name));
            assert_eq!(r.verdict, Verdict::Holds, "{} {}: {r:?}", inst.shape, inst.name);
        }
    }

    #[test]
    fn three_per_shape() {
        for shape in Shape::ALL {
            let n = shape_instances().iter().filter(|i| i.shape == shape).count();
            assert!(n >= 3, "{shape}");
        }
    }
}
