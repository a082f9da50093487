//! Bundled example programs.
//!
//! * [`ground_terms`]: closed programs of ground type, together covering
//!   every term constructor.
//! * [`poly_terms`]: polymorphic programs, some with free term variables,
//!   used by the parametricity driver and the substitution checks.
//! * [`graph_functions`]: closed first-order functions used to build graph
//!   relations.
//! * [`FILES`]: the `.lam` files shipped in `crates/core/corpus/`.

use crate::stdlib::{LENGTH_SRC, MAP_LIST_SRC, MAP_PAIR_SRC};
use crate::syntax::{parse_term, parse_type, Term, Ty};
use crate::typecheck::Ctx;

pub const FILES: &[(&str, &str)] = &[
    ("length_12.lam", include_str!("../corpus/length_12.lam")),
    ("fst.lam", include_str!("../corpus/fst.lam")),
    ("double.lam", include_str!("../corpus/double.lam")),
    ("one.lam", include_str!("../corpus/one.lam")),
    ("two.lam", include_str!("../corpus/two.lam")),
    ("reverse.lam", include_str!("../corpus/reverse.lam")),
    ("dup.lam", include_str!("../corpus/dup.lam")),
    ("list_123.lam", include_str!("../corpus/list_123.lam")),
    ("countdown.lam", include_str!("../corpus/countdown.lam")),
];

const GROUND: &[(&str, &str)] = &[
    ("literal", "5"),
    ("sum_literals", "2 + 3"),
    ("identity_app", r"(\x:Nat. x) 5"),
    ("length_12", include_str!("../corpus/length_12.lam")),
    ("count_up", r"ifold(\x:Nat. x + 1, 0, 3)"),
    ("ncase_zero", "ncase 0 {0 -> 1; n -> n + n}"),
    ("ncase_pos", "ncase 4 {0 -> 1; n -> n + n}"),
    ("lcase_nil", "lcase nil[Nat] {nil -> 0; h:t -> h}"),
    ("lcase_cons", "lcase 3 : 4 : nil[Nat] {nil -> 0; h:t -> h}"),
    ("pcase_swap_sum", "pcase (1, 2) {(a, b) -> b + a}"),
    ("pair_with_app", r"(1, (\x:Nat. x + x) 3)"),
    ("list_123", include_str!("../corpus/list_123.lam")),
    (
        "map_double",
        r"(\g:Nat->Nat. \ys:[Nat]. lfold(\x:Nat. \xs:[Nat]. (g x) : xs, nil[Nat], ys)) (\n:Nat. n + n) (1 : 2 : 3 : nil[Nat])",
    ),
    (
        "reverse_123",
        r"(\xs:[Nat]. lfold(\x:Nat. \acc:[Nat]. lfold(\y:Nat. \r:[Nat]. y : r, x : nil[Nat], acc), nil[Nat], xs)) (1 : 2 : 3 : nil[Nat])",
    ),
    ("sum_list", r"lfold(\x:Nat. \y:Nat. x + y, 0, 1 : 2 : 3 : 4 : nil[Nat])"),
    ("twice_succ", r"(\f:Nat->Nat. \x:Nat. f (f x)) (\y:Nat. y + 1) 0"),
    (
        "compose",
        r"(\f:Nat->Nat. \g:Nat->Nat. \x:Nat. f (g x)) (\a:Nat. a + 2) (\b:Nat. b + b) 5",
    ),
    ("mult_ifold", r"(\m:Nat. \n:Nat. ifold(\acc:Nat. acc + n, 0, m)) 3 4"),
    ("swap", r"(\p:(Nat, Nat). pcase p {(a, b) -> (b, a)}) (1, 2)"),
    ("pair_iterate", r"ifold(\p:(Nat, Nat). pcase p {(a, b) -> (b, b + 1)}, (0, 0), 5)"),
    ("head_or_zero", r"(\xs:[Nat]. lcase xs {nil -> 0; h:t -> h}) (7 : 8 : nil[Nat])"),
    ("tail", r"(\xs:[Nat]. lcase xs {nil -> nil[Nat]; h:t -> t}) (7 : 8 : 9 : nil[Nat])"),
    ("is_zero", r"(\n:Nat. ncase n {0 -> 1; m -> 0}) 3"),
    ("replicate", r"(\n:Nat. \x:Nat. ifold(\acc:[Nat]. x : acc, nil[Nat], n)) 3 7"),
    ("nested_pcase", "pcase ((1, 2), 3) {(p, c) -> pcase p {(a, b) -> a + b + c}}"),
    (
        "fold_pairs",
        r"lfold(\p:(Nat, Nat). \acc:Nat. pcase p {(a, b) -> a + b + acc}, 0, (1, 2) : (3, 4) : nil[(Nat, Nat)])",
    ),
    (
        "fold_functions",
        r"lfold(\f:Nat->Nat. \acc:Nat. f acc, 1, (\x:Nat. x + x) : (\x:Nat. x + 3) : nil[Nat -> Nat])",
    ),
    (
        "drop_zeros",
        r"lfold(\x:Nat. \acc:[Nat]. ncase x {0 -> acc; n -> n : acc}, nil[Nat], 0 : 1 : 0 : 2 : nil[Nat])",
    ),
    (
        "factorial_4",
        r"pcase ifold(\p:(Nat, Nat). pcase p {(i, acc) -> (i + 1, ifold(\s:Nat. s + acc, 0, i + 1))}, (0, 1), 4) {(i, r) -> r}",
    ),
    (
        "length_nested",
        r"(\xs:[[Nat]]. lfold(\x:[Nat]. \y:Nat. 1 + y, 0, xs)) ((1 : nil[Nat]) : nil[Nat] : nil[[Nat]])",
    ),
    (
        "concat",
        r"lfold(\xs:[Nat]. \acc:[Nat]. lfold(\y:Nat. \r:[Nat]. y : r, acc, xs), nil[Nat], (1 : 2 : nil[Nat]) : (3 : nil[Nat]) : nil[[Nat]])",
    ),
    ("dup_app", r"(\x:Nat. (x, x)) 4"),
    ("ifold_zero_times", r"ifold(\x:Nat. x + 5, 2, 0)"),
    ("lcase_computed_nil", r"lcase (\u:Nat. nil[Nat]) 0 {nil -> 9; h:t -> h}"),
    (
        "pair_of_functions",
        r"pcase ((\x:Nat. x + 1), (\x:Nat. x + x)) {(f, g) -> f (g 3)}",
    ),
];

/// A polymorphic corpus entry: its type variables and free term variables.
#[derive(Debug, Clone, Copy)]
pub struct PolyEntry {
    pub name: &'static str,
    pub src: &'static str,
    pub type_vars: &'static [&'static str],
    pub free: &'static [(&'static str, &'static str)],
}

impl PolyEntry {
    pub fn term(&self) -> Term {
        parse_term(self.src).unwrap_or_else(|e| panic!("corpus entry {}: {e}", self.name))
    }

    /// The typing context the entry is meant to be checked in.
    pub fn ctx(&self) -> Ctx {
        let mut ctx = Ctx::with_type_vars(self.type_vars.iter().copied());
        for (x, ty) in self.free {
            let ty = parse_type(ty).expect("corpus type parses");
            ctx.bind(*x, ty).expect("corpus context is well formed");
        }
        ctx
    }
}

const fn poly(name: &'static str, src: &'static str, type_vars: &'static [&'static str]) -> PolyEntry {
    PolyEntry {
        name,
        src,
        type_vars,
        free: &[],
    }
}

const A: &[&str] = &["a"];
const AB: &[&str] = &["a", "b"];

const POLY: &[PolyEntry] = &[
    poly("id", r"\x:a. x", A),
    poly("fst", include_str!("../corpus/fst.lam"), A),
    poly("snd", r"\x:a. \y:a. y", A),
    poly("dup", include_str!("../corpus/dup.lam"), A),
    poly("swap", r"\p:(a, b). pcase p {(x, y) -> (y, x)}", AB),
    poly("const_nat", r"\x:a. 7", A),
    poly("length", LENGTH_SRC, A),
    poly("reverse", include_str!("../corpus/reverse.lam"), A),
    poly("map_list", MAP_LIST_SRC, AB),
    poly("map_pair", MAP_PAIR_SRC, &["a", "b", "c", "d"]),
    poly("twice", r"\f:a->a. \x:a. f (f x)", A),
    poly("compose", r"\f:b->a. \g:a->b. \x:a. f (g x)", AB),
    poly("head_or", r"\d:a. \xs:[a]. lcase xs {nil -> d; h:t -> h}", A),
    poly("tail", r"\xs:[a]. lcase xs {nil -> nil[a]; h:t -> t}", A),
    poly("iterate", r"\n:Nat. \f:a->a. \x:a. ifold(f, x, n)", A),
    poly("replicate", r"\n:Nat. \x:a. ifold(\acc:[a]. x : acc, nil[a], n)", A),
    poly("pick", r"\n:Nat. \x:a. \y:a. ncase n {0 -> x; m -> y}", A),
    poly(
        "flatten_pairs",
        r"\xs:[(a, a)]. lfold(\p:(a, a). \acc:[a]. pcase p {(x, y) -> x : y : acc}, nil[a], xs)",
        A,
    ),
    poly("apply", r"\f:a->b. \x:a. f x", AB),
    poly(
        "map_then_length",
        r"\g:a->b. \xs:[a]. lfold(\x:b. \y:Nat. 1 + y, 0, lfold(\x:a. \ys:[b]. (g x) : ys, nil[b], xs))",
        AB,
    ),
    poly("spin", r"\x:a. ifold(\y:a. y, x, 3)", A),
    poly("append", r"\xs:[a]. \ys:[a]. lfold(\x:a. \r:[a]. x : r, ys, xs)", A),
    poly("first_of_pair", r"\p:(a, a). pcase p {(x, y) -> x}", A),
    poly("church_two", r"\f:a->a. \x:a. f (f x)", A),
    PolyEntry {
        name: "open_var",
        src: "x",
        type_vars: A,
        free: &[("x", "a")],
    },
    PolyEntry {
        name: "open_app",
        src: "f (f x)",
        type_vars: A,
        free: &[("f", "a -> a"), ("x", "a")],
    },
    PolyEntry {
        name: "open_head",
        src: "(x, lcase xs {nil -> x; h:t -> h})",
        type_vars: A,
        free: &[("x", "a"), ("xs", "[a]")],
    },
    PolyEntry {
        name: "open_fold",
        src: r"lfold(\y:a. \n:Nat. n + k, 0, xs)",
        type_vars: A,
        free: &[("xs", "[a]"), ("k", "Nat")],
    },
];

const GRAPH_FNS: &[(&str, &str)] = &[
    ("double", include_str!("../corpus/double.lam")),
    ("succ", r"\n:Nat. n + 1"),
    ("const3", r"\n:Nat. 3"),
    ("is_zero", r"\n:Nat. ncase n {0 -> 1; m -> 0}"),
    ("triple", r"\n:Nat. ifold(\x:Nat. x + n, 0, 3)"),
    ("twin_list", r"\n:Nat. n : n : nil[Nat]"),
    ("replicate_self", r"\n:Nat. ifold(\acc:[Nat]. n : acc, nil[Nat], n)"),
    ("length_nat", r"\xs:[Nat]. lfold(\x:Nat. \y:Nat. 1 + y, 0, xs)"),
    ("sum", r"\xs:[Nat]. lfold(\x:Nat. \y:Nat. x + y, 0, xs)"),
    ("tail_nat", r"\xs:[Nat]. lcase xs {nil -> nil[Nat]; h:t -> t}"),
    ("add_pair", r"\p:(Nat, Nat). pcase p {(x, y) -> x + y}"),
    ("dup_nat", r"\n:Nat. (n, n)"),
    ("swap_nat", r"\p:(Nat, Nat). pcase p {(x, y) -> (y, x)}"),
];

/// Closed programs of ground type.
pub fn ground_terms() -> Vec<(&'static str, Term)> {
    GROUND
        .iter()
        .map(|(name, src)| {
            let t = parse_term(src).unwrap_or_else(|e| panic!("corpus entry {name}: {e}"));
            (*name, t)
        })
        .collect()
}

pub fn poly_terms() -> &'static [PolyEntry] {
    POLY
}

/// Closed first-order functions, parsed.
pub fn graph_functions() -> Vec<(&'static str, Term)> {
    GRAPH_FNS
        .iter()
        .map(|(name, src)| {
            let t = parse_term(src).unwrap_or_else(|e| panic!("corpus entry {name}: {e}"));
            (*name, t)
        })
        .collect()
}

/// Look up one of the bundled `.lam` files by file name.
pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}

/// The type of a closed corpus term; panics if it does not check.
pub fn type_of_closed(t: &Term) -> Ty {
    crate::typecheck::typecheck(&Ctx::new(), t).unwrap_or_else(|e| panic!("{e} in `{t}`"))
}
