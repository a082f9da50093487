use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::semantics::{app_cost, capp, clist, cpair, eval_cost, CostVal, Costed, Env};
use crate::stdlib::{map_list_value, map_pair_value};
use crate::syntax::{parse_type, subst_type_in_term, Term, Ty};
use crate::typecheck::{typecheck, Ctx, TypeError};

/// The polymorphic type of `f`, over the single type variable `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `a -> Nat`
    ConstNat,
    /// `a -> a -> a`
    Proj,
    /// `a -> (a, a)`
    Dup,
    /// `(a, a) -> a`
    PairConsume,
    /// `[a] -> Nat`
    ListLen,
    /// `[a] -> [a]`
    ListToList,
}

impl Shape {
    pub const ALL: [Shape; 6] = [
        Shape::ConstNat,
        Shape::Proj,
        Shape::Dup,
        Shape::PairConsume,
        Shape::ListLen,
        Shape::ListToList,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::ConstNat => "const_nat",
            Shape::Proj => "proj",
            Shape::Dup => "dup",
            Shape::PairConsume => "pair_consume",
            Shape::ListLen => "list_len",
            Shape::ListToList => "list_to_list",
        }
    }

    pub fn f_type(self) -> Ty {
        let src = match self {
            Shape::ConstNat => "a -> Nat",
            Shape::Proj => "a -> a -> a",
            Shape::Dup => "a -> (a, a)",
            Shape::PairConsume => "(a, a) -> a",
            Shape::ListLen => "[a] -> Nat",
            Shape::ListToList => "[a] -> [a]",
        };
        parse_type(src).expect("shape types parse")
    }

    /// Types of the argument terms once `a` is instantiated to `tau1`.
    pub fn arg_types(self, tau1: &Ty) -> Vec<Ty> {
        match self {
            Shape::ConstNat | Shape::Dup => vec![tau1.clone()],
            Shape::Proj => vec![tau1.clone(), tau1.clone()],
            Shape::PairConsume => vec![Ty::pair(tau1.clone(), tau1.clone())],
            Shape::ListLen | Shape::ListToList => vec![Ty::list(tau1.clone())],
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('-', "_").to_ascii_lowercase();
        Shape::ALL
            .into_iter()
            .find(|sh| sh.name() == norm)
            .ok_or_else(|| {
                let names: Vec<&str> = Shape::ALL.iter().map(|s| s.name()).collect();
                format!("unknown shape `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
        })
    }
}

/// One candidate value for the cost difference, with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub label: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Every admissible value of `delta`.
    pub predicted: Vec<Prediction>,
    /// Labels of the predictions equal to the measured `delta`.
    pub matched: Vec<String>,
    /// Positions selected by `f` (0-based), for list-to-list instances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub shape: Shape,
    /// The side predicted to be cheaper.
    pub lhs: Costed,
    pub rhs: Costed,
    #[serde(rename = "valueEqual")]
    pub value_equal: bool,
    /// `cost(rhs) - cost(lhs)`.
    pub delta: i64,
    pub witness: Witness,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("{what}: {source}")]
    Type {
        what: String,
        #[source]
        source: TypeError,
    },
    #[error("{what} has type `{found}` but `{expected}` is required")]
    Mismatch { what: String, expected: Ty, found: Ty },
    #[error("expected {expected} argument term(s), got {found}")]
    Arity { expected: usize, found: usize },
    #[error("{0} must evaluate to a value without functions")]
    NotGround(String),
}

/// `a ⊑ b`: same value, and `a` costs no more than `b`.
pub fn sqsubseteq(a: &Costed, b: &Costed) -> bool {
    a.val == b.val && a.cost <= b.cost
}

fn check_type(ctx: &Ctx, t: &Term, expected: &Ty, what: &str) -> Result<(), TheoremError> {
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

fn eval_closed(t: &Term) -> Costed {
    eval_cost(&Env::new(), t)
}

fn pred(label: impl Into<String>, value: i64) -> Prediction {
    Prediction {
        label: label.into(),
        value,
    }
}

fn conclude(
    shape: Shape,
    lhs: Costed,
    rhs: Costed,
    predicted: Vec<Prediction>,
    extra_ok: bool,
    indices: Option<Vec<usize>>,
) -> TheoremReport {
    let value_equal = lhs.val == rhs.val;
    let delta = rhs.cost - lhs.cost;
    let matched: Vec<String> = predicted
        .iter()
        .filter(|p| p.value == delta)
        .map(|p| p.label.clone())
        .collect();
    let verdict = if value_equal && extra_ok && !matched.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    TheoremReport {
        shape,
        lhs,
        rhs,
        value_equal,
        delta,
        witness: Witness {
            predicted,
            matched,
            indices,
        },
        verdict,
        note: None,
    }
}

/// Semantic ingredients of one instance.
struct Sides {
    /// `f` instantiated at `tau1` and at `tau2`.
    f1: Costed,
    f2: Costed,
    g: Costed,
    args: Vec<Costed>,
}

/// Check the free theorem for `f` of the given shape, instantiated with
/// `g :: tau1 -> tau2` and the argument terms (closed, at `tau1`-based types).
pub fn check_free_theorem(
    shape: Shape,
    f: &Term,
    g: &Term,
    args: &[Term],
    tau1: &Ty,
    tau2: &Ty,
) -> Result<TheoremReport, TheoremError> {
    check_type(&Ctx::with_type_vars(["a"]), f, &shape.f_type(), "f")?;
    let sides = prepare(shape, f, g, args, tau1, tau2)?;
    Ok(measure(shape, f, &sides, tau1))
}

fn prepare(shape: Shape, f: &Term, g: &Term, args: &[Term], tau1: &Ty, tau2: &Ty) -> Result<Sides, TheoremError> {
    let closed = Ctx::new();
    check_type(&closed, g, &Ty::arrow(tau1.clone(), tau2.clone()), "g")?;
    let arg_types = shape.arg_types(tau1);
    if arg_types.len() != args.len() {
        return Err(TheoremError::Arity {
            expected: arg_types.len(),
            found: args.len(),
        });
    }
    let mut arg_vals = Vec::new();
    for (i, (t, ty)) in args.iter().zip(&arg_types).enumerate() {
        let what = format!("argument {}", i + 1);
        check_type(&closed, t, ty, &what)?;
        let v = eval_closed(t);
        if !v.val.is_ground() {
            return Err(TheoremError::NotGround(what));
        }
        arg_vals.push(v);
    }
    Ok(Sides {
        f1: eval_closed(&subst_type_in_term(f, "a", tau1)),
        f2: eval_closed(&subst_type_in_term(f, "a", tau2)),
        g: eval_closed(g),
        args: arg_vals,
    })
}

fn measure(shape: Shape, f: &Term, s: &Sides, tau1: &Ty) -> TheoremReport {
    let Sides { f1, f2, g, args } = s;
    match shape {
        Shape::ConstNat => {
            let x = &args[0];
            let lhs = capp(f1, x);
            let rhs = capp(f2, &capp(g, x));
            conclude(shape, lhs, rhs, vec![pred("appCost(g, x)", app_cost(g, x))], true, None)
        }
        Shape::Proj => proj_report(f1, f2, g, &args[0], &args[1]),
        Shape::Dup => {
            let t = &args[0];
            let mp_gg = capp(&map_pair_value(), &cpair(g.clone(), g.clone()));
            let lhs = capp(f2, &capp(g, t));
            let rhs = capp(&mp_gg, &capp(f1, t));
            let delta = app_cost(&mp_gg, &cpair(t.clone(), t.clone())) - app_cost(g, t);
            conclude(
                shape,
                lhs,
                rhs,
                vec![pred("appCost(mapPair (g, g), (t, t)) - appCost(g, t)", delta)],
                true,
                None,
            )
        }
        Shape::PairConsume => {
            let t = &args[0];
            let mp_gg = capp(&map_pair_value(), &cpair(g.clone(), g.clone()));
            let lhs = capp(g, &capp(f1, t));
            let rhs = capp(f2, &capp(&mp_gg, t));
            let whole = app_cost(&mp_gg, t);
            let (c1, c2) = match &t.val {
                CostVal::Pair(a, b) => ((**a).clone().with_cost(0), (**b).clone().with_cost(0)),
                _ => unreachable!("argument was checked to be a pair"),
            };
            let predicted = vec![
                pred("appCost(mapPair (g, g), t) - appCost(g, t.1)", whole - app_cost(g, &c1)),
                pred("appCost(mapPair (g, g), t) - appCost(g, t.2)", whole - app_cost(g, &c2)),
            ];
            conclude(shape, lhs, rhs, predicted, true, None)
        }
        Shape::ListLen => {
            let t = &args[0];
            let ml_g = capp(&map_list_value(), g);
            let lhs = capp(f1, t);
            let rhs = capp(f2, &capp(&ml_g, t));
            conclude(shape, lhs, rhs, vec![pred("appCost(mapList g, t)", app_cost(&ml_g, t))], true, None)
        }
        Shape::ListToList => list_to_list_report(f, f1, f2, g, &args[0], tau1),
    }
}

fn proj_report(f1: &Costed, f2: &Costed, g: &Costed, t1: &Costed, t2: &Costed) -> TheoremReport {
    let lhs = capp(g, &capp(&capp(f1, t1), t2));
    let rhs = capp(&capp(f2, &capp(g, t1)), &capp(g, t2));
    let predicted = vec![pred("appCost(g, t1)", app_cost(g, t1)), pred("appCost(g, t2)", app_cost(g, t2))];
    conclude(Shape::Proj, lhs, rhs, predicted, true, None)
}

fn list_to_list_report(f: &Term, f1: &Costed, f2: &Costed, g: &Costed, t: &Costed, _tau1: &Ty) -> TheoremReport {
    let ml_g = capp(&map_list_value(), g);
    let lhs = capp(&ml_g, &capp(f1, t));
    let rhs = capp(f2, &capp(&ml_g, t));
    let elems: Vec<CostVal> = match &t.val {
        CostVal::List(items) => items.clone(),
        _ => unreachable!("argument was checked to be a list"),
    };
    // Run f at Nat on the positions 1..n; the result names the positions it keeps.
    let f_nat = eval_closed(&subst_type_in_term(f, "a", &Ty::Nat));
    let positions = clist((1..=elems.len() as u64).map(|i| Costed::free(CostVal::Nat(i))));
    let picked: Option<Vec<usize>> = match capp(&f_nat, &positions).val {
        CostVal::List(ps) => ps
            .iter()
            .map(|p| match p {
                CostVal::Nat(i) if *i >= 1 && (*i as usize) <= elems.len() => Some(*i as usize - 1),
                _ => None,
            })
            .collect(),
        _ => None,
    };
    let Some(indices) = picked else {
        let mut r = conclude(Shape::ListToList, lhs, rhs, Vec::new(), false, None);
        r.note = Some("f at Nat did not return positions of its input".into());
        return r;
    };
    let selected = clist(indices.iter().map(|&i| Costed::free(elems[i].clone())));
    let value_clause = selected.val == capp(f1, t).val;
    let predicted = vec![pred(
        "appCost(mapList g, t) - appCost(mapList g, selected)",
        app_cost(&ml_g, t) - app_cost(&ml_g, &selected),
    )];
    let mut r = conclude(Shape::ListToList, lhs, rhs, predicted, value_clause, Some(indices));
    if !value_clause {
        r.note = Some("selected elements differ from f t".into());
    }
    r
}

/// The projection obligation for an `f` that may be monomorphic.
///
/// If `f :: a -> a -> a` this is just [`check_free_theorem`] at
/// [`Shape::Proj`]. If `f :: Nat -> Nat -> Nat` the obligation is run anyway
/// and the report is marked as outside the theorem's hypotheses.
pub fn negative_control(f: &Term, g: &Term, t1: &Term, t2: &Term) -> Result<TheoremReport, TheoremError> {
    let g_ty = typecheck(&Ctx::new(), g).map_err(|source| TheoremError::Type {
        what: "g".into(),
        source,
    })?;
    let (tau1, tau2) = match g_ty {
        Ty::Arrow(d, c) => (*d, *c),
        other => {
            return Err(TheoremError::Mismatch {
                what: "g".into(),
                expected: parse_type("Nat -> Nat").unwrap(),
                found: other,
            })
        }
    };
    let args = [t1.clone(), t2.clone()];
    let poly = Ctx::with_type_vars(["a"]);
    if typecheck(&poly, f).ok() == Some(Shape::Proj.f_type()) {
        return check_free_theorem(Shape::Proj, f, g, &args, &tau1, &tau2);
    }
    let mono = parse_type("Nat -> Nat -> Nat").unwrap();
    check_type(&Ctx::new(), f, &mono, "f")?;
    check_type(&Ctx::new(), g, &parse_type("Nat -> Nat").unwrap(), "g")?;
    let sides = prepare(Shape::Proj, f, g, &args, &tau1, &tau2)?;
    let mut r = proj_report(&sides.f1, &sides.f2, &sides.g, &sides.args[0], &sides.args[1]);
    r.note = Some("f is monomorphic: the free theorem does not apply".into());
    Ok(r)
}
