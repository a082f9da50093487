//! The standard relation Δ, the embedded-cost relation Δ′ and the fully
//! cost-lifted relation Δ^C, each implemented clause by clause.
//!
//! Arrow clauses quantify over a finite sample of the argument relation. The
//! samples are built per type and cached inside a [`Relator`]:
//!
//! * type variables use every pair of the relation assigned by ρ;
//! * `Nat` uses the diagonal on `0..=nat_max`;
//! * lists and pairs are assembled from samples of their components;
//! * arrows use candidate function pairs (constants, identities, lookup
//!   tables over first-order domains), keeping those the relation accepts.
//!
//! The lifted sample is the embedded one crossed with a few costs and then
//! filtered through the lifted relation itself, so both relations range over
//! the same candidates and each only over pairs it considers related.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use super::{Bounds, Rel, RelEnv, RelError};
use crate::semantics::{capp, CostVal, Costed, Ground, Value};
use crate::syntax::Ty;

type Sample<T> = Rc<Vec<(T, T)>>;

/// Decides relatedness under one fixed ρ, caching argument samples.
pub struct Relator<'r> {
    rho: &'r RelEnv,
    bounds: Bounds,
    std_cache: RefCell<HashMap<Ty, Sample<Value>>>,
    emb_cache: RefCell<HashMap<Ty, Sample<CostVal>>>,
    lift_cache: RefCell<HashMap<Ty, Sample<Costed>>>,
}

pub fn member_std(ty: &Ty, rho: &RelEnv, x: &Value, y: &Value) -> Result<bool, RelError> {
    Relator::new(rho).std(ty, x, y)
}

pub fn member_embedded(ty: &Ty, rho: &RelEnv, x: &CostVal, y: &CostVal) -> Result<bool, RelError> {
    Relator::new(rho).embedded(ty, x, y)
}

pub fn member_lifted(ty: &Ty, rho: &RelEnv, x: &Costed, y: &Costed) -> Result<bool, RelError> {
    Relator::new(rho).lifted(ty, x, y)
}

impl<'r> Relator<'r> {
    pub fn new(rho: &'r RelEnv) -> Self {
        Self::with_bounds(rho, Bounds::DEFAULT)
    }

    pub fn with_bounds(rho: &'r RelEnv, bounds: Bounds) -> Self {
        Relator {
            rho,
            bounds,
            std_cache: RefCell::default(),
            emb_cache: RefCell::default(),
            lift_cache: RefCell::default(),
        }
    }

    pub fn rho(&self) -> &RelEnv {
        self.rho
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn check(&self, ty: &Ty) -> Result<(), RelError> {
        match ty.free_vars().into_iter().find(|a| !self.rho.contains_key(a)) {
            Some(a) => Err(RelError::UnboundTypeVar(a)),
            None => Ok(()),
        }
    }

    fn rel(&self, a: &str) -> &Rel {
        &self.rho[a]
    }

    pub fn std(&self, ty: &Ty, x: &Value, y: &Value) -> Result<bool, RelError> {
        self.check(ty)?;
        Ok(self.std_rel(ty, x, y))
    }

    pub fn embedded(&self, ty: &Ty, x: &CostVal, y: &CostVal) -> Result<bool, RelError> {
        self.check(ty)?;
        Ok(self.emb_rel(ty, x, y))
    }

    pub fn lifted(&self, ty: &Ty, x: &Costed, y: &Costed) -> Result<bool, RelError> {
        self.check(ty)?;
        Ok(self.lift_rel(ty, x, y))
    }

    /// The finite sample of Δ at `ty` used for quantification.
    pub fn std_domain(&self, ty: &Ty) -> Result<Sample<Value>, RelError> {
        self.check(ty)?;
        Ok(self.std_dom(ty))
    }

    /// The finite sample of Δ′ at `ty` used for quantification.
    pub fn embedded_domain(&self, ty: &Ty) -> Result<Sample<CostVal>, RelError> {
        self.check(ty)?;
        Ok(self.emb_dom(ty))
    }

    /// The finite sample of Δ^C at `ty` used for quantification.
    pub fn lifted_domain(&self, ty: &Ty) -> Result<Sample<Costed>, RelError> {
        self.check(ty)?;
        Ok(self.lift_dom(ty))
    }

    fn std_rel(&self, ty: &Ty, x: &Value, y: &Value) -> bool {
        match ty {
            Ty::Var(a) => self.rel(a).relates_std(x, y),
            Ty::Nat => matches!((x, y), (Value::Nat(m), Value::Nat(n)) if m == n),
            Ty::List(e) => match (x, y) {
                (Value::List(xs), Value::List(ys)) => {
                    xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| self.std_rel(e, a, b))
                }
                _ => false,
            },
            Ty::Pair(l, r) => match (x, y) {
                (Value::Pair(a1, b1), Value::Pair(a2, b2)) => {
                    self.std_rel(l, a1, a2) && self.std_rel(r, b1, b2)
                }
                _ => false,
            },
            Ty::Arrow(d, c) => match (x, y) {
                (Value::Fun(_), Value::Fun(_)) => self
                    .std_dom(d)
                    .iter()
                    .all(|(a, b)| self.std_rel(c, &x.apply(a.clone()), &y.apply(b.clone()))),
                _ => false,
            },
        }
    }

    fn emb_rel(&self, ty: &Ty, x: &CostVal, y: &CostVal) -> bool {
        match ty {
            Ty::Var(a) => self.rel(a).relates(x, y),
            Ty::Nat => matches!((x, y), (CostVal::Nat(m), CostVal::Nat(n)) if m == n),
            Ty::List(e) => match (x, y) {
                (CostVal::List(xs), CostVal::List(ys)) => {
                    xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| self.emb_rel(e, a, b))
                }
                _ => false,
            },
            Ty::Pair(l, r) => match (x, y) {
                (CostVal::Pair(a1, b1), CostVal::Pair(a2, b2)) => {
                    self.emb_rel(l, a1, a2) && self.emb_rel(r, b1, b2)
                }
                _ => false,
            },
            Ty::Arrow(d, c) => match (x, y) {
                (CostVal::Fun(_), CostVal::Fun(_)) => self.emb_dom(d).iter().all(|(a, b)| {
                    let (fx, gy) = (x.call(a.clone()), y.call(b.clone()));
                    fx.cost == gy.cost && self.emb_rel(c, &fx.val, &gy.val)
                }),
                _ => false,
            },
        }
    }

    fn lift_rel(&self, ty: &Ty, x: &Costed, y: &Costed) -> bool {
        match ty {
            Ty::Var(a) => x.cost == y.cost && self.rel(a).relates(&x.val, &y.val),
            Ty::Nat => {
                x.cost == y.cost
                    && matches!((&x.val, &y.val), (CostVal::Nat(m), CostVal::Nat(n)) if m == n)
            }
            Ty::List(e) => match (&x.val, &y.val) {
                (CostVal::List(xs), CostVal::List(ys)) if xs.len() == ys.len() => {
                    let items: Vec<_> = xs.iter().zip(ys).map(|(a, b)| (&**e, a, b)).collect();
                    self.split_lifted(&items, x.cost, y.cost)
                }
                _ => false,
            },
            Ty::Pair(l, r) => match (&x.val, &y.val) {
                (CostVal::Pair(a1, b1), CostVal::Pair(a2, b2)) => {
                    self.split_lifted(&[(&**l, &**a1, &**a2), (&**r, &**b1, &**b2)], x.cost, y.cost)
                }
                _ => false,
            },
            Ty::Arrow(d, c) => {
                x.cost == y.cost
                    && matches!((&x.val, &y.val), (CostVal::Fun(_), CostVal::Fun(_)))
                    && self
                        .lift_dom(d)
                        .iter()
                        .all(|(a, b)| self.lift_rel(c, &capp(x, a), &capp(y, b)))
            }
        }
    }

    /// Is there a way to hand out costs `c` and `d` to the components so that
    /// each component pair is lifted-related? This is the shape of both the
    /// ⊕-lifting (lists) and the ⊗-lifting (pairs).
    ///
    /// The first component absorbs whatever the others leave over; the others
    /// range over `cost_min..=cost_max`. The zero split is tried first.
    fn split_lifted(&self, items: &[(&Ty, &CostVal, &CostVal)], c: i64, d: i64) -> bool {
        let Some(((ty0, x0, y0), rest)) = items.split_first() else {
            // An empty list is related to an empty list at equal cost: this
            // keeps the lifting closed under cost shifts.
            return c == d;
        };
        let at = |ty: &Ty, x: &CostVal, y: &CostVal, cx: i64, cy: i64| {
            self.lift_rel(ty, &x.clone().with_cost(cx), &y.clone().with_cost(cy))
        };
        if rest.iter().all(|(t, x, y)| at(t, x, y, 0, 0)) && at(ty0, x0, y0, c, d) {
            return true;
        }
        let mut reach: BTreeSet<(i64, i64)> = BTreeSet::from([(0, 0)]);
        for (t, x, y) in rest {
            let admissible: Vec<(i64, i64)> = self
                .bounds
                .cost_range()
                .flat_map(|cx| self.bounds.cost_range().map(move |cy| (cx, cy)))
                .filter(|&(cx, cy)| at(t, x, y, cx, cy))
                .collect();
            if admissible.is_empty() {
                return false;
            }
            reach = reach
                .iter()
                .flat_map(|&(sx, sy)| admissible.iter().map(move |&(cx, cy)| (sx + cx, sy + cy)))
                .collect();
        }
        reach.iter().any(|&(sx, sy)| at(ty0, x0, y0, c - sx, d - sy))
    }

    fn std_dom(&self, ty: &Ty) -> Sample<Value> {
        let hit = self.std_cache.borrow().get(ty).cloned();
        if let Some(s) = hit {
            return s;
        }
        let b = &self.bounds;
        let built = match ty {
            Ty::Var(a) => self
                .rel(a)
                .pairs()
                .map(|(l, r)| (l.to_value(), r.to_value()))
                .collect(),
            Ty::Nat => (0..=b.nat_max).map(|n| (Value::Nat(n), Value::Nat(n))).collect(),
            Ty::List(e) => lists(&self.std_dom(e), b.domain_list_len, b.max_domain, Value::List),
            Ty::Pair(l, r) => product(&self.std_dom(l), &self.std_dom(r), Value::pair),
            Ty::Arrow(d, c) => self.std_functions(d, c),
        };
        let s = Rc::new(built);
        self.std_cache.borrow_mut().insert(ty.clone(), Rc::clone(&s));
        s
    }

    fn emb_dom(&self, ty: &Ty) -> Sample<CostVal> {
        let hit = self.emb_cache.borrow().get(ty).cloned();
        if let Some(s) = hit {
            return s;
        }
        let b = &self.bounds;
        let built = match ty {
            Ty::Var(a) => self
                .rel(a)
                .pairs()
                .map(|(l, r)| (l.to_cost_val(), r.to_cost_val()))
                .collect(),
            Ty::Nat => (0..=b.nat_max)
                .map(|n| (CostVal::Nat(n), CostVal::Nat(n)))
                .collect(),
            Ty::List(e) => lists(&self.emb_dom(e), b.domain_list_len, b.max_domain, CostVal::List),
            Ty::Pair(l, r) => product(&self.emb_dom(l), &self.emb_dom(r), CostVal::pair),
            Ty::Arrow(d, c) => self.emb_functions(d, c),
        };
        let s = Rc::new(built);
        self.emb_cache.borrow_mut().insert(ty.clone(), Rc::clone(&s));
        s
    }

    fn lift_dom(&self, ty: &Ty) -> Sample<Costed> {
        let hit = self.lift_cache.borrow().get(ty).cloned();
        if let Some(s) = hit {
            return s;
        }
        let base = self.emb_dom(ty);
        let candidates: Vec<(Costed, Costed)> = base
            .iter()
            .flat_map(|(a, b)| {
                self.bounds
                    .domain_costs
                    .iter()
                    .map(move |&k| (a.clone().with_cost(k), b.clone().with_cost(k)))
            })
            .collect();
        let built: Vec<_> = candidates
            .into_iter()
            .filter(|(x, y)| self.lift_rel(ty, x, y))
            .collect();
        let s = Rc::new(built);
        self.lift_cache.borrow_mut().insert(ty.clone(), Rc::clone(&s));
        s
    }

    fn std_functions(&self, d: &Ty, c: &Ty) -> Vec<(Value, Value)> {
        let ins = self.std_dom(d);
        let outs = self.std_dom(c);
        let mut cands: Vec<(Value, Value)> = outs
            .iter()
            .take(3)
            .map(|(a, b)| (const_std(a.clone()), const_std(b.clone())))
            .collect();
        if d == c {
            let id = Value::fun(|v| v);
            cands.push((id.clone(), id));
        }
        if d.is_first_order() {
            let outs: Vec<(Value, Value)> = outs.iter().take(6).cloned().collect();
            cands.extend(self.tables(&ins, &outs, |v| v.to_ground().ok(), table_std));
        }
        let arrow = Ty::arrow(d.clone(), c.clone());
        cands
            .into_iter()
            .filter(|(f, g)| self.std_rel(&arrow, f, g))
            .take(self.bounds.max_function_pairs)
            .collect()
    }

    fn emb_functions(&self, d: &Ty, c: &Ty) -> Vec<(CostVal, CostVal)> {
        let ins = self.emb_dom(d);
        let outs: Vec<(Costed, Costed)> = self
            .emb_dom(c)
            .iter()
            .take(3)
            .flat_map(|(a, b)| {
                self.bounds
                    .domain_costs
                    .iter()
                    .map(move |&k| (a.clone().with_cost(k), b.clone().with_cost(k)))
            })
            .collect();
        let mut cands: Vec<(CostVal, CostVal)> = outs
            .iter()
            .take(4)
            .map(|(a, b)| (const_cost(a.clone()), const_cost(b.clone())))
            .collect();
        if d == c {
            for &k in &self.bounds.domain_costs {
                cands.push((ident_cost(k), ident_cost(k)));
            }
        }
        if d.is_first_order() {
            cands.extend(self.tables(&ins, &outs, |v| v.to_ground().ok(), table_cost));
        }
        let arrow = Ty::arrow(d.clone(), c.clone());
        cands
            .into_iter()
            .filter(|(f, g)| self.emb_rel(&arrow, f, g))
            .take(self.bounds.max_function_pairs)
            .collect()
    }

    /// Pairs of lookup-table functions: input pair `i` is sent to output pair
    /// `assign[i]`. Assignments that would send one key to two different
    /// outputs on either side are dropped.
    fn tables<I, O: Clone + PartialEq, F>(
        &self,
        ins: &[(I, I)],
        outs: &[(O, O)],
        key: impl Fn(&I) -> Option<Ground>,
        build: impl Fn(BTreeMap<Ground, O>, O) -> F,
    ) -> Vec<(F, F)> {
        let keys: Vec<(Ground, Ground)> = ins
            .iter()
            .take(4)
            .filter_map(|(a, b)| Some((key(a)?, key(b)?)))
            .collect();
        if outs.is_empty() {
            return Vec::new();
        }
        let left_outs: Vec<O> = outs.iter().map(|p| p.0.clone()).collect();
        let right_outs: Vec<O> = outs.iter().map(|p| p.1.clone()).collect();
        let left_keys: Vec<Ground> = keys.iter().map(|k| k.0.clone()).collect();
        let right_keys: Vec<Ground> = keys.iter().map(|k| k.1.clone()).collect();
        assignments(keys.len(), outs.len(), self.bounds.table_tries)
            .into_iter()
            .filter_map(|assign| {
                let l = table(&left_keys, &assign, &left_outs)?;
                let r = table(&right_keys, &assign, &right_outs)?;
                Some((build(l, left_outs[0].clone()), build(r, right_outs[0].clone())))
            })
            .collect()
    }
}

fn lists<T: Clone>(elems: &[(T, T)], max_len: usize, cap: usize, mk: impl Fn(Vec<T>) -> T) -> Vec<(T, T)> {
    let elems = &elems[..elems.len().min(3)];
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for len in 0..=max_len {
        for idx in &frontier {
            if out.len() >= cap {
                return out;
            }
            let left = idx.iter().map(|&i| elems[i].0.clone()).collect();
            let right = idx.iter().map(|&i| elems[i].1.clone()).collect();
            out.push((mk(left), mk(right)));
        }
        if len < max_len {
            frontier = frontier
                .iter()
                .flat_map(|p| {
                    (0..elems.len()).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
    }
    out
}

fn product<T: Clone>(ls: &[(T, T)], rs: &[(T, T)], mk: impl Fn(T, T) -> T) -> Vec<(T, T)> {
    ls.iter()
        .take(4)
        .flat_map(|(a1, b1)| {
            rs.iter()
                .take(4)
                .map(|(a2, b2)| (mk(a1.clone(), a2.clone()), mk(b1.clone(), b2.clone())))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Up to `tries` assignments of `n_in` inputs to `n_out` outputs, spread
/// evenly over the full space when it is larger than `tries`.
fn assignments(n_in: usize, n_out: usize, tries: usize) -> Vec<Vec<usize>> {
    if n_in == 0 || n_out == 0 || tries == 0 {
        return Vec::new();
    }
    let base = n_out as u128;
    let total = base.checked_pow(n_in as u32).unwrap_or(u128::MAX);
    let count = total.min(tries as u128);
    let step = total / count;
    (0..count)
        .map(|k| {
            let mut x = k * step;
            (0..n_in)
                .map(|_| {
                    let digit = (x % base) as usize;
                    x /= base;
                    digit
                })
                .collect()
        })
        .collect()
}

fn table<O: Clone + PartialEq>(keys: &[Ground], assign: &[usize], outs: &[O]) -> Option<BTreeMap<Ground, O>> {
    let mut map = BTreeMap::new();
    for (k, &j) in keys.iter().zip(assign) {
        match map.get(k) {
            Some(prev) if *prev != outs[j] => return None,
            Some(_) => {}
            None => {
                map.insert(k.clone(), outs[j].clone());
            }
        }
    }
    Some(map)
}

fn const_std(v: Value) -> Value {
    Value::fun(move |_| v.clone())
}

fn table_std(map: BTreeMap<Ground, Value>, default: Value) -> Value {
    Value::fun(move |v| {
        v.to_ground()
            .ok()
            .and_then(|k| map.get(&k).cloned())
            .unwrap_or_else(|| default.clone())
    })
}

fn const_cost(r: Costed) -> CostVal {
    CostVal::fun(move |_| r.clone())
}

fn ident_cost(k: i64) -> CostVal {
    CostVal::fun(move |v| v.with_cost(k))
}

fn table_cost(map: BTreeMap<Ground, Costed>, default: Costed) -> CostVal {
    CostVal::fun(move |v| {
        v.to_ground()
            .ok()
            .and_then(|k| map.get(&k).cloned())
            .unwrap_or_else(|| default.clone())
    })
}
