//! Small exhaustive grids of types, relation environments and value pairs,
//! used to cross-check the relations against each other.

use super::{Bounds, Rel, RelEnv, RelError, Relator};
use crate::semantics::{CostVal, Costed, Ground};
use crate::syntax::Ty;

/// Every type over `{a, Nat}` built from lists, pairs and arrows, up to
/// `max_type_depth`.
pub fn grid_types(bounds: &Bounds) -> Vec<Ty> {
    let mut by_depth: Vec<Vec<Ty>> = vec![vec![Ty::var("a"), Ty::Nat]];
    for depth in 1..=bounds.max_type_depth {
        let below: Vec<Ty> = by_depth.iter().flatten().cloned().collect();
        let prev = &by_depth[depth - 1];
        let mut layer: Vec<Ty> = prev.iter().map(|t| Ty::list(t.clone())).collect();
        for l in &below {
            for r in &below {
                if l.depth().max(r.depth()) == depth - 1 {
                    layer.push(Ty::pair(l.clone(), r.clone()));
                    layer.push(Ty::arrow(l.clone(), r.clone()));
                }
            }
        }
        by_depth.push(layer);
    }
    by_depth.into_iter().flatten().collect()
}

/// Interpretations of `a`: empty, a single pair, a function graph, a
/// non-functional relation, and one between different carriers.
pub fn grid_rel_envs(bounds: &Bounds) -> Vec<RelEnv> {
    let rels = [
        Rel::new(),
        Rel::nats([(1, 2)]),
        Rel::nats([(0, 0), (1, 2), (2, 4)]),
        Rel::nats([(0, 1), (0, 2)]),
        Rel::from_ground([
            (Ground::Nat(1), Ground::nat_list([1])),
            (Ground::Nat(2), Ground::nat_list([])),
        ]),
    ];
    rels.into_iter()
        .filter(|r| r.len() <= bounds.max_rel_size)
        .map(|r| RelEnv::from([("a".to_string(), r)]))
        .collect()
}

/// Value pairs at `ty`: the relator's own related sample first, then an even
/// spread over the cross product of a small per-side value pool.
pub fn grid_pairs(r: &Relator, ty: &Ty) -> Result<Vec<(CostVal, CostVal)>, RelError> {
    let cap = r.bounds().grid_pairs;
    let related = r.embedded_domain(ty)?;
    let mut out: Vec<(CostVal, CostVal)> = related.iter().take(cap / 2).cloned().collect();
    let pool = pool(r, ty)?;
    let total = pool.len() * pool.len();
    let want = (cap - out.len()).min(total);
    for k in 0..want {
        let idx = k * total / want;
        out.push((pool[idx / pool.len()].clone(), pool[idx % pool.len()].clone()));
    }
    Ok(out)
}

fn pool(r: &Relator, ty: &Ty) -> Result<Vec<CostVal>, RelError> {
    let b = r.bounds();
    Ok(match ty {
        Ty::Var(a) => {
            let rel = r.rho().get(a).ok_or_else(|| RelError::UnboundTypeVar(a.clone()))?;
            let mut vals: Vec<CostVal> = rel.carrier().iter().map(Ground::to_cost_val).collect();
            vals.push(CostVal::Nat(7));
            vals
        }
        Ty::Nat => (0..=b.nat_max).map(CostVal::Nat).collect(),
        Ty::List(e) => {
            let elems: Vec<CostVal> = pool(r, e)?.into_iter().take(2).collect();
            let mut lists = vec![Vec::new()];
            let mut frontier = vec![Vec::new()];
            for _ in 0..b.grid_list_len {
                frontier = frontier
                    .iter()
                    .flat_map(|p: &Vec<CostVal>| {
                        elems.iter().map(move |x| {
                            let mut q = p.clone();
                            q.push(x.clone());
                            q
                        })
                    })
                    .collect();
                lists.extend(frontier.iter().cloned());
            }
            lists.into_iter().take(10).map(CostVal::List).collect()
        }
        Ty::Pair(l, rt) => {
            let ls = pool(r, l)?;
            let rs = pool(r, rt)?;
            ls.iter()
                .take(3)
                .flat_map(|x| rs.iter().take(3).map(move |y| CostVal::pair(x.clone(), y.clone())))
                .collect()
        }
        Ty::Arrow(d, c) => {
            let mut fns = Vec::new();
            for v in pool(r, c)?.into_iter().take(2) {
                for k in [0, 1] {
                    let out = v.clone().with_cost(k);
                    fns.push(CostVal::fun(move |_| out.clone()));
                }
            }
            if d == c {
                fns.push(CostVal::fun(|v| v.with_cost(1)));
                fns.push(CostVal::fun(|v| v.with_cost(2)));
            }
            for (f, g) in r.embedded_domain(ty)?.iter().take(2) {
                fns.push(f.clone());
                fns.push(g.clone());
            }
            fns
        }
    })
}

/// Attach every cost in the grid range to both sides of a value pair.
pub fn with_grid_costs(b: &Bounds, x: &CostVal, y: &CostVal) -> Vec<(Costed, Costed)> {
    b.cost_range()
        .flat_map(|cx| b.cost_range().map(move |cy| (x.clone().with_cost(cx), y.clone().with_cost(cy))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_grid_sizes() {
        let mut b = Bounds::DEFAULT;
        b.max_type_depth = 0;
        assert_eq!(grid_types(&b).len(), 2);
        b.max_type_depth = 1;
        // two base types, two lists, four pairs, four arrows
        assert_eq!(grid_types(&b).len(), 12);
        assert!(grid_types(&Bounds::DEFAULT).iter().all(|t| t.depth() <= 2));
    }

    #[test]
    fn grid_pairs_are_capped() {
        let envs = grid_rel_envs(&Bounds::DEFAULT);
        let r = Relator::new(&envs[2]);
        for ty in grid_types(&Bounds::DEFAULT).iter().take(12) {
            let pairs = grid_pairs(&r, ty).unwrap();
            assert!(!pairs.is_empty());
            assert!(pairs.len() <= Bounds::DEFAULT.grid_pairs);
        }
    }
}
