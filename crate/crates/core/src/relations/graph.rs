//! Graph relations `R^g` over finitely many probe points, and the witness
//! procedures that invert their cost-lifted forms.
//!
//! Each witness search picks candidate indices by value, solves for the
//! shift `c` from the left-hand equation, and keeps the candidate only if the
//! right-hand equation then holds exactly. Indices are 0-based and the least
//! (lexicographically, for lists) solution is returned.

use serde::Serialize;

use super::Rel;
use crate::semantics::{add_cost, app_cost, capp, clist, cpair, Costed, Ground, GroundnessError};
use crate::stdlib::{map_list_value, map_pair_value};

#[derive(Debug, Clone)]
pub struct GraphRel {
    g: Costed,
    points: Vec<Costed>,
    images: Vec<Costed>,
    app_costs: Vec<i64>,
    rel: Rel,
}

/// Build `R^g` over `points`. Fails if a point or its image embeds a function.
pub fn graph_rel(g: Costed, points: Vec<Costed>) -> Result<GraphRel, GroundnessError> {
    let images: Vec<Costed> = points.iter().map(|x| capp(&g, x)).collect();
    let app_costs = points.iter().map(|x| app_cost(&g, x)).collect();
    let pairs = points
        .iter()
        .zip(&images)
        .map(|(x, gx)| Ok((x.val.to_ground()?, gx.val.to_ground()?)))
        .collect::<Result<Vec<(Ground, Ground)>, GroundnessError>>()?;
    Ok(GraphRel {
        g,
        points,
        images,
        app_costs,
        rel: Rel::from_ground(pairs),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaseWitness {
    pub index: usize,
    pub c: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListWitness {
    pub indices: Vec<usize>,
    pub c: i64,
    /// The selected points carry exactly the values of the queried list.
    pub value_clause: bool,
}

impl GraphRel {
    pub fn g(&self) -> &Costed {
        &self.g
    }

    pub fn points(&self) -> &[Costed] {
        &self.points
    }

    /// `g ⊛ xi` for every point, in order.
    pub fn images(&self) -> &[Costed] {
        &self.images
    }

    pub fn app_costs(&self) -> &[i64] {
        &self.app_costs
    }

    pub fn rel(&self) -> &Rel {
        &self.rel
    }

    fn matching(&self, x: &Costed, y: &Costed) -> impl Iterator<Item = usize> + '_ {
        let (xv, yv) = (x.val.clone(), y.val.clone());
        (0..self.points.len())
            .filter(move |&i| self.points[i].val == xv && self.images[i].val == yv)
    }

    /// Is `(x, y)` of the form `(c ↝ appCost(g, xi) ↝ xi, c ↝ g ⊛ xi)`?
    pub fn witness_base(&self, x: &Costed, y: &Costed) -> Option<BaseWitness> {
        self.matching(x, y)
            .map(|i| BaseWitness {
                index: i,
                c: x.cost - self.app_costs[i] - self.points[i].cost,
            })
            .find(|w| self.replay_base(w, x, y))
    }

    pub fn replay_base(&self, w: &BaseWitness, x: &Costed, y: &Costed) -> bool {
        let i = w.index;
        i < self.points.len()
            && *x == add_cost(w.c, add_cost(self.app_costs[i], self.points[i].clone()))
            && *y == add_cost(w.c, capp(&self.g, &self.points[i]))
    }

    /// The consequence `g ⊛ x = appCost(g, xi) ↝ y` of a base witness.
    pub fn base_consequence(&self, w: &BaseWitness, x: &Costed, y: &Costed) -> bool {
        capp(&self.g, x) == add_cost(self.app_costs[w.index], y.clone())
    }

    /// Witness for `(p, q)` in the pair lifting of `R^g` and `R^h`, phrased
    /// through `mapPair`.
    pub fn witness_pair(rg: &GraphRel, rh: &GraphRel, p: &Costed, q: &Costed) -> Option<PairWitness> {
        let (p1, p2) = split_pair(p)?;
        let (q1, q2) = split_pair(q)?;
        let mp = Self::map_pair_gh(rg, rh);
        for i in rg.matching(&p1, &q1) {
            for j in rh.matching(&p2, &q2) {
                let arg = Self::pair_point(rg, rh, i, j);
                let c = p.cost - app_cost(&mp, &arg) - arg.cost;
                let w = PairWitness { i, j, c };
                if Self::replay_pair(rg, rh, &w, p, q) {
                    return Some(w);
                }
            }
        }
        None
    }

    fn map_pair_gh(rg: &GraphRel, rh: &GraphRel) -> Costed {
        capp(&map_pair_value(), &cpair(rg.g.clone(), rh.g.clone()))
    }

    fn pair_point(rg: &GraphRel, rh: &GraphRel, i: usize, j: usize) -> Costed {
        cpair(rg.points[i].clone(), rh.points[j].clone())
    }

    pub fn replay_pair(rg: &GraphRel, rh: &GraphRel, w: &PairWitness, p: &Costed, q: &Costed) -> bool {
        if w.i >= rg.points.len() || w.j >= rh.points.len() {
            return false;
        }
        let mp = Self::map_pair_gh(rg, rh);
        let arg = Self::pair_point(rg, rh, w.i, w.j);
        *p == add_cost(w.c, add_cost(app_cost(&mp, &arg), arg.clone())) && *q == add_cost(w.c, capp(&mp, &arg))
    }

    /// `mapPair ⊛ (g, h) ⊛ p = appCost(mapPair ⊛ (g, h), xi ⊗ yj) ↝ q`.
    pub fn pair_consequence(rg: &GraphRel, rh: &GraphRel, w: &PairWitness, p: &Costed, q: &Costed) -> bool {
        let mp = Self::map_pair_gh(rg, rh);
        let arg = Self::pair_point(rg, rh, w.i, w.j);
        capp(&mp, p) == add_cost(app_cost(&mp, &arg), q.clone())
    }

    fn map_list_g(&self) -> Costed {
        capp(&map_list_value(), &self.g)
    }

    fn selection(&self, indices: &[usize]) -> Costed {
        clist(indices.iter().map(|&i| self.points[i].clone()))
    }

    /// Witness for `(xs, ys)` in the list lifting of `R^g`, phrased through
    /// `mapList`. Returns the lexicographically least index sequence.
    pub fn witness_list(&self, xs: &Costed, ys: &Costed) -> Option<ListWitness> {
        let (vs, ws) = match (&xs.val, &ys.val) {
            (crate::CostVal::List(vs), crate::CostVal::List(ws)) if vs.len() == ws.len() => (vs, ws),
            _ => return None,
        };
        let choices: Vec<Vec<usize>> = vs
            .iter()
            .zip(ws)
            .map(|(v, w)| {
                self.matching(&v.clone().with_cost(0), &w.clone().with_cost(0))
                    .collect()
            })
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            return None;
        }
        let ml = self.map_list_g();
        // Odometer over the candidate indices, last position fastest.
        let mut pos = vec![0usize; choices.len()];
        loop {
            let indices: Vec<usize> = pos.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
            let sel = self.selection(&indices);
            let c = xs.cost - app_cost(&ml, &sel) - sel.cost;
            let mut w = ListWitness {
                indices,
                c,
                value_clause: false,
            };
            if self.replay_list(&w, xs, ys) {
                w.value_clause = sel.val == xs.val;
                return Some(w);
            }
            let mut k = pos.len();
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                pos[k] += 1;
                if pos[k] < choices[k].len() {
                    break;
                }
                pos[k] = 0;
            }
        }
    }

    pub fn replay_list(&self, w: &ListWitness, xs: &Costed, ys: &Costed) -> bool {
        if w.indices.iter().any(|&i| i >= self.points.len()) {
            return false;
        }
        let ml = self.map_list_g();
        let sel = self.selection(&w.indices);
        *xs == add_cost(w.c, add_cost(app_cost(&ml, &sel), sel.clone())) && *ys == add_cost(w.c, capp(&ml, &sel))
    }

    /// `mapList ⊛ g ⊛ xs = appCost(mapList ⊛ g, ⟨x_i1, …⟩) ↝ ys`.
    pub fn list_consequence(&self, w: &ListWitness, xs: &Costed, ys: &Costed) -> bool {
        let ml = self.map_list_g();
        let sel = self.selection(&w.indices);
        capp(&ml, xs) == add_cost(app_cost(&ml, &sel), ys.clone())
    }
}

fn split_pair(p: &Costed) -> Option<(Costed, Costed)> {
    match &p.val {
        crate::CostVal::Pair(a, b) => Some(((**a).clone().with_cost(0), (**b).clone().with_cost(0))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{eval_cost, Env};
    use crate::syntax::parse_term;
    use crate::CostVal;

    fn nat(n: u64, c: i64) -> Costed {
        CostVal::Nat(n).with_cost(c)
    }

    fn doubling() -> Costed {
        eval_cost(&Env::new(), &parse_term(r"\n:Nat. n + n").unwrap())
    }

    #[test]
    fn doubling_graph() {
        let r = graph_rel(doubling(), vec![nat(1, 0), nat(2, 0)]).unwrap();
        assert_eq!(r.rel(), &Rel::nats([(1, 2), (2, 4)]));
        assert_eq!(r.app_costs(), &[1, 1]);
    }

    #[test]
    fn identity_graph() {
        let id = eval_cost(&Env::new(), &parse_term(r"\x:Nat. x").unwrap());
        let r = graph_rel(id, vec![nat(5, 0)]).unwrap();
        assert_eq!(r.rel(), &Rel::nats([(5, 5)]));
        assert_eq!(r.app_costs(), &[1]);
    }

    #[test]
    fn duplicate_points_keep_per_index_costs() {
        let r = graph_rel(doubling(), vec![nat(1, 0), nat(1, 3)]).unwrap();
        assert_eq!(r.rel().len(), 1);
        assert_eq!(r.app_costs(), &[1, 1]);
    }

    #[test]
    fn function_images_are_rejected() {
        let k = eval_cost(&Env::new(), &parse_term(r"\x:Nat. \y:Nat. x").unwrap());
        assert!(graph_rel(k, vec![nat(1, 0)]).is_err());
    }

    #[test]
    fn base_witness_examples() {
        let r = graph_rel(doubling(), vec![nat(1, 0)]).unwrap();
        let w = r.witness_base(&nat(1, 1), &nat(2, 1)).unwrap();
        assert_eq!(w, BaseWitness { index: 0, c: 0 });
        assert!(r.base_consequence(&w, &nat(1, 1), &nat(2, 1)));
        assert_eq!(r.witness_base(&nat(1, 1), &nat(2, 2)), None);
    }

    #[test]
    fn pair_witness_recovers_indices() {
        let r = graph_rel(doubling(), vec![nat(1, 0)]).unwrap();
        let mp = GraphRel::map_pair_gh(&r, &r);
        let arg = GraphRel::pair_point(&r, &r, 0, 0);
        let p = add_cost(app_cost(&mp, &arg), arg.clone());
        let q = capp(&mp, &arg);
        let w = GraphRel::witness_pair(&r, &r, &p, &q).unwrap();
        assert_eq!(w, PairWitness { i: 0, j: 0, c: 0 });
        assert!(GraphRel::pair_consequence(&r, &r, &w, &p, &q));
        let wrong = cpair(nat(1, 0), nat(1, 0));
        assert_eq!(GraphRel::witness_pair(&r, &r, &p, &wrong), None);
    }

    #[test]
    fn list_witness_inverts_construction() {
        let r = graph_rel(doubling(), vec![nat(10, 0), nat(20, 0)]).unwrap();
        let sel = r.selection(&[1, 0]);
        let ml = r.map_list_g();
        let xs = add_cost(app_cost(&ml, &sel), sel.clone());
        let ys = capp(&ml, &sel);
        let w = r.witness_list(&xs, &ys).unwrap();
        assert_eq!(w.indices, vec![1, 0]);
        assert_eq!(w.c, 0);
        assert!(w.value_clause);
        assert!(r.list_consequence(&w, &xs, &ys));
    }

    #[test]
    fn empty_lists_force_the_shift() {
        let r = graph_rel(doubling(), vec![nat(10, 0)]).unwrap();
        let empty = CostVal::List(vec![]);
        let ml = r.map_list_g();
        let base = app_cost(&ml, &clist([]));
        let w = r
            .witness_list(&empty.clone().with_cost(5), &empty.clone().with_cost(5))
            .unwrap();
        assert_eq!(w.indices, Vec::<usize>::new());
        assert_eq!(w.c, 5 - base);
        assert_eq!(r.witness_list(&empty.clone().with_cost(5), &empty.with_cost(4)), None);
    }
}
