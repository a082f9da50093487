//! Logical relations over the two semantics, graph relations, and the
//! parametricity checker.
//!
//! Relatedness at arrow types quantifies over argument pairs. Those are drawn
//! from finite, deterministic samples of each relation (see [`Relator`]),
//! sized by a single [`Bounds`] record.

mod graph;
mod grid;
mod logical;
mod param;
mod rel;

pub use graph::{graph_rel, BaseWitness, GraphRel, ListWitness, PairWitness};
pub use grid::{grid_pairs, grid_rel_envs, grid_types, with_grid_costs};
pub use logical::{member_embedded, member_lifted, member_std, Relator};
pub use param::{
    param_check, param_check_std, param_check_with, param_test, ParamError, ParamFailure,
    ParamTestConfig, ParamTestReport,
};
pub use rel::{Rel, RelEnv, RelError};

/// Enumeration bounds shared by the relation samplers and the brute-force
/// grids used to cross-check them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Naturals `0..=nat_max` stand in for `Nat` when quantifying.
    pub nat_max: u64,
    /// Longest list built when quantifying over list types.
    pub domain_list_len: usize,
    /// Costs attached to sampled arguments of the fully lifted relation.
    pub domain_costs: [i64; 2],
    /// Cap on the sample size for any single type.
    pub max_domain: usize,
    /// Cap on related function pairs kept per arrow type.
    pub max_function_pairs: usize,
    /// How many lookup tables to try when building candidate functions.
    pub table_tries: usize,
    /// Per-component cost range searched when splitting a list or pair cost.
    pub cost_min: i64,
    pub cost_max: i64,
    /// Brute-force grids: deepest type, largest relation, longest list.
    pub max_type_depth: usize,
    pub max_rel_size: usize,
    pub grid_list_len: usize,
    /// Cap on value pairs per type in the brute-force grids.
    pub grid_pairs: usize,
}

impl Bounds {
    pub const DEFAULT: Bounds = Bounds {
        nat_max: 2,
        domain_list_len: 2,
        domain_costs: [0, 1],
        max_domain: 16,
        max_function_pairs: 8,
        table_tries: 48,
        cost_min: -2,
        cost_max: 2,
        max_type_depth: 2,
        max_rel_size: 3,
        grid_list_len: 3,
        grid_pairs: 36,
    };

    pub fn cost_range(&self) -> std::ops::RangeInclusive<i64> {
        self.cost_min..=self.cost_max
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self::DEFAULT
    }
}
