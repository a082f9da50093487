use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::semantics::{CostVal, Ground, GroundnessError, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("type variable `{0}` has no relation in the environment")]
    UnboundTypeVar(String),
}

/// A finite relation between ground values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Rel {
    pairs: BTreeSet<(Ground, Ground)>,
}

impl Rel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ground(pairs: impl IntoIterator<Item = (Ground, Ground)>) -> Self {
        Rel {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// Build from cost-semantics values; fails if any component embeds a function.
    pub fn from_values<'a>(
        pairs: impl IntoIterator<Item = (&'a CostVal, &'a CostVal)>,
    ) -> Result<Self, GroundnessError> {
        let pairs = pairs
            .into_iter()
            .map(|(x, y)| Ok((x.to_ground()?, y.to_ground()?)))
            .collect::<Result<_, GroundnessError>>()?;
        Ok(Rel { pairs })
    }

    /// Relation over naturals, handy in tests.
    pub fn nats(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        Rel::from_ground(pairs.into_iter().map(|(a, b)| (Ground::Nat(a), Ground::Nat(b))))
    }

    pub fn insert(&mut self, x: Ground, y: Ground) {
        self.pairs.insert((x, y));
    }

    pub fn contains(&self, x: &Ground, y: &Ground) -> bool {
        // BTreeSet<(A, B)> can't be probed with borrowed halves; clone is cheap at this scale.
        self.pairs.contains(&(x.clone(), y.clone()))
    }

    /// Membership for cost-semantics values; non-ground values are never related.
    pub fn relates(&self, x: &CostVal, y: &CostVal) -> bool {
        match (x.to_ground(), y.to_ground()) {
            (Ok(a), Ok(b)) => self.contains(&a, &b),
            _ => false,
        }
    }

    pub fn relates_std(&self, x: &Value, y: &Value) -> bool {
        match (x.to_ground(), y.to_ground()) {
            (Ok(a), Ok(b)) => self.contains(&a, &b),
            _ => false,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Ground, Ground)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Every value occurring on either side, deduplicated.
    pub fn carrier(&self) -> Vec<Ground> {
        let set: BTreeSet<Ground> = self
            .pairs
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        set.into_iter().collect()
    }
}

impl Serialize for Rel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[&Ground; 2]> = self.pairs.iter().map(|(a, b)| [a, b]).collect();
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("pairs", &pairs)?;
        m.end()
    }
}

/// Interpretation of type variables as relations.
pub type RelEnv = BTreeMap<String, Rel>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_is_structural() {
        let r = Rel::nats([(1, 2), (2, 4)]);
        assert!(r.relates(&CostVal::Nat(1), &CostVal::Nat(2)));
        assert!(!r.relates(&CostVal::Nat(1), &CostVal::Nat(4)));
        assert!(!r.relates(&CostVal::fun(crate::Costed::free), &CostVal::Nat(2)));
    }

    #[test]
    fn rejects_functions_at_construction() {
        let f = CostVal::fun(crate::Costed::free);
        let n = CostVal::Nat(0);
        assert!(Rel::from_values([(&f, &n)]).is_err());
        assert!(Rel::from_values([(&n, &n)]).is_ok());
    }

    #[test]
    fn json_shape() {
        let r = Rel::nats([(1, 2)]);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"pairs":[[1,2]]}"#);
    }
}
