use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// A standard-semantics function value.
pub type StdFn = Arc<dyn Fn(Value) -> Value + Send + Sync>;

/// A cost-semantics function value: cost-free argument in, costed result out.
pub type CostFn = Arc<dyn Fn(CostVal) -> Costed + Send + Sync>;

/// Values of the standard semantics.
#[derive(Clone)]
pub enum Value {
    Nat(u64),
    List(Vec<Value>),
    Pair(Box<Value>, Box<Value>),
    Fun(StdFn),
}

/// Values of the cost semantics. Costs live only at the top of a [`Costed`]
/// and in function results.
#[derive(Clone)]
pub enum CostVal {
    Nat(u64),
    List(Vec<CostVal>),
    Pair(Box<CostVal>, Box<CostVal>),
    Fun(CostFn),
}

/// A cost-semantics value together with its (possibly negative) cost.
#[derive(Clone, PartialEq)]
pub struct Costed {
    pub val: CostVal,
    pub cost: i64,
}

/// Function-free values, shared by both semantics. This is the carrier of
/// relations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ground {
    Nat(u64),
    List(Vec<Ground>),
    Pair(Box<Ground>, Box<Ground>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("value is not ground: it embeds a function")]
pub struct GroundnessError;

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    pub fn fun(f: impl Fn(Value) -> Value + Send + Sync + 'static) -> Value {
        Value::Fun(Arc::new(f))
    }

    pub fn nat_list(ns: impl IntoIterator<Item = u64>) -> Value {
        Value::List(ns.into_iter().map(Value::Nat).collect())
    }

    pub fn to_ground(&self) -> Result<Ground, GroundnessError> {
        Ok(match self {
            Value::Nat(n) => Ground::Nat(*n),
            Value::List(vs) => Ground::List(vs.iter().map(Value::to_ground).collect::<Result<_, _>>()?),
            Value::Pair(a, b) => Ground::pair(a.to_ground()?, b.to_ground()?),
            Value::Fun(_) => return Err(GroundnessError),
        })
    }

    /// Apply a function value. Panics on a non-function, which only happens
    /// for ill-typed programs.
    pub fn apply(&self, arg: Value) -> Value {
        match self {
            Value::Fun(f) => f(arg),
            other => panic!("shape fault: applying non-function {other:?}"),
        }
    }
}

impl CostVal {
    pub fn pair(a: CostVal, b: CostVal) -> CostVal {
        CostVal::Pair(Box::new(a), Box::new(b))
    }

    pub fn fun(f: impl Fn(CostVal) -> Costed + Send + Sync + 'static) -> CostVal {
        CostVal::Fun(Arc::new(f))
    }

    pub fn nat_list(ns: impl IntoIterator<Item = u64>) -> CostVal {
        CostVal::List(ns.into_iter().map(CostVal::Nat).collect())
    }

    pub fn with_cost(self, cost: i64) -> Costed {
        Costed { val: self, cost }
    }

    pub fn to_ground(&self) -> Result<Ground, GroundnessError> {
        Ok(match self {
            CostVal::Nat(n) => Ground::Nat(*n),
            CostVal::List(vs) => Ground::List(vs.iter().map(CostVal::to_ground).collect::<Result<_, _>>()?),
            CostVal::Pair(a, b) => Ground::pair(a.to_ground()?, b.to_ground()?),
            CostVal::Fun(_) => return Err(GroundnessError),
        })
    }

    pub fn is_ground(&self) -> bool {
        match self {
            CostVal::Nat(_) => true,
            CostVal::List(vs) => vs.iter().all(CostVal::is_ground),
            CostVal::Pair(a, b) => a.is_ground() && b.is_ground(),
            CostVal::Fun(_) => false,
        }
    }

    /// Apply the embedded function to a cost-free argument. Panics on a
    /// non-function.
    pub fn call(&self, arg: CostVal) -> Costed {
        match self {
            CostVal::Fun(f) => f(arg),
            other => panic!("shape fault: applying non-function {other:?}"),
        }
    }
}

impl Costed {
    pub fn new(val: CostVal, cost: i64) -> Self {
        Costed { val, cost }
    }

    pub fn free(val: CostVal) -> Self {
        Costed { val, cost: 0 }
    }

    pub fn get_val(&self) -> &CostVal {
        &self.val
    }

    pub fn get_cost(&self) -> i64 {
        self.cost
    }
}

impl Ground {
    pub fn pair(a: Ground, b: Ground) -> Ground {
        Ground::Pair(Box::new(a), Box::new(b))
    }

    pub fn nat_list(ns: impl IntoIterator<Item = u64>) -> Ground {
        Ground::List(ns.into_iter().map(Ground::Nat).collect())
    }

    pub fn to_value(&self) -> Value {
        match self {
            Ground::Nat(n) => Value::Nat(*n),
            Ground::List(vs) => Value::List(vs.iter().map(Ground::to_value).collect()),
            Ground::Pair(a, b) => Value::pair(a.to_value(), b.to_value()),
        }
    }

    pub fn to_cost_val(&self) -> CostVal {
        match self {
            Ground::Nat(n) => CostVal::Nat(*n),
            Ground::List(vs) => CostVal::List(vs.iter().map(Ground::to_cost_val).collect()),
            Ground::Pair(a, b) => CostVal::pair(a.to_cost_val(), b.to_cost_val()),
        }
    }
}

/// Forget the cost-semantics structure of a ground value.
pub fn strip(v: &CostVal) -> Result<Value, GroundnessError> {
    Ok(match v {
        CostVal::Nat(n) => Value::Nat(*n),
        CostVal::List(vs) => Value::List(vs.iter().map(strip).collect::<Result<_, _>>()?),
        CostVal::Pair(a, b) => Value::pair(strip(a)?, strip(b)?),
        CostVal::Fun(_) => return Err(GroundnessError),
    })
}

// Functions are opaque: they never compare equal, not even to themselves.
impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Nat(a), Value::Nat(b)) => a == b,
            (Value::List(a), Value::List(b)) => a == b,
            (Value::Pair(a1, a2), Value::Pair(b1, b2)) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

impl PartialEq for CostVal {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (CostVal::Nat(a), CostVal::Nat(b)) => a == b,
            (CostVal::List(a), CostVal::List(b)) => a == b,
            (CostVal::Pair(a1, a2), CostVal::Pair(b1, b2)) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

fn write_seq<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::List(vs) => write_seq(f, vs),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::Fun(_) => f.write_str("<fun>"),
        }
    }
}

impl fmt::Display for CostVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostVal::Nat(n) => write!(f, "{n}"),
            CostVal::List(vs) => write_seq(f, vs),
            CostVal::Pair(a, b) => write!(f, "({a}, {b})"),
            CostVal::Fun(_) => f.write_str("<fun>"),
        }
    }
}

impl fmt::Display for Costed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.val, self.cost)
    }
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_value())
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for CostVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for Costed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// JSON encoding: naturals as numbers, lists as arrays, pairs as
// {"fst":..,"snd":..}, functions as {"fun":"<opaque>"}.

struct PairJson<'a, T>(&'a T, &'a T);

impl<T: Serialize> Serialize for PairJson<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("fst", self.0)?;
        m.serialize_entry("snd", self.1)?;
        m.end()
    }
}

fn serialize_fun<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(1))?;
    m.serialize_entry("fun", "<opaque>")?;
    m.end()
}

fn serialize_list<S: Serializer, T: Serialize>(s: S, items: &[T]) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(items.len()))?;
    for x in items {
        seq.serialize_element(x)?;
    }
    seq.end()
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Nat(n) => s.serialize_u64(*n),
            Value::List(vs) => serialize_list(s, vs),
            Value::Pair(a, b) => PairJson(&**a, &**b).serialize(s),
            Value::Fun(_) => serialize_fun(s),
        }
    }
}

impl Serialize for CostVal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CostVal::Nat(n) => s.serialize_u64(*n),
            CostVal::List(vs) => serialize_list(s, vs),
            CostVal::Pair(a, b) => PairJson(&**a, &**b).serialize(s),
            CostVal::Fun(_) => serialize_fun(s),
        }
    }
}

impl Serialize for Ground {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ground::Nat(n) => s.serialize_u64(*n),
            Ground::List(vs) => serialize_list(s, vs),
            Ground::Pair(a, b) => PairJson(&**a, &**b).serialize(s),
        }
    }
}

impl Serialize for Costed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("value", &self.val)?;
        m.serialize_entry("cost", &self.cost)?;
        m.end()
    }
}
