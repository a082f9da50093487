//! Standard and cost-instrumented denotational semantics.

mod cost;
mod env;
mod eval;
mod oracle;
mod value;

pub use cost::{add_cost, app_cost, capp, ccons, clist, cpair, CostModel};
pub use env::Env;
pub use eval::{eval_cost, eval_cost_with, eval_std};
pub use oracle::{beta_count_closed, beta_count_oracle};
pub use value::{strip, CostFn, CostVal, Costed, Ground, GroundnessError, StdFn, Value};
