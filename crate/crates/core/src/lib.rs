//! A workbench for call-by-value cost semantics and quantitative free
//! theorems over a small polymorphic lambda calculus.
//!
//! The pieces, bottom up:
//!
//! * [`syntax`]: types, terms, parser and printer.
//! * [`typecheck`]: the typing judgment.
//! * [`semantics`]: standard and cost-instrumented evaluators, the cost
//!   algebra, and a beta-counting oracle.
//! * [`relations`]: the standard, embedded-cost and fully cost-lifted
//!   logical relations, graph relations and their witness procedures, and the
//!   parametricity checker.
//! * [`theorems`]: free-theorem instances with exact cost deltas, and the
//!   short-cut fusion analysis.

pub mod corpus;
pub mod relations;
pub mod semantics;
pub mod stdlib;
pub mod syntax;
pub mod theorems;
pub mod typecheck;

pub use semantics::{CostModel, CostVal, Costed, Ground, Value};
pub use syntax::{parse_term, parse_type, Term, Ty};
pub use typecheck::{typecheck, Ctx, TypeError};
