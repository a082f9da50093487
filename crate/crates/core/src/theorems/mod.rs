//! Quantitative free theorems, checked on concrete instances.
//!
//! For each supported type of `f`, both sides of the free theorem are built
//! from `f`, a function `g` and argument terms, evaluated under the cost
//! semantics, and compared. The cost difference is predicted from `appCost`
//! measurements and then compared against the measured difference.

mod fusion;
mod instances;
mod shapes;

pub use fusion::{
    fusion_counterexample, fusion_empty_producer, fusion_good, shortcut_check, FusionCase, FusionReport,
};
pub use instances::{shape_instances, ShapeInstance};
pub use shapes::{
    check_free_theorem, negative_control, sqsubseteq, Prediction, Shape, TheoremError, TheoremReport,
    Verdict, Witness,
};
