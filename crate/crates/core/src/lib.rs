//! Parameterized problems, exact oracles, certificate schemes and
//! (nondeterministic) polynomial parameter transformations between them,
//! together with a harness that checks every transformation against the
//! oracles on exhaustive families of small instances.

pub mod bits;
pub mod certificates;
pub mod error;
pub mod families;
pub mod groups;
pub mod instances;
pub mod numeric;
pub mod oracles;
pub mod pathwidth;
pub mod reduction;
pub mod sat;

pub use bits::{FieldLayout, Witness};
pub use error::{Error, Result};
pub use instances::{Answer, ProblemInstance, ProblemKind};
pub use oracles::{solve, Budget, Solution, Verdict};
