//! Solver-agnostic MILP container, backends and exact verification.

mod backend;
mod enumerate;
#[cfg(feature = "highs")]
mod highs_backend;
mod lp_format;
mod model;
mod simplex;
mod solution;

pub use backend::{solve, BackendHandle, Limits, SolveError};
pub use enumerate::{enumerate_solve, MAX_FREE_INTEGERS};
pub use lp_format::to_lp;
pub use model::{Constraint, LinExpr, MipModel, ModelError, ModelMeta, Sense, VarId, VarKind, Variable};
pub use simplex::{find_feasible_point, LpRow};
pub use solution::{MipSolution, Status, INTEGRALITY_TOL};
