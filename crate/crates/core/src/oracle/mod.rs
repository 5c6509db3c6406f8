//! Formulation-independent exact solvers used as ground truth.
//!
//! A closed walk may repeat vertices and edges, so the shortest walk through
//! a vertex set is the optimal travelling salesman tour on the metric
//! closure of that set. Held-Karp solves that tour exactly for small sets.

mod held_karp;
mod metric;
mod scattered;

pub use held_karp::{
    brute_force, held_karp, single_aisle_optimum, solve_sprp_oracle, solve_sprp_oracle_on,
    tour_vertices, OracleTour, HELD_KARP_LIMIT,
};
pub use metric::{apsp, MetricClosure, OracleError};
pub use scattered::{minimal_covers, solve_sprp_ss_oracle, ScatteredTour, CHOICE_BUDGET};
