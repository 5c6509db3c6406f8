//! Tour subgraphs: extraction from solved models, validation of the
//! connectivity, parity, coverage and depot conditions, and Euler tours.

mod extract;
mod subgraph;
mod svg;
mod validate;

pub use extract::{extract_subgraph, selected_positions, single_aisle_subgraph};
pub use subgraph::{TourError, TourSubgraph};
pub use svg::to_svg;
pub use validate::{euler_tour, validate, walk_length, ValidationReport};
