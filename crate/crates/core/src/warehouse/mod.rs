//! Warehouse geometry, its graph and the derived cost coefficients.

mod costs;
mod graph;
mod layout;

pub use costs::{cost_model, CostError, CostModel, PositionCost};
pub use graph::{build_graph, Edge, EdgeKind, Vertex, WarehouseGraph};
pub use layout::{Layout, LayoutError};
