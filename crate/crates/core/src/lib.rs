//! Exact MILP models for single-picker routing in rectangular warehouses.
//!
//! Three formulations are provided through [`formulation::FormulationKind`]:
//! a configuration-based baseline (GS), its reduced variant (CC), and an
//! edge-based model that also covers two-block layouts (EC). Each supports standard instances and scattered
//! storage. An independent Held-Karp oracle and a tour validator check the
//! models against each other.
//!
//! All geometry and cost types are generic over [`Scalar`]; the aliases at
//! the crate root fix the common choices.

pub mod formulation;
pub mod instance;
pub mod mip;
pub mod oracle;
pub mod scalar;
pub mod tour;
pub mod warehouse;

pub use scalar::Scalar;

/// Integer lengths: exact objective comparison.
pub type IntLayout = warehouse::Layout<i64>;
pub type FloatLayout = warehouse::Layout<f64>;
pub type RatLayout = warehouse::Layout<num_rational::Ratio<i64>>;

pub type IntInstance = instance::Instance<i64>;
pub type IntScatteredInstance = instance::ScatteredInstance<i64>;
pub type IntCostModel = warehouse::CostModel<i64>;
pub type IntGraph = warehouse::WarehouseGraph<i64>;
pub type IntModel = mip::MipModel<i64>;
pub type IntSolution = mip::MipSolution<i64>;
pub type FloatModel = mip::MipModel<f64>;
