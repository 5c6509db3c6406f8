//! Instance types, the random generator and the JSON file format.

mod generator;
mod io;
mod types;

pub use generator::{
    distinct_sku_count, generate_sprp, generate_sprp_ss, instance_seed, ClassProfile,
    GeneratorConfig, Grid, TurnoverClass,
};
pub use io::{from_json, read_instance, to_json, write_instance, Kind, FORMAT_VERSION};
pub use types::{
    AnyInstance, Instance, InstanceError, Provenance, ScatteredInstance, Sku, SupplyEntry,
};
