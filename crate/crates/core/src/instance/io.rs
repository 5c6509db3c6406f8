use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::warehouse::Layout;

use super::types::{AnyInstance, Instance, InstanceError, Provenance, ScatteredInstance, Sku, SupplyEntry};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "sprp")]
    Sprp,
    #[serde(rename = "sprp-ss")]
    SprpSs,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile<T> {
    version: u32,
    #[serde(default)]
    id: String,
    layout: Layout<T>,
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    required: Option<BTreeMap<usize, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    skus: Option<Vec<Sku>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    demand: Option<BTreeMap<Sku, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    supply: Option<Vec<SupplyEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

pub fn to_json<T: Scalar + Serialize>(instance: &AnyInstance<T>) -> String {
    let file = match instance {
        AnyInstance::Sprp(i) => InstanceFile {
            version: FORMAT_VERSION,
            id: i.id.clone(),
            layout: i.layout.clone(),
            kind: Kind::Sprp,
            required: Some(
                i.required
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_empty())
                    .map(|(a, c)| (a, c.clone()))
                    .collect(),
            ),
            skus: None,
            demand: None,
            supply: None,
            provenance: i.provenance.clone(),
        },
        AnyInstance::Scattered(i) => {
            let mut supply = i.supply.clone();
            supply.sort_unstable_by_key(|e| (e.aisle, e.cell, e.sku));
            InstanceFile {
                version: FORMAT_VERSION,
                id: i.id.clone(),
                layout: i.layout.clone(),
                kind: Kind::SprpSs,
                required: None,
                skus: Some(i.skus.clone()),
                demand: Some(i.demand.clone()),
                supply: Some(supply),
                provenance: i.provenance.clone(),
            }
        }
    };
    let mut s = serde_json::to_string_pretty(&file).expect("instance serializes");
    s.push('\n');
    s
}

pub fn from_json<T: Scalar + DeserializeOwned>(text: &str) -> Result<AnyInstance<T>, InstanceError> {
    let file: InstanceFile<T> = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(InstanceError::Version(file.version));
    }
    match file.kind {
        Kind::Sprp => {
            let required = file.required.ok_or(InstanceError::MissingField("required"))?;
            let picks = required
                .into_iter()
                .flat_map(|(a, cells)| cells.into_iter().map(move |c| (a, c)));
            let mut inst = Instance::new(file.id, file.layout, picks)?;
            inst.provenance = file.provenance;
            Ok(AnyInstance::Sprp(inst))
        }
        Kind::SprpSs => {
            let demand = file.demand.ok_or(InstanceError::MissingField("demand"))?;
            let supply = file.supply.ok_or(InstanceError::MissingField("supply"))?;
            let skus = file.skus.unwrap_or_else(|| demand.keys().copied().collect());
            let inst = ScatteredInstance {
                id: file.id,
                layout: file.layout,
                skus,
                demand,
                supply,
                provenance: file.provenance,
            };
            inst.validate()?;
            Ok(AnyInstance::Scattered(inst))
        }
    }
}

pub fn write_instance<T: Scalar + Serialize>(
    instance: &AnyInstance<T>,
    path: impl AsRef<Path>,
) -> Result<(), InstanceError> {
    std::fs::write(path, to_json(instance))?;
    Ok(())
}

pub fn read_instance<T: Scalar + DeserializeOwned>(
    path: impl AsRef<Path>,
) -> Result<AnyInstance<T>, InstanceError> {
    from_json(&std::fs::read_to_string(path)?)
}
