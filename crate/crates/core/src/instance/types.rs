use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::warehouse::{Layout, LayoutError};

use super::generator::GeneratorConfig;

pub type Sku = u32;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("position ({aisle}, {cell}) is outside the layout")]
    OutOfRange { aisle: usize, cell: usize },
    #[error("required map has {got} aisles, layout has {expected}")]
    AisleCount { expected: usize, got: usize },
    #[error("sku {sku} has demand {demand} but total supply {supply}")]
    Undersupplied { sku: Sku, demand: u64, supply: u64 },
    #[error("sku {sku} has zero demand")]
    ZeroDemand { sku: Sku },
    #[error("duplicate supply entry for sku {sku} at ({aisle}, {cell})")]
    DuplicateSupply { aisle: usize, cell: usize, sku: Sku },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("infeasible generator config: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config: GeneratorConfig,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_skus: Option<usize>,
}

/// A standard picker routing instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T = i64> {
    pub id: String,
    pub layout: Layout<T>,
    /// Sorted required cells per aisle (aisle-global cell indices).
    pub required: Vec<Vec<usize>>,
    pub provenance: Option<Provenance>,
}

impl<T: Scalar> Instance<T> {
    pub fn new(
        id: impl Into<String>,
        layout: Layout<T>,
        picks: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, InstanceError> {
        layout.validate()?;
        let mut sets = vec![BTreeSet::new(); layout.num_aisles];
        for (aisle, cell) in picks {
            if aisle >= layout.num_aisles || cell >= layout.cells_per_aisle() {
                return Err(InstanceError::OutOfRange { aisle, cell });
            }
            sets[aisle].insert(cell);
        }
        Ok(Instance {
            id: id.into(),
            layout,
            required: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            provenance: None,
        })
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        self.layout.validate()?;
        if self.required.len() != self.layout.num_aisles {
            return Err(InstanceError::AisleCount {
                expected: self.layout.num_aisles,
                got: self.required.len(),
            });
        }
        for (aisle, cells) in self.required.iter().enumerate() {
            for &cell in cells {
                if cell >= self.layout.cells_per_aisle() {
                    return Err(InstanceError::OutOfRange { aisle, cell });
                }
            }
        }
        Ok(())
    }

    pub fn num_picks(&self) -> usize {
        self.required.iter().map(Vec::len).sum()
    }

    pub fn picks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.required
            .iter()
            .enumerate()
            .flat_map(|(a, cells)| cells.iter().map(move |&c| (a, c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupplyEntry {
    pub aisle: usize,
    pub cell: usize,
    pub sku: Sku,
    pub qty: u32,
}

/// A picker routing instance with scattered storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteredInstance<T = i64> {
    pub id: String,
    pub layout: Layout<T>,
    pub skus: Vec<Sku>,
    pub demand: BTreeMap<Sku, u32>,
    pub supply: Vec<SupplyEntry>,
    pub provenance: Option<Provenance>,
}

impl<T: Scalar> ScatteredInstance<T> {
    /// Builds an instance with unit demand for every SKU that has supply.
    pub fn unit_demand(
        id: impl Into<String>,
        layout: Layout<T>,
        supply: impl IntoIterator<Item = SupplyEntry>,
    ) -> Result<Self, InstanceError> {
        let supply: Vec<SupplyEntry> = supply.into_iter().collect();
        let demand: BTreeMap<Sku, u32> = supply.iter().map(|e| (e.sku, 1)).collect();
        let inst = ScatteredInstance {
            id: id.into(),
            layout,
            skus: demand.keys().copied().collect(),
            demand,
            supply,
            provenance: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        self.layout.validate()?;
        let mut seen = BTreeSet::new();
        for e in &self.supply {
            if e.aisle >= self.layout.num_aisles || e.cell >= self.layout.cells_per_aisle() {
                return Err(InstanceError::OutOfRange {
                    aisle: e.aisle,
                    cell: e.cell,
                });
            }
            if !seen.insert((e.aisle, e.cell, e.sku)) {
                return Err(InstanceError::DuplicateSupply {
                    aisle: e.aisle,
                    cell: e.cell,
                    sku: e.sku,
                });
            }
        }
        for (&sku, &demand) in &self.demand {
            if demand == 0 {
                return Err(InstanceError::ZeroDemand { sku });
            }
            let supply = self.total_supply(sku);
            if supply < u64::from(demand) {
                return Err(InstanceError::Undersupplied {
                    sku,
                    demand: demand.into(),
                    supply,
                });
            }
        }
        Ok(())
    }

    pub fn total_supply(&self, sku: Sku) -> u64 {
        self.supply
            .iter()
            .filter(|e| e.sku == sku)
            .map(|e| u64::from(e.qty))
            .sum()
    }

    fn is_requested(&self, sku: Sku) -> bool {
        self.demand.contains_key(&sku)
    }

    /// Candidate positions per aisle: cells holding positive supply of a
    /// requested SKU.
    pub fn candidate_positions(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![BTreeSet::new(); self.layout.num_aisles];
        for e in &self.supply {
            if e.qty > 0 && self.is_requested(e.sku) {
                sets[e.aisle].insert(e.cell);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Positions holding `sku` with their quantities.
    pub fn candidates_for(&self, sku: Sku) -> Vec<(usize, usize, u32)> {
        let mut v: Vec<_> = self
            .supply
            .iter()
            .filter(|e| e.sku == sku && e.qty > 0)
            .map(|e| (e.aisle, e.cell, e.qty))
            .collect();
        v.sort_unstable();
        v
    }

    /// The standard instance obtained by requiring exactly `positions`.
    pub fn induced(&self, positions: impl IntoIterator<Item = (usize, usize)>) -> Instance<T> {
        Instance::new(format!("{}-induced", self.id), self.layout.clone(), positions)
            .expect("positions come from a validated instance")
    }

    /// When every requested SKU has exactly one candidate position, the
    /// equivalent standard instance.
    pub fn as_unique_sprp(&self) -> Option<Instance<T>> {
        let mut picks = Vec::new();
        for &sku in self.demand.keys() {
            match self.candidates_for(sku).as_slice() {
                [(a, c, _)] => picks.push((*a, *c)),
                _ => return None,
            }
        }
        Some(self.induced(picks))
    }

    pub fn num_candidates(&self) -> usize {
        self.candidate_positions().iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyInstance<T = i64> {
    Sprp(Instance<T>),
    Scattered(ScatteredInstance<T>),
}

impl<T: Scalar> AnyInstance<T> {
    pub fn layout(&self) -> &Layout<T> {
        match self {
            AnyInstance::Sprp(i) => &i.layout,
            AnyInstance::Scattered(i) => &i.layout,
        }
    }

    pub fn id(&self) -> &str {
        match self {
            AnyInstance::Sprp(i) => &i.id,
            AnyInstance::Scattered(i) => &i.id,
        }
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        match self {
            AnyInstance::Sprp(i) => i.provenance.as_ref(),
            AnyInstance::Scattered(i) => i.provenance.as_ref(),
        }
    }
}

impl<T> From<Instance<T>> for AnyInstance<T> {
    fn from(i: Instance<T>) -> Self {
        AnyInstance::Sprp(i)
    }
}

impl<T> From<ScatteredInstance<T>> for AnyInstance<T> {
    fn from(i: ScatteredInstance<T>) -> Self {
        AnyInstance::Scattered(i)
    }
}
