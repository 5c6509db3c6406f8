use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use pickroute::formulation::FormulationKind;
use pickroute::instance::Grid;
use pickroute::mip::BackendHandle;

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Sprp,
    SprpSs,
}

/// A batch run: which instances, which formulations, how to solve them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub problem: Problem,
    pub grid: Grid,
    #[serde(default = "all_formulations", with = "labels")]
    pub formulations: Vec<FormulationKind>,
    #[serde(default = "default_backend", with = "backend_id")]
    pub backend: BackendHandle,
    #[serde(default)]
    pub seed: u64,
    /// Per-solve limit in seconds.
    #[serde(default)]
    pub time_limit: Option<f64>,
    /// Parallel workers; 0 lets the thread pool decide.
    #[serde(default)]
    pub workers: usize,
    /// Drop the two optional edge-based constraint families.
    #[serde(default)]
    pub without_optional: bool,
}

fn all_formulations() -> Vec<FormulationKind> {
    FormulationKind::ALL.to_vec()
}

fn default_backend() -> BackendHandle {
    BackendHandle::Highs
}

mod labels {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[FormulationKind], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|k| k.label()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<FormulationKind>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| FormulationKind::from_str(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod backend_id {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BackendHandle, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(v.id())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BackendHandle, D::Error> {
        BackendHandle::from_str(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl BenchConfig {
    pub fn new(problem: Problem, grid: Grid) -> Self {
        BenchConfig {
            problem,
            grid,
            formulations: all_formulations(),
            backend: default_backend(),
            seed: 0,
            time_limit: None,
            workers: 0,
            without_optional: false,
        }
    }

    /// Named grid or a path to a JSON config file.
    pub fn load(name: &str) -> Result<Self, BenchError> {
        if let Some(c) = preset(name) {
            return Ok(c);
        }
        let text = std::fs::read_to_string(Path::new(name))
            .map_err(|e| BenchError::Config(format!("`{name}` is neither a preset nor a readable file: {e}")))?;
        serde_json::from_str(&text).map_err(|e| BenchError::Config(format!("{name}: {e}")))
    }
}

pub const PRESETS: [&str; 5] = ["sprp", "sprp-ss", "desk", "desk-ss", "desk-2b"];

/// Built-in grids: the full standard and scattered-storage grids and small
/// desk grids that finish in seconds.
pub fn preset(name: &str) -> Option<BenchConfig> {
    let desk = Grid {
        alphas: vec![1],
        aisles: (2..=6).collect(),
        articles: (3..=8).collect(),
        replicates: 20,
        positions_per_aisle: 10,
        num_crosses: 2,
    };
    Some(match name {
        "sprp" => BenchConfig::new(Problem::Sprp, Grid::sprp_default()),
        "sprp-ss" => BenchConfig::new(Problem::SprpSs, Grid::ss_default()),
        "desk" => BenchConfig::new(Problem::Sprp, desk),
        "desk-ss" => BenchConfig::new(
            Problem::SprpSs,
            Grid {
                alphas: vec![1, 2, 3],
                aisles: (2..=4).collect(),
                articles: (2..=5).collect(),
                replicates: 5,
                ..desk
            },
        ),
        "desk-2b" => BenchConfig {
            formulations: vec![FormulationKind::Ec],
            ..BenchConfig::new(
                Problem::Sprp,
                Grid {
                    aisles: (2..=5).collect(),
                    num_crosses: 3,
                    ..desk
                },
            )
        },
        _ => return None,
    })
}
