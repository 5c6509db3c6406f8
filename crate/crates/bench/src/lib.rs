//! Batch runs over generated instance grids, runtime summaries and their
//! CSV files.

pub mod config;
pub mod run;
pub mod summary;

use std::path::PathBuf;

use thiserror::Error;

use pickroute::formulation::FormulationKind;
use pickroute::instance::InstanceError;

pub use config::{preset, BenchConfig, Problem, PRESETS};
pub use run::{generate, options, read_runs, run_grid, run_instance, solve_instance, write_runs, RunRecord};
pub use summary::{summarize, write_summaries, GroupKey, Stats, SummaryRow, SummaryTable};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("objectives differ on {instance}: {detail}{}", saved_note(.saved))]
    Mismatch {
        instance: String,
        detail: String,
        saved: Option<PathBuf>,
    },
    #[error("{formulation} returned a bad tour on {instance}: {detail}{}", saved_note(.saved))]
    Tour {
        instance: String,
        formulation: FormulationKind,
        detail: String,
        saved: Option<PathBuf>,
    },
    #[error("grouping: {0}")]
    Grouping(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn saved_note(p: &Option<PathBuf>) -> String {
    p.as_ref().map_or(String::new(), |p| format!(" (instance saved to {})", p.display()))
}
