//! MILP builders and the solve pipeline.
//!
//! Every builder restricts the model to the aisles between the outermost
//! positions and the depot, and names variables with global aisle indices
//! (`cc.x00[3]`, `ec.p[2,17]`), which is what tour extraction reads.

mod cc;
mod common;
mod config;
mod ec;
mod gs;
mod pipeline;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::warehouse::{CostError, Layout};

pub use cc::{build_cc_sprp, build_cc_sprp_ss};
pub use common::{scattered_costs, sprp_costs, Window};
pub use ec::{build_ec_sprp, build_ec_sprp_ss, pairs as connectivity_pairs, EcOptions};
pub use gs::{build_gs_sprp, build_gs_sprp_ss, PARITY_BOUND};
pub use pipeline::{build_scattered, build_sprp, solve_scattered, solve_sprp, PipelineError, Solved};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulationKind {
    Gs,
    Cc,
    Ec,
}

impl FormulationKind {
    pub const ALL: [FormulationKind; 3] = [FormulationKind::Gs, FormulationKind::Cc, FormulationKind::Ec];

    /// Lower-case prefix of the model's variable names.
    pub fn id(self) -> &'static str {
        match self {
            FormulationKind::Gs => gs::ID,
            FormulationKind::Cc => cc::ID,
            FormulationKind::Ec => ec::ID,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FormulationKind::Gs => "GS",
            FormulationKind::Cc => "CC",
            FormulationKind::Ec => "EC",
        }
    }

    pub fn supports(self, layout: &Layout<impl Scalar>) -> bool {
        match self {
            FormulationKind::Ec => matches!(layout.num_crosses, 2 | 3),
            _ => layout.num_crosses == 2,
        }
    }

    pub(crate) fn check_layout<T: Scalar>(self, layout: &Layout<T>) -> Result<(), FormulationError> {
        if self.supports(layout) {
            Ok(())
        } else {
            Err(FormulationError::UnsupportedLayout {
                formulation: self,
                num_crosses: layout.num_crosses,
            })
        }
    }
}

impl fmt::Display for FormulationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FormulationKind {
    type Err = FormulationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gs" => Ok(FormulationKind::Gs),
            "cc" => Ok(FormulationKind::Cc),
            "ec" => Ok(FormulationKind::Ec),
            _ => Err(FormulationError::Unknown(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormulationError {
    #[error("{formulation} does not support layouts with {num_crosses} cross-aisles")]
    UnsupportedLayout {
        formulation: FormulationKind,
        num_crosses: usize,
    },
    #[error("cost model does not match the instance: {0}")]
    CostMismatch(String),
    #[error("unknown formulation `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Cost(#[from] CostError),
}

#[cfg(test)]
mod tests;
