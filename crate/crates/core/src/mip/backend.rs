use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::scalar::Scalar;

use super::enumerate::enumerate_solve;
use super::model::{MipModel, ModelError};
use super::solution::MipSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendHandle {
    /// Bundled implicit enumeration; exact, for tiny models only.
    Enumerate,
    /// HiGHS branch-and-cut through its C API.
    Highs,
}

impl BackendHandle {
    pub fn id(self) -> &'static str {
        match self {
            BackendHandle::Enumerate => "enumerate",
            BackendHandle::Highs => "highs",
        }
    }

    pub fn is_available(self) -> bool {
        match self {
            BackendHandle::Enumerate => true,
            BackendHandle::Highs => cfg!(feature = "highs"),
        }
    }
}

impl fmt::Display for BackendHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BackendHandle {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "enumerate" => Ok(BackendHandle::Enumerate),
            "highs" => Ok(BackendHandle::Highs),
            other => Err(SolveError::Unavailable(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub time: Option<Duration>,
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            time: None,
            threads: 1,
        }
    }
}

impl Limits {
    pub fn with_time(time: Duration) -> Self {
        Limits {
            time: Some(time),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("backend `{0}` is not available in this build")]
    Unavailable(String),
    #[error("model has {free} free integer variables; the enumerator accepts at most {limit}")]
    TooLarge { free: usize, limit: usize },
    #[error("unsupported model: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Invalid(#[from] ModelError),
    #[error("backend failure: {0}")]
    Backend(String),
}

pub fn solve<T: Scalar>(
    model: &MipModel<T>,
    backend: BackendHandle,
    limits: &Limits,
) -> Result<MipSolution<T>, SolveError> {
    model.validate()?;
    match backend {
        BackendHandle::Enumerate => enumerate_solve(model, limits),
        #[cfg(feature = "highs")]
        BackendHandle::Highs => super::highs_backend::highs_solve(model, limits),
        #[cfg(not(feature = "highs"))]
        BackendHandle::Highs => Err(SolveError::Unavailable("highs".into())),
    }
}
