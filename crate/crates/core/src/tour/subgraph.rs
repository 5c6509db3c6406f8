use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::warehouse::WarehouseGraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TourError {
    #[error("edge {edge} would be used {count} times")]
    Multiplicity { edge: usize, count: u8 },
    #[error("subgraph weight {weight} differs from the model objective {objective}")]
    WeightMismatch { weight: String, objective: String },
    #[error("cannot read variable `{0}`")]
    BadName(String),
    #[error("solution carries no assignment")]
    NoAssignment,
    #[error("subgraph is not an Euler graph: {0}")]
    NotEulerian(String),
}

/// Edge multiset over a warehouse graph with multiplicities 1 or 2.
#[derive(Debug, Clone, PartialEq)]
pub struct TourSubgraph<T> {
    mult: BTreeMap<usize, u8>,
    weight: T,
}

impl<T: Scalar> Default for TourSubgraph<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> TourSubgraph<T> {
    pub fn new() -> Self {
        TourSubgraph {
            mult: BTreeMap::new(),
            weight: T::zero(),
        }
    }

    pub fn add(&mut self, graph: &WarehouseGraph<T>, edge: usize, times: u8) -> Result<(), TourError> {
        let slot = self.mult.entry(edge).or_insert(0);
        *slot += times;
        if *slot > 2 {
            return Err(TourError::Multiplicity { edge, count: *slot });
        }
        self.weight = self.weight + T::from_count(times as usize) * graph.edge(edge).weight;
        Ok(())
    }

    pub fn add_path(
        &mut self,
        graph: &WarehouseGraph<T>,
        edges: impl IntoIterator<Item = usize>,
        times: u8,
    ) -> Result<(), TourError> {
        for e in edges {
            self.add(graph, e, times)?;
        }
        Ok(())
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    pub fn multiplicity(&self, edge: usize) -> u8 {
        self.mult.get(&edge).copied().unwrap_or(0)
    }

    /// `(edge id, multiplicity)` in edge id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.mult.iter().map(|(&e, &c)| (e, c))
    }

    /// Number of edge copies, the length of an Euler tour in edges.
    pub fn edge_count(&self) -> usize {
        self.mult.values().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn degree(&self, graph: &WarehouseGraph<T>, v: usize) -> usize {
        graph
            .neighbors(v)
            .iter()
            .map(|&(_, e)| self.multiplicity(e) as usize)
            .sum()
    }
}
