use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("invalid layout field `{field}`: {reason}")]
    InvalidField { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> LayoutError {
    LayoutError::InvalidField {
        field,
        reason: reason.into(),
    }
}

/// Geometry of a rectangular warehouse with one or two blocks.
///
/// Aisles run vertically and are numbered left to right; cross-aisles run
/// horizontally and are numbered bottom to top. Cells are numbered globally
/// per aisle from the bottom, so cell `g` lives in block
/// `g / cells_per_subaisle`. The depot sits on the intersection of
/// `depot_aisle` with a boundary cross-aisle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout<T = i64> {
    pub num_aisles: usize,
    pub num_crosses: usize,
    pub cells_per_subaisle: usize,
    pub aisle_pitch: T,
    pub cell_pitch: T,
    pub cross_offset: T,
    pub depot_aisle: usize,
    pub depot_cross: usize,
}

impl<T: Scalar> Layout<T> {
    /// Layout with the default geometry (aisle pitch 5, cell pitch 1, cross
    /// offset 1) and the depot at the bottom of aisle 0.
    pub fn new(num_aisles: usize, num_crosses: usize, cells_per_subaisle: usize) -> Self {
        Layout {
            num_aisles,
            num_crosses,
            cells_per_subaisle,
            aisle_pitch: T::from_int(5),
            cell_pitch: T::one(),
            cross_offset: T::one(),
            depot_aisle: 0,
            depot_cross: 0,
        }
    }

    pub fn single_block(num_aisles: usize, cells_per_subaisle: usize) -> Self {
        Self::new(num_aisles, 2, cells_per_subaisle)
    }

    pub fn two_block(num_aisles: usize, cells_per_subaisle: usize) -> Self {
        Self::new(num_aisles, 3, cells_per_subaisle)
    }

    pub fn with_depot(mut self, aisle: usize, cross: usize) -> Self {
        self.depot_aisle = aisle;
        self.depot_cross = cross;
        self
    }

    pub fn with_geometry(mut self, aisle_pitch: T, cell_pitch: T, cross_offset: T) -> Self {
        self.aisle_pitch = aisle_pitch;
        self.cell_pitch = cell_pitch;
        self.cross_offset = cross_offset;
        self
    }

    pub fn validate(&self) -> Result<(), LayoutError> {
        if self.num_aisles == 0 {
            return Err(invalid("num_aisles", "at least one aisle is required"));
        }
        if !(2..=3).contains(&self.num_crosses) {
            return Err(invalid(
                "num_crosses",
                format!("{} cross-aisles; only 2 or 3 are supported", self.num_crosses),
            ));
        }
        if self.cells_per_subaisle == 0 {
            return Err(invalid("cells_per_subaisle", "must be at least 1"));
        }
        if !self.aisle_pitch.is_positive_finite() {
            return Err(invalid("aisle_pitch", format!("{} is not positive", self.aisle_pitch)));
        }
        if !self.cell_pitch.is_positive_finite() {
            return Err(invalid("cell_pitch", format!("{} is not positive", self.cell_pitch)));
        }
        if !self.cross_offset.is_positive_finite() {
            return Err(invalid(
                "cross_offset",
                format!("{} is not positive", self.cross_offset),
            ));
        }
        if self.depot_aisle >= self.num_aisles {
            return Err(invalid(
                "depot_aisle",
                format!("{} out of range 0..{}", self.depot_aisle, self.num_aisles),
            ));
        }
        if self.depot_cross != 0 && self.depot_cross != self.num_crosses - 1 {
            return Err(invalid(
                "depot_cross",
                format!(
                    "{} is not a boundary cross-aisle (0 or {})",
                    self.depot_cross,
                    self.num_crosses - 1
                ),
            ));
        }
        Ok(())
    }

    pub fn num_blocks(&self) -> usize {
        self.num_crosses - 1
    }

    pub fn is_two_block(&self) -> bool {
        self.num_crosses == 3
    }

    pub fn cells_per_aisle(&self) -> usize {
        self.num_blocks() * self.cells_per_subaisle
    }

    pub fn top_cross(&self) -> usize {
        self.num_crosses - 1
    }

    /// Whether the depot sits on the top cross-aisle.
    pub fn depot_on_top(&self) -> bool {
        self.depot_cross == self.top_cross()
    }

    pub fn block_of(&self, cell: usize) -> usize {
        cell / self.cells_per_subaisle
    }

    pub fn local_index(&self, cell: usize) -> usize {
        cell % self.cells_per_subaisle
    }

    /// Distance between the two cross-aisles bounding one subaisle.
    pub fn subaisle_length(&self) -> T {
        T::from_count(self.cells_per_subaisle - 1) * self.cell_pitch
            + self.cross_offset
            + self.cross_offset
    }

    /// Vertical coordinate of cross-aisle `k`, measured from the bottom cross.
    pub fn cross_height(&self, cross: usize) -> T {
        T::from_count(cross) * self.subaisle_length()
    }

    /// Vertical coordinate of a cell, measured from the bottom cross.
    pub fn cell_height(&self, cell: usize) -> T {
        self.cross_height(self.block_of(cell))
            + self.cross_offset
            + T::from_count(self.local_index(cell)) * self.cell_pitch
    }

    /// Rectilinear distance between two intersection vertices.
    pub fn intersection_distance(&self, a: (usize, usize), b: (usize, usize)) -> T {
        let da = T::from_count(a.0.abs_diff(b.0));
        let dk = T::from_count(a.1.abs_diff(b.1));
        da * self.aisle_pitch + dk * self.subaisle_length()
    }
}
