use thiserror::Error;

use crate::scalar::Scalar;

use super::layout::Layout;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("position {cell} in aisle {aisle} is out of range 0..{limit}")]
    OutOfRange { aisle: usize, cell: usize, limit: usize },
    #[error("positions of aisle {aisle} are not strictly ascending")]
    Unsorted { aisle: usize },
    #[error("expected positions for {expected} aisles, got {got}")]
    AisleCount { expected: usize, got: usize },
}

/// Cost coefficients attached to one position of an aisle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionCost<T> {
    pub cell: usize,
    /// Round trip from the bottom cross-aisle of the cell's block.
    pub branch_from_below: T,
    /// Round trip from the top cross-aisle of the cell's block.
    pub branch_from_above: T,
    /// Doubled segment down to the next listed position or cross-aisle.
    pub segment_from_below: T,
    /// Doubled segment up to the next listed position or cross-aisle.
    pub segment_from_above: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostModel<T> {
    pub horiz_cost: Vec<T>,
    pub subaisle_cost: T,
    pub positions: Vec<Vec<PositionCost<T>>>,
    /// Two-block layouts only: doubled segments from the middle cross-aisle
    /// of each aisle down and up to the nearest listed position or boundary.
    pub middle: Vec<Option<(T, T)>>,
}

impl<T: Scalar> CostModel<T> {
    pub fn aisle(&self, aisle: usize) -> &[PositionCost<T>] {
        &self.positions[aisle]
    }

    pub fn horizontal(&self, gap: usize) -> T {
        self.horiz_cost[gap]
    }
}

pub fn cost_model<T: Scalar>(
    layout: &Layout<T>,
    required_positions: &[Vec<usize>],
) -> Result<CostModel<T>, CostError> {
    if required_positions.len() != layout.num_aisles {
        return Err(CostError::AisleCount {
            expected: layout.num_aisles,
            got: required_positions.len(),
        });
    }
    let n = layout.cells_per_subaisle;
    let limit = layout.cells_per_aisle();
    let two = T::from_int(2);
    let length = layout.subaisle_length();
    let mut positions = Vec::with_capacity(layout.num_aisles);
    let mut middle = Vec::with_capacity(layout.num_aisles);

    for (aisle, cells) in required_positions.iter().enumerate() {
        for &cell in cells {
            if cell >= limit {
                return Err(CostError::OutOfRange { aisle, cell, limit });
            }
        }
        if cells.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CostError::Unsorted { aisle });
        }
        let below = |local: usize| layout.cross_offset + T::from_count(local) * layout.cell_pitch;
        let above = |local: usize| layout.cross_offset + T::from_count(n - 1 - local) * layout.cell_pitch;

        let mut row = Vec::with_capacity(cells.len());
        for (idx, &cell) in cells.iter().enumerate() {
            let block = layout.block_of(cell);
            let local = layout.local_index(cell);
            let prev = idx
                .checked_sub(1)
                .map(|p| cells[p])
                .filter(|&c| layout.block_of(c) == block);
            let next = cells.get(idx + 1).copied().filter(|&c| layout.block_of(c) == block);
            let seg_below = match prev {
                Some(c) => T::from_count(cell - c) * layout.cell_pitch,
                None => below(local),
            };
            let seg_above = match next {
                Some(c) => T::from_count(c - cell) * layout.cell_pitch,
                None => above(local),
            };
            row.push(PositionCost {
                cell,
                branch_from_below: two * below(local),
                branch_from_above: two * above(local),
                segment_from_below: two * seg_below,
                segment_from_above: two * seg_above,
            });
        }

        if layout.is_two_block() {
            let highest_low = cells.iter().rev().find(|&&c| layout.block_of(c) == 0);
            let lowest_high = cells.iter().find(|&&c| layout.block_of(c) == 1);
            let down = highest_low.map_or(length, |&c| above(layout.local_index(c)));
            let up = lowest_high.map_or(length, |&c| below(layout.local_index(c)));
            middle.push(Some((two * down, two * up)));
        } else {
            middle.push(None);
        }
        positions.push(row);
    }

    Ok(CostModel {
        horiz_cost: vec![layout.aisle_pitch; layout.num_aisles.saturating_sub(1)],
        subaisle_cost: length,
        positions,
        middle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(cells: Vec<usize>) -> CostModel<i64> {
        let layout = Layout::<i64>::single_block(1, 10);
        cost_model(&layout, &[cells]).unwrap()
    }

    #[test]
    fn bottom_cell_branch_is_doubled_offset() {
        let c = single(vec![0]);
        assert_eq!(c.aisle(0)[0].branch_from_below, 2);
    }

    #[test]
    fn segments_telescope_to_branch() {
        let c = single(vec![2, 5]);
        let a = c.aisle(0);
        assert_eq!(a[0].segment_from_below, 6);
        assert_eq!(a[1].segment_from_below, 6);
        assert_eq!(a[1].branch_from_below, 12);
        assert_eq!(a[0].segment_from_above + a[1].segment_from_above, a[0].branch_from_above);
    }

    #[test]
    fn subaisle_cost_default_aisle() {
        let layout = Layout::<i64>::single_block(5, 90);
        let c = cost_model(&layout, &vec![vec![]; 5]).unwrap();
        assert_eq!(c.subaisle_cost, 91);
        assert_eq!(c.horiz_cost, vec![5; 4]);
    }

    #[test]
    fn out_of_range_is_reported() {
        let layout = Layout::<i64>::single_block(1, 4);
        let err = cost_model(&layout, &[vec![4]]).unwrap_err();
        assert_eq!(err, CostError::OutOfRange { aisle: 0, cell: 4, limit: 4 });
    }

    #[test]
    fn unsorted_is_reported() {
        let layout = Layout::<i64>::single_block(1, 4);
        assert!(matches!(
            cost_model(&layout, &[vec![2, 1]]),
            Err(CostError::Unsorted { aisle: 0 })
        ));
    }

    #[test]
    fn two_block_segments_stop_at_middle_cross() {
        let layout = Layout::<i64>::two_block(1, 4);
        let c = cost_model(&layout, &[vec![1, 6]]).unwrap();
        let a = c.aisle(0);
        // cell 1: local 1 in block 0, cell 6: local 2 in block 1
        assert_eq!(a[0].segment_from_above, 2 * (1 + 2));
        assert_eq!(a[1].segment_from_below, 2 * (1 + 2));
        assert_eq!(c.middle[0], Some((2 * 3, 2 * 3)));
    }

    #[test]
    fn empty_two_block_middle_spans_block() {
        let layout = Layout::<i64>::two_block(1, 4);
        let c = cost_model(&layout, &[vec![]]).unwrap();
        assert_eq!(c.middle[0], Some((10, 10)));
    }

    #[test]
    fn rational_geometry() {
        use num_rational::Ratio;
        let layout = Layout::<Ratio<i64>>::single_block(1, 3).with_geometry(
            Ratio::new(5, 2),
            Ratio::new(1, 2),
            Ratio::new(3, 4),
        );
        let c = cost_model(&layout, &[vec![1]]).unwrap();
        assert_eq!(c.aisle(0)[0].branch_from_below, Ratio::new(5, 2));
        assert_eq!(c.subaisle_cost, Ratio::new(5, 2));
    }
}
