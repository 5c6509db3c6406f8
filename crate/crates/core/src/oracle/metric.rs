use thiserror::Error;

use crate::scalar::Scalar;
use crate::warehouse::WarehouseGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{required} tour vertices exceed the Held-Karp budget of {limit}")]
    TooLarge { required: usize, limit: usize },
    #[error("{combos} position choices exceed the enumeration budget of {limit}")]
    Budget { combos: u128, limit: u128 },
    #[error("vertex {0} is unreachable")]
    Disconnected(usize),
    #[error("no source vertices given")]
    NoSources,
    #[error("sku {0} cannot be covered by its supply")]
    Uncoverable(u32),
}

/// Shortest-path distances among a set of graph vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricClosure<T> {
    pub vertices: Vec<usize>,
    pub dist: Vec<Vec<T>>,
}

impl<T: Scalar> MetricClosure<T> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> T {
        self.dist[a][b]
    }

    /// Length of the closed tour visiting closure indices in `order`.
    pub fn tour_length(&self, order: &[usize]) -> T {
        if order.len() < 2 {
            return T::zero();
        }
        let mut total = T::zero();
        for w in order.windows(2) {
            total = total + self.dist[w[0]][w[1]];
        }
        total + self.dist[order[order.len() - 1]][order[0]]
    }
}

/// Exact all-pairs distances among `sources` by one Dijkstra per source.
pub fn apsp<T: Scalar>(graph: &WarehouseGraph<T>, sources: &[usize]) -> Result<MetricClosure<T>, OracleError> {
    if sources.is_empty() {
        return Err(OracleError::NoSources);
    }
    let mut dist = Vec::with_capacity(sources.len());
    for &s in sources {
        let d = graph.shortest_paths_from(s);
        let row = sources
            .iter()
            .map(|&t| d[t].ok_or(OracleError::Disconnected(t)))
            .collect::<Result<Vec<T>, _>>()?;
        dist.push(row);
    }
    Ok(MetricClosure {
        vertices: sources.to_vec(),
        dist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::warehouse::{build_graph, Layout};

    #[test]
    fn diagonal_and_adjacent() {
        let layout = Layout::<i64>::single_block(3, 4);
        let g = build_graph(&layout).unwrap();
        let c = apsp(&g, &[g.cross_vertex(0, 0), g.cross_vertex(1, 0)]).unwrap();
        assert_eq!(c.get(0, 0), 0);
        assert_eq!(c.get(0, 1), 5);
        assert_eq!(c.get(1, 0), 5);
    }

    #[test]
    fn corner_to_corner_distance() {
        let layout = Layout::<i64>::two_block(4, 6);
        let g = build_graph(&layout).unwrap();
        let c = apsp(&g, &[g.cross_vertex(0, 0), g.cross_vertex(3, 2)]).unwrap();
        assert_eq!(c.get(0, 1), layout.intersection_distance((0, 0), (3, 2)));
        assert_eq!(c.get(0, 1), 3 * 5 + 2 * 7);
    }

    #[test]
    fn empty_sources() {
        let g = build_graph(&Layout::<i64>::single_block(1, 2)).unwrap();
        assert_eq!(apsp(&g, &[]), Err(OracleError::NoSources));
    }
}
