use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::scalar::Scalar;

use super::layout::{Layout, LayoutError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// Intersection of an aisle with a cross-aisle.
    Cross { aisle: usize, cross: usize },
    /// A pick cell, using the aisle-global cell index.
    Cell { aisle: usize, cell: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub a: usize,
    pub b: usize,
    pub weight: T,
    pub kind: EdgeKind,
}

/// Undirected weighted graph of intersections and pick cells.
///
/// Vertex ids are aisle-major and bottom-up within an aisle: each aisle
/// contributes the chain `cross 0, block-0 cells, cross 1, ...`. Vertical
/// edges come first in the edge list (chain order), followed by one
/// horizontal edge per cross-aisle and aisle gap.
#[derive(Debug, Clone)]
pub struct WarehouseGraph<T> {
    layout: Layout<T>,
    per_aisle: usize,
    edges: Vec<Edge<T>>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

pub fn build_graph<T: Scalar>(layout: &Layout<T>) -> Result<WarehouseGraph<T>, LayoutError> {
    layout.validate()?;
    let n = layout.cells_per_subaisle;
    let per_aisle = layout.num_crosses + layout.num_blocks() * n;
    let num_vertices = layout.num_aisles * per_aisle;
    let mut edges = Vec::new();

    for aisle in 0..layout.num_aisles {
        let base = aisle * per_aisle;
        for t in 0..per_aisle - 1 {
            // position in block: 0 is the cross, 1..=n are cells
            let within = t % (n + 1);
            let weight = if within == 0 || within == n {
                layout.cross_offset
            } else {
                layout.cell_pitch
            };
            edges.push(Edge {
                a: base + t,
                b: base + t + 1,
                weight,
                kind: EdgeKind::Vertical,
            });
        }
    }
    for aisle in 0..layout.num_aisles.saturating_sub(1) {
        for cross in 0..layout.num_crosses {
            let local = cross * (n + 1);
            edges.push(Edge {
                a: aisle * per_aisle + local,
                b: (aisle + 1) * per_aisle + local,
                weight: layout.aisle_pitch,
                kind: EdgeKind::Horizontal,
            });
        }
    }

    let mut adjacency = vec![Vec::new(); num_vertices];
    for (id, e) in edges.iter().enumerate() {
        adjacency[e.a].push((e.b, id));
        adjacency[e.b].push((e.a, id));
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    Ok(WarehouseGraph {
        layout: layout.clone(),
        per_aisle,
        edges,
        adjacency,
    })
}

impl<T: Scalar> WarehouseGraph<T> {
    pub fn layout(&self) -> &Layout<T> {
        &self.layout
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge<T> {
        &self.edges[id]
    }

    /// Neighbours of `v` as `(neighbour, edge id)`, sorted by neighbour id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    fn local_of_cross(&self, cross: usize) -> usize {
        cross * (self.layout.cells_per_subaisle + 1)
    }

    fn local_of_cell(&self, cell: usize) -> usize {
        let n = self.layout.cells_per_subaisle;
        (cell / n) * (n + 1) + 1 + cell % n
    }

    pub fn cross_vertex(&self, aisle: usize, cross: usize) -> usize {
        aisle * self.per_aisle + self.local_of_cross(cross)
    }

    pub fn cell_vertex(&self, aisle: usize, cell: usize) -> usize {
        aisle * self.per_aisle + self.local_of_cell(cell)
    }

    pub fn vertex_id(&self, v: Vertex) -> usize {
        match v {
            Vertex::Cross { aisle, cross } => self.cross_vertex(aisle, cross),
            Vertex::Cell { aisle, cell } => self.cell_vertex(aisle, cell),
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        let aisle = id / self.per_aisle;
        let local = id % self.per_aisle;
        let n = self.layout.cells_per_subaisle;
        let (block, within) = (local / (n + 1), local % (n + 1));
        if within == 0 {
            Vertex::Cross { aisle, cross: block }
        } else {
            Vertex::Cell {
                aisle,
                cell: block * n + within - 1,
            }
        }
    }

    pub fn depot(&self) -> usize {
        self.cross_vertex(self.layout.depot_aisle, self.layout.depot_cross)
    }

    /// Ids of the vertical edges between two vertices of the same aisle.
    pub fn vertical_edges_between(&self, u: usize, v: usize) -> std::ops::Range<usize> {
        debug_assert_eq!(u / self.per_aisle, v / self.per_aisle);
        let aisle = u / self.per_aisle;
        let (lo, hi) = (u.min(v) % self.per_aisle, u.max(v) % self.per_aisle);
        let base = aisle * (self.per_aisle - 1);
        base + lo..base + hi
    }

    /// Id of the horizontal edge on `cross` between `aisle` and `aisle + 1`.
    pub fn horizontal_edge(&self, aisle: usize, cross: usize) -> usize {
        let vertical = self.layout.num_aisles * (self.per_aisle - 1);
        vertical + aisle * self.layout.num_crosses + cross
    }

    /// Single-source shortest path lengths (Dijkstra).
    pub fn shortest_paths_from(&self, source: usize) -> Vec<Option<T>> {
        let mut dist: Vec<Option<T>> = vec![None; self.num_vertices()];
        let mut done = vec![false; self.num_vertices()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(T::zero());
        heap.push(Reverse(HeapEntry(T::zero(), source)));
        while let Some(Reverse(HeapEntry(d, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &(w, eid) in &self.adjacency[u] {
                let nd = d + self.edges[eid].weight;
                if dist[w].is_none_or(|cur| nd < cur) {
                    dist[w] = Some(nd);
                    heap.push(Reverse(HeapEntry(nd, w)));
                }
            }
        }
        dist
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry<T>(T, usize);

impl<T: PartialOrd> PartialEq for HeapEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl<T: PartialOrd> Eq for HeapEntry<T> {}
impl<T: PartialOrd> PartialOrd for HeapEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: PartialOrd> Ord for HeapEntry<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .partial_cmp(&other.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(self.1.cmp(&other.1))
    }
}
