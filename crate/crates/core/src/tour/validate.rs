use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::warehouse::WarehouseGraph;

use super::subgraph::{TourError, TourSubgraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub connected: bool,
    pub even: bool,
    pub covers: bool,
    pub depot_included: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.connected && self.even && self.covers && self.depot_included
    }
}

/// Checks the tour-subgraph conditions for a set of cells that must be
/// visited. An empty subgraph is the valid tour of an empty pick list.
pub fn validate<T: Scalar>(
    graph: &WarehouseGraph<T>,
    sub: &TourSubgraph<T>,
    required: &[(usize, usize)],
) -> ValidationReport {
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for (e, c) in sub.edges() {
        let edge = graph.edge(e);
        *degree.entry(edge.a).or_default() += c as usize;
        *degree.entry(edge.b).or_default() += c as usize;
    }
    let even = degree.values().all(|d| d % 2 == 0);
    let depot = graph.depot();
    let depot_included = sub.is_empty() || degree.contains_key(&depot);
    let covers = required.iter().all(|&(a, c)| {
        let v = graph.cell_vertex(a, c);
        degree.contains_key(&v) || (sub.is_empty() && v == depot)
    });

    let connected = match degree.keys().next() {
        None => true,
        Some(&start) => {
            let mut seen = vec![start];
            let mut stack = vec![start];
            let mut mark = BTreeMap::new();
            mark.insert(start, ());
            while let Some(u) = stack.pop() {
                for &(w, e) in graph.neighbors(u) {
                    if sub.multiplicity(e) > 0 && mark.insert(w, ()).is_none() {
                        seen.push(w);
                        stack.push(w);
                    }
                }
            }
            seen.len() == degree.len()
        }
    };

    ValidationReport {
        connected,
        even,
        covers,
        depot_included,
    }
}

/// Closed walk from the depot using every edge copy once (Hierholzer),
/// always taking the lowest-numbered neighbour first.
pub fn euler_tour<T: Scalar>(graph: &WarehouseGraph<T>, sub: &TourSubgraph<T>) -> Result<Vec<usize>, TourError> {
    let depot = graph.depot();
    if sub.is_empty() {
        return Ok(vec![depot]);
    }
    let report = validate(graph, sub, &[]);
    if !report.connected || !report.even || !report.depot_included {
        return Err(TourError::NotEulerian(format!("{report:?}")));
    }
    let mut left: BTreeMap<usize, u8> = sub.edges().collect();
    let mut cursor: BTreeMap<usize, usize> = BTreeMap::new();
    let mut stack = vec![depot];
    let mut walk = Vec::with_capacity(sub.edge_count() + 1);
    while let Some(&u) = stack.last() {
        let nbrs = graph.neighbors(u);
        let pos = cursor.entry(u).or_insert(0);
        while *pos < nbrs.len() && left.get(&nbrs[*pos].1).copied().unwrap_or(0) == 0 {
            *pos += 1;
        }
        if *pos < nbrs.len() {
            let (w, e) = nbrs[*pos];
            *left.get_mut(&e).expect("edge in subgraph") -= 1;
            stack.push(w);
        } else {
            walk.push(u);
            stack.pop();
        }
    }
    walk.reverse();
    Ok(walk)
}

/// Total weight of consecutive steps of a walk.
pub fn walk_length<T: Scalar>(graph: &WarehouseGraph<T>, walk: &[usize]) -> T {
    walk.windows(2)
        .map(|w| {
            let e = graph
                .neighbors(w[0])
                .iter()
                .find(|&&(n, _)| n == w[1])
                .map(|&(_, e)| e)
                .expect("consecutive walk vertices are adjacent");
            graph.edge(e).weight
        })
        .sum()
}
