use std::collections::BTreeMap;

use crate::mip::{MipModel, MipSolution};
use crate::scalar::Scalar;
use crate::warehouse::WarehouseGraph;

use super::subgraph::{TourError, TourSubgraph};

struct Name<'a> {
    tag: &'a str,
    args: Vec<usize>,
}

fn parse(name: &str) -> Option<Name<'_>> {
    let (_, rest) = name.split_once('.')?;
    let (tag, args) = rest.strip_suffix(']')?.split_once('[')?;
    let args = args.split(',').map(|a| a.parse().ok()).collect::<Option<Vec<usize>>>()?;
    Some(Name { tag, args })
}

fn bad(name: &str) -> TourError {
    TourError::BadName(name.to_string())
}

/// Expands every active edge-carrying variable of a solved model into its
/// edges and checks that the total weight equals the model objective.
pub fn extract_subgraph<T: Scalar>(
    graph: &WarehouseGraph<T>,
    model: &MipModel<T>,
    solution: &MipSolution<T>,
) -> Result<TourSubgraph<T>, TourError> {
    if solution.values.len() != model.num_vars() {
        return Err(TourError::NoAssignment);
    }
    let layout = graph.layout();
    let top = layout.top_cross();
    let segmented = model.meta.formulation == "ec";

    // positions per aisle, recovered from the segment variables
    let mut positions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in model.vars() {
        if let Some(n) = parse(&v.name).filter(|n| n.tag == "p" && n.args.len() == 2) {
            positions.entry(n.args[0]).or_default().push(n.args[1]);
        }
    }
    for cells in positions.values_mut() {
        cells.sort_unstable();
    }
    let empty = Vec::new();
    // vertex below and above a position: neighbouring position in the block or the cross
    let below = |a: usize, c: usize| -> usize {
        let cells = positions.get(&a).unwrap_or(&empty);
        let b = layout.block_of(c);
        cells
            .iter()
            .rev()
            .find(|&&o| o < c && layout.block_of(o) == b)
            .map_or(graph.cross_vertex(a, b), |&o| graph.cell_vertex(a, o))
    };
    let above = |a: usize, c: usize| -> usize {
        let cells = positions.get(&a).unwrap_or(&empty);
        let b = layout.block_of(c);
        cells
            .iter()
            .find(|&&o| o > c && layout.block_of(o) == b)
            .map_or(graph.cross_vertex(a, b + 1), |&o| graph.cell_vertex(a, o))
    };

    let mut sub = TourSubgraph::new();
    for (id, v) in model.vars().iter().enumerate() {
        let x = solution.values[id].round();
        if x < 0.5 {
            continue;
        }
        let Some(n) = parse(&v.name) else { continue };
        let arg = |i: usize| n.args.get(i).copied().ok_or_else(|| bad(&v.name));
        match n.tag {
            "x00" | "x22" | "x02" | "both" => {
                let a = arg(0)?;
                let (bottom, upper) = match n.tag {
                    "x00" => (2, 0),
                    "x22" => (0, 2),
                    "x02" => (1, 1),
                    _ => (2, 2),
                };
                if bottom > 0 {
                    sub.add(graph, graph.horizontal_edge(a, 0), bottom)?;
                }
                if upper > 0 {
                    sub.add(graph, graph.horizontal_edge(a, top), upper)?;
                }
            }
            "xs" | "xd" => {
                let times = if n.tag == "xs" { 1 } else { 2 };
                sub.add(graph, graph.horizontal_edge(arg(0)?, arg(1)?), times)?;
            }
            "pass" | "pass2" => {
                let a = arg(0)?;
                let times = if n.tag == "pass" { 1 } else { 2 };
                let (from, to) = match n.args.len() {
                    1 => (0, top),
                    _ => (arg(1)?, arg(1)? + 1),
                };
                let path = graph.vertical_edges_between(graph.cross_vertex(a, from), graph.cross_vertex(a, to));
                sub.add_path(graph, path, times)?;
            }
            "p" | "q" => {
                let (a, c) = (arg(0)?, arg(1)?);
                let cell = graph.cell_vertex(a, c);
                let end = match (segmented, n.tag) {
                    (true, "p") => below(a, c),
                    (true, _) => above(a, c),
                    (false, "p") => graph.cross_vertex(a, 0),
                    (false, _) => graph.cross_vertex(a, top),
                };
                sub.add_path(graph, graph.vertical_edges_between(cell, end), 2)?;
            }
            "pm" | "qm" => {
                let a = arg(0)?;
                let middle = graph.cross_vertex(a, 1);
                let cells = positions.get(&a).unwrap_or(&empty);
                let end = if n.tag == "pm" {
                    cells
                        .iter()
                        .rev()
                        .find(|&&c| layout.block_of(c) == 0)
                        .map_or(graph.cross_vertex(a, 0), |&c| graph.cell_vertex(a, c))
                } else {
                    cells
                        .iter()
                        .find(|&&c| layout.block_of(c) == 1)
                        .map_or(graph.cross_vertex(a, 2), |&c| graph.cell_vertex(a, c))
                };
                sub.add_path(graph, graph.vertical_edges_between(middle, end), 2)?;
            }
            _ => {}
        }
    }

    if let Some(obj) = solution.objective {
        if !sub.weight().same(obj) {
            return Err(TourError::WeightMismatch {
                weight: sub.weight().to_string(),
                objective: obj.to_string(),
            });
        }
    }
    Ok(sub)
}

/// Positions whose visit variable is set in a scattered-storage solution.
pub fn selected_positions<T: Scalar>(model: &MipModel<T>, solution: &MipSolution<T>) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = model
        .vars()
        .iter()
        .enumerate()
        .filter(|(id, _)| solution.values.get(*id).is_some_and(|&x| x > 0.5))
        .filter_map(|(_, v)| parse(&v.name).filter(|n| n.tag == "x" && n.args.len() == 2))
        .map(|n| (n.args[0], n.args[1]))
        .collect();
    out.sort_unstable();
    out
}

/// Doubled walk from the depot to the furthest pick of a single-aisle
/// instance.
pub fn single_aisle_subgraph<T: Scalar>(
    graph: &WarehouseGraph<T>,
    cells: &[usize],
) -> Result<TourSubgraph<T>, TourError> {
    let layout = graph.layout();
    let depot = graph.depot();
    let a = layout.depot_aisle;
    let mut sub = TourSubgraph::new();
    let far = if layout.depot_on_top() {
        cells.iter().min()
    } else {
        cells.iter().max()
    };
    if let Some(&c) = far {
        sub.add_path(graph, graph.vertical_edges_between(depot, graph.cell_vertex(a, c)), 2)?;
    }
    Ok(sub)
}
