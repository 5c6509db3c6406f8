use crate::instance::Instance;
use crate::scalar::Scalar;
use crate::warehouse::{build_graph, WarehouseGraph};

use super::metric::{apsp, MetricClosure, OracleError};

/// Depot plus required vertices accepted by the dynamic program.
pub const HELD_KARP_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleTour<T> {
    pub length: T,
    /// Graph vertex ids in visiting order, starting at the depot.
    pub order: Vec<usize>,
}

/// Minimum closed tour through closure index 0 and every other index.
pub fn held_karp<T: Scalar>(closure: &MetricClosure<T>) -> Result<(T, Vec<usize>), OracleError> {
    let n = closure.len();
    if n > HELD_KARP_LIMIT {
        return Err(OracleError::TooLarge {
            required: n,
            limit: HELD_KARP_LIMIT,
        });
    }
    if n <= 1 {
        return Ok((T::zero(), vec![0]));
    }
    if n == 2 {
        return Ok((closure.get(0, 1) + closure.get(1, 0), vec![0, 1]));
    }
    let k = n - 1;
    let full = 1usize << k;
    // dp[mask * k + last]: shortest path from the depot through `mask`, ending at `last`
    let mut dp: Vec<Option<T>> = vec![None; full * k];
    let mut parent = vec![usize::MAX; full * k];
    for last in 0..k {
        dp[(1 << last) * k + last] = Some(closure.get(0, last + 1));
    }
    for mask in 1..full {
        for last in 0..k {
            if mask & (1 << last) == 0 {
                continue;
            }
            let Some(cur) = dp[mask * k + last] else {
                continue;
            };
            for next in 0..k {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let nm = mask | (1 << next);
                let cand = cur + closure.get(last + 1, next + 1);
                let slot = &mut dp[nm * k + next];
                if slot.is_none_or(|v| cand < v) {
                    *slot = Some(cand);
                    parent[nm * k + next] = last;
                }
            }
        }
    }
    let mut best: Option<(T, usize)> = None;
    for last in 0..k {
        if let Some(v) = dp[(full - 1) * k + last] {
            let total = v + closure.get(last + 1, 0);
            if best.is_none_or(|(b, _)| total < b) {
                best = Some((total, last));
            }
        }
    }
    let (length, mut last) = best.expect("complete closure");
    let mut order = Vec::with_capacity(n);
    let mut mask = full - 1;
    loop {
        order.push(last + 1);
        let p = parent[mask * k + last];
        mask &= !(1 << last);
        if p == usize::MAX {
            break;
        }
        last = p;
    }
    order.push(0);
    order.reverse();
    Ok((length, order))
}

/// Exhaustive minimum over all permutations; the oracle's own check.
pub fn brute_force<T: Scalar>(closure: &MetricClosure<T>) -> T {
    let n = closure.len();
    if n <= 1 {
        return T::zero();
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<T> = None;
    permute(&mut rest, 0, &mut |perm| {
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend_from_slice(perm);
        let len = closure.tour_length(&order);
        if best.is_none_or(|b| len < b) {
            best = Some(len);
        }
    });
    best.unwrap_or_else(T::zero)
}

fn permute(items: &mut [usize], start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Depot followed by the instance's required cell vertices.
pub fn tour_vertices<T: Scalar>(graph: &WarehouseGraph<T>, instance: &Instance<T>) -> Vec<usize> {
    let mut v = vec![graph.depot()];
    v.extend(instance.picks().map(|(a, c)| graph.cell_vertex(a, c)));
    v
}

pub fn solve_sprp_oracle_on<T: Scalar>(
    graph: &WarehouseGraph<T>,
    instance: &Instance<T>,
) -> Result<OracleTour<T>, OracleError> {
    let vertices = tour_vertices(graph, instance);
    if vertices.len() > HELD_KARP_LIMIT {
        return Err(OracleError::TooLarge {
            required: vertices.len(),
            limit: HELD_KARP_LIMIT,
        });
    }
    let closure = apsp(graph, &vertices)?;
    let (length, order) = held_karp(&closure)?;
    Ok(OracleTour {
        length,
        order: order.into_iter().map(|i| vertices[i]).collect(),
    })
}

/// Exact shortest closed walk from the depot through every required cell.
pub fn solve_sprp_oracle<T: Scalar>(instance: &Instance<T>) -> Result<OracleTour<T>, OracleError> {
    let graph = build_graph(&instance.layout).expect("validated layout");
    solve_sprp_oracle_on(&graph, instance)
}

/// Closed form when every pick lies in the depot aisle: walk to the
/// furthest pick and back.
pub fn single_aisle_optimum<T: Scalar>(instance: &Instance<T>) -> Option<T> {
    let layout = &instance.layout;
    if instance.required.iter().enumerate().any(|(a, c)| a != layout.depot_aisle && !c.is_empty()) {
        return None;
    }
    let cells = &instance.required[layout.depot_aisle];
    let two = T::from_int(2);
    Some(match (cells.first(), cells.last()) {
        (Some(&lo), Some(&hi)) => {
            if layout.depot_on_top() {
                two * (layout.cross_height(layout.top_cross()) - layout.cell_height(lo))
            } else {
                two * layout.cell_height(hi)
            }
        }
        _ => T::zero(),
    })
}
