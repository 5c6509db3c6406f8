use std::collections::{BTreeSet, HashMap};

use crate::instance::ScatteredInstance;
use crate::scalar::Scalar;
use crate::warehouse::build_graph;

use super::held_karp::{solve_sprp_oracle_on, HELD_KARP_LIMIT};
use super::metric::OracleError;

pub const CHOICE_BUDGET: u128 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteredTour<T> {
    pub length: T,
    /// Chosen positions as sorted `(aisle, cell)` pairs.
    pub positions: Vec<(usize, usize)>,
    pub order: Vec<usize>,
}

/// Inclusion-minimal subsets of `supply` whose quantities reach `demand`.
pub fn minimal_covers(supply: &[((usize, usize), u32)], demand: u32) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let n = supply.len();
    if n > 20 {
        // fall back to singletons and the full set when enumeration would explode
        for &(p, q) in supply {
            if q >= demand {
                out.push(vec![p]);
            }
        }
        return out;
    }
    for mask in 1u32..(1 << n) {
        let total: u64 = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| u64::from(supply[i].1))
            .sum();
        if total < u64::from(demand) {
            continue;
        }
        let minimal = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .all(|i| total - u64::from(supply[i].1) < u64::from(demand));
        if minimal {
            out.push(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| supply[i].0)
                    .collect(),
            );
        }
    }
    out
}

/// Exact optimum over every combination of minimal position covers.
pub fn solve_sprp_ss_oracle<T: Scalar>(instance: &ScatteredInstance<T>) -> Result<ScatteredTour<T>, OracleError> {
    let graph = build_graph(&instance.layout).expect("validated layout");
    let mut options: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for (&sku, &demand) in &instance.demand {
        let supply: Vec<((usize, usize), u32)> = instance
            .candidates_for(sku)
            .into_iter()
            .map(|(a, c, q)| ((a, c), q))
            .collect();
        let covers = minimal_covers(&supply, demand);
        if covers.is_empty() {
            return Err(OracleError::Uncoverable(sku));
        }
        options.push(covers);
    }
    let combos: u128 = options.iter().map(|o| o.len() as u128).product();
    if combos > CHOICE_BUDGET {
        return Err(OracleError::Budget {
            combos,
            limit: CHOICE_BUDGET,
        });
    }

    let mut cache: HashMap<Vec<(usize, usize)>, (T, Vec<usize>)> = HashMap::new();
    let mut best: Option<ScatteredTour<T>> = None;
    let mut idx = vec![0usize; options.len()];
    loop {
        let set: BTreeSet<(usize, usize)> = options
            .iter()
            .zip(&idx)
            .flat_map(|(o, &i)| o[i].iter().copied())
            .collect();
        let key: Vec<(usize, usize)> = set.into_iter().collect();
        if key.len() + 1 > HELD_KARP_LIMIT {
            return Err(OracleError::TooLarge {
                required: key.len() + 1,
                limit: HELD_KARP_LIMIT,
            });
        }
        let (length, order) = match cache.get(&key) {
            Some(v) => v.clone(),
            None => {
                let induced = instance.induced(key.iter().copied());
                let tour = solve_sprp_oracle_on(&graph, &induced)?;
                cache.insert(key.clone(), (tour.length, tour.order.clone()));
                (tour.length, tour.order)
            }
        };
        if best.as_ref().is_none_or(|b| length < b.length) {
            best = Some(ScatteredTour {
                length,
                positions: key,
                order,
            });
        }
        // odometer step
        let mut d = 0;
        loop {
            if d == idx.len() {
                return Ok(best.unwrap_or(ScatteredTour {
                    length: T::zero(),
                    positions: Vec::new(),
                    order: vec![graph.depot()],
                }));
            }
            idx[d] += 1;
            if idx[d] < options[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
