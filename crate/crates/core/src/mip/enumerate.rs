//! Implicit enumeration for small models.
//!
//! Depth-first search over the integer variables with bound propagation on
//! every constraint and an objective cutoff. Continuous variables are
//! resolved at the leaves by an exact phase-one simplex, so they must not
//! carry objective weight.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::Scalar;

use super::backend::{Limits, SolveError};
use super::model::{MipModel, Sense};
use super::simplex::{find_feasible_point, LpRow};
use super::solution::{MipSolution, Status};

pub const MAX_FREE_INTEGERS: usize = 40;
pub const BACKEND_ID: &str = "enumerate";

const EPS: f64 = 1e-9;

struct LeRow {
    terms: Vec<(usize, f64)>,
    rhs: f64,
}

struct Search<'a, T> {
    model: &'a MipModel<T>,
    integral: Vec<bool>,
    obj: Vec<f64>,
    rows: Vec<LeRow>,
    rows_of: Vec<Vec<usize>>,
    has_continuous: Vec<bool>,
    cutoff: f64,
    best: Option<(BigRational, Vec<f64>)>,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(model: &'a MipModel<T>, deadline: Option<Instant>) -> Self {
        let n = model.num_vars();
        let integral: Vec<bool> = model.vars().iter().map(|v| v.kind.is_integral()).collect();
        let obj: Vec<f64> = model.objective().iter().map(|c| c.to_f64_lossy()).collect();
        let mut rows = Vec::new();
        let mut has_continuous = Vec::new();
        for c in model.constraints() {
            let terms: Vec<(usize, f64)> = c.terms.iter().map(|&(v, k)| (v.0, k.to_f64_lossy())).collect();
            let cont = terms.iter().any(|&(j, _)| !integral[j]);
            let rhs = c.rhs.to_f64_lossy();
            if matches!(c.sense, Sense::Le | Sense::Eq) {
                rows.push(LeRow { terms: terms.clone(), rhs });
                has_continuous.push(cont);
            }
            if matches!(c.sense, Sense::Ge | Sense::Eq) {
                rows.push(LeRow {
                    terms: terms.iter().map(|&(j, a)| (j, -a)).collect(),
                    rhs: -rhs,
                });
                has_continuous.push(cont);
            }
        }
        // objective cutoff row, rhs updated as incumbents improve
        rows.push(LeRow {
            terms: obj
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0.0)
                .map(|(j, &c)| (j, c))
                .collect(),
            rhs: f64::INFINITY,
        });
        has_continuous.push(false);
        let mut rows_of = vec![Vec::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for &(j, _) in &row.terms {
                rows_of[j].push(r);
            }
        }
        Search {
            model,
            integral,
            obj,
            rows,
            rows_of,
            has_continuous,
            cutoff: f64::INFINITY,
            best: None,
            deadline,
            timed_out: false,
        }
    }

    fn cutoff_row(&self) -> usize {
        self.rows.len() - 1
    }

    /// Tightens integer bounds to a fixpoint; false on a proven conflict.
    fn propagate(&self, lo: &mut [f64], hi: &mut [f64], seed: Option<usize>) -> bool {
        let mut queued = vec![false; self.rows.len()];
        let mut queue: Vec<usize> = match seed {
            Some(j) => self.rows_of[j].clone(),
            None => (0..self.rows.len()).collect(),
        };
        queue.push(self.cutoff_row());
        for &r in &queue {
            queued[r] = true;
        }
        while let Some(r) = queue.pop() {
            queued[r] = false;
            let row = &self.rows[r];
            let rhs = if r == self.cutoff_row() { self.cutoff } else { row.rhs };
            if !rhs.is_finite() {
                continue;
            }
            let mut min_act = 0.0;
            let mut infinite = 0usize;
            for &(j, a) in &row.terms {
                let b = if a > 0.0 { lo[j] } else { hi[j] };
                if b.is_finite() {
                    min_act += a * b;
                } else {
                    infinite += 1;
                }
            }
            if infinite == 0 && min_act > rhs + EPS * (1.0 + rhs.abs()) {
                return false;
            }
            if infinite > 0 {
                continue;
            }
            for &(j, a) in &row.terms {
                if !self.integral[j] {
                    continue;
                }
                let own = if a > 0.0 { a * lo[j] } else { a * hi[j] };
                let slack = (rhs - (min_act - own)) / a;
                let changed = if a > 0.0 {
                    let nh = (slack + 1e-7).floor();
                    if nh < hi[j] {
                        hi[j] = nh;
                        true
                    } else {
                        false
                    }
                } else {
                    let nl = (slack - 1e-7).ceil();
                    if nl > lo[j] {
                        lo[j] = nl;
                        true
                    } else {
                        false
                    }
                };
                if changed {
                    if lo[j] > hi[j] {
                        return false;
                    }
                    for &r2 in &self.rows_of[j] {
                        if !queued[r2] {
                            queued[r2] = true;
                            queue.push(r2);
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, mut lo: Vec<f64>, mut hi: Vec<f64>, seed: Option<usize>) {
        if self.timed_out || self.deadline.is_some_and(|d| Instant::now() > d) {
            self.timed_out = true;
            return;
        }
        if !self.propagate(&mut lo, &mut hi, seed) {
            return;
        }
        let branch = (0..lo.len())
            .filter(|&j| self.integral[j] && lo[j] < hi[j])
            .min_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])).then(a.cmp(&b)));
        let Some(j) = branch else {
            self.leaf(&lo);
            return;
        };
        let (a, b) = (lo[j] as i64, hi[j] as i64);
        let values: Vec<i64> = if self.obj[j] >= 0.0 {
            (a..=b).collect()
        } else {
            (a..=b).rev().collect()
        };
        for v in values {
            let (mut l2, mut h2) = (lo.clone(), hi.clone());
            l2[j] = v as f64;
            h2[j] = v as f64;
            self.dfs(l2, h2, Some(j));
            if self.timed_out {
                return;
            }
        }
    }

    fn leaf(&mut self, fixed: &[f64]) {
        let model = self.model;
        let q = |x: f64| BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        // exact check of rows over integer variables only
        for (r, row) in self.rows.iter().enumerate() {
            if r == self.cutoff_row() || self.has_continuous[r] {
                continue;
            }
            let lhs: f64 = row.terms.iter().map(|&(j, a)| a * fixed[j]).sum();
            if lhs > row.rhs + EPS * (1.0 + row.rhs.abs()) {
                return;
            }
        }
        let cont: Vec<usize> = (0..fixed.len()).filter(|&j| !self.integral[j]).collect();
        let mut values: Vec<f64> = fixed.to_vec();
        if !cont.is_empty() {
            let mut index = vec![usize::MAX; fixed.len()];
            for (k, &j) in cont.iter().enumerate() {
                index[j] = k;
            }
            let mut lp_rows = Vec::new();
            for c in model.constraints() {
                if c.terms.iter().all(|(v, _)| self.integral[v.0]) {
                    continue;
                }
                let mut rhs = c.rhs.to_rational();
                let mut coeffs = Vec::new();
                for (v, k) in &c.terms {
                    if self.integral[v.0] {
                        rhs -= k.to_rational() * q(fixed[v.0]);
                    } else {
                        coeffs.push((index[v.0], k.to_rational()));
                    }
                }
                lp_rows.push(LpRow {
                    coeffs,
                    sense: c.sense,
                    rhs,
                });
            }
            let lower: Vec<BigRational> = cont.iter().map(|&j| model.vars()[j].lb.to_rational()).collect();
            let upper: Vec<Option<BigRational>> = cont
                .iter()
                .map(|&j| model.vars()[j].ub.map(|u| u.to_rational()))
                .collect();
            let Some(point) = find_feasible_point(&lower, &upper, &lp_rows) else {
                return;
            };
            for (k, &j) in cont.iter().enumerate() {
                values[j] = point[k].to_f64().unwrap_or(f64::NAN);
            }
        }
        let objective: BigRational = model
            .objective()
            .iter()
            .zip(fixed)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &x)| c.to_rational() * q(x))
            .sum();
        if self.best.as_ref().is_none_or(|(b, _)| objective < *b) {
            let f = objective.to_f64().unwrap_or(f64::NAN);
            self.cutoff = f - 1e-7 * (1.0 + f.abs());
            self.best = Some((objective, values));
        }
    }
}

pub fn enumerate_solve<T: Scalar>(model: &MipModel<T>, limits: &Limits) -> Result<MipSolution<T>, SolveError> {
    let start = Instant::now();
    for (v, c) in model.vars().iter().zip(model.objective()) {
        if !v.kind.is_integral() && !c.is_zero() {
            return Err(SolveError::Unsupported(format!(
                "continuous variable `{}` has an objective coefficient",
                v.name
            )));
        }
        if v.kind.is_integral() && v.ub.is_none() {
            return Err(SolveError::Unsupported(format!(
                "integer variable `{}` is unbounded",
                v.name
            )));
        }
    }
    let deadline = limits.time.map(|t| start + t);
    let mut search = Search::new(model, deadline);
    let mut lo: Vec<f64> = model.vars().iter().map(|v| v.lb.to_f64_lossy().ceil()).collect();
    let mut hi: Vec<f64> = model
        .vars()
        .iter()
        .map(|v| v.ub.map_or(f64::INFINITY, |u| u.to_f64_lossy().floor()))
        .collect();
    for (j, v) in model.vars().iter().enumerate() {
        if !v.kind.is_integral() {
            lo[j] = v.lb.to_f64_lossy();
            hi[j] = v.ub.map_or(f64::INFINITY, |u| u.to_f64_lossy());
        }
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) || !search.propagate(&mut lo, &mut hi, None) {
        return Ok(MipSolution::infeasible(BACKEND_ID, start.elapsed()));
    }
    let free = (0..lo.len()).filter(|&j| search.integral[j] && lo[j] < hi[j]).count();
    if free > MAX_FREE_INTEGERS {
        return Err(SolveError::TooLarge {
            free,
            limit: MAX_FREE_INTEGERS,
        });
    }
    search.dfs(lo, hi, None);
    let elapsed = start.elapsed();
    let timed_out = search.timed_out;
    Ok(match search.best.take() {
        Some((_, values)) => MipSolution::from_values(
            model,
            if timed_out { Status::Limit } else { Status::Optimal },
            values,
            elapsed,
            BACKEND_ID,
        ),
        None if timed_out => MipSolution {
            status: Status::Limit,
            objective: None,
            values: Vec::new(),
            wall_time: elapsed,
            backend: BACKEND_ID.into(),
        },
        None => MipSolution::infeasible(BACKEND_ID, elapsed.max(Duration::ZERO)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mip::LinExpr;

    fn solve(m: &MipModel<i64>) -> MipSolution<i64> {
        enumerate_solve(m, &Limits::default()).unwrap()
    }

    #[test]
    fn empty_model() {
        let m = MipModel::<i64>::new("t", "empty");
        let s = solve(&m);
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.objective, Some(0));
    }

    #[test]
    fn min_x_with_lower_bound() {
        let mut m = MipModel::<i64>::new("t", "i");
        let x = m.binary("x");
        m.set_objective(x, 1);
        m.add_constraint("c", LinExpr::new().plus(x, 1), Sense::Ge, 1);
        assert_eq!(solve(&m).objective, Some(1));
    }

    #[test]
    fn negative_objective() {
        let mut m = MipModel::<i64>::new("t", "i");
        let x = m.binary("x");
        m.set_objective(x, -1);
        let s = solve(&m);
        assert_eq!(s.objective, Some(-1));
        assert_eq!(s.values, vec![1.0]);
    }

    #[test]
    fn infeasible_pair() {
        let mut m = MipModel::<i64>::new("t", "i");
        let x = m.binary("x");
        m.add_constraint("a", LinExpr::new().plus(x, 1), Sense::Ge, 1);
        m.add_constraint("b", LinExpr::new().plus(x, 1), Sense::Le, 0);
        assert_eq!(solve(&m).status, Status::Infeasible);
    }

    #[test]
    fn size_guard() {
        let mut m = MipModel::<i64>::new("t", "i");
        for i in 0..41 {
            m.binary(format!("x{i}"));
        }
        assert!(matches!(
            enumerate_solve(&m, &Limits::default()),
            Err(SolveError::TooLarge { free: 41, .. })
        ));
    }

    #[test]
    fn continuous_linkage() {
        // y <= x, y >= 1/2 forces x = 1
        let mut m = MipModel::<i64>::new("t", "i");
        let x = m.binary("x");
        let y = m.continuous("y", 0, 1);
        m.set_objective(x, 3);
        m.add_constraint("link", LinExpr::new().plus(y, 1).plus(x, -1), Sense::Le, 0);
        m.add_constraint("min", LinExpr::new().plus(y, 2), Sense::Ge, 1);
        let s = solve(&m);
        assert_eq!(s.objective, Some(3));
        assert!(s.violations(&m).is_empty());
    }

    #[test]
    fn general_integers() {
        // 2k = a + b + c with a, b, c binary, a + b + c >= 1, minimise k - a
        let mut m = MipModel::<i64>::new("t", "i");
        let a = m.binary("a");
        let b = m.binary("b");
        let c = m.binary("c");
        let k = m.integer("k", 0, 2);
        m.set_objective(k, 2);
        m.set_objective(a, 1);
        m.add_constraint("par", LinExpr::new().plus(a, 1).plus(b, 1).plus(c, 1).plus(k, -2), Sense::Eq, 0);
        m.add_constraint("cov", LinExpr::new().plus(a, 1).plus(b, 1).plus(c, 1), Sense::Ge, 1);
        let s = solve(&m);
        assert_eq!(s.objective, Some(2));
        assert_eq!(s.int_value(a), 0);
    }
}
