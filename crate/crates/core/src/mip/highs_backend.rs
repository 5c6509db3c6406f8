use std::time::Instant;

use highs::{HighsModelStatus, RowProblem, Sense as HSense};

use crate::scalar::Scalar;

use super::backend::{Limits, SolveError};
use super::model::{MipModel, Sense};
use super::solution::{MipSolution, Status};

pub const BACKEND_ID: &str = "highs";

pub fn highs_solve<T: Scalar>(model: &MipModel<T>, limits: &Limits) -> Result<MipSolution<T>, SolveError> {
    let start = Instant::now();
    if model.num_vars() == 0 {
        let infeasible = model.constraints().iter().any(|c| !c.holds(T::zero()));
        return Ok(if infeasible {
            MipSolution::infeasible(BACKEND_ID, start.elapsed())
        } else {
            MipSolution::from_values(model, Status::Optimal, Vec::new(), start.elapsed(), BACKEND_ID)
        });
    }

    let mut pb = RowProblem::default();
    let mut cols = Vec::with_capacity(model.num_vars());
    for (v, c) in model.vars().iter().zip(model.objective()) {
        let lb = v.lb.to_f64_lossy();
        let cost = c.to_f64_lossy();
        let col = match v.ub {
            Some(u) => pb.add_column_with_integrality(cost, lb..=u.to_f64_lossy(), v.kind.is_integral()),
            None => pb.add_column_with_integrality(cost, lb.., v.kind.is_integral()),
        };
        cols.push(col);
    }
    for c in model.constraints() {
        let factors: Vec<_> = c
            .terms
            .iter()
            .map(|&(v, k)| (cols[v.0], k.to_f64_lossy()))
            .collect();
        let rhs = c.rhs.to_f64_lossy();
        match c.sense {
            Sense::Le => pb.add_row(..=rhs, &factors),
            Sense::Ge => pb.add_row(rhs.., &factors),
            Sense::Eq => pb.add_row(rhs..=rhs, &factors),
        }
    }

    let mut hm = pb
        .try_optimise(HSense::Minimise)
        .map_err(|e| SolveError::Backend(format!("{e:?}")))?;
    hm.make_quiet();
    hm.set_option("threads", limits.threads.max(1) as i32);
    hm.set_option("mip_rel_gap", 0.0);
    hm.set_option("mip_abs_gap", 0.0);
    if let Some(t) = limits.time {
        hm.set_option("time_limit", t.as_secs_f64());
    }
    let solved = hm
        .try_solve()
        .map_err(|e| SolveError::Backend(format!("{e:?}")))?;
    let elapsed = start.elapsed();
    let status = solved.status();
    let values = solved.get_solution().columns().to_vec();
    Ok(match status {
        HighsModelStatus::Optimal => {
            MipSolution::from_values(model, Status::Optimal, values, elapsed, BACKEND_ID)
        }
        HighsModelStatus::Infeasible | HighsModelStatus::UnboundedOrInfeasible => {
            MipSolution::infeasible(BACKEND_ID, elapsed)
        }
        HighsModelStatus::ReachedTimeLimit | HighsModelStatus::ReachedIterationLimit => {
            let has_incumbent = values.len() == model.num_vars() && solved.objective_value().is_finite();
            let mut s = MipSolution::from_values(
                model,
                Status::Limit,
                if has_incumbent { values } else { Vec::new() },
                elapsed,
                BACKEND_ID,
            );
            if !has_incumbent {
                s.objective = None;
            }
            s
        }
        other => return Err(SolveError::Backend(format!("unexpected status {other:?}"))),
    })
}
