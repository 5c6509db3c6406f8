use std::fmt;
use std::time::Duration;

use num_rational::BigRational;
use num_traits::Zero;

use crate::scalar::Scalar;

use super::model::{MipModel, VarId};

/// Values closer than this to an integer are treated as that integer.
pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Infeasible,
    Limit,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
            Status::Limit => "limit",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MipSolution<T> {
    pub status: Status,
    /// Objective of the returned assignment, recomputed in the scalar type.
    pub objective: Option<T>,
    pub values: Vec<f64>,
    pub wall_time: Duration,
    pub backend: String,
}

impl<T: Scalar> MipSolution<T> {
    pub fn infeasible(backend: &str, wall_time: Duration) -> Self {
        MipSolution {
            status: Status::Infeasible,
            objective: None,
            values: Vec::new(),
            wall_time,
            backend: backend.to_string(),
        }
    }

    /// Builds a solution from raw backend values, snapping integer variables
    /// and recomputing the objective.
    pub fn from_values(
        model: &MipModel<T>,
        status: Status,
        mut values: Vec<f64>,
        wall_time: Duration,
        backend: &str,
    ) -> Self {
        for (v, x) in model.vars().iter().zip(values.iter_mut()) {
            if v.kind.is_integral() {
                *x = x.round();
            }
        }
        let objective = if values.is_empty() && model.num_vars() > 0 {
            None
        } else {
            Some(model.evaluate(&scalar_values(model, &values)))
        };
        MipSolution {
            status,
            objective,
            values,
            wall_time,
            backend: backend.to_string(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn value(&self, var: VarId) -> f64 {
        self.values[var.0]
    }

    pub fn int_value(&self, var: VarId) -> i64 {
        self.values[var.0].round() as i64
    }

    pub fn is_set(&self, var: VarId) -> bool {
        self.values[var.0] > 0.5
    }

    /// Exact rational image of the assignment: integer and near-integer
    /// values snap, everything else keeps its binary floating-point value.
    pub fn rational_values(&self) -> Vec<BigRational> {
        self.values
            .iter()
            .map(|&x| {
                let r = x.round();
                if (x - r).abs() <= INTEGRALITY_TOL {
                    BigRational::from_float(r).unwrap_or_else(BigRational::zero)
                } else {
                    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
                }
            })
            .collect()
    }

    /// Constraint names violated by the assignment. Integral assignments are
    /// checked exactly; assignments with fractional continuous values fall
    /// back to the scalar comparison rule.
    pub fn violations(&self, model: &MipModel<T>) -> Vec<String> {
        let all_integral = self
            .values
            .iter()
            .all(|&x| (x - x.round()).abs() <= INTEGRALITY_TOL);
        if all_integral {
            model.violations_exact(&self.rational_values())
        } else {
            model.violations(&scalar_values(model, &self.values))
        }
    }
}

fn scalar_values<T: Scalar>(model: &MipModel<T>, values: &[f64]) -> Vec<T> {
    model
        .vars()
        .iter()
        .zip(values)
        .map(|(v, &x)| {
            let r = x.round();
            if v.kind.is_integral() || (x - r).abs() <= INTEGRALITY_TOL {
                T::from_int(r as i64)
            } else {
                T::from_solver(x)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mip::{LinExpr, Sense};

    #[test]
    fn objective_is_recomputed_from_rounded_values() {
        let mut m = MipModel::<i64>::new("t", "i");
        let x = m.binary("x");
        m.set_objective(x, 7);
        let s = MipSolution::from_values(&m, Status::Optimal, vec![0.999_999_9], Duration::ZERO, "test");
        assert_eq!(s.objective, Some(7));
        assert_eq!(s.values, vec![1.0]);
    }

    #[test]
    fn fractional_continuous_uses_tolerance() {
        let mut m = MipModel::<f64>::new("t", "i");
        let x = m.continuous("x", 0.0, 1.0);
        m.add_constraint("c", LinExpr::new().plus(x, 3.0), Sense::Eq, 1.0);
        let s = MipSolution::from_values(&m, Status::Optimal, vec![1.0 / 3.0], Duration::ZERO, "test");
        assert!(s.violations(&m).is_empty());
    }
}
