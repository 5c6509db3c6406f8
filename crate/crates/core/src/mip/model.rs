use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Binary,
    Integer,
    Continuous,
}

impl VarKind {
    pub fn is_integral(self) -> bool {
        !matches!(self, VarKind::Continuous)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable<T> {
    pub name: String,
    pub kind: VarKind,
    pub lb: T,
    /// `None` means unbounded above.
    pub ub: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub name: String,
    pub terms: Vec<(VarId, T)>,
    pub sense: Sense,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn holds(&self, lhs: T) -> bool {
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Eq => lhs == self.rhs,
            Sense::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelMeta {
    pub formulation: String,
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("constraint `{constraint}` references undeclared variable {var}")]
    UnknownVariable { constraint: String, var: usize },
    #[error("non-finite coefficient in `{0}`")]
    NonFinite(String),
    #[error("variable `{0}` has an empty domain")]
    EmptyDomain(String),
}

/// Linear expression under construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LinExpr<T> {
    pub terms: Vec<(VarId, T)>,
}

impl<T: Scalar> Default for LinExpr<T> {
    fn default() -> Self {
        LinExpr { terms: Vec::new() }
    }
}

impl<T: Scalar> LinExpr<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, var: VarId, coef: T) -> &mut Self {
        self.terms.push((var, coef));
        self
    }

    /// Adds `coef * var` when the variable exists.
    pub fn add_opt(&mut self, var: Option<VarId>, coef: T) -> &mut Self {
        if let Some(v) = var {
            self.terms.push((v, coef));
        }
        self
    }

    pub fn plus(mut self, var: VarId, coef: T) -> Self {
        self.terms.push((var, coef));
        self
    }

    pub fn extend(&mut self, other: &LinExpr<T>, scale: T) -> &mut Self {
        for &(v, c) in &other.terms {
            self.terms.push((v, c * scale));
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Scalar> FromIterator<(VarId, T)> for LinExpr<T> {
    fn from_iter<I: IntoIterator<Item = (VarId, T)>>(iter: I) -> Self {
        LinExpr {
            terms: iter.into_iter().collect(),
        }
    }
}

/// A minimisation MILP with named variables and linear constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct MipModel<T> {
    pub meta: ModelMeta,
    vars: Vec<Variable<T>>,
    constraints: Vec<Constraint<T>>,
    objective: Vec<T>,
    by_name: HashMap<String, VarId>,
}

impl<T: Scalar> MipModel<T> {
    pub fn new(formulation: impl Into<String>, instance: impl Into<String>) -> Self {
        MipModel {
            meta: ModelMeta {
                formulation: formulation.into(),
                instance: instance.into(),
            },
            vars: Vec::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind, lb: T, ub: Option<T>) -> VarId {
        let name = name.into();
        let id = VarId(self.vars.len());
        let prev = self.by_name.insert(name.clone(), id);
        assert!(prev.is_none(), "duplicate variable name `{name}`");
        self.vars.push(Variable { name, kind, lb, ub });
        self.objective.push(T::zero());
        id
    }

    pub fn binary(&mut self, name: impl Into<String>) -> VarId {
        self.add_var(name, VarKind::Binary, T::zero(), Some(T::one()))
    }

    pub fn integer(&mut self, name: impl Into<String>, lb: i64, ub: i64) -> VarId {
        self.add_var(name, VarKind::Integer, T::from_int(lb), Some(T::from_int(ub)))
    }

    pub fn continuous(&mut self, name: impl Into<String>, lb: T, ub: T) -> VarId {
        self.add_var(name, VarKind::Continuous, lb, Some(ub))
    }

    /// Fixes a variable to zero through its bounds.
    pub fn fix_zero(&mut self, var: VarId) {
        self.vars[var.0].lb = T::zero();
        self.vars[var.0].ub = Some(T::zero());
    }

    pub fn set_objective(&mut self, var: VarId, coef: T) {
        self.objective[var.0] = coef;
    }

    pub fn add_objective(&mut self, var: VarId, coef: T) {
        self.objective[var.0] = self.objective[var.0] + coef;
    }

    /// Adds `lhs (sense) rhs`, merging repeated variables and dropping zero
    /// coefficients.
    pub fn add_constraint(&mut self, name: impl Into<String>, lhs: LinExpr<T>, sense: Sense, rhs: T) {
        let mut merged: Vec<(VarId, T)> = Vec::with_capacity(lhs.terms.len());
        for (v, c) in lhs.terms {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 = slot.1 + c,
                None => merged.push((v, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        self.constraints.push(Constraint {
            name: name.into(),
            terms: merged,
            sense,
            rhs,
        });
    }

    pub fn vars(&self) -> &[Variable<T>] {
        &self.vars
    }

    pub fn var(&self, id: VarId) -> &Variable<T> {
        &self.vars[id.0]
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn objective(&self) -> &[T] {
        &self.objective
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn num_binary(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Binary).count()
    }

    /// Binary plus general integer variables.
    pub fn num_integer(&self) -> usize {
        self.vars.iter().filter(|v| v.kind.is_integral()).count()
    }

    pub fn num_general_integer(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Integer).count()
    }

    pub fn num_continuous(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Continuous).count()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let finite = |x: T| x.to_f64_lossy().is_finite();
        for v in &self.vars {
            if !finite(v.lb) || v.ub.is_some_and(|u| !finite(u)) {
                return Err(ModelError::NonFinite(v.name.clone()));
            }
            if v.ub.is_some_and(|u| u < v.lb) {
                return Err(ModelError::EmptyDomain(v.name.clone()));
            }
        }
        for c in &self.constraints {
            for &(var, coef) in &c.terms {
                if var.0 >= self.vars.len() {
                    return Err(ModelError::UnknownVariable {
                        constraint: c.name.clone(),
                        var: var.0,
                    });
                }
                if !finite(coef) {
                    return Err(ModelError::NonFinite(c.name.clone()));
                }
            }
            if !finite(c.rhs) {
                return Err(ModelError::NonFinite(c.name.clone()));
            }
        }
        if self.objective.iter().any(|&c| !finite(c)) {
            return Err(ModelError::NonFinite("objective".into()));
        }
        Ok(())
    }

    pub fn evaluate(&self, values: &[T]) -> T {
        self.objective
            .iter()
            .zip(values)
            .map(|(&c, &x)| c * x)
            .sum()
    }

    /// Names of the constraints and bounds violated by `values`, compared
    /// under the scalar's equality rule.
    pub fn violations(&self, values: &[T]) -> Vec<String> {
        let mut out = Vec::new();
        for (v, &x) in self.vars.iter().zip(values) {
            if x < v.lb && !x.same(v.lb) || v.ub.is_some_and(|u| x > u && !x.same(u)) {
                out.push(format!("bound of {}", v.name));
            }
        }
        for c in &self.constraints {
            let lhs: T = c.terms.iter().map(|&(v, k)| k * values[v.0]).sum();
            if !c.holds(lhs) && !lhs.same(c.rhs) {
                out.push(c.name.clone());
            }
        }
        out
    }

    /// Exact feasibility check over the rationals.
    pub fn violations_exact(&self, values: &[BigRational]) -> Vec<String> {
        let mut out = Vec::new();
        for (v, x) in self.vars.iter().zip(values) {
            let below = *x < v.lb.to_rational();
            let above = v.ub.is_some_and(|u| *x > u.to_rational());
            let fractional = v.kind.is_integral() && !x.is_integer();
            if below || above || fractional {
                out.push(format!("domain of {}", v.name));
            }
        }
        for c in &self.constraints {
            let mut lhs = BigRational::zero();
            for (v, k) in &c.terms {
                lhs += k.to_rational() * &values[v.0];
            }
            let diff = lhs - c.rhs.to_rational();
            let ok = match c.sense {
                Sense::Le => !diff.is_positive(),
                Sense::Eq => diff.is_zero(),
                Sense::Ge => !diff.is_negative(),
            };
            if !ok {
                out.push(c.name.clone());
            }
        }
        out
    }
}
