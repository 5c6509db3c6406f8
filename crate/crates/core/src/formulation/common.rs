use std::collections::HashMap;

use crate::instance::{Instance, ScatteredInstance};
use crate::mip::{LinExpr, MipModel, Sense, VarId};
use crate::scalar::Scalar;
use crate::warehouse::{cost_model, CostModel, Layout, PositionCost};

use super::FormulationError;

/// Contiguous range of aisles a model is built over.
///
/// Aisles outside the span of the depot and all positions are never entered
/// by an optimal tour, so the models drop them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn of(positions: &[Vec<usize>], depot_aisle: usize) -> Self {
        let mut lo = depot_aisle;
        let mut hi = depot_aisle;
        for (a, cells) in positions.iter().enumerate() {
            if !cells.is_empty() {
                lo = lo.min(a);
                hi = hi.max(a);
            }
        }
        Window { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Global aisle index of local aisle `j`.
    pub fn aisle(&self, j: usize) -> usize {
        self.lo + j
    }

    pub fn aisles(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

pub fn sprp_costs<T: Scalar>(instance: &Instance<T>) -> Result<CostModel<T>, FormulationError> {
    Ok(cost_model(&instance.layout, &instance.required)?)
}

pub fn scattered_costs<T: Scalar>(instance: &ScatteredInstance<T>) -> Result<CostModel<T>, FormulationError> {
    Ok(cost_model(&instance.layout, &instance.candidate_positions())?)
}

pub(crate) fn check_costs<T: Scalar>(
    costs: &CostModel<T>,
    layout: &Layout<T>,
    positions: &[Vec<usize>],
) -> Result<(), FormulationError> {
    if costs.positions.len() != positions.len() || costs.horiz_cost.len() + 1 != layout.num_aisles.max(1) {
        return Err(FormulationError::CostMismatch("aisle count differs".into()));
    }
    for (a, (row, cells)) in costs.positions.iter().zip(positions).enumerate() {
        if row.len() != cells.len() || row.iter().zip(cells).any(|(p, &c)| p.cell != c) {
            return Err(FormulationError::CostMismatch(format!("positions of aisle {a} differ")));
        }
    }
    Ok(())
}

/// Everything a builder needs besides the formulation itself.
pub(crate) struct Target<'a, T> {
    pub id: &'a str,
    pub layout: &'a Layout<T>,
    pub costs: &'a CostModel<T>,
    pub window: Window,
    pub scattered: Option<&'a ScatteredInstance<T>>,
}

impl<'a, T: Scalar> Target<'a, T> {
    pub fn sprp(instance: &'a Instance<T>, costs: &'a CostModel<T>) -> Result<Self, FormulationError> {
        check_costs(costs, &instance.layout, &instance.required)?;
        Ok(Target {
            id: &instance.id,
            layout: &instance.layout,
            costs,
            window: Window::of(&instance.required, instance.layout.depot_aisle),
            scattered: None,
        })
    }

    pub fn scattered(instance: &'a ScatteredInstance<T>, costs: &'a CostModel<T>) -> Result<Self, FormulationError> {
        let positions = instance.candidate_positions();
        check_costs(costs, &instance.layout, &positions)?;
        Ok(Target {
            id: &instance.id,
            layout: &instance.layout,
            costs,
            window: Window::of(&positions, instance.layout.depot_aisle),
            scattered: Some(instance),
        })
    }

    pub fn m(&self) -> usize {
        self.window.len()
    }

    /// Depot aisle in local indices.
    pub fn l(&self) -> usize {
        self.layout.depot_aisle - self.window.lo
    }

    pub fn positions(&self, j: usize) -> &'a [PositionCost<T>] {
        self.costs.aisle(self.window.aisle(j))
    }

    pub fn gap_cost(&self, g: usize) -> T {
        self.costs.horizontal(self.window.aisle(g))
    }
}

/// Variables shared by every scattered-storage extension.
pub(crate) struct Selection {
    /// Visit binary per local aisle and position index.
    pub visit: Vec<Vec<VarId>>,
    /// Aisle-active binary per local aisle.
    pub active: Vec<VarId>,
}

/// Adds visit and aisle-active variables with demand coverage, the depot
/// aisle activation and monotone activation on both sides of the depot.
pub(crate) fn add_selection<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, f: &str) -> Selection {
    let inst = t.scattered.expect("scattered target");
    let m = t.m();
    let l = t.l();
    let mut index: HashMap<(usize, usize), VarId> = HashMap::new();
    let mut visit = Vec::with_capacity(m);
    let mut active = Vec::with_capacity(m);
    for j in 0..m {
        let a = t.window.aisle(j);
        active.push(model.binary(format!("{f}.act[{a}]")));
        let row: Vec<VarId> = t
            .positions(j)
            .iter()
            .map(|p| {
                let v = model.binary(format!("{f}.x[{a},{}]", p.cell));
                index.insert((a, p.cell), v);
                v
            })
            .collect();
        visit.push(row);
    }
    for (&sku, &b) in &inst.demand {
        let mut e = LinExpr::new();
        for (a, c, q) in inst.candidates_for(sku) {
            e.add(index[&(a, c)], T::from_count(q as usize));
        }
        model.add_constraint(format!("cover[{sku}]"), e, Sense::Ge, T::from_count(b as usize));
    }
    for j in 0..m {
        for &x in &visit[j] {
            model.add_constraint(
                format!("active[{}]", t.window.aisle(j)),
                LinExpr::new().plus(active[j], T::one()).plus(x, -T::one()),
                Sense::Ge,
                T::zero(),
            );
        }
    }
    model.add_constraint("active_depot", LinExpr::new().plus(active[l], T::one()), Sense::Eq, T::one());
    for j in 0..m.saturating_sub(1) {
        let e = LinExpr::new().plus(active[j], T::one()).plus(active[j + 1], -T::one());
        let sense = if j >= l { Sense::Ge } else { Sense::Le };
        model.add_constraint(format!("active_mono[{}]", t.window.aisle(j)), e, sense, T::zero());
    }
    Selection { visit, active }
}

/// `expr >= 1`, or `expr >= x` when a visit variable is given.
pub(crate) fn at_least_visit<T: Scalar>(
    model: &mut MipModel<T>,
    name: String,
    mut expr: LinExpr<T>,
    visit: Option<VarId>,
    sense: Sense,
) {
    match visit {
        Some(x) => {
            expr.add(x, -T::one());
            model.add_constraint(name, expr, sense, T::zero());
        }
        None => model.add_constraint(name, expr, sense, T::one()),
    }
}
