//! Baseline configuration model with explicit double passes and two integer
//! parity variables per aisle.

use crate::instance::{Instance, ScatteredInstance};
use crate::mip::{LinExpr, MipModel, Sense, VarId};
use crate::scalar::Scalar;
use crate::warehouse::CostModel;

use super::common::{add_selection, Target};
use super::config::{add_branch_links, add_config_sum, add_config_vars, add_visit, left, ConfigVars};
use super::{FormulationError, FormulationKind};

pub const ID: &str = "gs";

/// Upper bound of the parity integers; at most seven odd-contributing
/// edges meet at an aisle end.
pub const PARITY_BOUND: i64 = 4;

pub fn build_gs_sprp<T: Scalar>(instance: &Instance<T>, costs: &CostModel<T>) -> Result<MipModel<T>, FormulationError> {
    FormulationKind::Gs.check_layout(&instance.layout)?;
    let t = Target::sprp(instance, costs)?;
    Ok(build(&t))
}

pub fn build_gs_sprp_ss<T: Scalar>(
    instance: &ScatteredInstance<T>,
    costs: &CostModel<T>,
) -> Result<MipModel<T>, FormulationError> {
    FormulationKind::Gs.check_layout(&instance.layout)?;
    let t = Target::scattered(instance, costs)?;
    Ok(build(&t))
}

fn build<T: Scalar>(t: &Target<'_, T>) -> MipModel<T> {
    let mut model = MipModel::new(ID, t.id);
    let cv = add_config_vars(&mut model, t, ID);
    let double: Vec<VarId> = (0..t.m())
        .map(|j| {
            let v = model.binary(format!("{ID}.pass2[{}]", t.window.aisle(j)));
            model.set_objective(v, T::from_int(2) * t.costs.subaisle_cost);
            v
        })
        .collect();
    let sel = t.scattered.map(|_| add_selection(&mut model, t, ID));
    add_config_sum(&mut model, t, &cv, sel.as_ref());
    add_visit(&mut model, t, &cv, Some(&double), sel.as_ref());
    add_branch_links(&mut model, t, &cv);
    add_structure(&mut model, t, &cv, &double);
    model
}

fn add_structure<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, cv: &ConfigVars, double: &[VarId]) {
    let m = t.m();
    let l = t.l();
    let one = T::one();
    let two = T::from_int(2);
    let at = |v: &[VarId], g| ConfigVars::at(v, g);

    // switching between bottom-twice and top-twice needs a double pass
    for j in 1..m {
        let a = t.window.aisle(j);
        if let Some(x22) = at(&cv.x22, Some(j)) {
            let e = LinExpr::new().plus(cv.x00[j - 1], one).plus(x22, one).plus(double[j], -one);
            model.add_constraint(format!("switch_bt[{a}]"), e, Sense::Le, one);
        }
        if let Some(x00) = at(&cv.x00, Some(j)) {
            let e = LinExpr::new().plus(cv.x22[j - 1], one).plus(x00, one).plus(double[j], -one);
            model.add_constraint(format!("switch_tb[{a}]"), e, Sense::Le, one);
        }
    }

    // depot inclusion
    let (near, far): (&[VarId], &[VarId]) = if t.layout.depot_on_top() {
        (&cv.x22, &cv.x00)
    } else {
        (&cv.x00, &cv.x22)
    };
    let mut e = LinExpr::new().plus(double[l], two).plus(cv.pass[l], one);
    e.add_opt(at(near, left(l)), one);
    e.add_opt(at(&cv.both, left(l)), one);
    e.add_opt(at(near, Some(l)), one);
    e.add_opt(at(&cv.both, Some(l)), one);
    e.add_opt(at(far, left(l)), -one);
    e.add_opt(at(far, Some(l)), -one);
    model.add_constraint("depot", e, Sense::Ge, T::zero());

    for j in 0..m {
        let a = t.window.aisle(j);
        for (tag, twice) in [("top", &cv.x22), ("bot", &cv.x00)] {
            let pi = model.integer(format!("{ID}.pi_{tag}[{a}]"), 0, PARITY_BOUND);
            let mut e = LinExpr::new().plus(cv.pass[j], one).plus(double[j], two);
            for g in [left(j), Some(j)] {
                e.add_opt(at(&cv.x02, g), one);
                e.add_opt(at(&cv.both, g), two);
                e.add_opt(at(twice, g), two);
            }
            e.add(pi, -two);
            model.add_constraint(format!("parity_{tag}[{a}]"), e, Sense::Eq, T::zero());
        }

        if j > 0 {
            let mut e = LinExpr::new()
                .plus(cv.x00[j - 1], one)
                .plus(cv.x22[j - 1], one)
                .plus(double[j], -one)
                .plus(cv.tau[j], -one);
            e.add_opt(at(&cv.both, Some(j)), one);
            model.add_constraint(format!("components[{a}]"), e, Sense::Le, one);
        }

        let mut e = LinExpr::new().plus(double[j], -one).plus(cv.pass[j], -one).plus(cv.tau[j], -one);
        e.add_opt(at(&cv.both, Some(j)), one);
        for v in [&cv.both, &cv.x00, &cv.x22] {
            e.add_opt(at(v, left(j)), -one);
        }
        model.add_constraint(format!("unvisited_left[{a}]"), e, Sense::Le, T::zero());

        if j > 0 {
            let e = LinExpr::new()
                .plus(cv.tau[j - 1], one)
                .plus(cv.pass[j], -one)
                .plus(double[j], -one)
                .plus(cv.tau[j], -one);
            model.add_constraint(format!("propagate[{a}]"), e, Sense::Le, T::zero());
        }

        let mut e = LinExpr::new().plus(cv.tau[j], one);
        e.add_opt(at(&cv.both, Some(j)), -one);
        model.add_constraint(format!("tau_both[{a}]"), e, Sense::Le, T::zero());
    }
}
