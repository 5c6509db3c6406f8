//! Configuration-connectivity model for single-block layouts.
//!
//! Each gap between adjacent aisles takes one of four cross-aisle
//! configurations, each aisle is either passed once or entered by
//! branch-and-pick from below or above, one parity binary per aisle keeps
//! degrees even and `tau` tracks whether the part left of an aisle still
//! consists of two components.

use crate::instance::{Instance, ScatteredInstance};
use crate::mip::{LinExpr, MipModel, Sense};
use crate::scalar::Scalar;
use crate::warehouse::CostModel;

use super::common::{add_selection, Target};
use super::config::{add_branch_links, add_config_sum, add_config_vars, add_visit, left, ConfigVars};
use super::{FormulationError, FormulationKind};

pub const ID: &str = "cc";

pub fn build_cc_sprp<T: Scalar>(instance: &Instance<T>, costs: &CostModel<T>) -> Result<MipModel<T>, FormulationError> {
    FormulationKind::Cc.check_layout(&instance.layout)?;
    let t = Target::sprp(instance, costs)?;
    Ok(build(&t))
}

pub fn build_cc_sprp_ss<T: Scalar>(
    instance: &ScatteredInstance<T>,
    costs: &CostModel<T>,
) -> Result<MipModel<T>, FormulationError> {
    FormulationKind::Cc.check_layout(&instance.layout)?;
    let t = Target::scattered(instance, costs)?;
    Ok(build(&t))
}

fn build<T: Scalar>(t: &Target<'_, T>) -> MipModel<T> {
    let mut model = MipModel::new(ID, t.id);
    let cv = add_config_vars(&mut model, t, ID);
    let sel = t.scattered.map(|_| add_selection(&mut model, t, ID));
    add_config_sum(&mut model, t, &cv, sel.as_ref());
    add_visit(&mut model, t, &cv, None, sel.as_ref());
    add_branch_links(&mut model, t, &cv);
    add_structure(&mut model, t, &cv);
    model
}

fn add_structure<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, cv: &ConfigVars) {
    let m = t.m();
    let l = t.l();
    let one = T::one();
    let at = |v: &[_], g| ConfigVars::at(v, g);

    // no direct switch between bottom-twice and top-twice
    for j in 1..m {
        let a = t.window.aisle(j);
        if let Some(x22) = at(&cv.x22, Some(j)) {
            let e = LinExpr::new().plus(cv.x00[j - 1], one).plus(x22, one);
            model.add_constraint(format!("switch_bt[{a}]"), e, Sense::Le, one);
        }
        if let Some(x00) = at(&cv.x00, Some(j)) {
            let e = LinExpr::new().plus(cv.x22[j - 1], one).plus(x00, one);
            model.add_constraint(format!("switch_tb[{a}]"), e, Sense::Le, one);
        }
    }

    // depot inclusion
    let (touch, avoid) = if t.layout.depot_on_top() {
        (cv.top(left(l)).into_iter().chain(cv.top(Some(l))).collect::<Vec<_>>(), [at(&cv.x00, left(l)), at(&cv.x00, Some(l))])
    } else {
        (cv.bottom(left(l)).into_iter().chain(cv.bottom(Some(l))).collect::<Vec<_>>(), [at(&cv.x22, left(l)), at(&cv.x22, Some(l))])
    };
    let mut e = LinExpr::new();
    for v in touch.into_iter().flatten() {
        e.add(v, one);
    }
    for v in avoid.into_iter().flatten() {
        e.add(v, -one);
    }
    model.add_constraint("depot", e, Sense::Ge, T::zero());

    for j in 0..m {
        let a = t.window.aisle(j);
        // parity: only one-each configurations and a pass add odd degree
        let pi = model.binary(format!("{ID}.pi[{a}]"));
        let mut e = LinExpr::new().plus(cv.pass[j], one);
        e.add_opt(at(&cv.x02, left(j)), one);
        e.add_opt(at(&cv.x02, Some(j)), one);
        e.add(pi, -T::from_int(2));
        model.add_constraint(format!("parity[{a}]"), e, Sense::Eq, T::zero());

        // two components arise when both-twice follows a gap not using both cross-aisles
        let mut e = LinExpr::new();
        e.add_opt(at(&cv.both, Some(j)), one);
        e.add_opt(at(&cv.x02, left(j)), -one);
        e.add_opt(at(&cv.both, left(j)), -one);
        e.add(cv.tau[j], -one);
        model.add_constraint(format!("components[{a}]"), e, Sense::Le, T::zero());

        if j > 0 {
            let mut e = LinExpr::new().plus(cv.tau[j - 1], one).plus(cv.tau[j], -one);
            e.add_opt(at(&cv.x02, Some(j)), -one);
            model.add_constraint(format!("propagate[{a}]"), e, Sense::Le, T::zero());
        }

        let mut e = LinExpr::new().plus(cv.tau[j], one);
        e.add_opt(at(&cv.both, Some(j)), -one);
        model.add_constraint(format!("tau_both[{a}]"), e, Sense::Le, T::zero());
    }
}
