//! Edge-connectivity model for single- and two-block layouts.
//!
//! Horizontal edges are chosen per gap and cross-aisle, vertical travel is a
//! full pass of a subaisle or a doubled segment between consecutive
//! positions, and continuous connectivity variables propagate which
//! cross-aisles are joined from left to right.

use crate::instance::{Instance, ScatteredInstance};
use crate::mip::{LinExpr, MipModel, Sense, VarId};
use crate::scalar::Scalar;
use crate::warehouse::CostModel;

use super::common::{add_selection, at_least_visit, Selection, Target};
use super::{FormulationError, FormulationKind};

pub const ID: &str = "ec";

/// Switches for the two constraint families that only tighten the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EcOptions {
    /// At most one of the single and double edge per gap and cross-aisle.
    pub exclusive_edges: bool,
    /// An even number of horizontal edges per gap.
    pub even_gaps: bool,
}

impl Default for EcOptions {
    fn default() -> Self {
        EcOptions {
            exclusive_edges: true,
            even_gaps: true,
        }
    }
}

impl EcOptions {
    pub fn without_optional() -> Self {
        EcOptions {
            exclusive_edges: false,
            even_gaps: false,
        }
    }
}

pub fn build_ec_sprp<T: Scalar>(
    instance: &Instance<T>,
    costs: &CostModel<T>,
    options: EcOptions,
) -> Result<MipModel<T>, FormulationError> {
    FormulationKind::Ec.check_layout(&instance.layout)?;
    let t = Target::sprp(instance, costs)?;
    Ok(build(&t, options))
}

pub fn build_ec_sprp_ss<T: Scalar>(
    instance: &ScatteredInstance<T>,
    costs: &CostModel<T>,
    options: EcOptions,
) -> Result<MipModel<T>, FormulationError> {
    FormulationKind::Ec.check_layout(&instance.layout)?;
    let t = Target::scattered(instance, costs)?;
    Ok(build(&t, options))
}

/// Cross-aisle pairs whose connection is tracked.
pub fn pairs(num_crosses: usize) -> &'static [(usize, usize)] {
    if num_crosses == 3 {
        &[(0, 1), (1, 2), (0, 2)]
    } else {
        &[(0, 1)]
    }
}

fn pair_index(num_crosses: usize, k: usize, k2: usize) -> usize {
    let key = (k.min(k2), k.max(k2));
    pairs(num_crosses).iter().position(|&p| p == key).expect("known pair")
}

pub(crate) struct EcVars {
    pub single: Vec<Vec<VarId>>,
    pub double: Vec<Vec<VarId>>,
    pub pass: Vec<Vec<VarId>>,
    pub p: Vec<Vec<VarId>>,
    pub q: Vec<Vec<VarId>>,
    /// Segment from the middle cross-aisle of the depot aisle toward the
    /// depot side, two-block only.
    pub pseudo: Option<VarId>,
    pub r: Vec<Vec<VarId>>,
    pub rho: Vec<Vec<Option<VarId>>>,
}

impl EcVars {
    /// Edge variables of gap `g` on cross `k`; empty outside the window.
    fn h(&self, g: Option<usize>, k: usize) -> Vec<VarId> {
        match g.filter(|&g| g < self.single.len()) {
            Some(g) => vec![self.single[g][k], self.double[g][k]],
            None => Vec::new(),
        }
    }
}

fn add_h<T: Scalar>(e: &mut LinExpr<T>, vars: Vec<VarId>, coef: T) {
    for v in vars {
        e.add(v, coef);
    }
}

fn build<T: Scalar>(t: &Target<'_, T>, options: EcOptions) -> MipModel<T> {
    let mut model = MipModel::new(ID, t.id);
    let sel = t.scattered.map(|_| add_selection(&mut model, t, ID));
    let v = build_ec_core(&mut model, t, options, sel.as_ref());
    add_previous_aisle(&mut model, t, &v);
    if t.layout.is_two_block() {
        add_two_block_connectivity(&mut model, t, &v, sel.as_ref());
    } else {
        add_single_block_connectivity(&mut model, t, &v, sel.as_ref());
    }
    model
}

fn left(j: usize) -> Option<usize> {
    j.checked_sub(1)
}

pub(crate) fn build_ec_core<T: Scalar>(
    model: &mut MipModel<T>,
    t: &Target<'_, T>,
    options: EcOptions,
    sel: Option<&Selection>,
) -> EcVars {
    let m = t.m();
    let l = t.l();
    let nk = t.layout.num_crosses;
    let nb = t.layout.num_blocks();
    let theta = t.layout.depot_cross;
    let one = T::one();
    let two = T::from_int(2);

    let mut single = Vec::new();
    let mut double = Vec::new();
    for g in 0..m - 1 {
        let a = t.window.aisle(g);
        let c = t.gap_cost(g);
        let mut s = Vec::new();
        let mut d = Vec::new();
        for k in 0..nk {
            let x = model.binary(format!("{ID}.xs[{a},{k}]"));
            model.set_objective(x, c);
            let y = model.binary(format!("{ID}.xd[{a},{k}]"));
            model.set_objective(y, two * c);
            s.push(x);
            d.push(y);
        }
        single.push(s);
        double.push(d);
    }

    let mut pass = Vec::new();
    let mut p = Vec::new();
    let mut q = Vec::new();
    for j in 0..m {
        let a = t.window.aisle(j);
        let row: Vec<VarId> = (0..nb)
            .map(|b| {
                let v = model.binary(format!("{ID}.pass[{a},{b}]"));
                model.set_objective(v, t.costs.subaisle_cost);
                v
            })
            .collect();
        pass.push(row);
        let mut ps = Vec::new();
        let mut qs = Vec::new();
        for pos in t.positions(j) {
            let pv = model.binary(format!("{ID}.p[{a},{}]", pos.cell));
            model.set_objective(pv, pos.segment_from_below);
            let qv = model.binary(format!("{ID}.q[{a},{}]", pos.cell));
            model.set_objective(qv, pos.segment_from_above);
            ps.push(pv);
            qs.push(qv);
        }
        p.push(ps);
        q.push(qs);
    }

    let pseudo = match t.costs.middle[t.layout.depot_aisle] {
        Some((down, up)) if nb == 2 => {
            let a = t.layout.depot_aisle;
            let v = if theta == 0 {
                let v = model.binary(format!("{ID}.pm[{a}]"));
                model.set_objective(v, down);
                v
            } else {
                let v = model.binary(format!("{ID}.qm[{a}]"));
                model.set_objective(v, up);
                v
            };
            Some(v)
        }
        _ => None,
    };

    let mut v = EcVars {
        single,
        double,
        pass,
        p,
        q,
        pseudo,
        r: Vec::new(),
        rho: Vec::new(),
    };

    if options.exclusive_edges {
        for g in 0..m - 1 {
            for k in 0..nk {
                let e = LinExpr::new().plus(v.single[g][k], one).plus(v.double[g][k], one);
                model.add_constraint(format!("exclusive[{},{k}]", t.window.aisle(g)), e, Sense::Le, one);
            }
        }
    }

    let layout = t.layout;
    for j in 0..m {
        let a = t.window.aisle(j);
        let positions = t.positions(j);
        for (i, pos) in positions.iter().enumerate() {
            let b = layout.block_of(pos.cell);
            let e = LinExpr::new().plus(v.pass[j][b], one).plus(v.p[j][i], one).plus(v.q[j][i], one);
            at_least_visit(model, format!("visit[{a},{}]", pos.cell), e, sel.map(|s| s.visit[j][i]), Sense::Eq);
        }
        // chains within a block
        for i in 1..positions.len() {
            if layout.block_of(positions[i].cell) != layout.block_of(positions[i - 1].cell) {
                continue;
            }
            let c = positions[i].cell;
            let e = LinExpr::new().plus(v.p[j][i], one).plus(v.p[j][i - 1], -one);
            model.add_constraint(format!("chain_p[{a},{c}]"), e, Sense::Le, T::zero());
            let e = LinExpr::new().plus(v.q[j][i - 1], one).plus(v.q[j][i], -one);
            model.add_constraint(format!("chain_q[{a},{c}]"), e, Sense::Le, T::zero());
        }
        if j == l {
            if let Some(pm) = v.pseudo {
                if theta == 0 {
                    if let Some(i) = positions.iter().rposition(|pos| layout.block_of(pos.cell) == 0) {
                        let e = LinExpr::new().plus(pm, one).plus(v.p[j][i], -one);
                        model.add_constraint(format!("chain_pm[{a}]"), e, Sense::Le, T::zero());
                    }
                } else if let Some(i) = positions.iter().position(|pos| layout.block_of(pos.cell) == 1) {
                    let e = LinExpr::new().plus(pm, one).plus(v.q[j][i], -one);
                    model.add_constraint(format!("chain_qm[{a}]"), e, Sense::Le, T::zero());
                }
            }
        }
        // the outermost segment of a block needs a horizontal edge at its cross-aisle
        for b in 0..nb {
            let Some(lo) = positions.iter().position(|pos| layout.block_of(pos.cell) == b) else {
                continue;
            };
            let hi = positions.iter().rposition(|pos| layout.block_of(pos.cell) == b).expect("nonempty block");
            for (k, seg, tag) in [(b, v.p[j][lo], "p"), (b + 1, v.q[j][hi], "q")] {
                if j == l && k == theta {
                    continue;
                }
                let mut e = LinExpr::new();
                add_h(&mut e, v.h(left(j), k), one);
                add_h(&mut e, v.h(Some(j), k), one);
                if j == l && k == 1 && nb == 2 {
                    let toward_depot = if theta == 0 { tag == "p" } else { tag == "q" };
                    if toward_depot {
                        e.add_opt(v.pseudo, one);
                    }
                }
                e.add(seg, -one);
                model.add_constraint(format!("link_{tag}[{a},{k}]"), e, Sense::Ge, T::zero());
            }
        }
    }

    for g in 0..m - 1 {
        let a = t.window.aisle(g);
        if options.even_gaps {
            let lb = if sel.is_some() { 0 } else { 1 };
            let eta = model.integer(format!("{ID}.eta[{a}]"), lb, nk as i64);
            let mut e = LinExpr::new();
            for k in 0..nk {
                e.add(v.single[g][k], one);
                e.add(v.double[g][k], two);
            }
            e.add(eta, -two);
            model.add_constraint(format!("even[{a}]"), e, Sense::Eq, T::zero());
        } else if sel.is_none() {
            let mut e = LinExpr::new();
            for k in 0..nk {
                add_h(&mut e, v.h(Some(g), k), one);
            }
            model.add_constraint(format!("gap_used[{a}]"), e, Sense::Ge, one);
        }
    }

    // depot inclusion: any horizontal edge at the depot aisle implies one at the depot cross
    for k in (0..nk).filter(|&k| k != theta) {
        for g in [left(l), Some(l)] {
            let other = v.h(g, k);
            if other.is_empty() {
                continue;
            }
            for edge in other {
                let mut e = LinExpr::new();
                add_h(&mut e, v.h(left(l), theta), one);
                add_h(&mut e, v.h(Some(l), theta), one);
                e.add(edge, -one);
                model.add_constraint(format!("depot[{k}]"), e, Sense::Ge, T::zero());
            }
        }
    }

    for j in 0..m {
        let a = t.window.aisle(j);
        for k in 0..nk {
            let pi = model.integer(format!("{ID}.pi[{a},{k}]"), 0, 2);
            let mut e = LinExpr::new();
            if j + 1 < m {
                e.add(v.single[j][k], one);
            }
            if j > 0 {
                e.add(v.single[j - 1][k], one);
            }
            if k > 0 {
                e.add(v.pass[j][k - 1], one);
            }
            if k < nb {
                e.add(v.pass[j][k], one);
            }
            e.add(pi, -two);
            model.add_constraint(format!("parity[{a},{k}]"), e, Sense::Eq, T::zero());
        }
    }

    if let Some(s) = sel {
        for g in 0..m - 1 {
            let act = if g >= l { s.active[g + 1] } else { s.active[g] };
            let a = t.window.aisle(g);
            let mut total = LinExpr::new();
            for k in 0..nk {
                let mut e = LinExpr::new();
                add_h(&mut e, v.h(Some(g), k), one);
                total.extend(&e, one);
                e.add(act, -one);
                model.add_constraint(format!("gap_active_ub[{a},{k}]"), e, Sense::Le, T::zero());
            }
            total.add(act, -one);
            model.add_constraint(format!("gap_active_lb[{a}]"), total, Sense::Ge, T::zero());
        }
    }

    let zero = T::zero();
    for j in 0..m {
        let a = t.window.aisle(j);
        let row: Vec<VarId> = pairs(nk)
            .iter()
            .map(|&(k, k2)| model.continuous(format!("{ID}.r[{a},{k},{k2}]"), zero, one))
            .collect();
        v.r.push(row);
        let rho: Vec<Option<VarId>> = pairs(nk)
            .iter()
            .map(|&(k, k2)| (j > 0).then(|| model.continuous(format!("{ID}.rho[{a},{k},{k2}]"), zero, one)))
            .collect();
        v.rho.push(rho);
    }
    v
}

/// A previous-aisle connection needs both crosses joined at the previous
/// aisle and a horizontal edge from each.
fn add_previous_aisle<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, v: &EcVars) {
    let nk = t.layout.num_crosses;
    let one = T::one();
    for j in 1..t.m() {
        let a = t.window.aisle(j);
        for (pi, &(k, k2)) in pairs(nk).iter().enumerate() {
            let rho = v.rho[j][pi].expect("rho exists for j > 0");
            for kk in [k, k2] {
                let mut e = LinExpr::new().plus(rho, one);
                add_h(&mut e, v.h(Some(j - 1), kk), -one);
                model.add_constraint(format!("rho_edge[{a},{k},{k2},{kk}]"), e, Sense::Le, T::zero());
            }
            let e = LinExpr::new().plus(rho, one).plus(v.r[j - 1][pi], -one);
            model.add_constraint(format!("rho_r[{a},{k},{k2}]"), e, Sense::Le, T::zero());
        }
    }
}

/// In the last aisle, crosses that both have a left edge must be connected.
fn add_last_aisle<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, v: &EcVars) {
    let m = t.m();
    if m < 2 {
        return;
    }
    let nk = t.layout.num_crosses;
    let one = T::one();
    for (pi, &(k, k2)) in pairs(nk).iter().enumerate() {
        let mut e = LinExpr::new();
        add_h(&mut e, v.h(Some(m - 2), k), one);
        add_h(&mut e, v.h(Some(m - 2), k2), one);
        e.add(v.r[m - 1][pi], -one);
        model.add_constraint(format!("last[{k},{k2}]"), e, Sense::Le, one);
    }
}

/// Scattered storage lets the tour end at an interior aisle right of the
/// depot. For such an aisle the next-aisle requirements are lifted and the
/// crosses with a left edge must be connected as in a last aisle.
fn add_tour_end<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, v: &EcVars, s: &Selection, j: usize) {
    let nk = t.layout.num_crosses;
    let one = T::one();
    let a = t.window.aisle(j);
    for (pi, &(k, k2)) in pairs(nk).iter().enumerate() {
        let mut e = LinExpr::new();
        add_h(&mut e, v.h(Some(j - 1), k), one);
        add_h(&mut e, v.h(Some(j - 1), k2), one);
        e.add(s.active[j + 1], -one);
        e.add(v.r[j][pi], -one);
        model.add_constraint(format!("end[{a},{k},{k2}]"), e, Sense::Le, one);
    }
}

/// `1 - active[j+1]` on the left side of next-aisle constraints, when the
/// tour may end at `j`.
fn end_slack<T: Scalar>(e: &mut LinExpr<T>, t: &Target<'_, T>, s: Option<&Selection>, j: usize) -> T {
    match s {
        Some(s) if j >= t.l() => {
            e.add(s.active[j + 1], -T::one());
            -T::one()
        }
        _ => T::zero(),
    }
}

pub(crate) fn add_single_block_connectivity<T: Scalar>(
    model: &mut MipModel<T>,
    t: &Target<'_, T>,
    v: &EcVars,
    sel: Option<&Selection>,
) {
    let m = t.m();
    let one = T::one();
    for j in 0..m {
        let a = t.window.aisle(j);
        let mut e = LinExpr::new().plus(v.r[j][0], one).plus(v.pass[j][0], -one);
        e.add_opt(v.rho[j][0], -one);
        model.add_constraint(format!("r_ub[{a}]"), e, Sense::Le, T::zero());
    }
    for j in 1..m.saturating_sub(1) {
        let a = t.window.aisle(j);
        for (k, k2) in [(0, 1), (1, 0)] {
            let mut e = LinExpr::new().plus(v.r[j][0], one);
            add_h(&mut e, v.h(Some(j), k), one);
            add_h(&mut e, v.h(Some(j - 1), k), -one);
            let rhs = end_slack(&mut e, t, sel, j);
            model.add_constraint(format!("next_r[{a},{k}]"), e, Sense::Ge, rhs);

            let mut e = LinExpr::new();
            add_h(&mut e, v.h(Some(j), k2), one);
            add_h(&mut e, v.h(Some(j), k), one);
            add_h(&mut e, v.h(Some(j - 1), k), -one);
            let rhs = end_slack(&mut e, t, sel, j);
            model.add_constraint(format!("next_edge[{a},{k}]"), e, Sense::Ge, rhs);
        }
        if let Some(s) = sel.filter(|_| j >= t.l()) {
            add_tour_end(model, t, v, s, j);
        }
    }
    add_last_aisle(model, t, v);
}

pub(crate) fn add_two_block_connectivity<T: Scalar>(
    model: &mut MipModel<T>,
    t: &Target<'_, T>,
    v: &EcVars,
    sel: Option<&Selection>,
) {
    let m = t.m();
    let nk = t.layout.num_crosses;
    let one = T::one();
    let idx = |k, k2| pair_index(nk, k, k2);
    for j in 0..m {
        let a = t.window.aisle(j);
        let r = &v.r[j];
        let rho = &v.rho[j];
        // adjacent crosses: directly, through the previous aisle, or around the third cross
        for (k, k2, own, other, far) in [(0, 1, 0, 1, 2), (1, 2, 1, 0, 0)] {
            let mut e = LinExpr::new().plus(r[idx(k, k2)], one).plus(v.pass[j][own], -one);
            e.add_opt(rho[idx(k, k2)], -one);
            let mut e2 = e.clone();
            e.add(v.pass[j][other], -one);
            model.add_constraint(format!("r_ub_pass[{a},{k},{k2}]"), e, Sense::Le, T::zero());
            e2.add_opt(rho[idx(k.min(far), k2.max(far))], -one);
            model.add_constraint(format!("r_ub_prev[{a},{k},{k2}]"), e2, Sense::Le, T::zero());
        }
        // outer crosses: through the previous aisle or via the middle cross
        for via in [idx(1, 2), idx(0, 1)] {
            let mut e = LinExpr::new().plus(r[idx(0, 2)], one).plus(r[via], -one);
            e.add_opt(rho[idx(0, 2)], -one);
            model.add_constraint(format!("r_ub_outer[{a},{via}]"), e, Sense::Le, T::zero());
        }
    }

    let zero = T::zero();
    for j in 0..m.saturating_sub(1) {
        let a = t.window.aisle(j);
        let mut z = vec![vec![None; nk]; nk];
        for k in 0..nk {
            for k2 in (0..nk).filter(|&k2| k2 != k) {
                let zv = model.continuous(format!("{ID}.z[{a},{k},{k2}]"), zero, one);
                let e = LinExpr::new().plus(zv, one).plus(v.r[j][idx(k, k2)], -one);
                model.add_constraint(format!("z_r[{a},{k},{k2}]"), e, Sense::Le, zero);
                let mut e = LinExpr::new().plus(zv, one);
                add_h(&mut e, v.h(Some(j), k2), -one);
                model.add_constraint(format!("z_edge[{a},{k},{k2}]"), e, Sense::Le, zero);
                z[k][k2] = Some(zv);
            }
        }
        if j == 0 {
            continue;
        }
        for k in 0..nk {
            let mut e = LinExpr::new();
            for zv in z[k].iter().flatten() {
                e.add(*zv, one);
            }
            add_h(&mut e, v.h(Some(j), k), one);
            add_h(&mut e, v.h(Some(j - 1), k), -one);
            let rhs = end_slack(&mut e, t, sel, j);
            model.add_constraint(format!("next[{a},{k}]"), e, Sense::Ge, rhs);
        }
        if let Some(s) = sel.filter(|_| j >= t.l()) {
            add_tour_end(model, t, v, s, j);
        }
    }
    add_last_aisle(model, t, v);
}
