//! Variables and constraint families shared by the two configuration-based
//! formulations.

use crate::mip::{LinExpr, MipModel, Sense, VarId};
use crate::scalar::Scalar;

use super::common::{at_least_visit, Selection, Target};

/// Configuration variables in local aisle indices. Horizontal variables
/// exist for gaps `0..m-1` only.
pub(crate) struct ConfigVars {
    pub x00: Vec<VarId>,
    pub x22: Vec<VarId>,
    pub x02: Vec<VarId>,
    pub both: Vec<VarId>,
    pub pass: Vec<VarId>,
    pub p: Vec<Vec<VarId>>,
    pub q: Vec<Vec<VarId>>,
    pub tau: Vec<VarId>,
}

impl ConfigVars {
    pub fn gaps(&self) -> usize {
        self.x00.len()
    }

    pub fn at(v: &[VarId], g: Option<usize>) -> Option<VarId> {
        g.and_then(|g| v.get(g).copied())
    }

    /// Configurations of gap `g` that use the bottom cross-aisle.
    pub fn bottom(&self, g: Option<usize>) -> [Option<VarId>; 3] {
        [Self::at(&self.x00, g), Self::at(&self.x02, g), Self::at(&self.both, g)]
    }

    pub fn top(&self, g: Option<usize>) -> [Option<VarId>; 3] {
        [Self::at(&self.x22, g), Self::at(&self.x02, g), Self::at(&self.both, g)]
    }

    pub fn all(&self, g: usize) -> [VarId; 4] {
        [self.x00[g], self.x22[g], self.x02[g], self.both[g]]
    }
}

pub(crate) fn left(j: usize) -> Option<usize> {
    j.checked_sub(1)
}

pub(crate) fn add_config_vars<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, f: &str) -> ConfigVars {
    let m = t.m();
    let two = T::from_int(2);
    let mut cv = ConfigVars {
        x00: Vec::new(),
        x22: Vec::new(),
        x02: Vec::new(),
        both: Vec::new(),
        pass: Vec::new(),
        p: Vec::new(),
        q: Vec::new(),
        tau: Vec::new(),
    };
    for g in 0..m - 1 {
        let a = t.window.aisle(g);
        let c = t.gap_cost(g);
        for (vec, tag, coef) in [
            (&mut cv.x00, "x00", two * c),
            (&mut cv.x22, "x22", two * c),
            (&mut cv.x02, "x02", two * c),
            (&mut cv.both, "both", two * two * c),
        ] {
            let v = model.binary(format!("{f}.{tag}[{a}]"));
            model.set_objective(v, coef);
            vec.push(v);
        }
    }
    for j in 0..m {
        let a = t.window.aisle(j);
        let pass = model.binary(format!("{f}.pass[{a}]"));
        model.set_objective(pass, t.costs.subaisle_cost);
        cv.pass.push(pass);
        let mut ps = Vec::new();
        let mut qs = Vec::new();
        for pos in t.positions(j) {
            let p = model.binary(format!("{f}.p[{a},{}]", pos.cell));
            model.set_objective(p, pos.branch_from_below);
            let q = model.binary(format!("{f}.q[{a},{}]", pos.cell));
            model.set_objective(q, pos.branch_from_above);
            ps.push(p);
            qs.push(q);
        }
        cv.p.push(ps);
        cv.q.push(qs);
    }
    for j in 0..m {
        let tau = model.binary(format!("{f}.tau[{}]", t.window.aisle(j)));
        if j == m - 1 {
            model.fix_zero(tau);
        }
        cv.tau.push(tau);
    }
    cv
}

/// One configuration per gap; in scattered storage, one per gap leading
/// to an active aisle.
pub(crate) fn add_config_sum<T: Scalar>(
    model: &mut MipModel<T>,
    t: &Target<'_, T>,
    cv: &ConfigVars,
    sel: Option<&Selection>,
) {
    let l = t.l();
    for g in 0..cv.gaps() {
        let mut e = LinExpr::new();
        for v in cv.all(g) {
            e.add(v, T::one());
        }
        let name = format!("config[{}]", t.window.aisle(g));
        match sel {
            None => model.add_constraint(name, e, Sense::Eq, T::one()),
            Some(s) => {
                let act = if g >= l { s.active[g + 1] } else { s.active[g] };
                e.add(act, -T::one());
                model.add_constraint(name, e, Sense::Eq, T::zero());
            }
        }
    }
}

/// Every required or selected position is covered by a pass or by a branch
/// reaching at least as far.
pub(crate) fn add_visit<T: Scalar>(
    model: &mut MipModel<T>,
    t: &Target<'_, T>,
    cv: &ConfigVars,
    double_pass: Option<&[VarId]>,
    sel: Option<&Selection>,
) {
    for j in 0..t.m() {
        let a = t.window.aisle(j);
        let n = cv.p[j].len();
        for i in 0..n {
            let mut e = LinExpr::new().plus(cv.pass[j], T::one());
            if let Some(dp) = double_pass {
                e.add(dp[j], T::one());
            }
            for k in i..n {
                e.add(cv.p[j][k], T::one());
            }
            for k in 0..=i {
                e.add(cv.q[j][k], T::one());
            }
            let cell = t.positions(j)[i].cell;
            at_least_visit(model, format!("visit[{a},{cell}]"), e, sel.map(|s| s.visit[j][i]), Sense::Ge);
        }
    }
}

/// Branches need a horizontal connection at their cross-aisle, except at
/// the depot cross of the depot aisle.
pub(crate) fn add_branch_links<T: Scalar>(model: &mut MipModel<T>, t: &Target<'_, T>, cv: &ConfigVars) {
    let l = t.l();
    let top = t.layout.depot_on_top();
    for j in 0..t.m() {
        let a = t.window.aisle(j);
        for (i, pos) in t.positions(j).iter().enumerate() {
            if top || j != l {
                let mut e = LinExpr::new();
                for v in cv.bottom(left(j)).into_iter().chain(cv.bottom(Some(j))).flatten() {
                    e.add(v, T::one());
                }
                e.add(cv.p[j][i], -T::one());
                model.add_constraint(format!("link_p[{a},{}]", pos.cell), e, Sense::Ge, T::zero());
            }
            if !top || j != l {
                let mut e = LinExpr::new();
                for v in cv.top(left(j)).into_iter().chain(cv.top(Some(j))).flatten() {
                    e.add(v, T::one());
                }
                e.add(cv.q[j][i], -T::one());
                model.add_constraint(format!("link_q[{a},{}]", pos.cell), e, Sense::Ge, T::zero());
            }
        }
    }
}
