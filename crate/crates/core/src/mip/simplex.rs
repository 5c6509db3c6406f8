//! Exact phase-one simplex over the rationals.
//!
//! Used by the enumeration backend to decide feasibility of the continuous
//! part of a model once every integer variable is fixed. Bland's rule keeps
//! it finite on degenerate systems.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::model::Sense;

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub coeffs: Vec<(usize, BigRational)>,
    pub sense: Sense,
    pub rhs: BigRational,
}

/// Finds a basic feasible point of `rows` with `lower <= x <= upper`, or
/// `None` when the system is infeasible.
pub fn find_feasible_point(
    lower: &[BigRational],
    upper: &[Option<BigRational>],
    rows: &[LpRow],
) -> Option<Vec<BigRational>> {
    let n = lower.len();
    // shift to y = x - lower >= 0 and turn finite upper bounds into rows
    let mut std_rows: Vec<(Vec<(usize, BigRational)>, Sense, BigRational)> = Vec::new();
    for row in rows {
        let mut rhs = row.rhs.clone();
        for (j, a) in &row.coeffs {
            rhs -= a * &lower[*j];
        }
        std_rows.push((row.coeffs.clone(), row.sense, rhs));
    }
    for (j, ub) in upper.iter().enumerate() {
        if let Some(u) = ub {
            let width = u - &lower[j];
            if width.is_negative() {
                return None;
            }
            std_rows.push((vec![(j, BigRational::one())], Sense::Le, width));
        }
    }

    let m = std_rows.len();
    if m == 0 {
        return Some(lower.to_vec());
    }
    let num_slack = std_rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let art0 = n + num_slack;
    let cols = art0 + m;
    let zero = BigRational::zero();

    let mut tab: Vec<Vec<BigRational>> = vec![vec![zero.clone(); cols + 1]; m];
    let mut slack = n;
    for (r, (coeffs, sense, rhs)) in std_rows.into_iter().enumerate() {
        for (j, a) in coeffs {
            tab[r][j] += a;
        }
        match sense {
            Sense::Le => {
                tab[r][slack] = BigRational::one();
                slack += 1;
            }
            Sense::Ge => {
                tab[r][slack] = -BigRational::one();
                slack += 1;
            }
            Sense::Eq => {}
        }
        tab[r][cols] = rhs;
        if tab[r][cols].is_negative() {
            for x in tab[r].iter_mut() {
                *x = -x.clone();
            }
        }
        tab[r][art0 + r] = BigRational::one();
    }
    let mut basis: Vec<usize> = (art0..art0 + m).collect();

    // reduced costs of the phase-one objective (sum of artificials)
    let mut obj = vec![zero.clone(); cols + 1];
    for row in &tab {
        for j in 0..art0 {
            obj[j] -= &row[j];
        }
        obj[cols] -= &row[cols];
    }

    loop {
        let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // unbounded phase-one direction cannot happen; treat as stuck
            break;
        };
        pivot(&mut tab, &mut obj, pr, enter);
        basis[pr] = enter;
    }

    if !obj[cols].is_zero() {
        return None;
    }
    let mut y = vec![zero; n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            y[b] = tab[r][cols].clone();
        }
    }
    Some(y.into_iter().zip(lower).map(|(v, l)| v + l).collect())
}

fn pivot(tab: &mut [Vec<BigRational>], obj: &mut [BigRational], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for x in tab[pr].iter_mut() {
        *x /= &p;
    }
    let prow = tab[pr].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (x, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *x -= &f * pv;
            }
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for (x, pv) in obj.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *x -= &f * pv;
            }
        }
    }
}
