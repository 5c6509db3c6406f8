//! CPLEX LP text export, for inspecting models with external tools.

use std::fmt::Write;

use crate::scalar::Scalar;

use super::model::{MipModel, Sense, VarKind};

fn lp_name(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            '[' | ']' | ',' | ' ' => '_',
            c => c,
        })
        .collect()
}

fn write_terms<T: Scalar>(out: &mut String, model: &MipModel<T>, terms: impl Iterator<Item = (usize, T)>) {
    let mut first = true;
    for (j, c) in terms {
        let sign = if c < T::zero() { " -" } else if first { "" } else { " +" };
        let _ = write!(out, "{sign} {} {}", c.abs(), lp_name(&model.vars()[j].name));
        first = false;
    }
    if first {
        out.push_str(" 0");
    }
}

pub fn to_lp<T: Scalar>(model: &MipModel<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ {} {}", model.meta.formulation, model.meta.instance);
    out.push_str("Minimize\n obj:");
    write_terms(
        &mut out,
        model,
        model
            .objective()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| (j, c)),
    );
    out.push_str("\nSubject To\n");
    for (i, c) in model.constraints().iter().enumerate() {
        let _ = write!(out, " c{i}_{}:", lp_name(&c.name));
        write_terms(&mut out, model, c.terms.iter().map(|&(v, k)| (v.0, k)));
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        let _ = writeln!(out, " {op} {}", c.rhs);
    }
    out.push_str("Bounds\n");
    for v in model.vars() {
        match v.ub {
            Some(u) => {
                let _ = writeln!(out, " {} <= {} <= {}", v.lb, lp_name(&v.name), u);
            }
            None => {
                let _ = writeln!(out, " {} >= {}", lp_name(&v.name), v.lb);
            }
        }
    }
    for (header, kind) in [("Binaries", VarKind::Binary), ("Generals", VarKind::Integer)] {
        let names: Vec<String> = model
            .vars()
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| lp_name(&v.name))
            .collect();
        if !names.is_empty() {
            let _ = writeln!(out, "{header}\n {}", names.join(" "));
        }
    }
    out.push_str("End\n");
    out
}
