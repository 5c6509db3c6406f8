use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pickroute::formulation::{
    build_ec_sprp, solve_scattered, solve_sprp, sprp_costs, EcOptions, FormulationKind, PipelineError, Solved,
};
use pickroute::instance::{generate_sprp, generate_sprp_ss, GeneratorConfig, Instance, ScatteredInstance, SupplyEntry};
use pickroute::mip::{solve, BackendHandle, LinExpr, Limits, MipModel, Sense, SolveError, Status, INTEGRALITY_TOL};
use pickroute::oracle::{solve_sprp_oracle, solve_sprp_ss_oracle};
use pickroute::tour::{euler_tour, selected_positions, validate, walk_length};
use pickroute::warehouse::{build_graph, Layout};

fn highs() -> Limits {
    Limits::default()
}

/// Checks everything a returned optimum must satisfy and gives its objective.
fn audit(s: &Solved<i64>, layout: &Layout<i64>, required: &[(usize, usize)]) -> i64 {
    assert!(s.is_optimal(), "{} {:?}", s.formulation, s.status);
    assert!(s.solution.violations(&s.model).is_empty(), "{:?}", s.solution.violations(&s.model));
    let g = build_graph(layout).unwrap();
    let sub = s.subgraph.as_ref().unwrap();
    let report = validate(&g, sub, required);
    assert!(report.is_valid(), "{} {report:?}", s.formulation);
    let walk = euler_tour(&g, sub).unwrap();
    let objective = s.objective.unwrap();
    assert_eq!(walk_length(&g, &walk), objective);
    objective
}

fn fractional_connectivity(s: &Solved<i64>) -> Vec<(String, f64)> {
    s.model
        .vars()
        .iter()
        .zip(&s.solution.values)
        .filter(|(v, _)| [".r[", ".rho[", ".z["].iter().any(|t| v.name.contains(t)))
        .filter(|(_, x)| (*x - x.round()).abs() > INTEGRALITY_TOL)
        .map(|(v, &x)| (v.name.clone(), x))
        .collect()
}

#[test]
fn generated_instances_agree_everywhere() {
    for seed in 0..24u64 {
        for two in [false, true] {
            let mut cfg = GeneratorConfig::new(1, 2 + (seed % 4) as usize, 3 + (seed % 6) as usize, seed).with_positions(10);
            if two {
                cfg = cfg.two_block();
            }
            let inst = generate_sprp::<i64>(&cfg).unwrap();
            let picks: Vec<_> = inst.picks().collect();
            let best = solve_sprp_oracle(&inst).unwrap().length;
            for kind in FormulationKind::ALL.into_iter().filter(|k| k.supports(&inst.layout)) {
                let s = solve_sprp(&inst, kind, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
                assert_eq!(audit(&s, &inst.layout, &picks), best, "{kind} {}", inst.id);
                assert!(fractional_connectivity(&s).is_empty(), "{}", inst.id);
            }
        }
    }
}

#[test]
fn scattered_optima_match_the_exhaustive_oracle() {
    for seed in 0..24u64 {
        for two in [false, true] {
            let mut cfg = GeneratorConfig::new(1 + (seed % 3) as u32, 2 + (seed % 3) as usize, 2 + (seed % 4) as usize, seed)
                .with_positions(6);
            if two {
                cfg = cfg.two_block();
            }
            let inst = generate_sprp_ss::<i64>(&cfg).unwrap();
            let best = solve_sprp_ss_oracle(&inst).unwrap().length;
            for kind in FormulationKind::ALL.into_iter().filter(|k| k.supports(&inst.layout)) {
                let s = solve_scattered(&inst, kind, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
                let chosen = selected_positions(&s.model, &s.solution);
                assert_eq!(audit(&s, &inst.layout, &chosen), best, "{kind} {}", inst.id);
                assert!(fractional_connectivity(&s).is_empty(), "{}", inst.id);
                for (&sku, &b) in &inst.demand {
                    let got: u32 = inst
                        .candidates_for(sku)
                        .iter()
                        .filter(|(a, c, _)| chosen.contains(&(*a, *c)))
                        .map(|e| e.2)
                        .sum();
                    assert!(got >= b);
                }
            }
        }
    }
}

#[test]
fn configuration_parity_holds_at_every_aisle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let cfg = GeneratorConfig::new(1, rng.gen_range(2..6), rng.gen_range(2..8), rng.gen()).with_positions(8);
        let inst = generate_sprp::<i64>(&cfg).unwrap();
        let s = solve_sprp(&inst, FormulationKind::Cc, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
        let on = |name: String| s.model.var_id(&name).is_some_and(|v| s.solution.is_set(v));
        for a in 0..inst.layout.num_aisles {
            let count = [
                on(format!("cc.pass[{a}]")),
                a > 0 && on(format!("cc.x02[{}]", a - 1)),
                on(format!("cc.x02[{a}]")),
            ]
            .iter()
            .filter(|&&b| b)
            .count();
            assert_eq!(count % 2, 0, "{} aisle {a}", inst.id);
        }
    }
}

#[test]
fn backends_agree_on_tiny_models() {
    let mut compared = 0;
    for seed in 0..40u64 {
        let cfg = GeneratorConfig::new(1, 2, 1 + (seed % 3) as usize, seed).with_positions(2);
        let inst = generate_sprp::<i64>(&cfg).unwrap();
        for kind in FormulationKind::ALL {
            let exact = match solve_sprp(&inst, kind, BackendHandle::Enumerate, &Limits::default(), EcOptions::default()) {
                Ok(s) => s,
                Err(PipelineError::Solve(SolveError::TooLarge { .. })) => continue,
                Err(e) => panic!("{e}"),
            };
            let h = solve_sprp(&inst, kind, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
            assert_eq!(exact.objective, h.objective, "{kind} {}", inst.id);
            compared += 1;
        }
    }
    assert!(compared > 0);
}

#[test]
fn unique_storage_degenerates_to_the_standard_problem() {
    for seed in 0..20u64 {
        let cfg = GeneratorConfig::new(1, 2 + (seed % 3) as usize, 2 + (seed % 5) as usize, seed).with_positions(6);
        let ss = generate_sprp_ss::<i64>(&cfg).unwrap();
        let sprp = ss.as_unique_sprp().expect("alpha one stores every sku once");
        for kind in FormulationKind::ALL {
            let a = solve_scattered(&ss, kind, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
            let b = solve_sprp(&sprp, kind, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
            assert_eq!(a.objective, b.objective, "{kind} {}", ss.id);
        }
    }
}

#[test]
fn duplicate_supply_never_hurts() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for _ in 0..20 {
        let cfg = GeneratorConfig::new(1, rng.gen_range(2..5), rng.gen_range(2..6), rng.gen()).with_positions(6);
        let base = generate_sprp_ss::<i64>(&cfg).unwrap();
        let mut more = base.clone();
        let sku = *base.demand.keys().next().unwrap();
        let (aisle, cell) = (rng.gen_range(0..cfg.num_aisles), rng.gen_range(0..6));
        if base.supply.iter().any(|e| (e.aisle, e.cell, e.sku) == (aisle, cell, sku)) {
            continue;
        }
        checked += 1;
        more.supply.push(SupplyEntry { aisle, cell, sku, qty: 1 });
        let before = solve_scattered(&base, FormulationKind::Ec, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
        let after = solve_scattered(&more, FormulationKind::Ec, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
        assert!(after.objective.unwrap() <= before.objective.unwrap());
    }
    assert!(checked > 10);
}

const CONNECTIVITY_ROWS: [&str; 6] = ["rho_", "last[", "end[", "r_ub", "next", "z_"];

/// Copy of `model` without the rows whose names start with one of `drop`.
fn without_rows(model: &MipModel<i64>, drop: &[&str]) -> MipModel<i64> {
    let mut out = MipModel::new(model.meta.formulation.clone(), model.meta.instance.clone());
    for (v, &c) in model.vars().iter().zip(model.objective()) {
        let id = out.add_var(v.name.clone(), v.kind, v.lb, v.ub);
        out.set_objective(id, c);
    }
    for c in model.constraints().iter().filter(|c| !drop.iter().any(|d| c.name.starts_with(d))) {
        out.add_constraint(c.name.clone(), LinExpr { terms: c.terms.clone() }, c.sense, c.rhs);
    }
    out
}

#[test]
fn two_disjoint_loops_are_cut_off() {
    // a doubled bottom walk serving both picks and a detached doubled top walk
    let layout = Layout::<i64>::single_block(4, 3);
    let inst = Instance::new("loops", layout, [(0, 1), (3, 1)]).unwrap();
    let mut model = build_ec_sprp(&inst, &sprp_costs(&inst).unwrap(), EcOptions::default()).unwrap();
    let fix = |model: &mut MipModel<i64>, name: &str, value: i64| {
        let v = model.var_id(name).unwrap_or_else(|| panic!("{name}"));
        model.add_constraint(format!("fix_{name}"), LinExpr::new().plus(v, 1), Sense::Eq, value);
    };
    for g in 0..3 {
        fix(&mut model, &format!("ec.xd[{g},0]"), 1);
        fix(&mut model, &format!("ec.xd[{g},1]"), 1);
    }
    for a in 0..4 {
        fix(&mut model, &format!("ec.pass[{a},0]"), 0);
    }
    let sol = solve(&model, BackendHandle::Highs, &highs()).unwrap();
    assert_eq!(sol.status, Status::Infeasible);

    let relaxed = without_rows(&model, &CONNECTIVITY_ROWS);
    let sol = solve(&relaxed, BackendHandle::Highs, &highs()).unwrap();
    assert_eq!(sol.status, Status::Optimal, "the loops are excluded by connectivity alone");
}

#[test]
fn depot_aisle_only_two_block_uses_the_middle_cross() {
    // picks on both sides of the middle cross, depot at the bottom
    let layout = Layout::<i64>::two_block(3, 3).with_depot(1, 0);
    let inst = Instance::new("fig", layout, [(1, 1), (1, 5)]).unwrap();
    let best = solve_sprp_oracle(&inst).unwrap().length;
    let s = solve_sprp(&inst, FormulationKind::Ec, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
    assert_eq!(audit(&s, &inst.layout, &[(1, 1), (1, 5)]), best);
    let g = build_graph(&inst.layout).unwrap();
    let middle = g.cross_vertex(1, 1);
    assert!(s.subgraph.as_ref().unwrap().degree(&g, middle) > 0);
}

#[test]
fn scattered_single_block_from_hand_data() {
    let layout = Layout::<i64>::single_block(3, 4).with_depot(0, 0);
    let supply = [(0, 3, 1), (2, 0, 1), (1, 2, 2), (2, 2, 2)]
        .map(|(aisle, cell, sku)| SupplyEntry { aisle, cell, sku, qty: 1 });
    let inst = ScatteredInstance::unit_demand("hand", layout, supply).unwrap();
    let best = solve_sprp_ss_oracle(&inst).unwrap();
    for kind in FormulationKind::ALL {
        let s = solve_scattered(&inst, kind, BackendHandle::Highs, &highs(), EcOptions::default()).unwrap();
        assert_eq!(s.objective, Some(best.length), "{kind}");
    }
}
