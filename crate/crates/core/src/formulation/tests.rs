use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::instance::{Instance, ScatteredInstance, SupplyEntry};
use crate::mip::{BackendHandle, Limits};
use crate::oracle::{solve_sprp_oracle, solve_sprp_ss_oracle};
use crate::tour::validate;
use crate::warehouse::{build_graph, Layout};

fn random_sprp(rng: &mut ChaCha8Rng, crosses: usize, picks: usize) -> Instance<i64> {
    let m = rng.gen_range(1..=5);
    let n = rng.gen_range(2..=5);
    let top = if rng.gen_bool(0.3) { crosses - 1 } else { 0 };
    let layout = Layout::new(m, crosses, n).with_depot(rng.gen_range(0..m), top);
    let cells = layout.cells_per_aisle();
    let k = rng.gen_range(0..=picks);
    let p: Vec<_> = (0..k).map(|_| (rng.gen_range(0..m), rng.gen_range(0..cells))).collect();
    Instance::new("rand", layout, p).unwrap()
}

fn random_scattered(rng: &mut ChaCha8Rng) -> ScatteredInstance<i64> {
    let m = rng.gen_range(2..=4);
    let layout = Layout::single_block(m, rng.gen_range(2..=4)).with_depot(rng.gen_range(0..m), 0);
    let cells = layout.cells_per_aisle();
    let skus = rng.gen_range(1..=3);
    let mut supply = Vec::new();
    for sku in 0..skus {
        for _ in 0..rng.gen_range(1..=3) {
            let (aisle, cell) = (rng.gen_range(0..m), rng.gen_range(0..cells));
            if supply.iter().all(|e: &SupplyEntry| (e.aisle, e.cell) != (aisle, cell)) {
                supply.push(SupplyEntry { aisle, cell, sku, qty: 1 });
            }
        }
    }
    ScatteredInstance::unit_demand("rand-ss", layout, supply).unwrap()
}

fn check_sprp(inst: &Instance<i64>, kind: FormulationKind, options: EcOptions) -> i64 {
    let solved = solve_sprp(inst, kind, BackendHandle::Highs, &Limits::default(), options).unwrap();
    assert!(solved.is_optimal(), "{kind} on {inst:?}");
    let graph = build_graph(&inst.layout).unwrap();
    let sub = solved.subgraph.as_ref().unwrap();
    let picks: Vec<_> = inst.picks().collect();
    let report = validate(&graph, sub, &picks);
    assert!(report.is_valid(), "{kind} {report:?} on {inst:?}");
    solved.objective.unwrap()
}

#[test]
fn gs_variable_counts_match_hand_count() {
    let layout = Layout::<i64>::single_block(3, 4);
    let inst = Instance::new("count", layout, [(0, 1), (2, 0), (2, 3)]).unwrap();
    let model = build_gs_sprp(&inst, &sprp_costs(&inst).unwrap()).unwrap();
    assert_eq!(model.num_binary(), 23);
    assert_eq!(model.num_general_integer(), 6);
}

#[test]
fn cc_is_never_larger_than_gs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let inst = random_sprp(&mut rng, 2, 8);
        let costs = sprp_costs(&inst).unwrap();
        let gs = build_gs_sprp(&inst, &costs).unwrap();
        let cc = build_cc_sprp(&inst, &costs).unwrap();
        assert!(cc.num_binary() <= gs.num_binary());
        assert!(cc.num_integer() <= gs.num_integer());
        assert!(cc.num_constraints() <= gs.num_constraints());
    }
}

#[test]
fn single_block_models_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let inst = random_sprp(&mut rng, 2, 7);
        let best = solve_sprp_oracle(&inst).unwrap().length;
        for kind in FormulationKind::ALL {
            assert_eq!(check_sprp(&inst, kind, EcOptions::default()), best, "{kind} on {inst:?}");
        }
    }
}

#[test]
fn two_block_ec_matches_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let inst = random_sprp(&mut rng, 3, 7);
        let best = solve_sprp_oracle(&inst).unwrap().length;
        assert_eq!(check_sprp(&inst, FormulationKind::Ec, EcOptions::default()), best, "{inst:?}");
    }
}

#[test]
fn optional_ec_constraints_do_not_change_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let crosses = if rng.gen_bool(0.5) { 2 } else { 3 };
        let inst = random_sprp(&mut rng, crosses, 6);
        let on = check_sprp(&inst, FormulationKind::Ec, EcOptions::default());
        let off = check_sprp(&inst, FormulationKind::Ec, EcOptions::without_optional());
        assert_eq!(on, off);
    }
}

#[test]
fn scattered_models_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let inst = random_scattered(&mut rng);
        let best = solve_sprp_ss_oracle(&inst).unwrap().length;
        for kind in FormulationKind::ALL {
            let solved = solve_scattered(&inst, kind, BackendHandle::Highs, &Limits::default(), EcOptions::default())
                .unwrap();
            assert_eq!(solved.objective, Some(best), "{kind} on {inst:?}");
        }
    }
}

#[test]
fn configuration_models_reject_two_blocks() {
    let inst = Instance::new("2b", Layout::<i64>::two_block(3, 3), [(1, 1)]).unwrap();
    let costs = sprp_costs(&inst).unwrap();
    for kind in [FormulationKind::Gs, FormulationKind::Cc] {
        assert_eq!(
            build_sprp(kind, &inst, &costs, EcOptions::default()).unwrap_err(),
            FormulationError::UnsupportedLayout {
                formulation: kind,
                num_crosses: 3
            }
        );
    }
    assert!(build_ec_sprp(&inst, &costs, EcOptions::default()).is_ok());
}

#[test]
fn enumerator_agrees_on_tiny_models() {
    let inst = Instance::new("tiny", Layout::<i64>::single_block(2, 2), [(1, 0), (1, 1)]).unwrap();
    let best = solve_sprp_oracle(&inst).unwrap().length;
    for kind in FormulationKind::ALL {
        let solved = solve_sprp(&inst, kind, BackendHandle::Enumerate, &Limits::default(), EcOptions::default());
        match solved {
            Ok(s) => assert_eq!(s.objective, Some(best), "{kind}"),
            Err(PipelineError::Solve(crate::mip::SolveError::TooLarge { .. })) => {}
            Err(e) => panic!("{kind}: {e}"),
        }
    }
}

#[test]
fn two_aisle_ec_has_one_previous_aisle_layer() {
    let inst = Instance::new("m2", Layout::<i64>::single_block(2, 3), [(0, 2), (1, 1)]).unwrap();
    let model = build_ec_sprp(&inst, &sprp_costs(&inst).unwrap(), EcOptions::default()).unwrap();
    let rho: Vec<_> = model.vars().iter().filter(|v| v.name.starts_with("ec.rho[")).collect();
    assert!(!rho.is_empty());
    assert!(rho.iter().all(|v| v.name.starts_with("ec.rho[1,")));
}

#[test]
fn window_drops_empty_outer_aisles() {
    let inst = Instance::new("w", Layout::<i64>::single_block(6, 3), [(2, 1), (3, 2)]).unwrap();
    let w = Window::of(&inst.required, 0);
    assert_eq!((w.lo, w.hi), (0, 3));
    let model = build_cc_sprp(&inst, &sprp_costs(&inst).unwrap()).unwrap();
    assert!(model.var_id("cc.pass[4]").is_none());
    assert!(model.var_id("cc.pass[3]").is_some());
}

#[test]
fn kind_parses_case_insensitively() {
    assert_eq!("Ec".parse::<FormulationKind>().unwrap(), FormulationKind::Ec);
    assert!("xx".parse::<FormulationKind>().is_err());
}
