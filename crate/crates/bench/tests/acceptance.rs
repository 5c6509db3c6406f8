//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Exits non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pickroute::formulation::{
    build_gs_sprp, build_gs_sprp_ss, build_cc_sprp, build_cc_sprp_ss, scattered_costs, solve_scattered, solve_sprp,
    sprp_costs, EcOptions, FormulationKind, Solved,
};
use pickroute::instance::{
    distinct_sku_count, generate_sprp, generate_sprp_ss, instance_seed, GeneratorConfig, Grid, Instance,
    ScatteredInstance, SupplyEntry,
};
use pickroute::mip::{BackendHandle, Limits, INTEGRALITY_TOL};
use pickroute::oracle::{solve_sprp_oracle, solve_sprp_ss_oracle};
use pickroute::tour::{euler_tour, selected_positions, validate, walk_length};
use pickroute::warehouse::{build_graph, Layout};
use pickroute_bench::{run_grid, BenchConfig, Problem};

/// Objectives are integers; agreement means exact equality.
const OBJECTIVE_TOLERANCE: i64 = 0;
/// A connectivity value counts as integral within this distance.
const CONNECTIVITY_TOLERANCE: f64 = INTEGRALITY_TOL;
const DEPOT_SIDE_TOLERANCE: f64 = 0.02;
const GRID_TIME_LIMIT: Duration = Duration::from_secs(60);

const SPRP_INSTANCES: usize = 500;
const SS_INSTANCES: usize = 300;
const TWO_BLOCK_SPRP: usize = 120;
const TWO_BLOCK_DEPOT_AISLE: usize = 30;
const TWO_BLOCK_SS: usize = 150;
const TOGGLE_INSTANCES: usize = 120;
const DEGENERATION_INSTANCES: usize = 100;
const DEPOT_DRAWS: u32 = 10_000;
const SEED: u64 = 2024;

fn limits() -> Limits {
    Limits::with_time(GRID_TIME_LIMIT)
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    fn detail(&self) -> String {
        let shown: Vec<_> = self.failures.iter().filter(|f| !f.is_empty()).cloned().collect();
        if self.failures.is_empty() {
            format!("{} checks", self.checked)
        } else {
            format!("{} of {} checks failed: {}", self.failures.len(), self.checked, shown.join("; "))
        }
    }
}

/// Cross-suite bookkeeping for the tour, dominance and integrality criteria.
#[derive(Default)]
struct Audits {
    tours: Tally,
    dominance: Tally,
    integrality: Tally,
}

impl Audits {
    fn solved(&mut self, s: &Solved<i64>, layout: &Layout<i64>, required: &[(usize, usize)], id: &str) {
        let Some(objective) = s.objective else {
            self.tours.check(false, || format!("{id} {} not optimal", s.formulation));
            return;
        };
        let graph = build_graph(layout).expect("valid layout");
        let sub = s.subgraph.as_ref().expect("optimal solves carry a subgraph");
        let report = validate(&graph, sub, required);
        let walk = euler_tour(&graph, sub).map(|w| walk_length(&graph, &w));
        self.tours.check(report.is_valid() && walk == Ok(objective), || {
            format!("{id} {}: {report:?} walk {walk:?} objective {objective}", s.formulation)
        });
        if s.formulation == FormulationKind::Ec {
            let bad: Vec<_> = s
                .model
                .vars()
                .iter()
                .zip(&s.solution.values)
                .filter(|(v, _)| [".r[", ".rho[", ".z["].iter().any(|t| v.name.contains(t)))
                .filter(|(_, x)| (*x - x.round()).abs() > CONNECTIVITY_TOLERANCE)
                .map(|(v, x)| format!("{}={x}", v.name))
                .collect();
            self.integrality.check(bad.is_empty(), || format!("{id}: {}", bad.join(",")));
        }
    }

    fn dominance(&mut self, gs: (usize, usize), cc: (usize, usize), id: &str) {
        self.dominance.check(cc.0 < gs.0 && cc.1 <= gs.1, || {
            format!("{id}: integers GS {} CC {}, constraints GS {} CC {}", gs.0, cc.0, gs.1, cc.1)
        });
    }
}

fn agree(a: i64, b: i64) -> bool {
    (a - b).abs() <= OBJECTIVE_TOLERANCE
}

fn sprp_suite(
    instances: &[Instance<i64>],
    kinds: &[FormulationKind],
    audits: &mut Audits,
    tally: &mut Tally,
    options: EcOptions,
) {
    for inst in instances {
        let best = match solve_sprp_oracle(inst) {
            Ok(t) => t.length,
            Err(e) => {
                tally.check(false, || format!("{}: oracle {e}", inst.id));
                continue;
            }
        };
        let picks: Vec<_> = inst.picks().collect();
        for &kind in kinds {
            match solve_sprp(inst, kind, BackendHandle::Highs, &limits(), options) {
                Ok(s) => {
                    audits.solved(&s, &inst.layout, &picks, &inst.id);
                    tally.check(s.objective.is_some_and(|o| agree(o, best)), || {
                        format!("{} {kind}: {:?} vs oracle {best}", inst.id, s.objective)
                    });
                }
                Err(e) => tally.check(false, || format!("{} {kind}: {e}", inst.id)),
            }
        }
    }
}

fn ss_suite(instances: &[ScatteredInstance<i64>], kinds: &[FormulationKind], audits: &mut Audits, tally: &mut Tally) {
    for inst in instances {
        let best = match solve_sprp_ss_oracle(inst) {
            Ok(t) => t.length,
            Err(e) => {
                tally.check(false, || format!("{}: oracle {e}", inst.id));
                continue;
            }
        };
        for &kind in kinds {
            match solve_scattered(inst, kind, BackendHandle::Highs, &limits(), EcOptions::default()) {
                Ok(s) => {
                    let chosen = selected_positions(&s.model, &s.solution);
                    audits.solved(&s, &inst.layout, &chosen, &inst.id);
                    tally.check(s.objective.is_some_and(|o| agree(o, best)), || {
                        format!("{} {kind}: {:?} vs oracle {best}", inst.id, s.objective)
                    });
                }
                Err(e) => tally.check(false, || format!("{} {kind}: {e}", inst.id)),
            }
        }
    }
}

fn sprp_instances(count: usize, blocks: usize, seed: u64) -> Vec<Instance<i64>> {
    (0..count)
        .map(|i| {
            let (m, p) = if blocks == 1 { (2 + i % 5, 3 + (i / 5) % 8) } else { (2 + i % 4, 1 + (i / 4) % 8) };
            let mut cfg = GeneratorConfig::new(1, m, p, seed).with_replicate(i as u32);
            if blocks == 2 {
                cfg = cfg.two_block();
            }
            generate_sprp(&cfg).expect("valid generator config")
        })
        .collect()
}

fn ss_instances(count: usize, blocks: usize, max_aisles: usize, seed: u64) -> Vec<ScatteredInstance<i64>> {
    let span = max_aisles - 1;
    (0..count)
        .map(|i| {
            let alpha = 1 + (i % 3) as u32;
            let m = 2 + (i / 3) % span;
            let a = if blocks == 1 { 2 + (i / (3 * span)) % 4 } else { 1 + (i / (3 * span)) % 5 };
            let mut cfg = GeneratorConfig::new(alpha, m, a, seed).with_replicate(i as u32);
            if blocks == 2 {
                cfg = cfg.two_block();
            }
            generate_sprp_ss(&cfg).expect("valid generator config")
        })
        .collect()
}

/// Two-block instances whose picks all lie in the depot aisle, on both sides
/// of the middle cross-aisle.
fn depot_aisle_instances(count: usize) -> Vec<Instance<i64>> {
    (0..count)
        .map(|i| {
            let h = instance_seed(SEED, &[i as u64]);
            let m = 2 + i % 4;
            let depot = (h % m as u64) as usize;
            let top = (h >> 8) % 2 == 1;
            let layout = Layout::two_block(m, 45).with_depot(depot, if top { 2 } else { 0 });
            let k = 1 + (h >> 16) as usize % 4;
            let mut picks = vec![(depot, (h >> 24) as usize % 45), (depot, 45 + (h >> 32) as usize % 45)];
            picks.extend((0..k).map(|j| (depot, (h >> (40 + 4 * j)) as usize % 90)));
            Instance::new(format!("depot-aisle-{i}"), layout, picks).expect("cells in range")
        })
        .collect()
}

fn line(id: u32, name: &str, pass: bool, detail: &str, started: Instant) -> bool {
    println!(
        "[{}] C{id} {name}: {detail} ({:.1}s)",
        if pass { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
    pass
}

fn c1(audits: &mut Audits) -> bool {
    let t = Instant::now();
    let mut tally = Tally::default();
    let instances = sprp_instances(SPRP_INSTANCES, 1, SEED);
    for inst in &instances {
        let costs = sprp_costs(inst).expect("costs");
        let gs = build_gs_sprp(inst, &costs).expect("gs");
        let cc = build_cc_sprp(inst, &costs).expect("cc");
        audits.dominance((gs.num_integer(), gs.num_constraints()), (cc.num_integer(), cc.num_constraints()), &inst.id);
    }
    sprp_suite(&instances, &FormulationKind::ALL, audits, &mut tally, EcOptions::default());

    let mut config = BenchConfig::new(Problem::Sprp, Grid::sprp_default());
    config.formulations = vec![FormulationKind::Cc, FormulationKind::Ec];
    config.time_limit = Some(GRID_TIME_LIMIT.as_secs_f64());
    config.seed = SEED;
    let grid = match run_grid(&config, None, |_| {}) {
        Ok(records) => {
            let optimal = records.iter().filter(|r| r.is_optimal()).count();
            let ok = records.len() == 2 * 1250 && optimal == records.len();
            (ok, format!("grid {optimal}/{} CC+EC runs optimal, objectives equal", records.len()))
        }
        Err(e) => (false, format!("grid: {e}")),
    };
    line(
        1,
        "single-block exactness",
        tally.passed() && grid.0,
        &format!("{} instances x GS/CC/EC vs Held-Karp: {}; {}", instances.len(), tally.detail(), grid.1),
        t,
    )
}

fn c2(audits: &mut Audits) -> bool {
    let t = Instant::now();
    let mut tally = Tally::default();
    let instances = ss_instances(SS_INSTANCES, 1, 4, SEED + 1);
    for inst in &instances {
        let costs = scattered_costs(inst).expect("costs");
        let gs = build_gs_sprp_ss(inst, &costs).expect("gs");
        let cc = build_cc_sprp_ss(inst, &costs).expect("cc");
        audits.dominance((gs.num_integer(), gs.num_constraints()), (cc.num_integer(), cc.num_constraints()), &inst.id);
    }
    ss_suite(&instances, &FormulationKind::ALL, audits, &mut tally);
    line(
        2,
        "scattered-storage exactness",
        tally.passed(),
        &format!("{} instances x GS/CC/EC vs exhaustive oracle: {}", instances.len(), tally.detail()),
        t,
    )
}

fn c3(audits: &mut Audits) -> bool {
    let t = Instant::now();
    let mut tally = Tally::default();
    let sprp = sprp_instances(TWO_BLOCK_SPRP, 2, SEED + 2);
    sprp_suite(&sprp, &[FormulationKind::Ec], audits, &mut tally, EcOptions::default());
    let depot = depot_aisle_instances(TWO_BLOCK_DEPOT_AISLE);
    sprp_suite(&depot, &[FormulationKind::Ec], audits, &mut tally, EcOptions::default());
    let ss = ss_instances(TWO_BLOCK_SS, 2, 5, SEED + 3);
    ss_suite(&ss, &[FormulationKind::Ec], audits, &mut tally);
    let total = sprp.len() + depot.len() + ss.len();
    line(
        3,
        "two-block exactness",
        tally.passed(),
        &format!(
            "{total} instances ({} standard, {} depot-aisle only, {} scattered) EC vs oracle: {}",
            sprp.len(),
            depot.len(),
            ss.len(),
            tally.detail()
        ),
        t,
    )
}

fn c7() -> bool {
    let t = Instant::now();
    let mut tally = Tally::default();
    for i in 0..TOGGLE_INSTANCES {
        let mut cfg = GeneratorConfig::new(1, 2 + i % 3, 1 + (i / 3) % 5, SEED + 7)
            .with_positions(6)
            .with_replicate(i as u32);
        if i % 2 == 1 {
            cfg = cfg.two_block();
        }
        let inst = generate_sprp::<i64>(&cfg).expect("valid config");
        let run = |o| solve_sprp(&inst, FormulationKind::Ec, BackendHandle::Highs, &limits(), o).map(|s| s.objective);
        let (on, off) = (run(EcOptions::default()), run(EcOptions::without_optional()));
        tally.check(matches!((&on, &off), (Ok(Some(a)), Ok(Some(b))) if a == b), || {
            format!("{}: {on:?} vs {off:?}", inst.id)
        });
    }
    line(7, "optional-constraint neutrality", tally.passed(), &tally.detail(), t)
}

fn c8() -> bool {
    let t = Instant::now();
    let mut degenerate = Tally::default();
    let mut monotone = Tally::default();
    for i in 0..DEGENERATION_INSTANCES {
        let cfg = GeneratorConfig::new(1, 2 + i % 3, 2 + (i / 3) % 4, SEED + 8).with_replicate(i as u32);
        let ss = generate_sprp_ss::<i64>(&cfg).expect("valid config");
        let sprp = ss.as_unique_sprp().expect("alpha one stores each sku once");
        for kind in FormulationKind::ALL {
            let a = solve_scattered(&ss, kind, BackendHandle::Highs, &limits(), EcOptions::default()).map(|s| s.objective);
            let b = solve_sprp(&sprp, kind, BackendHandle::Highs, &limits(), EcOptions::default()).map(|s| s.objective);
            degenerate.check(matches!((&a, &b), (Ok(Some(x)), Ok(Some(y))) if x == y), || {
                format!("{} {kind}: {a:?} vs {b:?}", ss.id)
            });
        }

        let h = instance_seed(SEED, &[8, i as u64]);
        let mut more = ss.clone();
        let skus: Vec<_> = ss.demand.keys().copied().collect();
        let sku = skus[(h % skus.len() as u64) as usize];
        let cells = ss.layout.cells_per_aisle();
        let free = (0..ss.layout.num_aisles * cells)
            .map(|f| (f / cells, f % cells))
            .filter(|p| ss.supply.iter().all(|e| (e.aisle, e.cell, e.sku) != (p.0, p.1, sku)))
            .nth((h >> 16) as usize % 50);
        let Some((aisle, cell)) = free else { continue };
        more.supply.push(SupplyEntry { aisle, cell, sku, qty: 1 });
        for kind in FormulationKind::ALL {
            let before = solve_scattered(&ss, kind, BackendHandle::Highs, &limits(), EcOptions::default()).map(|s| s.objective);
            let after = solve_scattered(&more, kind, BackendHandle::Highs, &limits(), EcOptions::default()).map(|s| s.objective);
            monotone.check(matches!((&before, &after), (Ok(Some(x)), Ok(Some(y))) if y <= x), || {
                format!("{} {kind}: {before:?} then {after:?}", ss.id)
            });
        }
    }
    line(
        8,
        "degeneration and monotonicity",
        degenerate.passed() && monotone.passed(),
        &format!("alpha=1 vs induced: {}; duplicate supply: {}", degenerate.detail(), monotone.detail()),
        t,
    )
}

fn c9() -> bool {
    let t = Instant::now();
    let mut tally = Tally::default();
    for &(a, m, n, alpha, want) in &[
        (5, 5, 90, 1, 450),
        (25, 10, 90, 4, 225),
        (5, 5, 90, 5, 90),
        (25, 25, 90, 3, 750),
        (20, 1, 10, 5, 20),
    ] {
        let got = distinct_sku_count(a, m, n, alpha);
        tally.check(got == want, || format!("xi({a},{m},{n},{alpha}) = {got}, expected {want}"));
    }
    for i in 0..4u32 {
        let cfg = GeneratorConfig::new(1 + i, 5, 5, SEED).with_replicate(i);
        let ss = generate_sprp_ss::<i64>(&cfg).expect("valid config");
        let stored: std::collections::BTreeSet<_> = ss.supply.iter().map(|e| e.sku).collect();
        let want = distinct_sku_count(5, 5, 90, 1 + i as usize);
        tally.check(stored.len() == want, || format!("alpha {}: {} skus stored, expected {want}", 1 + i, stored.len()));
    }

    let mut top = 0u32;
    for r in 0..DEPOT_DRAWS {
        let cfg = GeneratorConfig::new(1, 3, 1, SEED).with_positions(2).with_replicate(r);
        let inst = generate_sprp::<i64>(&cfg).expect("valid config");
        top += u32::from(inst.layout.depot_on_top());
    }
    let share = f64::from(top) / f64::from(DEPOT_DRAWS);
    tally.check((share - 0.5).abs() <= DEPOT_SIDE_TOLERANCE, || format!("top-depot share {share:.4}"));

    let sprp = Grid::sprp_default();
    let ss = Grid::ss_default();
    tally.check(sprp.len() == 1250 && sprp.configs(SEED).len() == 1250, || format!("sprp grid {}", sprp.len()));
    tally.check(ss.len() == 6250 && ss.configs(SEED).len() == 6250, || format!("ss grid {}", ss.len()));
    line(
        9,
        "generator fidelity",
        tally.passed(),
        &format!("{}; top-depot share {share:.4} over {DEPOT_DRAWS} draws", tally.detail()),
        t,
    )
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut audits = Audits::default();
    let mut results = vec![c1(&mut audits), c2(&mut audits), c3(&mut audits)];
    let t = Instant::now();
    results.push(line(4, "tour-subgraph properties", audits.tours.passed(), &audits.tours.detail(), t));
    results.push(line(5, "model-size dominance", audits.dominance.passed(), &audits.dominance.detail(), t));
    results.push(line(
        6,
        "connectivity integrality",
        audits.integrality.passed(),
        &audits.integrality.detail(),
        t,
    ));
    results.push(c7());
    results.push(c8());
    results.push(c9());
    let failed = results.iter().filter(|&&p| !p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
