use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use pickroute::formulation::{solve_scattered, solve_sprp, EcOptions, FormulationKind, PipelineError, Solved};
use pickroute::instance::{generate_sprp, generate_sprp_ss, to_json, AnyInstance, GeneratorConfig};
use pickroute::mip::Limits;
use pickroute::tour::{selected_positions, validate};
use pickroute::warehouse::build_graph;

use crate::config::{BenchConfig, Problem};
use crate::BenchError;

/// One solve of one instance by one formulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub problem: String,
    pub blocks: usize,
    pub alpha: u32,
    pub aisles: usize,
    pub articles: usize,
    pub replicate: u32,
    pub formulation: String,
    pub backend: String,
    pub status: String,
    pub objective: Option<i64>,
    pub build_ms: f64,
    pub solve_ms: f64,
    pub vars: usize,
    pub binaries: usize,
    pub integers: usize,
    pub constraints: usize,
}

impl RunRecord {
    pub fn is_optimal(&self) -> bool {
        self.status == "optimal"
    }
}

pub(crate) fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn problem_id(p: Problem) -> &'static str {
    match p {
        Problem::Sprp => "sprp",
        Problem::SprpSs => "sprp-ss",
    }
}

pub fn generate(problem: Problem, cfg: &GeneratorConfig) -> Result<AnyInstance<i64>, BenchError> {
    Ok(match problem {
        Problem::Sprp => AnyInstance::Sprp(generate_sprp(cfg)?),
        Problem::SprpSs => AnyInstance::Scattered(generate_sprp_ss(cfg)?),
    })
}

pub fn options(without_optional: bool) -> EcOptions {
    if without_optional {
        EcOptions::without_optional()
    } else {
        EcOptions::default()
    }
}

/// Solves one instance and checks the returned tour subgraph.
pub fn solve_instance(
    instance: &AnyInstance<i64>,
    kind: FormulationKind,
    config: &BenchConfig,
) -> Result<Solved<i64>, PipelineError> {
    let limits = Limits {
        time: config.time_limit.map(Duration::from_secs_f64),
        threads: 1,
    };
    let ec = options(config.without_optional);
    match instance {
        AnyInstance::Sprp(i) => solve_sprp(i, kind, config.backend, &limits, ec),
        AnyInstance::Scattered(i) => solve_scattered(i, kind, config.backend, &limits, ec),
    }
}

fn tour_problem(instance: &AnyInstance<i64>, s: &Solved<i64>) -> Option<String> {
    let sub = s.subgraph.as_ref()?;
    let graph = build_graph(instance.layout()).ok()?;
    let required: Vec<_> = match instance {
        AnyInstance::Sprp(i) => i.picks().collect(),
        AnyInstance::Scattered(_) => selected_positions(&s.model, &s.solution),
    };
    let report = validate(&graph, sub, &required);
    (!report.is_valid()).then(|| format!("{report:?}"))
}

fn record(cfg: &GeneratorConfig, problem: Problem, id: &str, kind: FormulationKind, config: &BenchConfig) -> RunRecord {
    RunRecord {
        instance: id.to_string(),
        problem: problem_id(problem).to_string(),
        blocks: cfg.num_crosses - 1,
        alpha: cfg.alpha,
        aisles: cfg.num_aisles,
        articles: cfg.num_articles,
        replicate: cfg.replicate,
        formulation: kind.label().to_string(),
        backend: config.backend.id().to_string(),
        status: String::new(),
        objective: None,
        build_ms: 0.0,
        solve_ms: 0.0,
        vars: 0,
        binaries: 0,
        integers: 0,
        constraints: 0,
    }
}

fn triage(dir: Option<&Path>, instance: &AnyInstance<i64>) -> Option<PathBuf> {
    let dir = dir?;
    std::fs::create_dir_all(dir).ok()?;
    let path = dir.join(format!("{}.json", instance.id()));
    std::fs::write(&path, to_json(instance)).ok()?;
    Some(path)
}

/// Solves one generated instance with every configured formulation.
pub fn run_instance(
    cfg: &GeneratorConfig,
    config: &BenchConfig,
    triage_dir: Option<&Path>,
) -> Result<Vec<RunRecord>, BenchError> {
    let instance = generate(config.problem, cfg)?;
    let mut out = Vec::with_capacity(config.formulations.len());
    for &kind in &config.formulations {
        let mut r = record(cfg, config.problem, instance.id(), kind, config);
        match solve_instance(&instance, kind, config) {
            Ok(s) => {
                if let Some(problem) = tour_problem(&instance, &s) {
                    return Err(BenchError::Tour {
                        instance: instance.id().to_string(),
                        formulation: kind,
                        detail: problem,
                        saved: triage(triage_dir, &instance),
                    });
                }
                r.status = s.status.to_string();
                r.objective = s.objective;
                r.build_ms = ms(s.build_time);
                r.solve_ms = ms(s.solve_time);
                r.vars = s.model.num_vars();
                r.binaries = s.model.num_binary();
                r.integers = s.model.num_integer();
                r.constraints = s.model.num_constraints();
            }
            Err(PipelineError::Solve(e)) => r.status = format!("error: {e}"),
            Err(e) => {
                return Err(BenchError::Tour {
                    instance: instance.id().to_string(),
                    formulation: kind,
                    detail: e.to_string(),
                    saved: triage(triage_dir, &instance),
                })
            }
        }
        out.push(r);
    }
    let optimal: Vec<_> = out.iter().filter(|r| r.is_optimal()).collect();
    if let Some(first) = optimal.first() {
        if let Some(other) = optimal.iter().find(|r| r.objective != first.objective) {
            return Err(BenchError::Mismatch {
                instance: instance.id().to_string(),
                detail: format!(
                    "{} = {:?}, {} = {:?}",
                    first.formulation, first.objective, other.formulation, other.objective
                ),
                saved: triage(triage_dir, &instance),
            });
        }
    }
    Ok(out)
}

/// Runs the whole grid in parallel. `sink` sees every record as soon as its
/// instance is finished; calls are serialized. The returned records follow
/// grid order.
pub fn run_grid(
    config: &BenchConfig,
    triage_dir: Option<&Path>,
    sink: impl FnMut(&RunRecord) + Send,
) -> Result<Vec<RunRecord>, BenchError> {
    for &kind in &config.formulations {
        if !kind.supports(&pickroute::warehouse::Layout::<i64>::new(1, config.grid.num_crosses, 1)) {
            return Err(BenchError::Config(format!(
                "{kind} does not support {} cross-aisles",
                config.grid.num_crosses
            )));
        }
    }
    let configs = config.grid.configs(config.seed);
    let sink = Mutex::new(sink);
    let work = || {
        configs
            .par_iter()
            .map(|cfg| {
                let recs = run_instance(cfg, config, triage_dir)?;
                let mut s = sink.lock().expect("sink lock");
                for r in &recs {
                    (*s)(r);
                }
                Ok(recs)
            })
            .collect::<Result<Vec<_>, BenchError>>()
    };
    let nested = if config.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| BenchError::Config(e.to_string()))?
            .install(work)?
    } else {
        work()?
    };
    Ok(nested.into_iter().flatten().collect())
}

pub fn write_runs(records: &[RunRecord], path: &Path) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_runs(path: &Path) -> Result<Vec<RunRecord>, BenchError> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::preset;
    use pickroute::instance::Grid;

    fn tiny() -> BenchConfig {
        let mut c = preset("desk").unwrap();
        c.grid = Grid {
            aisles: vec![2, 3],
            articles: vec![3, 4],
            replicates: 2,
            ..c.grid
        };
        c
    }

    #[test]
    fn one_record_per_instance_and_formulation() {
        let c = tiny();
        let mut seen = 0;
        let recs = run_grid(&c, None, |_| seen += 1).unwrap();
        assert_eq!(recs.len(), 8 * 3);
        assert_eq!(seen, recs.len());
        assert!(recs.iter().all(RunRecord::is_optimal));
        assert!(recs.iter().all(|r| r.objective.is_some()));
    }

    #[test]
    fn reruns_reproduce_objectives() {
        let c = tiny();
        let a = run_grid(&c, None, |_| {}).unwrap();
        let b = run_grid(&c, None, |_| {}).unwrap();
        let key = |r: &RunRecord| (r.instance.clone(), r.formulation.clone(), r.objective);
        assert_eq!(a.iter().map(key).collect::<Vec<_>>(), b.iter().map(key).collect::<Vec<_>>());
    }

    #[test]
    fn unsupported_formulation_is_a_config_error() {
        let mut c = preset("desk-2b").unwrap();
        c.formulations = vec![FormulationKind::Cc];
        assert!(matches!(run_grid(&c, None, |_| {}), Err(BenchError::Config(_))));
    }

    #[test]
    fn runs_csv_round_trip() {
        let recs = run_grid(&tiny(), None, |_| {}).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.csv");
        write_runs(&recs, &path).unwrap();
        assert_eq!(read_runs(&path).unwrap(), recs);
    }
}
