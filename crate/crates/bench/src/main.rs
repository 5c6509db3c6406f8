use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pickroute::formulation::FormulationKind;
use pickroute::instance::{read_instance, write_instance, AnyInstance};
use pickroute::mip::BackendHandle;
use pickroute::oracle::{solve_sprp_oracle, solve_sprp_ss_oracle};
use pickroute::tour::{euler_tour, selected_positions, to_svg, validate};
use pickroute::warehouse::{build_graph, Vertex, WarehouseGraph};
use pickroute_bench::{
    generate, read_runs, run_grid, solve_instance, summarize, write_runs, write_summaries, BenchConfig, PRESETS,
};

#[derive(Parser)]
#[command(name = "pickroute", version, about = "Exact picker routing models: generate, solve and benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolveOpts {
    /// Comma-separated subset of GS, CC, EC.
    #[arg(long, value_delimiter = ',')]
    formulations: Option<Vec<FormulationKind>>,
    #[arg(long, default_value = "highs")]
    backend: BackendHandle,
    /// Seconds per solve.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Drop the optional edge-exclusivity and even-gap constraints.
    #[arg(long)]
    toggle_optional_constraints: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write every instance of a grid as JSON.
    Generate {
        #[arg(long, default_value = "desk")]
        grid: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "instances")]
        out_dir: PathBuf,
    },
    /// Solve one instance file and print the tour.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
        /// Also draw the tour subgraph.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Solve a whole grid and write runs.csv plus summaries.
    Bench {
        /// Preset name or JSON config file.
        #[arg(long, default_value = "desk")]
        grid: String,
        #[command(flatten)]
        opts: SolveOpts,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "results")]
        out_dir: PathBuf,
        /// Parallel workers; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Recompute summaries from an existing runs.csv.
    Summarize {
        runs: PathBuf,
        #[arg(long, default_value = "results")]
        out_dir: PathBuf,
    },
    /// Solve one instance with every supported formulation and the oracle
    /// and check that all agree.
    Validate {
        instance: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
    },
}

fn config_for(grid: &str, opts: &SolveOpts, seed: Option<u64>) -> Result<BenchConfig> {
    let mut c = BenchConfig::load(grid).with_context(|| format!("presets: {}", PRESETS.join(", ")))?;
    if let Some(f) = &opts.formulations {
        c.formulations = f.clone();
    }
    c.backend = opts.backend;
    if opts.time_limit.is_some() {
        c.time_limit = opts.time_limit;
    }
    if let Some(s) = seed {
        c.seed = s;
    }
    c.without_optional |= opts.toggle_optional_constraints;
    Ok(c)
}

fn single(path: &Path, opts: &SolveOpts) -> Result<(AnyInstance<i64>, BenchConfig)> {
    let instance: AnyInstance<i64> = read_instance(path).with_context(|| format!("reading {}", path.display()))?;
    let mut c = config_for("desk", opts, None)?;
    if opts.formulations.is_none() {
        c.formulations = FormulationKind::ALL
            .into_iter()
            .filter(|k| k.supports(instance.layout()))
            .collect();
    }
    Ok((instance, c))
}

fn describe(g: &WarehouseGraph<i64>, v: usize) -> String {
    match g.vertex(v) {
        Vertex::Cross { aisle, cross } => format!("x({aisle},{cross})"),
        Vertex::Cell { aisle, cell } => format!("c({aisle},{cell})"),
    }
}

fn required(instance: &AnyInstance<i64>, s: &pickroute::formulation::Solved<i64>) -> Vec<(usize, usize)> {
    match instance {
        AnyInstance::Sprp(i) => i.picks().collect(),
        AnyInstance::Scattered(_) => selected_positions(&s.model, &s.solution),
    }
}

fn solve_cmd(path: &Path, opts: &SolveOpts, svg: Option<&Path>) -> Result<()> {
    let (instance, config) = single(path, opts)?;
    let graph = build_graph(instance.layout())?;
    for &kind in &config.formulations {
        let s = solve_instance(&instance, kind, &config)?;
        println!(
            "{kind}: {} objective {} ({} vars, {} constraints, solve {:.1} ms)",
            s.status,
            s.objective.map_or("-".into(), |o| o.to_string()),
            s.model.num_vars(),
            s.model.num_constraints(),
            s.solve_time.as_secs_f64() * 1e3
        );
        let Some(sub) = &s.subgraph else { continue };
        let walk = euler_tour(&graph, sub)?;
        let steps: Vec<_> = walk.iter().map(|&v| describe(&graph, v)).collect();
        println!("  tour: {}", steps.join(" "));
        if let Some(p) = svg {
            std::fs::write(p, to_svg(&graph, sub, &required(&instance, &s)))?;
        }
    }
    Ok(())
}

fn validate_cmd(path: &Path, opts: &SolveOpts) -> Result<bool> {
    let (instance, config) = single(path, opts)?;
    let graph = build_graph(instance.layout())?;
    let oracle = match &instance {
        AnyInstance::Sprp(i) => solve_sprp_oracle(i).map(|t| t.length),
        AnyInstance::Scattered(i) => solve_sprp_ss_oracle(i).map(|t| t.length),
    };
    match &oracle {
        Ok(v) => println!("oracle: {v}"),
        Err(e) => println!("oracle: unavailable ({e})"),
    }
    let mut ok = true;
    let mut seen = None;
    for &kind in &config.formulations {
        let s = solve_instance(&instance, kind, &config)?;
        let tour = s
            .subgraph
            .as_ref()
            .map(|sub| validate(&graph, sub, &required(&instance, &s)));
        let agrees = s.objective.is_some()
            && oracle.as_ref().map_or(true, |&o| s.objective == Some(o))
            && seen.is_none_or(|o| s.objective == Some(o));
        let valid = tour.is_some_and(|r| r.is_valid());
        println!(
            "{kind}: {} {} tour {}",
            s.objective.map_or("-".into(), |o| o.to_string()),
            if agrees { "agrees" } else { "DISAGREES" },
            if valid { "valid".to_string() } else { format!("INVALID {tour:?}") }
        );
        ok &= agrees && valid;
        seen = seen.or(s.objective);
    }
    Ok(ok)
}

fn run() -> Result<bool> {
    match Cli::parse().command {
        Command::Generate { grid, seed, out_dir } => {
            let mut c = BenchConfig::load(&grid)?;
            if let Some(s) = seed {
                c.seed = s;
            }
            std::fs::create_dir_all(&out_dir)?;
            let configs = c.grid.configs(c.seed);
            for cfg in &configs {
                let inst = generate(c.problem, cfg)?;
                write_instance(&inst, out_dir.join(format!("{}.json", inst.id())))?;
            }
            println!("wrote {} instances to {}", configs.len(), out_dir.display());
        }
        Command::Solve { instance, opts, svg } => solve_cmd(&instance, &opts, svg.as_deref())?,
        Command::Validate { instance, opts } => return validate_cmd(&instance, &opts),
        Command::Bench {
            grid,
            opts,
            seed,
            out_dir,
            workers,
        } => {
            let mut c = config_for(&grid, &opts, seed)?;
            c.workers = workers;
            std::fs::create_dir_all(&out_dir)?;
            let total = c.grid.len() * c.formulations.len();
            let mut done = 0;
            let records = run_grid(&c, Some(&out_dir.join("triage")), |r| {
                done += 1;
                if done % 100 == 0 || done == total {
                    eprintln!("{done}/{total} {} {} {}", r.instance, r.formulation, r.status);
                }
            })?;
            write_runs(&records, &out_dir.join("runs.csv"))?;
            write_summaries(&summarize(&records)?, &out_dir)?;
            let solved = records.iter().filter(|r| r.is_optimal()).count();
            println!("{solved}/{} runs optimal; results in {}", records.len(), out_dir.display());
            if solved != records.len() {
                bail!("{} runs did not reach optimality", records.len() - solved);
            }
        }
        Command::Summarize { runs, out_dir } => {
            let records = read_runs(&runs)?;
            for p in write_summaries(&summarize(&records)?, &out_dir)? {
                println!("{}", p.display());
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
