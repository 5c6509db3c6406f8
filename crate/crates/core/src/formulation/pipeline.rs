use std::time::{Duration, Instant};

use thiserror::Error;

use crate::instance::{Instance, ScatteredInstance};
use crate::mip::{solve, BackendHandle, Limits, MipModel, MipSolution, SolveError, Status};
use crate::scalar::Scalar;
use crate::tour::{extract_subgraph, TourError, TourSubgraph};
use crate::warehouse::{build_graph, CostModel, LayoutError, WarehouseGraph};

use super::{
    build_cc_sprp, build_cc_sprp_ss, build_ec_sprp, build_ec_sprp_ss, build_gs_sprp, build_gs_sprp_ss,
    scattered_costs, sprp_costs, EcOptions, FormulationError, FormulationKind,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Formulation(#[from] FormulationError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Tour(#[from] TourError),
}

/// Outcome of building and solving one instance with one formulation.
#[derive(Debug, Clone)]
pub struct Solved<T> {
    pub formulation: FormulationKind,
    pub status: Status,
    pub objective: Option<T>,
    pub model: MipModel<T>,
    pub solution: MipSolution<T>,
    pub subgraph: Option<TourSubgraph<T>>,
    pub build_time: Duration,
    pub solve_time: Duration,
}

impl<T: Scalar> Solved<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

pub fn build_sprp<T: Scalar>(
    kind: FormulationKind,
    instance: &Instance<T>,
    costs: &CostModel<T>,
    options: EcOptions,
) -> Result<MipModel<T>, FormulationError> {
    match kind {
        FormulationKind::Gs => build_gs_sprp(instance, costs),
        FormulationKind::Cc => build_cc_sprp(instance, costs),
        FormulationKind::Ec => build_ec_sprp(instance, costs, options),
    }
}

pub fn build_scattered<T: Scalar>(
    kind: FormulationKind,
    instance: &ScatteredInstance<T>,
    costs: &CostModel<T>,
    options: EcOptions,
) -> Result<MipModel<T>, FormulationError> {
    match kind {
        FormulationKind::Gs => build_gs_sprp_ss(instance, costs),
        FormulationKind::Cc => build_cc_sprp_ss(instance, costs),
        FormulationKind::Ec => build_ec_sprp_ss(instance, costs, options),
    }
}

/// Builds, solves and extracts the tour subgraph of a standard instance.
pub fn solve_sprp<T: Scalar>(
    instance: &Instance<T>,
    kind: FormulationKind,
    backend: BackendHandle,
    limits: &Limits,
    options: EcOptions,
) -> Result<Solved<T>, PipelineError> {
    kind.check_layout(&instance.layout)?;
    let graph = build_graph(&instance.layout)?;
    let start = Instant::now();
    let costs = sprp_costs(instance)?;
    let model = build_sprp(kind, instance, &costs, options)?;
    finish(kind, &graph, model, start.elapsed(), backend, limits)
}

pub fn solve_scattered<T: Scalar>(
    instance: &ScatteredInstance<T>,
    kind: FormulationKind,
    backend: BackendHandle,
    limits: &Limits,
    options: EcOptions,
) -> Result<Solved<T>, PipelineError> {
    kind.check_layout(&instance.layout)?;
    let graph = build_graph(&instance.layout)?;
    let start = Instant::now();
    let costs = scattered_costs(instance)?;
    let model = build_scattered(kind, instance, &costs, options)?;
    finish(kind, &graph, model, start.elapsed(), backend, limits)
}

fn finish<T: Scalar>(
    kind: FormulationKind,
    graph: &WarehouseGraph<T>,
    model: MipModel<T>,
    build_time: Duration,
    backend: BackendHandle,
    limits: &Limits,
) -> Result<Solved<T>, PipelineError> {
    let solution = solve(&model, backend, limits)?;
    let subgraph = if solution.is_optimal() {
        Some(extract_subgraph(graph, &model, &solution)?)
    } else {
        None
    };
    Ok(Solved {
        formulation: kind,
        status: solution.status,
        objective: if solution.is_optimal() { solution.objective } else { None },
        solve_time: solution.wall_time,
        model,
        solution,
        subgraph,
        build_time,
    })
}
