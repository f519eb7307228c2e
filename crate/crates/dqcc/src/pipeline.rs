// Copyright contributors to the dqcc project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! End-to-end compilation pipeline and the batch front door.
//!
//! For one circuit: iterate the front layer until no gates are pending,
//! lower each front layer under the selected strategy, schedule the ops,
//! measure the result and attach the theoretical bounds. The batch driver
//! compiles many files concurrently, writes one program listing per circuit
//! and a machine-readable report with one record per circuit in input order.

use crate::circuit::{Circuit, CnotLayerRule, FrontLayerIter};
use crate::qasm::{self, ParseDiagnostic, SourceCircuitText};
use crate::schedule::{
    bounds, measure, schedule, BoundReport, CompiledProgram, CostModel, Metrics, ScheduleError,
};
use crate::strategy::{
    compile_front_layer, DistributedOp, Strategy, StrategyError, Unit, UnitKind,
};
use crate::topology::{Topology, TopologyError};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompileError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// Per-circuit compilation settings.
#[derive(Clone, Copy, Debug)]
pub struct PipelineConfig {
    pub strategy: Strategy,
    pub epr_capacity: u8,
    pub costs: CostModel,
    pub cnot_layer_rule: CnotLayerRule,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            strategy: Strategy::DataQubitSwap,
            epr_capacity: 1,
            costs: CostModel::unit(),
            cnot_layer_rule: CnotLayerRule::Any,
        }
    }
}

/// Per-front-layer counters used by the repetition-bound checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct FrontLayerStat {
    pub cnots: usize,
    /// Units that perform at least one link entanglement: the number of
    /// invocations of the link-entanglement task for this layer.
    pub link_rounds: usize,
}

#[derive(Clone, Debug)]
pub struct CompilationResult {
    pub circuit: Circuit,
    pub program: CompiledProgram,
    pub metrics: Metrics,
    pub bound_report: BoundReport,
    pub cnot_layers_any: u64,
    pub cnot_layers_pure: u64,
    pub front_stats: Vec<FrontLayerStat>,
}

impl CompilationResult {
    /// Compiled-to-theoretical depth ratio under the active strategy.
    pub fn ratio(&self) -> f64 {
        let bound = match self.program.strategy {
            Strategy::EntanglementSwap => self.bound_report.es_bound,
            Strategy::DataQubitSwap => self.bound_report.dqs_bound,
        };
        if bound == 0 {
            if self.metrics.cnot_derived_layers == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.metrics.cnot_derived_layers as f64 / bound as f64
        }
    }
}

/// Compile one circuit end to end.
pub fn compile_circuit(
    circuit: &Circuit,
    cfg: &PipelineConfig,
) -> Result<CompilationResult, CompileError> {
    let n_qpus = circuit.n.max(2);
    let initial = Topology::build_linear_for(circuit.n, n_qpus, cfg.epr_capacity)?;
    let width = circuit.n.min(n_qpus);

    let mut topo = initial.clone();
    let mut pending = FrontLayerIter::new(circuit.gates.clone());
    let mut front_layers: Vec<Vec<Unit>> = Vec::new();
    let mut front_stats: Vec<FrontLayerStat> = Vec::new();

    while !pending.is_done() {
        let front = pending.next_front(width);
        let mut units: Vec<Unit> = Vec::new();
        for gate in &front.passthrough {
            let qpu = topo.qpu_of(gate.qubits[0])?;
            units.push(Unit {
                kind: UnitKind::LocalGate,
                ops: vec![DistributedOp::LocalGate {
                    gate: gate.clone(),
                    qpu,
                }],
            });
        }
        let (lowered, next) = compile_front_layer(&front, &topo, cfg.strategy)?;
        topo = next;
        units.extend(lowered);
        if front.fenced {
            units.push(Unit::fence());
        }
        let stat = FrontLayerStat {
            cnots: front.cnots.len(),
            link_rounds: units.iter().filter(|u| u.has_link_entanglement()).count(),
        };
        front_layers.push(units);
        front_stats.push(stat);
    }

    let mut program = schedule(
        &front_layers,
        &initial,
        &cfg.costs,
        circuit.name.clone(),
        cfg.strategy,
    )?;
    program.final_assignment = topo.assignment().to_vec();
    let metrics = measure(&program);
    let cnot_layers_any = circuit.cnot_layer_count(CnotLayerRule::Any) as u64;
    let cnot_layers_pure = circuit.cnot_layer_count(CnotLayerRule::Pure) as u64;
    let counted = match cfg.cnot_layer_rule {
        CnotLayerRule::Any => cnot_layers_any,
        CnotLayerRule::Pure => cnot_layers_pure,
    };
    let bound_report = bounds(circuit.n.max(2), counted, &cfg.costs);

    Ok(CompilationResult {
        circuit: circuit.clone(),
        program,
        metrics,
        bound_report,
        cnot_layers_any,
        cnot_layers_pure,
        front_stats,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Batch-run settings: everything one `dqcc` invocation needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub pipeline: PipelineConfig,
    pub out_dir: PathBuf,
    pub report_format: ReportFormat,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("input path {0} does not exist")]
    MissingInput(PathBuf),
    #[error("no .qasm files found under the given inputs")]
    EmptyInputs,
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// One row of the run report. Field order mirrors the validation table:
/// circuit identity, layer counts, the theoretical bound, then the compiled
/// counters and their ratio.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRecord {
    pub name: String,
    pub n: usize,
    pub cnot_layers: u64,
    pub cnot_layers_any: u64,
    pub cnot_layers_pure: u64,
    pub strategy: String,
    pub epr_capacity: u8,
    pub bound: u64,
    pub es_bound: u64,
    pub dqs_bound: u64,
    pub compiled_layers: u64,
    pub depth: u64,
    pub link_generation_layers: u64,
    pub epr_pairs: u64,
    pub remote_cnots: u64,
    pub swaps_performed: u64,
    pub ratio: f64,
}

impl ReportRecord {
    fn from_result(r: &CompilationResult) -> Self {
        let bound = match r.program.strategy {
            Strategy::EntanglementSwap => r.bound_report.es_bound,
            Strategy::DataQubitSwap => r.bound_report.dqs_bound,
        };
        ReportRecord {
            name: r.circuit.name.clone(),
            n: r.circuit.n,
            cnot_layers: r.bound_report.cnot_layers,
            cnot_layers_any: r.cnot_layers_any,
            cnot_layers_pure: r.cnot_layers_pure,
            strategy: r.program.strategy.label().to_string(),
            epr_capacity: r.program.epr_capacity,
            bound,
            es_bound: r.bound_report.es_bound,
            dqs_bound: r.bound_report.dqs_bound,
            compiled_layers: r.metrics.cnot_derived_layers,
            depth: r.metrics.depth,
            link_generation_layers: r.metrics.link_generation_layers,
            epr_pairs: r.metrics.epr_pairs,
            remote_cnots: r.metrics.remote_cnots,
            swaps_performed: r.metrics.swaps_performed,
            ratio: r.ratio(),
        }
    }
}

/// Outcome of one batch run.
#[derive(Debug, Default)]
pub struct RunSummary {
    pub records: Vec<ReportRecord>,
    /// (file, diagnostics) for inputs that failed to parse.
    pub parse_failures: Vec<(PathBuf, Vec<ParseDiagnostic>)>,
    /// (file, error) for inputs that failed to compile.
    pub compile_failures: Vec<(PathBuf, String)>,
    /// Circuits whose compiled depth exceeded the theoretical bound.
    pub bound_violations: Vec<String>,
    /// Wall-clock compile time per record, mirrors `records` order. Kept out
    /// of the report files so reruns stay byte-identical.
    pub wall_ms: Vec<u128>,
}

impl RunSummary {
    pub fn success(&self) -> bool {
        self.parse_failures.is_empty()
            && self.compile_failures.is_empty()
            && self.bound_violations.is_empty()
    }
}

fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, RunError> {
    let mut files = Vec::new();
    for input in inputs {
        if !input.exists() {
            return Err(RunError::MissingInput(input.clone()));
        }
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
                .map_err(|e| RunError::Io {
                    path: input.clone(),
                    source: e,
                })?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(input.clone());
        }
    }
    if files.is_empty() {
        return Err(RunError::EmptyInputs);
    }
    Ok(files)
}

fn thread_budget(jobs: usize) -> usize {
    let hw = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1);
    let cap = std::env::var("DQC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(hw);
    cap.min(jobs).max(1)
}

enum JobOutcome {
    Parsed(Box<CompilationResult>, u128),
    ParseFailed(Vec<ParseDiagnostic>),
    CompileFailed(String),
}

/// Compile every input and write the program listings and the report.
///
/// Circuits compile concurrently (`DQC_THREADS` caps the worker count);
/// report records appear in input order regardless of completion order.
/// Parse failures are reported per file and do not stop the batch; I/O
/// failures abort.
pub fn run(cfg: &RunConfig) -> Result<RunSummary, RunError> {
    let files = expand_inputs(&cfg.inputs)?;
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| RunError::Io {
        path: cfg.out_dir.clone(),
        source: e,
    })?;

    let sources: Vec<(PathBuf, String)> = files
        .iter()
        .map(|f| {
            std::fs::read_to_string(f)
                .map(|text| (f.clone(), text))
                .map_err(|e| RunError::Io {
                    path: f.clone(),
                    source: e,
                })
        })
        .collect::<Result<_, _>>()?;

    let outcomes: Mutex<Vec<Option<JobOutcome>>> =
        Mutex::new((0..sources.len()).map(|_| None).collect());
    let next_job = AtomicUsize::new(0);
    let workers = thread_budget(sources.len());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next_job.fetch_add(1, Ordering::Relaxed);
                if i >= sources.len() {
                    break;
                }
                let (path, text) = &sources[i];
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "circuit".to_string());
                let src = SourceCircuitText::new(text.clone(), name);
                let outcome = match qasm::parse(&src) {
                    Err(diags) => JobOutcome::ParseFailed(diags),
                    Ok(circuit) => {
                        let started = std::time::Instant::now();
                        match compile_circuit(&circuit, &cfg.pipeline) {
                            Ok(result) => {
                                JobOutcome::Parsed(Box::new(result), started.elapsed().as_millis())
                            }
                            Err(e) => JobOutcome::CompileFailed(e.to_string()),
                        }
                    }
                };
                outcomes.lock().unwrap()[i] = Some(outcome);
            });
        }
    });

    let mut summary = RunSummary::default();
    let outcomes = outcomes.into_inner().unwrap();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let path = &files[i];
        match outcome.expect("every job ran") {
            JobOutcome::ParseFailed(diags) => summary.parse_failures.push((path.clone(), diags)),
            JobOutcome::CompileFailed(msg) => summary.compile_failures.push((path.clone(), msg)),
            JobOutcome::Parsed(result, ms) => {
                let listing = qasm::serialize(&result.program);
                let out_path = cfg.out_dir.join(format!("{}.dqc.txt", result.circuit.name));
                std::fs::write(&out_path, listing).map_err(|e| RunError::Io {
                    path: out_path.clone(),
                    source: e,
                })?;
                let record = ReportRecord::from_result(&result);
                if record.ratio > 1.0 {
                    summary.bound_violations.push(record.name.clone());
                }
                summary.records.push(record);
                summary.wall_ms.push(ms);
            }
        }
    }

    match cfg.report_format {
        ReportFormat::Json => {
            let path = cfg.out_dir.join("report.json");
            let body = serde_json::to_string_pretty(&summary.records).expect("records serialize");
            std::fs::write(&path, body + "\n").map_err(|e| RunError::Io {
                path: path.clone(),
                source: e,
            })?;
        }
        ReportFormat::Csv => {
            let path = cfg.out_dir.join("report.csv");
            std::fs::write(&path, render_csv(&summary.records)).map_err(|e| RunError::Io {
                path: path.clone(),
                source: e,
            })?;
        }
    }

    Ok(summary)
}

fn render_csv(records: &[ReportRecord]) -> String {
    let mut out = String::from(
        "name,n,cnot_layers,cnot_layers_any,cnot_layers_pure,strategy,epr_capacity,bound,es_bound,dqs_bound,compiled_layers,depth,link_generation_layers,epr_pairs,remote_cnots,swaps_performed,ratio\n",
    );
    for r in records {
        let name = if r.name.contains(',') || r.name.contains('"') {
            format!("\"{}\"", r.name.replace('"', "\"\""))
        } else {
            r.name.clone()
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            name,
            r.n,
            r.cnot_layers,
            r.cnot_layers_any,
            r.cnot_layers_pure,
            r.strategy,
            r.epr_capacity,
            r.bound,
            r.es_bound,
            r.dqs_bound,
            r.compiled_layers,
            r.depth,
            r.link_generation_layers,
            r.epr_pairs,
            r.remote_cnots,
            r.swaps_performed,
            format_ratio(r.ratio),
        );
    }
    out
}

fn format_ratio(r: f64) -> String {
    if r.is_infinite() {
        "inf".to_string()
    } else {
        format!("{r:.6}")
    }
}

/// Parse and compile a QASM file with one configuration. Convenience for
/// tests and examples.
pub fn compile_file(path: &Path, cfg: &PipelineConfig) -> Result<CompilationResult, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "circuit".to_string());
    let circuit = qasm::parse(&SourceCircuitText::new(text, name)).map_err(|d| {
        d.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    compile_circuit(&circuit, cfg).map_err(|e| e.to_string())
}
