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

//! dqcc: a compiler from gate-level quantum circuits to a distributed
//! architecture of single-data-qubit QPUs on a linear nearest-neighbor
//! network.
//!
//! Every CNOT becomes a remote operation built from three entanglement
//! tasks: link entanglement between neighbors, entanglement swapping across
//! intermediate processors, and the Bell-pair-consuming remote CNOT itself.
//! Two lowering strategies are implemented — entanglement swapping in place,
//! and data-qubit swapping driven by a pair-sorting routine — together with
//! a resource-constrained layer scheduler, closed-form depth bounds for
//! validation, and an independent replay auditor.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! `dqcc` binary batch-compiles QASM files and emits a validation report.

pub mod audit;
pub mod circuit;
pub mod pipeline;
pub mod qasm;
pub mod schedule;
pub mod strategy;
pub mod topology;

pub use circuit::{Circuit, CnotLayerRule, FrontLayer, Gate, GateKind, QubitId};
pub use pipeline::{compile_circuit, CompilationResult, PipelineConfig, ReportFormat, RunConfig};
pub use qasm::{parse, serialize, ParseDiagnostic, SourceCircuitText};
pub use schedule::{bounds, measure, schedule, BoundReport, CompiledProgram, CostModel, Metrics};
pub use strategy::{
    compile_front_layer, emit_data_swap, emit_remote_cnot, sort_pairs, DistributedOp, Strategy,
    SwapPlan,
};
pub use topology::{Qpu, Side, Topology};
