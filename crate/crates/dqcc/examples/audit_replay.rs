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

//! Replay a compiled program through the independent resource auditor,
//! then corrupt the schedule and watch the auditor reject it.
//!
//! ```bash
//! cargo run -p dqcc --example audit_replay
//! ```

use dqcc::audit::audit;
use dqcc::pipeline::{compile_file, PipelineConfig};
use dqcc::strategy::DistributedOp;
use std::path::PathBuf;

fn main() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/adder.qasm");
    let result = compile_file(&path, &PipelineConfig::default()).unwrap();

    let report = audit(&result.program).expect("freshly compiled program replays cleanly");
    println!(
        "clean replay: {} ops, {} pairs generated, {} consumed",
        report.ops_replayed, report.pairs_generated, report.pairs_consumed
    );

    // Now break causality: pull one remote CNOT into layer 0, before its
    // Bell pair exists.
    let mut corrupted = result.program.clone();
    if let Some(op) = corrupted
        .ops
        .iter_mut()
        .find(|o| matches!(o.op, DistributedOp::RemoteCnot { .. }))
    {
        op.start = 0;
        op.end = 1;
    }
    match audit(&corrupted) {
        Ok(_) => println!("unexpected: corrupted schedule passed"),
        Err(e) => println!("corrupted schedule rejected: {e}"),
    }
}
