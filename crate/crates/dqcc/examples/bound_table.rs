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

//! Reproduce the bound-validation table over the bundled corpus: for each
//! circuit, the worst-case depth of both strategies against the compiled
//! depth, with the compiled-to-theoretical ratio.
//!
//! ```bash
//! cargo run -p dqcc --example bound_table
//! ```

use dqcc::pipeline::{compile_file, PipelineConfig};
use dqcc::schedule::sorting_network_depth;
use dqcc::strategy::Strategy;
use std::path::PathBuf;

fn main() {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&corpus)
        .expect("corpus directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
        .collect();
    files.sort();

    println!(
        "{:<22} {:>3} {:>7} | {:>9} {:>9} {:>6} | {:>9} {:>9} {:>6}",
        "circuit", "n", "layers", "es bound", "compiled", "ratio", "dqs bound", "compiled", "ratio"
    );
    for f in &files {
        let es = compile_file(
            f,
            &PipelineConfig {
                strategy: Strategy::EntanglementSwap,
                ..Default::default()
            },
        )
        .unwrap();
        let dqs = compile_file(
            f,
            &PipelineConfig {
                strategy: Strategy::DataQubitSwap,
                ..Default::default()
            },
        )
        .unwrap();
        println!(
            "{:<22} {:>3} {:>7} | {:>9} {:>9} {:>6.3} | {:>9} {:>9} {:>6.3}",
            es.circuit.name,
            es.circuit.n,
            es.bound_report.cnot_layers,
            es.bound_report.es_bound,
            es.metrics.cnot_derived_layers,
            es.ratio(),
            dqs.bound_report.dqs_bound,
            dqs.metrics.cnot_derived_layers,
            dqs.ratio(),
        );
    }
    println!();
    println!("classical sorting-network depth for comparison: 2n-3");
    for n in [4usize, 10, 16, 20] {
        println!("  n={n:<3} -> {}", sorting_network_depth(n));
    }
}
