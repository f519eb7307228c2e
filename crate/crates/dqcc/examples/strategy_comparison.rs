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

//! Compare the two lowering strategies over the bundled corpus: compiled
//! depth, link-generation layers and EPR consumption side by side.
//!
//! ```bash
//! cargo run -p dqcc --example strategy_comparison
//! ```

use dqcc::pipeline::{compile_file, PipelineConfig};
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
        "{:<22} {:>4}  {:>9} {:>9} {:>7}   {:>9} {:>9} {:>7}",
        "circuit", "n", "es depth", "es links", "es epr", "dqs depth", "dqs links", "dqs epr"
    );
    for f in files {
        let es = compile_file(
            &f,
            &PipelineConfig {
                strategy: Strategy::EntanglementSwap,
                ..Default::default()
            },
        )
        .unwrap();
        let dqs = compile_file(
            &f,
            &PipelineConfig {
                strategy: Strategy::DataQubitSwap,
                ..Default::default()
            },
        )
        .unwrap();
        println!(
            "{:<22} {:>4}  {:>9} {:>9} {:>7}   {:>9} {:>9} {:>7}",
            es.circuit.name,
            es.circuit.n,
            es.metrics.depth,
            es.metrics.link_generation_layers,
            es.metrics.epr_pairs,
            dqs.metrics.depth,
            dqs.metrics.link_generation_layers,
            dqs.metrics.epr_pairs,
        );
    }
}
