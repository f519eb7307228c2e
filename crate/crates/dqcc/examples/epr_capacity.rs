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

//! Doubled links: with two EPR pairs per edge, a data swap becomes two
//! parallel teleportations plus local swaps instead of three sequential
//! remote CNOTs, cutting link-generation rounds per swap from three to one.
//!
//! ```bash
//! cargo run -p dqcc --example epr_capacity
//! ```

use dqcc::pipeline::{compile_file, PipelineConfig};
use dqcc::qasm::serialize;
use dqcc::schedule::{measure, schedule, CostModel};
use dqcc::strategy::{emit_data_swap, Strategy};
use dqcc::topology::Topology;
use std::path::PathBuf;

fn main() {
    // One data swap between neighbors, at each capacity.
    for capacity in [1u8, 2] {
        let topo = Topology::build_linear(2, capacity).unwrap();
        let (units, _) = emit_data_swap(0, 1, &topo).unwrap();
        let program = schedule(
            &[units],
            &topo,
            &CostModel::unit(),
            format!("swap_capacity_{capacity}"),
            Strategy::DataQubitSwap,
        )
        .unwrap();
        println!("--- data swap, {capacity} pair(s) per link ---");
        print!("{}", serialize(&program));
        let m = measure(&program);
        println!("link-generation layers: {}\n", m.link_generation_layers);
    }

    // Whole-corpus effect on the data-qubit swapping strategy.
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&corpus)
        .expect("corpus directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
        .collect();
    files.sort();
    println!(
        "{:<22} {:>14} {:>14} {:>12} {:>12}",
        "circuit", "links (cap 1)", "links (cap 2)", "depth cap 1", "depth cap 2"
    );
    for f in files {
        let mut results = Vec::new();
        for capacity in [1u8, 2] {
            let cfg = PipelineConfig {
                strategy: Strategy::DataQubitSwap,
                epr_capacity: capacity,
                ..Default::default()
            };
            results.push(compile_file(&f, &cfg).unwrap());
        }
        println!(
            "{:<22} {:>14} {:>14} {:>12} {:>12}",
            results[0].circuit.name,
            results[0].metrics.link_generation_layers,
            results[1].metrics.link_generation_layers,
            results[0].metrics.depth,
            results[1].metrics.depth,
        );
    }
}
