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

//! Compile one bundled circuit end to end and print the distributed
//! program listing plus its metrics and bound report.
//!
//! ```bash
//! cargo run -p dqcc --example compile_circuit
//! cargo run -p dqcc --example compile_circuit -- corpus/adder.qasm
//! ```

use dqcc::pipeline::{compile_file, PipelineConfig};
use dqcc::qasm::serialize;
use std::path::PathBuf;

fn main() {
    let default = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/ghz_4.qasm");
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or(default);
    let cfg = PipelineConfig::default();
    let result = match compile_file(&path, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };

    print!("{}", serialize(&result.program));
    println!();
    let m = &result.metrics;
    println!("depth:                  {}", m.depth);
    println!("compiled cnot layers:   {}", m.cnot_derived_layers);
    println!("link-generation layers: {}", m.link_generation_layers);
    println!("epr pairs:              {}", m.epr_pairs);
    println!("remote cnots:           {}", m.remote_cnots);
    println!("data swaps:             {}", m.swaps_performed);
    let b = &result.bound_report;
    println!(
        "bounds: es {} / dqs {}  (d_es={}, d_qs={}, d_qs'={})",
        b.es_bound, b.dqs_bound, b.d_es, b.d_qs, b.d_qs_prime
    );
    println!("ratio:  {:.4}", result.ratio());
}
