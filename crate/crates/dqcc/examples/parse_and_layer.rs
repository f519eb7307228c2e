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

//! Parse an OpenQASM 2.0 snippet and inspect its layer structure.
//!
//! ```bash
//! cargo run -p dqcc --example parse_and_layer
//! ```

use dqcc::circuit::CnotLayerRule;
use dqcc::qasm::{parse, SourceCircuitText};

const SOURCE: &str = r#"
OPENQASM 2.0;
include "qelib1.inc";
qreg q[4];
creg c[4];
h q[0];
cx q[0],q[1];
cx q[1],q[2];
cx q[2],q[3];
rz(pi/4) q[3];
barrier q;
measure q -> c;
"#;

fn main() {
    let circuit = match parse(&SourceCircuitText::new(SOURCE, "ghz_plus")) {
        Ok(c) => c,
        Err(diags) => {
            for d in diags {
                eprintln!("{d}");
            }
            std::process::exit(1);
        }
    };

    println!(
        "circuit '{}': {} qubits, {} gates",
        circuit.name,
        circuit.n,
        circuit.gates.len()
    );
    let layers = circuit.compute_layers();
    println!("depth: {}", layers.depth);
    for (i, layer) in layers.layers.iter().enumerate() {
        let names: Vec<String> = layer
            .iter()
            .map(|&g| format!("{:?}{:?}", circuit.gates[g].kind, circuit.gates[g].qubits))
            .collect();
        println!("  layer {i}: {}", names.join("  "));
    }
    println!(
        "cnot layers: {} (counting mixed layers), {} (pure only)",
        circuit.cnot_layer_count(CnotLayerRule::Any),
        circuit.cnot_layer_count(CnotLayerRule::Pure),
    );
}
