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

//! Lower single remote CNOTs at growing hop distances and print the
//! scheduled programs: link entanglement along the path, one entanglement
//! swap collapsing the chain, then the pair-consuming remote CNOT.
//!
//! ```bash
//! cargo run -p dqcc --example lower_remote_cnot
//! ```

use dqcc::qasm::serialize;
use dqcc::schedule::{measure, schedule, CostModel};
use dqcc::strategy::{emit_remote_cnot, CnotRole, Strategy};
use dqcc::topology::Topology;

fn main() {
    let topo = Topology::build_linear(6, 1).unwrap();
    for target in [1usize, 2, 5] {
        let unit = emit_remote_cnot(0, target, &topo, CnotRole::Gate).unwrap();
        let program = schedule(
            &[vec![unit]],
            &topo,
            &CostModel::unit(),
            format!("cnot_0_{target}"),
            Strategy::EntanglementSwap,
        )
        .unwrap();
        let m = measure(&program);
        println!("--- CNOT q0 -> q{target} (hop {target}) ---");
        print!("{}", serialize(&program));
        println!(
            "pairs generated: {}   depth: {}   link-only layers: {}",
            m.epr_pairs, m.depth, m.link_generation_layers
        );
        println!();
    }
}
