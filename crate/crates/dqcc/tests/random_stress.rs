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

//! Randomized end-to-end stress: every compiled program must replay cleanly
//! through the independent auditor, stay within its depth bound, and leave
//! the data qubits where the compiler claims they are.

use dqcc::audit::audit;
use dqcc::circuit::{Circuit, CnotLayerRule, Gate};
use dqcc::pipeline::{compile_circuit, PipelineConfig};
use dqcc::schedule::CostModel;
use dqcc::strategy::Strategy;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_circuit(rng: &mut StdRng) -> Circuit {
    let n = rng.gen_range(2..14);
    let len = rng.gen_range(1..80);
    let mut gates = Vec::with_capacity(len);
    for seq in 0..len {
        let roll = rng.gen_range(0..10);
        if roll < 6 {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while b == a {
                b = rng.gen_range(0..n);
            }
            gates.push(Gate::cnot(a, b, seq));
        } else if roll < 9 {
            let name = ["h", "t", "rz", "x"][rng.gen_range(0..4)];
            let params = if name == "rz" {
                vec!["pi/8".to_string()]
            } else {
                vec![]
            };
            gates.push(Gate {
                kind: dqcc::GateKind::OneQubit {
                    name: name.into(),
                    params,
                },
                qubits: vec![rng.gen_range(0..n)],
                seq,
            });
        } else if roll == 9 && rng.gen_bool(0.5) {
            gates.push(Gate::barrier(n, seq));
        } else {
            gates.push(Gate::measure(rng.gen_range(0..n), seq));
        }
    }
    Circuit::new("stress", n, gates)
}

#[test]
fn random_circuits_compile_audit_and_stay_in_bound() {
    let mut rng = StdRng::seed_from_u64(0x57e55);
    let costs = [
        CostModel::unit(),
        CostModel::new(2, 3, 1),
        CostModel::new(3, 1, 2),
    ];
    for round in 0..300 {
        let circuit = random_circuit(&mut rng);
        let strategy = if round % 2 == 0 {
            Strategy::EntanglementSwap
        } else {
            Strategy::DataQubitSwap
        };
        let cfg = PipelineConfig {
            strategy,
            epr_capacity: 1 + (round % 4 >= 2) as u8,
            costs: costs[round % 3],
            cnot_layer_rule: CnotLayerRule::Any,
        };
        let result = compile_circuit(&circuit, &cfg)
            .unwrap_or_else(|e| panic!("round {round}: compile failed for {circuit:?}: {e}"));
        audit(&result.program).unwrap_or_else(|e| {
            panic!(
                "round {round}: audit rejected {strategy:?} cap{}: {e}",
                cfg.epr_capacity
            )
        });

        // Every source CNOT appears exactly once as a gate-role remote CNOT.
        let realized = result
            .program
            .ops
            .iter()
            .filter(|o| {
                matches!(
                    o.op,
                    dqcc::DistributedOp::RemoteCnot {
                        role: dqcc::strategy::CnotRole::Gate,
                        ..
                    }
                )
            })
            .count();
        assert_eq!(realized, circuit.cnot_count(), "round {round}");

        // The analytic bounds hold for arbitrary cost models in their
        // regime: the data-qubit-swap bound needs n >= 4 (see bounds()).
        let bound = match strategy {
            Strategy::EntanglementSwap => result.bound_report.es_bound,
            Strategy::DataQubitSwap => result.bound_report.dqs_bound,
        };
        if circuit.n >= 4 || strategy == Strategy::EntanglementSwap {
            assert!(
                result.metrics.cnot_derived_layers <= bound,
                "round {round}: n={} {strategy:?} {} > {bound}",
                circuit.n,
                result.metrics.cnot_derived_layers
            );
        }
    }
}
