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

//! Circuit intermediate representation: ordered gate sequences over logical
//! qubits, greedy ASAP layering, CNOT-layer counting and the iterated front
//! layer that drives compilation.

use std::collections::HashSet;

/// Index of a logical qubit in the source circuit.
pub type QubitId = usize;

/// What a gate does, as far as routing is concerned. One-qubit gates are
/// opaque (name plus unevaluated parameter strings); only CNOTs are lowered
/// into remote primitives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateKind {
    OneQubit { name: String, params: Vec<String> },
    Cnot,
    Measure,
    Barrier,
}

/// A single gate. For `Cnot`, `qubits[0]` is the control and `qubits[1]` the
/// target. `Barrier` lists every qubit it fences (always all of them here).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<QubitId>,
    /// Original program position, 0-based.
    pub seq: usize,
}

impl Gate {
    pub fn one_qubit(name: &str, params: Vec<String>, qubit: QubitId, seq: usize) -> Self {
        Gate {
            kind: GateKind::OneQubit {
                name: name.to_string(),
                params,
            },
            qubits: vec![qubit],
            seq,
        }
    }

    pub fn cnot(control: QubitId, target: QubitId, seq: usize) -> Self {
        assert_ne!(control, target, "cnot control and target must differ");
        Gate {
            kind: GateKind::Cnot,
            qubits: vec![control, target],
            seq,
        }
    }

    pub fn measure(qubit: QubitId, seq: usize) -> Self {
        Gate {
            kind: GateKind::Measure,
            qubits: vec![qubit],
            seq,
        }
    }

    pub fn barrier(n: usize, seq: usize) -> Self {
        Gate {
            kind: GateKind::Barrier,
            qubits: (0..n).collect(),
            seq,
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self.kind, GateKind::Cnot)
    }

    pub fn is_barrier(&self) -> bool {
        matches!(self.kind, GateKind::Barrier)
    }

    /// One-qubit in the layering sense: `Measure` counts too.
    pub fn is_single_qubit(&self) -> bool {
        matches!(self.kind, GateKind::OneQubit { .. } | GateKind::Measure)
    }

    pub fn control(&self) -> QubitId {
        debug_assert!(self.is_cnot());
        self.qubits[0]
    }

    pub fn target(&self) -> QubitId {
        debug_assert!(self.is_cnot());
        self.qubits[1]
    }
}

/// An ordered gate list over `n` logical qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
    pub name: String,
}

/// Which layers count toward the CNOT-layer total.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnotLayerRule {
    /// Layers containing at least one CNOT (mixed layers count).
    Any,
    /// Layers containing nothing but CNOTs.
    Pure,
}

impl Circuit {
    pub fn new(name: impl Into<String>, n: usize, gates: Vec<Gate>) -> Self {
        let c = Circuit {
            n,
            gates,
            name: name.into(),
        };
        c.check();
        c
    }

    fn check(&self) {
        assert!(self.n >= 1, "circuit must have at least one qubit");
        let mut last_seq = None;
        for g in &self.gates {
            for &q in &g.qubits {
                assert!(
                    q < self.n,
                    "gate {:?} references qubit {} >= n={}",
                    g.kind,
                    q,
                    self.n
                );
            }
            if let GateKind::Cnot = g.kind {
                assert_ne!(g.qubits[0], g.qubits[1]);
            }
            if let Some(prev) = last_seq {
                assert!(g.seq > prev, "gate seq values must be strictly increasing");
            }
            last_seq = Some(g.seq);
        }
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    /// Greedy ASAP layering. Every gate lands in the earliest layer after all
    /// earlier gates that share a qubit with it; a barrier closes every open
    /// layer without occupying one itself.
    pub fn compute_layers(&self) -> Layers {
        let mut ready = vec![0usize; self.n];
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for (idx, g) in self.gates.iter().enumerate() {
            if g.is_barrier() {
                let fence = ready.iter().copied().max().unwrap_or(0);
                for r in ready.iter_mut() {
                    *r = fence;
                }
                continue;
            }
            let layer = g.qubits.iter().map(|&q| ready[q]).max().unwrap_or(0);
            if layer == layers.len() {
                layers.push(Vec::new());
            }
            layers[layer].push(idx);
            for &q in &g.qubits {
                ready[q] = layer + 1;
            }
        }
        let depth = layers.len();
        Layers { layers, depth }
    }

    /// Number of ASAP layers that count as CNOT layers under `rule`.
    pub fn cnot_layer_count(&self, rule: CnotLayerRule) -> usize {
        let layers = self.compute_layers();
        layers
            .layers
            .iter()
            .filter(|layer| {
                let mut any_cnot = false;
                let mut all_cnot = true;
                for &idx in layer.iter() {
                    if self.gates[idx].is_cnot() {
                        any_cnot = true;
                    } else {
                        all_cnot = false;
                    }
                }
                match rule {
                    CnotLayerRule::Any => any_cnot,
                    CnotLayerRule::Pure => any_cnot && all_cnot,
                }
            })
            .count()
    }
}

/// ASAP layering result. `layers[i]` holds indices into `Circuit::gates`.
#[derive(Clone, Debug)]
pub struct Layers {
    pub layers: Vec<Vec<usize>>,
    pub depth: usize,
}

/// A maximal set of CNOTs executable in parallel, plus the one-qubit gates
/// that pass straight through to the compiled program while building it.
#[derive(Clone, Debug, Default)]
pub struct FrontLayer {
    pub cnots: Vec<Gate>,
    pub passthrough: Vec<Gate>,
    pub allocated: HashSet<QubitId>,
    /// True when the scan consumed a barrier at the head of the pending list.
    pub fenced: bool,
}

impl FrontLayer {
    pub fn is_empty(&self) -> bool {
        self.cnots.is_empty() && self.passthrough.is_empty() && !self.fenced
    }
}

/// Core front-layer scan over the live gates, in program order. Stops once
/// the allocated-qubit count reaches `width`. A gate whose qubits are all
/// unallocated is consumed: one-qubit gates go straight to the passthrough
/// list, CNOTs enter the front layer and allocate their qubits. A gate
/// touching an allocated qubit stays pending and marks its qubits allocated
/// so nothing behind it on those wires can jump the queue. A barrier at the
/// head of the scan is consumed as a fence; anywhere else it blocks
/// everything behind it.
fn scan_front<'a>(
    gates: impl Iterator<Item = (usize, &'a Gate)>,
    width: usize,
) -> (Vec<usize>, FrontLayer) {
    let mut allocated: HashSet<QubitId> = HashSet::new();
    let mut front = FrontLayer::default();
    let mut consumed: Vec<usize> = Vec::new();

    for (i, gate) in gates {
        if allocated.len() >= width {
            break;
        }
        let free = gate.qubits.iter().all(|q| !allocated.contains(q));
        if free {
            if gate.is_barrier() {
                front.fenced = true;
                consumed.push(i);
                for &q in &gate.qubits {
                    allocated.insert(q);
                }
                continue;
            }
            if gate.is_single_qubit() {
                front.passthrough.push(gate.clone());
            } else {
                front.cnots.push(gate.clone());
                for &q in &gate.qubits {
                    allocated.insert(q);
                }
            }
            consumed.push(i);
        } else {
            for &q in &gate.qubits {
                allocated.insert(q);
            }
        }
    }
    front.allocated = allocated;
    debug_assert!(
        front.cnots.len() <= width / 2,
        "front layer exceeds the width/2 CNOT cap"
    );
    (consumed, front)
}

/// One step of the front-layer iteration over a plain pending list.
/// Consumed gates are removed from `pending`.
pub fn update_front_layer(pending: &mut Vec<Gate>, width: usize) -> FrontLayer {
    let before = pending.len();
    let (consumed, front) = scan_front(pending.iter().enumerate(), width);
    if !consumed.is_empty() {
        let mut keep = vec![true; pending.len()];
        for &i in &consumed {
            keep[i] = false;
        }
        let mut it = keep.iter();
        pending.retain(|_| *it.next().unwrap());
    }
    assert!(
        before == 0 || pending.len() < before,
        "front-layer iteration must consume at least one gate per call"
    );
    front
}

/// Repeated front-layer extraction over a whole circuit.
///
/// Keeps a head cursor and a live mask instead of compacting the gate list,
/// so a full iteration costs time proportional to the gates scanned rather
/// than the square of the circuit size. Consumption concentrates at the head
/// of the list, which the cursor skips in constant time.
pub struct FrontLayerIter {
    gates: Vec<Gate>,
    live: Vec<bool>,
    head: usize,
    remaining: usize,
}

impl FrontLayerIter {
    pub fn new(gates: Vec<Gate>) -> Self {
        let live = vec![true; gates.len()];
        let remaining = gates.len();
        FrontLayerIter {
            gates,
            live,
            head: 0,
            remaining,
        }
    }

    pub fn is_done(&self) -> bool {
        self.remaining == 0
    }

    pub fn next_front(&mut self, width: usize) -> FrontLayer {
        let before = self.remaining;
        let (consumed, front) = scan_front(
            self.gates
                .iter()
                .enumerate()
                .skip(self.head)
                .filter(|(i, _)| self.live[*i]),
            width,
        );
        for &i in &consumed {
            self.live[i] = false;
        }
        self.remaining -= consumed.len();
        while self.head < self.gates.len() && !self.live[self.head] {
            self.head += 1;
        }
        assert!(
            before == 0 || self.remaining < before,
            "front-layer iteration must consume at least one gate per call"
        );
        front
    }
}
