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

//! Independent replay validation of compiled programs.
//!
//! Walks a scheduled program in time order through its own model of every
//! communication slot, data slot and Bell pair, sharing no state or logic
//! with the scheduler. Any capacity overrun, use of entanglement before it
//! exists, overlapping slot use, stranded pair or mismatched qubit placement
//! is reported as an error.

use crate::schedule::{CompiledProgram, ScheduledOp};
use crate::strategy::{CnotRole, DistributedOp, UnitKind};
use crate::topology::Side;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("op {index} ({op}): {problem}")]
    Conflict {
        index: usize,
        op: String,
        problem: String,
    },
    #[error("{count} Bell pairs still live at end of program")]
    StrandedPairs { count: usize },
    #[error("teleported state still parked at qpu {qpu} at end of program")]
    StrandedData { qpu: usize },
    #[error("front layer {front_layer} generated {generated} pairs but consumed {consumed}")]
    LayerImbalance {
        front_layer: usize,
        generated: u64,
        consumed: u64,
    },
    #[error("qubit {qubit} ended on qpu {found} but the program claims qpu {claimed}")]
    FinalPlacement {
        qubit: usize,
        found: usize,
        claimed: usize,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub pairs_generated: u64,
    pub pairs_consumed: u64,
    pub ops_replayed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SlotState {
    Free,
    /// Bell half; pair id, usable once `ready`.
    Bell(usize, u64),
    /// Teleported data waiting for a local swap; present once `ready`.
    Data(usize, u64),
}

/// (side index, channel) of the two slots holding a pair's halves, lower
/// QPU first.
type PairSlots = [(usize, usize); 2];

struct Replay {
    /// Comm slot states indexed by (qpu * 2 + side), channel.
    slots: Vec<Vec<SlotState>>,
    /// Busy-until per comm slot, same indexing.
    slot_busy: Vec<Vec<u64>>,
    /// pair id -> (endpoints (lo, hi), slots holding the halves).
    pairs: HashMap<usize, ((usize, usize), PairSlots)>,
    next_pair: usize,
    /// Data slot occupancy and busy-until per QPU.
    occupant: Vec<Option<usize>>,
    data_busy: Vec<u64>,
    generated: u64,
    consumed: u64,
    gen_by_layer: HashMap<usize, u64>,
    use_by_layer: HashMap<usize, u64>,
}

fn side_index(qpu: usize, side: Side) -> usize {
    qpu * 2 + side as usize
}

impl Replay {
    fn new(p: &CompiledProgram) -> Self {
        let n = p.qpu_count;
        let cap = p.epr_capacity as usize;
        let mut slots = vec![Vec::new(); 2 * n];
        for q in 0..n {
            if q > 0 {
                slots[side_index(q, Side::Left)] = vec![SlotState::Free; cap];
            }
            if q + 1 < n {
                slots[side_index(q, Side::Right)] = vec![SlotState::Free; cap];
            }
        }
        let slot_busy = slots.iter().map(|v| vec![0u64; v.len()]).collect();
        Replay {
            slots,
            slot_busy,
            pairs: HashMap::new(),
            next_pair: 0,
            // Identity placement at program start.
            occupant: (0..n).map(Some).collect(),
            data_busy: vec![0; n],
            generated: 0,
            consumed: 0,
            gen_by_layer: HashMap::new(),
            use_by_layer: HashMap::new(),
        }
    }

    fn free_channel(&self, qpu: usize, side: Side, at: u64) -> Option<usize> {
        let idx = side_index(qpu, side);
        (0..self.slots[idx].len())
            .find(|&ch| self.slots[idx][ch] == SlotState::Free && self.slot_busy[idx][ch] <= at)
    }

    /// Oldest usable pair between two QPUs.
    fn find_pair(&self, a: usize, b: usize, at: u64) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        let mut best: Option<usize> = None;
        for (&id, &(endpoints, slots)) in &self.pairs {
            if endpoints != key {
                continue;
            }
            let ready = slots.iter().all(|&(idx, ch)| match self.slots[idx][ch] {
                SlotState::Bell(pid, ready) => pid == id && ready <= at,
                _ => false,
            });
            if ready && best.is_none_or(|b| id < b) {
                best = Some(id);
            }
        }
        best
    }

    fn consume_pair(&mut self, id: usize, free_at: u64) {
        let (_, slots) = self.pairs.remove(&id).expect("pair exists");
        for (idx, ch) in slots {
            self.slots[idx][ch] = SlotState::Free;
            self.slot_busy[idx][ch] = free_at;
        }
        self.consumed += 1;
    }
}

fn conflict(index: usize, op: &DistributedOp, problem: impl Into<String>) -> AuditError {
    AuditError::Conflict {
        index,
        op: format!("{op:?}"),
        problem: problem.into(),
    }
}

/// Replay a compiled program and verify every resource constraint.
pub fn audit(program: &CompiledProgram) -> Result<AuditReport, AuditError> {
    let mut st = Replay::new(program);

    // Time order; emission index breaks ties so the replay is deterministic.
    let mut order: Vec<(usize, &ScheduledOp)> = program.ops.iter().enumerate().collect();
    order.sort_by_key(|(i, o)| (o.start, *i));

    for (index, sop) in order {
        let t = sop.start;
        let end = sop.end;
        let fl = sop.front_layer;
        match &sop.op {
            DistributedOp::LinkEntanglement { edge } => {
                let (u, v) = (*edge, *edge + 1);
                let a = st.free_channel(u, Side::Right, t).ok_or_else(|| {
                    conflict(
                        index,
                        &sop.op,
                        format!("no free comm slot on qpu {u} (right)"),
                    )
                })?;
                let b = st.free_channel(v, Side::Left, t).ok_or_else(|| {
                    conflict(
                        index,
                        &sop.op,
                        format!("no free comm slot on qpu {v} (left)"),
                    )
                })?;
                let id = st.next_pair;
                st.next_pair += 1;
                st.slots[side_index(u, Side::Right)][a] = SlotState::Bell(id, end);
                st.slots[side_index(v, Side::Left)][b] = SlotState::Bell(id, end);
                st.pairs.insert(
                    id,
                    (
                        (u, v),
                        [
                            (side_index(u, Side::Right), a),
                            (side_index(v, Side::Left), b),
                        ],
                    ),
                );
                st.generated += 1;
                *st.gen_by_layer.entry(fl).or_default() += 1;
            }
            DistributedOp::EntanglementSwap { left, right } => {
                // One pair per edge of the chain, all ready before the
                // measurement layer starts.
                let mut chain: Vec<usize> = Vec::with_capacity(right - left);
                for e in *left..*right {
                    let id = st.find_pair(e, e + 1, t).ok_or_else(|| {
                        conflict(
                            index,
                            &sop.op,
                            format!("no ready pair on edge {e}-{}", e + 1),
                        )
                    })?;
                    chain.push(id);
                }
                // The outermost halves survive as the end-to-end pair.
                let first_slots = st.pairs[&chain[0]].1;
                let last_slots = st.pairs[chain.last().unwrap()].1;
                let keep_a = first_slots[0];
                let keep_b = last_slots[1];
                let new_id = st.next_pair;
                st.next_pair += 1;
                for &id in &chain {
                    let (_, slots) = st.pairs.remove(&id).unwrap();
                    for (idx, ch) in slots {
                        if (idx, ch) == keep_a || (idx, ch) == keep_b {
                            st.slots[idx][ch] = SlotState::Bell(new_id, end);
                        } else {
                            st.slots[idx][ch] = SlotState::Free;
                            st.slot_busy[idx][ch] = end;
                            // Half measured out: its pair is consumed.
                        }
                    }
                    st.consumed += 1;
                    *st.use_by_layer.entry(fl).or_default() += 1;
                }
                // The surviving end-to-end pair is new, not consumed.
                st.consumed -= 1;
                *st.use_by_layer.entry(fl).or_default() -= 1;
                st.pairs.insert(new_id, ((*left, *right), [keep_a, keep_b]));
            }
            DistributedOp::RemoteCnot {
                control,
                target,
                control_qpu,
                target_qpu,
                role,
            } => {
                let id = st.find_pair(*control_qpu, *target_qpu, t).ok_or_else(|| {
                    conflict(
                        index,
                        &sop.op,
                        format!(
                            "no ready end-to-end pair between qpus {control_qpu} and {target_qpu}"
                        ),
                    )
                })?;
                for (qpu, q) in [(*control_qpu, *control), (*target_qpu, *target)] {
                    if st.data_busy[qpu] > t {
                        return Err(conflict(
                            index,
                            &sop.op,
                            format!("data slot of qpu {qpu} busy until {}", st.data_busy[qpu]),
                        ));
                    }
                    if *role == CnotRole::Gate && st.occupant[qpu] != Some(q) {
                        return Err(conflict(
                            index,
                            &sop.op,
                            format!(
                                "qubit {q} not resident on qpu {qpu} (found {:?})",
                                st.occupant[qpu]
                            ),
                        ));
                    }
                    st.data_busy[qpu] = end;
                }
                st.consume_pair(id, end);
                *st.use_by_layer.entry(fl).or_default() += 1;
                // Third leg of a three-CNOT swap completes the exchange.
                if let UnitKind::SwapLeg { a, b, leg: 2 } = program.units[sop.unit].kind {
                    let pa = st.occupant.iter().position(|&o| o == Some(a));
                    let pb = st.occupant.iter().position(|&o| o == Some(b));
                    if let (Some(pa), Some(pb)) = (pa, pb) {
                        st.occupant.swap(pa, pb);
                    }
                }
            }
            DistributedOp::Teleport {
                qubit,
                from_qpu,
                to_qpu,
            } => {
                let id = st.find_pair(*from_qpu, *to_qpu, t).ok_or_else(|| {
                    conflict(
                        index,
                        &sop.op,
                        format!("no ready pair between qpus {from_qpu} and {to_qpu}"),
                    )
                })?;
                if st.data_busy[*from_qpu] > t {
                    return Err(conflict(
                        index,
                        &sop.op,
                        format!("data slot of qpu {from_qpu} busy"),
                    ));
                }
                if st.occupant[*from_qpu] != Some(*qubit) {
                    return Err(conflict(
                        index,
                        &sop.op,
                        format!(
                            "qubit {qubit} not resident on qpu {from_qpu} (found {:?})",
                            st.occupant[*from_qpu]
                        ),
                    ));
                }
                st.data_busy[*from_qpu] = end;
                st.occupant[*from_qpu] = None;
                // The destination half turns into parked data.
                let (_, slots) = st.pairs[&id];
                let dest_side = side_index(
                    *to_qpu,
                    if from_qpu < to_qpu {
                        Side::Left
                    } else {
                        Side::Right
                    },
                );
                let (dst_idx, dst_ch) = slots
                    .into_iter()
                    .find(|&(idx, _)| idx == dest_side)
                    .expect("pair half at destination");
                st.consume_pair(id, end);
                st.slots[dst_idx][dst_ch] = SlotState::Data(*qubit, end);
                *st.use_by_layer.entry(fl).or_default() += 1;
            }
            DistributedOp::LocalSwap { qpu, side } => {
                let idx = side_index(*qpu, *side);
                let found = (0..st.slots[idx].len()).find_map(|ch| match st.slots[idx][ch] {
                    SlotState::Data(q, ready) if ready <= t => Some((ch, q)),
                    _ => None,
                });
                let (ch, q) = found.ok_or_else(|| {
                    conflict(
                        index,
                        &sop.op,
                        "no teleported state parked in any comm slot".to_string(),
                    )
                })?;
                if st.data_busy[*qpu] > t {
                    return Err(conflict(
                        index,
                        &sop.op,
                        format!("data slot of qpu {qpu} busy"),
                    ));
                }
                if st.occupant[*qpu].is_some() {
                    return Err(conflict(
                        index,
                        &sop.op,
                        format!("data slot of qpu {qpu} still holds {:?}", st.occupant[*qpu]),
                    ));
                }
                st.slots[idx][ch] = SlotState::Free;
                st.slot_busy[idx][ch] = end;
                st.occupant[*qpu] = Some(q);
                st.data_busy[*qpu] = end;
            }
            DistributedOp::LocalGate { gate, qpu } => {
                if st.data_busy[*qpu] > t {
                    return Err(conflict(
                        index,
                        &sop.op,
                        format!("data slot of qpu {qpu} busy"),
                    ));
                }
                let q = gate.qubits[0];
                if st.occupant[*qpu] != Some(q) {
                    return Err(conflict(
                        index,
                        &sop.op,
                        format!(
                            "qubit {q} not resident on qpu {qpu} (found {:?})",
                            st.occupant[*qpu]
                        ),
                    ));
                }
                st.data_busy[*qpu] = end;
            }
        }
    }

    if !st.pairs.is_empty() {
        return Err(AuditError::StrandedPairs {
            count: st.pairs.len(),
        });
    }
    for (qpu, side_states) in st.slots.iter().enumerate() {
        if side_states.iter().any(|s| matches!(s, SlotState::Data(..))) {
            return Err(AuditError::StrandedData { qpu: qpu / 2 });
        }
    }

    // Per front layer, every generated pair is consumed: no entanglement is
    // carried across layer boundaries.
    let mut layers: Vec<usize> = st
        .gen_by_layer
        .keys()
        .chain(st.use_by_layer.keys())
        .copied()
        .collect();
    layers.sort_unstable();
    layers.dedup();
    for fl in layers {
        let g = st.gen_by_layer.get(&fl).copied().unwrap_or(0);
        let c = st.use_by_layer.get(&fl).copied().unwrap_or(0);
        if g != c {
            return Err(AuditError::LayerImbalance {
                front_layer: fl,
                generated: g,
                consumed: c,
            });
        }
    }

    if !program.final_assignment.is_empty() {
        for (qubit, &claimed) in program.final_assignment.iter().enumerate() {
            let found = st.occupant.iter().position(|&o| o == Some(qubit));
            match found {
                Some(found) if found == claimed => {}
                Some(found) => {
                    return Err(AuditError::FinalPlacement {
                        qubit,
                        found,
                        claimed,
                    })
                }
                None => {
                    return Err(AuditError::FinalPlacement {
                        qubit,
                        found: usize::MAX,
                        claimed,
                    })
                }
            }
        }
    }

    Ok(AuditReport {
        pairs_generated: st.generated,
        pairs_consumed: st.consumed,
        ops_replayed: program.ops.len() as u64,
    })
}
