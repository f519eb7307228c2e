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

//! Resource-constrained ASAP scheduling of distributed operations into
//! layers, the derived metrics, and the closed-form depth bounds used for
//! validation reports.

use crate::strategy::{DistributedOp, Strategy, Unit, UnitKind};
use crate::topology::{Side, Topology};
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("no Bell pair available between QPUs {lo} and {hi} for {op}")]
    MissingPair { lo: usize, hi: usize, op: String },
    #[error("no free communication slot on QPU {qpu} ({side}) for link entanglement")]
    NoFreeSlot { qpu: usize, side: &'static str },
    #[error("no teleported state parked at QPU {qpu} ({side}) for local swap")]
    MissingParkedState { qpu: usize, side: &'static str },
    #[error("{count} Bell pairs left unconsumed at end of program")]
    StrandedPairs { count: usize },
}

/// Layer costs of the three entanglement-mediated tasks. All remaining
/// primitives (teleportation once its pair exists, local swaps, local gates)
/// take one layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostModel {
    pub c_le: u64,
    pub c_bsm: u64,
    pub c_cx: u64,
}

impl CostModel {
    pub fn unit() -> Self {
        CostModel {
            c_le: 1,
            c_bsm: 1,
            c_cx: 1,
        }
    }

    pub fn new(c_le: u64, c_bsm: u64, c_cx: u64) -> Self {
        assert!(
            c_le >= 1 && c_bsm >= 1 && c_cx >= 1,
            "layer costs must be >= 1"
        );
        CostModel { c_le, c_bsm, c_cx }
    }

    /// Depth of one remote CNOT lowered via entanglement swapping.
    pub fn d_es(&self) -> u64 {
        self.c_le + self.c_bsm + self.c_cx
    }

    /// Depth of one data-qubit swap realized as three remote CNOTs.
    pub fn d_qs(&self) -> u64 {
        3 * self.d_es()
    }

    /// Depth of a neighbor remote CNOT once data qubits are sorted.
    pub fn d_qs_prime(&self) -> u64 {
        self.c_le + self.c_cx
    }
}

/// An op placed on the layer timeline: it occupies layers `start..end`.
#[derive(Clone, Debug)]
pub struct ScheduledOp {
    pub op: DistributedOp,
    pub start: u64,
    pub end: u64,
    pub front_layer: usize,
    pub unit: usize,
}

/// Unit bookkeeping carried along for auditing and metrics.
#[derive(Clone, Debug)]
pub struct UnitMeta {
    pub kind: UnitKind,
    pub front_layer: usize,
}

/// A scheduled program: every op assigned to layers with no two ops sharing
/// a physical slot, entanglement consumed only after it exists, and the
/// per-qubit order of the source circuit preserved.
#[derive(Clone, Debug)]
pub struct CompiledProgram {
    pub source: String,
    pub strategy: Strategy,
    pub qpu_count: usize,
    pub epr_capacity: u8,
    pub costs: CostModel,
    pub ops: Vec<ScheduledOp>,
    pub units: Vec<UnitMeta>,
    pub depth: u64,
    pub front_layers: usize,
    /// logical qubit -> QPU after all data movement.
    pub final_assignment: Vec<usize>,
}

impl CompiledProgram {
    /// Ops grouped by their start layer, in start order.
    pub fn layers(&self) -> Vec<(u64, Vec<&ScheduledOp>)> {
        let mut map: Vec<(u64, Vec<&ScheduledOp>)> = Vec::new();
        let mut order: Vec<&ScheduledOp> = self.ops.iter().collect();
        order.sort_by_key(|o| o.start);
        for op in order {
            match map.last_mut() {
                Some((start, list)) if *start == op.start => list.push(op),
                _ => map.push((op.start, vec![op])),
            }
        }
        map
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Metrics {
    pub depth: u64,
    /// Layers in which every active op is link entanglement.
    pub link_generation_layers: u64,
    /// Total Bell pairs generated (= link entanglement count).
    pub epr_pairs: u64,
    pub remote_cnots: u64,
    pub teleports: u64,
    /// Data-qubit swaps performed (three-CNOT groups or teleport pairs).
    pub swaps_performed: u64,
    pub local_gates: u64,
    /// Layers carrying at least one op other than a pass-through local gate:
    /// the depth attributable to front-layer compilation.
    pub cnot_derived_layers: u64,
}

/// Count the metrics of a scheduled program.
pub fn measure(program: &CompiledProgram) -> Metrics {
    let depth = program.depth;
    let mut le_diff = vec![0i64; depth as usize + 1];
    let mut other_diff = vec![0i64; depth as usize + 1];
    let mut nonlocal_diff = vec![0i64; depth as usize + 1];
    let mut m = Metrics {
        depth,
        ..Default::default()
    };

    for sop in &program.ops {
        let (s, e) = (sop.start as usize, sop.end as usize);
        match &sop.op {
            DistributedOp::LinkEntanglement { .. } => {
                m.epr_pairs += 1;
                le_diff[s] += 1;
                le_diff[e] -= 1;
            }
            other => {
                other_diff[s] += 1;
                other_diff[e] -= 1;
                if let DistributedOp::RemoteCnot { .. } = other {
                    m.remote_cnots += 1;
                }
                if let DistributedOp::Teleport { .. } = other {
                    m.teleports += 1;
                }
            }
        }
        match &sop.op {
            DistributedOp::LocalGate { .. } => m.local_gates += 1,
            _ => {
                nonlocal_diff[s] += 1;
                nonlocal_diff[e] -= 1;
            }
        }
    }
    for unit in &program.units {
        match unit.kind {
            UnitKind::TeleportSwap { .. } | UnitKind::SwapLeg { leg: 0, .. } => {
                m.swaps_performed += 1
            }
            _ => {}
        }
    }

    let (mut le, mut other, mut nonlocal) = (0i64, 0i64, 0i64);
    for t in 0..depth as usize {
        le += le_diff[t];
        other += other_diff[t];
        nonlocal += nonlocal_diff[t];
        if le > 0 && other == 0 {
            m.link_generation_layers += 1;
        }
        if nonlocal > 0 {
            m.cnot_derived_layers += 1;
        }
    }
    m
}

/// The closed-form worst-case depths for distributing one circuit's CNOT
/// layers, per strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub cnot_layers: u64,
    pub costs: CostModel,
    pub d_es: u64,
    pub d_qs: u64,
    pub d_qs_prime: u64,
    pub es_bound: u64,
    pub dqs_bound: u64,
}

/// Worst-case compiled depth of `cnot_layers` layers on an `n`-qubit chain:
/// `cnot_layers * (n/2) * d_es` for the entanglement-swapping strategy and
/// `cnot_layers * ((n/4) * d_qs + d_qs')` for data-qubit swapping, with the
/// qubit-count factors taken as integer divisions.
///
/// The data-qubit-swap bound is only a valid upper bound for n >= 4: on a
/// chain of 3 processors the n/4 term vanishes while a CNOT across the
/// middle QPU still needs an entanglement-swap bridge worth d_es > d_qs'.
pub fn bounds(n: usize, cnot_layers: u64, costs: &CostModel) -> BoundReport {
    assert!(n >= 2, "bounds need at least two logical qubits");
    let d_es = costs.d_es();
    let d_qs = costs.d_qs();
    let d_qs_prime = costs.d_qs_prime();
    BoundReport {
        n,
        cnot_layers,
        costs: *costs,
        d_es,
        d_qs,
        d_qs_prime,
        es_bound: cnot_layers * (n as u64 / 2) * d_es,
        dqs_bound: cnot_layers * ((n as u64 / 4) * d_qs + d_qs_prime),
    }
}

/// Depth of the insertion/bubble sorting network on `n` wires, the classical
/// yardstick for nearest-neighbor reordering. Reporting only.
pub fn sorting_network_depth(n: usize) -> usize {
    assert!(n >= 2);
    2 * n - 3
}

const UNAVAILABLE: u64 = u64::MAX;

/// (qpu, side, channel) identifying one communication slot.
type CommSlot = (usize, Side, usize);

#[derive(Clone, Debug)]
struct PairRec {
    ready: u64,
    slot_a: CommSlot,
    slot_b: CommSlot,
}

struct MachineState {
    /// free_at per (qpu, side, channel). Index: qpu * 2 + side.
    slots: Vec<Vec<u64>>,
    /// Live Bell pairs by endpoint QPUs (lo, hi).
    pairs: HashMap<(usize, usize), VecDeque<PairRec>>,
    /// Teleported data waiting in a comm slot, by (qpu, side).
    parked: HashMap<(usize, Side), (u64, usize)>,
    data_free: Vec<u64>,
    fence_floor: u64,
    max_end: u64,
}

fn side_index(qpu: usize, side: Side) -> usize {
    qpu * 2 + side as usize
}

impl MachineState {
    fn new(topo: &Topology) -> Self {
        let n = topo.qpu_count();
        let cap = topo.epr_capacity() as usize;
        let mut slots = vec![Vec::new(); n * 2];
        for q in 0..n {
            if q > 0 {
                slots[side_index(q, Side::Left)] = vec![0; cap];
            }
            if q + 1 < n {
                slots[side_index(q, Side::Right)] = vec![0; cap];
            }
        }
        MachineState {
            slots,
            pairs: HashMap::new(),
            parked: HashMap::new(),
            data_free: vec![0; n],
            fence_floor: 0,
            max_end: 0,
        }
    }

    fn pop_pair(
        &mut self,
        a: usize,
        b: usize,
        op: &DistributedOp,
    ) -> Result<PairRec, ScheduleError> {
        let key = (a.min(b), a.max(b));
        self.pairs
            .get_mut(&key)
            .and_then(|q| q.pop_front())
            .ok_or_else(|| ScheduleError::MissingPair {
                lo: key.0,
                hi: key.1,
                op: format!("{op:?}"),
            })
    }

    fn free_slot(&mut self, slot: (usize, Side, usize), at: u64) {
        self.slots[side_index(slot.0, slot.1)][slot.2] = at;
    }

    fn finish(&mut self, end: u64) -> u64 {
        self.max_end = self.max_end.max(end);
        end
    }
}

/// Schedule lowered front layers onto the machine.
///
/// Ops are placed in emission order, each starting as early as its unit
/// structure, the per-data-slot program order, communication-slot
/// availability and per-edge EPR capacity allow. Link entanglements of one
/// unit start together, mirroring the task structure of the lowering: the
/// whole path is entangled in one round, then swapped, then consumed.
pub fn schedule(
    front_layers: &[Vec<Unit>],
    topo: &Topology,
    costs: &CostModel,
    source: impl Into<String>,
    strategy: Strategy,
) -> Result<CompiledProgram, ScheduleError> {
    let mut st = MachineState::new(topo);
    let mut ops: Vec<ScheduledOp> = Vec::new();
    let mut units: Vec<UnitMeta> = Vec::new();

    for (fl_idx, layer_units) in front_layers.iter().enumerate() {
        for unit in layer_units {
            let unit_idx = units.len();
            units.push(UnitMeta {
                kind: unit.kind.clone(),
                front_layer: fl_idx,
            });

            if matches!(unit.kind, UnitKind::Fence) {
                st.fence_floor = st.max_end;
                continue;
            }

            // Phase 1: claim slots for this unit's link entanglements and
            // start them all in the same round.
            let mut claimed: HashMap<usize, Vec<usize>> = HashMap::new();
            let mut le_choices: Vec<(usize, CommSlot, CommSlot)> = Vec::new();
            let mut t_le = st.fence_floor;
            for (op_idx, op) in unit.ops.iter().enumerate() {
                if let DistributedOp::LinkEntanglement { edge } = op {
                    let left = pick_slot(&st, &claimed, *edge, Side::Right)?;
                    let right = pick_slot(&st, &claimed, *edge + 1, Side::Left)?;
                    t_le = t_le
                        .max(st.slots[side_index(*edge, Side::Right)][left])
                        .max(st.slots[side_index(*edge + 1, Side::Left)][right]);
                    claimed
                        .entry(side_index(*edge, Side::Right))
                        .or_default()
                        .push(left);
                    claimed
                        .entry(side_index(*edge + 1, Side::Left))
                        .or_default()
                        .push(right);
                    le_choices.push((
                        op_idx,
                        (*edge, Side::Right, left),
                        (*edge + 1, Side::Left, right),
                    ));
                }
            }
            for &(op_idx, slot_a, slot_b) in &le_choices {
                let end = st.finish(t_le + costs.c_le);
                st.slots[side_index(slot_a.0, slot_a.1)][slot_a.2] = UNAVAILABLE;
                st.slots[side_index(slot_b.0, slot_b.1)][slot_b.2] = UNAVAILABLE;
                st.pairs
                    .entry((slot_a.0, slot_b.0))
                    .or_default()
                    .push_back(PairRec {
                        ready: end,
                        slot_a,
                        slot_b,
                    });
                ops.push(ScheduledOp {
                    op: unit.ops[op_idx].clone(),
                    start: t_le,
                    end,
                    front_layer: fl_idx,
                    unit: unit_idx,
                });
            }

            // Phase 2: the remaining ops of the unit, in order.
            for op in &unit.ops {
                match op {
                    DistributedOp::LinkEntanglement { .. } => {} // placed above
                    DistributedOp::EntanglementSwap { left, right } => {
                        let mut chain: Vec<PairRec> = Vec::with_capacity(right - left);
                        for edge in *left..*right {
                            chain.push(st.pop_pair(edge, edge + 1, op)?);
                        }
                        let start = chain
                            .iter()
                            .map(|p| p.ready)
                            .max()
                            .unwrap_or(st.fence_floor)
                            .max(st.fence_floor);
                        let end = st.finish(start + costs.c_bsm);
                        // Outermost halves become the end-to-end pair; all
                        // intermediate halves are measured out and freed.
                        let keep_a = chain.first().unwrap().slot_a;
                        let keep_b = chain.last().unwrap().slot_b;
                        for pair in &chain {
                            for slot in [pair.slot_a, pair.slot_b] {
                                if slot != keep_a && slot != keep_b {
                                    st.free_slot(slot, end);
                                }
                            }
                        }
                        st.pairs
                            .entry((*left, *right))
                            .or_default()
                            .push_back(PairRec {
                                ready: end,
                                slot_a: keep_a,
                                slot_b: keep_b,
                            });
                        ops.push(ScheduledOp {
                            op: op.clone(),
                            start,
                            end,
                            front_layer: fl_idx,
                            unit: unit_idx,
                        });
                    }
                    DistributedOp::RemoteCnot {
                        control_qpu,
                        target_qpu,
                        ..
                    } => {
                        let pair = st.pop_pair(*control_qpu, *target_qpu, op)?;
                        let start = pair
                            .ready
                            .max(st.data_free[*control_qpu])
                            .max(st.data_free[*target_qpu])
                            .max(st.fence_floor);
                        let end = st.finish(start + costs.c_cx);
                        st.free_slot(pair.slot_a, end);
                        st.free_slot(pair.slot_b, end);
                        st.data_free[*control_qpu] = end;
                        st.data_free[*target_qpu] = end;
                        ops.push(ScheduledOp {
                            op: op.clone(),
                            start,
                            end,
                            front_layer: fl_idx,
                            unit: unit_idx,
                        });
                    }
                    DistributedOp::Teleport {
                        from_qpu, to_qpu, ..
                    } => {
                        let pair = st.pop_pair(*from_qpu, *to_qpu, op)?;
                        let start = pair.ready.max(st.data_free[*from_qpu]).max(st.fence_floor);
                        let end = st.finish(start + 1);
                        st.data_free[*from_qpu] = end;
                        // The half at the source is measured out; the half at
                        // the destination now parks the teleported state.
                        let (src, dst) = if pair.slot_a.0 == *from_qpu {
                            (pair.slot_a, pair.slot_b)
                        } else {
                            (pair.slot_b, pair.slot_a)
                        };
                        st.free_slot(src, end);
                        let prev = st.parked.insert((dst.0, dst.1), (end, dst.2));
                        debug_assert!(prev.is_none(), "parked state overwritten at {dst:?}");
                        ops.push(ScheduledOp {
                            op: op.clone(),
                            start,
                            end,
                            front_layer: fl_idx,
                            unit: unit_idx,
                        });
                    }
                    DistributedOp::LocalSwap { qpu, side } => {
                        let (ready, channel) = st.parked.remove(&(*qpu, *side)).ok_or(
                            ScheduleError::MissingParkedState {
                                qpu: *qpu,
                                side: side.label(),
                            },
                        )?;
                        let start = ready.max(st.data_free[*qpu]).max(st.fence_floor);
                        let end = st.finish(start + 1);
                        st.free_slot((*qpu, *side, channel), end);
                        st.data_free[*qpu] = end;
                        ops.push(ScheduledOp {
                            op: op.clone(),
                            start,
                            end,
                            front_layer: fl_idx,
                            unit: unit_idx,
                        });
                    }
                    DistributedOp::LocalGate { qpu, .. } => {
                        let start = st.data_free[*qpu].max(st.fence_floor);
                        let end = st.finish(start + 1);
                        st.data_free[*qpu] = end;
                        ops.push(ScheduledOp {
                            op: op.clone(),
                            start,
                            end,
                            front_layer: fl_idx,
                            unit: unit_idx,
                        });
                    }
                }
            }
        }
    }

    let stranded: usize = st.pairs.values().map(|q| q.len()).sum();
    if stranded > 0 {
        return Err(ScheduleError::StrandedPairs { count: stranded });
    }

    Ok(CompiledProgram {
        source: source.into(),
        strategy,
        qpu_count: topo.qpu_count(),
        epr_capacity: topo.epr_capacity(),
        costs: *costs,
        ops,
        units,
        depth: st.max_end,
        front_layers: front_layers.len(),
        final_assignment: Vec::new(),
    })
}

/// Lowest-free unclaimed channel on one side of an edge.
fn pick_slot(
    st: &MachineState,
    claimed: &HashMap<usize, Vec<usize>>,
    qpu: usize,
    side: Side,
) -> Result<usize, ScheduleError> {
    let idx = side_index(qpu, side);
    let taken = claimed.get(&idx);
    let mut best: Option<(u64, usize)> = None;
    for (ch, &free_at) in st.slots[idx].iter().enumerate() {
        if taken.is_some_and(|t| t.contains(&ch)) {
            continue;
        }
        if free_at != UNAVAILABLE && best.is_none_or(|(b, _)| free_at < b) {
            best = Some((free_at, ch));
        }
    }
    best.map(|(_, ch)| ch).ok_or(ScheduleError::NoFreeSlot {
        qpu,
        side: side.label(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{FrontLayer, Gate};
    use crate::strategy::{compile_front_layer, emit_remote_cnot, CnotRole, Strategy};

    fn schedule_units(units: Vec<Unit>, topo: &Topology) -> CompiledProgram {
        schedule(
            &[units],
            topo,
            &CostModel::unit(),
            "test",
            Strategy::EntanglementSwap,
        )
        .unwrap()
    }

    #[test]
    fn neighbor_remote_cnot_takes_two_layers() {
        let t = Topology::build_linear(2, 1).unwrap();
        let unit = emit_remote_cnot(0, 1, &t, CnotRole::Gate).unwrap();
        let p = schedule_units(vec![unit], &t);
        assert_eq!(p.depth, 2);
        let m = measure(&p);
        assert_eq!(m.link_generation_layers, 1);
        assert_eq!(m.epr_pairs, 1);
        assert_eq!(m.remote_cnots, 1);
        assert_eq!(m.cnot_derived_layers, 2);
    }

    // Hand schedule per the task precedence: both link entanglements share
    // layer 0, the swap runs in layer 1, the CNOT in layer 2.
    #[test]
    fn hop_two_remote_cnot_takes_d_es_layers() {
        let t = Topology::build_linear(3, 1).unwrap();
        let unit = emit_remote_cnot(0, 2, &t, CnotRole::Gate).unwrap();
        let p = schedule_units(vec![unit], &t);
        assert_eq!(p.depth, CostModel::unit().d_es());
        let les: Vec<_> = p
            .ops
            .iter()
            .filter(|o| o.op.is_link_entanglement())
            .collect();
        assert_eq!(les.len(), 2);
        assert!(les.iter().all(|o| o.start == 0));
        let m = measure(&p);
        assert_eq!(m.depth, 3);
        assert_eq!(m.link_generation_layers, 1);
        assert_eq!(m.epr_pairs, 2);
        assert_eq!(m.remote_cnots, 1);
    }

    #[test]
    fn disjoint_neighbor_cnots_share_layers() {
        let t = Topology::build_linear(4, 1).unwrap();
        let units = vec![
            emit_remote_cnot(0, 1, &t, CnotRole::Gate).unwrap(),
            emit_remote_cnot(2, 3, &t, CnotRole::Gate).unwrap(),
        ];
        let p = schedule_units(units, &t);
        assert_eq!(p.depth, 2);
    }

    #[test]
    fn chained_cnots_serialize_on_the_shared_data_slot() {
        // CNOT(0,1) and CNOT(1,2) use different comm qubits of QPU 1, so
        // both links generate in layer 0, but the CNOTs themselves queue on
        // QPU 1's data qubit.
        let t = Topology::build_linear(3, 1).unwrap();
        let units = vec![
            emit_remote_cnot(0, 1, &t, CnotRole::Gate).unwrap(),
            emit_remote_cnot(1, 2, &t, CnotRole::Gate).unwrap(),
        ];
        let p = schedule_units(units, &t);
        assert_eq!(p.depth, 3);
        let starts: Vec<u64> = p
            .ops
            .iter()
            .filter(|o| o.op.is_link_entanglement())
            .map(|o| o.start)
            .collect();
        assert_eq!(starts, vec![0, 0]);
    }

    #[test]
    fn empty_program_measures_zero() {
        let t = Topology::build_linear(2, 1).unwrap();
        let p = schedule_units(vec![], &t);
        assert_eq!(p.depth, 0);
        assert_eq!(measure(&p), Metrics::default());
    }

    #[test]
    fn capacity_two_swap_uses_one_link_round() {
        let t = Topology::build_linear(2, 2).unwrap();
        let (units, _) = crate::strategy::emit_data_swap(0, 1, &t).unwrap();
        let p = schedule(
            &[units],
            &t,
            &CostModel::unit(),
            "t",
            Strategy::DataQubitSwap,
        )
        .unwrap();
        // le | teleports | local swaps
        assert_eq!(p.depth, 3);
        let m = measure(&p);
        assert_eq!(m.epr_pairs, 2);
        assert_eq!(m.link_generation_layers, 1);
        assert_eq!(m.teleports, 2);
        assert_eq!(m.swaps_performed, 1);
    }

    #[test]
    fn single_link_swap_regenerates_between_legs() {
        let t = Topology::build_linear(2, 1).unwrap();
        let (units, _) = crate::strategy::emit_data_swap(0, 1, &t).unwrap();
        let p = schedule(
            &[units],
            &t,
            &CostModel::unit(),
            "t",
            Strategy::DataQubitSwap,
        )
        .unwrap();
        // Three legs of (link entanglement + remote CNOT).
        assert_eq!(p.depth, 6);
        let m = measure(&p);
        assert_eq!(m.epr_pairs, 3);
        assert_eq!(m.swaps_performed, 1);
        assert_eq!(m.link_generation_layers, 3);
    }

    #[test]
    fn fence_floors_later_ops() {
        let t = Topology::build_linear(4, 1).unwrap();
        let fl0 = vec![
            emit_remote_cnot(0, 1, &t, CnotRole::Gate).unwrap(),
            Unit::fence(),
        ];
        let fl1 = vec![emit_remote_cnot(2, 3, &t, CnotRole::Gate).unwrap()];
        let p = schedule(
            &[fl0, fl1],
            &t,
            &CostModel::unit(),
            "t",
            Strategy::EntanglementSwap,
        )
        .unwrap();
        // Without the fence both CNOTs share layers 0-1; with it the second
        // starts at layer 2.
        assert_eq!(p.depth, 4);
    }

    #[test]
    fn scaled_costs_stretch_the_pipeline() {
        let t = Topology::build_linear(3, 1).unwrap();
        let costs = CostModel::new(2, 3, 4);
        let unit = emit_remote_cnot(0, 2, &t, CnotRole::Gate).unwrap();
        let p = schedule(&[vec![unit]], &t, &costs, "t", Strategy::EntanglementSwap).unwrap();
        assert_eq!(p.depth, costs.d_es());
        assert_eq!(p.depth, 9);
    }

    #[test]
    fn ghz_like_front_layers_consume_three_pairs() {
        // Three sequential front layers, one neighbor CNOT each.
        let t = Topology::build_linear(4, 1).unwrap();
        let mut topo = t.clone();
        let mut fls = Vec::new();
        for (c, tq) in [(0, 1), (1, 2), (2, 3)] {
            let f = FrontLayer {
                cnots: vec![Gate::cnot(c, tq, c)],
                ..Default::default()
            };
            let (units, next) = compile_front_layer(&f, &topo, Strategy::DataQubitSwap).unwrap();
            topo = next;
            fls.push(units);
        }
        let p = schedule(
            &fls,
            &t,
            &CostModel::unit(),
            "ghz4",
            Strategy::DataQubitSwap,
        )
        .unwrap();
        let m = measure(&p);
        assert_eq!(m.epr_pairs, 3);
        assert_eq!(m.remote_cnots, 3);
        assert_eq!(m.swaps_performed, 0);
    }

    #[test]
    fn bound_formulas_match_reference_rows() {
        let unit = CostModel::unit();
        assert_eq!(unit.d_es(), 3);
        assert_eq!(unit.d_qs(), 9);
        assert_eq!(unit.d_qs_prime(), 2);

        let b = bounds(16, 88, &unit);
        assert_eq!((b.es_bound, b.dqs_bound), (2112, 3344));
        let b = bounds(20, 19, &unit);
        assert_eq!((b.es_bound, b.dqs_bound), (570, 893));
        let b = bounds(4, 3, &unit);
        assert_eq!((b.es_bound, b.dqs_bound), (18, 33));
        // Odd qubit counts floor the per-layer factors.
        let b = bounds(5, 15, &unit);
        assert_eq!((b.es_bound, b.dqs_bound), (90, 165));
        let b = bounds(14, 12937, &unit);
        assert_eq!((b.es_bound, b.dqs_bound), (271_677, 375_173));
    }

    #[test]
    fn sorting_network_depth_formula() {
        assert_eq!(sorting_network_depth(2), 1);
        assert_eq!(sorting_network_depth(3), 3);
        assert_eq!(sorting_network_depth(16), 29);
    }

    #[test]
    fn stranded_pairs_are_rejected() {
        // A lone link entanglement with no consumer is a strategy bug.
        let t = Topology::build_linear(2, 1).unwrap();
        let unit = Unit {
            kind: UnitKind::LocalGate,
            ops: vec![DistributedOp::LinkEntanglement { edge: 0 }],
        };
        let err = schedule(
            &[vec![unit]],
            &t,
            &CostModel::unit(),
            "t",
            Strategy::EntanglementSwap,
        )
        .unwrap_err();
        assert!(matches!(err, ScheduleError::StrandedPairs { count: 1 }));
    }

    #[test]
    fn missing_pair_is_reported() {
        let t = Topology::build_linear(2, 1).unwrap();
        let unit = Unit {
            kind: UnitKind::RemoteCnot {
                control: 0,
                target: 1,
            },
            ops: vec![DistributedOp::RemoteCnot {
                control: 0,
                target: 1,
                control_qpu: 0,
                target_qpu: 1,
                role: CnotRole::Gate,
            }],
        };
        let err = schedule(
            &[vec![unit]],
            &t,
            &CostModel::unit(),
            "t",
            Strategy::EntanglementSwap,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ScheduleError::MissingPair { lo: 0, hi: 1, .. }
        ));
    }
}
