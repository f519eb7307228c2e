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

//! Lowering of front layers into distributed primitives.
//!
//! Two strategies are provided. The entanglement-swapping strategy realizes
//! every CNOT in place: link entanglement along the path between the two
//! QPUs, one entanglement swap collapsing the chain, then the remote CNOT.
//! The data-qubit-swapping strategy first reorders the data qubits with the
//! pair-sorting routine below so that every CNOT of the layer lands on
//! neighboring participants, then emits the (mostly neighbor) remote CNOTs.
//! Swaps are realized as three remote CNOTs on single-link hardware, or as a
//! pair of parallel teleportations when every link carries two EPR pairs.

use crate::circuit::{FrontLayer, Gate, QubitId};
use crate::topology::{Side, Topology, TopologyError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("malformed interaction layer: label {label} appears {count} times (expected 2)")]
    MalformedLayer { label: u32, count: usize },
    #[error("remote operation between qubits {a} and {b} resolved to the same QPU")]
    SameQpu { a: QubitId, b: QubitId },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// Which lowering strategy to apply to each front layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    EntanglementSwap,
    DataQubitSwap,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::EntanglementSwap => "entanglement-swap",
            Strategy::DataQubitSwap => "data-qubit-swap",
        }
    }
}

/// Whether a remote CNOT realizes a gate of the source circuit or one leg of
/// a three-CNOT data swap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnotRole {
    Gate,
    SwapLeg,
}

/// One lowered primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistributedOp {
    /// Generate one Bell pair across the link joining QPUs `edge` and
    /// `edge + 1`.
    LinkEntanglement { edge: usize },
    /// Bell-state measurements at every QPU strictly between `left` and
    /// `right`, collapsing the chain of neighbor pairs into one end-to-end
    /// pair. All intermediate measurements run simultaneously.
    EntanglementSwap { left: usize, right: usize },
    /// CNOT between remote data qubits, consuming one end-to-end Bell pair.
    RemoteCnot {
        control: QubitId,
        target: QubitId,
        control_qpu: usize,
        target_qpu: usize,
        role: CnotRole,
    },
    /// Teleport the data state of `qubit` into a communication slot of
    /// `to_qpu`, consuming one end-to-end Bell pair.
    Teleport {
        qubit: QubitId,
        from_qpu: usize,
        to_qpu: usize,
    },
    /// Swap the data slot of `qpu` with its communication slot on `side`.
    LocalSwap { qpu: usize, side: Side },
    /// One-qubit gate (or measurement) executed where the qubit lives.
    LocalGate { gate: Gate, qpu: usize },
}

impl DistributedOp {
    pub fn is_link_entanglement(&self) -> bool {
        matches!(self, DistributedOp::LinkEntanglement { .. })
    }

    pub fn is_local_gate(&self) -> bool {
        matches!(self, DistributedOp::LocalGate { .. })
    }

    /// Intermediate QPUs of an entanglement swap, in chain order.
    pub fn swap_intermediates(&self) -> Option<Vec<usize>> {
        match self {
            DistributedOp::EntanglementSwap { left, right } => Some((left + 1..*right).collect()),
            _ => None,
        }
    }
}

/// What a lowering unit stands for. Units are the atomic pieces emitted by
/// the strategies; ops inside one unit form a small dependency chain, ops of
/// different units are ordered only by the resources they share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitKind {
    /// A front-layer CNOT.
    RemoteCnot { control: QubitId, target: QubitId },
    /// Leg `leg` (0..3) of a three-remote-CNOT data swap of `a` and `b`.
    SwapLeg { a: QubitId, b: QubitId, leg: u8 },
    /// Teleportation-based data swap of `a` and `b` over doubled links.
    TeleportSwap { a: QubitId, b: QubitId },
    /// Pass-through one-qubit gate.
    LocalGate,
    /// Barrier fence: everything after it starts in a strictly later layer.
    Fence,
}

#[derive(Clone, Debug)]
pub struct Unit {
    pub kind: UnitKind,
    pub ops: Vec<DistributedOp>,
}

impl Unit {
    pub fn fence() -> Self {
        Unit {
            kind: UnitKind::Fence,
            ops: Vec::new(),
        }
    }

    pub fn has_link_entanglement(&self) -> bool {
        self.ops.iter().any(|o| o.is_link_entanglement())
    }

    pub fn link_entanglement_count(&self) -> usize {
        self.ops.iter().filter(|o| o.is_link_entanglement()).count()
    }
}

const DUMMY: i64 = -1;

/// Swaps computed by [`sort_pairs`], expressed as transpositions of vector
/// positions and grouped one step per sort cycle. The swaps within a step
/// act on disjoint position spans, so they can run simultaneously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapPlan {
    pub steps: Vec<Vec<(usize, usize)>>,
    /// Vector length after dummy padding.
    pub padded_len: usize,
}

impl SwapPlan {
    /// Number of sort cycles executed (always padded_len / 4).
    pub fn cycles(&self) -> usize {
        self.steps.len()
    }

    pub fn swap_count(&self) -> usize {
        self.steps.iter().map(|s| s.len()).sum()
    }

    /// Steps that perform at least one actual swap.
    pub fn active_steps(&self) -> usize {
        self.steps.iter().filter(|s| !s.is_empty()).count()
    }

    /// Apply the planned transpositions to a padded label vector.
    pub fn apply_to(&self, v: &mut [i64]) {
        for step in &self.steps {
            for &(i, j) in step {
                v.swap(i, j);
            }
        }
    }
}

/// Compute the swaps that make both occurrences of every pair label adjacent.
///
/// `interactions` lists, position by position along the chain, the label of
/// the CNOT each participating qubit belongs to, e.g. `[1, 2, 2, 3, 1, 3]`.
/// Every label must appear exactly twice. When the length is not a multiple
/// of four a dummy pair is appended; it is never moved.
///
/// The routine runs exactly `padded_len / 4` cycles over two half masks.
/// Each cycle settles one pair per half: the pair whose second occurrence
/// comes first is moved onto an aligned slot of its half. When no pair lies
/// fully inside the first half, every unsettled pair straddles the boundary,
/// and the cycle instead settles two pairs with two span-disjoint swaps: the
/// last unsettled label of the first half is swapped next to its partner in
/// the second half, and the label it displaces is completed against the
/// first half's trailing slot.
pub fn sort_pairs(interactions: &[u32]) -> Result<SwapPlan, StrategyError> {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &l in interactions {
        *counts.entry(l).or_insert(0) += 1;
    }
    for &l in interactions {
        let c = counts[&l];
        if c != 2 {
            return Err(StrategyError::MalformedLayer { label: l, count: c });
        }
    }

    let mut v: Vec<i64> = interactions.iter().map(|&l| l as i64).collect();
    if v.is_empty() {
        return Ok(SwapPlan {
            steps: Vec::new(),
            padded_len: 0,
        });
    }
    if !v.len().is_multiple_of(4) {
        v.push(DUMMY);
        v.push(DUMMY);
    }
    let len = v.len();
    debug_assert_eq!(len % 4, 0);

    let mut mask1: Vec<usize> = (0..len / 2).collect();
    let mut mask2: Vec<usize> = (len / 2..len).collect();
    let mut steps = Vec::with_capacity(len / 4);

    for _cycle in 0..len / 4 {
        let mut step = Vec::new();
        if find_first_contained(&v, &mask1).is_some() {
            if let Some(sw) = settle_first_pair(&mut v, &mut mask1) {
                step.push(sw);
            }
            if let Some(sw) = settle_first_pair(&mut v, &mut mask2) {
                step.push(sw);
            }
        } else {
            settle_straddling(&mut v, &mut mask1, &mut mask2, &mut step);
        }
        steps.push(step);
    }
    debug_assert!(mask1.is_empty() && mask2.is_empty());
    debug_assert!(v.chunks(2).all(|c| c[0] == c[1]));

    Ok(SwapPlan {
        steps,
        padded_len: len,
    })
}

/// Local indices (first, second occurrence) of the earliest-completed label
/// inside the masked subvector, if any label has both copies there.
fn find_first_contained(v: &[i64], mask: &[usize]) -> Option<(usize, usize)> {
    let mut seen: HashMap<i64, usize> = HashMap::new();
    for (local, &g) in mask.iter().enumerate() {
        if let Some(&first) = seen.get(&v[g]) {
            return Some((first, local));
        }
        seen.insert(v[g], local);
    }
    None
}

/// Settle the earliest contained pair of this half onto the aligned slot of
/// its second occurrence. Returns the performed transposition, or `None`
/// when the pair is already in place. The settled slot leaves the mask.
fn settle_first_pair(v: &mut [i64], mask: &mut Vec<usize>) -> Option<(usize, usize)> {
    let (ifirst, ilast) = find_first_contained(v, mask)
        .expect("mask invariant: each cycle finds a contained pair per half");
    let iswap = if ilast % 2 == 1 { ilast - 1 } else { ilast + 1 };
    let performed = if ifirst == iswap {
        None
    } else {
        let (a, b) = (mask[ifirst], mask[iswap]);
        v.swap(a, b);
        Some((a.min(b), a.max(b)))
    };
    let (lo, hi) = if ilast % 2 == 1 {
        (ilast - 1, ilast)
    } else {
        (ilast, ilast + 1)
    };
    mask.remove(hi);
    mask.remove(lo);
    performed
}

/// All unsettled pairs straddle the half boundary: settle two of them with
/// two swaps whose position spans do not overlap, so both run in one step.
fn settle_straddling(
    v: &mut [i64],
    mask1: &mut Vec<usize>,
    mask2: &mut Vec<usize>,
    step: &mut Vec<(usize, usize)>,
) {
    let m = mask1.len();
    debug_assert!(m == mask2.len() && m >= 2 && m.is_multiple_of(2));
    let x = v[mask1[m - 1]];
    debug_assert_ne!(x, DUMMY, "dummy labels never reach the first half");
    let q = mask2
        .iter()
        .position(|&g| v[g] == x)
        .expect("straddling label has its partner in the second half");
    // Align on the slot containing the partner.
    let dest = if q % 2 == 1 { q - 1 } else { q + 1 };
    let y = v[mask2[dest]];
    debug_assert!(y != x && y != DUMMY);
    let (a, b) = (mask1[m - 1], mask2[dest]);
    v.swap(a, b);
    step.push((a.min(b), a.max(b)));
    // The displaced label y now sits at the first half's trailing slot; pull
    // its partner alongside. Spans stay disjoint: this swap stays at or left
    // of mask1[m-2], the first one starts at mask1[m-1].
    let j = mask1[..m - 1]
        .iter()
        .position(|&g| v[g] == y)
        .expect("displaced label has its partner in the first half");
    if j != m - 2 {
        let (c, d) = (mask1[j], mask1[m - 2]);
        v.swap(c, d);
        step.push((c.min(d), c.max(d)));
    }
    let (lo2, hi2) = if q % 2 == 1 { (q - 1, q) } else { (q, q + 1) };
    mask2.remove(hi2);
    mask2.remove(lo2);
    mask1.remove(m - 1);
    mask1.remove(m - 2);
}

fn side_toward(from: usize, to: usize) -> Side {
    if to > from {
        Side::Right
    } else {
        Side::Left
    }
}

/// Lower one remote CNOT against the current assignment.
///
/// Adjacent QPUs take a single link entanglement plus the remote CNOT. At
/// hop distance h ≥ 2, one pair per path edge is generated (in parallel),
/// one entanglement swap collapses the chain end to end, and the remote CNOT
/// consumes the resulting pair: h pairs generated, h − 1 consumed by the
/// swap, one by the CNOT.
pub fn emit_remote_cnot(
    control: QubitId,
    target: QubitId,
    topo: &Topology,
    role: CnotRole,
) -> Result<Unit, StrategyError> {
    let control_qpu = topo.qpu_of(control)?;
    let target_qpu = topo.qpu_of(target)?;
    if control_qpu == target_qpu {
        return Err(StrategyError::SameQpu {
            a: control,
            b: target,
        });
    }
    let (lo, hi) = (control_qpu.min(target_qpu), control_qpu.max(target_qpu));
    let mut ops = Vec::with_capacity(hi - lo + 2);
    for edge in lo..hi {
        ops.push(DistributedOp::LinkEntanglement { edge });
    }
    if hi - lo >= 2 {
        ops.push(DistributedOp::EntanglementSwap {
            left: lo,
            right: hi,
        });
    }
    ops.push(DistributedOp::RemoteCnot {
        control,
        target,
        control_qpu,
        target_qpu,
        role,
    });
    Ok(Unit {
        kind: match role {
            CnotRole::Gate => UnitKind::RemoteCnot { control, target },
            CnotRole::SwapLeg => UnitKind::SwapLeg {
                a: control,
                b: target,
                leg: 0,
            },
        },
        ops,
    })
}

/// Exchange the data states of `a` and `b` and update the assignment.
///
/// Single-link topology: three remote CNOTs a→b, b→a, a→b. Doubled links:
/// two end-to-end Bell pairs are built across the path in parallel (two
/// entanglement swaps when non-adjacent), each state teleports to the
/// opposite endpoint's communication slot, and two local swaps deposit them
/// into the data slots.
pub fn emit_data_swap(
    a: QubitId,
    b: QubitId,
    topo: &Topology,
) -> Result<(Vec<Unit>, Topology), StrategyError> {
    let pa = topo.qpu_of(a)?;
    let pb = topo.qpu_of(b)?;
    if pa == pb {
        return Ok((Vec::new(), topo.clone()));
    }
    let units = if topo.epr_capacity() == 2 {
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        let mut ops = Vec::new();
        for _channel in 0..2 {
            for edge in lo..hi {
                ops.push(DistributedOp::LinkEntanglement { edge });
            }
        }
        if hi - lo >= 2 {
            ops.push(DistributedOp::EntanglementSwap {
                left: lo,
                right: hi,
            });
            ops.push(DistributedOp::EntanglementSwap {
                left: lo,
                right: hi,
            });
        }
        ops.push(DistributedOp::Teleport {
            qubit: a,
            from_qpu: pa,
            to_qpu: pb,
        });
        ops.push(DistributedOp::Teleport {
            qubit: b,
            from_qpu: pb,
            to_qpu: pa,
        });
        ops.push(DistributedOp::LocalSwap {
            qpu: pa,
            side: side_toward(pa, pb),
        });
        ops.push(DistributedOp::LocalSwap {
            qpu: pb,
            side: side_toward(pb, pa),
        });
        vec![Unit {
            kind: UnitKind::TeleportSwap { a, b },
            ops,
        }]
    } else {
        let legs = [(a, b), (b, a), (a, b)];
        let mut units = Vec::with_capacity(3);
        for (leg, &(c, t)) in legs.iter().enumerate() {
            let mut u = emit_remote_cnot(c, t, topo, CnotRole::SwapLeg)?;
            u.kind = UnitKind::SwapLeg {
                a,
                b,
                leg: leg as u8,
            };
            units.push(u);
        }
        units
    };
    let updated = topo.apply_swap(a, b)?;
    Ok((units, updated))
}

/// Lower a whole front layer under the chosen strategy, returning the
/// emitted units and the assignment left behind.
///
/// The data-qubit-swapping interactions vector runs over chain positions of
/// participating qubits only; QPUs idle in this layer are skipped, so the
/// final remote CNOTs may still cross idle processors, bridged by
/// entanglement swapping.
pub fn compile_front_layer(
    front: &FrontLayer,
    topo: &Topology,
    strategy: Strategy,
) -> Result<(Vec<Unit>, Topology), StrategyError> {
    let mut units = Vec::new();
    let mut topo = topo.clone();

    if strategy == Strategy::DataQubitSwap && front.cnots.len() > 1 {
        // Participants in chain order; labels by order of first appearance.
        let mut cnot_of_qubit: HashMap<QubitId, usize> = HashMap::new();
        for (i, g) in front.cnots.iter().enumerate() {
            for &q in &g.qubits {
                let prev = cnot_of_qubit.insert(q, i);
                debug_assert!(prev.is_none(), "front layer gates must be disjoint");
            }
        }
        let mut participants: Vec<(usize, QubitId)> = Vec::with_capacity(2 * front.cnots.len());
        for g in &front.cnots {
            participants.push((topo.qpu_of(g.control())?, g.control()));
            participants.push((topo.qpu_of(g.target())?, g.target()));
        }
        participants.sort_unstable();

        let mut labels: Vec<u32> = Vec::with_capacity(participants.len());
        let mut label_of_cnot: HashMap<usize, u32> = HashMap::new();
        let mut next_label = 1u32;
        for &(_, q) in &participants {
            let ci = cnot_of_qubit[&q];
            let label = *label_of_cnot.entry(ci).or_insert_with(|| {
                let l = next_label;
                next_label += 1;
                l
            });
            labels.push(label);
        }

        let plan = sort_pairs(&labels)?;
        let mut occupant: Vec<QubitId> = participants.iter().map(|p| p.1).collect();
        for step in &plan.steps {
            for &(i, j) in step {
                let (qa, qb) = (occupant[i], occupant[j]);
                let (swap_units, next) = emit_data_swap(qa, qb, &topo)?;
                topo = next;
                units.extend(swap_units);
                occupant.swap(i, j);
            }
        }
    }

    for g in &front.cnots {
        units.push(emit_remote_cnot(
            g.control(),
            g.target(),
            &topo,
            CnotRole::Gate,
        )?);
    }
    Ok((units, topo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn apply_plan(labels: &[u32], plan: &SwapPlan) -> Vec<i64> {
        let mut v: Vec<i64> = labels.iter().map(|&l| l as i64).collect();
        while v.len() < plan.padded_len {
            v.push(DUMMY);
        }
        plan.apply_to(&mut v);
        v
    }

    fn all_adjacent(v: &[i64]) -> bool {
        v.chunks(2).all(|c| c.len() == 2 && c[0] == c[1])
    }

    /// Random full layer over `n` positions: a uniformly shuffled perfect
    /// matching, labels renumbered by first appearance.
    fn random_full_layer(n: usize, rng: &mut StdRng) -> Vec<u32> {
        let mut raw: Vec<u32> = (0..n as u32 / 2).flat_map(|l| [l + 1, l + 1]).collect();
        raw.shuffle(rng);
        relabel(&raw)
    }

    fn relabel(raw: &[u32]) -> Vec<u32> {
        let mut map = HashMap::new();
        let mut next = 1u32;
        raw.iter()
            .map(|&l| {
                *map.entry(l).or_insert_with(|| {
                    let v = next;
                    next += 1;
                    v
                })
            })
            .collect()
    }

    #[test]
    fn sort_pairs_reference_example() {
        // [1 1 2 3 2 3] sorts to [1 1 2 2 3 3] with the dummy pair untouched.
        let labels = [1, 1, 2, 3, 2, 3];
        let plan = sort_pairs(&labels).unwrap();
        let v = apply_plan(&labels, &plan);
        assert_eq!(&v[..6], &[1, 1, 2, 2, 3, 3]);
        assert_eq!(&v[6..], &[DUMMY, DUMMY]);
        assert_eq!(plan.cycles(), 2);
        for step in &plan.steps {
            for &(i, j) in step {
                assert!(i < 6 && j < 6, "dummy positions must not move");
            }
        }
    }

    #[test]
    fn sort_pairs_already_adjacent_is_empty() {
        let plan = sort_pairs(&[1, 1, 2, 2]).unwrap();
        assert_eq!(plan.swap_count(), 0);
        assert_eq!(plan.cycles(), 1);
    }

    #[test]
    fn sort_pairs_rejects_malformed_layers() {
        assert!(matches!(
            sort_pairs(&[1, 1, 2]),
            Err(StrategyError::MalformedLayer { label: 2, count: 1 })
        ));
        assert!(matches!(
            sort_pairs(&[1, 1, 1, 1]),
            Err(StrategyError::MalformedLayer { label: 1, count: 4 })
        ));
    }

    #[test]
    fn sort_pairs_interleaved_worst_case() {
        // Every pair straddles the halves.
        let labels = [1, 2, 3, 4, 1, 2, 3, 4];
        let plan = sort_pairs(&labels).unwrap();
        let v = apply_plan(&labels, &plan);
        assert!(all_adjacent(&v), "got {v:?}");
        assert_eq!(plan.cycles(), 2);
        // Each step's swaps must have disjoint position spans.
        for step in &plan.steps {
            if step.len() == 2 {
                let (a, b) = (step[0], step[1]);
                assert!(a.1 < b.0 || b.1 < a.0, "overlapping spans {a:?} {b:?}");
            }
            assert!(step.len() <= 2);
        }
    }

    #[test]
    fn sort_pairs_random_layers_sort_in_quarter_cycles() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [4usize, 8, 12, 16, 20] {
            for _ in 0..300 {
                let labels = random_full_layer(n, &mut rng);
                let plan = sort_pairs(&labels).unwrap();
                assert_eq!(plan.cycles(), n / 4 + usize::from(n % 4 != 0));
                let v = apply_plan(&labels, &plan);
                assert!(all_adjacent(&v), "labels {labels:?} -> {v:?}");
            }
        }
    }

    #[test]
    fn sort_pairs_odd_pair_counts_leave_dummy_in_place() {
        let mut rng = StdRng::seed_from_u64(8);
        for k in [1usize, 3, 5, 7] {
            for _ in 0..200 {
                let mut raw: Vec<u32> = (0..k as u32).flat_map(|l| [l + 1, l + 1]).collect();
                raw.shuffle(&mut rng);
                let labels = relabel(&raw);
                let plan = sort_pairs(&labels).unwrap();
                let padded = plan.padded_len;
                assert_eq!(padded, 2 * k + 2);
                for step in &plan.steps {
                    for &(i, j) in step {
                        assert!(i < padded - 2 && j < padded - 2, "dummy moved");
                    }
                }
                let v = apply_plan(&labels, &plan);
                assert!(all_adjacent(&v));
            }
        }
    }

    #[test]
    fn remote_cnot_between_neighbors() {
        let t = Topology::build_linear(4, 1).unwrap();
        let unit = emit_remote_cnot(0, 1, &t, CnotRole::Gate).unwrap();
        assert_eq!(unit.ops.len(), 2);
        assert_eq!(unit.link_entanglement_count(), 1);
        assert!(matches!(
            unit.ops[0],
            DistributedOp::LinkEntanglement { edge: 0 }
        ));
        assert!(matches!(
            unit.ops[1],
            DistributedOp::RemoteCnot {
                control: 0,
                target: 1,
                ..
            }
        ));
    }

    #[test]
    fn remote_cnot_at_hop_two_swaps_entanglement() {
        let t = Topology::build_linear(4, 1).unwrap();
        let unit = emit_remote_cnot(0, 2, &t, CnotRole::Gate).unwrap();
        // 2 link entanglements + 1 entanglement swap + 1 remote CNOT
        assert_eq!(unit.ops.len(), 4);
        assert_eq!(unit.link_entanglement_count(), 2);
        let swap = &unit.ops[2];
        assert!(matches!(
            swap,
            DistributedOp::EntanglementSwap { left: 0, right: 2 }
        ));
        assert_eq!(swap.swap_intermediates().unwrap(), vec![1]);
    }

    #[test]
    fn remote_cnot_at_hop_five_generates_five_pairs() {
        let t = Topology::build_linear(6, 1).unwrap();
        let unit = emit_remote_cnot(0, 5, &t, CnotRole::Gate).unwrap();
        assert_eq!(unit.link_entanglement_count(), 5);
        // Resource ledger: 5 generated = 4 consumed by the swap + 1 by the CNOT.
        let swap_consumed = unit.ops[5].swap_intermediates().unwrap().len();
        assert_eq!(swap_consumed, 4);
    }

    #[test]
    fn remote_cnot_direction_is_preserved() {
        let t = Topology::build_linear(4, 1).unwrap();
        let unit = emit_remote_cnot(3, 1, &t, CnotRole::Gate).unwrap();
        match unit.ops.last().unwrap() {
            DistributedOp::RemoteCnot {
                control,
                target,
                control_qpu,
                target_qpu,
                ..
            } => {
                assert_eq!((*control, *target), (3, 1));
                assert_eq!((*control_qpu, *target_qpu), (3, 1));
            }
            other => panic!("unexpected op {other:?}"),
        }
    }

    #[test]
    fn data_swap_single_link_is_three_remote_cnots() {
        let t = Topology::build_linear(4, 1).unwrap();
        let (units, updated) = emit_data_swap(0, 1, &t).unwrap();
        assert_eq!(units.len(), 3);
        let ops: Vec<_> = units.iter().flat_map(|u| u.ops.iter()).collect();
        assert_eq!(ops.len(), 6); // 3 x (link entanglement + remote CNOT)
        assert_eq!(ops.iter().filter(|o| o.is_link_entanglement()).count(), 3);
        let legs: Vec<(QubitId, QubitId)> = ops
            .iter()
            .filter_map(|o| match o {
                DistributedOp::RemoteCnot {
                    control, target, ..
                } => Some((*control, *target)),
                _ => None,
            })
            .collect();
        assert_eq!(legs, vec![(0, 1), (1, 0), (0, 1)]);
        assert_eq!(updated.qpu_of(0).unwrap(), 1);
        assert_eq!(updated.qpu_of(1).unwrap(), 0);
    }

    #[test]
    fn data_swap_doubled_links_teleports_in_parallel() {
        let t = Topology::build_linear(4, 2).unwrap();
        let (units, updated) = emit_data_swap(0, 1, &t).unwrap();
        assert_eq!(units.len(), 1);
        let ops = &units[0].ops;
        assert_eq!(ops.iter().filter(|o| o.is_link_entanglement()).count(), 2);
        assert_eq!(
            ops.iter()
                .filter(|o| matches!(o, DistributedOp::Teleport { .. }))
                .count(),
            2
        );
        assert_eq!(
            ops.iter()
                .filter(|o| matches!(o, DistributedOp::LocalSwap { .. }))
                .count(),
            2
        );
        assert!(!ops
            .iter()
            .any(|o| matches!(o, DistributedOp::EntanglementSwap { .. })));
        assert_eq!(updated.qpu_of(0).unwrap(), 1);
    }

    #[test]
    fn data_swap_same_qubit_is_a_no_op() {
        let t = Topology::build_linear(4, 1).unwrap();
        let (units, updated) = emit_data_swap(2, 2, &t).unwrap();
        assert!(units.is_empty());
        assert_eq!(updated, t);
    }

    fn front_of(cnots: &[(QubitId, QubitId)]) -> FrontLayer {
        FrontLayer {
            cnots: cnots
                .iter()
                .enumerate()
                .map(|(i, &(c, t))| Gate::cnot(c, t, i))
                .collect(),
            ..Default::default()
        }
    }

    #[test]
    fn adjacent_layer_needs_no_swaps_under_either_strategy() {
        let t = Topology::build_linear(4, 1).unwrap();
        let front = front_of(&[(0, 1), (2, 3)]);
        for strategy in [Strategy::EntanglementSwap, Strategy::DataQubitSwap] {
            let (units, updated) = compile_front_layer(&front, &t, strategy).unwrap();
            assert_eq!(units.len(), 2, "{strategy:?}");
            assert!(units.iter().all(|u| u.ops.len() == 2));
            assert_eq!(updated.assignment(), t.assignment());
        }
    }

    // The hybrid case: three CNOTs (q0,q2), (q3,q5), (q4,q6) with q1 idle.
    // The interactions vector over participants is [1 1 2 3 2 3]; one remote
    // swap between the neighbors holding q4 and q5 makes everything
    // participant-adjacent, and the CNOT crossing idle q1's QPU is bridged
    // by an entanglement swap. All three final CNOTs occupy disjoint spans.
    #[test]
    fn hybrid_layer_with_idle_qubit() {
        let t = Topology::build_linear(7, 1).unwrap();
        let front = front_of(&[(0, 2), (3, 5), (4, 6)]);
        let (units, updated) = compile_front_layer(&front, &t, Strategy::DataQubitSwap).unwrap();
        let swaps: Vec<_> = units
            .iter()
            .filter(|u| matches!(u.kind, UnitKind::SwapLeg { leg: 0, .. }))
            .collect();
        assert_eq!(swaps.len(), 1);
        assert!(matches!(
            swaps[0].kind,
            UnitKind::SwapLeg { a: 4, b: 5, .. }
        ));
        assert_eq!(updated.qpu_of(4).unwrap(), 5);
        assert_eq!(updated.qpu_of(5).unwrap(), 4);

        let gates: Vec<&Unit> = units
            .iter()
            .filter(|u| matches!(u.kind, UnitKind::RemoteCnot { .. }))
            .collect();
        assert_eq!(gates.len(), 3);
        // (0,2) crosses the idle QPU 1 and needs the entanglement-swap bridge.
        let bridge = gates
            .iter()
            .find(|u| {
                matches!(
                    u.kind,
                    UnitKind::RemoteCnot {
                        control: 0,
                        target: 2
                    }
                )
            })
            .unwrap();
        assert!(bridge
            .ops
            .iter()
            .any(|o| matches!(o, DistributedOp::EntanglementSwap { left: 0, right: 2 })));
        // The other two became neighbor CNOTs.
        for u in &gates {
            if !std::ptr::eq(*u, *bridge) {
                assert_eq!(u.ops.len(), 2);
            }
        }
        // Disjoint spans: (0..2), (3..4), (5..6).
        let spans: Vec<(usize, usize)> = gates
            .iter()
            .map(|u| match u.ops.last().unwrap() {
                DistributedOp::RemoteCnot {
                    control_qpu,
                    target_qpu,
                    ..
                } => (*control_qpu.min(target_qpu), *control_qpu.max(target_qpu)),
                _ => unreachable!(),
            })
            .collect();
        for i in 0..spans.len() {
            for j in i + 1..spans.len() {
                assert!(spans[i].1 < spans[j].0 || spans[j].1 < spans[i].0);
            }
        }
    }

    // Semantics preservation and EPR conservation over random full layers.
    #[test]
    fn full_layers_sort_then_execute_neighbor_cnots() {
        let mut rng = StdRng::seed_from_u64(99);
        for n in [4usize, 8, 12, 16] {
            for _ in 0..50 {
                let t = Topology::build_linear(n, 1).unwrap();
                let mut order: Vec<QubitId> = (0..n).collect();
                order.shuffle(&mut rng);
                let cnots: Vec<(QubitId, QubitId)> =
                    order.chunks(2).map(|c| (c[0], c[1])).collect();
                let front = front_of(&cnots);
                let (units, updated) =
                    compile_front_layer(&front, &t, Strategy::DataQubitSwap).unwrap();

                // Every source CNOT is realized exactly once as a gate-role
                // remote CNOT, and the swap legs realize each planned swap.
                let mut realized: Vec<(QubitId, QubitId)> = units
                    .iter()
                    .filter_map(|u| match u.kind {
                        UnitKind::RemoteCnot { control, target } => Some((control, target)),
                        _ => None,
                    })
                    .collect();
                let mut expected = cnots.clone();
                realized.sort_unstable();
                expected.sort_unstable();
                assert_eq!(realized, expected);

                // Final assignment equals the initial one composed with the
                // performed transpositions.
                let mut perm: Vec<usize> = (0..n).collect();
                for u in &units {
                    if let UnitKind::SwapLeg { a, b, leg: 0 } = u.kind {
                        perm.swap(a, b);
                    }
                    if let UnitKind::TeleportSwap { a, b } = u.kind {
                        perm.swap(a, b);
                    }
                }
                assert_eq!(updated.assignment(), perm.as_slice());

                // After sorting, all gate CNOTs join chain neighbors.
                for u in &units {
                    if matches!(u.kind, UnitKind::RemoteCnot { .. }) {
                        assert_eq!(u.ops.len(), 2, "non-neighbor CNOT in full layer");
                    }
                }

                // EPR conservation: generated = consumed.
                let ops: Vec<&DistributedOp> = units.iter().flat_map(|u| u.ops.iter()).collect();
                let generated = ops.iter().filter(|o| o.is_link_entanglement()).count();
                let consumed: usize = ops
                    .iter()
                    .map(|o| match o {
                        DistributedOp::EntanglementSwap { .. } => {
                            o.swap_intermediates().unwrap().len()
                        }
                        DistributedOp::RemoteCnot { .. } | DistributedOp::Teleport { .. } => 1,
                        _ => 0,
                    })
                    .sum();
                assert_eq!(generated, consumed);
            }
        }
    }
}
