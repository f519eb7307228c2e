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

//! Linear nearest-neighbor architecture model: one data qubit per QPU,
//! communication qubits toward each neighbor, per-edge EPR capacity of one or
//! two pairs, and the evolving logical-to-QPU assignment.

use crate::circuit::QubitId;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("a linear topology needs at least 2 QPUs, got {0}")]
    TooFewQpus(usize),
    #[error("epr capacity must be 1 or 2, got {0}")]
    BadCapacity(u8),
    #[error("logical qubit {0} is not assigned to any QPU")]
    Unassigned(QubitId),
}

/// Which neighbor a communication slot faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Descriptive view of one QPU in the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qpu {
    pub id: usize,
    /// Logical qubit stored in the single data slot, if any.
    pub data_qubit: Option<QubitId>,
    /// Communication slots, one entry per (side, channel).
    pub comm_slots: Vec<(Side, u8)>,
}

/// Chain of QPUs with a bijective logical-to-QPU assignment.
///
/// Values are immutable snapshots: [`Topology::apply_swap`] returns a new
/// topology rather than mutating in place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    qpu_count: usize,
    epr_capacity: u8,
    /// logical qubit -> QPU id
    qpu_of: Vec<usize>,
    /// QPU id -> logical qubit
    logical_at: Vec<Option<QubitId>>,
}

impl Topology {
    /// Chain topology with `n_qpus` processors and the identity placement of
    /// the first `n_qpus` logical qubits (logical i on QPU i).
    pub fn build_linear(n_qpus: usize, epr_capacity: u8) -> Result<Topology, TopologyError> {
        if n_qpus < 2 {
            return Err(TopologyError::TooFewQpus(n_qpus));
        }
        if !(1..=2).contains(&epr_capacity) {
            return Err(TopologyError::BadCapacity(epr_capacity));
        }
        Ok(Topology {
            qpu_count: n_qpus,
            epr_capacity,
            qpu_of: (0..n_qpus).collect(),
            logical_at: (0..n_qpus).map(Some).collect(),
        })
    }

    /// Same chain, but only the first `n` logical qubits are placed (used when
    /// the circuit is narrower than the machine).
    pub fn build_linear_for(
        n_logical: usize,
        n_qpus: usize,
        epr_capacity: u8,
    ) -> Result<Topology, TopologyError> {
        let mut t = Topology::build_linear(n_qpus, epr_capacity)?;
        t.qpu_of.truncate(n_logical);
        for q in n_logical..n_qpus {
            t.logical_at[q] = None;
        }
        Ok(t)
    }

    pub fn qpu_count(&self) -> usize {
        self.qpu_count
    }

    pub fn epr_capacity(&self) -> u8 {
        self.epr_capacity
    }

    pub fn logical_count(&self) -> usize {
        self.qpu_of.len()
    }

    /// Total communication qubits: capacity slots toward each incident link,
    /// which is 2·qpu_count − 2 at capacity 1.
    pub fn comm_qubit_count(&self) -> usize {
        (2 * self.qpu_count - 2) * self.epr_capacity as usize
    }

    pub fn qpu(&self, id: usize) -> Qpu {
        assert!(id < self.qpu_count);
        let mut comm_slots = Vec::new();
        if id > 0 {
            for ch in 0..self.epr_capacity {
                comm_slots.push((Side::Left, ch));
            }
        }
        if id + 1 < self.qpu_count {
            for ch in 0..self.epr_capacity {
                comm_slots.push((Side::Right, ch));
            }
        }
        Qpu {
            id,
            data_qubit: self.logical_at[id],
            comm_slots,
        }
    }

    pub fn qpu_of(&self, q: QubitId) -> Result<usize, TopologyError> {
        self.qpu_of
            .get(q)
            .copied()
            .ok_or(TopologyError::Unassigned(q))
    }

    pub fn logical_at(&self, qpu: usize) -> Option<QubitId> {
        self.logical_at[qpu]
    }

    /// Chain distance in hops between the QPUs currently holding `a` and `b`.
    pub fn hop_distance(&self, a: QubitId, b: QubitId) -> Result<usize, TopologyError> {
        let pa = self.qpu_of(a)?;
        let pb = self.qpu_of(b)?;
        Ok(pa.abs_diff(pb))
    }

    /// Exchange the QPUs assigned to `a` and `b`; every other mapping is
    /// untouched and bijectivity is preserved.
    pub fn apply_swap(&self, a: QubitId, b: QubitId) -> Result<Topology, TopologyError> {
        let pa = self.qpu_of(a)?;
        let pb = self.qpu_of(b)?;
        let mut next = self.clone();
        next.qpu_of[a] = pb;
        next.qpu_of[b] = pa;
        next.logical_at[pa] = Some(b);
        next.logical_at[pb] = Some(a);
        debug_assert!(next.assignment_is_bijective());
        Ok(next)
    }

    pub fn assignment_is_bijective(&self) -> bool {
        let mut seen = vec![false; self.qpu_count];
        for &p in &self.qpu_of {
            if p >= self.qpu_count || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        self.qpu_of
            .iter()
            .enumerate()
            .all(|(q, &p)| self.logical_at[p] == Some(q))
    }

    /// Snapshot of the assignment, logical qubit -> QPU.
    pub fn assignment(&self) -> &[usize] {
        &self.qpu_of
    }
}
