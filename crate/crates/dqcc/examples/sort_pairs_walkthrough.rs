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

//! Walk through the pair-sorting routine that drives the data-qubit
//! swapping strategy: every CNOT's two endpoints end up adjacent after at
//! most one parallel swap step per sort cycle.
//!
//! ```bash
//! cargo run -p dqcc --example sort_pairs_walkthrough
//! ```

use dqcc::strategy::sort_pairs;

fn show(label: &str, interactions: &[u32]) {
    let plan = sort_pairs(interactions).unwrap();
    let mut v: Vec<i64> = interactions.iter().map(|&l| l as i64).collect();
    while v.len() < plan.padded_len {
        v.push(-1); // dummy pair, never moved
    }
    println!("{label}: {v:?}");
    for (cycle, step) in plan.steps.iter().enumerate() {
        for &(i, j) in step {
            v.swap(i, j);
        }
        if step.is_empty() {
            println!("  cycle {cycle}: nothing to move        -> {v:?}");
        } else {
            println!("  cycle {cycle}: swap positions {step:?} -> {v:?}");
        }
    }
    println!(
        "  {} cycles, {} swaps, {} parallel steps\n",
        plan.cycles(),
        plan.swap_count(),
        plan.active_steps()
    );
}

fn main() {
    // Three CNOTs with one idle wire between their endpoints.
    show("reference layer", &[1, 1, 2, 3, 2, 3]);
    // Already sorted: nothing moves.
    show("adjacent layer ", &[1, 1, 2, 2]);
    // Every pair straddles the half boundary: each cycle settles two pairs
    // with two span-disjoint swaps.
    show("interleaved    ", &[1, 2, 3, 4, 1, 2, 3, 4]);
    // A full eight-qubit layer.
    show("full layer     ", &[1, 2, 2, 3, 4, 1, 3, 4]);
}
