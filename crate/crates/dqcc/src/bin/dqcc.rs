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

//! Batch compiler front door: compile QASM files onto the linear
//! distributed architecture and report compiled depth against the
//! theoretical bounds.

use clap::{Parser, ValueEnum};
use dqcc::pipeline::{run, PipelineConfig, ReportFormat, RunConfig};
use dqcc::schedule::CostModel;
use dqcc::{CnotLayerRule, Strategy};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Es,
    Dqs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RuleArg {
    Any,
    Pure,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Compile quantum circuits onto a chain of one-data-qubit QPUs.
#[derive(Parser, Debug)]
#[command(name = "dqcc", version, about)]
struct Args {
    /// QASM files or directories containing .qasm files.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// CNOT lowering strategy: entanglement swapping or data-qubit swapping.
    #[arg(long, value_enum, default_value = "dqs")]
    strategy: StrategyArg,

    /// Bell pairs each inter-QPU link can host simultaneously.
    #[arg(long, value_enum, default_value = "1", value_parser = clap::value_parser!(u8).range(1..=2))]
    epr_capacity: u8,

    /// Layers needed to generate one link entanglement.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    c_le: u64,

    /// Layers needed for the Bell-state measurements of one swap.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    c_bsm: u64,

    /// Layers needed for a remote CNOT once its pair is available.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    c_cx: u64,

    /// Which layers count as CNOT layers: any layer with a CNOT, or only
    /// layers made of CNOTs.
    #[arg(long, value_enum, default_value = "any")]
    cnot_layer_rule: RuleArg,

    /// Report file format.
    #[arg(long, value_enum, default_value = "json")]
    report: FormatArg,

    /// Output directory for program listings and the report.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = RunConfig {
        inputs: args.inputs,
        pipeline: PipelineConfig {
            strategy: match args.strategy {
                StrategyArg::Es => Strategy::EntanglementSwap,
                StrategyArg::Dqs => Strategy::DataQubitSwap,
            },
            epr_capacity: args.epr_capacity,
            costs: CostModel::new(args.c_le, args.c_bsm, args.c_cx),
            cnot_layer_rule: match args.cnot_layer_rule {
                RuleArg::Any => CnotLayerRule::Any,
                RuleArg::Pure => CnotLayerRule::Pure,
            },
        },
        out_dir: args.out,
        report_format: match args.report {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        },
    };

    let summary = match run(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("dqcc: {e}");
            return ExitCode::FAILURE;
        }
    };

    for (record, ms) in summary.records.iter().zip(&summary.wall_ms) {
        println!(
            "{:<24} n={:<3} cnot_layers={:<6} bound={:<9} compiled={:<7} ratio={:.4} wall_ms={}",
            record.name,
            record.n,
            record.cnot_layers,
            record.bound,
            record.compiled_layers,
            record.ratio,
            ms
        );
    }
    for (path, diags) in &summary.parse_failures {
        for d in diags {
            eprintln!("{}:{d}", path.display());
        }
    }
    for (path, msg) in &summary.compile_failures {
        eprintln!("{}: compile error: {msg}", path.display());
    }
    for name in &summary.bound_violations {
        eprintln!("dqcc: bound violated for circuit '{name}' (ratio > 1)");
    }

    if summary.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
