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

//! OpenQASM 2.0 frontend.
//!
//! Parses the gate-level subset the compiler consumes: version header,
//! includes (ignored), qreg/creg declarations, the standard one-qubit gates
//! with opaque angle expressions, `cx`, `measure` and `barrier`. Anything
//! else (multi-qubit non-CNOT gates, gate definitions, conditionals) is
//! rejected with a diagnostic naming the construct. Also renders compiled
//! programs to their deterministic textual listing.

use crate::circuit::{Circuit, Gate, GateKind};
use crate::schedule::CompiledProgram;
use crate::strategy::DistributedOp;
use std::collections::HashMap;
use std::fmt::Write as _;

/// QASM source text plus where it came from (file path or inline tag).
#[derive(Clone, Debug)]
pub struct SourceCircuitText {
    pub text: String,
    pub origin: String,
}

impl SourceCircuitText {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> Self {
        SourceCircuitText {
            text: text.into(),
            origin: origin.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A located parse problem. `line` and `column` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl std::fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.column, sev, self.message
        )
    }
}

const ONE_QUBIT_GATES: &[&str] = &[
    "u1", "u2", "u3", "h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "id", "u", "U",
];

#[derive(Clone, Debug, PartialEq)]
struct Token {
    text: String,
    line: usize,
    column: usize,
}

/// Split the source into statement token lists, stripping `//` comments.
/// Statements end at `;`. Returns an error diagnostic for stray characters.
fn tokenize(src: &str) -> Result<Vec<Vec<Token>>, ParseDiagnostic> {
    let mut statements = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    fn bump(c: char, line: &mut usize, column: &mut usize) {
        if c == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    }

    while let Some(&c) = chars.peek() {
        if c == '/' {
            let (l, col) = (line, column);
            chars.next();
            bump(c, &mut line, &mut column);
            if chars.peek() == Some(&'/') {
                for c in chars.by_ref() {
                    bump(c, &mut line, &mut column);
                    if c == '\n' {
                        break;
                    }
                }
                continue;
            }
            // A bare '/' only appears inside parameter expressions; treat it
            // as a single-character token.
            current.push(Token {
                text: "/".into(),
                line: l,
                column: col,
            });
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut column);
            continue;
        }
        if c == ';' {
            chars.next();
            bump(c, &mut line, &mut column);
            if !current.is_empty() {
                statements.push(std::mem::take(&mut current));
            }
            continue;
        }
        let (l, col) = (line, column);
        if c.is_alphanumeric() || c == '_' || c == '.' {
            let mut text = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' || c == '.' {
                    text.push(c);
                    chars.next();
                    bump(c, &mut line, &mut column);
                } else {
                    break;
                }
            }
            current.push(Token {
                text,
                line: l,
                column: col,
            });
            continue;
        }
        if c == '"' {
            let mut text = String::from("\"");
            chars.next();
            bump(c, &mut line, &mut column);
            let mut closed = false;
            while let Some(&c) = chars.peek() {
                text.push(c);
                chars.next();
                bump(c, &mut line, &mut column);
                if c == '"' {
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(ParseDiagnostic {
                    line: l,
                    column: col,
                    message: "unterminated string literal".into(),
                    severity: Severity::Error,
                });
            }
            current.push(Token {
                text,
                line: l,
                column: col,
            });
            continue;
        }
        if "[](),->*+-".contains(c) {
            chars.next();
            bump(c, &mut line, &mut column);
            // '->' is one token.
            if c == '-' && chars.peek() == Some(&'>') {
                chars.next();
                bump('>', &mut line, &mut column);
                current.push(Token {
                    text: "->".into(),
                    line: l,
                    column: col,
                });
            } else {
                current.push(Token {
                    text: c.to_string(),
                    line: l,
                    column: col,
                });
            }
            continue;
        }
        return Err(ParseDiagnostic {
            line,
            column,
            message: format!("unexpected character '{c}'"),
            severity: Severity::Error,
        });
    }
    if !current.is_empty() {
        let t = &current[0];
        return Err(ParseDiagnostic {
            line: t.line,
            column: t.column,
            message: "statement missing terminating ';'".into(),
            severity: Severity::Error,
        });
    }
    Ok(statements)
}

struct Registers {
    /// name -> (offset into the flat qubit space, size)
    qregs: HashMap<String, (usize, usize)>,
    qreg_order: Vec<String>,
    cregs: HashMap<String, usize>,
    n: usize,
}

/// One operand of a gate statement: either a whole register or one element.
enum Operand {
    Whole { offset: usize, size: usize },
    Single { index: usize },
}

impl Operand {
    fn size(&self) -> usize {
        match self {
            Operand::Whole { size, .. } => *size,
            Operand::Single { .. } => 1,
        }
    }

    fn qubit(&self, k: usize) -> usize {
        match self {
            Operand::Whole { offset, .. } => offset + k,
            Operand::Single { index } => *index,
        }
    }
}

/// Parse OpenQASM 2.0 text into a [`Circuit`].
///
/// Parsing is total: the result is either a circuit or at least one error
/// diagnostic, never both. Statement-level errors are collected so a batch
/// run reports everything wrong with a file at once.
pub fn parse(src: &SourceCircuitText) -> Result<Circuit, Vec<ParseDiagnostic>> {
    let statements = match tokenize(&src.text) {
        Ok(s) => s,
        Err(d) => return Err(vec![d]),
    };
    if statements.is_empty() {
        return Err(vec![ParseDiagnostic {
            line: 1,
            column: 1,
            message: "empty program: no statements after comment stripping".into(),
            severity: Severity::Error,
        }]);
    }

    let mut diags: Vec<ParseDiagnostic> = Vec::new();
    let mut regs = Registers {
        qregs: HashMap::new(),
        qreg_order: Vec::new(),
        cregs: HashMap::new(),
        n: 0,
    };
    let mut gates: Vec<Gate> = Vec::new();
    let mut seq = 0usize;

    for stmt in &statements {
        if let Err(d) = parse_statement(stmt, &mut regs, &mut gates, &mut seq) {
            diags.push(d);
        }
    }

    if regs.n == 0 && diags.is_empty() {
        diags.push(ParseDiagnostic {
            line: 1,
            column: 1,
            message: "no quantum register declared".into(),
            severity: Severity::Error,
        });
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    Ok(Circuit::new(src.origin.clone(), regs.n, gates))
}

fn err(tok: &Token, message: impl Into<String>) -> ParseDiagnostic {
    ParseDiagnostic {
        line: tok.line,
        column: tok.column,
        message: message.into(),
        severity: Severity::Error,
    }
}

fn parse_statement(
    stmt: &[Token],
    regs: &mut Registers,
    gates: &mut Vec<Gate>,
    seq: &mut usize,
) -> Result<(), ParseDiagnostic> {
    let head = &stmt[0];
    match head.text.as_str() {
        "OPENQASM" => {
            let version = stmt.get(1).map(|t| t.text.as_str()).unwrap_or("");
            if version != "2.0" {
                return Err(err(
                    head,
                    format!("unsupported OpenQASM version '{version}', expected 2.0"),
                ));
            }
            Ok(())
        }
        "include" => Ok(()), // headers like qelib1.inc carry nothing we need
        "qreg" | "creg" => parse_reg(stmt, regs),
        "measure" => parse_measure(stmt, regs, gates, seq),
        "barrier" => {
            // Fence semantics are global: the declared operands are checked
            // but the recorded barrier closes every wire.
            check_barrier_operands(stmt, regs)?;
            gates.push(Gate::barrier(regs.n, *seq));
            *seq += 1;
            Ok(())
        }
        "cx" | "CX" => parse_cx(stmt, regs, gates, seq),
        name if ONE_QUBIT_GATES.contains(&name) => parse_one_qubit(stmt, regs, gates, seq),
        "gate" | "opaque" => Err(err(
            head,
            format!("'{}' definitions are not supported", head.text),
        )),
        "if" => Err(err(head, "'if' conditionals are not supported")),
        "reset" => Err(err(head, "'reset' is not supported")),
        name => Err(err(
            head,
            format!(
                "unsupported gate or statement '{name}' (only one-qubit gates and cx are compiled)"
            ),
        )),
    }
}

fn parse_reg(stmt: &[Token], regs: &mut Registers) -> Result<(), ParseDiagnostic> {
    // qreg name[size];
    if stmt.len() != 5 || stmt[2].text != "[" || stmt[4].text != "]" {
        return Err(err(
            &stmt[0],
            format!("malformed {} declaration", stmt[0].text),
        ));
    }
    let name = stmt[1].text.clone();
    let size: usize = stmt[3]
        .text
        .parse()
        .map_err(|_| err(&stmt[3], "register size must be a non-negative integer"))?;
    if size == 0 {
        return Err(err(&stmt[3], "register size must be at least 1"));
    }
    if stmt[0].text == "qreg" {
        if regs.qregs.contains_key(&name) {
            return Err(err(&stmt[1], format!("duplicate qreg '{name}'")));
        }
        regs.qregs.insert(name.clone(), (regs.n, size));
        regs.qreg_order.push(name);
        regs.n += size;
    } else {
        regs.cregs.insert(name, size);
    }
    Ok(())
}

/// Parse `name` or `name[idx]` as a quantum operand starting at `pos`.
/// Returns the operand and the position one past it.
fn parse_operand(
    stmt: &[Token],
    pos: usize,
    regs: &Registers,
) -> Result<(Operand, usize), ParseDiagnostic> {
    let tok = stmt
        .get(pos)
        .ok_or_else(|| err(stmt.last().unwrap(), "expected a register operand"))?;
    let (offset, size) = *regs.qregs.get(&tok.text).ok_or_else(|| {
        err(
            tok,
            format!("reference to undeclared register '{}'", tok.text),
        )
    })?;
    if stmt.get(pos + 1).map(|t| t.text.as_str()) == Some("[") {
        let idx_tok = stmt.get(pos + 2).ok_or_else(|| err(tok, "missing index"))?;
        let idx: usize = idx_tok
            .text
            .parse()
            .map_err(|_| err(idx_tok, "qubit index must be a non-negative integer"))?;
        if stmt.get(pos + 3).map(|t| t.text.as_str()) != Some("]") {
            return Err(err(idx_tok, "missing closing ']'"));
        }
        if idx >= size {
            return Err(err(
                idx_tok,
                format!(
                    "index {idx} out of bounds for register '{}' of size {size}",
                    tok.text
                ),
            ));
        }
        Ok((
            Operand::Single {
                index: offset + idx,
            },
            pos + 4,
        ))
    } else {
        Ok((Operand::Whole { offset, size }, pos + 1))
    }
}

/// Collect the parenthesized parameter list, if present, as normalized
/// opaque strings (whitespace removed, tokens joined). Angles are never
/// evaluated: one-qubit gates pass through the compiler unchanged.
fn parse_params(stmt: &[Token], pos: usize) -> Result<(Vec<String>, usize), ParseDiagnostic> {
    if stmt.get(pos).map(|t| t.text.as_str()) != Some("(") {
        return Ok((Vec::new(), pos));
    }
    let mut params = Vec::new();
    let mut current = String::new();
    let mut depth = 1;
    let mut i = pos + 1;
    while i < stmt.len() {
        let t = &stmt[i];
        match t.text.as_str() {
            "(" => {
                depth += 1;
                current.push('(');
            }
            ")" => {
                depth -= 1;
                if depth == 0 {
                    params.push(current);
                    return Ok((params, i + 1));
                }
                current.push(')');
            }
            "," if depth == 1 => {
                params.push(std::mem::take(&mut current));
            }
            text => current.push_str(text),
        }
        i += 1;
    }
    Err(err(&stmt[pos], "unterminated parameter list"))
}

fn parse_one_qubit(
    stmt: &[Token],
    regs: &Registers,
    gates: &mut Vec<Gate>,
    seq: &mut usize,
) -> Result<(), ParseDiagnostic> {
    let name = stmt[0].text.clone();
    let (params, pos) = parse_params(stmt, 1)?;
    let (operand, pos) = parse_operand(stmt, pos, regs)?;
    if pos != stmt.len() {
        return Err(err(&stmt[pos], "unexpected tokens after operand"));
    }
    for k in 0..operand.size() {
        gates.push(Gate::one_qubit(
            &name,
            params.clone(),
            operand.qubit(k),
            *seq,
        ));
        *seq += 1;
    }
    Ok(())
}

fn parse_cx(
    stmt: &[Token],
    regs: &Registers,
    gates: &mut Vec<Gate>,
    seq: &mut usize,
) -> Result<(), ParseDiagnostic> {
    let (control, pos) = parse_operand(stmt, 1, regs)?;
    if stmt.get(pos).map(|t| t.text.as_str()) != Some(",") {
        return Err(err(&stmt[0], "cx expects two comma-separated operands"));
    }
    let (target, pos) = parse_operand(stmt, pos + 1, regs)?;
    if pos != stmt.len() {
        return Err(err(&stmt[pos], "unexpected tokens after operands"));
    }
    let reps = match (control.size(), target.size()) {
        (1, n) | (n, 1) => n,
        (a, b) if a == b => a,
        _ => {
            return Err(err(
                &stmt[0],
                "cx register operands must have matching sizes",
            ));
        }
    };
    for k in 0..reps {
        let c = control.qubit(if control.size() == 1 { 0 } else { k });
        let t = target.qubit(if target.size() == 1 { 0 } else { k });
        if c == t {
            return Err(err(
                &stmt[0],
                "cx control and target must be distinct qubits",
            ));
        }
        gates.push(Gate::cnot(c, t, *seq));
        *seq += 1;
    }
    Ok(())
}

fn parse_measure(
    stmt: &[Token],
    regs: &Registers,
    gates: &mut Vec<Gate>,
    seq: &mut usize,
) -> Result<(), ParseDiagnostic> {
    let (operand, pos) = parse_operand(stmt, 1, regs)?;
    if stmt.get(pos).map(|t| t.text.as_str()) != Some("->") {
        return Err(err(&stmt[0], "measure expects 'qubit -> clbit'"));
    }
    let ctok = stmt
        .get(pos + 1)
        .ok_or_else(|| err(&stmt[0], "missing classical target"))?;
    let csize = *regs.cregs.get(&ctok.text).ok_or_else(|| {
        err(
            ctok,
            format!("reference to undeclared register '{}'", ctok.text),
        )
    })?;
    let mut next = pos + 2;
    if stmt.get(next).map(|t| t.text.as_str()) == Some("[") {
        let idx_tok = stmt
            .get(next + 1)
            .ok_or_else(|| err(ctok, "missing index"))?;
        let idx: usize = idx_tok
            .text
            .parse()
            .map_err(|_| err(idx_tok, "bit index must be a non-negative integer"))?;
        if idx >= csize {
            return Err(err(
                idx_tok,
                format!(
                    "index {idx} out of bounds for register '{}' of size {csize}",
                    ctok.text
                ),
            ));
        }
        if stmt.get(next + 2).map(|t| t.text.as_str()) != Some("]") {
            return Err(err(idx_tok, "missing closing ']'"));
        }
        next += 3;
    }
    if next != stmt.len() {
        return Err(err(&stmt[next], "unexpected tokens after measure"));
    }
    for k in 0..operand.size() {
        gates.push(Gate::measure(operand.qubit(k), *seq));
        *seq += 1;
    }
    Ok(())
}

fn check_barrier_operands(stmt: &[Token], regs: &Registers) -> Result<(), ParseDiagnostic> {
    let mut pos = 1;
    while pos < stmt.len() {
        let (_, next) = parse_operand(stmt, pos, regs)?;
        pos = next;
        if stmt.get(pos).map(|t| t.text.as_str()) == Some(",") {
            pos += 1;
        }
    }
    Ok(())
}

/// Render a compiled program as its deterministic textual listing: one line
/// per operation, grouped by start layer. Equal programs produce
/// byte-identical text.
pub fn serialize(program: &CompiledProgram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# distributed program: {}", program.source);
    let _ = writeln!(
        out,
        "# strategy: {}  qpus: {}  epr-capacity: {}",
        program.strategy.label(),
        program.qpu_count,
        program.epr_capacity
    );
    let _ = writeln!(
        out,
        "# costs: c_le={} c_bsm={} c_cx={}",
        program.costs.c_le, program.costs.c_bsm, program.costs.c_cx
    );
    let _ = writeln!(
        out,
        "# depth: {}  ops: {}  front-layers: {}",
        program.depth,
        program.ops.len(),
        program.front_layers
    );
    for (start, layer_ops) in program.layers() {
        let _ = writeln!(out, "layer {start}:");
        for sop in layer_ops {
            let span = format!("span={}..{}", sop.start, sop.end);
            let line = match &sop.op {
                DistributedOp::LinkEntanglement { edge } => {
                    format!("link-entanglement edge={}-{} {span}", edge, edge + 1)
                }
                DistributedOp::EntanglementSwap { left, right } => format!(
                    "entanglement-swap left=qpu{left} right=qpu{right} via={} {span}",
                    right - left - 1
                ),
                DistributedOp::RemoteCnot {
                    control,
                    target,
                    control_qpu,
                    target_qpu,
                    role,
                } => {
                    format!(
                        "remote-cnot control=q{control}@qpu{control_qpu} target=q{target}@qpu{target_qpu} role={} {span}",
                        match role {
                            crate::strategy::CnotRole::Gate => "gate",
                            crate::strategy::CnotRole::SwapLeg => "swap-leg",
                        }
                    )
                }
                DistributedOp::Teleport {
                    qubit,
                    from_qpu,
                    to_qpu,
                } => {
                    format!("teleport q{qubit} from=qpu{from_qpu} to=qpu{to_qpu} {span}")
                }
                DistributedOp::LocalSwap { qpu, side } => {
                    format!("local-swap qpu{qpu} side={} {span}", side.label())
                }
                DistributedOp::LocalGate { gate, qpu } => {
                    let q = gate.qubits[0];
                    match &gate.kind {
                        GateKind::OneQubit { name, params } if params.is_empty() => {
                            format!("local-gate {name} q{q}@qpu{qpu} {span}")
                        }
                        GateKind::OneQubit { name, params } => {
                            format!(
                                "local-gate {name}({}) q{q}@qpu{qpu} {span}",
                                params.join(",")
                            )
                        }
                        GateKind::Measure => format!("measure q{q}@qpu{qpu} {span}"),
                        _ => unreachable!("only one-qubit gates are emitted locally"),
                    }
                }
            };
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CnotLayerRule;

    fn src(text: &str) -> SourceCircuitText {
        SourceCircuitText::new(text, "inline")
    }

    const GHZ4: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[4];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\ncx q[2],q[3];\n";

    #[test]
    fn parses_ghz4() {
        let c = parse(&src(GHZ4)).unwrap();
        assert_eq!(c.n, 4);
        assert_eq!(c.gates.len(), 4);
        assert_eq!(c.cnot_count(), 3);
        assert_eq!(c.cnot_layer_count(CnotLayerRule::Any), 3);
    }

    #[test]
    fn empty_gate_body_is_a_valid_circuit() {
        let c = parse(&src("OPENQASM 2.0;\nqreg q[2];\n")).unwrap();
        assert_eq!(c.n, 2);
        assert!(c.gates.is_empty());
    }

    #[test]
    fn ccx_is_rejected_by_name() {
        let e = parse(&src("qreg q[3];\nccx q[0],q[1],q[2];\n")).unwrap_err();
        assert_eq!(e.len(), 1);
        assert!(e[0].message.contains("ccx"), "{}", e[0].message);
        assert_eq!(e[0].line, 2);
    }

    #[test]
    fn undeclared_register_is_diagnosed() {
        let e = parse(&src("qreg q[2];\ncx q[0],r[1];\n")).unwrap_err();
        assert!(e[0].message.contains("undeclared register 'r'"));
    }

    #[test]
    fn out_of_bounds_index_is_diagnosed() {
        let e = parse(&src("qreg q[2];\nh q[5];\n")).unwrap_err();
        assert!(e[0].message.contains("out of bounds"));
        assert_eq!((e[0].line, e[0].column), (2, 5));
    }

    #[test]
    fn empty_source_is_diagnosed() {
        let e = parse(&src("// nothing here\n")).unwrap_err();
        assert!(e[0].message.contains("empty program"));
    }

    #[test]
    fn multiple_errors_are_collected() {
        let e = parse(&src("qreg q[2];\nccx q[0],q[1],q[1];\nswap q[0],q[1];\n")).unwrap_err();
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn angle_expressions_stay_opaque_and_normalized() {
        let c = parse(&src(
            "qreg q[1];\nrz(pi / 2) q[0];\nu3(0.1, -pi, 3*pi/4) q[0];\n",
        ))
        .unwrap();
        match &c.gates[0].kind {
            GateKind::OneQubit { name, params } => {
                assert_eq!(name, "rz");
                assert_eq!(params, &vec!["pi/2".to_string()]);
            }
            _ => panic!(),
        }
        match &c.gates[1].kind {
            GateKind::OneQubit { params, .. } => {
                assert_eq!(
                    params,
                    &vec!["0.1".to_string(), "-pi".into(), "3*pi/4".into()]
                );
            }
            _ => panic!(),
        }
    }

    #[test]
    fn register_broadcast_expands_in_order() {
        let c = parse(&src("qreg q[3];\nh q;\n")).unwrap();
        assert_eq!(c.gates.len(), 3);
        let qs: Vec<usize> = c.gates.iter().map(|g| g.qubits[0]).collect();
        assert_eq!(qs, vec![0, 1, 2]);
    }

    #[test]
    fn multiple_qregs_flatten_in_declaration_order() {
        let c = parse(&src("qreg a[2];\nqreg b[2];\ncx a[1],b[0];\n")).unwrap();
        assert_eq!(c.n, 4);
        assert_eq!(c.gates[0].qubits, vec![1, 2]);
    }

    #[test]
    fn measure_and_barrier_are_recorded() {
        let c = parse(&src(
            "qreg q[2];\ncreg c[2];\nbarrier q;\nmeasure q[0] -> c[0];\n",
        ))
        .unwrap();
        assert!(c.gates[0].is_barrier());
        assert!(matches!(c.gates[1].kind, GateKind::Measure));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let e = parse(&src("OPENQASM 3.0;\nqreg q[1];\n")).unwrap_err();
        assert!(e[0].message.contains("version"));
    }

    #[test]
    fn parse_is_deterministic() {
        let a = parse(&src(GHZ4)).unwrap();
        let b = parse(&src(GHZ4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gate_order_matches_statement_order() {
        let c = parse(&src("qreg q[3];\ncx q[2],q[0];\nh q[1];\ncx q[0],q[1];\n")).unwrap();
        let seqs: Vec<usize> = c.gates.iter().map(|g| g.seq).collect();
        assert_eq!(seqs, vec![0, 1, 2]);
        assert_eq!(c.gates[0].qubits, vec![2, 0]);
    }

    #[test]
    fn serialize_round_trip_is_stable() {
        use crate::schedule::{schedule, CostModel};
        use crate::strategy::{emit_remote_cnot, CnotRole, Strategy};
        use crate::topology::Topology;

        let t = Topology::build_linear(2, 1).unwrap();
        let build = || {
            let unit = emit_remote_cnot(0, 1, &t, CnotRole::Gate).unwrap();
            schedule(
                &[vec![unit]],
                &t,
                &CostModel::unit(),
                "pair",
                Strategy::EntanglementSwap,
            )
            .unwrap()
        };
        let text = serialize(&build());
        assert_eq!(text, serialize(&build()));
        // One link-entanglement line then one remote-CNOT line, in
        // consecutive layer groups.
        let lines: Vec<&str> = text.lines().collect();
        let li = lines
            .iter()
            .position(|l| l.starts_with("layer 0:"))
            .unwrap();
        assert!(lines[li + 1].trim_start().starts_with("link-entanglement"));
        assert!(lines[li + 2].starts_with("layer 1:"));
        assert!(lines[li + 3].trim_start().starts_with("remote-cnot"));
    }

    #[test]
    fn serialize_empty_program() {
        use crate::schedule::{schedule, CostModel};
        use crate::strategy::Strategy;
        use crate::topology::Topology;

        let t = Topology::build_linear(2, 1).unwrap();
        let p = schedule(
            &[],
            &t,
            &CostModel::unit(),
            "empty",
            Strategy::EntanglementSwap,
        )
        .unwrap();
        let text = serialize(&p);
        assert!(text.contains("depth: 0"));
        assert!(!text.contains("layer "));
    }
}
