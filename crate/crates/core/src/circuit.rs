//! Gate-level circuits for exponentiated Pauli strings and whole Trotter plans.
//!
//! Conventions: `Rz(θ) = exp(-iθZ/2)`; the `YB` gate is `Rx(π/2) = (I - iX)/√2`,
//! which satisfies `YB† Z YB = Y`, and `YBD` is its inverse. A term circuit
//! for string `P` and angle `θ` realizes `exp(-i(θ/2)P)`.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliAxis, PauliString};
use crate::trotter::TrotterPlan;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    /// Basis change taking `Y` to `Z`, applied before the parity ladder.
    YBasis(usize),
    YBasisDag(usize),
    X(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    Rz { qubit: usize, angle: f64 },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    pub fn rz(qubit: usize, angle: f64) -> Gate {
        Gate::Rz { qubit, angle }
    }

    /// Qubits touched, in `(first, optional second)` form.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::YBasis(q) | Gate::YBasisDag(q) | Gate::X(q) => (q, None),
            Gate::Rz { qubit, .. } => (qubit, None),
            Gate::Cnot { control, target } => (control, Some(target)),
            Gate::Cz(a, b) => (a, Some(b)),
        }
    }

    pub fn touches(&self, q: usize) -> bool {
        let (a, b) = self.qubits();
        a == q || b == Some(q)
    }

    pub fn max_qubit(&self) -> usize {
        let (a, b) = self.qubits();
        b.map_or(a, |b| a.max(b))
    }

    pub fn is_entangling(&self) -> bool {
        matches!(self, Gate::Cnot { .. } | Gate::Cz(..))
    }

    pub fn is_non_clifford(&self) -> bool {
        matches!(self, Gate::Rz { .. })
    }

    /// True when `self · other = I` for a pair of Clifford gates.
    pub fn cancels_with(&self, other: &Gate) -> bool {
        match (*self, *other) {
            (Gate::H(a), Gate::H(b)) | (Gate::X(a), Gate::X(b)) => a == b,
            (Gate::YBasis(a), Gate::YBasisDag(b)) | (Gate::YBasisDag(a), Gate::YBasis(b)) => a == b,
            (
                Gate::Cnot { control: c1, target: t1 },
                Gate::Cnot { control: c2, target: t2 },
            ) => c1 == c2 && t1 == t2,
            (Gate::Cz(a1, b1), Gate::Cz(a2, b2)) => {
                (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2)
            }
            _ => false,
        }
    }

    /// The gate that undoes this one.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::YBasis(q) => Gate::YBasisDag(q),
            Gate::YBasisDag(q) => Gate::YBasis(q),
            Gate::Rz { qubit, angle } => Gate::Rz {
                qubit,
                angle: -angle,
            },
            g => g,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::YBasis(q) => write!(f, "YB {q}"),
            Gate::YBasisDag(q) => write!(f, "YBD {q}"),
            Gate::X(q) => write!(f, "X {q}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            Gate::Rz { qubit, angle } => write!(f, "RZ {qubit} {angle}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GateCounts {
    pub total: usize,
    pub entangling: usize,
    pub single_qubit: usize,
    pub non_clifford: usize,
}

impl GateCounts {
    pub fn of(gate: &Gate) -> GateCounts {
        let mut c = GateCounts {
            total: 1,
            ..GateCounts::default()
        };
        if gate.is_entangling() {
            c.entangling = 1;
        } else if gate.is_non_clifford() {
            c.non_clifford = 1;
        } else {
            c.single_qubit = 1;
        }
        c
    }
}

impl std::ops::Add for GateCounts {
    type Output = GateCounts;
    fn add(self, o: GateCounts) -> GateCounts {
        GateCounts {
            total: self.total + o.total,
            entangling: self.entangling + o.entangling,
            single_qubit: self.single_qubit + o.single_qubit,
            non_clifford: self.non_clifford + o.non_clifford,
        }
    }
}

impl std::ops::AddAssign for GateCounts {
    fn add_assign(&mut self, o: GateCounts) {
        *self = *self + o;
    }
}

impl std::ops::Mul<usize> for GateCounts {
    type Output = GateCounts;
    fn mul(self, k: usize) -> GateCounts {
        GateCounts {
            total: self.total * k,
            entangling: self.entangling * k,
            single_qubit: self.single_qubit * k,
            non_clifford: self.non_clifford * k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    /// When set, qubit `n_qubits` is an extra ancilla starting in `|0⟩`.
    pub ancilla: bool,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, ancilla: bool) -> Self {
        Circuit {
            n_qubits,
            ancilla,
            gates: Vec::new(),
        }
    }

    /// Register width including the ancilla.
    pub fn width(&self) -> usize {
        self.n_qubits + self.ancilla as usize
    }

    pub fn ancilla_qubit(&self) -> Option<usize> {
        self.ancilla.then_some(self.n_qubits)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            if g.max_qubit() >= self.width() {
                return Err(Error::Dimension(format!(
                    "gate {i} ({g}) outside a {}-qubit register",
                    self.width()
                )));
            }
            match *g {
                Gate::Cnot { control, target } if control == target => {
                    return Err(Error::Argument(format!("gate {i}: CNOT control equals target")))
                }
                Gate::Cz(a, b) if a == b => {
                    return Err(Error::Argument(format!("gate {i}: CZ on a single qubit")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn extend_from(&mut self, other: &Circuit) {
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "QUBITS {} ANCILLA {}", self.n_qubits, self.ancilla as u8)?;
        for g in &self.gates {
            writeln!(w, "{g}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            let Some(c) = circuit.as_mut() else {
                match toks.as_slice() {
                    ["QUBITS", n, "ANCILLA", a] => {
                        let n = n
                            .parse()
                            .map_err(|_| Error::parse(lineno, format!("bad qubit count '{n}'")))?;
                        let a = match *a {
                            "0" => false,
                            "1" => true,
                            other => {
                                return Err(Error::parse(lineno, format!("bad ancilla flag '{other}'")))
                            }
                        };
                        circuit = Some(Circuit::new(n, a));
                        continue;
                    }
                    _ => return Err(Error::parse(lineno, "expected 'QUBITS <n> ANCILLA <0|1>'")),
                }
            };
            let q = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| Error::parse(lineno, format!("bad qubit index '{s}'")))
            };
            let g = match toks.as_slice() {
                ["H", a] => Gate::H(q(a)?),
                ["YB", a] => Gate::YBasis(q(a)?),
                ["YBD", a] => Gate::YBasisDag(q(a)?),
                ["X", a] => Gate::X(q(a)?),
                ["CNOT", a, b] => Gate::cnot(q(a)?, q(b)?),
                ["CZ", a, b] => Gate::Cz(q(a)?, q(b)?),
                ["RZ", a, th] => Gate::rz(
                    q(a)?,
                    th.parse()
                        .map_err(|_| Error::parse(lineno, format!("bad angle '{th}'")))?,
                ),
                _ => return Err(Error::parse(lineno, format!("unrecognized gate '{t}'"))),
            };
            if g.max_qubit() >= c.width() {
                return Err(Error::parse(lineno, format!("gate '{t}' outside the register")));
            }
            c.gates.push(g);
        }
        let c = circuit.ok_or_else(|| Error::parse(1, "empty circuit file"))?;
        c.validate()?;
        Ok(c)
    }
}

impl FromStr for Circuit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Circuit::read_text(s.as_bytes())
    }
}

pub fn count_gates(c: &Circuit) -> GateCounts {
    c.gates.iter().map(GateCounts::of).fold(GateCounts::default(), |a, b| a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SynthesisMode {
    Canonical,
    BasisShift,
    Ancilla,
}

impl SynthesisMode {
    pub const ALL: [SynthesisMode; 3] = [
        SynthesisMode::Canonical,
        SynthesisMode::BasisShift,
        SynthesisMode::Ancilla,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SynthesisMode::Canonical => "canonical",
            SynthesisMode::BasisShift => "basis-shift",
            SynthesisMode::Ancilla => "ancilla",
        }
    }
}

impl fmt::Display for SynthesisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SynthesisMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "canonical" => Ok(SynthesisMode::Canonical),
            "basis-shift" | "basis_shift" | "basisshift" => Ok(SynthesisMode::BasisShift),
            "ancilla" => Ok(SynthesisMode::Ancilla),
            other => Err(Error::Argument(format!("unknown synthesis mode '{other}'"))),
        }
    }
}

fn basis_in(q: usize, a: PauliAxis) -> Option<Gate> {
    match a {
        PauliAxis::X => Some(Gate::H(q)),
        PauliAxis::Y => Some(Gate::YBasis(q)),
        _ => None,
    }
}

/// Appends `gates` followed by their mirrored inverse around a central rotation.
fn mirror_around(out: &mut Vec<Gate>, before: &[Gate], centre: Gate) {
    out.extend_from_slice(before);
    out.push(centre);
    out.extend(before.iter().rev().map(Gate::inverse));
}

fn support_or_reject(term: &PauliString) -> Result<Vec<(usize, PauliAxis)>> {
    let support = term.support();
    if support.is_empty() {
        return Err(Error::Argument(
            "identity term has no circuit; it is a scalar offset".into(),
        ));
    }
    Ok(support)
}

fn emit_canonical(out: &mut Vec<Gate>, support: &[(usize, PauliAxis)], theta: f64) {
    let mut before: Vec<Gate> = support.iter().filter_map(|&(q, a)| basis_in(q, a)).collect();
    before.extend(support.windows(2).map(|w| Gate::cnot(w[0].0, w[1].0)));
    let centre = support.last().expect("non-empty support").0;
    mirror_around(out, &before, Gate::rz(centre, theta));
}

fn emit_basis_shift(out: &mut Vec<Gate>, support: &[(usize, PauliAxis)], theta: f64) {
    let (centre, centre_axis) = *support.last().expect("non-empty support");
    let rest = &support[..support.len() - 1];
    let exterior: Vec<(usize, PauliAxis)> =
        rest.iter().copied().filter(|&(_, a)| a != PauliAxis::Z).collect();
    let interior: Vec<usize> = rest
        .iter()
        .filter(|&&(_, a)| a == PauliAxis::Z)
        .map(|&(q, _)| q)
        .collect();

    let mut before: Vec<Gate> = exterior.iter().filter_map(|&(q, a)| basis_in(q, a)).collect();
    before.extend(exterior.windows(2).map(|w| Gate::cnot(w[0].0, w[1].0)));
    before.extend(interior.windows(2).map(|w| Gate::cnot(w[0], w[1])));
    if let Some(&(last, _)) = exterior.last() {
        // Outside an H the parity kick on the central qubit becomes a phase kick.
        before.push(if centre_axis == PauliAxis::X {
            Gate::Cz(last, centre)
        } else {
            Gate::cnot(last, centre)
        });
    }
    before.extend(basis_in(centre, centre_axis));
    if let Some(&last) = interior.last() {
        before.push(Gate::cnot(last, centre));
    }
    mirror_around(out, &before, Gate::rz(centre, theta));
}

fn emit_ancilla(out: &mut Vec<Gate>, support: &[(usize, PauliAxis)], theta: f64, ancilla: usize) {
    let mut before: Vec<Gate> = support.iter().filter_map(|&(q, a)| basis_in(q, a)).collect();
    before.extend(support.iter().map(|&(q, _)| Gate::cnot(q, ancilla)));
    mirror_around(out, &before, Gate::rz(ancilla, theta));
}

fn emit_term(
    out: &mut Vec<Gate>,
    term: &PauliString,
    theta: f64,
    mode: SynthesisMode,
) -> Result<()> {
    let support = support_or_reject(term)?;
    match mode {
        SynthesisMode::Canonical => emit_canonical(out, &support, theta),
        SynthesisMode::BasisShift => emit_basis_shift(out, &support, theta),
        SynthesisMode::Ancilla => emit_ancilla(out, &support, theta, term.len()),
    }
    Ok(())
}

/// Circuit for `exp(-i(θ/2)P)` on a register of `term.len()` qubits (plus
/// the ancilla in [`SynthesisMode::Ancilla`]).
pub fn synthesize_term_with(term: &PauliString, theta: f64, mode: SynthesisMode) -> Result<Circuit> {
    let mut c = Circuit::new(term.len(), mode == SynthesisMode::Ancilla);
    emit_term(&mut c.gates, term, theta, mode)?;
    Ok(c)
}

/// Basis changes, a linear CNOT ladder up to the highest involved qubit, the
/// central `Rz`, and the mirror image.
pub fn synthesize_term(term: &PauliString, theta: f64) -> Result<Circuit> {
    synthesize_term_with(term, theta, SynthesisMode::Canonical)
}

/// Central basis change moved inside the parity ladder.
///
/// Non-central qubits split into an exterior group (axis X or Y, which keep
/// their basis changes outside) and an interior group (axis Z). Each group
/// accumulates its parity along its own ladder. The exterior parity reaches
/// the central qubit outside its basis change (CZ for a central X, CNOT for
/// central Y or Z) and the interior parity inside it.
pub fn synthesize_term_basis_shift(term: &PauliString, theta: f64) -> Result<Circuit> {
    synthesize_term_with(term, theta, SynthesisMode::BasisShift)
}

/// Parity of every involved qubit collected on one ancilla (index `term.len()`),
/// which carries the rotation and is returned to `|0⟩`.
pub fn synthesize_term_ancilla(term: &PauliString, theta: f64) -> Result<Circuit> {
    synthesize_term_with(term, theta, SynthesisMode::Ancilla)
}

/// One Trotter step: term circuits concatenated in plan order.
pub fn synthesize_step(plan: &TrotterPlan, mode: SynthesisMode) -> Result<Circuit> {
    let mut c = Circuit::new(plan.n_qubits(), mode == SynthesisMode::Ancilla);
    for (j, t) in plan.terms().iter().enumerate() {
        emit_term(&mut c.gates, &t.string, plan.angle(j), mode)?;
    }
    Ok(c)
}

/// The step circuit repeated `n_steps` times.
pub fn synthesize_plan(plan: &TrotterPlan, mode: SynthesisMode) -> Result<Circuit> {
    let step = synthesize_step(plan, mode)?;
    Ok(repeat(&step, plan.n_steps))
}

pub fn repeat(step: &Circuit, times: usize) -> Circuit {
    let mut c = Circuit::new(step.n_qubits, step.ancilla);
    c.gates.reserve(step.gates.len() * times);
    for _ in 0..times {
        c.extend_from(step);
    }
    c
}

/// Gate counts of one unoptimized step without keeping the circuit around.
pub fn step_counts(plan: &TrotterPlan, mode: SynthesisMode) -> Result<GateCounts> {
    let mut buf = Vec::new();
    let mut total = GateCounts::default();
    for (j, t) in plan.terms().iter().enumerate() {
        buf.clear();
        emit_term(&mut buf, &t.string, plan.angle(j), mode)?;
        total += buf.iter().map(GateCounts::of).fold(GateCounts::default(), |a, b| a + b);
    }
    Ok(total)
}
