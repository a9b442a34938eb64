//! Peephole gate cancellation: adjacent inverse pairs, and inverse pairs that
//! become adjacent after commuting a gate past its neighbours. Surviving
//! gates keep their relative order and no rotation is merged, so the `Rz`
//! count of a circuit never changes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{
    count_gates, repeat, step_counts, synthesize_plan, synthesize_step, Circuit, Gate, GateCounts,
    SynthesisMode,
};
use crate::error::{Error, Result};
use crate::trotter::TrotterPlan;

pub const DEFAULT_WINDOW: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum OptimizeLevel {
    None,
    /// Adjacent inverse pairs only.
    Cancel,
    /// Adjacent pairs plus commutation-aware cancellation.
    #[default]
    Full,
}

impl fmt::Display for OptimizeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimizeLevel::None => "none",
            OptimizeLevel::Cancel => "cancel",
            OptimizeLevel::Full => "full",
        })
    }
}

impl FromStr for OptimizeLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(OptimizeLevel::None),
            "cancel" => Ok(OptimizeLevel::Cancel),
            "full" => Ok(OptimizeLevel::Full),
            other => Err(Error::Argument(format!("unknown optimization level '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub level: OptimizeLevel,
    /// Maximum number of gates on shared qubits inspected per commutation scan.
    pub window: usize,
    /// Optimize the whole multi-step circuit instead of a single step.
    pub cross_step: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            level: OptimizeLevel::Full,
            window: DEFAULT_WINDOW,
            cross_step: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PassKind {
    Adjacent,
    Commute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassReport {
    pub kind: PassKind,
    pub removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub before: GateCounts,
    pub after: GateCounts,
    pub passes: Vec<PassReport>,
}

/// Axis class of a single-qubit action, used by the commutation rules.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    X,
    Z,
    Other,
}

fn axis_of(g: &Gate) -> Axis {
    match g {
        Gate::X(_) | Gate::YBasis(_) | Gate::YBasisDag(_) => Axis::X,
        Gate::Rz { .. } => Axis::Z,
        _ => Axis::Other,
    }
}

/// How a gate acts on qubit `q`: `Z` if it is diagonal there, `X` if it acts
/// as an X-axis operator controlled by the other qubits.
fn action_on(g: &Gate, q: usize) -> Axis {
    match *g {
        Gate::Cnot { control, .. } if control == q => Axis::Z,
        Gate::Cnot { .. } => Axis::X,
        Gate::Cz(..) => Axis::Z,
        _ => axis_of(g),
    }
}

/// Sufficient condition for `a · b = b · a`.
///
/// Gates on disjoint qubits commute. On every shared qubit both gates must
/// act along the same axis: diagonal (`Rz`, `CZ`, CNOT control) or X-type
/// (`X`, the Y basis change, CNOT target). `H` commutes only with itself.
pub fn commutes(a: &Gate, b: &Gate) -> bool {
    let (a0, a1) = a.qubits();
    let shared: Vec<usize> = [Some(a0), a1].into_iter().flatten().filter(|&q| b.touches(q)).collect();
    if shared.is_empty() {
        return true;
    }
    if a == b {
        return true;
    }
    shared.iter().all(|&q| {
        let (x, y) = (action_on(a, q), action_on(b, q));
        x == y && x != Axis::Other
    })
}

/// Removes adjacent inverse pairs, including pairs exposed by earlier removals.
pub fn cancel_adjacent(c: &Circuit) -> (Circuit, usize) {
    let mut stack: Vec<Gate> = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        match stack.last() {
            Some(top) if top.cancels_with(g) => {
                stack.pop();
            }
            _ => stack.push(*g),
        }
    }
    let removed = c.gates.len() - stack.len();
    (
        Circuit {
            n_qubits: c.n_qubits,
            ancilla: c.ancilla,
            gates: stack,
        },
        removed,
    )
}

/// One forward sweep: each surviving gate looks ahead through the gates that
/// share a qubit with it, deleting itself and the first inverse partner it can
/// reach by commuting past everything in between. The scan for a gate stops
/// at the first gate it does not commute with, or after `window` candidates.
pub fn commute_and_cancel(c: &Circuit, window: usize) -> (Circuit, usize) {
    let n = c.gates.len();
    let width = c.width();
    let mut per_qubit: Vec<Vec<usize>> = vec![Vec::new(); width];
    // Position of gate i within the list of each of its (up to two) qubits.
    let mut slot: Vec<[usize; 2]> = vec![[0; 2]; n];
    for (i, g) in c.gates.iter().enumerate() {
        let (a, b) = g.qubits();
        slot[i][0] = per_qubit[a].len();
        per_qubit[a].push(i);
        if let Some(b) = b {
            slot[i][1] = per_qubit[b].len();
            per_qubit[b].push(i);
        }
    }
    let mut alive = vec![true; n];
    let mut removed = 0;
    for i in 0..n {
        if !alive[i] {
            continue;
        }
        let g = c.gates[i];
        let (a, b) = g.qubits();
        let mut cursors: [(usize, usize); 2] = [(a, slot[i][0] + 1), (b.unwrap_or(a), usize::MAX)];
        if let Some(b) = b {
            cursors[1] = (b, slot[i][1] + 1);
        }
        let mut inspected = 0;
        let mut last_seen = i;
        while inspected < window {
            // Next alive gate index on any of g's qubits.
            let mut next: Option<usize> = None;
            for (q, pos) in cursors.iter_mut() {
                if *pos == usize::MAX {
                    continue;
                }
                let list = &per_qubit[*q];
                while *pos < list.len() && (!alive[list[*pos]] || list[*pos] <= last_seen) {
                    *pos += 1;
                }
                if *pos < list.len() {
                    next = Some(next.map_or(list[*pos], |m: usize| m.min(list[*pos])));
                }
            }
            let Some(j) = next else { break };
            last_seen = j;
            inspected += 1;
            let h = &c.gates[j];
            if g.cancels_with(h) {
                alive[i] = false;
                alive[j] = false;
                removed += 2;
                break;
            }
            if !commutes(&g, h) {
                break;
            }
        }
    }
    let gates = c
        .gates
        .iter()
        .zip(&alive)
        .filter_map(|(g, &keep)| keep.then_some(*g))
        .collect();
    (
        Circuit {
            n_qubits: c.n_qubits,
            ancilla: c.ancilla,
            gates,
        },
        removed,
    )
}

/// Alternates the passes allowed by `level` until neither removes a gate.
pub fn optimize(c: &Circuit, level: OptimizeLevel, window: usize) -> (Circuit, OptimizationReport) {
    let mut report = OptimizationReport {
        before: count_gates(c),
        ..Default::default()
    };
    let mut current = c.clone();
    if level != OptimizeLevel::None {
        loop {
            let (next, adj) = cancel_adjacent(&current);
            report.passes.push(PassReport {
                kind: PassKind::Adjacent,
                removed: adj,
            });
            current = next;
            let mut com = 0;
            if level == OptimizeLevel::Full {
                let (next, r) = commute_and_cancel(&current, window);
                com = r;
                report.passes.push(PassReport {
                    kind: PassKind::Commute,
                    removed: r,
                });
                current = next;
            }
            log::debug!("optimizer pass removed {adj} adjacent and {com} commuted gates");
            if adj + com == 0 {
                break;
            }
        }
    }
    report.after = count_gates(&current);
    (current, report)
}

/// Raw and optimized counts for the whole plan. Without `cross_step` each
/// step is optimized on its own and the counts are multiplied by the step
/// count.
pub fn plan_counts(plan: &TrotterPlan, mode: SynthesisMode, cfg: &OptimizerConfig) -> Result<(GateCounts, GateCounts)> {
    if cfg.level == OptimizeLevel::None {
        let raw = step_counts(plan, mode)? * plan.n_steps;
        return Ok((raw, raw));
    }
    if cfg.cross_step && plan.n_steps > 1 {
        let full = synthesize_plan(plan, mode)?;
        let (_, report) = optimize(&full, cfg.level, cfg.window);
        return Ok((report.before, report.after));
    }
    let step = synthesize_step(plan, mode)?;
    let (_, report) = optimize(&step, cfg.level, cfg.window);
    Ok((report.before * plan.n_steps, report.after * plan.n_steps))
}

/// The optimized circuit for the whole plan.
pub fn optimize_plan(plan: &TrotterPlan, mode: SynthesisMode, cfg: &OptimizerConfig) -> Result<(Circuit, OptimizationReport)> {
    if cfg.cross_step {
        return Ok(optimize(&synthesize_plan(plan, mode)?, cfg.level, cfg.window));
    }
    let step = synthesize_step(plan, mode)?;
    let (opt, mut report) = optimize(&step, cfg.level, cfg.window);
    report.before = report.before * plan.n_steps;
    report.after = report.after * plan.n_steps;
    Ok((repeat(&opt, plan.n_steps), report))
}
