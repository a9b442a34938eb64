//! Sweeps over systems, mappings, orderings and synthesis modes, producing
//! gate-count comparison tables.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{GateCounts, SynthesisMode};
use crate::error::{Error, Result};
use crate::fermion::{build_hamiltonian, parse_fcidump, synthetic_integrals, IntegralSet, FOCK_QUBIT_LIMIT};
use crate::mapping::{map_operator, MappingScheme};
use crate::optimizer::{plan_counts, OptimizerConfig};
use crate::pauli::QubitOperator;
use crate::simulator::{ground_state, operator_matrix, trotter_error, StateVector, TrotterErrorReport};
use crate::trotter::{plan_for, MagnitudeDirection, OrderingStrategy};

pub const CSV_HEADER: &str = "system,n_qubits,mapping,ordering,seed,mode,raw_total,raw_entangling,raw_single,raw_nonclifford,opt_total,opt_entangling,opt_single,opt_nonclifford,savings,trotter_error";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InputSpec {
    File(PathBuf),
    /// Random integrals on `spin_orbitals` spin-orbitals (must be even).
    Synthetic {
        spin_orbitals: usize,
        seed: u64,
        density: f64,
    },
}

impl InputSpec {
    pub fn id(&self) -> String {
        match self {
            InputSpec::File(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
            InputSpec::Synthetic {
                spin_orbitals,
                seed,
                density,
            } => format!("synthetic-n{spin_orbitals}-s{seed}-d{density}"),
        }
    }

    pub fn load(&self) -> Result<IntegralSet> {
        match self {
            InputSpec::File(p) => parse_fcidump(std::io::BufReader::new(std::fs::File::open(p)?)),
            InputSpec::Synthetic {
                spin_orbitals,
                seed,
                density,
            } => {
                if spin_orbitals % 2 != 0 || *spin_orbitals == 0 {
                    return Err(Error::Argument(format!(
                        "synthetic systems need a positive even spin-orbital count, got {spin_orbitals}"
                    )));
                }
                synthetic_integrals(spin_orbitals / 2, *seed, *density)
            }
        }
    }
}

impl FromStr for InputSpec {
    type Err = Error;

    /// `n:seed:density` for a synthetic system, anything else is a path.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if let [n, seed, density] = parts.as_slice() {
            if let (Ok(n), Ok(seed), Ok(density)) = (n.parse(), seed.parse(), density.parse()) {
                return Ok(InputSpec::Synthetic {
                    spin_orbitals: n,
                    seed,
                    density,
                });
            }
        }
        Ok(InputSpec::File(PathBuf::from(s)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Argument(format!("unknown report format '{other}'"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub inputs: Vec<InputSpec>,
    pub mappings: Vec<MappingScheme>,
    pub orderings: Vec<OrderingStrategy>,
    pub modes: Vec<SynthesisMode>,
    pub optimizer: OptimizerConfig,
    pub direction: MagnitudeDirection,
    pub n_steps: usize,
    pub time: f64,
    /// Also measure the Trotter error (registers up to the Fock-space limit).
    pub trotter_error: bool,
    /// Worker threads; zero uses the global pool.
    pub workers: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            inputs: Vec::new(),
            mappings: MappingScheme::ALL.to_vec(),
            orderings: vec![OrderingStrategy::Magnitude],
            modes: vec![SynthesisMode::Canonical],
            optimizer: OptimizerConfig::default(),
            direction: MagnitudeDirection::Descending,
            n_steps: 1,
            time: 1.0,
            trotter_error: false,
            workers: 0,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(Error::Argument("no inputs".into()));
        }
        if self.mappings.is_empty() {
            return Err(Error::Argument("no mappings".into()));
        }
        if self.orderings.is_empty() {
            return Err(Error::Argument("no orderings".into()));
        }
        if self.modes.is_empty() {
            return Err(Error::Argument("no synthesis modes".into()));
        }
        if self.n_steps == 0 {
            return Err(Error::Argument("n_steps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub system: String,
    pub n_qubits: usize,
    pub mapping: MappingScheme,
    pub ordering: OrderingStrategy,
    pub mode: SynthesisMode,
    pub raw: GateCounts,
    pub optimized: GateCounts,
    pub savings: f64,
    pub trotter_error: Option<f64>,
}

impl BenchRow {
    fn sort_key(&self) -> (&str, MappingScheme, OrderingStrategy, SynthesisMode) {
        (&self.system, self.mapping, self.ordering, self.mode)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchFailure {
    pub system: String,
    pub mapping: Option<MappingScheme>,
    pub ordering: Option<OrderingStrategy>,
    pub mode: Option<SynthesisMode>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub failures: Vec<BenchFailure>,
    /// Full Trotter-error reports, parallel to the rows that carry an error.
    pub trotter_reports: Vec<TrotterErrorReport>,
}

/// A mapped system shared by all cells that use it.
struct Mapped {
    system: String,
    mapping: MappingScheme,
    core_energy: f64,
    op: QubitOperator,
    ground: Option<(f64, StateVector)>,
}

fn map_system(input: &InputSpec, ints: &IntegralSet, mapping: MappingScheme, want_ground: bool) -> Result<Mapped> {
    let op = map_operator(&build_hamiltonian(ints), mapping)?;
    let ground = if want_ground {
        if op.n_qubits() > FOCK_QUBIT_LIMIT {
            return Err(Error::Resource {
                what: "Trotter-error analysis",
                requested: op.n_qubits(),
                limit: FOCK_QUBIT_LIMIT,
            });
        }
        let (e, g) = ground_state(&operator_matrix(&op)?)?;
        Some((e + ints.core_energy, g))
    } else {
        None
    };
    Ok(Mapped {
        system: input.id(),
        mapping,
        core_energy: ints.core_energy,
        op,
        ground,
    })
}

fn run_cell(
    m: &Mapped,
    ordering: OrderingStrategy,
    mode: SynthesisMode,
    cfg: &BenchConfig,
) -> Result<(BenchRow, Option<TrotterErrorReport>)> {
    let plan = plan_for(&m.op, ordering, cfg.direction, cfg.n_steps, cfg.time, m.core_energy)?;
    let (raw, optimized) = plan_counts(&plan, mode, &cfg.optimizer)?;
    let report = match &m.ground {
        Some((exact, g)) => {
            let mut r = trotter_error(&plan, *exact, g)?;
            r.mapping = Some(m.mapping);
            Some(r)
        }
        None => None,
    };
    let savings = if raw.total == 0 {
        0.0
    } else {
        (raw.total - optimized.total) as f64 / raw.total as f64
    };
    log::info!(
        "{} {} {} {}: {} -> {} gates",
        m.system,
        m.mapping.short_name(),
        ordering,
        mode,
        raw.total,
        optimized.total
    );
    let row = BenchRow {
        system: m.system.clone(),
        n_qubits: m.op.n_qubits(),
        mapping: m.mapping,
        ordering,
        mode,
        raw,
        optimized,
        savings,
        trotter_error: report.as_ref().map(|r| r.error),
    };
    Ok((row, report))
}

/// Runs every (input, mapping, ordering, mode) cell. Failing cells are
/// collected in [`BenchOutcome::failures`] and never stop the sweep.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome> {
    cfg.validate()?;
    with_workers(cfg.workers, || run_sweep(cfg))
}

fn map_inputs(cfg: &BenchConfig, want_ground: bool) -> (Vec<Mapped>, Vec<BenchFailure>) {
    let mut mapped = Vec::new();
    let mut failures = Vec::new();
    for input in &cfg.inputs {
        let ints = match input.load() {
            Ok(i) => i,
            Err(e) => {
                failures.push(BenchFailure {
                    system: input.id(),
                    mapping: None,
                    ordering: None,
                    mode: None,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let results: Vec<_> = cfg
            .mappings
            .par_iter()
            .map(|&mapping| (mapping, map_system(input, &ints, mapping, want_ground)))
            .collect();
        for (mapping, r) in results {
            match r {
                Ok(m) => mapped.push(m),
                Err(e) => failures.push(BenchFailure {
                    system: input.id(),
                    mapping: Some(mapping),
                    ordering: None,
                    mode: None,
                    message: e.to_string(),
                }),
            }
        }
    }
    (mapped, failures)
}

fn run_sweep(cfg: &BenchConfig) -> Result<BenchOutcome> {
    let (mapped, failures) = map_inputs(cfg, cfg.trotter_error);
    let mut outcome = BenchOutcome {
        failures,
        ..BenchOutcome::default()
    };

    let cells: Vec<(&Mapped, OrderingStrategy, SynthesisMode)> = mapped
        .iter()
        .flat_map(|m| {
            cfg.orderings
                .iter()
                .flat_map(move |&o| cfg.modes.iter().map(move |&md| (m, o, md)))
        })
        .collect();
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(m, o, md)| (m, o, md, run_cell(m, o, md, cfg)))
        .collect();

    let mut ok: Vec<(BenchRow, Option<TrotterErrorReport>)> = Vec::new();
    for (m, o, md, r) in results {
        match r {
            Ok(pair) => ok.push(pair),
            Err(e) => outcome.failures.push(BenchFailure {
                system: m.system.clone(),
                mapping: Some(m.mapping),
                ordering: Some(o),
                mode: Some(md),
                message: e.to_string(),
            }),
        }
    }
    ok.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()));
    for (row, report) in ok {
        outcome.rows.push(row);
        outcome.trotter_reports.extend(report);
    }
    Ok(outcome)
}

/// One point of a Trotter-error sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterRow {
    pub system: String,
    pub n_qubits: usize,
    pub mapping: MappingScheme,
    pub ordering: OrderingStrategy,
    pub n_steps: usize,
    pub time: f64,
    pub exact_energy: f64,
    pub estimated_energy: f64,
    pub error: f64,
    pub overlap: f64,
    pub low_overlap: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrotterSweep {
    pub rows: Vec<TrotterRow>,
    pub failures: Vec<BenchFailure>,
}

/// Trotter error for every (input, mapping, ordering, step count). Ground
/// states are computed once per mapped system. `cfg.n_steps` is ignored in
/// favour of `steps`.
pub fn run_trotter_sweep(cfg: &BenchConfig, steps: &[usize]) -> Result<TrotterSweep> {
    cfg.validate()?;
    if steps.is_empty() || steps.contains(&0) {
        return Err(Error::Argument("step counts must be positive".into()));
    }
    let body = || -> Result<TrotterSweep> {
        let (mapped, failures) = map_inputs(cfg, true);
        let mut sweep = TrotterSweep {
            failures,
            ..TrotterSweep::default()
        };
        let cells: Vec<(&Mapped, OrderingStrategy, usize)> = mapped
            .iter()
            .flat_map(|m| cfg.orderings.iter().flat_map(move |&o| steps.iter().map(move |&n| (m, o, n))))
            .collect();
        let results: Vec<_> = cells
            .par_iter()
            .map(|&(m, o, n)| {
                let r = plan_for(&m.op, o, cfg.direction, n, cfg.time, m.core_energy).and_then(|plan| {
                    let (exact, g) = m.ground.as_ref().expect("ground state requested");
                    trotter_error(&plan, *exact, g)
                });
                (m, o, n, r)
            })
            .collect();
        for (m, o, n, r) in results {
            match r {
                Ok(r) => sweep.rows.push(TrotterRow {
                    system: m.system.clone(),
                    n_qubits: m.op.n_qubits(),
                    mapping: m.mapping,
                    ordering: o,
                    n_steps: n,
                    time: r.time,
                    exact_energy: r.exact_energy,
                    estimated_energy: r.estimated_energy,
                    error: r.error,
                    overlap: r.overlap,
                    low_overlap: r.low_overlap,
                }),
                Err(e) => sweep.failures.push(BenchFailure {
                    system: m.system.clone(),
                    mapping: Some(m.mapping),
                    ordering: Some(o),
                    mode: None,
                    message: format!("{n} steps: {e}"),
                }),
            }
        }
        sweep.rows.sort_by(|a, b| {
            (&a.system, a.mapping, a.ordering, a.n_steps).cmp(&(&b.system, b.mapping, b.ordering, b.n_steps))
        });
        Ok(sweep)
    };
    with_workers(cfg.workers, body)
}

pub const TROTTER_CSV_HEADER: &str =
    "system,n_qubits,mapping,ordering,seed,n_steps,time,exact_energy,estimated_energy,error,overlap,low_overlap";

pub fn emit_trotter_report<W: Write>(rows: &[TrotterRow], format: ReportFormat, mut w: W) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
        ReportFormat::Csv => {
            let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
            out.write_record(TROTTER_CSV_HEADER.split(','))?;
            for r in rows {
                out.write_record([
                    r.system.clone(),
                    r.n_qubits.to_string(),
                    r.mapping.short_name().to_string(),
                    r.ordering.name().to_string(),
                    opt_num(r.ordering.seed()),
                    r.n_steps.to_string(),
                    r.time.to_string(),
                    r.exact_energy.to_string(),
                    r.estimated_energy.to_string(),
                    r.error.to_string(),
                    r.overlap.to_string(),
                    r.low_overlap.to_string(),
                ])?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if workers == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Argument(format!("cannot start worker pool: {e}")))?;
    pool.install(f)
}

fn opt_num<T: fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes rows as CSV (fixed header) or as a JSON array.
pub fn emit_report<W: Write>(rows: &[BenchRow], format: ReportFormat, mut w: W) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
        ReportFormat::Csv => {
            let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
            out.write_record(CSV_HEADER.split(','))?;
            for r in rows {
                out.write_record([
                    r.system.clone(),
                    r.n_qubits.to_string(),
                    r.mapping.short_name().to_string(),
                    r.ordering.name().to_string(),
                    opt_num(r.ordering.seed()),
                    r.mode.name().to_string(),
                    r.raw.total.to_string(),
                    r.raw.entangling.to_string(),
                    r.raw.single_qubit.to_string(),
                    r.raw.non_clifford.to_string(),
                    r.optimized.total.to_string(),
                    r.optimized.entangling.to_string(),
                    r.optimized.single_qubit.to_string(),
                    r.optimized.non_clifford.to_string(),
                    r.savings.to_string(),
                    opt_num(r.trotter_error),
                ])?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

pub fn report_string(rows: &[BenchRow], format: ReportFormat) -> String {
    let mut buf = Vec::new();
    emit_report(rows, format, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("reports are UTF-8")
}

/// Reads a report produced by [`emit_report`].
pub fn parse_report<R: Read>(r: R, format: ReportFormat) -> Result<Vec<BenchRow>> {
    match format {
        ReportFormat::Json => Ok(serde_json::from_reader(r)?),
        ReportFormat::Csv => {
            let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
            let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
            if header.join(",") != CSV_HEADER {
                return Err(Error::parse(1, "unexpected report header"));
            }
            let mut rows = Vec::new();
            for (i, rec) in rdr.records().enumerate() {
                let rec = rec?;
                let line = i + 2;
                let f: BTreeMap<&str, &str> = CSV_HEADER.split(',').zip(rec.iter()).collect();
                let get = |k: &str| -> Result<&str> {
                    f.get(k).copied().ok_or_else(|| Error::parse(line, format!("missing column {k}")))
                };
                let num = |k: &str| -> Result<usize> {
                    get(k)?
                        .parse()
                        .map_err(|_| Error::parse(line, format!("bad integer in {k}")))
                };
                let float = |k: &str| -> Result<f64> {
                    get(k)?
                        .parse()
                        .map_err(|_| Error::parse(line, format!("bad number in {k}")))
                };
                let ordering_name = get("ordering")?;
                let seed = get("seed")?;
                let ordering: OrderingStrategy = if seed.is_empty() {
                    ordering_name.parse()?
                } else {
                    format!("{ordering_name}:{seed}").parse()?
                };
                let te = get("trotter_error")?;
                rows.push(BenchRow {
                    system: get("system")?.to_string(),
                    n_qubits: num("n_qubits")?,
                    mapping: get("mapping")?.parse()?,
                    ordering,
                    mode: get("mode")?.parse()?,
                    raw: GateCounts {
                        total: num("raw_total")?,
                        entangling: num("raw_entangling")?,
                        single_qubit: num("raw_single")?,
                        non_clifford: num("raw_nonclifford")?,
                    },
                    optimized: GateCounts {
                        total: num("opt_total")?,
                        entangling: num("opt_entangling")?,
                        single_qubit: num("opt_single")?,
                        non_clifford: num("opt_nonclifford")?,
                    },
                    savings: float("savings")?,
                    trotter_error: if te.is_empty() { None } else { Some(float("trotter_error")?) },
                });
            }
            Ok(rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(system: &str, mapping: MappingScheme) -> BenchRow {
        BenchRow {
            system: system.into(),
            n_qubits: 4,
            mapping,
            ordering: OrderingStrategy::Random(17),
            mode: SynthesisMode::BasisShift,
            raw: GateCounts {
                total: 10,
                entangling: 4,
                single_qubit: 4,
                non_clifford: 2,
            },
            optimized: GateCounts {
                total: 7,
                entangling: 2,
                single_qubit: 3,
                non_clifford: 2,
            },
            savings: 0.3,
            trotter_error: Some(1.234567890123e-4),
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        assert_eq!(report_string(&[], ReportFormat::Csv), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn one_row_two_lines() {
        let s = report_string(&[row("h2", MappingScheme::JordanWigner)], ReportFormat::Csv);
        assert_eq!(s.lines().count(), 2);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let mut rows = vec![row("h2", MappingScheme::JordanWigner), row("lih", MappingScheme::BravyiKitaev)];
        rows[1].trotter_error = None;
        rows[1].ordering = OrderingStrategy::Lexicographic;
        for fmt in [ReportFormat::Csv, ReportFormat::Json] {
            let s = report_string(&rows, fmt);
            assert_eq!(parse_report(s.as_bytes(), fmt).unwrap(), rows);
        }
    }

    #[test]
    fn input_spec_parsing() {
        assert_eq!(
            "16:3:0.5".parse::<InputSpec>().unwrap(),
            InputSpec::Synthetic {
                spin_orbitals: 16,
                seed: 3,
                density: 0.5
            }
        );
        assert_eq!(
            "fixtures/h2.fcidump".parse::<InputSpec>().unwrap(),
            InputSpec::File("fixtures/h2.fcidump".into())
        );
        assert!(InputSpec::Synthetic {
            spin_orbitals: 5,
            seed: 0,
            density: 1.0
        }
        .load()
        .is_err());
    }

    #[test]
    fn trotter_sweep_refines() {
        let cfg = BenchConfig {
            inputs: vec!["4:2:1".parse().unwrap()],
            orderings: vec![OrderingStrategy::Magnitude, OrderingStrategy::Lexicographic],
            ..BenchConfig::default()
        };
        let sweep = run_trotter_sweep(&cfg, &[1, 10]).unwrap();
        assert_eq!(sweep.rows.len(), 2 * 2 * 2);
        for pair in sweep.rows.chunks(2) {
            assert_eq!((pair[0].n_steps, pair[1].n_steps), (1, 10));
            assert!(pair[1].error <= pair[0].error);
        }
        let csv = {
            let mut b = Vec::new();
            emit_trotter_report(&sweep.rows, ReportFormat::Csv, &mut b).unwrap();
            String::from_utf8(b).unwrap()
        };
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.starts_with(TROTTER_CSV_HEADER));
    }

    #[test]
    fn sweep_arithmetic_and_failure_isolation() {
        let cfg = BenchConfig {
            inputs: vec![
                "4:1:1".parse().unwrap(),
                InputSpec::File("/nonexistent/x.fcidump".into()),
            ],
            ..BenchConfig::default()
        };
        let out = run_bench(&cfg).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.failures.len(), 1);
        assert_eq!(out.rows[0].raw.non_clifford, out.rows[1].raw.non_clifford);
        assert!(out.rows.iter().all(|r| (0.0..=1.0).contains(&r.savings)));
    }
}
