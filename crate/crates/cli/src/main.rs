use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bkbench::bench::{
    emit_report, emit_trotter_report, run_bench, run_trotter_sweep, BenchConfig, BenchFailure, InputSpec,
    ReportFormat,
};
use bkbench::circuit::{count_gates, synthesize_plan, Circuit, GateCounts, SynthesisMode};
use bkbench::fermion::{build_hamiltonian, parse_fcidump};
use bkbench::optimizer::{optimize, OptimizeLevel, OptimizerConfig, PassKind, DEFAULT_WINDOW};
use bkbench::trotter::{plan_for, MagnitudeDirection, OrderingStrategy};
use bkbench::{map_operator, Complex64, MappingScheme, QubitOperator};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bkbench", version, about = "Jordan-Wigner vs Bravyi-Kitaev circuit cost benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map FCIDUMP integrals to a Pauli-sum file.
    Map(MapArgs),
    /// Synthesize a Trotter circuit from a Pauli-sum file.
    Compile(CompileArgs),
    /// Cancel gates in a circuit file.
    Optimize(OptimizeArgs),
    /// Gate-count sweep over systems, mappings, orderings and modes.
    Bench(BenchArgs),
    /// Trotter-error sweep over systems, mappings, orderings and step counts.
    TrotterError(TrotterArgs),
}

#[derive(Args)]
struct MapArgs {
    /// FCIDUMP file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "jw")]
    mapping: MappingScheme,
    /// Leave the nuclear-repulsion constant out of the identity term.
    #[arg(long)]
    no_core_energy: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long, default_value = "magnitude")]
    ordering: OrderingStrategy,
    #[arg(long, default_value = "descending")]
    magnitude_direction: MagnitudeDirection,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value_t = 1.0)]
    time: f64,
}

#[derive(Args)]
struct CompileArgs {
    /// Pauli-sum file written by `map`.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    plan: PlanArgs,
    #[arg(long, default_value = "canonical")]
    mode: SynthesisMode,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizerArgs {
    #[arg(long = "optimize", default_value = "full")]
    level: OptimizeLevel,
    /// Gates inspected per commutation scan.
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    /// Optimize across Trotter-step boundaries.
    #[arg(long)]
    cross_step: bool,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Circuit file written by `compile`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long = "optimize", default_value = "full")]
    level: OptimizeLevel,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// FCIDUMP path or `n:seed:density` synthetic spec (repeatable).
    #[arg(long)]
    input: Vec<InputSpec>,
    /// Synthetic system `n:seed:density` with n spin-orbitals (repeatable).
    #[arg(long)]
    synthetic: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "jw,bk")]
    mapping: Vec<MappingScheme>,
    #[arg(long, value_delimiter = ',', default_value = "magnitude")]
    ordering: Vec<OrderingStrategy>,
    #[arg(long, default_value = "descending")]
    magnitude_direction: MagnitudeDirection,
    #[arg(long, default_value_t = 1.0)]
    time: f64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, value_delimiter = ',', default_value = "canonical")]
    mode: Vec<SynthesisMode>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    /// Also measure the Trotter error of each cell.
    #[arg(long)]
    trotter_error: bool,
}

#[derive(Args)]
struct TrotterArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    steps: Vec<usize>,
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open_input(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
    ))
}

fn describe(c: &GateCounts) -> String {
    format!(
        "{} gates ({} entangling, {} single-qubit, {} non-Clifford)",
        c.total, c.entangling, c.single_qubit, c.non_clifford
    )
}

fn run_map(a: MapArgs) -> Result<()> {
    let ints = parse_fcidump(open_input(&a.input)?).with_context(|| format!("reading {}", a.input.display()))?;
    let mut op = map_operator(&build_hamiltonian(&ints), a.mapping)?;
    if !a.no_core_energy {
        op.add_constant(Complex64::new(ints.core_energy, 0.0));
    }
    log::info!("{} terms on {} qubits", op.len(), op.n_qubits());
    let mut out = open_output(a.output.as_deref())?;
    op.write_text(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run_compile(a: CompileArgs) -> Result<()> {
    let op = QubitOperator::read_text(open_input(&a.input)?).with_context(|| format!("reading {}", a.input.display()))?;
    let plan = plan_for(&op, a.plan.ordering, a.plan.magnitude_direction, a.plan.steps, a.plan.time, 0.0)?;
    let circ = synthesize_plan(&plan, a.mode)?;
    eprintln!("{}", describe(&count_gates(&circ)));
    let mut out = open_output(a.output.as_deref())?;
    circ.write_text(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run_optimize(a: OptimizeArgs) -> Result<()> {
    let circ = Circuit::read_text(open_input(&a.input)?).with_context(|| format!("reading {}", a.input.display()))?;
    let (opt, report) = optimize(&circ, a.level, a.window);
    for (i, p) in report.passes.iter().enumerate() {
        let kind = match p.kind {
            PassKind::Adjacent => "adjacent",
            PassKind::Commute => "commute",
        };
        eprintln!("pass {}: {kind} removed {}", i + 1, p.removed);
    }
    eprintln!("before: {}", describe(&report.before));
    eprintln!("after:  {}", describe(&report.after));
    let mut out = open_output(a.output.as_deref())?;
    opt.write_text(&mut out)?;
    out.flush()?;
    Ok(())
}

fn sweep_config(s: &SweepArgs) -> Result<BenchConfig> {
    let mut inputs = s.input.clone();
    for spec in &s.synthetic {
        match spec.parse::<InputSpec>()? {
            syn @ InputSpec::Synthetic { .. } => inputs.push(syn),
            InputSpec::File(_) => bail!("--synthetic expects n:seed:density, got '{spec}'"),
        }
    }
    if inputs.is_empty() {
        bail!("give at least one --input or --synthetic system");
    }
    Ok(BenchConfig {
        inputs,
        mappings: s.mapping.clone(),
        orderings: s.ordering.clone(),
        direction: s.magnitude_direction,
        time: s.time,
        workers: s.workers,
        ..BenchConfig::default()
    })
}

fn report_failures(failures: &[BenchFailure]) -> ExitCode {
    for f in failures {
        let mut cell = f.system.clone();
        if let Some(m) = f.mapping {
            cell.push_str(&format!(" {}", m.short_name()));
        }
        if let Some(o) = f.ordering {
            cell.push_str(&format!(" {o}"));
        }
        if let Some(m) = f.mode {
            cell.push_str(&format!(" {m}"));
        }
        eprintln!("failed: {cell}: {}", f.message);
    }
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn run_bench_cmd(a: BenchArgs) -> Result<ExitCode> {
    let cfg = BenchConfig {
        modes: a.mode,
        optimizer: OptimizerConfig {
            level: a.optimizer.level,
            window: a.optimizer.window,
            cross_step: a.optimizer.cross_step,
        },
        n_steps: a.steps,
        trotter_error: a.trotter_error,
        ..sweep_config(&a.sweep)?
    };
    let outcome = run_bench(&cfg)?;
    let mut out = open_output(a.sweep.output.as_deref())?;
    emit_report(&outcome.rows, a.sweep.format, &mut out)?;
    out.flush()?;
    Ok(report_failures(&outcome.failures))
}

fn run_trotter_cmd(a: TrotterArgs) -> Result<ExitCode> {
    let cfg = sweep_config(&a.sweep)?;
    let sweep = run_trotter_sweep(&cfg, &a.steps)?;
    for r in sweep.rows.iter().filter(|r| r.low_overlap) {
        eprintln!(
            "warning: {} {} {}: ground-state overlap {:.3}",
            r.system,
            r.mapping.short_name(),
            r.ordering,
            r.overlap
        );
    }
    let mut out = open_output(a.sweep.output.as_deref())?;
    emit_trotter_report(&sweep.rows, a.sweep.format, &mut out)?;
    out.flush()?;
    Ok(report_failures(&sweep.failures))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Map(a) => run_map(a).map(|_| ExitCode::SUCCESS),
        Command::Compile(a) => run_compile(a).map(|_| ExitCode::SUCCESS),
        Command::Optimize(a) => run_optimize(a).map(|_| ExitCode::SUCCESS),
        Command::Bench(a) => run_bench_cmd(a),
        Command::TrotterError(a) => run_trotter_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
