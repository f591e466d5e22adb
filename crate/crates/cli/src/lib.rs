//! Command-line front end. [`run`] takes the argument list and the standard
//! streams and returns the process exit status.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use reconf_core::dsr::kernelize_dsr;
use reconf_core::generate::{gen_random_degenerate, plant_dsr_instance, plant_isr_instance};
use reconf_core::isr_degenerate::{kernelize_degenerate, low_degree_vertices};
use reconf_core::isr_quasiwide::{kernelize_quasiwide, partition_by_solution_neighborhood};
use reconf_core::report::{rule_records, Report};
use reconf_core::{
    bfs_reconfig, isr_to_dsr, parse_instance, parse_report, serialize_report, solve_dsr,
    solve_isr_degenerate, solve_isr_quasiwide, verify_sequence, write_instance, Instance, Problem,
    QuasiWideParams, ReductionLog, Solution, Verdict, DEFAULT_STATE_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "reconf",
    version,
    about = "Independent and dominating set reconfiguration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an instance and print a JSON report.
    Solve(SolveArgs),
    /// Reduce an instance and print the kernel without solving it.
    Kernelize(SolveArgs),
    /// Check the sequence in a report against an instance.
    Verify { instance: PathBuf, report: PathBuf },
    /// Generate a random degenerate graph with planted endpoints.
    Gen(GenArgs),
    /// Turn an independent set instance into a dominating set instance.
    Convert {
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Gadget map sidecar; defaults to `<out>.gadget.json` with `--out`.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Print structural statistics as JSON.
    Stats {
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Auto,
    Degenerate,
    Quasiwide,
    Oracle,
}

#[derive(Debug, Args)]
struct SolveArgs {
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: Strategy,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    state_budget: usize,
    #[arg(long, default_value_t = QuasiWideParams::default().class_threshold)]
    class_threshold: usize,
    #[arg(long, default_value_t = QuasiWideParams::default().max_deletions)]
    max_deletions: usize,
    #[arg(long, default_value_t = QuasiWideParams::default().search_budget)]
    search_budget: usize,
    /// Log kernel size diagnostics for graphs without `K_{d,d}`.
    #[arg(long)]
    biclique_d: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SolveArgs {
    fn params(&self) -> QuasiWideParams {
        QuasiWideParams {
            class_threshold: self.class_threshold,
            max_deletions: self.max_deletions,
            search_budget: self.search_budget,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProblemArg {
    Isr,
    Dsr,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "isr")]
    problem: ProblemArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit status.
struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_input(&mut self, path: Option<&Path>) -> Result<String, Failure> {
        match path {
            Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
                .map_err(|e| fail(EXIT_DATA, format!("cannot read {}: {e}", p.display()))),
            _ => {
                let mut text = String::new();
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|e| fail(EXIT_DATA, format!("cannot read standard input: {e}")))?;
                Ok(text)
            }
        }
    }

    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<(), Failure> {
        match out {
            Some(p) => std::fs::write(p, text)
                .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", p.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| fail(EXIT_IO, format!("cannot write output: {e}"))),
        }
    }

    fn instance(&mut self, path: Option<&Path>) -> Result<Instance, Failure> {
        let text = self.read_input(path)?;
        parse_instance(&text).map_err(|e| fail(EXIT_DATA, format!("invalid instance: {e}")))
    }
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Yes => EXIT_OK,
        Verdict::No => EXIT_NO,
        Verdict::Exhausted => EXIT_UNKNOWN,
    }
}

fn reject_strategy(inst: &Instance, strategy: Strategy) -> Result<(), Failure> {
    if inst.problem == Problem::Dsr
        && matches!(strategy, Strategy::Degenerate | Strategy::Quasiwide)
    {
        return Err(fail(
            EXIT_USAGE,
            "strategies degenerate and quasiwide only apply to isr instances",
        ));
    }
    Ok(())
}

fn solve(io: &mut Io, args: &SolveArgs) -> Result<i32, Failure> {
    let inst = io.instance(args.input.as_deref())?;
    reject_strategy(&inst, args.strategy)?;
    let start = Instant::now();
    let sol = match (inst.problem, args.strategy) {
        (_, Strategy::Oracle) => Solution {
            outcome: bfs_reconfig(&inst, args.state_budget),
            log: ReductionLog::new(),
            kernel: inst.clone(),
        },
        (Problem::Isr, Strategy::Auto | Strategy::Degenerate) => {
            solve_isr_degenerate(&inst, args.state_budget)
                .map_err(|e| fail(EXIT_SOFTWARE, e.to_string()))?
        }
        (Problem::Isr, Strategy::Quasiwide) => {
            solve_isr_quasiwide(&inst, &args.params(), args.state_budget)
                .map_err(|e| fail(EXIT_USAGE, e.to_string()))?
        }
        (Problem::Dsr, _) => solve_dsr(&inst, args.state_budget, args.biclique_d)
            .map_err(|e| fail(EXIT_DATA, e.to_string()))?,
    };
    let ms = start.elapsed().as_millis() as u64;
    let mut text = serialize_report(&Report::from_solution(&sol, ms));
    text.push('\n');
    io.emit(args.out.as_deref(), &text)?;
    Ok(exit_for(sol.outcome.verdict))
}

fn kernelize(io: &mut Io, args: &SolveArgs) -> Result<i32, Failure> {
    let inst = io.instance(args.input.as_deref())?;
    reject_strategy(&inst, args.strategy)?;
    let (kernel, log) = match (inst.problem, args.strategy) {
        (_, Strategy::Oracle) => (inst.clone(), ReductionLog::new()),
        (Problem::Isr, Strategy::Auto | Strategy::Degenerate) => {
            let k = kernelize_degenerate(&inst).map_err(|e| fail(EXIT_SOFTWARE, e.to_string()))?;
            (k.kernel, k.log)
        }
        (Problem::Isr, Strategy::Quasiwide) => kernelize_quasiwide(&inst, &args.params())
            .map_err(|e| fail(EXIT_USAGE, e.to_string()))?,
        (Problem::Dsr, _) => {
            let k = kernelize_dsr(&inst).map_err(|e| fail(EXIT_DATA, e.to_string()))?;
            (k.kernel, k.log)
        }
    };
    let mut text = String::new();
    for record in rule_records(&log) {
        let cert = serde_json::to_string(&record.certificate).expect("plain data serializes");
        writeln!(
            text,
            "c rule {} deleted {} {cert}",
            record.rule, record.vertex
        )
        .unwrap();
    }
    text.push_str(&write_instance(&kernel));
    io.emit(args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn verify(io: &mut Io, instance: &Path, report: &Path) -> Result<i32, Failure> {
    let inst = io.instance(Some(instance))?;
    let text = io.read_input(Some(report))?;
    let report = parse_report(&text).map_err(|e| fail(EXIT_DATA, e.to_string()))?;
    let seq = report.reconf_sequence().ok_or_else(|| {
        fail(
            EXIT_DATA,
            format!("report answer is {:?}; nothing to verify", report.answer),
        )
    })?;
    match verify_sequence(&inst, &seq) {
        Ok(()) => {
            io.emit(None, &format!("valid: {} moves\n", seq.len()))?;
            Ok(EXIT_OK)
        }
        Err(v) => {
            io.emit(None, &format!("invalid: {v}\n"))?;
            Ok(EXIT_NO)
        }
    }
}

fn generate(io: &mut Io, args: &GenArgs) -> Result<i32, Failure> {
    if args.n == 0 || args.k == 0 {
        return Err(fail(EXIT_USAGE, "--n and --k must be positive"));
    }
    let g = gen_random_degenerate(args.n, args.d, args.seed);
    let inst = match args.problem {
        ProblemArg::Isr => plant_isr_instance(&g, args.k, args.seed),
        ProblemArg::Dsr => plant_dsr_instance(&g, args.k, args.seed),
    }
    .ok_or_else(|| fail(EXIT_DATA, "could not plant endpoints of that size"))?;
    io.emit(args.out.as_deref(), &write_instance(&inst))?;
    Ok(EXIT_OK)
}

fn convert(
    io: &mut Io,
    input: Option<&Path>,
    out: Option<&Path>,
    map: Option<&Path>,
) -> Result<i32, Failure> {
    let inst = io.instance(input)?;
    let (dsr, gm) = isr_to_dsr(&inst).map_err(|e| fail(EXIT_DATA, e.to_string()))?;
    io.emit(out, &write_instance(&dsr))?;
    let sidecar = map.map(Path::to_path_buf).or_else(|| {
        out.map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(".gadget.json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = sidecar {
        std::fs::write(&path, gm.to_json() + "\n")
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

fn stats(io: &mut Io, input: Option<&Path>, out: Option<&Path>) -> Result<i32, Failure> {
    let inst = io.instance(input)?;
    let g = &inst.graph;
    let degeneracy = g.degeneracy_order().degeneracy;
    let bicliques: serde_json::Map<String, serde_json::Value> = (1..=3)
        .map(|d| {
            (
                d.to_string(),
                serde_json::Value::Bool(g.contains_biclique(d)),
            )
        })
        .collect();
    let anchors = inst.anchors();
    let classes: Vec<usize> = partition_by_solution_neighborhood(g, &anchors)
        .values()
        .map(Vec::len)
        .collect();
    let low =
        (inst.problem == Problem::Isr).then(|| low_degree_vertices(&inst, degeneracy.max(1)).len());
    let value = serde_json::json!({
        "problem": inst.problem.to_string(),
        "n": g.n(),
        "m": g.m(),
        "k": inst.k,
        "max_degree": g.max_degree(),
        "degeneracy": degeneracy,
        "contains_biclique": bicliques,
        "class_sizes": classes,
        "low_degree_outside_endpoints": low,
    });
    let text = serde_json::to_string_pretty(&value).expect("plain data serializes") + "\n";
    io.emit(out, &text)?;
    Ok(EXIT_OK)
}

/// Runs one command and returns its exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    let result = match &cli.command {
        Command::Solve(args) => solve(&mut io, args),
        Command::Kernelize(args) => kernelize(&mut io, args),
        Command::Verify { instance, report } => verify(&mut io, instance, report),
        Command::Gen(args) => generate(&mut io, args),
        Command::Convert { input, out, map } => {
            convert(&mut io, input.as_deref(), out.as_deref(), map.as_deref())
        }
        Command::Stats { input, out } => stats(&mut io, input.as_deref(), out.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "reconf: {}", f.msg);
            f.code
        }
    }
}
