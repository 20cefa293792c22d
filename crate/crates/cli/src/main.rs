use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cli::commands::*;
use cli::report::RunReport;
use cli::selftest::run_selftest;
use cli::CliError;
use fixpoint_engine::LfpPolicy;

#[derive(Parser)]
#[command(name = "qcount", version, about = "Evaluate quantitative second-order counting formulae")]
struct Args {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula over a finite structure.
    Eval {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, value_enum, default_value = "count")]
        mode: ModeArg,
        /// auto, strict, restricted or cap:N.
        #[arg(long, default_value = "auto")]
        policy: LfpPolicy,
        /// Cap every fixed point at N iterations (same as --policy cap:N).
        #[arg(long)]
        max_iter: Option<usize>,
        /// First-order binding NAME=ELEMENT; repeatable.
        #[arg(long)]
        fo: Vec<String>,
        /// Second-order binding NAME=ARITY:a,b;c,d; repeatable.
        #[arg(long)]
        so: Vec<String>,
        /// Report every fixed-point iteration.
        #[arg(long)]
        trace_iters: bool,
    },
    /// Classify the fragment of a formula.
    Fragment {
        #[arg(long)]
        formula: PathBuf,
        /// Declare second-order variable NAME=ARITY.
        #[arg(long)]
        so: Vec<String>,
    },
    /// Compile a problem instance to a structure and a closed formula.
    Compile {
        #[arg(value_enum)]
        template: TemplateArg,
        input: PathBuf,
        /// Output prefix; writes PREFIX.struct and PREFIX.qf.
        #[arg(long, short)]
        out: PathBuf,
        /// Universe size of the machine encoding.
        #[arg(long)]
        universe: Option<u32>,
        /// Tuple width of the machine encoding.
        #[arg(long, default_value_t = 1)]
        arity: usize,
    },
    /// Count by brute force.
    Oracle {
        #[arg(value_enum)]
        problem: ProblemArg,
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        clock: usize,
    },
    /// Machine utilities.
    Tm {
        #[command(subcommand)]
        command: TmCommand,
    },
    /// Run the oracle-equivalence and property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        suite: Option<String>,
    },
}

#[derive(Subcommand)]
enum TmCommand {
    /// Explore the computation tree of a machine.
    Run {
        spec: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 64)]
        clock: usize,
        #[arg(long, value_enum, default_value = "tot")]
        count: CountArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Count,
    Set,
}

#[derive(Clone, Copy, ValueEnum)]
enum TemplateArg {
    Clique,
    Sinks,
    Is,
    IsFo,
    Census,
    Dnf,
    Tm,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Cliques,
    Is,
    Dnf,
    Census,
    Sinks,
    Branchings,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountArg {
    Acc,
    Tot,
    Span,
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn run(args: Args) -> Result<ExitCode, CliError> {
    let report = match args.command {
        Command::Eval {
            structure,
            formula,
            mode,
            policy,
            max_iter,
            fo,
            so,
            trace_iters,
        } => cmd_eval(&EvalArgs {
            structure,
            formula,
            mode: match mode {
                ModeArg::Count => Mode::Count,
                ModeArg::Set => Mode::Set,
            },
            policy,
            max_iter,
            fo,
            so,
            trace: trace_iters,
        })?,
        Command::Fragment { formula, so } => cmd_fragment(&formula, &so)?,
        Command::Compile {
            template,
            input,
            out,
            universe,
            arity,
        } => {
            let template = match template {
                TemplateArg::Clique => Template::Clique,
                TemplateArg::Sinks => Template::Sinks,
                TemplateArg::Is => Template::Is,
                TemplateArg::IsFo => Template::IsFo,
                TemplateArg::Census => Template::Census,
                TemplateArg::Dnf => Template::Dnf,
                TemplateArg::Tm => Template::Tm,
            };
            let (s, f) = cmd_compile(&CompileArgs {
                template,
                input,
                out,
                universe,
                arity,
            })?;
            println!("{}\n{}", s.display(), f.display());
            return Ok(ExitCode::SUCCESS);
        }
        Command::Oracle { problem, file, clock } => {
            let kind = match problem {
                ProblemArg::Cliques => ProblemKind::Cliques,
                ProblemArg::Is => ProblemKind::Is,
                ProblemArg::Dnf => ProblemKind::Dnf,
                ProblemArg::Census => ProblemKind::Census,
                ProblemArg::Sinks => ProblemKind::Sinks,
                ProblemArg::Branchings => ProblemKind::Branchings,
            };
            cmd_oracle(kind, &file, clock)?
        }
        Command::Tm {
            command: TmCommand::Run { spec, input, clock, count },
        } => {
            let what = match count {
                CountArg::Acc => MachineCount::Acc,
                CountArg::Tot => MachineCount::Tot,
                CountArg::Span => MachineCount::Span,
            };
            cmd_tm_run(&spec, &input, clock, what)?
        }
        Command::Selftest { seed, cases, suite } => {
            let results = run_selftest(seed, cases, suite.as_deref()).map_err(CliError::Usage)?;
            let mut ok = true;
            for r in &results {
                println!("{} {}", if r.passed() { "ok  " } else { "FAIL" }, r.line());
                for f in r.failures.iter().take(5) {
                    println!("    {}", f.replace('\n', "\n    "));
                }
                ok &= r.passed();
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    };
    emit(&report, args.json);
    Ok(if report.diverged() { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
