//! The subcommands, as functions from arguments to reports.

use std::path::{Path, PathBuf};
use std::time::Instant;

use bool_semantics::Assignment;
use counting_machines::{parse_machine, run_tree};
use expl_semantics::{ExplError, FunEnv};
use fixpoint_engine::{evaluate_with, LfpEngine, LfpPolicy};
use formula_ast::{classify_fragment, parse_qformula_with, QFormula};
use problem_compilers::{
    compile_dnf, compile_tm_to_tot, oracle_count, parse_dnf, parse_graph, parse_nfa, template_census,
    template_clique, template_is, template_sinks, Instance, Problem,
};
use structure_core::{parse_structure, RelationValue, Structure};

use crate::error::CliError;
use crate::report::{InputFile, Outcome, RunReport};

pub fn read(path: &Path) -> Result<(String, InputFile), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let input = InputFile::new(path, &text);
    Ok((text, input))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `NAME=ARITY:TUPLES` with tuples separated by `;` and elements by `,`,
/// e.g. `B=2:0,1;1,1`. The value may be empty.
pub fn parse_so_binding(s: &str, n: Option<u32>) -> Result<(String, usize, Option<RelationValue>), CliError> {
    let bad = || CliError::Usage(format!("bad relation binding `{s}`: expected NAME=ARITY:a,b;c,d"));
    let (name, rest) = s.split_once('=').ok_or_else(bad)?;
    let (arity, tuples) = rest.split_once(':').unwrap_or((rest, ""));
    let arity: usize = arity.trim().parse().map_err(|_| bad())?;
    let Some(n) = n else {
        return Ok((name.to_string(), arity, None));
    };
    let mut parsed = Vec::new();
    for t in tuples.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let elems: Vec<u32> = t
            .split(',')
            .map(|e| e.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if elems.len() != arity {
            return Err(bad());
        }
        parsed.push(elems);
    }
    let rel = RelationValue::from_tuples(n, arity, parsed)?;
    Ok((name.to_string(), arity, Some(rel)))
}

/// `NAME=ELEMENT`.
pub fn parse_fo_binding(s: &str) -> Result<(String, u32), CliError> {
    let bad = || CliError::Usage(format!("bad element binding `{s}`: expected NAME=ELEMENT"));
    let (name, v) = s.split_once('=').ok_or_else(bad)?;
    Ok((name.to_string(), v.trim().parse().map_err(|_| bad())?))
}

fn load_formula(path: &Path, so: &[(String, usize)]) -> Result<(QFormula, InputFile), CliError> {
    let (text, input) = read(path)?;
    let decl: Vec<(&str, usize)> = so.iter().map(|(n, k)| (n.as_str(), *k)).collect();
    let f = parse_qformula_with(&text, &decl).map_err(|source| CliError::Formula {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((f, input))
}

fn load_structure(path: &Path) -> Result<(Structure, InputFile), CliError> {
    let (text, input) = read(path)?;
    let s = parse_structure(&text).map_err(|source| CliError::Structure {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((s, input))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Count,
    Set,
}

#[derive(Clone, Debug)]
pub struct EvalArgs {
    pub structure: PathBuf,
    pub formula: PathBuf,
    pub mode: Mode,
    pub policy: LfpPolicy,
    pub max_iter: Option<usize>,
    pub fo: Vec<String>,
    pub so: Vec<String>,
    pub trace: bool,
}

/// Evaluates a formula file over a structure file. Divergence is reported
/// as an outcome rather than an error.
pub fn cmd_eval(args: &EvalArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (s, sin) = load_structure(&args.structure)?;
    let n = s.universe_size();
    let mut asg = Assignment::new();
    let mut decl = Vec::new();
    for b in &args.so {
        let (name, k, rel) = parse_so_binding(b, Some(n))?;
        asg = asg.with_so(&name, rel.expect("universe given"));
        decl.push((name, k));
    }
    for b in &args.fo {
        let (name, a) = parse_fo_binding(b)?;
        asg = asg.with_fo(&name, a);
    }
    let (f, fin) = load_formula(&args.formula, &decl)?;
    let policy = args.max_iter.map_or(args.policy, LfpPolicy::Capped);
    let engine = LfpEngine::new(policy);
    let result = evaluate_with(&f, &s, &asg, &FunEnv::new(), engine);
    let (outcome, runs) = match result {
        Ok(e) => {
            let o = match args.mode {
                Mode::Count => Outcome::Count(e.value.count()),
                Mode::Set => Outcome::Set(e.value),
            };
            (o, e.runs)
        }
        Err(e @ (ExplError::Diverged { .. } | ExplError::ChainBound { .. })) => {
            let iterations = match &e {
                ExplError::Diverged { iterations, .. } | ExplError::ChainBound { iterations, .. } => *iterations,
                _ => unreachable!(),
            };
            (
                Outcome::Diverged {
                    message: e.to_string(),
                    iterations,
                },
                Vec::new(),
            )
        }
        Err(e) => return Err(e.into()),
    };
    Ok(RunReport {
        inputs: vec![sin, fin],
        fragment: Some(classify_fragment(&f)),
        policy: Some(policy.to_string()),
        runs,
        trace: args.trace,
        wall: start.elapsed(),
        ..RunReport::new("eval", outcome)
    })
}

pub fn cmd_fragment(formula: &Path, so: &[String]) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let decl = so
        .iter()
        .map(|b| parse_so_binding(b, None).map(|(n, k, _)| (n, k)))
        .collect::<Result<Vec<_>, _>>()?;
    let (f, input) = load_formula(formula, &decl)?;
    let tag = classify_fragment(&f);
    Ok(RunReport {
        inputs: vec![input],
        fragment: Some(tag),
        wall: start.elapsed(),
        ..RunReport::new("fragment", Outcome::Fragment(tag))
    })
}

/// Problems accepted by `compile`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Template {
    Clique,
    Sinks,
    Is,
    IsFo,
    Census,
    Dnf,
    Tm,
}

pub struct CompileArgs {
    pub template: Template,
    pub input: PathBuf,
    pub out: PathBuf,
    pub universe: Option<u32>,
    pub arity: usize,
}

/// Writes `OUT.struct` and the closed formula `OUT.qf`; returns both paths.
pub fn cmd_compile(args: &CompileArgs) -> Result<(PathBuf, PathBuf), CliError> {
    let (text, _) = read(&args.input)?;
    let (structure, formula) = match args.template {
        Template::Tm => {
            let m = parse_machine(&text)?;
            let n = args
                .universe
                .ok_or_else(|| CliError::Usage("compile tm needs --universe".into()))?;
            let c = compile_tm_to_tot(&m, &Structure::new(n)?, args.arity)?;
            (c.structure, c.closed)
        }
        t => {
            let i: Instance = match t {
                Template::Clique => template_clique(&parse_graph(&text)?)?,
                Template::Sinks => template_sinks(&parse_graph(&text)?)?,
                Template::Is => template_is(&parse_graph(&text)?)?.0,
                Template::IsFo => template_is(&parse_graph(&text)?)?.1,
                Template::Census => template_census(&parse_nfa(&text)?)?,
                Template::Dnf => compile_dnf(&parse_dnf(&text)?)?,
                Template::Tm => unreachable!("handled above"),
            };
            (i.structure, i.closed)
        }
    };
    let with_ext = |ext: &str| {
        let mut p = args.out.clone().into_os_string();
        p.push(ext);
        PathBuf::from(p)
    };
    let (sp, fp) = (with_ext(".struct"), with_ext(".qf"));
    write(&sp, &structure.to_text())?;
    write(&fp, &format!("{formula}\n"))?;
    Ok((sp, fp))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Cliques,
    Is,
    Dnf,
    Census,
    Sinks,
    Branchings,
}

pub fn cmd_oracle(kind: ProblemKind, file: &Path, clock: usize) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (text, input) = read(file)?;
    let p = match kind {
        ProblemKind::Cliques => Problem::Cliques(parse_graph(&text)?),
        ProblemKind::Is => Problem::IndependentSets(parse_graph(&text)?),
        ProblemKind::Sinks => Problem::Sinks(parse_graph(&text)?),
        ProblemKind::Dnf => Problem::Dnf(parse_dnf(&text)?),
        ProblemKind::Census => Problem::Census(parse_nfa(&text)?),
        ProblemKind::Branchings => Problem::Branchings(parse_machine(&text)?, clock),
    };
    let v = oracle_count(&p)?;
    Ok(RunReport {
        inputs: vec![input],
        wall: start.elapsed(),
        ..RunReport::new("count", Outcome::Value(v))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MachineCount {
    Acc,
    Tot,
    Span,
}

pub fn cmd_tm_run(spec: &Path, input: &str, clock: usize, what: MachineCount) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (text, file) = read(spec)?;
    let m = parse_machine(&text)?;
    let stats = run_tree(&m, input, clock)?;
    let (mode, v) = match what {
        MachineCount::Acc => ("acc", stats.acc()),
        MachineCount::Span => ("span", stats.span()),
        MachineCount::Tot => ("tot", counting_machines::tot_count(&m, input, clock)?),
    };
    Ok(RunReport {
        inputs: vec![file],
        wall: start.elapsed(),
        ..RunReport::new(mode, Outcome::Value(v))
    })
}
