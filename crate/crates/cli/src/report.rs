//! Reports printed by the subcommands.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use expl_semantics::{Count, ExplValue};
use fixpoint_engine::LfpRun;
use formula_ast::FragmentTag;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// A file read by a run and the SHA-256 of its contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(path: &Path, contents: &str) -> Self {
        let digest = Sha256::digest(contents.as_bytes());
        InputFile {
            path: path.display().to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Count(Count),
    Set(ExplValue),
    Diverged { message: String, iterations: usize },
    Value(u64),
    Fragment(FragmentTag),
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub mode: String,
    pub inputs: Vec<InputFile>,
    pub fragment: Option<FragmentTag>,
    pub policy: Option<String>,
    pub outcome: Outcome,
    pub runs: Vec<LfpRun>,
    pub trace: bool,
    pub wall: Duration,
}

impl RunReport {
    pub fn new(mode: &str, outcome: Outcome) -> Self {
        RunReport {
            mode: mode.to_string(),
            inputs: Vec::new(),
            fragment: None,
            policy: None,
            outcome,
            runs: Vec::new(),
            trace: false,
            wall: Duration::ZERO,
        }
    }

    pub fn diverged(&self) -> bool {
        matches!(self.outcome, Outcome::Diverged { .. })
    }

    /// Total iterations over all fixed points solved or abandoned.
    pub fn iterations(&self) -> usize {
        let solved: usize = self.runs.iter().map(|r| r.iterations).sum();
        match self.outcome {
            Outcome::Diverged { iterations, .. } => solved + iterations,
            _ => solved,
        }
    }

    /// The human-readable report; everything except the last line is
    /// determined by the inputs and flags.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in &self.inputs {
            let _ = writeln!(s, "input: {} {}", i.path, i.sha256);
        }
        if let Some(t) = self.fragment {
            let _ = writeln!(s, "fragment: {t}");
        }
        if let Some(p) = &self.policy {
            let _ = writeln!(s, "policy: {p}");
        }
        match &self.outcome {
            Outcome::Count(c) => {
                let _ = writeln!(s, "count: {c}");
            }
            Outcome::Set(v) => {
                let _ = writeln!(s, "set: {v}");
            }
            Outcome::Diverged { message, iterations } => {
                let _ = writeln!(s, "diverged after {iterations} iters: {message}");
            }
            Outcome::Value(v) => {
                let _ = writeln!(s, "{}: {v}", self.mode);
            }
            Outcome::Fragment(_) => {}
        }
        if !self.runs.is_empty() {
            let _ = writeln!(s, "iterations: {}", self.iterations());
        }
        if self.trace {
            for r in &self.runs {
                let support: Vec<String> = r.support.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    s,
                    "lfp {} [{}]: {} iterations, bound {}, support {}",
                    r.name,
                    r.policy,
                    r.iterations,
                    r.chain_bound,
                    support.join(" ")
                );
            }
        }
        let _ = writeln!(s, "time: {:.3} ms", self.wall.as_secs_f64() * 1e3);
        s
    }

    pub fn to_json(&self) -> Value {
        let result = match &self.outcome {
            Outcome::Count(Count::Finite(c)) => json!({ "count": c }),
            Outcome::Count(Count::Infinite) => json!({ "count": "inf" }),
            Outcome::Set(ExplValue::Infinite) => json!({ "set": "inf" }),
            Outcome::Set(ExplValue::Finite(words)) => {
                json!({ "set": words.iter().map(|w| w.to_string()).collect::<Vec<_>>() })
            }
            Outcome::Diverged { message, iterations } => {
                json!({ "diverged": { "message": message, "iterations": iterations } })
            }
            Outcome::Value(v) => json!({ self.mode.clone(): v }),
            Outcome::Fragment(t) => json!({ "fragment": t.name() }),
        };
        json!({
            "mode": self.mode,
            "inputs": self.inputs.iter().map(|i| json!({ "path": i.path, "sha256": i.sha256 })).collect::<Vec<_>>(),
            "fragment": self.fragment.map(|t| t.name()),
            "policy": self.policy,
            "result": result,
            "iterations": self.iterations(),
            "runs": self.runs.iter().map(|r| json!({
                "name": r.name,
                "policy": r.policy.to_string(),
                "iterations": r.iterations,
                "chain_bound": r.chain_bound,
                "support": r.support,
                "infinite": r.infinite,
            })).collect::<Vec<_>>(),
            "wall_ms": self.wall.as_secs_f64() * 1e3,
        })
    }
}
