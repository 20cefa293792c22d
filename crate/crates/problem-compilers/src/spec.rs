//! Problem instances and their text formats.

use std::collections::BTreeSet;

use crate::error::CompileError;

/// A directed graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    pub n: u32,
    pub edges: BTreeSet<(u32, u32)>,
    pub source: Option<u32>,
}

impl GraphSpec {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, CompileError> {
        let g = GraphSpec {
            n,
            edges: edges.into_iter().collect(),
            source: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_source(mut self, s: u32) -> Result<Self, CompileError> {
        self.source = Some(s);
        self.validate()?;
        Ok(self)
    }

    /// Both directions of every edge, without self-loops.
    pub fn symmetrized(&self) -> GraphSpec {
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| a != b)
            .flat_map(|&(a, b)| [(a, b), (b, a)])
            .collect();
        GraphSpec { edges, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), CompileError> {
        if self.n == 0 {
            return Err(CompileError::Invalid("a graph needs at least one vertex".into()));
        }
        let out = |v: u32| v >= self.n;
        if let Some(&(a, b)) = self.edges.iter().find(|&&(a, b)| out(a) || out(b)) {
            return Err(CompileError::Invalid(format!("edge ({a},{b}) leaves 0..{}", self.n)));
        }
        if self.source.is_some_and(out) {
            return Err(CompileError::Invalid("source out of range".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n);
        if let Some(src) = self.source {
            s.push_str(&format!("source {src}\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("edge {a} {b}\n"));
        }
        s
    }
}

/// A formula in disjunctive normal form over variables `1..=vars`; a
/// literal is `v` or `-v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnfSpec {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl DnfSpec {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, CompileError> {
        let d = DnfSpec { vars, clauses };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), CompileError> {
        if self.vars == 0 {
            return Err(CompileError::Invalid("a formula needs at least one variable".into()));
        }
        if self.clauses.is_empty() {
            return Err(CompileError::Invalid("a formula needs at least one clause".into()));
        }
        for c in &self.clauses {
            if c.is_empty() {
                return Err(CompileError::Invalid("empty clause".into()));
            }
            if let Some(l) = c.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > self.vars) {
                return Err(CompileError::Invalid(format!("literal {l} outside 1..={}", self.vars)));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vars {}\n", self.vars);
        for c in &self.clauses {
            let lits: Vec<String> = c.iter().map(i32::to_string).collect();
            s.push_str(&lits.join(" "));
            s.push('\n');
        }
        s
    }
}

/// A nondeterministic automaton over `{0, 1}` and a length bound `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfaSpec {
    pub states: u32,
    /// `(from, letter, to)`.
    pub edges: BTreeSet<(u32, u8, u32)>,
    pub start: u32,
    pub accept: BTreeSet<u32>,
    pub m: u32,
}

impl NfaSpec {
    pub fn validate(&self) -> Result<(), CompileError> {
        if self.states == 0 || self.start >= self.states {
            return Err(CompileError::Invalid("start state out of range".into()));
        }
        if self.m == 0 {
            return Err(CompileError::Invalid("the length bound must be at least 1".into()));
        }
        let bad_edge = self
            .edges
            .iter()
            .any(|&(p, a, q)| p >= self.states || q >= self.states || a > 1);
        if bad_edge || self.accept.iter().any(|&q| q >= self.states) {
            return Err(CompileError::Invalid("state or letter out of range".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("states {}\nstart {}\nlength {}\naccept", self.states, self.start, self.m);
        for q in &self.accept {
            s.push_str(&format!(" {q}"));
        }
        s.push('\n');
        for (p, a, q) in &self.edges {
            s.push_str(&format!("edge {p} {a} {q}\n"));
        }
        s
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> CompileError {
    CompileError::Syntax { line, msg: msg.into() }
}

/// Non-comment lines as (line number, words).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let words: Vec<&str> = l.split('#').next().unwrap_or("").split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn num<T: std::str::FromStr>(line: usize, w: &str) -> Result<T, CompileError> {
    w.parse().map_err(|_| syntax(line, format!("bad number `{w}`")))
}

fn nums<T: std::str::FromStr>(line: usize, ws: &[&str], count: usize) -> Result<Vec<T>, CompileError> {
    if ws.len() != count {
        return Err(syntax(line, format!("expected {count} numbers")));
    }
    ws.iter().map(|w| num(line, w)).collect()
}

/// `vertices n`, optional `source s`, then `edge a b` lines.
pub fn parse_graph(text: &str) -> Result<GraphSpec, CompileError> {
    let mut n = None;
    let mut source = None;
    let mut edges = BTreeSet::new();
    for (line, w) in lines(text) {
        match w[0] {
            "vertices" => n = Some(nums::<u32>(line, &w[1..], 1)?[0]),
            "source" => source = Some(nums::<u32>(line, &w[1..], 1)?[0]),
            "edge" => {
                let e = nums::<u32>(line, &w[1..], 2)?;
                edges.insert((e[0], e[1]));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let g = GraphSpec {
        n: n.ok_or_else(|| syntax(0, "missing `vertices`"))?,
        edges,
        source,
    };
    g.validate()?;
    Ok(g)
}

/// `vars n`, then one clause of signed literals per line.
pub fn parse_dnf(text: &str) -> Result<DnfSpec, CompileError> {
    let mut vars = None;
    let mut clauses = Vec::new();
    for (line, w) in lines(text) {
        if w[0] == "vars" {
            vars = Some(nums::<usize>(line, &w[1..], 1)?[0]);
            continue;
        }
        clauses.push(w.iter().map(|x| num::<i32>(line, x)).collect::<Result<Vec<_>, _>>()?);
    }
    DnfSpec::new(vars.ok_or_else(|| syntax(0, "missing `vars`"))?, clauses)
}

/// `states n`, `start s`, `length m`, `accept q ...`, then `edge p a q`.
pub fn parse_nfa(text: &str) -> Result<NfaSpec, CompileError> {
    let (mut states, mut start, mut m) = (None, None, None);
    let mut accept = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for (line, w) in lines(text) {
        match w[0] {
            "states" => states = Some(nums::<u32>(line, &w[1..], 1)?[0]),
            "start" => start = Some(nums::<u32>(line, &w[1..], 1)?[0]),
            "length" => m = Some(nums::<u32>(line, &w[1..], 1)?[0]),
            "accept" => {
                for x in &w[1..] {
                    accept.insert(num::<u32>(line, x)?);
                }
            }
            "edge" => {
                let e = nums::<u32>(line, &w[1..], 3)?;
                let a = u8::try_from(e[1]).map_err(|_| syntax(line, "letter must be 0 or 1"))?;
                edges.insert((e[0], a, e[2]));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let nfa = NfaSpec {
        states: states.ok_or_else(|| syntax(0, "missing `states`"))?,
        edges,
        start: start.ok_or_else(|| syntax(0, "missing `start`"))?,
        accept,
        m: m.ok_or_else(|| syntax(0, "missing `length`"))?,
    };
    nfa.validate()?;
    Ok(nfa)
}
