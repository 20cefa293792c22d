//! Machine descriptions and their line-oriented text format.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::MachineError;

/// Tape symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Zero,
    One,
    Blank,
}

impl Sym {
    pub const ALL: [Sym; 3] = [Sym::Zero, Sym::One, Sym::Blank];

    pub fn to_char(self) -> char {
        match self {
            Sym::Zero => '0',
            Sym::One => '1',
            Sym::Blank => '_',
        }
    }

    pub fn from_char(c: char) -> Option<Sym> {
        match c {
            '0' => Some(Sym::Zero),
            '1' => Some(Sym::One),
            '_' => Some(Sym::Blank),
            _ => None,
        }
    }

    /// Position in [`Sym::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    S,
    R,
}

impl Move {
    fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "S" => Some(Move::S),
            "R" => Some(Move::R),
            _ => None,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::S => "S",
            Move::R => "R",
        }
    }

    /// The head position after the move; left moves clamp at cell 0.
    pub fn apply(self, pos: usize) -> usize {
        match self {
            Move::L => pos.saturating_sub(1),
            Move::S => pos,
            Move::R => pos + 1,
        }
    }
}

/// One transition: next state, work-tape write (`None` keeps the symbol),
/// head moves and an optional output bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub next: usize,
    pub write: Option<Sym>,
    pub input_move: Move,
    pub work_move: Move,
    pub output: Option<bool>,
}

/// Key of the transition table: state, input symbol, work symbol.
pub type Key = (usize, Sym, Sym);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    pub states: Vec<String>,
    pub init: usize,
    pub accept: usize,
    pub transducer: bool,
    /// One action for a deterministic step, two for a branching.
    pub transitions: BTreeMap<Key, Vec<Action>>,
}

impl MachineSpec {
    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn actions(&self, state: usize, input: Sym, work: Sym) -> &[Action] {
        self.transitions.get(&(state, input, work)).map_or(&[], Vec::as_slice)
    }

    /// The machine never branches.
    pub fn is_deterministic(&self) -> bool {
        self.transitions.values().all(|a| a.len() == 1)
    }

    /// Every transition ignores the input tape: it fires on all three input
    /// symbols alike and keeps the input head in place.
    pub fn ignores_input(&self) -> bool {
        self.transitions.iter().all(|(&(q, _, w), acts)| {
            acts.iter().all(|a| a.input_move == Move::S)
                && Sym::ALL.iter().all(|&j| self.transitions.get(&(q, j, w)) == Some(acts))
        })
    }

    pub fn validate(&self) -> Result<(), MachineError> {
        let n = self.states.len();
        for (i, s) in self.states.iter().enumerate() {
            if self.states[..i].contains(s) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        if self.init >= n || self.accept >= n {
            return Err(MachineError::UnknownState(format!("#{}", self.init.max(self.accept))));
        }
        for (&(q, i, w), acts) in &self.transitions {
            if acts.len() > 2 || acts.is_empty() {
                return Err(MachineError::TooManyActions {
                    state: self.states.get(q).cloned().unwrap_or_default(),
                    input: i.to_char(),
                    work: w.to_char(),
                });
            }
            if q >= n || acts.iter().any(|a| a.next >= n) {
                return Err(MachineError::UnknownState(format!("#{q}")));
            }
            if q == self.accept {
                return Err(MachineError::AcceptingNotHalting(self.states[q].clone()));
            }
            if !self.transducer && acts.iter().any(|a| a.output.is_some()) {
                return Err(MachineError::OutputWithoutTransducer);
            }
        }
        Ok(())
    }

    /// The spec in the text format read by [`parse_machine`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MachineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.transducer {
            writeln!(f, "transducer")?;
        }
        writeln!(f, "state {}", self.states.join(" "))?;
        writeln!(f, "init {}", self.states[self.init])?;
        writeln!(f, "accept {}", self.states[self.accept])?;
        for (&(q, i, w), acts) in &self.transitions {
            let rendered: Vec<String> = acts
                .iter()
                .map(|a| {
                    let mut s = format!(
                        "{},{},{},{}",
                        self.states[a.next],
                        a.write.map_or('*', Sym::to_char),
                        a.input_move.as_str(),
                        a.work_move.as_str()
                    );
                    if let Some(b) = a.output {
                        s.push(',');
                        s.push(if b { '1' } else { '0' });
                    }
                    s
                })
                .collect();
            writeln!(
                f,
                "trans {},{},{} -> {}",
                self.states[q],
                i.to_char(),
                w.to_char(),
                rendered.join(" | ")
            )?;
        }
        Ok(())
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> MachineError {
    MachineError::Syntax { line, msg: msg.into() }
}

/// A read symbol; `*` stands for all three.
fn read_syms(s: &str, line: usize) -> Result<Vec<Sym>, MachineError> {
    match s {
        "*" => Ok(Sym::ALL.to_vec()),
        _ => {
            let mut cs = s.chars();
            match (cs.next().and_then(Sym::from_char), cs.next()) {
                (Some(sym), None) => Ok(vec![sym]),
                _ => Err(syntax(line, format!("bad symbol `{s}`"))),
            }
        }
    }
}

/// Parses the text format:
///
/// ```text
/// transducer
/// state q0 q1 qF
/// init q0
/// accept qF
/// trans q0,*,_ -> q1,1,S,R,0 | qF,*,S,S
/// ```
///
/// A transition reads `state,input,work` and each action is
/// `next,write,input-move,work-move[,output]`. `*` on a read matches every
/// symbol; `*` as the write keeps the symbol under the head. `#` starts a
/// comment.
pub fn parse_machine(text: &str) -> Result<MachineSpec, MachineError> {
    let mut states: Vec<String> = Vec::new();
    let mut init = None;
    let mut accept = None;
    let mut transducer = false;
    let mut trans = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (word, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match word {
            "transducer" if rest.is_empty() => transducer = true,
            "state" => {
                for s in rest.split_whitespace() {
                    if states.iter().any(|t| t == s) {
                        return Err(MachineError::DuplicateState(s.to_string()));
                    }
                    states.push(s.to_string());
                }
            }
            "init" => init = Some((line, rest.to_string())),
            "accept" => accept = Some((line, rest.to_string())),
            "trans" => trans.push((line, rest.to_string())),
            _ => return Err(syntax(line, format!("unknown directive `{word}`"))),
        }
    }
    let lookup = |name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| MachineError::UnknownState(name.to_string()))
    };
    let init = lookup(&init.ok_or(MachineError::Missing("init"))?.1)?;
    let accept = lookup(&accept.ok_or(MachineError::Missing("accept"))?.1)?;

    let mut transitions: BTreeMap<Key, Vec<Action>> = BTreeMap::new();
    for (line, rest) in trans {
        let (lhs, rhs) = rest
            .split_once("->")
            .ok_or_else(|| syntax(line, "expected `->`"))?;
        let parts: Vec<&str> = lhs.split(',').map(str::trim).collect();
        let [q, a, b] = parts[..] else {
            return Err(syntax(line, "expected `state,input,work`"));
        };
        let q = lookup(q)?;
        let (ins, works) = (read_syms(a, line)?, read_syms(b, line)?);
        let mut actions = Vec::new();
        for alt in rhs.split('|') {
            let fields: Vec<&str> = alt.split(',').map(str::trim).collect();
            if fields.len() != 4 && fields.len() != 5 {
                return Err(syntax(line, "expected `next,write,input-move,work-move[,output]`"));
            }
            let write = match fields[1] {
                "*" => None,
                w => Some(read_syms(w, line)?[0]),
            };
            let mv = |s: &str| Move::parse(s).ok_or_else(|| syntax(line, format!("bad move `{s}`")));
            let output = match fields.get(4) {
                None => None,
                Some(&"0") => Some(false),
                Some(&"1") => Some(true),
                Some(o) => return Err(syntax(line, format!("bad output `{o}`"))),
            };
            actions.push(Action {
                next: lookup(fields[0])?,
                write,
                input_move: mv(fields[2])?,
                work_move: mv(fields[3])?,
                output,
            });
        }
        for &i in &ins {
            for &w in &works {
                if transitions.insert((q, i, w), actions.clone()).is_some() {
                    return Err(MachineError::Conflict {
                        state: states[q].clone(),
                        input: i.to_char(),
                        work: w.to_char(),
                    });
                }
            }
        }
    }
    let spec = MachineSpec {
        states,
        init,
        accept,
        transducer,
        transitions,
    };
    spec.validate()?;
    Ok(spec)
}
