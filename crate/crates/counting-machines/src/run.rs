//! Depth-first exploration of computation trees.

use std::collections::BTreeSet;

use crate::error::MachineError;
use crate::spec::{MachineSpec, Sym};

/// Largest number of configurations explored by one [`run_tree`].
pub const MAX_NODES: u64 = 1 << 24;

/// Counts over the leaves of a computation tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub accepting_paths: u64,
    pub rejecting_paths: u64,
    /// Halted paths; paths cut by the clock are not included.
    pub total_paths: u64,
    /// Configurations with two actions.
    pub branchings: u64,
    pub truncated_paths: u64,
    /// Outputs of accepting paths, the empty output included.
    pub outputs: BTreeSet<String>,
    pub clock_exceeded: bool,
    /// Most steps taken on any path.
    pub max_depth: usize,
    /// Rightmost work cell visited.
    pub max_cell: usize,
    pub nodes: u64,
}

impl RunStats {
    pub fn acc(&self) -> u64 {
        self.accepting_paths
    }

    /// Paths minus one, or `None` for an empty tree.
    pub fn tot(&self) -> Option<u64> {
        self.total_paths.checked_sub(1)
    }

    pub fn span(&self) -> u64 {
        self.outputs.len() as u64
    }
}

#[derive(Clone)]
struct Config {
    state: usize,
    input_head: usize,
    work: Vec<Sym>,
    work_head: usize,
    output: String,
    steps: usize,
}

/// Explores every path of `m` on `input`, cutting paths after `clock`
/// steps.
pub fn run_tree(m: &MachineSpec, input: &str, clock: usize) -> Result<RunStats, MachineError> {
    if clock == 0 {
        return Err(MachineError::ZeroClock);
    }
    let input: Vec<Sym> = input
        .chars()
        .map(|c| match c {
            '0' => Ok(Sym::Zero),
            '1' => Ok(Sym::One),
            _ => Err(MachineError::BadInput(c)),
        })
        .collect::<Result<_, _>>()?;
    let mut stats = RunStats::default();
    let mut stack = vec![Config {
        state: m.init,
        input_head: 0,
        work: Vec::new(),
        work_head: 0,
        output: String::new(),
        steps: 0,
    }];
    while let Some(c) = stack.pop() {
        stats.nodes += 1;
        if stats.nodes > MAX_NODES {
            return Err(MachineError::TreeTooLarge(MAX_NODES));
        }
        stats.max_depth = stats.max_depth.max(c.steps);
        stats.max_cell = stats.max_cell.max(c.work_head);
        let a = input.get(c.input_head).copied().unwrap_or(Sym::Blank);
        let b = c.work.get(c.work_head).copied().unwrap_or(Sym::Blank);
        let actions = if c.state == m.accept { &[][..] } else { m.actions(c.state, a, b) };
        if actions.is_empty() {
            stats.total_paths += 1;
            if c.state == m.accept {
                stats.accepting_paths += 1;
                stats.outputs.insert(c.output);
            } else {
                stats.rejecting_paths += 1;
            }
            continue;
        }
        if c.steps >= clock {
            stats.truncated_paths += 1;
            stats.clock_exceeded = true;
            continue;
        }
        if actions.len() == 2 {
            stats.branchings += 1;
        }
        // Push in reverse so the first action is explored first.
        for act in actions.iter().rev() {
            let mut d = c.clone();
            if let Some(w) = act.write {
                if d.work.len() <= d.work_head {
                    d.work.resize(d.work_head + 1, Sym::Blank);
                }
                d.work[d.work_head] = w;
            }
            d.state = act.next;
            d.input_head = act.input_move.apply(d.input_head);
            d.work_head = act.work_move.apply(d.work_head);
            if let Some(bit) = act.output {
                d.output.push(if bit { '1' } else { '0' });
            }
            d.steps += 1;
            stack.push(d);
        }
    }
    Ok(stats)
}

/// `tot` of `m` on `input`: halted paths minus one, checked against the
/// number of branchings.
pub fn tot_count(m: &MachineSpec, input: &str, clock: usize) -> Result<u64, MachineError> {
    let stats = run_tree(m, input, clock)?;
    if stats.clock_exceeded {
        return Err(MachineError::ClockExceeded(clock));
    }
    let tot = stats.total_paths - 1;
    assert_eq!(tot, stats.branchings, "a binary tree has one branching fewer than leaves");
    Ok(tot)
}
