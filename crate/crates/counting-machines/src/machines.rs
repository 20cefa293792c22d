//! Small machines with known counts.

use crate::spec::{parse_machine, MachineSpec};

fn parse(text: &str) -> MachineSpec {
    parse_machine(text).expect("built-in machine parses")
}

/// A transducer with three accepting paths that all print `01`, and one
/// rejecting path.
pub fn figure2_transducer() -> MachineSpec {
    parse(
        "transducer
state q0 q1 q3 q4 qF qR
init q0
accept qF
trans q0,*,* -> q1,*,S,S,0
trans q1,*,* -> q3,*,S,S,1 | q4,*,S,S
trans q3,*,* -> qR,*,S,S,0 | qF,*,S,S
trans q4,*,* -> qF,*,S,S,1 | qF,*,S,S,1
",
    )
}

/// Writes two cells and accepts without branching.
pub fn deterministic() -> MachineSpec {
    parse(
        "state q0 q1 qF
init q0
accept qF
trans q0,*,_ -> q1,1,S,R
trans q1,*,_ -> qF,0,S,L
",
    )
}

/// Branches once on the first cell.
pub fn one_branching() -> MachineSpec {
    parse(
        "state q0 q1 qF
init q0
accept qF
trans q0,*,_ -> q1,1,S,R | q1,0,S,R
trans q1,*,_ -> qF,*,S,L
",
    )
}

/// Branches on the first cell, walks back and branches again only where
/// it wrote a 1: two branchings.
pub fn two_branchings() -> MachineSpec {
    parse(
        "state q0 q1 q2 qF
init q0
accept qF
trans q0,*,_ -> q1,1,S,R | q1,0,S,R
trans q1,*,_ -> q2,*,S,L
trans q2,*,1 -> qF,0,S,S | qF,1,S,S
trans q2,*,0 -> qF,*,S,S
",
    )
}

/// A complete binary tree of depth `d`: `2^d` accepting paths.
pub fn full_tree(d: usize) -> MachineSpec {
    let mut text = String::from("state");
    for i in 0..=d {
        text.push_str(&format!(" l{i}"));
    }
    text.push_str(" qF\ninit l0\naccept qF\n");
    for i in 0..d {
        text.push_str(&format!("trans l{i},*,* -> l{j},0,S,R | l{j},1,S,R\n", j = i + 1));
    }
    text.push_str(&format!("trans l{d},*,* -> qF,*,S,S\n"));
    parse(&text)
}

/// Some assignment extending `prefix` satisfies a clause. Literals are
/// `v` or `-v` over variables `1..=vars`.
fn satisfiable(clauses: &[Vec<i32>], prefix: &[bool]) -> bool {
    clauses.iter().any(|c| {
        !c.iter().any(|l| c.contains(&-l))
            && c.iter().all(|&l| {
            let v = l.unsigned_abs() as usize - 1;
            v >= prefix.len() || prefix[v] == (l > 0)
        })
    })
}

fn prefix_state(prefix: &[bool]) -> String {
    let bits: String = prefix.iter().map(|&b| if b { '1' } else { '0' }).collect();
    format!("p{bits}")
}

/// The self-reduction machine for #DNF with the formula held in the finite
/// control: a dummy path when the formula is satisfiable, then one
/// variable at a time, branching only when both values keep the formula
/// satisfiable. Its `tot` is the number of satisfying assignments. The
/// input tape is not read.
pub fn dnf_machine(vars: usize, clauses: &[Vec<i32>]) -> MachineSpec {
    let mut states = vec!["start".to_string(), "qF".to_string()];
    let mut trans = Vec::new();
    if satisfiable(clauses, &[]) {
        trans.push(format!("trans start,*,* -> qF,*,S,S | {},*,S,S", prefix_state(&[])));
        let mut frontier = vec![Vec::new()];
        while let Some(p) = frontier.pop() {
            let name = prefix_state(&p);
            states.push(name.clone());
            if p.len() == vars {
                trans.push(format!("trans {name},*,* -> qF,*,S,S"));
                continue;
            }
            let next: Vec<Vec<bool>> = [false, true]
                .iter()
                .map(|&b| [p.as_slice(), &[b]].concat())
                .filter(|q| satisfiable(clauses, q))
                .collect();
            let alts: Vec<String> = next.iter().map(|q| format!("{},*,S,S", prefix_state(q))).collect();
            trans.push(format!("trans {name},*,* -> {}", alts.join(" | ")));
            frontier.extend(next);
        }
    }
    let text = format!(
        "state {}\ninit start\naccept qF\n{}\n",
        states.join(" "),
        trans.join("\n")
    );
    parse(&text)
}
