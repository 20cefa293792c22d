//! The number of branchings of a machine as a second-order recursion.
//!
//! A relation `S(x, y, z)` over `k`-tuples describes a run: at time `y`
//! work cell `x` holds code `z`. Codes `0, 1, 2` are the symbols `0`, `1`
//! and blank; `3 + 3q + b` is symbol `b` under the head in state `q`. The
//! machine runs on the empty input, so the input tape always reads blank.

use std::cell::Cell;

use bool_semantics::Assignment;
use counting_machines::{run_tree, Action, MachineSpec, Move, Sym};
use formula_ast::{parse_qformula, parse_qformula_with, QFormula};
use structure_core::{RelationValue, Structure};

use crate::error::CompileError;

/// The counting formula of a machine together with the structure it reads.
#[derive(Clone, Debug)]
pub struct TmCompilation {
    /// The input structure with `Succ` and one unary `Is{d}` per element.
    pub structure: Structure,
    /// Open in `S`, the initial configuration.
    pub formula: QFormula,
    pub assignment: Assignment,
    /// Sums over the initial configuration defined in place.
    pub closed: QFormula,
    pub k: usize,
}

struct Gen {
    n: u32,
    syms: Vec<Sym>,
    k: usize,
    fresh: Cell<usize>,
}

type Rel<'a> = &'a dyn Fn(&[String], &[String], &[String]) -> String;

impl Gen {
    fn vars(&self, prefix: &str) -> Vec<String> {
        let id = self.fresh.get();
        self.fresh.set(id + 1);
        if self.k == 1 {
            vec![format!("{prefix}{id}")]
        } else {
            (0..self.k).map(|i| format!("{prefix}{id}_{i}")).collect()
        }
    }

    fn exists(&self, vs: &[String], body: String) -> String {
        vs.iter().rev().fold(body, |b, v| format!("(exists {v}. {b})"))
    }

    fn forall(&self, vs: &[String], body: String) -> String {
        vs.iter().rev().fold(body, |b, v| format!("(forall {v}. {b})"))
    }

    fn succ(&self, a: &[String], b: &[String]) -> String {
        let alts: Vec<String> = (0..self.k)
            .map(|i| {
                let mut c: Vec<String> = (0..i).map(|j| format!("{} = {}", a[j], b[j])).collect();
                c.push(format!("Succ({}, {})", a[i], b[i]));
                c.extend((i + 1..self.k).map(|j| format!("{} = max & {} = min", a[j], b[j])));
                format!("({})", c.join(" & "))
            })
            .collect();
        format!("({})", alts.join(" | "))
    }

    fn first(&self, a: &[String]) -> String {
        let c: Vec<String> = a.iter().map(|v| format!("{v} = min")).collect();
        format!("({})", c.join(" & "))
    }

    fn eq(&self, a: &[String], b: &[String]) -> String {
        let c: Vec<String> = a.iter().zip(b).map(|(u, v)| format!("{u} = {v}")).collect();
        format!("({})", c.join(" & "))
    }

    fn is(&self, a: &[String], code: u64) -> String {
        let mut digits = vec![0u64; self.k];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = c % self.n as u64;
            c /= self.n as u64;
        }
        let c: Vec<String> = a.iter().zip(&digits).map(|(v, d)| format!("Is{d}({v})")).collect();
        format!("({})", c.join(" & "))
    }

    /// Cell `a` holds `code` at time `t`.
    fn holds(&self, r: Rel, a: &[String], t: &[String], code: u64) -> String {
        let c = self.vars("c");
        self.exists(&c, format!("{} & {}", self.is(&c, code), r(a, t, &c)))
    }

    /// Configuration `y` follows by `tau` from the configuration at the
    /// previous time.
    fn update(&self, r: Rel, (q1, b1): (usize, Sym), act: &Action, x: &[String], y: &[String], z: &[String]) -> String {
        let c1 = head_code(q1, b1);
        let b2 = act.write.unwrap_or(b1);
        let q2 = act.next;
        let yp = self.vars("yp");
        let at_prev = |body: String| self.exists(&yp, format!("{} & {body}", self.succ(&yp, y)));
        let mut alts = Vec::new();
        match act.work_move {
            Move::R | Move::L => {
                let xp = self.vars("xp");
                let neighbour = if act.work_move == Move::R {
                    self.succ(&xp, x)
                } else {
                    self.succ(x, &xp)
                };
                for &b in &self.syms {
                    alts.push(format!(
                        "{} & {}",
                        self.is(z, head_code(q2, b)),
                        at_prev(format!(
                            "{} & {}",
                            self.holds(r, x, &yp, sym_code(b)),
                            self.exists(&xp, format!("{neighbour} & {}", self.holds(r, &xp, &yp, c1)))
                        ))
                    ));
                }
                let written = at_prev(self.holds(r, x, &yp, c1));
                if act.work_move == Move::R {
                    alts.push(format!("{} & {written}", self.is(z, sym_code(b2))));
                } else {
                    alts.push(format!("{} & !{} & {written}", self.is(z, sym_code(b2)), self.first(x)));
                    alts.push(format!("{} & {} & {written}", self.is(z, head_code(q2, b2)), self.first(x)));
                }
                let xq = self.vars("xq");
                let apart = if act.work_move == Move::R {
                    self.succ(&xq, x)
                } else {
                    self.succ(x, &xq)
                };
                alts.push(at_prev(format!(
                    "{} & {}",
                    r(x, &yp, z),
                    self.exists(
                        &xq,
                        format!("{} & !{} & !{apart}", self.holds(r, &xq, &yp, c1), self.eq(x, &xq))
                    )
                )));
            }
            Move::S => {
                alts.push(format!(
                    "{} & {}",
                    self.is(z, head_code(q2, b2)),
                    at_prev(self.holds(r, x, &yp, c1))
                ));
                let xq = self.vars("xq");
                alts.push(at_prev(format!(
                    "{} & {}",
                    r(x, &yp, z),
                    self.exists(&xq, format!("{} & !{}", self.holds(r, &xq, &yp, c1), self.eq(x, &xq)))
                )));
            }
        }
        format!("(({}))", alts.join(") | ("))
    }
}

fn sym_code(b: Sym) -> u64 {
    b.index() as u64
}

fn head_code(q: usize, b: Sym) -> u64 {
    3 + 3 * q as u64 + b.index() as u64
}

fn atom(name: &str, parts: &[&[String]]) -> String {
    let args: Vec<&str> = parts.iter().flat_map(|p| p.iter().map(String::as_str)).collect();
    format!("{name}({})", args.join(", "))
}

/// Blank and every symbol the machine writes.
fn work_symbols(m: &MachineSpec) -> Vec<Sym> {
    let written: Vec<Sym> = m.transitions.values().flatten().filter_map(|a| a.write).collect();
    Sym::ALL
        .into_iter()
        .filter(|b| *b == Sym::Blank || written.contains(b))
        .collect()
}

/// Transitions on the blank input and a work symbol that can occur, apart
/// from the halting accept state.
fn transitions(m: &MachineSpec) -> Vec<((usize, Sym), &[Action])> {
    let syms = work_symbols(m);
    (0..m.states.len())
        .filter(|&q| q != m.accept)
        .flat_map(|q| syms.iter().map(move |&b| ((q, b), m.actions(q, Sym::Blank, b))))
        .filter(|(_, acts)| !acts.is_empty())
        .collect()
}

/// Builds the recursion whose number of strings is the number of
/// branchings of `m` on the empty input, over the universe of `base` with
/// `k`-tuples for cells, times and codes.
///
/// Requires `n^k` to exceed every code, the running time and the rightmost
/// cell visited plus one.
pub fn compile_tm_to_tot(m: &MachineSpec, base: &Structure, k: usize) -> Result<TmCompilation, CompileError> {
    m.validate()?;
    let n = base.universe_size();
    if k == 0 {
        return Err(CompileError::Invalid("tuple arity must be positive".into()));
    }
    let space = structure_core::tuple_space(n, k)
        .filter(|&s| s <= 1 << 20)
        .ok_or_else(|| CompileError::Scale(format!("{n}^{k} tuples")))?;
    let codes = head_code(m.states.len(), Sym::Zero);
    if space < codes {
        return Err(CompileError::Scale(format!("{n}^{k} < {codes} configuration codes")));
    }
    let stats = run_tree(m, "", space as usize - 1)?;
    if stats.clock_exceeded || stats.max_cell as u64 + 2 > space {
        return Err(CompileError::Scale(format!("the machine does not fit in {space} steps and cells")));
    }

    let mut structure = base.clone();
    structure.insert("Succ", RelationValue::from_tuples(n, 2, (1..n).map(|a| [a - 1, a]))?)?;
    for d in 0..n {
        structure.insert(&format!("Is{d}"), RelationValue::from_tuples(n, 1, [[d]])?)?;
    }

    let g = Gen {
        n,
        syms: work_symbols(m),
        k,
        fresh: Cell::new(0),
    };
    let all = transitions(m);
    let det: Vec<_> = all.iter().filter(|(_, a)| a.len() == 1).collect();
    let nondet: Vec<_> = all.iter().filter(|(_, a)| a.len() == 2).collect();

    let detcomp = |x: &[String], y: &[String], z: &[String]| -> String {
        let (px, py, pz) = (g.vars("dx"), g.vars("dy"), g.vars("dz"));
        let d = |a: &[String], b: &[String], c: &[String]| atom("D", &[a, b, c]);
        let mut body = vec![atom("X", &[&px, &py, &pz]), d(&px, &py, &pz)];
        for (key, acts) in &det {
            body.push(g.update(&d, *key, &acts[0], &px, &py, &pz));
        }
        let params: Vec<String> = px.iter().chain(&py).chain(&pz).cloned().collect();
        format!(
            "(lfpR D({}) = {} in {})",
            params.join(", "),
            body.join(" | "),
            atom("D", &[x, y, z])
        )
    };

    let (x, y, z) = (g.vars("x"), g.vars("y"), g.vars("z"));
    let last = {
        let (y2, x2, z2) = (g.vars("y"), g.vars("x"), g.vars("z"));
        let later = g.exists(&x2, g.exists(&z2, detcomp(&x2, &y2, &z2)));
        format!("!{}", g.exists(&y2, format!("{} & {later}", g.succ(&y, &y2))))
    };
    let exists_branching = if nondet.is_empty() {
        "false".to_string()
    } else {
        let at: Vec<String> = nondet.iter().map(|((q, b), _)| g.is(&z, head_code(*q, *b))).collect();
        let vs: Vec<String> = x.iter().chain(&y).chain(&z).cloned().collect();
        g.exists(&vs, format!("({}) & {} & {last}", at.join(" | "), detcomp(&x, &y, &z)))
    };

    let vs: Vec<String> = x.iter().chain(&y).chain(&z).cloned().collect();
    let branch = |i: usize| -> String {
        let dc = |a: &[String], b: &[String], c: &[String]| detcomp(a, b, c);
        let mut rhs = vec![atom("X", &[&x, &y, &z]), detcomp(&x, &y, &z)];
        for (key, acts) in &nondet {
            let (xc, zc) = (g.vars("x"), g.vars("z"));
            let current = format!("!{}", g.exists(&xc, g.exists(&zc, detcomp(&xc, &y, &zc))));
            rhs.push(format!("({} & {current})", g.update(&dc, *key, &acts[i], &x, &y, &z)));
        }
        let (wx, wy, wz) = (g.vars("x"), g.vars("y"), g.vars("z"));
        let ws: Vec<String> = wx.iter().chain(&wy).chain(&wz).cloned().collect();
        format!(
            "{} & {}",
            g.forall(&vs, format!("{} <-> {}", atom("Y", &[&x, &y, &z]), rhs.join(" | "))),
            g.exists(&ws, format!("!{} & {}", atom("X", &[&wx, &wy, &wz]), atom("Y", &[&wx, &wy, &wz])))
        )
    };
    let a = 3 * k;
    let tot = format!(
        "lfp f(X:{a}) = [{exists_branching}] * $X * ([true] + (Sum Y:{a}. [{}] * f(Y)) + (Sum Y:{a}. [{}] * f(Y))) in f(S)",
        branch(0),
        branch(1)
    );

    let init = format!(
        "{} & (({} & {}) | (!{} & {}))",
        g.first(&y),
        g.first(&x),
        g.is(&z, head_code(m.init, Sym::Blank)),
        g.first(&x),
        g.is(&z, sym_code(Sym::Blank))
    );
    let defined = g.forall(&vs, format!("{} <-> {init}", atom("S", &[&x, &y, &z])));
    let s0 = initial(n, k, m.init)?;
    Ok(TmCompilation {
        formula: parse_qformula_with(&tot, &[("S", a)])?,
        assignment: Assignment::new().with_so("S", s0),
        closed: parse_qformula(&format!("Sum S:{a}. [{defined}] * ({tot})"))?,
        structure,
        k,
    })
}

/// The initial configuration: blank tape, head on the first cell.
fn initial(n: u32, k: usize, init: usize) -> Result<RelationValue, CompileError> {
    let digits = |mut v: u64| -> Vec<u32> {
        let mut t = vec![0u32; k];
        for d in t.iter_mut().rev() {
            *d = (v % n as u64) as u32;
            v /= n as u64;
        }
        t
    };
    let cells = structure_core::tuple_space(n, k).unwrap_or(0);
    let time = digits(0);
    let tuples = (0..cells).map(|c| {
        let code = if c == 0 { head_code(init, Sym::Blank) } else { sym_code(Sym::Blank) };
        [digits(c), time.clone(), digits(code)].concat()
    });
    Ok(RelationValue::from_tuples(n, 3 * k, tuples)?)
}
