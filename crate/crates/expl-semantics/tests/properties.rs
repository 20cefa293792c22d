//! The evaluator against a direct recursive reading of the semantics, and
//! the structural properties of the explained sets.

use std::collections::{BTreeMap, BTreeSet};

use bool_semantics::{eval_bool, Assignment};
use expl_semantics::*;
use formula_ast::{formula_length, BoolFormula as B, QFormula as Q};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structure_core::{enumerate_relations, RelationValue, Structure, Symbol, SymbolString};

/// Direct recursion over the formula with name maps.
struct Reference<'a> {
    s: &'a Structure,
    asg: Assignment,
    funs: &'a FunEnv,
}

impl Reference<'_> {
    fn expl(&mut self, q: &Q) -> BTreeSet<SymbolString> {
        let n = self.s.universe_size();
        match q {
            Q::FOVar(x) => BTreeSet::from([SymbolString::elems(&[self.asg.fo[x]])]),
            Q::SOVar(x) => BTreeSet::from([SymbolString::letter(Symbol::Rel(self.asg.so[x].clone()))]),
            Q::Bool(b) => {
                if eval_bool(b, self.s, &self.asg).unwrap() {
                    BTreeSet::from([SymbolString::epsilon()])
                } else {
                    BTreeSet::new()
                }
            }
            Q::Add(a, b) => {
                let mut out = self.expl(a);
                out.extend(self.expl(b));
                out
            }
            Q::Mul(a, b) => {
                let l = self.expl(a);
                let r = self.expl(b);
                l.iter().flat_map(|x| r.iter().map(move |y| x.concat(y))).collect()
            }
            Q::SumFO(x, body) => {
                let old = self.asg.fo.get(x).copied();
                let mut out = BTreeSet::new();
                for a in 0..n {
                    self.asg.fo.insert(x.clone(), a);
                    out.extend(self.expl(body));
                }
                match old {
                    Some(v) => self.asg.fo.insert(x.clone(), v),
                    None => self.asg.fo.remove(x),
                };
                out
            }
            Q::SumSO(x, k, body) => {
                let old = self.asg.so.get(x).cloned();
                let mut out = BTreeSet::new();
                for r in enumerate_relations(n, *k).unwrap() {
                    self.asg.so.insert(x.clone(), r);
                    out.extend(self.expl(body));
                }
                match old {
                    Some(v) => self.asg.so.insert(x.clone(), v),
                    None => self.asg.so.remove(x),
                };
                out
            }
            Q::FunAppFO(f, args) => {
                let t = args.iter().map(|a| self.asg.fo[a]).collect();
                match self.funs[f].value(&FunArg::Fo(t)) {
                    ExplValue::Finite(s) => s,
                    ExplValue::Infinite => panic!("finite tables only"),
                }
            }
            other => panic!("unsupported {other:?}"),
        }
    }
}

const FO: [&str; 2] = ["x", "y"];

struct Gen {
    rng: ChaCha8Rng,
    n: u32,
    fo: Vec<String>,
    so: Vec<String>,
    next: usize,
}

impl Gen {
    fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        Gen {
            rng,
            n,
            fo: FO.iter().map(|s| s.to_string()).collect(),
            so: vec!["X".into()],
            next: 0,
        }
    }

    fn pick(&mut self, from: &[String]) -> String {
        from[self.rng.gen_range(0..from.len())].clone()
    }

    fn bool(&mut self) -> B {
        let x = self.pick(&self.fo.clone());
        let y = self.pick(&self.fo.clone());
        let big = self.pick(&self.so.clone());
        match self.rng.gen_range(0..6) {
            0 => B::RelApp("E".into(), vec![x, y]),
            1 => B::leq(&x, &y),
            2 => B::RelApp(big, vec![x]),
            3 => B::exists("w", B::RelApp("E".into(), vec![x, "w".into()])),
            4 => B::RelApp(big, vec![x]).not(),
            _ => B::eq(&x, &y).not(),
        }
    }

    fn q(&mut self, depth: u32, with_f: bool) -> Q {
        if depth == 0 {
            return match self.rng.gen_range(0..5) {
                0 => Q::FOVar(self.pick(&self.fo.clone())),
                1 => Q::SOVar(self.pick(&self.so.clone())),
                2 if with_f => Q::FunAppFO("f".into(), vec![self.pick(&self.fo.clone())]),
                _ => Q::Bool(self.bool()),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..8) {
            0 | 1 => self.q(d, with_f).add(self.q(d, with_f)),
            2 | 3 => self.q(d, with_f).mul(self.q(d, with_f)),
            4 => {
                self.next += 1;
                let v = format!("v{}", self.next);
                self.fo.push(v.clone());
                let body = self.q(d, with_f);
                self.fo.pop();
                Q::sum_fo(&v, body)
            }
            5 if self.n <= 2 => {
                self.next += 1;
                let v = format!("V{}", self.next);
                self.so.push(v.clone());
                let body = self.q(d, with_f);
                self.so.pop();
                Q::sum_so(&v, 1, body)
            }
            _ => self.q(0, with_f),
        }
    }

    fn structure(&mut self) -> Structure {
        let n = self.n;
        let edges: Vec<[u32; 2]> = (0..n)
            .flat_map(|a| (0..n).map(move |c| [a, c]))
            .filter(|_| self.rng.gen_bool(0.5))
            .collect();
        Structure::new(n).unwrap().with_relation("E", 2, edges).unwrap()
    }

    fn assignment(&mut self) -> Assignment {
        let mask = self.rng.gen_range(0..1u64 << self.n);
        let mut asg = Assignment::new().with_so("X", RelationValue::from_mask(self.n, 1, mask).unwrap());
        for x in FO {
            asg = asg.with_fo(x, self.rng.gen_range(0..self.n));
        }
        asg
    }

    fn word(&mut self) -> SymbolString {
        let len = self.rng.gen_range(0..3);
        let letters: Vec<u32> = (0..len).map(|_| self.rng.gen_range(0..self.n)).collect();
        SymbolString::elems(&letters)
    }

    /// Two tables with `h <= g` pointwise.
    fn tables(&mut self) -> (FunTable, FunTable) {
        let mut h = FunTable::new(FunDomain::Fo(1));
        let mut g = FunTable::new(FunDomain::Fo(1));
        for a in 0..self.n {
            let small: Vec<SymbolString> = (0..self.rng.gen_range(0..3)).map(|_| self.word()).collect();
            let mut big = small.clone();
            big.extend((0..self.rng.gen_range(0..3)).map(|_| self.word()));
            h.set(FunArg::Fo(vec![a]), ExplValue::from_strings(small)).unwrap();
            g.set(FunArg::Fo(vec![a]), ExplValue::from_strings(big)).unwrap();
        }
        (h, g)
    }
}

fn size(v: &ExplValue) -> u64 {
    match v.count() {
        Count::Finite(c) => c,
        Count::Infinite => u64::MAX,
    }
}

fn env(t: FunTable) -> FunEnv {
    BTreeMap::from([("f".to_string(), t)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn evaluator_matches_reference(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let s = g.structure();
        let asg = g.assignment();
        let (h, _) = g.tables();
        let funs = env(h);
        let q = g.q(4, true);
        let got = expl(&q, &s, &asg, &funs).unwrap();
        let want = Reference { s: &s, asg: asg.clone(), funs: &funs }.expl(&q);
        prop_assert_eq!(got, ExplValue::Finite(want), "{}", q);
    }

    #[test]
    fn strings_are_no_longer_than_the_formula(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let s = g.structure();
        let asg = g.assignment();
        let q = g.q(5, false);
        let mut p = Prepared::new(&q, &s, &asg, &FunEnv::new()).unwrap();
        let v = p.run().unwrap();
        prop_assert!(v.max_len().unwrap() <= formula_length(&q));
        prop_assert_eq!(p.eval.stats.length_violations, 0);
        let atom = matches!(q, Q::FOVar(_) | Q::SOVar(_) | Q::Bool(_));
        prop_assert!(atom || p.eval.stats.length_checks >= size(&v));
    }

    #[test]
    fn letter_free_formulae_give_one_kind_of_letter(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let s = g.structure();
        let asg = g.assignment();
        let q = g.q(4, false);
        let v = expl(&q, &s, &asg, &FunEnv::new()).unwrap();
        if q.is_big_x_free() {
            prop_assert!(v.strings().unwrap().iter().all(SymbolString::is_element_only));
        }
        if q.is_x_free() {
            prop_assert!(v.strings().unwrap().iter().all(SymbolString::is_relation_only));
        }
    }

    #[test]
    fn larger_tables_explain_more(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let s = g.structure();
        let asg = g.assignment();
        let (h, big) = g.tables();
        prop_assert!(h.le(&big));
        let q = g.q(4, true);
        let small = expl(&q, &s, &asg, &env(h)).unwrap();
        let large = expl(&q, &s, &asg, &env(big)).unwrap();
        prop_assert!(small.is_subset(&large), "{}", q);
    }

    #[test]
    fn union_and_concatenation_sizes(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = ExplValue::from_strings((0..g.rng.gen_range(0..5)).map(|_| g.word()));
        let b = ExplValue::from_strings((0..g.rng.gen_range(0..5)).map(|_| g.word()));
        let (na, nb) = (size(&a), size(&b));
        prop_assert!(size(&concat_sets(&a, &b)) <= na * nb);
        prop_assert!(size(&a.clone().union(b.clone())) <= na + nb);
    }
}
