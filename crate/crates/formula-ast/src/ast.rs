use std::collections::BTreeSet;

pub type Name = String;

/// First-order, second-order and fixed-point boolean formulae.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolFormula {
    /// Application of a relation that is not bound in the formula
    /// (a vocabulary symbol or a free second-order variable).
    RelApp(Name, Vec<Name>),
    /// Application of a bound second-order variable or fixed-point predicate.
    SOApp(Name, Vec<Name>),
    Eq(Name, Name),
    Leq(Name, Name),
    True,
    False,
    Not(Box<BoolFormula>),
    And(Box<BoolFormula>, Box<BoolFormula>),
    Or(Box<BoolFormula>, Box<BoolFormula>),
    Implies(Box<BoolFormula>, Box<BoolFormula>),
    Iff(Box<BoolFormula>, Box<BoolFormula>),
    ForallFO(Name, Box<BoolFormula>),
    ExistsFO(Name, Box<BoolFormula>),
    ForallSO(Name, usize, Box<BoolFormula>),
    ExistsSO(Name, usize, Box<BoolFormula>),
    LfpRel {
        pred: Name,
        params: Vec<Name>,
        body: Box<BoolFormula>,
        args: Vec<Name>,
    },
}

/// Quantitative formulae.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QFormula {
    FOVar(Name),
    SOVar(Name),
    Bool(BoolFormula),
    Add(Box<QFormula>, Box<QFormula>),
    Mul(Box<QFormula>, Box<QFormula>),
    SumFO(Name, Box<QFormula>),
    SumSO(Name, usize, Box<QFormula>),
    FunAppFO(Name, Vec<Name>),
    FunAppSO(Name, Name),
    LfpFO {
        func: Name,
        params: Vec<Name>,
        body: Box<QFormula>,
        args: Vec<Name>,
    },
    LfpSO {
        func: Name,
        param: Name,
        arity: usize,
        body: Box<QFormula>,
        arg: Name,
    },
}

impl BoolFormula {
    pub fn not(self) -> Self {
        BoolFormula::Not(Box::new(self))
    }

    pub fn and(self, other: Self) -> Self {
        BoolFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Self) -> Self {
        BoolFormula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Self) -> Self {
        BoolFormula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Self) -> Self {
        BoolFormula::Iff(Box::new(self), Box::new(other))
    }

    pub fn forall(x: &str, body: Self) -> Self {
        BoolFormula::ForallFO(x.to_string(), Box::new(body))
    }

    pub fn exists(x: &str, body: Self) -> Self {
        BoolFormula::ExistsFO(x.to_string(), Box::new(body))
    }

    pub fn forall_all(xs: &[Name], body: Self) -> Self {
        xs.iter().rev().fold(body, |acc, x| Self::forall(x, acc))
    }

    pub fn exists_all(xs: &[Name], body: Self) -> Self {
        xs.iter().rev().fold(body, |acc, x| Self::exists(x, acc))
    }

    pub fn rel(name: &str, args: &[&str]) -> Self {
        BoolFormula::RelApp(name.to_string(), args.iter().map(|s| s.to_string()).collect())
    }

    pub fn so(name: &str, args: &[Name]) -> Self {
        BoolFormula::SOApp(name.to_string(), args.to_vec())
    }

    pub fn eq(x: &str, y: &str) -> Self {
        BoolFormula::Eq(x.to_string(), y.to_string())
    }

    pub fn leq(x: &str, y: &str) -> Self {
        BoolFormula::Leq(x.to_string(), y.to_string())
    }

    /// Conjunction of a list; `True` when empty.
    pub fn all(parts: impl IntoIterator<Item = Self>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => BoolFormula::True,
            Some(first) => it.fold(first, |acc, p| acc.and(p)),
        }
    }

    /// Disjunction of a list; `False` when empty.
    pub fn any(parts: impl IntoIterator<Item = Self>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => BoolFormula::False,
            Some(first) => it.fold(first, |acc, p| acc.or(p)),
        }
    }

    /// Top-level conjuncts, left to right.
    pub fn conjuncts(&self) -> Vec<&BoolFormula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a BoolFormula, out: &mut Vec<&'a BoolFormula>) {
            match f {
                BoolFormula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Top-level disjuncts, left to right.
    pub fn disjuncts(&self) -> Vec<&BoolFormula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a BoolFormula, out: &mut Vec<&'a BoolFormula>) {
            match f {
                BoolFormula::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Free first-order variables.
    pub fn free_fo(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut out, &mut BTreeSet::new());
        out
    }

    /// Names of relations applied but not bound in the formula.
    pub fn free_relations(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut BTreeSet::new(), &mut out);
        out
    }

    pub(crate) fn collect_free(
        &self,
        fo_bound: &mut Vec<Name>,
        so_bound: &mut Vec<Name>,
        fo: &mut BTreeSet<Name>,
        so: &mut BTreeSet<Name>,
    ) {
        use BoolFormula::*;
        let var = |x: &Name, fo_bound: &Vec<Name>, fo: &mut BTreeSet<Name>| {
            if !fo_bound.contains(x) {
                fo.insert(x.clone());
            }
        };
        match self {
            RelApp(r, args) | SOApp(r, args) => {
                if !so_bound.contains(r) {
                    so.insert(r.clone());
                }
                for a in args {
                    var(a, fo_bound, fo);
                }
            }
            Eq(a, b) | Leq(a, b) => {
                var(a, fo_bound, fo);
                var(b, fo_bound, fo);
            }
            True | False => {}
            Not(a) => a.collect_free(fo_bound, so_bound, fo, so),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.collect_free(fo_bound, so_bound, fo, so);
                b.collect_free(fo_bound, so_bound, fo, so);
            }
            ForallFO(x, body) | ExistsFO(x, body) => {
                fo_bound.push(x.clone());
                body.collect_free(fo_bound, so_bound, fo, so);
                fo_bound.pop();
            }
            ForallSO(x, _, body) | ExistsSO(x, _, body) => {
                so_bound.push(x.clone());
                body.collect_free(fo_bound, so_bound, fo, so);
                so_bound.pop();
            }
            LfpRel {
                pred,
                params,
                body,
                args,
            } => {
                for a in args {
                    var(a, fo_bound, fo);
                }
                let depth = fo_bound.len();
                fo_bound.extend(params.iter().cloned());
                so_bound.push(pred.clone());
                body.collect_free(fo_bound, so_bound, fo, so);
                so_bound.pop();
                fo_bound.truncate(depth);
            }
        }
    }

    /// True if the relation name occurs free (applied and unbound).
    pub fn mentions_relation(&self, name: &str) -> bool {
        self.free_relations().contains(name)
    }

    /// True if the formula uses no second-order quantifier and no fixed point.
    pub fn is_first_order(&self) -> bool {
        use BoolFormula::*;
        match self {
            RelApp(..) | SOApp(..) | Eq(..) | Leq(..) | True | False => true,
            Not(a) | ForallFO(_, a) | ExistsFO(_, a) => a.is_first_order(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.is_first_order() && b.is_first_order()
            }
            ForallSO(..) | ExistsSO(..) | LfpRel { .. } => false,
        }
    }

    /// True if the formula uses no second-order quantifier (fixed points allowed).
    pub fn is_fo_lfp(&self) -> bool {
        use BoolFormula::*;
        match self {
            RelApp(..) | SOApp(..) | Eq(..) | Leq(..) | True | False => true,
            Not(a) | ForallFO(_, a) | ExistsFO(_, a) => a.is_fo_lfp(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.is_fo_lfp() && b.is_fo_lfp(),
            LfpRel { body, .. } => body.is_fo_lfp(),
            ForallSO(..) | ExistsSO(..) => false,
        }
    }

    /// True if no fixed-point operator occurs.
    pub fn is_lfp_free(&self) -> bool {
        use BoolFormula::*;
        match self {
            RelApp(..) | SOApp(..) | Eq(..) | Leq(..) | True | False => true,
            Not(a) | ForallFO(_, a) | ExistsFO(_, a) | ForallSO(_, _, a) | ExistsSO(_, _, a) => {
                a.is_lfp_free()
            }
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.is_lfp_free() && b.is_lfp_free(),
            LfpRel { .. } => false,
        }
    }

    /// Checks that every occurrence of `pred` sits under an even number of
    /// negations, counting the left side of `->` as one and both sides of
    /// `<->` as both polarities.
    pub fn is_positive_in(&self, pred: &str) -> bool {
        fn walk(f: &BoolFormula, pred: &str, positive: bool, shadowed: bool) -> bool {
            use BoolFormula::*;
            if shadowed {
                return true;
            }
            match f {
                RelApp(r, _) | SOApp(r, _) => r != pred || positive,
                Eq(..) | Leq(..) | True | False => true,
                Not(a) => walk(a, pred, !positive, false),
                And(a, b) | Or(a, b) => walk(a, pred, positive, false) && walk(b, pred, positive, false),
                Implies(a, b) => walk(a, pred, !positive, false) && walk(b, pred, positive, false),
                Iff(a, b) => {
                    let mentions = |g: &BoolFormula| g.free_relations().contains(pred);
                    !(mentions(a) || mentions(b))
                }
                ForallFO(_, a) | ExistsFO(_, a) => walk(a, pred, positive, false),
                ForallSO(x, _, a) | ExistsSO(x, _, a) => walk(a, pred, positive, x == pred),
                LfpRel { pred: p, body, .. } => walk(body, pred, positive, p == pred),
            }
        }
        walk(self, pred, true, false)
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_equivalent(&self, other: &BoolFormula) -> bool {
        self.with_canonical_binders() == other.with_canonical_binders()
    }

    /// Renames every bound variable to a name determined by its binding depth.
    pub fn with_canonical_binders(&self) -> BoolFormula {
        fn look(x: &Name, env: &[(Name, Name)]) -> Name {
            env.iter()
                .rev()
                .find(|(a, _)| a == x)
                .map_or_else(|| x.clone(), |(_, b)| b.clone())
        }
        fn go(f: &BoolFormula, env: &mut Vec<(Name, Name)>) -> BoolFormula {
            use BoolFormula::*;
            let names = |xs: &[Name], env: &[(Name, Name)]| xs.iter().map(|x| look(x, env)).collect();
            let bind = |x: &Name, env: &mut Vec<(Name, Name)>| {
                let fresh = format!("#{}", env.len());
                env.push((x.clone(), fresh.clone()));
                fresh
            };
            match f {
                RelApp(r, xs) => RelApp(look(r, env), names(xs, env)),
                SOApp(r, xs) => SOApp(look(r, env), names(xs, env)),
                Eq(a, b) => Eq(look(a, env), look(b, env)),
                Leq(a, b) => Leq(look(a, env), look(b, env)),
                True => True,
                False => False,
                Not(a) => go(a, env).not(),
                And(a, b) => go(a, env).and(go(b, env)),
                Or(a, b) => go(a, env).or(go(b, env)),
                Implies(a, b) => go(a, env).implies(go(b, env)),
                Iff(a, b) => go(a, env).iff(go(b, env)),
                ForallFO(x, a) | ExistsFO(x, a) => {
                    let y = bind(x, env);
                    let body = Box::new(go(a, env));
                    env.pop();
                    if matches!(f, ForallFO(..)) {
                        ForallFO(y, body)
                    } else {
                        ExistsFO(y, body)
                    }
                }
                ForallSO(x, k, a) | ExistsSO(x, k, a) => {
                    let y = bind(x, env);
                    let body = Box::new(go(a, env));
                    env.pop();
                    if matches!(f, ForallSO(..)) {
                        ForallSO(y, *k, body)
                    } else {
                        ExistsSO(y, *k, body)
                    }
                }
                LfpRel {
                    pred,
                    params,
                    body,
                    args,
                } => {
                    let args = names(args, env);
                    let depth = env.len();
                    let pred = bind(pred, env);
                    let params = params.iter().map(|p| bind(p, env)).collect();
                    let body = Box::new(go(body, env));
                    env.truncate(depth);
                    LfpRel {
                        pred,
                        params,
                        body,
                        args,
                    }
                }
            }
        }
        go(self, &mut Vec::new())
    }
}

impl QFormula {
    pub fn add(self, other: Self) -> Self {
        QFormula::Add(Box::new(self), Box::new(other))
    }

    pub fn mul(self, other: Self) -> Self {
        QFormula::Mul(Box::new(self), Box::new(other))
    }

    pub fn bool(f: BoolFormula) -> Self {
        QFormula::Bool(f)
    }

    pub fn top() -> Self {
        QFormula::Bool(BoolFormula::True)
    }

    pub fn fo(x: &str) -> Self {
        QFormula::FOVar(x.to_string())
    }

    pub fn so(x: &str) -> Self {
        QFormula::SOVar(x.to_string())
    }

    pub fn sum_fo(x: &str, body: Self) -> Self {
        QFormula::SumFO(x.to_string(), Box::new(body))
    }

    pub fn sum_so(x: &str, arity: usize, body: Self) -> Self {
        QFormula::SumSO(x.to_string(), arity, Box::new(body))
    }

    /// Sum of a nonempty list, left associated.
    pub fn sum_of(parts: impl IntoIterator<Item = Self>) -> Option<Self> {
        let mut it = parts.into_iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, p| acc.add(p)))
    }

    /// Product of a nonempty list, left associated.
    pub fn product_of(parts: impl IntoIterator<Item = Self>) -> Option<Self> {
        let mut it = parts.into_iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, p| acc.mul(p)))
    }

    /// Summands of nested `+`, left to right.
    pub fn summands(&self) -> Vec<&QFormula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a QFormula, out: &mut Vec<&'a QFormula>) {
            match f {
                QFormula::Add(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Factors of nested `*`, left to right.
    pub fn factors(&self) -> Vec<&QFormula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a QFormula, out: &mut Vec<&'a QFormula>) {
            match f {
                QFormula::Mul(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Free first-order variables, including those inside boolean leaves.
    pub fn free_fo(&self) -> BTreeSet<Name> {
        let mut fo = BTreeSet::new();
        let mut so = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut fo, &mut so);
        fo
    }

    /// Free second-order names: variables and vocabulary relations.
    pub fn free_so(&self) -> BTreeSet<Name> {
        let mut fo = BTreeSet::new();
        let mut so = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut fo, &mut so);
        so
    }

    fn collect_free(
        &self,
        fo_bound: &mut Vec<Name>,
        so_bound: &mut Vec<Name>,
        fo: &mut BTreeSet<Name>,
        so: &mut BTreeSet<Name>,
    ) {
        use QFormula::*;
        match self {
            FOVar(x) => {
                if !fo_bound.contains(x) {
                    fo.insert(x.clone());
                }
            }
            SOVar(x) => {
                if !so_bound.contains(x) {
                    so.insert(x.clone());
                }
            }
            Bool(b) => b.collect_free(fo_bound, so_bound, fo, so),
            Add(a, b) | Mul(a, b) => {
                a.collect_free(fo_bound, so_bound, fo, so);
                b.collect_free(fo_bound, so_bound, fo, so);
            }
            SumFO(x, body) => {
                fo_bound.push(x.clone());
                body.collect_free(fo_bound, so_bound, fo, so);
                fo_bound.pop();
            }
            SumSO(x, _, body) => {
                so_bound.push(x.clone());
                body.collect_free(fo_bound, so_bound, fo, so);
                so_bound.pop();
            }
            FunAppFO(_, args) => {
                for a in args {
                    if !fo_bound.contains(a) {
                        fo.insert(a.clone());
                    }
                }
            }
            FunAppSO(_, arg) => {
                if !so_bound.contains(arg) {
                    so.insert(arg.clone());
                }
            }
            LfpFO {
                params, body, args, ..
            } => {
                for a in args {
                    if !fo_bound.contains(a) {
                        fo.insert(a.clone());
                    }
                }
                let depth = fo_bound.len();
                fo_bound.extend(params.iter().cloned());
                body.collect_free(fo_bound, so_bound, fo, so);
                fo_bound.truncate(depth);
            }
            LfpSO {
                param, body, arg, ..
            } => {
                if !so_bound.contains(arg) {
                    so.insert(arg.clone());
                }
                so_bound.push(param.clone());
                body.collect_free(fo_bound, so_bound, fo, so);
                so_bound.pop();
            }
        }
    }

    /// True if some application of function symbol `f` occurs free.
    pub fn mentions_function(&self, f: &str) -> bool {
        use QFormula::*;
        match self {
            FOVar(_) | SOVar(_) | Bool(_) => false,
            Add(a, b) | Mul(a, b) => a.mentions_function(f) || b.mentions_function(f),
            SumFO(_, body) | SumSO(_, _, body) => body.mentions_function(f),
            FunAppFO(g, _) | FunAppSO(g, _) => g == f,
            LfpFO { func, body, .. } | LfpSO { func, body, .. } => {
                func != f && body.mentions_function(f)
            }
        }
    }

    /// True if any function application occurs (free or bound).
    pub fn has_function_symbols(&self) -> bool {
        use QFormula::*;
        match self {
            FOVar(_) | SOVar(_) | Bool(_) => false,
            Add(a, b) | Mul(a, b) => a.has_function_symbols() || b.has_function_symbols(),
            SumFO(_, body) | SumSO(_, _, body) => body.has_function_symbols(),
            FunAppFO(..) | FunAppSO(..) => true,
            LfpFO { .. } | LfpSO { .. } => true,
        }
    }

    /// True if no fixed-point binder occurs in the quantitative layer or
    /// inside boolean leaves.
    pub fn is_lfp_free(&self) -> bool {
        use QFormula::*;
        match self {
            FOVar(_) | SOVar(_) | FunAppFO(..) | FunAppSO(..) => true,
            Bool(b) => b.is_lfp_free(),
            Add(a, b) | Mul(a, b) => a.is_lfp_free() && b.is_lfp_free(),
            SumFO(_, body) | SumSO(_, _, body) => body.is_lfp_free(),
            LfpFO { .. } | LfpSO { .. } => false,
        }
    }

    /// No first-order variable is used as an output letter.
    pub fn is_x_free(&self) -> bool {
        self.letters_ok(&|f| !matches!(f, QFormula::FOVar(_)))
    }

    /// No second-order variable is used as an output letter and no
    /// second-order sum occurs.
    pub fn is_big_x_free(&self) -> bool {
        self.letters_ok(&|f| !matches!(f, QFormula::SOVar(_) | QFormula::SumSO(..)))
    }

    fn letters_ok(&self, ok: &dyn Fn(&QFormula) -> bool) -> bool {
        use QFormula::*;
        if !ok(self) {
            return false;
        }
        match self {
            FOVar(_) | SOVar(_) | Bool(_) | FunAppFO(..) | FunAppSO(..) => true,
            Add(a, b) | Mul(a, b) => a.letters_ok(ok) && b.letters_ok(ok),
            SumFO(_, body) | SumSO(_, _, body) => body.letters_ok(ok),
            LfpFO { body, .. } | LfpSO { body, .. } => body.letters_ok(ok),
        }
    }

    /// Visits every boolean leaf.
    pub fn bool_leaves(&self) -> Vec<&BoolFormula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a QFormula, out: &mut Vec<&'a BoolFormula>) {
            use QFormula::*;
            match f {
                Bool(b) => out.push(b),
                FOVar(_) | SOVar(_) | FunAppFO(..) | FunAppSO(..) => {}
                Add(a, b) | Mul(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                SumFO(_, body) | SumSO(_, _, body) => walk(body, out),
                LfpFO { body, .. } | LfpSO { body, .. } => walk(body, out),
            }
        }
        walk(self, &mut out);
        out
    }
}
