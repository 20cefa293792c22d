use crate::ast::{BoolFormula as B, Name, QFormula as Q};
use crate::error::FormulaError;
use crate::macros::{self, Fresh};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Star,
    Amp,
    Pipe,
    Bang,
    Arrow,
    DArrow,
    Dollar,
    At,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, FormulaError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            adv(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let next2 = chars.get(i + 2).copied();
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBrack, 1),
            ']' => (Tok::RBrack, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            ':' => (Tok::Colon, 1),
            '=' => (Tok::Eq, 1),
            '+' => (Tok::Plus, 1),
            '*' | '·' => (Tok::Star, 1),
            '&' | '∧' => (Tok::Amp, 1),
            '|' | '∨' => (Tok::Pipe, 1),
            '¬' => (Tok::Bang, 1),
            '→' => (Tok::Arrow, 1),
            '↔' => (Tok::DArrow, 1),
            '≤' => (Tok::Le, 1),
            '≥' => (Tok::Ge, 1),
            '≠' => (Tok::Neq, 1),
            '$' => (Tok::Dollar, 1),
            '@' => (Tok::At, 1),
            '!' if next == Some('=') => (Tok::Neq, 2),
            '!' => (Tok::Bang, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '<' if next == Some('-') && next2 == Some('>') => (Tok::DArrow, 3),
            '<' if next == Some('=') => (Tok::Le, 2),
            '<' => (Tok::Lt, 1),
            '>' if next == Some('=') => (Tok::Ge, 2),
            '>' => (Tok::Gt, 1),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                (Tok::Num(chars[i..j].iter().collect()), j - i)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                (Tok::Ident(chars[i..j].iter().collect()), j - i)
            }
            other => {
                return Err(FormulaError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        adv(len, &mut i, &mut col);
        out.push(Token {
            tok,
            line: start.0,
            col: start.1,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

const KEYWORDS: &[&str] = &[
    "sum", "Sum", "lfp", "lfpR", "in", "forall", "exists", "ForallR", "ExistsR", "true", "false",
    "min", "max", "succ", "empty",
];

/// Whether a name denotes a second-order object (relation, SO variable).
pub fn is_upper_name(name: &str) -> bool {
    name.trim_start_matches('_')
        .chars()
        .next()
        .is_some_and(|c| c.is_uppercase())
}

/// Signature of a function symbol: its argument is a tuple of `k`
/// elements or a relation of arity `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunKind {
    Fo(usize),
    So(usize),
}

enum Term {
    Var(Name),
    Min,
    Max,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    fresh: Fresh,
    fo: Vec<Name>,
    so: Vec<(Name, usize)>,
    funs: Vec<(Name, FunKind)>,
}

type R<T> = Result<T, FormulaError>;

impl Parser {
    fn new(src: &str) -> R<Self> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            fresh: Fresh::avoiding_text(src),
            fo: Vec::new(),
            so: Vec::new(),
            funs: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> R<T> {
        let (line, col) = self.here();
        if let Tok::Num(text) = self.peek() {
            return Err(FormulaError::NumericLiteral {
                line,
                col,
                text: text.clone(),
            });
        }
        Err(FormulaError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn scope_err<T>(&self, msg: impl Into<String>) -> R<T> {
        let (line, col) = self.here();
        Err(FormulaError::Scope {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> R<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> R<Name> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected a name, found {}", describe(&other))),
        }
    }

    fn lower(&mut self) -> R<Name> {
        let name = self.ident()?;
        if is_upper_name(&name) {
            self.pos -= 1;
            return self.err(format!("`{name}` must start with a lowercase letter"));
        }
        Ok(name)
    }

    fn upper(&mut self) -> R<Name> {
        let name = self.ident()?;
        if !is_upper_name(&name) {
            self.pos -= 1;
            return self.err(format!("`{name}` must start with an uppercase letter"));
        }
        Ok(name)
    }

    fn arity(&mut self) -> R<usize> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                match s.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k),
                    _ => self.err("arity must be a positive integer"),
                }
            }
            other => self.err(format!("expected an arity, found {}", describe(&other))),
        }
    }

    fn so_arity(&self, name: &str) -> Option<usize> {
        self.so.iter().rev().find(|(n, _)| n == name).map(|&(_, k)| k)
    }

    fn so_bound(&self, name: &str) -> bool {
        self.so_arity(name).is_some()
    }

    fn fun_kind(&self, name: &str) -> Option<FunKind> {
        self.funs.iter().rev().find(|(n, _)| n == name).map(|&(_, k)| k)
    }

    // ---------------------------------------------------------------- quantitative

    fn qexpr(&mut self) -> R<Q> {
        let mut left = self.qterm()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let right = self.qterm()?;
            left = left.add(right);
        }
        Ok(left)
    }

    fn qterm(&mut self) -> R<Q> {
        let mut left = self.qfactor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let right = self.qfactor()?;
            left = left.mul(right);
        }
        Ok(left)
    }

    fn qfactor(&mut self) -> R<Q> {
        if self.eat_kw("sum") {
            let x = self.lower()?;
            self.expect(Tok::Dot, "`.`")?;
            self.fo.push(x.clone());
            let body = self.qexpr();
            self.fo.pop();
            return Ok(Q::SumFO(x, Box::new(body?)));
        }
        if self.eat_kw("Sum") {
            let x = self.upper()?;
            self.expect(Tok::Colon, "`:`")?;
            let k = self.arity()?;
            self.expect(Tok::Dot, "`.`")?;
            self.so.push((x.clone(), k));
            let body = self.qexpr();
            self.so.pop();
            return Ok(Q::SumSO(x, k, Box::new(body?)));
        }
        if self.eat_kw("lfp") {
            return self.qlfp();
        }
        if self.eat_kw("min") {
            let t = self.fresh.fo();
            let guard = macros::is_min(&t, &mut self.fresh);
            return Ok(Q::sum_fo(&t, Q::Bool(guard).mul(Q::fo(&t))));
        }
        if self.eat_kw("max") {
            let t = self.fresh.fo();
            let guard = macros::is_max(&t, &mut self.fresh);
            return Ok(Q::sum_fo(&t, Q::Bool(guard).mul(Q::fo(&t))));
        }
        match self.peek().clone() {
            Tok::LBrack => {
                self.bump();
                let b = self.bexpr()?;
                let mut letters = Vec::new();
                if *self.peek() == Tok::At {
                    self.bump();
                    loop {
                        letters.push(self.letter()?);
                        if *self.peek() != Tok::Comma {
                            break;
                        }
                        self.bump();
                    }
                }
                self.expect(Tok::RBrack, "`]`")?;
                letters.push(Q::Bool(b));
                Ok(Q::product_of(letters).expect("nonempty"))
            }
            Tok::Dollar => {
                self.bump();
                let x = self.upper()?;
                Ok(Q::SOVar(x))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.qexpr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                if *self.peek_at(1) == Tok::LParen {
                    self.fun_app()
                } else if is_upper_name(&name) {
                    self.err(format!(
                        "second-order letter must be written `${name}`"
                    ))
                } else {
                    self.bump();
                    Ok(Q::FOVar(name))
                }
            }
            other => self.err(format!(
                "expected a quantitative formula, found {}",
                describe(&other)
            )),
        }
    }

    fn letter(&mut self) -> R<Q> {
        if *self.peek() == Tok::Dollar {
            self.bump();
        }
        let name = self.ident()?;
        Ok(if is_upper_name(&name) {
            Q::SOVar(name)
        } else {
            Q::FOVar(name)
        })
    }

    fn fun_app(&mut self) -> R<Q> {
        let (line, col) = self.here();
        let f = self.lower()?;
        let kind = match self.fun_kind(&f) {
            Some(k) => k,
            None => return self.scope_err(format!("`{f}` is not a function symbol in scope")),
        };
        self.expect(Tok::LParen, "`(`")?;
        match kind {
            FunKind::Fo(arity) => {
                let args = self.var_list()?;
                if args.len() != arity {
                    return Err(FormulaError::ArityMismatch {
                        line,
                        col,
                        name: f,
                        expected: arity,
                        found: args.len(),
                    });
                }
                Ok(Q::FunAppFO(f, args))
            }
            FunKind::So(arity) => {
                let arg = self.upper()?;
                self.expect(Tok::RParen, "`)`")?;
                if let Some(k) = self.so_arity(&arg) {
                    if k != arity {
                        return Err(FormulaError::ArityMismatch {
                            line,
                            col,
                            name: arg,
                            expected: arity,
                            found: k,
                        });
                    }
                }
                Ok(Q::FunAppSO(f, arg))
            }
        }
    }

    /// `x, y, z )` with the opening parenthesis already consumed.
    fn var_list(&mut self) -> R<Vec<Name>> {
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.lower()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(out),
                _ => {
                    self.pos -= 1;
                    return self.err("expected `,` or `)`");
                }
            }
        }
    }

    fn qlfp(&mut self) -> R<Q> {
        let f = self.lower()?;
        self.expect(Tok::LParen, "`(`")?;
        let so_param = matches!(self.peek(), Tok::Ident(s) if is_upper_name(s));
        if so_param {
            let x = self.upper()?;
            self.expect(Tok::Colon, "`:`")?;
            let k = self.arity()?;
            self.expect(Tok::RParen, "`)`")?;
            self.expect(Tok::Eq, "`=`")?;
            self.funs.push((f.clone(), FunKind::So(k)));
            self.so.push((x.clone(), k));
            let body = self.qexpr();
            self.so.pop();
            self.funs.pop();
            let body = body?;
            self.expect_in(&f)?;
            self.expect(Tok::LParen, "`(`")?;
            let (line, col) = self.here();
            let arg = self.upper()?;
            self.expect(Tok::RParen, "`)`")?;
            if let Some(k2) = self.so_arity(&arg) {
                if k2 != k {
                    return Err(FormulaError::ArityMismatch {
                        line,
                        col,
                        name: arg,
                        expected: k,
                        found: k2,
                    });
                }
            }
            Ok(Q::LfpSO {
                func: f,
                param: x,
                arity: k,
                body: Box::new(body),
                arg,
            })
        } else {
            let params = self.var_list()?;
            if params.is_empty() {
                return self.err("a fixed point needs at least one parameter");
            }
            self.expect(Tok::Eq, "`=`")?;
            self.funs.push((f.clone(), FunKind::Fo(params.len())));
            let depth = self.fo.len();
            self.fo.extend(params.iter().cloned());
            let body = self.qexpr();
            self.fo.truncate(depth);
            self.funs.pop();
            let body = body?;
            self.expect_in(&f)?;
            let (line, col) = self.here();
            self.expect(Tok::LParen, "`(`")?;
            let args = self.var_list()?;
            if args.len() != params.len() {
                return Err(FormulaError::ArityMismatch {
                    line,
                    col,
                    name: f,
                    expected: params.len(),
                    found: args.len(),
                });
            }
            Ok(Q::LfpFO {
                func: f,
                params,
                body: Box::new(body),
                args,
            })
        }
    }

    fn expect_in(&mut self, f: &str) -> R<()> {
        if !self.eat_kw("in") {
            return self.err("expected `in`");
        }
        let g = self.ident()?;
        if g != f {
            self.pos -= 1;
            return self.err(format!("expected `{f}` after `in`, found `{g}`"));
        }
        Ok(())
    }

    // ---------------------------------------------------------------- boolean

    fn bexpr(&mut self) -> R<B> {
        let left = self.bimp()?;
        if *self.peek() == Tok::DArrow {
            self.bump();
            let right = self.bimp()?;
            return Ok(left.iff(right));
        }
        Ok(left)
    }

    fn bimp(&mut self) -> R<B> {
        let left = self.bor()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.bimp()?;
            return Ok(left.implies(right));
        }
        Ok(left)
    }

    fn bor(&mut self) -> R<B> {
        let mut left = self.band()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.band()?;
            left = left.or(right);
        }
        Ok(left)
    }

    fn band(&mut self) -> R<B> {
        let mut left = self.bunary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.bunary()?;
            left = left.and(right);
        }
        Ok(left)
    }

    fn bunary(&mut self) -> R<B> {
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(self.bunary()?.not());
        }
        for (kw, universal) in [("forall", true), ("exists", false)] {
            if self.eat_kw(kw) {
                let x = self.lower()?;
                self.expect(Tok::Dot, "`.`")?;
                self.fo.push(x.clone());
                let body = self.bexpr();
                self.fo.pop();
                let body = Box::new(body?);
                return Ok(if universal {
                    B::ForallFO(x, body)
                } else {
                    B::ExistsFO(x, body)
                });
            }
        }
        for (kw, universal) in [("ForallR", true), ("ExistsR", false)] {
            if self.eat_kw(kw) {
                let x = self.upper()?;
                self.expect(Tok::Colon, "`:`")?;
                let k = self.arity()?;
                self.expect(Tok::Dot, "`.`")?;
                self.so.push((x.clone(), k));
                let body = self.bexpr();
                self.so.pop();
                let body = Box::new(body?);
                return Ok(if universal {
                    B::ForallSO(x, k, body)
                } else {
                    B::ExistsSO(x, k, body)
                });
            }
        }
        if self.eat_kw("lfpR") {
            return self.blfp();
        }
        self.batom()
    }

    fn blfp(&mut self) -> R<B> {
        let (line, col) = self.here();
        let p = self.upper()?;
        self.expect(Tok::LParen, "`(`")?;
        let params = self.var_list()?;
        if params.is_empty() {
            return self.err("a fixed point needs at least one parameter");
        }
        self.expect(Tok::Eq, "`=`")?;
        let depth = self.fo.len();
        self.fo.extend(params.iter().cloned());
        self.so.push((p.clone(), params.len()));
        let body = self.bexpr();
        self.so.pop();
        self.fo.truncate(depth);
        let body = body?;
        if !self.eat_kw("in") {
            return self.err("expected `in`");
        }
        let q = self.upper()?;
        if q != p {
            return self.err(format!("expected `{p}` after `in`"));
        }
        self.expect(Tok::LParen, "`(`")?;
        let (terms, wrap) = self.term_list_closed()?;
        if terms.len() != params.len() {
            return Err(FormulaError::ArityMismatch {
                line,
                col,
                name: p,
                expected: params.len(),
                found: terms.len(),
            });
        }
        if !body.is_positive_in(&p) {
            return Err(FormulaError::Scope {
                line,
                col,
                msg: format!("`{p}` occurs negatively in its fixed-point body"),
            });
        }
        Ok(self.wrap_terms(
            wrap,
            B::LfpRel {
                pred: p,
                params,
                body: Box::new(body),
                args: terms,
            },
        ))
    }

    fn term(&mut self) -> R<Term> {
        if self.eat_kw("min") {
            return Ok(Term::Min);
        }
        if self.eat_kw("max") {
            return Ok(Term::Max);
        }
        Ok(Term::Var(self.lower()?))
    }

    /// Replaces `min`/`max` terms by fresh variables, remembering the guards.
    fn resolve(&mut self, t: Term, wrap: &mut Vec<(Name, B)>) -> Name {
        match t {
            Term::Var(x) => x,
            Term::Min => {
                let v = self.fresh.fo();
                let g = macros::is_min(&v, &mut self.fresh);
                wrap.push((v.clone(), g));
                v
            }
            Term::Max => {
                let v = self.fresh.fo();
                let g = macros::is_max(&v, &mut self.fresh);
                wrap.push((v.clone(), g));
                v
            }
        }
    }

    fn wrap_terms(&self, wrap: Vec<(Name, B)>, atom: B) -> B {
        wrap.into_iter()
            .rev()
            .fold(atom, |acc, (v, g)| B::exists(&v, g.and(acc)))
    }

    /// Terms up to and including `)`.
    fn term_list_closed(&mut self) -> R<(Vec<Name>, Vec<(Name, B)>)> {
        let mut wrap = Vec::new();
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok((out, wrap));
        }
        loop {
            let t = self.term()?;
            out.push(self.resolve(t, &mut wrap));
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok((out, wrap)),
                _ => {
                    self.pos -= 1;
                    return self.err("expected `,` or `)`");
                }
            }
        }
    }

    fn comparator(&self) -> Option<Tok> {
        match self.peek() {
            t @ (Tok::Eq | Tok::Neq | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge) => Some(t.clone()),
            _ => None,
        }
    }

    fn batom(&mut self) -> R<B> {
        if self.eat_kw("true") {
            return Ok(B::True);
        }
        if self.eat_kw("false") {
            return Ok(B::False);
        }
        if self.eat_kw("succ") {
            return self.succ_atom();
        }
        if self.eat_kw("empty") {
            self.expect(Tok::LParen, "`(`")?;
            let x = self.upper()?;
            self.expect(Tok::RParen, "`)`")?;
            let k = match self.so_arity(&x) {
                Some(k) => k,
                None => {
                    return self.scope_err(format!("cannot infer the arity of `{x}` in empty(..)"))
                }
            };
            return Ok(macros::rel_empty((&x, true), k, &mut self.fresh));
        }
        match self.peek().clone() {
            Tok::LParen => {
                let save = self.pos;
                if let Ok(Some(atom)) = self.try_tuple_comparison() {
                    return Ok(atom);
                }
                self.pos = save;
                self.bump();
                let inner = self.bexpr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) if is_upper_name(&name) && !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                match self.peek().clone() {
                    Tok::LParen => {
                        let (line, col) = self.here();
                        self.bump();
                        let (args, wrap) = self.term_list_closed()?;
                        let bound = self.so_bound(&name);
                        if let Some(k) = self.so_arity(&name) {
                            if k != args.len() {
                                return Err(FormulaError::ArityMismatch {
                                    line,
                                    col,
                                    name,
                                    expected: k,
                                    found: args.len(),
                                });
                            }
                        }
                        Ok(self.wrap_terms(wrap, macros::app(&name, &args, bound)))
                    }
                    Tok::Eq | Tok::Neq => {
                        let negate = self.bump() == Tok::Neq;
                        let other = self.upper()?;
                        let k = match (self.so_arity(&name), self.so_arity(&other)) {
                            (Some(a), Some(b)) if a != b => {
                                return self.scope_err(format!(
                                    "`{name}` and `{other}` have different arities"
                                ))
                            }
                            (Some(a), _) | (_, Some(a)) => a,
                            (None, None) => {
                                return self.scope_err(format!(
                                    "cannot infer the arity of `{name} = {other}`"
                                ))
                            }
                        };
                        let lb = self.so_bound(&name);
                        let rb = self.so_bound(&other);
                        let eq = macros::rel_eq((&name, lb), (&other, rb), k, &mut self.fresh);
                        Ok(if negate { eq.not() } else { eq })
                    }
                    _ => self.err(format!("expected `(` or `=` after `{name}`")),
                }
            }
            Tok::Ident(_) => {
                let lhs = self.term()?;
                let cmp = match self.comparator() {
                    Some(c) => c,
                    None => return self.err("expected a comparison"),
                };
                self.bump();
                let rhs = self.term()?;
                Ok(self.compare(lhs, cmp, rhs))
            }
            other => self.err(format!("expected a formula, found {}", describe(&other))),
        }
    }

    fn compare(&mut self, lhs: Term, cmp: Tok, rhs: Term) -> B {
        if cmp == Tok::Eq || cmp == Tok::Neq {
            let special = match (&lhs, &rhs) {
                (Term::Var(x), Term::Min) | (Term::Min, Term::Var(x)) => {
                    Some(macros::is_min(x, &mut self.fresh))
                }
                (Term::Var(x), Term::Max) | (Term::Max, Term::Var(x)) => {
                    Some(macros::is_max(x, &mut self.fresh))
                }
                _ => None,
            };
            if let Some(b) = special {
                return if cmp == Tok::Neq { b.not() } else { b };
            }
        }
        let mut wrap = Vec::new();
        let x = self.resolve(lhs, &mut wrap);
        let y = self.resolve(rhs, &mut wrap);
        let atom = match cmp {
            Tok::Eq => B::eq(&x, &y),
            Tok::Neq => B::eq(&x, &y).not(),
            Tok::Le => B::leq(&x, &y),
            Tok::Ge => B::leq(&y, &x),
            Tok::Lt => macros::lt(&x, &y),
            Tok::Gt => macros::lt(&y, &x),
            _ => unreachable!("comparator"),
        };
        self.wrap_terms(wrap, atom)
    }

    fn succ_atom(&mut self) -> R<B> {
        self.expect(Tok::LParen, "`(`")?;
        if *self.peek() == Tok::LParen {
            self.bump();
            let (xs, mut wrap) = self.term_list_closed()?;
            self.expect(Tok::Comma, "`,`")?;
            self.expect(Tok::LParen, "`(`")?;
            let (ys, wrap2) = self.term_list_closed()?;
            self.expect(Tok::RParen, "`)`")?;
            if xs.len() != ys.len() {
                return self.err("tuples of different lengths in succ");
            }
            wrap.extend(wrap2);
            let atom = macros::tuple_succ(&xs, &ys, &mut self.fresh);
            return Ok(self.wrap_terms(wrap, atom));
        }
        let (args, wrap) = self.term_list_closed()?;
        if args.len() != 2 {
            return self.err("succ takes two arguments");
        }
        let atom = macros::succ(&args[0], &args[1], &mut self.fresh);
        Ok(self.wrap_terms(wrap, atom))
    }

    /// `(t, .., t) cmp (t, .., t)`, `(t, ..) = min`, `(t, ..) = max`.
    fn try_tuple_comparison(&mut self) -> R<Option<B>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut lhs = Vec::new();
        loop {
            lhs.push(self.term()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => break,
                _ => return Ok(None),
            }
        }
        let cmp = match self.comparator() {
            Some(c) => c,
            None => return Ok(None),
        };
        self.bump();
        let mut wrap = Vec::new();
        let xs: Vec<Name> = lhs.into_iter().map(|t| self.resolve(t, &mut wrap)).collect();
        if self.eat_kw("min") || self.eat_kw("max") {
            let is_min = matches!(&self.toks[self.pos - 1].tok, Tok::Ident(s) if s == "min");
            let atom = if is_min {
                macros::tuple_is_min(&xs, &mut self.fresh)
            } else {
                macros::tuple_is_max(&xs, &mut self.fresh)
            };
            let atom = match cmp {
                Tok::Eq => atom,
                Tok::Neq => atom.not(),
                _ => return self.err("only = and != compare a tuple with min/max"),
            };
            return Ok(Some(self.wrap_terms(wrap, atom)));
        }
        self.expect(Tok::LParen, "`(`")?;
        let (ys, wrap2) = self.term_list_closed()?;
        wrap.extend(wrap2);
        if xs.len() != ys.len() {
            return self.err("tuples of different lengths");
        }
        let atom = match cmp {
            Tok::Eq => macros::tuple_eq(&xs, &ys),
            Tok::Neq => macros::tuple_eq(&xs, &ys).not(),
            Tok::Lt => macros::tuple_lt(&xs, &ys),
            Tok::Le => macros::tuple_le(&xs, &ys),
            Tok::Gt => macros::tuple_lt(&ys, &xs),
            Tok::Ge => macros::tuple_le(&ys, &xs),
            _ => unreachable!("comparator"),
        };
        Ok(Some(self.wrap_terms(wrap, atom)))
    }

    fn finish(&mut self) -> R<()> {
        if *self.peek() != Tok::Eof {
            return self.err(format!("unexpected {}", describe(self.peek())));
        }
        Ok(())
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(s) => format!("number `{s}`"),
        Tok::Eof => "end of input".into(),
        other => format!("`{}`", tok_text(other)),
    }
}

fn tok_text(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrack => "[",
        Tok::RBrack => "]",
        Tok::Comma => ",",
        Tok::Dot => ".",
        Tok::Colon => ":",
        Tok::Eq => "=",
        Tok::Neq => "!=",
        Tok::Lt => "<",
        Tok::Le => "<=",
        Tok::Gt => ">",
        Tok::Ge => ">=",
        Tok::Plus => "+",
        Tok::Star => "*",
        Tok::Amp => "&",
        Tok::Pipe => "|",
        Tok::Bang => "!",
        Tok::Arrow => "->",
        Tok::DArrow => "<->",
        Tok::Dollar => "$",
        Tok::At => "@",
        Tok::Ident(_) | Tok::Num(_) | Tok::Eof => "",
    }
}

/// Parses a quantitative formula.
pub fn parse_qformula(text: &str) -> Result<Q, FormulaError> {
    let mut p = Parser::new(text)?;
    let q = p.qexpr()?;
    p.finish()?;
    Ok(q)
}

/// Parses a boolean formula.
pub fn parse_bool(text: &str) -> Result<B, FormulaError> {
    let mut p = Parser::new(text)?;
    let b = p.bexpr()?;
    p.finish()?;
    Ok(b)
}

/// Parses a boolean formula in which the given names are second-order
/// variables of the given arities.
pub fn parse_bool_with(text: &str, so_vars: &[(&str, usize)]) -> Result<B, FormulaError> {
    let mut p = Parser::new(text)?;
    p.so = so_vars.iter().map(|&(n, k)| (n.to_string(), k)).collect();
    let b = p.bexpr()?;
    p.finish()?;
    Ok(b)
}

/// Parses a quantitative formula in which the given names are free
/// second-order variables of the given arities.
pub fn parse_qformula_with(text: &str, so_vars: &[(&str, usize)]) -> Result<Q, FormulaError> {
    let mut p = Parser::new(text)?;
    p.so = so_vars.iter().map(|&(n, k)| (n.to_string(), k)).collect();
    let q = p.qexpr()?;
    p.finish()?;
    Ok(q)
}

/// Parses a quantitative formula with free second-order variables and free
/// function symbols.
pub fn parse_qformula_in(
    text: &str,
    so_vars: &[(&str, usize)],
    funs: &[(&str, FunKind)],
) -> Result<Q, FormulaError> {
    let mut p = Parser::new(text)?;
    p.so = so_vars.iter().map(|&(n, k)| (n.to_string(), k)).collect();
    p.funs = funs.iter().map(|&(n, k)| (n.to_string(), k)).collect();
    let q = p.qexpr()?;
    p.finish()?;
    Ok(q)
}
