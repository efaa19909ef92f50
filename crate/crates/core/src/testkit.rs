//! Generators, oracles and the cross-back-end harness used by the property
//! suites and the `check-laws` / `crosscheck` commands.

use std::cell::Cell;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::absint::{analyze, NdetDeg};
use crate::chunked::ChunkedSemantics;
use crate::codegen::Compiled;
use crate::laws::Identity;
use crate::laws::LawCase;
use crate::list::ListSemantics;
use crate::sem::{ChoiceBag, Observer, RecurBody, SemError, Semantics};
use crate::term::{IntTerm, Pred, Term};

/// Bounds for random terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub max_depth: u32,
    pub max_list_len: usize,
    pub int_min: i64,
    pub int_max: i64,
    pub seed: u64,
    pub committed_choice: bool,
    /// Terms whose list-of-successes evaluation would build more than this
    /// many list cells are redrawn.
    pub budget: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 5,
            max_list_len: 4,
            int_min: 0,
            int_max: 9,
            seed: 0,
            committed_choice: false,
            budget: 100_000,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Self::default()
        }
    }
}

/// Deterministic source of random terms; the same config yields the same
/// sequence.
pub struct TermGen {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

#[derive(Clone, Copy)]
enum Shape {
    Nil,
    Fail,
    List,
    ConsLit,
    Tail,
    Rec,
    Cons,
    Choice,
    Recur,
    RId,
    Once,
}

impl TermGen {
    pub fn new(cfg: GenConfig) -> Self {
        assert!(cfg.max_depth >= 1, "depth must be at least 1");
        assert!(cfg.int_min <= cfg.int_max, "empty integer range");
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        TermGen { cfg, rng }
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    /// A closed list term whose evaluation stays within the budget.
    pub fn term(&mut self) -> Term {
        loop {
            let t = self.list(self.cfg.max_depth, 0);
            if within_budget(&t, self.cfg.budget) {
                return t;
            }
        }
    }

    /// A recursor body over one binder, possibly ignoring its arguments.
    pub fn body(&mut self) -> Term {
        self.body_at(self.cfg.max_depth.saturating_sub(1).max(1), 0)
    }

    pub fn law_case(&mut self) -> LawCase {
        loop {
            let c = self.raw_law_case();
            let fits = Identity::ALL.iter().all(|id| {
                let (lhs, rhs) = id.sides(&c);
                within_budget(&lhs, self.cfg.budget) && within_budget(&rhs, self.cfg.budget)
            });
            if fits {
                return c;
            }
        }
    }

    fn raw_law_case(&mut self) -> LawCase {
        let d = self.cfg.max_depth.saturating_sub(1).max(1);
        LawCase {
            x: self.lit(),
            h: self.lit(),
            t: self.lits(),
            body: self.body(),
            n: self.list(d, 0),
            l1: self.list(d, 0),
            l2: self.list(d, 0),
            l3: self.list(d, 0),
        }
    }

    fn lit(&mut self) -> i64 {
        self.rng.gen_range(self.cfg.int_min..=self.cfg.int_max)
    }

    fn lits(&mut self) -> Vec<i64> {
        let n = self.rng.gen_range(0..=self.cfg.max_list_len);
        (0..n).map(|_| self.lit()).collect()
    }

    fn int(&mut self, scopes: usize) -> IntTerm {
        if scopes > 0 && self.rng.gen_bool(0.5) {
            IntTerm::Head(self.rng.gen_range(0..scopes))
        } else {
            IntTerm::Lit(self.lit())
        }
    }

    fn pred(&mut self) -> Pred {
        match self.rng.gen_range(0..3) {
            0 => Pred::Sorted,
            1 => Pred::LenAtMost(self.rng.gen_range(0..=3)),
            _ => Pred::SumEven,
        }
    }

    fn pick(&mut self, weighted: &[(Shape, u32)]) -> Shape {
        let total: u32 = weighted.iter().map(|(_, w)| w).sum();
        let mut k = self.rng.gen_range(0..total);
        for &(s, w) in weighted {
            if k < w {
                return s;
            }
            k -= w;
        }
        unreachable!()
    }

    fn list(&mut self, depth: u32, scopes: usize) -> Term {
        let leaf = if depth <= 2 { 2 } else { 1 };
        let mut menu = vec![
            (Shape::Nil, leaf),
            (Shape::Fail, leaf),
            (Shape::List, leaf),
            (Shape::ConsLit, leaf),
        ];
        if scopes > 0 {
            menu.push((Shape::Tail, leaf));
            menu.push((Shape::Rec, leaf));
        }
        if depth > 1 {
            menu.extend([(Shape::Cons, 2), (Shape::Choice, 2), (Shape::Recur, 2)]);
            if self.cfg.committed_choice {
                menu.extend([(Shape::RId, 1), (Shape::Once, 1)]);
            }
        }
        let d = depth.saturating_sub(1);
        match self.pick(&menu) {
            Shape::Nil => Term::Nil,
            Shape::Fail => Term::Fail,
            Shape::List => Term::List(self.lits()),
            Shape::ConsLit => Term::cons(IntTerm::Lit(self.lit()), Term::Nil),
            Shape::Tail => Term::Tail(self.rng.gen_range(0..scopes)),
            Shape::Rec => Term::Rec(self.rng.gen_range(0..scopes)),
            Shape::Cons => {
                let x = self.int(scopes);
                Term::cons(x, self.list(d, scopes))
            }
            Shape::Choice => {
                let a = self.list(d, scopes);
                Term::choice(a, self.list(d, scopes))
            }
            Shape::Recur => {
                let body = self.body_at(d, scopes);
                let z = self.list(d, scopes);
                Term::recur(body, z, self.list(d, scopes))
            }
            Shape::RId => {
                let p = self.pred();
                Term::rid(p, self.list(d, scopes))
            }
            Shape::Once => Term::once(self.list(d, scopes)),
        }
    }

    /// Body of a recursor opened inside `scopes` binders.
    fn body_at(&mut self, depth: u32, scopes: usize) -> Term {
        let h = IntTerm::Head(0);
        match self.rng.gen_range(0..8) {
            // foldr cons
            0 => Term::cons(h, Term::Rec(0)),
            // insert x
            1 => {
                let x = self.int(scopes + 1);
                let x = if x == IntTerm::Head(0) {
                    IntTerm::Lit(self.lit())
                } else {
                    x
                };
                Term::choice(
                    Term::cons(x, Term::cons(h, Term::Tail(0))),
                    Term::cons(h, Term::Rec(0)),
                )
            }
            // subsequences
            2 => Term::choice(Term::Rec(0), Term::cons(h, Term::Rec(0))),
            // ignores its arguments
            3 => match self.rng.gen_range(0..3) {
                0 => Term::Fail,
                1 => Term::Nil,
                _ => self.list(depth.max(1), scopes),
            },
            4 => Term::Tail(0),
            _ => self.list(depth.max(1), scopes + 1),
        }
    }
}

/// List-of-successes evaluation that charges one unit of fuel per list
/// cell built. Once the fuel runs out every operation yields the empty bag,
/// so runaway terms are abandoned quickly.
struct Metered {
    fuel: Cell<u64>,
    budget: u64,
}

impl Metered {
    fn charge(&self, bag: &[Vec<i64>]) -> bool {
        let cost: u64 = bag.iter().map(|c| c.len() as u64 + 1).sum();
        let left = self.fuel.get();
        self.fuel.set(left.saturating_sub(cost));
        cost <= left
    }

    fn emit(&self, bag: Vec<Vec<i64>>) -> ChoiceBag {
        if self.charge(&bag) {
            ChoiceBag(bag)
        } else {
            ChoiceBag::empty()
        }
    }

    fn alive(&self) -> Result<(), SemError> {
        if self.fuel.get() == 0 {
            Err(SemError::Exhausted(self.budget))
        } else {
            Ok(())
        }
    }
}

impl Semantics for Metered {
    type Int = i64;
    type List = ChoiceBag;

    fn name(&self) -> &'static str {
        "metered"
    }

    fn int(&self, n: i64) -> i64 {
        n
    }

    fn nil(&self) -> ChoiceBag {
        self.emit(vec![Vec::new()])
    }

    fn cons(&self, x: &i64, l: &ChoiceBag) -> ChoiceBag {
        self.emit(ListSemantics.cons(x, l).0)
    }

    fn list(&self, xs: &[i64]) -> ChoiceBag {
        self.emit(vec![xs.to_vec()])
    }

    fn recur(
        &self,
        body: &RecurBody<'_, i64, ChoiceBag>,
        z: &ChoiceBag,
        l: &ChoiceBag,
    ) -> Result<ChoiceBag, SemError> {
        let mut out = Vec::new();
        for c in l.iter() {
            self.alive()?;
            match c.split_first() {
                None => out.extend(z.iter().cloned()),
                Some((h, t)) => {
                    let tail = ChoiceBag::single(t.to_vec());
                    let rec = || self.recur(body, z, &tail);
                    out.extend(body(h, &tail, &rec)?.0);
                }
            }
        }
        let bag = self.emit(out);
        self.alive()?;
        Ok(bag)
    }

    fn fail(&self) -> ChoiceBag {
        ChoiceBag::empty()
    }

    fn choice(&self, a: &ChoiceBag, b: &ChoiceBag) -> ChoiceBag {
        self.emit(ListSemantics.choice(a, b).0)
    }

    fn rid(&self, pred: Pred, l: &ChoiceBag) -> Result<ChoiceBag, SemError> {
        self.alive()?;
        ListSemantics.rid(pred, l)
    }

    fn once(&self, l: &ChoiceBag) -> Result<ChoiceBag, SemError> {
        self.alive()?;
        ListSemantics.once(l)
    }

    fn run(&self, l: &ChoiceBag) -> Result<ChoiceBag, SemError> {
        self.alive()?;
        Ok(l.clone())
    }
}

/// Whether the list-of-successes evaluation of `t` builds at most `budget`
/// list cells.
pub fn within_budget(t: &Term, budget: u64) -> bool {
    let m = Metered {
        fuel: Cell::new(budget),
        budget,
    };
    m.observe(t).is_ok()
}

/// `count` closed terms from one seed.
pub fn gen_terms(cfg: &GenConfig, count: usize) -> Vec<Term> {
    let mut g = TermGen::new(cfg.clone());
    (0..count).map(|_| g.term()).collect()
}

/// A single closed term; a pure function of the config.
pub fn gen_term(cfg: &GenConfig) -> Term {
    TermGen::new(cfg.clone()).term()
}

pub fn gen_law_cases(cfg: &GenConfig, count: usize) -> Vec<LawCase> {
    let mut g = TermGen::new(cfg.clone());
    (0..count).map(|_| g.law_case()).collect()
}

pub const PERM_ORACLE_MAX_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("permutation oracle is limited to {PERM_ORACLE_MAX_LEN} elements, got {0}")]
pub struct OracleTooLong(pub usize);

/// All permutations by repeated insertion, front position first, in the
/// order the `perm` program enumerates them.
pub fn perm_oracle(xs: &[i64]) -> Result<ChoiceBag, OracleTooLong> {
    if xs.len() > PERM_ORACLE_MAX_LEN {
        return Err(OracleTooLong(xs.len()));
    }
    let mut perms: Vec<Vec<i64>> = vec![Vec::new()];
    for &x in xs.iter().rev() {
        let mut next = Vec::with_capacity(perms.len() * (perms[0].len() + 1));
        for p in &perms {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, x);
                next.push(q);
            }
        }
        perms = next;
    }
    Ok(ChoiceBag(perms))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Disagree {
        backend: String,
        expected: ChoiceBag,
        got: ChoiceBag,
    },
    Error {
        backend: String,
        message: String,
    },
    ChoicesUnderestimated {
        count: usize,
        degree: NdetDeg,
    },
    FailureMissed {
        degree: NdetDeg,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disagree {
                backend,
                expected,
                got,
            } => {
                write!(
                    f,
                    "`{backend}` observed {got}, list back-end observed {expected}"
                )
            }
            Violation::Error { backend, message } => write!(f, "`{backend}` failed: {message}"),
            Violation::ChoicesUnderestimated { count, degree } => {
                write!(
                    f,
                    "{count} choice(s) observed but analysis bound is {degree}"
                )
            }
            Violation::FailureMissed { degree } => {
                write!(f, "no choices observed but analysis says {degree}")
            }
        }
    }
}

/// Everything learned about one term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    pub term: String,
    pub observed: Option<ChoiceBag>,
    pub degree: Option<NdetDeg>,
    pub violations: Vec<Violation>,
}

impl CrossReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CrossReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "term {}", self.term)?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Compare the list back-end against the chunked and compiled back-ends
/// (and any `extra` observers), and check the analysis is sound for the
/// observed result.
pub fn cross_check_with(t: &Term, extra: &[&dyn Observer]) -> CrossReport {
    let mut report = CrossReport {
        term: t.to_string(),
        observed: None,
        degree: None,
        violations: Vec::new(),
    };
    let expected = match ListSemantics.observe(t) {
        Ok(b) => b,
        Err(e) => {
            report.violations.push(Violation::Error {
                backend: "list".into(),
                message: e.to_string(),
            });
            return report;
        }
    };
    let chunked = ChunkedSemantics::default();
    let mut others: Vec<&dyn Observer> = vec![&chunked, &Compiled];
    others.extend_from_slice(extra);
    for o in others {
        match o.observe(t) {
            Ok(got) if got == expected => {}
            Ok(got) => report.violations.push(Violation::Disagree {
                backend: o.backend_name().to_string(),
                expected: expected.clone(),
                got,
            }),
            Err(e) => report.violations.push(Violation::Error {
                backend: o.backend_name().to_string(),
                message: e.to_string(),
            }),
        }
    }
    match analyze(t) {
        Ok(d) => {
            if !d.choices.bounds(expected.len()) {
                report.violations.push(Violation::ChoicesUnderestimated {
                    count: expected.len(),
                    degree: d,
                });
            }
            if !d.can_fail && expected.is_empty() {
                report
                    .violations
                    .push(Violation::FailureMissed { degree: d });
            }
            report.degree = Some(d);
        }
        Err(e) => report.violations.push(Violation::Error {
            backend: "abstract".into(),
            message: e.to_string(),
        }),
    }
    report.observed = Some(expected);
    report
}

pub fn cross_check(t: &Term) -> CrossReport {
    cross_check_with(t, &[])
}
