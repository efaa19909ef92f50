//! The equational laws every back-end must satisfy, checked by observation.
//!
//! Recursor laws:
//!
//! ```text
//! recur c n nil          = n
//! recur c n (cons h t)   = c (h, t) (fun () -> recur c n t)
//! ```
//!
//! Choice and failure laws:
//!
//! ```text
//! cons x fail            = fail
//! cons x (l1 ||| l2)     = cons x l1 ||| cons x l2
//! recur c n fail         = fail
//! recur c n (l1 ||| l2)  = recur c n l1 ||| recur c n l2
//! (l1 ||| l2) ||| l3     = l1 ||| (l2 ||| l3)
//! ```
//!
//! Both sides are built as terms, observed under the back-end, and the
//! observed choice bags compared for exact (ordered) equality.

use std::fmt;

use crate::sem::{ChoiceBag, Observer, SemError};
use crate::term::{IntTerm, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    RecurNil,
    RecurCons,
    ConsFail,
    ConsChoice,
    RecurFail,
    RecurChoice,
    ChoiceAssoc,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::RecurNil,
        Identity::RecurCons,
        Identity::ConsFail,
        Identity::ConsChoice,
        Identity::RecurFail,
        Identity::RecurChoice,
        Identity::ChoiceAssoc,
    ];

    pub fn equation(self) -> &'static str {
        match self {
            Identity::RecurNil => "recur c n nil = n",
            Identity::RecurCons => "recur c n (cons h t) = c (h,t) (fun () -> recur c n t)",
            Identity::ConsFail => "cons x fail = fail",
            Identity::ConsChoice => "cons x (l1 ||| l2) = cons x l1 ||| cons x l2",
            Identity::RecurFail => "recur c n fail = fail",
            Identity::RecurChoice => "recur c n (l1 ||| l2) = recur c n l1 ||| recur c n l2",
            Identity::ChoiceAssoc => "(l1 ||| l2) ||| l3 = l1 ||| (l2 ||| l3)",
        }
    }

    /// Left- and right-hand sides for one instantiation.
    pub fn sides(self, c: &LawCase) -> (Term, Term) {
        let recur = |l: Term| Term::recur(c.body.clone(), c.n.clone(), l);
        let x = IntTerm::Lit(c.x);
        match self {
            Identity::RecurNil => (recur(Term::Nil), c.n.clone()),
            Identity::RecurCons => {
                let t = Term::List(c.t.clone());
                let lhs = recur(Term::cons(IntTerm::Lit(c.h), t.clone()));
                let rhs = c.body.instantiate(IntTerm::Lit(c.h), &t, &recur(t.clone()));
                (lhs, rhs)
            }
            Identity::ConsFail => (Term::cons(x, Term::Fail), Term::Fail),
            Identity::ConsChoice => (
                Term::cons(x, Term::choice(c.l1.clone(), c.l2.clone())),
                Term::choice(Term::cons(x, c.l1.clone()), Term::cons(x, c.l2.clone())),
            ),
            Identity::RecurFail => (recur(Term::Fail), Term::Fail),
            Identity::RecurChoice => (
                recur(Term::choice(c.l1.clone(), c.l2.clone())),
                Term::choice(recur(c.l1.clone()), recur(c.l2.clone())),
            ),
            Identity::ChoiceAssoc => (
                Term::choice(Term::choice(c.l1.clone(), c.l2.clone()), c.l3.clone()),
                Term::choice(c.l1.clone(), Term::choice(c.l2.clone(), c.l3.clone())),
            ),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.equation())
    }
}

/// Values for the metavariables of the laws. `body` is a recursor body (it
/// may use `h`, `t` and `(r)` of one binder); everything else is closed.
/// `h` and `t` are literal values: the recursor law holds for values, not
/// for nondeterministic computations of the tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCase {
    pub x: i64,
    pub h: i64,
    pub t: Vec<i64>,
    pub body: Term,
    pub n: Term,
    pub l1: Term,
    pub l2: Term,
    pub l3: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub identity: Identity,
    pub case: usize,
    pub lhs: ChoiceBag,
    pub rhs: ChoiceBag,
}

impl LawOutcome {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub backend: String,
    pub cases: Vec<LawCase>,
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn violations(&self) -> impl Iterator<Item = &LawOutcome> {
        self.outcomes.iter().filter(|o| !o.holds())
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }

    /// `(passed, total)` for one identity.
    pub fn tally(&self, id: Identity) -> (usize, usize) {
        let of_id = self.outcomes.iter().filter(|o| o.identity == id);
        let total = of_id.clone().count();
        (of_id.filter(|o| o.holds()).count(), total)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "law suite under `{}`: {} case(s)",
            self.backend,
            self.cases.len()
        )?;
        for id in Identity::ALL {
            let (ok, total) = self.tally(id);
            let mark = if ok == total { "PASS" } else { "FAIL" };
            writeln!(f, "  [{mark}] {ok}/{total}  {}", id.equation())?;
        }
        for v in self.violations() {
            let (lhs, rhs) = v.identity.sides(&self.cases[v.case]);
            writeln!(f, "  violation of `{}` in case {}:", v.identity, v.case)?;
            writeln!(f, "    lhs {lhs}\n      => {}", v.lhs)?;
            writeln!(f, "    rhs {rhs}\n      => {}", v.rhs)?;
        }
        write!(f, "violations: {}", self.violations().count())
    }
}

/// Check every identity on every case under `sem`.
///
/// Fails only if the back-end cannot observe (or otherwise errors); law
/// violations are reported, not raised.
pub fn law_suite(sem: &dyn Observer, cases: &[LawCase]) -> Result<LawReport, SemError> {
    let mut outcomes = Vec::with_capacity(cases.len() * Identity::ALL.len());
    for (i, c) in cases.iter().enumerate() {
        for id in Identity::ALL {
            let (lhs, rhs) = id.sides(c);
            outcomes.push(LawOutcome {
                identity: id,
                case: i,
                lhs: sem.observe(&lhs)?,
                rhs: sem.observe(&rhs)?,
            });
        }
    }
    Ok(LawReport {
        backend: sem.backend_name().to_string(),
        cases: cases.to_vec(),
        outcomes,
    })
}
