//! Compiling terms to residual target programs.
//!
//! The compiler is one more [`Semantics`]: an integer means the target
//! expression computing it, and a list computation means a [`StagedList`],
//! which records whether the set of alternatives is known at compile time.
//! `K` holds one target expression per alternative; `U` holds a single
//! expression computing the whole list of choices at run time.

pub mod exec;
pub mod target;

use std::cell::Cell;

use crate::sem::{ChoiceBag, Observer, RecurBody, SemError, Semantics};
use crate::term::eval::eval_list;
use crate::term::{Pred, Term};

pub use exec::{exec, ExecError};
pub use target::{TargetExpr, TargetProgram};

/// Binding-time annotated list computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StagedList {
    /// Statically known alternatives, each an expression of one list.
    K(Vec<TargetExpr>),
    /// Expression computing the list of choices.
    U(TargetExpr),
}

impl StagedList {
    pub fn is_static(&self) -> bool {
        matches!(self, StagedList::K(_))
    }
}

/// Forget what is known statically.
pub fn dyn_list(s: &StagedList) -> TargetExpr {
    match s {
        StagedList::K(alts) => alts
            .iter()
            .rev()
            .fold(TargetExpr::Nil, |acc, a| TargetExpr::cons(a.clone(), acc)),
        StagedList::U(e) => e.clone(),
    }
}

/// Fresh names of the form `<kind>_<n>`.
#[derive(Debug, Default)]
pub struct NameSupply {
    counter: Cell<usize>,
}

impl NameSupply {
    pub fn fresh(&self, kind: &str) -> String {
        let n = self.counter.get() + 1;
        self.counter.set(n);
        format!("{kind}_{n}")
    }

    pub fn reset(&self) {
        self.counter.set(0);
    }
}

/// The staged interpreter. Holds the name supply of one compilation.
#[derive(Debug, Default)]
pub struct Stager {
    names: NameSupply,
}

impl Stager {
    pub fn new() -> Self {
        Self::default()
    }

    /// `recur` over a single statically known list: a local recursive
    /// function applied to it.
    fn recur1(
        &self,
        body: &RecurBody<'_, TargetExpr, StagedList>,
        z: &StagedList,
        l: TargetExpr,
    ) -> Result<StagedList, SemError> {
        let func = self.names.fresh("go");
        let param = self.names.fresh("l");
        let head = self.names.fresh("h");
        let tail = self.names.fresh("t");
        let rec_call = TargetExpr::Call(func.clone(), Box::new(TargetExpr::var(&tail)));
        let on_cons = body(
            &TargetExpr::var(&head),
            &StagedList::K(vec![TargetExpr::var(&tail)]),
            &|| Ok(StagedList::U(rec_call.clone())),
        )?;
        Ok(StagedList::U(TargetExpr::LetRecMatch {
            func,
            param,
            on_nil: Box::new(dyn_list(z)),
            head,
            tail,
            on_cons: Box::new(dyn_list(&on_cons)),
            arg: Box::new(l),
        }))
    }
}

fn is_trivial(x: &TargetExpr) -> bool {
    matches!(x, TargetExpr::Var(_) | TargetExpr::IntLit(_))
}

/// The integer list an alternative denotes, if it is a closed literal.
fn literal(e: &TargetExpr) -> Option<Vec<i64>> {
    match e {
        TargetExpr::Nil => Some(Vec::new()),
        TargetExpr::ListLit(xs) => Some(xs.clone()),
        TargetExpr::Cons(x, rest) => match x.as_ref() {
            TargetExpr::IntLit(n) => {
                let mut v = vec![*n];
                v.extend(literal(rest)?);
                Some(v)
            }
            _ => None,
        },
        _ => None,
    }
}

impl Semantics for Stager {
    type Int = TargetExpr;
    type List = StagedList;

    fn name(&self) -> &'static str {
        "compiled"
    }

    fn int(&self, n: i64) -> TargetExpr {
        TargetExpr::IntLit(n)
    }

    fn nil(&self) -> StagedList {
        StagedList::K(vec![TargetExpr::Nil])
    }

    // A non-trivial head is let-bound once rather than copied into every
    // alternative.
    fn cons(&self, x: &TargetExpr, l: &StagedList) -> StagedList {
        match l {
            StagedList::K(alts) if is_trivial(x) || alts.len() <= 1 => StagedList::K(
                alts.iter()
                    .map(|a| TargetExpr::cons(x.clone(), a.clone()))
                    .collect(),
            ),
            StagedList::U(ll) if is_trivial(x) => {
                StagedList::U(TargetExpr::map_cons(x.clone(), ll.clone()))
            }
            _ => {
                let name = self.names.fresh("v");
                let var = TargetExpr::var(&name);
                let inner = match l {
                    StagedList::K(alts) => dyn_list(&StagedList::K(
                        alts.iter()
                            .map(|a| TargetExpr::cons(var.clone(), a.clone()))
                            .collect(),
                    )),
                    StagedList::U(ll) => TargetExpr::map_cons(var, ll.clone()),
                };
                StagedList::U(TargetExpr::Let {
                    name,
                    bound: Box::new(x.clone()),
                    body: Box::new(inner),
                })
            }
        }
    }

    fn list(&self, xs: &[i64]) -> StagedList {
        StagedList::K(vec![TargetExpr::ListLit(xs.to_vec())])
    }

    fn recur(
        &self,
        body: &RecurBody<'_, TargetExpr, StagedList>,
        z: &StagedList,
        l: &StagedList,
    ) -> Result<StagedList, SemError> {
        match l {
            StagedList::K(alts) if alts.is_empty() => Ok(StagedList::K(Vec::new())),
            StagedList::K(alts) if alts.len() == 1 => self.recur1(body, z, alts[0].clone()),
            _ => {
                let param = self.names.fresh("l");
                let per_choice = self.recur1(body, z, TargetExpr::var(&param))?;
                Ok(StagedList::U(TargetExpr::ConcatMap {
                    param,
                    body: Box::new(dyn_list(&per_choice)),
                    list: Box::new(dyn_list(l)),
                }))
            }
        }
    }

    fn fail(&self) -> StagedList {
        StagedList::K(Vec::new())
    }

    fn choice(&self, a: &StagedList, b: &StagedList) -> StagedList {
        match (a, b) {
            (StagedList::K(a), StagedList::K(b)) => {
                StagedList::K(a.iter().chain(b).cloned().collect())
            }
            (StagedList::K(alts), StagedList::U(ll)) => StagedList::U(
                alts.iter()
                    .rev()
                    .fold(ll.clone(), |acc, x| TargetExpr::cons(x.clone(), acc)),
            ),
            // the static alternatives come second, so they cannot be
            // folded onto the front
            (StagedList::U(ll), k @ StagedList::K(_)) => {
                StagedList::U(TargetExpr::append(ll.clone(), dyn_list(k)))
            }
            (StagedList::U(a), StagedList::U(b)) => {
                StagedList::U(TargetExpr::append(a.clone(), b.clone()))
            }
        }
    }

    fn rid(&self, pred: Pred, l: &StagedList) -> Result<StagedList, SemError> {
        if let StagedList::K(alts) = l {
            let lits: Option<Vec<Vec<i64>>> = alts.iter().map(literal).collect();
            if let Some(lits) = lits {
                return Ok(StagedList::K(
                    alts.iter()
                        .zip(&lits)
                        .filter(|(_, v)| pred.holds(v))
                        .map(|(a, _)| a.clone())
                        .collect(),
                ));
            }
        }
        Ok(StagedList::U(TargetExpr::Filter(
            pred,
            Box::new(dyn_list(l)),
        )))
    }

    fn once(&self, l: &StagedList) -> Result<StagedList, SemError> {
        Ok(match l {
            StagedList::K(alts) => StagedList::K(alts.first().cloned().into_iter().collect()),
            StagedList::U(e) => StagedList::U(TargetExpr::TakeFirst(Box::new(e.clone()))),
        })
    }

    fn run(&self, l: &StagedList) -> Result<ChoiceBag, SemError> {
        Ok(exec(&TargetProgram(dyn_list(l)))?)
    }
}

/// Staged meaning of a closed term, before erasing binding times.
pub fn stage(t: &Term) -> Result<StagedList, SemError> {
    eval_list(&Stager::new(), t)
}

/// Residual program for a closed term. Names restart from 1 on every call.
pub fn compile(t: &Term) -> Result<TargetProgram, SemError> {
    stage(t).map(|s| TargetProgram(dyn_list(&s)))
}

/// Observation through compilation followed by execution.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compiled;

impl Observer for Compiled {
    fn backend_name(&self) -> &str {
        "compiled"
    }

    fn observe(&self, t: &Term) -> Result<ChoiceBag, SemError> {
        Ok(exec(&compile(t)?)?)
    }
}
