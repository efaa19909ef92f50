//! The operation family every back-end implements.
//!
//! A back-end picks two carrier types, one for integer expressions and one
//! for integer-list expressions, and says how each language construct
//! combines the meanings of its parts. The committed-choice operations
//! ([`Semantics::rid`], [`Semantics::once`]) and the observation
//! [`Semantics::run`] are optional: the default implementations report
//! [`SemError::Unsupported`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codegen::exec::ExecError;
use crate::term::{Pred, Term};

/// The observable outcome of a list computation: every choice it can
/// produce, in the order the depth-first search finds them. Duplicates are
/// kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChoiceBag(pub Vec<Vec<i64>>);

impl ChoiceBag {
    pub fn empty() -> Self {
        ChoiceBag(Vec::new())
    }

    pub fn single(xs: Vec<i64>) -> Self {
        ChoiceBag(vec![xs])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec<i64>> {
        self.0.iter()
    }

    /// Compact JSON, e.g. `[[1,2],[2,1]]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("integer lists always serialize")
    }
}

impl From<Vec<Vec<i64>>> for ChoiceBag {
    fn from(v: Vec<Vec<i64>>) -> Self {
        ChoiceBag(v)
    }
}

impl fmt::Display for ChoiceBag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemError {
    #[error("back-end `{backend}` does not support `{op}`")]
    Unsupported {
        backend: &'static str,
        op: &'static str,
    },
    #[error("`{var}` at binder depth {depth} is not bound by an enclosing recur")]
    Unbound { var: &'static str, depth: usize },
    #[error("evaluation budget of {0} exhausted")]
    Exhausted(u64),
    #[error(transparent)]
    Exec(#[from] ExecError),
}

/// The body of a recursor: receives the head, the (deterministic) tail and
/// a thunk that computes the recursion over the tail.
pub type RecurBody<'a, I, L> =
    dyn Fn(&I, &L, &dyn Fn() -> Result<L, SemError>) -> Result<L, SemError> + 'a;

pub trait Semantics {
    type Int: Clone;
    type List: Clone;

    fn name(&self) -> &'static str;

    fn int(&self, n: i64) -> Self::Int;
    fn nil(&self) -> Self::List;
    fn cons(&self, x: &Self::Int, l: &Self::List) -> Self::List;
    fn list(&self, xs: &[i64]) -> Self::List;

    /// `recur body z l`: `z` for an empty list, otherwise `body (h, t) thunk`
    /// where forcing `thunk` yields `recur body z t`.
    fn recur(
        &self,
        body: &RecurBody<'_, Self::Int, Self::List>,
        z: &Self::List,
        l: &Self::List,
    ) -> Result<Self::List, SemError>;

    fn fail(&self) -> Self::List;
    fn choice(&self, a: &Self::List, b: &Self::List) -> Self::List;

    /// Keep only the choices satisfying `pred`.
    fn rid(&self, _pred: Pred, _l: &Self::List) -> Result<Self::List, SemError> {
        Err(SemError::Unsupported {
            backend: self.name(),
            op: "rid",
        })
    }

    /// Commit to the first choice, if there is one.
    fn once(&self, _l: &Self::List) -> Result<Self::List, SemError> {
        Err(SemError::Unsupported {
            backend: self.name(),
            op: "once",
        })
    }

    fn run(&self, _l: &Self::List) -> Result<ChoiceBag, SemError> {
        Err(SemError::Unsupported {
            backend: self.name(),
            op: "run",
        })
    }
}

/// Anything that can turn a closed term into its observed choices.
///
/// Every [`Semantics`] is an observer (evaluate, then `run`); harnesses that
/// compare back-ends work through this object-safe view.
pub trait Observer {
    fn backend_name(&self) -> &str;
    fn observe(&self, t: &Term) -> Result<ChoiceBag, SemError>;
}

impl<S: Semantics> Observer for S {
    fn backend_name(&self) -> &str {
        self.name()
    }

    fn observe(&self, t: &Term) -> Result<ChoiceBag, SemError> {
        let l = crate::eval_list(self, t)?;
        self.run(&l)
    }
}
