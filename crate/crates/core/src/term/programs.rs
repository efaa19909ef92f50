//! The program library, written as term-building macros in Rust.
//!
//! Each builder takes its arguments as terms valid in the caller's scope
//! and returns a term valid in that same scope.

use crate::sem::{SemError, Semantics};
use crate::term::eval::eval_list;
use crate::term::{IntTerm, Pred, Term};

/// `foldr c z l`. `c` is handed the head and the recursive result, both as
/// terms valid inside the new recursor body.
pub fn foldr(c: impl FnOnce(IntTerm, Term) -> Term, z: Term, l: Term) -> Term {
    Term::recur(c(IntTerm::Head(0), Term::Rec(0)), z, l)
}

/// Insert `x` at some position of `l`.
pub fn insert(x: IntTerm, l: Term) -> Term {
    let x_in_body = x.shift(1, 0);
    let body = Term::choice(
        Term::cons(x_in_body, Term::cons(IntTerm::Head(0), Term::Tail(0))),
        Term::cons(IntTerm::Head(0), Term::Rec(0)),
    );
    Term::recur(body, Term::cons(x, Term::Nil), l)
}

/// Some permutation of `l`.
pub fn perm(l: Term) -> Term {
    foldr(insert, Term::Nil, l)
}

/// A non-increasing permutation of `l`, committed to the first one found.
pub fn sort(l: Term) -> Term {
    Term::once(Term::rid(Pred::Sorted, perm(l)))
}

pub fn insert_term(x: i64, xs: &[i64]) -> Term {
    insert(IntTerm::Lit(x), Term::List(xs.to_vec()))
}

pub fn perm_term(xs: &[i64]) -> Term {
    perm(Term::List(xs.to_vec()))
}

pub fn sort_term(xs: &[i64]) -> Term {
    sort(Term::List(xs.to_vec()))
}

/// All permutations of `input` under `sem`.
pub fn perm_program<S: Semantics + ?Sized>(sem: &S, input: &[i64]) -> Result<S::List, SemError> {
    eval_list(sem, &perm_term(input))
}

/// One sorted permutation of `input` under `sem`; needs `rid` and `once`.
pub fn sort_program<S: Semantics + ?Sized>(sem: &S, input: &[i64]) -> Result<S::List, SemError> {
    eval_list(sem, &sort_term(input))
}
