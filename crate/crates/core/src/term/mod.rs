//! Reified terms of the language.
//!
//! A recursor body may refer to the head, tail and recursion thunk of any
//! enclosing `recur`. References carry a binder depth: 0 names the
//! innermost enclosing recursor, 1 the one around it, and so on. This is
//! what lets `insert x` be used inside the body of `foldr`, where `x` is the
//! outer recursor's head.

pub mod eval;
pub mod programs;
pub mod syntax;

use std::fmt;

/// Integer-sort terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntTerm {
    Lit(i64),
    /// Head of the recursor `depth` binders out.
    Head(usize),
}

/// List-sort terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Nil,
    Cons(IntTerm, Box<Term>),
    List(Vec<i64>),
    Fail,
    Choice(Box<Term>, Box<Term>),
    Recur {
        body: Box<Term>,
        z: Box<Term>,
        l: Box<Term>,
    },
    RId(Pred, Box<Term>),
    Once(Box<Term>),
    /// Tail of the recursor `depth` binders out.
    Tail(usize),
    /// Forces the recursion thunk of the recursor `depth` binders out.
    Rec(usize),
}

/// Built-in predicates on integer lists, usable with `rid`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pred {
    /// Non-increasing: every element is `>=` its successor.
    Sorted,
    LenAtMost(u32),
    SumEven,
}

impl Pred {
    pub fn holds(self, xs: &[i64]) -> bool {
        match self {
            Pred::Sorted => xs.windows(2).all(|w| w[0] >= w[1]),
            Pred::LenAtMost(k) => xs.len() <= k as usize,
            Pred::SumEven => xs.iter().fold(0i64, |acc, x| acc.wrapping_add(*x)) % 2 == 0,
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pred::Sorted => f.write_str("sorted"),
            Pred::LenAtMost(k) => write!(f, "(len<= {k})"),
            Pred::SumEven => f.write_str("sum-even"),
        }
    }
}

impl IntTerm {
    pub(crate) fn shift(self, by: usize, cutoff: usize) -> IntTerm {
        match self {
            IntTerm::Head(d) if d >= cutoff => IntTerm::Head(d + by),
            other => other,
        }
    }
}

impl Term {
    pub fn cons(x: IntTerm, l: Term) -> Term {
        Term::Cons(x, Box::new(l))
    }

    pub fn choice(a: Term, b: Term) -> Term {
        Term::Choice(Box::new(a), Box::new(b))
    }

    pub fn recur(body: Term, z: Term, l: Term) -> Term {
        Term::Recur {
            body: Box::new(body),
            z: Box::new(z),
            l: Box::new(l),
        }
    }

    pub fn rid(p: Pred, l: Term) -> Term {
        Term::RId(p, Box::new(l))
    }

    pub fn once(l: Term) -> Term {
        Term::Once(Box::new(l))
    }

    /// Raise every binder reference that escapes `cutoff` enclosing binders
    /// by `by`. Needed when a term is moved under `by` new recursors.
    pub fn shift(&self, by: usize) -> Term {
        self.shift_from(by, 0)
    }

    fn shift_from(&self, by: usize, cutoff: usize) -> Term {
        match self {
            Term::Nil | Term::Fail | Term::List(_) => self.clone(),
            Term::Cons(x, l) => Term::cons(x.shift(by, cutoff), l.shift_from(by, cutoff)),
            Term::Choice(a, b) => Term::choice(a.shift_from(by, cutoff), b.shift_from(by, cutoff)),
            Term::Recur { body, z, l } => Term::recur(
                body.shift_from(by, cutoff + 1),
                z.shift_from(by, cutoff),
                l.shift_from(by, cutoff),
            ),
            Term::RId(p, l) => Term::rid(*p, l.shift_from(by, cutoff)),
            Term::Once(l) => Term::once(l.shift_from(by, cutoff)),
            Term::Tail(d) if *d >= cutoff => Term::Tail(d + by),
            Term::Rec(d) if *d >= cutoff => Term::Rec(d + by),
            Term::Tail(_) | Term::Rec(_) => self.clone(),
        }
    }

    /// Instantiate a recursor body: replace references to the innermost
    /// binder with `head`, `tail` and `rec`, lowering outer references by
    /// one. The replacements are interpreted in the scope outside the body.
    pub fn instantiate(&self, head: IntTerm, tail: &Term, rec: &Term) -> Term {
        self.subst_at(0, head, tail, rec)
    }

    fn subst_at(&self, level: usize, head: IntTerm, tail: &Term, rec: &Term) -> Term {
        let go = |t: &Term| t.subst_at(level, head, tail, rec);
        match self {
            Term::Nil | Term::Fail | Term::List(_) => self.clone(),
            Term::Cons(x, l) => {
                let x = match *x {
                    IntTerm::Head(d) if d == level => head.shift(level, 0),
                    IntTerm::Head(d) if d > level => IntTerm::Head(d - 1),
                    other => other,
                };
                Term::cons(x, go(l))
            }
            Term::Choice(a, b) => Term::choice(go(a), go(b)),
            Term::Recur { body, z, l } => {
                Term::recur(body.subst_at(level + 1, head, tail, rec), go(z), go(l))
            }
            Term::RId(p, l) => Term::rid(*p, go(l)),
            Term::Once(l) => Term::once(go(l)),
            Term::Tail(d) if *d == level => tail.shift(level),
            Term::Rec(d) if *d == level => rec.shift(level),
            Term::Tail(d) if *d > level => Term::Tail(d - 1),
            Term::Rec(d) if *d > level => Term::Rec(d - 1),
            Term::Tail(_) | Term::Rec(_) => self.clone(),
        }
    }

    /// Number of enclosing binders this term needs; 0 for a closed term.
    pub fn free_depth(&self) -> usize {
        match self {
            Term::Nil | Term::Fail | Term::List(_) => 0,
            Term::Cons(IntTerm::Head(d), l) => (d + 1).max(l.free_depth()),
            Term::Cons(IntTerm::Lit(_), l) => l.free_depth(),
            Term::Choice(a, b) => a.free_depth().max(b.free_depth()),
            Term::Recur { body, z, l } => body
                .free_depth()
                .saturating_sub(1)
                .max(z.free_depth())
                .max(l.free_depth()),
            Term::RId(_, l) | Term::Once(l) => l.free_depth(),
            Term::Tail(d) | Term::Rec(d) => d + 1,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_depth() == 0
    }

    /// Whether the term uses `rid` or `once` anywhere.
    pub fn uses_committed_choice(&self) -> bool {
        match self {
            Term::RId(..) | Term::Once(_) => true,
            Term::Cons(_, l) => l.uses_committed_choice(),
            Term::Choice(a, b) => a.uses_committed_choice() || b.uses_committed_choice(),
            Term::Recur { body, z, l } => {
                body.uses_committed_choice()
                    || z.uses_committed_choice()
                    || l.uses_committed_choice()
            }
            _ => false,
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Cons(_, l) | Term::RId(_, l) | Term::Once(l) => 1 + l.size(),
            Term::Choice(a, b) => 1 + a.size() + b.size(),
            Term::Recur { body, z, l } => 1 + body.size() + z.size() + l.size(),
            _ => 1,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_is_non_increasing() {
        assert!(Pred::Sorted.holds(&[]));
        assert!(Pred::Sorted.holds(&[4]));
        assert!(Pred::Sorted.holds(&[3, 3, 1]));
        assert!(!Pred::Sorted.holds(&[1, 2]));
    }

    #[test]
    fn other_predicates() {
        assert!(Pred::LenAtMost(2).holds(&[1, 2]));
        assert!(!Pred::LenAtMost(2).holds(&[1, 2, 3]));
        assert!(Pred::SumEven.holds(&[]));
        assert!(Pred::SumEven.holds(&[1, 3]));
        assert!(!Pred::SumEven.holds(&[1, 2]));
    }

    #[test]
    fn closedness() {
        assert!(Term::List(vec![1]).is_closed());
        assert!(!Term::Tail(0).is_closed());
        let t = Term::recur(
            Term::cons(IntTerm::Head(0), Term::Rec(0)),
            Term::Nil,
            Term::Nil,
        );
        assert!(t.is_closed());
        let open = Term::recur(Term::Tail(1), Term::Nil, Term::Nil);
        assert_eq!(open.free_depth(), 1);
    }

    #[test]
    fn shift_skips_bound_references() {
        let body = Term::choice(Term::Tail(0), Term::cons(IntTerm::Head(1), Term::Rec(1)));
        let t = Term::recur(body, Term::Tail(0), Term::Nil);
        let shifted = t.shift(2);
        let expected = Term::recur(
            Term::choice(Term::Tail(0), Term::cons(IntTerm::Head(3), Term::Rec(3))),
            Term::Tail(2),
            Term::Nil,
        );
        assert_eq!(shifted, expected);
    }

    #[test]
    fn instantiate_replaces_innermost_binder() {
        // cons h (choice t (r)) with an inner recursor referring to h 1
        let inner = Term::recur(
            Term::cons(IntTerm::Head(1), Term::Tail(0)),
            Term::Nil,
            Term::Tail(0),
        );
        let body = Term::choice(Term::cons(IntTerm::Head(0), Term::Rec(0)), inner);
        let rec = Term::List(vec![9]);
        let got = body.instantiate(IntTerm::Lit(5), &Term::List(vec![7]), &rec);
        let expected = Term::choice(
            Term::cons(IntTerm::Lit(5), Term::List(vec![9])),
            Term::recur(
                Term::cons(IntTerm::Lit(5), Term::Tail(0)),
                Term::Nil,
                Term::List(vec![7]),
            ),
        );
        assert_eq!(got, expected);
    }
}
