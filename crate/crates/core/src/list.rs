//! List-of-successes back-end: a list computation means the ordered bag of
//! all the lists it may produce.

use crate::sem::{ChoiceBag, RecurBody, SemError, Semantics};
use crate::term::Pred;

#[derive(Debug, Clone, Copy, Default)]
pub struct ListSemantics;

impl Semantics for ListSemantics {
    type Int = i64;
    type List = ChoiceBag;

    fn name(&self) -> &'static str {
        "list"
    }

    fn int(&self, n: i64) -> i64 {
        n
    }

    fn nil(&self) -> ChoiceBag {
        ChoiceBag::single(Vec::new())
    }

    fn cons(&self, x: &i64, l: &ChoiceBag) -> ChoiceBag {
        l.iter()
            .map(|c| {
                let mut v = Vec::with_capacity(c.len() + 1);
                v.push(*x);
                v.extend_from_slice(c);
                v
            })
            .collect::<Vec<_>>()
            .into()
    }

    fn list(&self, xs: &[i64]) -> ChoiceBag {
        ChoiceBag::single(xs.to_vec())
    }

    // The thunk recomputes the recursion every time it is forced.
    fn recur(
        &self,
        body: &RecurBody<'_, i64, ChoiceBag>,
        z: &ChoiceBag,
        l: &ChoiceBag,
    ) -> Result<ChoiceBag, SemError> {
        let mut out = Vec::new();
        for c in l.iter() {
            match c.split_first() {
                None => out.extend(z.iter().cloned()),
                Some((h, t)) => {
                    let tail = self.list(t);
                    let rec = || self.recur(body, z, &tail);
                    out.extend(body(h, &tail, &rec)?.0);
                }
            }
        }
        Ok(ChoiceBag(out))
    }

    fn fail(&self) -> ChoiceBag {
        ChoiceBag::empty()
    }

    fn choice(&self, a: &ChoiceBag, b: &ChoiceBag) -> ChoiceBag {
        a.iter().chain(b.iter()).cloned().collect::<Vec<_>>().into()
    }

    fn rid(&self, pred: Pred, l: &ChoiceBag) -> Result<ChoiceBag, SemError> {
        Ok(l.iter()
            .filter(|c| pred.holds(c))
            .cloned()
            .collect::<Vec<_>>()
            .into())
    }

    fn once(&self, l: &ChoiceBag) -> Result<ChoiceBag, SemError> {
        Ok(l.0.first().cloned().into_iter().collect::<Vec<_>>().into())
    }

    fn run(&self, l: &ChoiceBag) -> Result<ChoiceBag, SemError> {
        Ok(l.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::programs::{insert_term, perm_program, perm_term, sort_program};
    use crate::term::{IntTerm, Term};
    use crate::{eval_list, Observer};

    const L: ListSemantics = ListSemantics;

    fn bag(v: &[&[i64]]) -> ChoiceBag {
        ChoiceBag(v.iter().map(|c| c.to_vec()).collect())
    }

    #[test]
    fn literals() {
        assert_eq!(L.nil(), bag(&[&[]]));
        assert_eq!(L.list(&[1, 2, 3]), bag(&[&[1, 2, 3]]));
        assert_eq!(
            L.observe(&Term::List(vec![1, 2, 3])).unwrap(),
            bag(&[&[1, 2, 3]])
        );
    }

    #[test]
    fn cons_maps_prefix() {
        assert_eq!(L.cons(&7, &L.fail()), ChoiceBag::empty());
        assert_eq!(L.cons(&1, &bag(&[&[2], &[3]])), bag(&[&[1, 2], &[1, 3]]));
    }

    #[test]
    fn choice_concatenates() {
        let (a, b, c) = (bag(&[&[1]]), bag(&[&[2]]), bag(&[&[3]]));
        assert_eq!(L.choice(&a, &b), bag(&[&[1], &[2]]));
        assert_eq!(L.choice(&L.fail(), &b), b);
        assert_eq!(
            L.choice(&L.choice(&a, &b), &c),
            L.choice(&a, &L.choice(&b, &c))
        );
        assert_eq!(
            L.observe(&Term::choice(Term::Nil, Term::Fail)).unwrap(),
            bag(&[&[]])
        );
    }

    #[test]
    fn recur_over_fail_fails() {
        let body =
            |_: &i64, _: &ChoiceBag, _: &dyn Fn() -> Result<ChoiceBag, SemError>| Ok(L.nil());
        assert_eq!(
            L.recur(&body, &L.nil(), &L.fail()).unwrap(),
            ChoiceBag::empty()
        );
    }

    #[test]
    fn recur_identity_fold() {
        let body = |h: &i64, _: &ChoiceBag, r: &dyn Fn() -> Result<ChoiceBag, SemError>| {
            Ok(L.cons(h, &r()?))
        };
        assert_eq!(
            L.recur(&body, &L.nil(), &bag(&[&[1, 2]])).unwrap(),
            bag(&[&[1, 2]])
        );
    }

    #[test]
    fn recur_insert_body() {
        let body = |h: &i64, t: &ChoiceBag, r: &dyn Fn() -> Result<ChoiceBag, SemError>| {
            Ok(L.choice(&L.cons(&1, &L.cons(h, t)), &L.cons(h, &r()?)))
        };
        let got = L.recur(&body, &bag(&[&[1]]), &bag(&[&[2, 3]])).unwrap();
        assert_eq!(got, bag(&[&[1, 2, 3], &[2, 1, 3], &[2, 3, 1]]));
        assert_eq!(eval_list(&L, &insert_term(1, &[2, 3])).unwrap(), got);
    }

    #[test]
    fn committed_choice() {
        assert_eq!(L.once(&ChoiceBag::empty()).unwrap(), ChoiceBag::empty());
        assert_eq!(L.once(&bag(&[&[3], &[1]])).unwrap(), bag(&[&[3]]));
        assert_eq!(
            L.rid(Pred::Sorted, &bag(&[&[1, 2], &[2, 1]])).unwrap(),
            bag(&[&[2, 1]])
        );
    }

    #[test]
    fn run_is_identity() {
        assert_eq!(L.run(&bag(&[&[1]])).unwrap(), bag(&[&[1]]));
        assert_eq!(L.run(&ChoiceBag::empty()).unwrap(), ChoiceBag::empty());
        let p = perm_program(&L, &[1, 2]).unwrap();
        assert_eq!(L.run(&p).unwrap(), bag(&[&[1, 2], &[2, 1]]));
    }

    #[test]
    fn permutations() {
        assert_eq!(
            perm_program(&L, &[1, 2, 3]).unwrap(),
            bag(&[
                &[1, 2, 3],
                &[2, 1, 3],
                &[2, 3, 1],
                &[1, 3, 2],
                &[3, 1, 2],
                &[3, 2, 1]
            ])
        );
        assert_eq!(perm_program(&L, &[]).unwrap(), bag(&[&[]]));
        assert_eq!(perm_program(&L, &[5, 5]).unwrap(), bag(&[&[5, 5], &[5, 5]]));
    }

    #[test]
    fn slow_sort() {
        assert_eq!(sort_program(&L, &[]).unwrap(), bag(&[&[]]));
        assert_eq!(sort_program(&L, &[2, 2, 2]).unwrap(), bag(&[&[2, 2, 2]]));
        assert_eq!(sort_program(&L, &[3, 1, 2]).unwrap(), bag(&[&[3, 2, 1]]));
    }

    #[test]
    fn unbound_reference_is_an_error() {
        let err = eval_list(&L, &Term::cons(IntTerm::Head(0), Term::Nil)).unwrap_err();
        assert_eq!(err, SemError::Unbound { var: "h", depth: 0 });
        assert!(eval_list(&L, &perm_term(&[1])).is_ok());
    }
}
