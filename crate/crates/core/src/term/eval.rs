//! Interpreting terms under any [`Semantics`].

use crate::sem::{SemError, Semantics};
use crate::term::{IntTerm, Term};

/// What a recursor body sees of its binder.
struct Frame<'a, S: Semantics + ?Sized> {
    head: &'a S::Int,
    tail: &'a S::List,
    rec: &'a dyn Fn() -> Result<S::List, SemError>,
    up: Option<&'a Frame<'a, S>>,
}

impl<'a, S: Semantics + ?Sized> Frame<'a, S> {
    fn lookup(
        env: Option<&'a Frame<'a, S>>,
        depth: usize,
        var: &'static str,
    ) -> Result<&'a Frame<'a, S>, SemError> {
        let mut cur = env;
        for _ in 0..depth {
            cur = cur.and_then(|f| f.up);
        }
        cur.ok_or(SemError::Unbound { var, depth })
    }
}

/// Meaning of a closed list term under `sem`.
pub fn eval_list<S: Semantics + ?Sized>(sem: &S, t: &Term) -> Result<S::List, SemError> {
    eval_in(sem, t, None)
}

/// Meaning of a closed integer term under `sem`.
pub fn eval_int<S: Semantics + ?Sized>(sem: &S, x: &IntTerm) -> Result<S::Int, SemError> {
    int_in(sem, x, None)
}

fn int_in<S: Semantics + ?Sized>(
    sem: &S,
    x: &IntTerm,
    env: Option<&Frame<'_, S>>,
) -> Result<S::Int, SemError> {
    match *x {
        IntTerm::Lit(n) => Ok(sem.int(n)),
        IntTerm::Head(d) => Ok(Frame::lookup(env, d, "h")?.head.clone()),
    }
}

fn eval_in<S: Semantics + ?Sized>(
    sem: &S,
    t: &Term,
    env: Option<&Frame<'_, S>>,
) -> Result<S::List, SemError> {
    match t {
        Term::Nil => Ok(sem.nil()),
        Term::List(xs) => Ok(sem.list(xs)),
        Term::Fail => Ok(sem.fail()),
        Term::Cons(x, l) => {
            let x = int_in(sem, x, env)?;
            let l = eval_in(sem, l, env)?;
            Ok(sem.cons(&x, &l))
        }
        Term::Choice(a, b) => {
            let a = eval_in(sem, a, env)?;
            let b = eval_in(sem, b, env)?;
            Ok(sem.choice(&a, &b))
        }
        Term::Recur { body, z, l } => {
            let z = eval_in(sem, z, env)?;
            let l = eval_in(sem, l, env)?;
            sem.recur(
                &|head, tail, rec| {
                    let frame = Frame {
                        head,
                        tail,
                        rec,
                        up: env,
                    };
                    eval_in(sem, body, Some(&frame))
                },
                &z,
                &l,
            )
        }
        Term::RId(p, l) => {
            let l = eval_in(sem, l, env)?;
            sem.rid(*p, &l)
        }
        Term::Once(l) => {
            let l = eval_in(sem, l, env)?;
            sem.once(&l)
        }
        Term::Tail(d) => Ok(Frame::lookup(env, *d, "t")?.tail.clone()),
        Term::Rec(d) => (Frame::lookup(env, *d, "r")?.rec)(),
    }
}
