//! Textual form of terms.
//!
//! ```text
//! int  ::= (int N) | h | (h K)
//! list ::= (nil) | (cons int list) | (list N ...) | (fail) | (choice list list)
//!        | (recur list list list) | (rid pred list) | (once list)
//!        | t | (t K) | (r) | (r K)
//! pred ::= sorted | (len<= K) | sum-even
//! ```
//!
//! `h`, `t` and `(r)` refer to the innermost enclosing `recur`; the forms
//! with an explicit `K` reach `K` binders further out. The first argument of
//! `recur` is its body, which opens a new binder.

use thiserror::Error;

use crate::sexp::{self, ParseError, Pos, Sexp};
use crate::term::{IntTerm, Pred, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermSyntaxError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{pos}: sort error: expected {expected} term, found {found}")]
    Sort {
        pos: Pos,
        expected: &'static str,
        found: String,
    },
    #[error("{pos}: `{var}` refers to binder depth {depth} but only {bound} enclosing recur(s)")]
    Scope {
        pos: Pos,
        var: &'static str,
        depth: usize,
        bound: usize,
    },
}

impl TermSyntaxError {
    pub fn pos(&self) -> Pos {
        match self {
            TermSyntaxError::Parse(e) => e.pos,
            TermSyntaxError::Sort { pos, .. } | TermSyntaxError::Scope { pos, .. } => *pos,
        }
    }
}

/// Parse a closed list term.
pub fn parse_term(src: &str) -> Result<Term, TermSyntaxError> {
    let e = sexp::read_one(src)?;
    list_term(&e, 0)
}

/// Canonical single-line rendering; [`parse_term`] inverts it.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn describe(e: &Sexp) -> String {
    match e {
        Sexp::Atom(a, _) => format!("`{a}`"),
        Sexp::List(..) => match e.as_form() {
            Some((h, _)) => format!("`({h} ...)`"),
            None => "a list".to_string(),
        },
    }
}

fn arity(e: &Sexp, head: &str, args: &[Sexp], n: usize) -> Result<(), TermSyntaxError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(ParseError::new(
            e.pos(),
            format!("`{head}` takes {n} argument(s), found {}", args.len()),
        )
        .into())
    }
}

fn depth_arg(e: &Sexp, head: &str, args: &[Sexp]) -> Result<usize, TermSyntaxError> {
    match args {
        [] => Ok(0),
        [k] => {
            let k = k.int()?;
            usize::try_from(k).map_err(|_| {
                ParseError::new(e.pos(), format!("negative binder depth in `{head}`")).into()
            })
        }
        _ => Err(ParseError::new(e.pos(), format!("`{head}` takes at most one argument")).into()),
    }
}

fn check_scope(
    pos: Pos,
    var: &'static str,
    depth: usize,
    bound: usize,
) -> Result<(), TermSyntaxError> {
    if depth < bound {
        Ok(())
    } else {
        Err(TermSyntaxError::Scope {
            pos,
            var,
            depth,
            bound,
        })
    }
}

fn int_term(e: &Sexp, bound: usize) -> Result<IntTerm, TermSyntaxError> {
    let sort_err = || TermSyntaxError::Sort {
        pos: e.pos(),
        expected: "an integer",
        found: describe(e),
    };
    match e {
        Sexp::Atom(a, pos) if a == "h" => {
            check_scope(*pos, "h", 0, bound)?;
            Ok(IntTerm::Head(0))
        }
        Sexp::Atom(..) => Err(sort_err()),
        Sexp::List(..) => match e.as_form() {
            Some(("int", args)) => {
                arity(e, "int", args, 1)?;
                Ok(IntTerm::Lit(args[0].int()?))
            }
            Some(("h", args)) => {
                let d = depth_arg(e, "h", args)?;
                check_scope(e.pos(), "h", d, bound)?;
                Ok(IntTerm::Head(d))
            }
            Some((h, _)) if LIST_FORMS.contains(&h) => Err(sort_err()),
            Some((h, _)) => Err(ParseError::new(e.pos(), format!("unknown form `{h}`")).into()),
            None => Err(ParseError::new(e.pos(), "expected a form").into()),
        },
    }
}

const LIST_FORMS: &[&str] = &[
    "nil", "cons", "list", "fail", "choice", "recur", "rid", "once", "t", "r",
];

fn pred(e: &Sexp) -> Result<Pred, TermSyntaxError> {
    match e {
        Sexp::Atom(a, _) if a == "sorted" => Ok(Pred::Sorted),
        Sexp::Atom(a, _) if a == "sum-even" => Ok(Pred::SumEven),
        _ => match e.as_form() {
            Some(("len<=", [k])) => {
                let k = k.int()?;
                u32::try_from(k)
                    .map(Pred::LenAtMost)
                    .map_err(|_| ParseError::new(e.pos(), "length bound out of range").into())
            }
            _ => Err(ParseError::new(e.pos(), format!("unknown predicate {}", describe(e))).into()),
        },
    }
}

fn list_term(e: &Sexp, bound: usize) -> Result<Term, TermSyntaxError> {
    let sort_err = || TermSyntaxError::Sort {
        pos: e.pos(),
        expected: "a list",
        found: describe(e),
    };
    let (head, args) = match e {
        Sexp::Atom(a, pos) if a == "t" => {
            check_scope(*pos, "t", 0, bound)?;
            return Ok(Term::Tail(0));
        }
        Sexp::Atom(a, _) if a == "h" => return Err(sort_err()),
        Sexp::Atom(a, pos) => {
            return Err(ParseError::new(*pos, format!("unexpected atom `{a}`")).into())
        }
        Sexp::List(..) => e
            .as_form()
            .ok_or_else(|| ParseError::new(e.pos(), "expected a form"))?,
    };
    let boxed = |x: &Sexp| list_term(x, bound).map(Box::new);
    match head {
        "nil" => {
            arity(e, head, args, 0)?;
            Ok(Term::Nil)
        }
        "fail" => {
            arity(e, head, args, 0)?;
            Ok(Term::Fail)
        }
        "list" => Ok(Term::List(
            args.iter().map(Sexp::int).collect::<Result<_, _>>()?,
        )),
        "cons" => {
            arity(e, head, args, 2)?;
            Ok(Term::Cons(int_term(&args[0], bound)?, boxed(&args[1])?))
        }
        "choice" => {
            arity(e, head, args, 2)?;
            Ok(Term::Choice(boxed(&args[0])?, boxed(&args[1])?))
        }
        "recur" => {
            arity(e, head, args, 3)?;
            Ok(Term::Recur {
                body: Box::new(list_term(&args[0], bound + 1)?),
                z: boxed(&args[1])?,
                l: boxed(&args[2])?,
            })
        }
        "rid" => {
            arity(e, head, args, 2)?;
            Ok(Term::RId(pred(&args[0])?, boxed(&args[1])?))
        }
        "once" => {
            arity(e, head, args, 1)?;
            Ok(Term::Once(boxed(&args[0])?))
        }
        "t" => {
            let d = depth_arg(e, head, args)?;
            check_scope(e.pos(), "t", d, bound)?;
            Ok(Term::Tail(d))
        }
        "r" => {
            let d = depth_arg(e, head, args)?;
            check_scope(e.pos(), "r", d, bound)?;
            Ok(Term::Rec(d))
        }
        "int" | "h" => Err(sort_err()),
        other => Err(ParseError::new(e.pos(), format!("unknown form `{other}`")).into()),
    }
}

fn write_int(x: &IntTerm, out: &mut String) {
    match x {
        IntTerm::Lit(n) => out.push_str(&format!("(int {n})")),
        IntTerm::Head(0) => out.push('h'),
        IntTerm::Head(d) => out.push_str(&format!("(h {d})")),
    }
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Nil => out.push_str("(nil)"),
        Term::Fail => out.push_str("(fail)"),
        Term::List(xs) => {
            out.push_str("(list");
            for x in xs {
                out.push_str(&format!(" {x}"));
            }
            out.push(')');
        }
        Term::Cons(x, l) => {
            out.push_str("(cons ");
            write_int(x, out);
            out.push(' ');
            write_term(l, out);
            out.push(')');
        }
        Term::Choice(a, b) => {
            out.push_str("(choice ");
            write_term(a, out);
            out.push(' ');
            write_term(b, out);
            out.push(')');
        }
        Term::Recur { body, z, l } => {
            out.push_str("(recur ");
            write_term(body, out);
            out.push(' ');
            write_term(z, out);
            out.push(' ');
            write_term(l, out);
            out.push(')');
        }
        Term::RId(p, l) => {
            out.push_str(&format!("(rid {p} "));
            write_term(l, out);
            out.push(')');
        }
        Term::Once(l) => {
            out.push_str("(once ");
            write_term(l, out);
            out.push(')');
        }
        Term::Tail(0) => out.push('t'),
        Term::Tail(d) => out.push_str(&format!("(t {d})")),
        Term::Rec(0) => out.push_str("(r)"),
        Term::Rec(d) => out.push_str(&format!("(r {d})")),
    }
}
