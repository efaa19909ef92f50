//! The first-order target language emitted by the compiler, and its
//! canonical S-expression form.
//!
//! ```text
//! (intlit N) (var X) (nil) (cons E E) (listlit N ...) (append E E)
//! (concatmap X E E) (mapcons E E) (let X E E)
//! (letrecmatch F X Enil (H T Econs) Earg) (call F E)
//! (filter PRED E) (takefirst E)
//! ```
//!
//! Values are integers and (nested) lists. A program evaluates to a list of
//! integer lists: the choices.

use std::fmt;

use crate::sexp::{self, ParseError, Sexp};
use crate::term::Pred;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetExpr {
    IntLit(i64),
    Var(String),
    Nil,
    Cons(Box<TargetExpr>, Box<TargetExpr>),
    ListLit(Vec<i64>),
    Append(Box<TargetExpr>, Box<TargetExpr>),
    /// `map (fun l -> head :: l) list`.
    MapCons(Box<TargetExpr>, Box<TargetExpr>),
    /// `concat (map (fun param -> body) list)`.
    ConcatMap {
        param: String,
        body: Box<TargetExpr>,
        list: Box<TargetExpr>,
    },
    Let {
        name: String,
        bound: Box<TargetExpr>,
        body: Box<TargetExpr>,
    },
    /// `let rec func param = match param with [] -> on_nil | head :: tail ->
    /// on_cons in func arg`.
    LetRecMatch {
        func: String,
        param: String,
        on_nil: Box<TargetExpr>,
        head: String,
        tail: String,
        on_cons: Box<TargetExpr>,
        arg: Box<TargetExpr>,
    },
    /// Call of a function defined by an enclosing `LetRecMatch`.
    Call(String, Box<TargetExpr>),
    Filter(Pred, Box<TargetExpr>),
    TakeFirst(Box<TargetExpr>),
}

impl TargetExpr {
    pub fn var(name: impl Into<String>) -> Self {
        TargetExpr::Var(name.into())
    }

    pub fn cons(x: TargetExpr, l: TargetExpr) -> Self {
        TargetExpr::Cons(Box::new(x), Box::new(l))
    }

    pub fn append(a: TargetExpr, b: TargetExpr) -> Self {
        TargetExpr::Append(Box::new(a), Box::new(b))
    }

    pub fn map_cons(x: TargetExpr, ll: TargetExpr) -> Self {
        TargetExpr::MapCons(Box::new(x), Box::new(ll))
    }

    /// Visit every node, outermost first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TargetExpr)) {
        f(self);
        match self {
            TargetExpr::IntLit(_)
            | TargetExpr::Var(_)
            | TargetExpr::Nil
            | TargetExpr::ListLit(_) => {}
            TargetExpr::Cons(a, b) | TargetExpr::Append(a, b) | TargetExpr::MapCons(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            TargetExpr::ConcatMap { body, list, .. } => {
                body.walk(f);
                list.walk(f);
            }
            TargetExpr::Let { bound, body, .. } => {
                bound.walk(f);
                body.walk(f);
            }
            TargetExpr::LetRecMatch {
                on_nil,
                on_cons,
                arg,
                ..
            } => {
                on_nil.walk(f);
                on_cons.walk(f);
                arg.walk(f);
            }
            TargetExpr::Call(_, e) | TargetExpr::Filter(_, e) | TargetExpr::TakeFirst(e) => {
                e.walk(f)
            }
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            TargetExpr::IntLit(n) => out.push_str(&format!("(intlit {n})")),
            TargetExpr::Var(x) => out.push_str(&format!("(var {x})")),
            TargetExpr::Nil => out.push_str("(nil)"),
            TargetExpr::ListLit(xs) => {
                out.push_str("(listlit");
                for x in xs {
                    out.push_str(&format!(" {x}"));
                }
                out.push(')');
            }
            TargetExpr::Cons(a, b) => write_form(out, "cons", &[], &[a, b]),
            TargetExpr::Append(a, b) => write_form(out, "append", &[], &[a, b]),
            TargetExpr::MapCons(a, b) => write_form(out, "mapcons", &[], &[a, b]),
            TargetExpr::ConcatMap { param, body, list } => {
                write_form(out, "concatmap", &[param], &[body, list])
            }
            TargetExpr::Let { name, bound, body } => {
                write_form(out, "let", &[name], &[bound, body])
            }
            TargetExpr::LetRecMatch {
                func,
                param,
                on_nil,
                head,
                tail,
                on_cons,
                arg,
            } => {
                out.push_str(&format!("(letrecmatch {func} {param} "));
                on_nil.write(out);
                out.push_str(&format!(" ({head} {tail} "));
                on_cons.write(out);
                out.push_str(") ");
                arg.write(out);
                out.push(')');
            }
            TargetExpr::Call(func, e) => write_form(out, "call", &[func], &[e]),
            TargetExpr::Filter(p, e) => write_form(out, "filter", &[&p.to_string()], &[e]),
            TargetExpr::TakeFirst(e) => write_form(out, "takefirst", &[], &[e]),
        }
    }
}

fn write_form(out: &mut String, head: &str, atoms: &[&str], subs: &[&TargetExpr]) {
    out.push('(');
    out.push_str(head);
    for a in atoms {
        out.push(' ');
        out.push_str(a);
    }
    for e in subs {
        out.push(' ');
        e.write(out);
    }
    out.push(')');
}

/// A complete residual program.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetProgram(pub TargetExpr);

impl TargetProgram {
    /// Canonical text: a single line with a trailing newline.
    pub fn to_sexp(&self) -> String {
        let mut s = String::new();
        self.0.write(&mut s);
        s.push('\n');
        s
    }

    pub fn parse(src: &str) -> Result<TargetProgram, ParseError> {
        let e = sexp::read_one(src)?;
        parse_expr(&e).map(TargetProgram)
    }

    pub fn expr(&self) -> &TargetExpr {
        &self.0
    }
}

impl fmt::Display for TargetProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.0.write(&mut s);
        f.write_str(&s)
    }
}

fn name(e: &Sexp) -> Result<String, ParseError> {
    match e.as_atom() {
        Some(a)
            if a.chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') =>
        {
            Ok(a.to_string())
        }
        _ => Err(ParseError::new(e.pos(), "expected an identifier")),
    }
}

fn pred(e: &Sexp) -> Result<Pred, ParseError> {
    match (e.as_atom(), e.as_form()) {
        (Some("sorted"), _) => Ok(Pred::Sorted),
        (Some("sum-even"), _) => Ok(Pred::SumEven),
        (_, Some(("len<=", [k]))) => u32::try_from(k.int()?)
            .map(Pred::LenAtMost)
            .map_err(|_| ParseError::new(k.pos(), "length bound out of range")),
        _ => Err(ParseError::new(e.pos(), "unknown predicate")),
    }
}

fn parse_expr(e: &Sexp) -> Result<TargetExpr, ParseError> {
    let (head, args) = e
        .as_form()
        .ok_or_else(|| ParseError::new(e.pos(), "expected a form"))?;
    let want = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(ParseError::new(
                e.pos(),
                format!("`{head}` takes {n} argument(s), found {}", args.len()),
            ))
        }
    };
    let sub = |i: usize| parse_expr(&args[i]).map(Box::new);
    Ok(match head {
        "intlit" => {
            want(1)?;
            TargetExpr::IntLit(args[0].int()?)
        }
        "var" => {
            want(1)?;
            TargetExpr::Var(name(&args[0])?)
        }
        "nil" => {
            want(0)?;
            TargetExpr::Nil
        }
        "listlit" => TargetExpr::ListLit(args.iter().map(Sexp::int).collect::<Result<_, _>>()?),
        "cons" => {
            want(2)?;
            TargetExpr::Cons(sub(0)?, sub(1)?)
        }
        "append" => {
            want(2)?;
            TargetExpr::Append(sub(0)?, sub(1)?)
        }
        "mapcons" => {
            want(2)?;
            TargetExpr::MapCons(sub(0)?, sub(1)?)
        }
        "concatmap" => {
            want(3)?;
            TargetExpr::ConcatMap {
                param: name(&args[0])?,
                body: sub(1)?,
                list: sub(2)?,
            }
        }
        "let" => {
            want(3)?;
            TargetExpr::Let {
                name: name(&args[0])?,
                bound: sub(1)?,
                body: sub(2)?,
            }
        }
        "letrecmatch" => {
            want(5)?;
            let branch = &args[3];
            let parts = match branch {
                Sexp::List(items, _) if items.len() == 3 => items,
                _ => {
                    return Err(ParseError::new(
                        branch.pos(),
                        "expected a cons branch `(H T E)`",
                    ))
                }
            };
            TargetExpr::LetRecMatch {
                func: name(&args[0])?,
                param: name(&args[1])?,
                on_nil: sub(2)?,
                head: name(&parts[0])?,
                tail: name(&parts[1])?,
                on_cons: Box::new(parse_expr(&parts[2])?),
                arg: sub(4)?,
            }
        }
        "call" => {
            want(2)?;
            TargetExpr::Call(name(&args[0])?, sub(1)?)
        }
        "filter" => {
            want(2)?;
            TargetExpr::Filter(pred(&args[0])?, sub(1)?)
        }
        "takefirst" => {
            want(1)?;
            TargetExpr::TakeFirst(sub(0)?)
        }
        other => return Err(ParseError::new(e.pos(), format!("unknown form `{other}`"))),
    })
}
