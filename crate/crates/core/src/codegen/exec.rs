//! Reference interpreter for target programs.

use std::rc::Rc;

use thiserror::Error;

use crate::codegen::target::{TargetExpr, TargetProgram};
use crate::sem::ChoiceBag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExecError {
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
    #[error("unbound function `{0}`")]
    UnboundFunc(String),
    #[error("type error: expected {expected}, found {found}")]
    Type {
        expected: &'static str,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(i64),
    List(Rc<Vec<Value>>),
}

impl Value {
    fn list(items: Vec<Value>) -> Value {
        Value::List(Rc::new(items))
    }

    fn describe(&self) -> String {
        match self {
            Value::Int(n) => format!("integer {n}"),
            Value::List(xs) => format!("list of length {}", xs.len()),
        }
    }

    fn as_list(&self) -> Result<&Rc<Vec<Value>>, ExecError> {
        match self {
            Value::List(xs) => Ok(xs),
            other => Err(ExecError::Type {
                expected: "a list",
                found: other.describe(),
            }),
        }
    }

    fn as_ints(&self) -> Result<Vec<i64>, ExecError> {
        self.as_list()?
            .iter()
            .map(|v| match v {
                Value::Int(n) => Ok(*n),
                other => Err(ExecError::Type {
                    expected: "an integer",
                    found: other.describe(),
                }),
            })
            .collect()
    }
}

struct Closure<'p> {
    param: &'p str,
    on_nil: &'p TargetExpr,
    head: &'p str,
    tail: &'p str,
    on_cons: &'p TargetExpr,
    env: Env<'p>,
}

#[derive(Clone)]
enum Binding<'p> {
    Val(Value),
    Func(Rc<Closure<'p>>),
}

struct EnvNode<'p> {
    name: &'p str,
    binding: Binding<'p>,
    up: Env<'p>,
}

#[derive(Clone, Default)]
struct Env<'p>(Option<Rc<EnvNode<'p>>>);

impl<'p> Env<'p> {
    fn bind(&self, name: &'p str, binding: Binding<'p>) -> Env<'p> {
        Env(Some(Rc::new(EnvNode {
            name,
            binding,
            up: self.clone(),
        })))
    }

    fn lookup(&self, name: &str) -> Option<&Binding<'p>> {
        let mut cur = self.0.as_deref();
        while let Some(node) = cur {
            if node.name == name {
                return Some(&node.binding);
            }
            cur = node.up.0.as_deref();
        }
        None
    }
}

/// Run a program and read its result as a bag of integer lists.
pub fn exec(p: &TargetProgram) -> Result<ChoiceBag, ExecError> {
    let v = eval(p.expr(), &Env::default())?;
    let choices = v
        .as_list()?
        .iter()
        .map(Value::as_ints)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChoiceBag(choices))
}

fn call<'p>(f: &Rc<Closure<'p>>, fname: &'p str, arg: Value) -> Result<Value, ExecError> {
    let env = f
        .env
        .bind(fname, Binding::Func(Rc::clone(f)))
        .bind(f.param, Binding::Val(arg.clone()));
    let xs = arg.as_list()?;
    match xs.split_first() {
        None => eval(f.on_nil, &env),
        Some((h, t)) => {
            let env = env
                .bind(f.head, Binding::Val(h.clone()))
                .bind(f.tail, Binding::Val(Value::list(t.to_vec())));
            eval(f.on_cons, &env)
        }
    }
}

fn eval<'p>(e: &'p TargetExpr, env: &Env<'p>) -> Result<Value, ExecError> {
    match e {
        TargetExpr::IntLit(n) => Ok(Value::Int(*n)),
        TargetExpr::Var(x) => match env.lookup(x) {
            Some(Binding::Val(v)) => Ok(v.clone()),
            _ => Err(ExecError::UnboundVar(x.clone())),
        },
        TargetExpr::Nil => Ok(Value::list(Vec::new())),
        TargetExpr::ListLit(xs) => Ok(Value::list(xs.iter().copied().map(Value::Int).collect())),
        TargetExpr::Cons(x, l) => {
            let x = eval(x, env)?;
            let l = eval(l, env)?;
            let l = l.as_list()?;
            let mut v = Vec::with_capacity(l.len() + 1);
            v.push(x);
            v.extend(l.iter().cloned());
            Ok(Value::list(v))
        }
        TargetExpr::Append(a, b) => {
            let a = eval(a, env)?;
            let b = eval(b, env)?;
            let v = a
                .as_list()?
                .iter()
                .chain(b.as_list()?.iter())
                .cloned()
                .collect();
            Ok(Value::list(v))
        }
        TargetExpr::MapCons(x, ll) => {
            let x = eval(x, env)?;
            let ll = eval(ll, env)?;
            let out = ll
                .as_list()?
                .iter()
                .map(|l| {
                    let l = l.as_list()?;
                    let mut v = Vec::with_capacity(l.len() + 1);
                    v.push(x.clone());
                    v.extend(l.iter().cloned());
                    Ok(Value::list(v))
                })
                .collect::<Result<Vec<_>, ExecError>>()?;
            Ok(Value::list(out))
        }
        TargetExpr::ConcatMap { param, body, list } => {
            let xs = eval(list, env)?;
            let mut out = Vec::new();
            for x in xs.as_list()?.iter() {
                let r = eval(body, &env.bind(param, Binding::Val(x.clone())))?;
                out.extend(r.as_list()?.iter().cloned());
            }
            Ok(Value::list(out))
        }
        TargetExpr::Let { name, bound, body } => {
            let v = eval(bound, env)?;
            eval(body, &env.bind(name, Binding::Val(v)))
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
            let closure = Rc::new(Closure {
                param,
                on_nil,
                head,
                tail,
                on_cons,
                env: env.clone(),
            });
            let arg = eval(arg, &env.bind(func, Binding::Func(Rc::clone(&closure))))?;
            call(&closure, func, arg)
        }
        TargetExpr::Call(fname, arg) => {
            let f = match env.lookup(fname) {
                Some(Binding::Func(f)) => Rc::clone(f),
                _ => return Err(ExecError::UnboundFunc(fname.clone())),
            };
            let arg = eval(arg, env)?;
            call(&f, fname, arg)
        }
        TargetExpr::Filter(p, e) => {
            let xs = eval(e, env)?;
            let mut out = Vec::new();
            for x in xs.as_list()?.iter() {
                if p.holds(&x.as_ints()?) {
                    out.push(x.clone());
                }
            }
            Ok(Value::list(out))
        }
        TargetExpr::TakeFirst(e) => {
            let xs = eval(e, env)?;
            Ok(Value::list(
                xs.as_list()?.first().cloned().into_iter().collect(),
            ))
        }
    }
}
