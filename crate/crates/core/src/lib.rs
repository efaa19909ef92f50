//! A tiny first-order language for nondeterministic computations over
//! integer lists, with several interchangeable interpreters:
//!
//! * [`list`]: the list-of-successes model, every choice materialized.
//! * [`chunked`]: the same model over persistent chunked integer buffers.
//! * [`absint`]: an abstract interpreter estimating the degree of
//!   nondeterminism (number of choices, possibility of failure).
//! * [`codegen`]: a staged interpreter that emits residual programs in a
//!   small first-order target language, with binding-time annotations.
//!
//! Programs are written either directly against the [`Semantics`] trait or
//! as reified [`Term`]s, which [`eval_list`] interprets under any back-end.

pub mod absint;
pub mod chunked;
pub mod cli;
pub mod codegen;
pub mod laws;
pub mod list;
pub mod sem;
mod sexp;
pub mod term;
pub mod testkit;

pub use sem::{ChoiceBag, Observer, RecurBody, SemError, Semantics};
pub use sexp::ParseError;
pub use term::eval::{eval_int, eval_list};
pub use term::{IntTerm, Pred, Term};
