//! Abstract interpretation of the degree of nondeterminism.
//!
//! Instead of running a list computation we bound how many choices it can
//! produce and whether it can produce none at all. Integers carry no
//! information ([`AInt`]); a list computation means an [`NdetDeg`].

use std::fmt;

use serde::ser::Serializer;
use serde::Serialize;

use crate::sem::{RecurBody, SemError, Semantics};
use crate::term::eval::eval_list;
use crate::term::{Pred, Term};

/// Naturals extended with a top element `Inf` ("many").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);
    pub const ONE: ExtNat = ExtNat::Fin(1);

    /// Finite sums that overflow `u64` saturate to `Inf`.
    pub fn plus(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_add(b).map_or(ExtNat::Inf, ExtNat::Fin),
            _ => ExtNat::Inf,
        }
    }

    /// `Inf` absorbs everything, including `Fin(0)`: `Fin(0) * Inf = Inf`.
    pub fn times(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_mul(b).map_or(ExtNat::Inf, ExtNat::Fin),
            _ => ExtNat::Inf,
        }
    }

    pub fn leq(self, other: ExtNat) -> bool {
        match (self, other) {
            (_, ExtNat::Inf) => true,
            (ExtNat::Inf, _) => false,
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a <= b,
        }
    }

    pub fn max(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a.max(b)),
            _ => ExtNat::Inf,
        }
    }

    pub fn min(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a.min(b)),
            (ExtNat::Inf, x) | (x, ExtNat::Inf) => x,
        }
    }

    /// Whether `n` concrete choices fit under this bound.
    pub fn bounds(self, n: usize) -> bool {
        ExtNat::Fin(n as u64).leq(self)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(n) => s.serialize_u64(*n),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

/// Degree of nondeterminism: may the computation fail, and at most how
/// many choices does it have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NdetDeg {
    pub can_fail: bool,
    pub choices: ExtNat,
}

impl NdetDeg {
    /// Certainly deterministic.
    pub const DET: NdetDeg = NdetDeg {
        can_fail: false,
        choices: ExtNat::ONE,
    };

    /// Nothing known.
    pub const TOP: NdetDeg = NdetDeg {
        can_fail: true,
        choices: ExtNat::Inf,
    };

    pub fn new(can_fail: bool, choices: ExtNat) -> Self {
        NdetDeg { can_fail, choices }
    }

    /// Sequencing: choices multiply.
    pub fn merge(self, other: NdetDeg) -> NdetDeg {
        NdetDeg {
            can_fail: self.can_fail || other.can_fail,
            choices: self.choices.times(other.choices),
        }
    }

    pub fn join(self, other: NdetDeg) -> NdetDeg {
        NdetDeg {
            can_fail: self.can_fail || other.can_fail,
            choices: self.choices.max(other.choices),
        }
    }

    pub fn leq(self, other: NdetDeg) -> bool {
        self.choices.leq(other.choices) && (!self.can_fail || other.can_fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("degrees always serialize")
    }
}

impl fmt::Display for NdetDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{can_fail={}, choices={}}}",
            self.can_fail, self.choices
        )
    }
}

/// The abstract integer: every integer is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AInt;

/// Rounds of the recursor's joining loop before giving up with `TOP`.
pub const RECUR_ITERATION_CAP: usize = 5;

#[derive(Debug, Clone, Copy, Default)]
pub struct AbstractSemantics;

impl Semantics for AbstractSemantics {
    type Int = AInt;
    type List = NdetDeg;

    fn name(&self) -> &'static str {
        "abstract"
    }

    fn int(&self, _n: i64) -> AInt {
        AInt
    }

    fn nil(&self) -> NdetDeg {
        NdetDeg::DET
    }

    fn cons(&self, _x: &AInt, l: &NdetDeg) -> NdetDeg {
        *l
    }

    fn list(&self, _xs: &[i64]) -> NdetDeg {
        NdetDeg::DET
    }

    // Join the results for abstract lists of length 0, 1, 2, ... until the
    // accumulated bound stops changing, or answer TOP after the cap.
    fn recur(
        &self,
        body: &RecurBody<'_, AInt, NdetDeg>,
        z: &NdetDeg,
        l: &NdetDeg,
    ) -> Result<NdetDeg, SemError> {
        let mut acc = *z;
        let mut res = *z;
        let mut i = 0;
        let looped = loop {
            let prev = res;
            let next = body(&AInt, &NdetDeg::DET, &move || Ok(prev))?;
            let acc_next = acc.join(next);
            if acc_next == acc {
                break acc;
            } else if i > RECUR_ITERATION_CAP {
                break NdetDeg::TOP;
            }
            acc = acc_next;
            res = next;
            i += 1;
        };
        Ok(l.merge(looped))
    }

    fn fail(&self) -> NdetDeg {
        NdetDeg::new(true, ExtNat::ONE)
    }

    fn choice(&self, a: &NdetDeg, b: &NdetDeg) -> NdetDeg {
        NdetDeg {
            can_fail: a.can_fail && b.can_fail,
            choices: a.choices.plus(b.choices),
        }
    }

    // Filtering may remove every choice.
    fn rid(&self, _pred: Pred, l: &NdetDeg) -> Result<NdetDeg, SemError> {
        Ok(NdetDeg::new(true, l.choices))
    }

    fn once(&self, l: &NdetDeg) -> Result<NdetDeg, SemError> {
        Ok(NdetDeg::new(l.can_fail, l.choices.min(ExtNat::ONE)))
    }
}

/// Degree of nondeterminism of a closed term, without running it.
pub fn analyze(t: &Term) -> Result<NdetDeg, SemError> {
    eval_list(&AbstractSemantics, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::programs::{foldr, perm_term};
    use crate::term::syntax::parse_term;
    use crate::term::IntTerm;
    use proptest::prelude::*;
    use ExtNat::{Fin, Inf};

    const A: AbstractSemantics = AbstractSemantics;

    #[test]
    fn ext_nat_arithmetic() {
        assert_eq!(Fin(2).plus(Fin(3)), Fin(5));
        assert_eq!(Inf.plus(Fin(1)), Inf);
        assert_eq!(Fin(0).times(Inf), Inf);
        assert_eq!(Fin(2).max(Inf), Inf);
        assert_eq!(Fin(2).times(Fin(3)), Fin(6));
        assert_eq!(Fin(u64::MAX).plus(Fin(1)), Inf);
        assert!(Fin(3).leq(Inf) && !Inf.leq(Fin(3)) && Fin(2).leq(Fin(2)));
        assert_eq!(Inf.min(Fin(1)), Fin(1));
    }

    #[test]
    fn constructors() {
        assert_eq!(
            A.choice(&NdetDeg::DET, &A.fail()),
            NdetDeg::new(false, Fin(2))
        );
        assert_eq!(A.cons(&AInt, &NdetDeg::DET), NdetDeg::DET);
        assert_eq!(A.nil(), NdetDeg::DET);
        assert_eq!(A.list(&[1, 2]), NdetDeg::DET);
        assert_eq!(A.fail(), NdetDeg::new(true, Fin(1)));
    }

    #[test]
    fn committed_choice_rules() {
        assert_eq!(
            A.once(&NdetDeg::new(false, Fin(5))).unwrap(),
            NdetDeg::new(false, Fin(1))
        );
        assert_eq!(
            A.rid(Pred::Sorted, &NdetDeg::DET).unwrap(),
            NdetDeg::new(true, Fin(1))
        );
        let top = A.rid(Pred::Sorted, &NdetDeg::TOP).unwrap();
        assert_eq!(A.once(&top).unwrap(), NdetDeg::new(true, Fin(1)));
    }

    #[test]
    fn printed_analyses() {
        // cons 20 (nil ||| cons 10 nil) ||| fail
        let t = parse_term("(choice (cons (int 20) (choice (nil) (cons (int 10) (nil)))) (fail))")
            .unwrap();
        assert_eq!(analyze(&t).unwrap(), NdetDeg::new(false, Fin(3)));

        let t = foldr(Term::cons, Term::Nil, Term::List(vec![1, 2, 3]));
        assert_eq!(analyze(&t).unwrap(), NdetDeg::DET);

        let t = Term::recur(
            Term::Fail,
            Term::choice(Term::List(vec![1]), Term::List(vec![2])),
            Term::Nil,
        );
        assert_eq!(analyze(&t).unwrap(), NdetDeg::new(true, Fin(2)));

        let t = foldr(
            |x, l| Term::choice(l.clone(), Term::cons(x, l)),
            Term::Nil,
            Term::List(vec![1, 2, 3]),
        );
        assert_eq!(analyze(&t).unwrap(), NdetDeg::new(true, Inf));

        assert_eq!(analyze(&perm_term(&[1, 2, 3])).unwrap(), NdetDeg::TOP);
    }

    #[test]
    fn small_terms() {
        assert_eq!(analyze(&Term::List(vec![9])).unwrap(), NdetDeg::DET);
        assert_eq!(
            analyze(&Term::choice(Term::Fail, Term::Fail)).unwrap(),
            NdetDeg::new(true, Fin(2))
        );
        assert_eq!(
            analyze(&Term::cons(IntTerm::Lit(1), Term::Fail)).unwrap(),
            NdetDeg::new(true, Fin(1))
        );
    }

    #[test]
    fn json_form() {
        assert_eq!(
            NdetDeg::TOP.to_json(),
            r#"{"can_fail":true,"choices":"inf"}"#
        );
        assert_eq!(
            NdetDeg::new(false, Fin(3)).to_json(),
            r#"{"can_fail":false,"choices":3}"#
        );
    }

    fn ext_nat() -> impl Strategy<Value = ExtNat> {
        prop_oneof![4 => (0u64..20).prop_map(Fin), 1 => Just(Inf)]
    }

    fn deg() -> impl Strategy<Value = NdetDeg> {
        (any::<bool>(), ext_nat()).prop_map(|(f, c)| NdetDeg::new(f, c))
    }

    proptest! {
        #[test]
        fn join_is_a_semilattice(a in deg(), b in deg(), c in deg()) {
            prop_assert_eq!(a.join(a), a);
            prop_assert_eq!(a.join(b), b.join(a));
            prop_assert_eq!(a.join(b).join(c), a.join(b.join(c)));
            prop_assert_eq!(a.join(NdetDeg::TOP), NdetDeg::TOP);
            prop_assert!(a.leq(a.join(b)) && b.leq(a.join(b)));
        }

        #[test]
        fn det_is_merge_unit(a in deg()) {
            prop_assert_eq!(NdetDeg::DET.merge(a), a);
            prop_assert_eq!(a.merge(NdetDeg::DET), a);
        }

        #[test]
        fn choice_and_merge_are_monotone(a in deg(), b in deg(), c in deg()) {
            let lo = a;
            let hi = a.join(b);
            prop_assert!(A.choice(&lo, &c).leq(A.choice(&hi, &c)));
            prop_assert!(A.choice(&c, &lo).leq(A.choice(&c, &hi)));
            prop_assert!(lo.merge(c).leq(hi.merge(c)));
            prop_assert!(c.merge(lo).leq(c.merge(hi)));
        }

        #[test]
        fn order_is_partial(a in deg(), b in deg()) {
            prop_assert!(a.leq(a));
            if a.leq(b) && b.leq(a) {
                prop_assert_eq!(a, b);
            }
            prop_assert!(a.leq(NdetDeg::TOP));
        }
    }
}
