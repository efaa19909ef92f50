//! The list-of-successes model over packed integer chunks.
//!
//! A [`ChunkList`] is a persistent cons list whose cells are grouped into
//! fixed-capacity segments. Segments fill from the back: a list is a view
//! starting at some offset of its leading segment and continuing through
//! the segments linked behind it. Each slot is written at most once, so a
//! published view never changes. Consing onto a view claims the free slot
//! just before it when nobody has claimed it yet; otherwise (the segment is
//! full, or another list already took that slot with a different value) a
//! fresh segment is allocated in front. The tail of a list is the same
//! segment at the next offset, so destructuring never copies.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::sem::{ChoiceBag, RecurBody, SemError, Semantics};
use crate::term::Pred;

pub const DEFAULT_CHUNK_CAPACITY: usize = 32;

struct Segment {
    slots: Box<[OnceLock<i64>]>,
    next: Option<View>,
}

#[derive(Clone)]
struct View {
    seg: Arc<Segment>,
    offset: usize,
}

#[derive(Clone)]
pub struct ChunkList {
    head: Option<View>,
    len: usize,
    capacity: usize,
}

impl ChunkList {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "chunk capacity must be positive");
        ChunkList {
            head: None,
            len: 0,
            capacity,
        }
    }

    pub fn from_seq(xs: &[i64]) -> Self {
        Self::from_seq_with_capacity(xs, DEFAULT_CHUNK_CAPACITY)
    }

    pub fn from_seq_with_capacity(xs: &[i64], capacity: usize) -> Self {
        xs.iter()
            .rev()
            .fold(ChunkList::new(capacity), |acc, &x| acc.cons(x))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn cons(&self, x: i64) -> ChunkList {
        if let Some(View { seg, offset }) = &self.head {
            if *offset > 0 {
                let slot = &seg.slots[offset - 1];
                let claimed = slot.set(x).is_ok() || slot.get() == Some(&x);
                if claimed {
                    return ChunkList {
                        head: Some(View {
                            seg: Arc::clone(seg),
                            offset: offset - 1,
                        }),
                        len: self.len + 1,
                        capacity: self.capacity,
                    };
                }
            }
        }
        let slots: Box<[OnceLock<i64>]> = (0..self.capacity).map(|_| OnceLock::new()).collect();
        let offset = self.capacity - 1;
        slots[offset].set(x).expect("fresh slot");
        ChunkList {
            head: Some(View {
                seg: Arc::new(Segment {
                    slots,
                    next: self.head.clone(),
                }),
                offset,
            }),
            len: self.len + 1,
            capacity: self.capacity,
        }
    }

    /// Head and tail; the tail shares every segment with `self`.
    pub fn uncons(&self) -> Option<(i64, ChunkList)> {
        let View { seg, offset } = self.head.as_ref()?;
        let x = *seg.slots[*offset]
            .get()
            .expect("slots inside a view are filled");
        let tail_head = if offset + 1 < seg.slots.len() {
            Some(View {
                seg: Arc::clone(seg),
                offset: offset + 1,
            })
        } else {
            seg.next.clone()
        };
        Some((
            x,
            ChunkList {
                head: tail_head,
                len: self.len - 1,
                capacity: self.capacity,
            },
        ))
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            cur: self.head.as_ref().map(|v| (&*v.seg, v.offset)),
        }
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.iter().collect()
    }

    /// Number of distinct segments the list spans.
    pub fn chunk_count(&self) -> usize {
        let mut n = 0;
        let mut cur = self.head.as_ref();
        while let Some(v) = cur {
            n += 1;
            cur = v.seg.next.as_ref();
        }
        n
    }
}

pub struct Iter<'a> {
    cur: Option<(&'a Segment, usize)>,
}

impl Iterator for Iter<'_> {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        let (seg, idx) = self.cur?;
        let x = *seg.slots[idx]
            .get()
            .expect("slots inside a view are filled");
        self.cur = if idx + 1 < seg.slots.len() {
            Some((seg, idx + 1))
        } else {
            seg.next.as_ref().map(|v| (&*v.seg, v.offset))
        };
        Some(x)
    }
}

impl fmt::Debug for ChunkList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl PartialEq for ChunkList {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.iter().eq(other.iter())
    }
}

/// One chunked list per choice.
pub type ChunkBag = Vec<ChunkList>;

#[derive(Debug, Clone, Copy)]
pub struct ChunkedSemantics {
    pub capacity: usize,
}

impl Default for ChunkedSemantics {
    fn default() -> Self {
        ChunkedSemantics {
            capacity: DEFAULT_CHUNK_CAPACITY,
        }
    }
}

impl ChunkedSemantics {
    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity > 0, "chunk capacity must be positive");
        ChunkedSemantics { capacity }
    }
}

impl Semantics for ChunkedSemantics {
    type Int = i64;
    type List = ChunkBag;

    fn name(&self) -> &'static str {
        "chunked"
    }

    fn int(&self, n: i64) -> i64 {
        n
    }

    fn nil(&self) -> ChunkBag {
        vec![ChunkList::new(self.capacity)]
    }

    fn cons(&self, x: &i64, l: &ChunkBag) -> ChunkBag {
        l.iter().map(|c| c.cons(*x)).collect()
    }

    fn list(&self, xs: &[i64]) -> ChunkBag {
        vec![ChunkList::from_seq_with_capacity(xs, self.capacity)]
    }

    fn recur(
        &self,
        body: &RecurBody<'_, i64, ChunkBag>,
        z: &ChunkBag,
        l: &ChunkBag,
    ) -> Result<ChunkBag, SemError> {
        let mut out = Vec::new();
        for c in l {
            match c.uncons() {
                None => out.extend(z.iter().cloned()),
                Some((h, t)) => {
                    let tail = vec![t];
                    let rec = || self.recur(body, z, &tail);
                    out.extend(body(&h, &tail, &rec)?);
                }
            }
        }
        Ok(out)
    }

    fn fail(&self) -> ChunkBag {
        Vec::new()
    }

    fn choice(&self, a: &ChunkBag, b: &ChunkBag) -> ChunkBag {
        a.iter().chain(b).cloned().collect()
    }

    fn rid(&self, pred: Pred, l: &ChunkBag) -> Result<ChunkBag, SemError> {
        Ok(l.iter()
            .filter(|c| pred.holds(&c.to_vec()))
            .cloned()
            .collect())
    }

    fn once(&self, l: &ChunkBag) -> Result<ChunkBag, SemError> {
        Ok(l.first().cloned().into_iter().collect())
    }

    fn run(&self, l: &ChunkBag) -> Result<ChoiceBag, SemError> {
        Ok(l.iter().map(ChunkList::to_vec).collect::<Vec<_>>().into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list::ListSemantics;
    use crate::term::programs::perm_term;
    use crate::term::{IntTerm, Term};
    use crate::Observer;
    use proptest::prelude::*;

    #[test]
    fn round_trip() {
        assert_eq!(ChunkList::from_seq(&[1, 2, 3]).to_vec(), vec![1, 2, 3]);
        assert!(ChunkList::from_seq(&[]).is_empty());
    }

    #[test]
    fn cons_onto_singleton() {
        assert_eq!(ChunkList::from_seq(&[1]).cons(0).to_vec(), vec![0, 1]);
    }

    #[test]
    fn overflow_at_capacity() {
        let mut l = ChunkList::new(DEFAULT_CHUNK_CAPACITY);
        for i in 0..33 {
            l = l.cons(i);
        }
        assert_eq!(l.to_vec(), (0..33).rev().collect::<Vec<_>>());
        assert_eq!(l.chunk_count(), 2);
        assert_eq!(l.len(), 33);

        let mut t = Term::Nil;
        for i in 0..33 {
            t = Term::cons(IntTerm::Lit(i), t);
        }
        assert_eq!(
            ChunkedSemantics::default().observe(&t).unwrap(),
            ListSemantics.observe(&t).unwrap()
        );
    }

    #[test]
    fn cons_is_persistent() {
        let base = ChunkList::from_seq(&[1, 2]);
        let a = base.cons(0);
        let b = base.cons(5);
        let c = base.cons(0);
        assert_eq!(base.to_vec(), vec![1, 2]);
        assert_eq!(a.to_vec(), vec![0, 1, 2]);
        assert_eq!(b.to_vec(), vec![5, 1, 2]);
        assert_eq!(c.to_vec(), vec![0, 1, 2]);
        // `a` claimed the free slot, `b` could not and got its own segment,
        // `c` found the same value already there and shares it
        assert_eq!(a.chunk_count(), 1);
        assert_eq!(b.chunk_count(), 2);
        assert_eq!(c.chunk_count(), 1);
    }

    #[test]
    fn uncons_shares_segments() {
        let l = ChunkList::from_seq_with_capacity(&[1, 2, 3, 4, 5], 2);
        assert_eq!(l.chunk_count(), 3);
        let (h, t) = l.uncons().unwrap();
        assert_eq!(h, 1);
        assert_eq!(t.to_vec(), vec![2, 3, 4, 5]);
        let (h, t2) = t.uncons().unwrap();
        assert_eq!(h, 2);
        assert_eq!(t2.chunk_count(), 2);
        assert_eq!(l.to_vec(), vec![1, 2, 3, 4, 5]);
        assert!(ChunkList::new(4).uncons().is_none());
    }

    #[test]
    fn perm_matches_list_backend() {
        let t = perm_term(&[1, 2, 3]);
        let want = ListSemantics.observe(&t).unwrap();
        for cap in [1, 2, 3, 32] {
            assert_eq!(
                ChunkedSemantics::with_capacity(cap).observe(&t).unwrap(),
                want
            );
        }
        let both_fail = Term::choice(Term::Fail, Term::Fail);
        assert!(ChunkedSemantics::default()
            .observe(&both_fail)
            .unwrap()
            .is_empty());
    }

    proptest! {
        #[test]
        fn from_seq_round_trips(xs in proptest::collection::vec(-50i64..50, 0..100), cap in 1usize..40) {
            let l = ChunkList::from_seq_with_capacity(&xs, cap);
            prop_assert_eq!(l.to_vec(), xs.clone());
            prop_assert_eq!(l.len(), xs.len());
        }

        #[test]
        fn cons_never_disturbs_original(xs in proptest::collection::vec(0i64..5, 0..40), ys in proptest::collection::vec(0i64..5, 1..10), cap in 1usize..8) {
            let base = ChunkList::from_seq_with_capacity(&xs, cap);
            let before = base.to_vec();
            let mut ext = Vec::new();
            for &y in &ys {
                let e = base.cons(y);
                let mut want = vec![y];
                want.extend_from_slice(&xs);
                prop_assert_eq!(e.to_vec(), want);
                ext.push(e);
            }
            prop_assert_eq!(base.to_vec(), before);
            for (e, &y) in ext.iter().zip(&ys) {
                prop_assert_eq!(e.uncons().unwrap().0, y);
            }
        }
    }
}
