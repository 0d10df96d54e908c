//! Canonical iterative sets, hash-consed.
//!
//! An [`ISet`] is a node whose members are pairwise distinct and strictly increasing under the
//! canonical order. Every node is registered exactly once in a process-wide interner keyed by
//! the ids of its members, so two `ISet`s are extensionally equal iff their ids coincide.
//!
//! The canonical order is the numeric order of Ackermann codes, computed without bignums:
//! compare the member lists as bit sets from the largest member down. The first position where
//! they differ decides, and it is decided by comparing those two members, so the comparison is
//! a loop rather than a recursion.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct ISet(Arc<Node>);

struct Node {
    id: u64,
    rank: u32,
    members: Box<[ISet]>,
}

struct Interner {
    nodes: DashMap<Box<[u64]>, ISet>,
    next_id: AtomicU64,
}

static INTERNER: LazyLock<Interner> = LazyLock::new(|| Interner {
    nodes: DashMap::new(),
    next_id: AtomicU64::new(0),
});

static EMPTY: LazyLock<ISet> = LazyLock::new(|| ISet::intern_sorted(Vec::new()));

impl ISet {
    /// Registers a member list that is already strictly sorted.
    pub(crate) fn intern_sorted(members: Vec<ISet>) -> ISet {
        debug_assert!(
            members
                .windows(2)
                .all(|w| w[0].cmp(&w[1]) == Ordering::Less),
            "members must be strictly increasing"
        );
        let key: Box<[u64]> = members.iter().map(ISet::id).collect();
        if let Some(found) = INTERNER.nodes.get(&key) {
            return found.clone();
        }
        INTERNER
            .nodes
            .entry(key)
            .or_insert_with(|| {
                let rank = members.iter().map(|m| m.rank() + 1).max().unwrap_or(0);
                ISet(Arc::new(Node {
                    id: INTERNER.next_id.fetch_add(1, AtomicOrdering::Relaxed),
                    rank,
                    members: members.into_boxed_slice(),
                }))
            })
            .clone()
    }

    /// The empty set.
    pub fn empty() -> ISet {
        EMPTY.clone()
    }

    /// Builds the set with exactly the given members, in any order.
    ///
    /// Fails with [`Error::DuplicateElement`] if two of them are equal: the members must
    /// embed into the universe.
    pub fn sup0(elems: impl IntoIterator<Item = ISet>) -> Result<ISet> {
        let mut members: Vec<ISet> = elems.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        Ok(ISet::intern_sorted(members))
    }

    /// Builds the set of the given members, dropping repeats.
    pub fn from_members_dedup(elems: impl IntoIterator<Item = ISet>) -> ISet {
        let mut members: Vec<ISet> = elems.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        ISet::intern_sorted(members)
    }

    pub fn singleton(x: ISet) -> ISet {
        ISet::intern_sorted(vec![x])
    }

    /// `{x, y}`; the two members must differ.
    pub fn upair(x: ISet, y: ISet) -> Result<ISet> {
        ISet::sup0([x, y])
    }

    /// Opaque interner token. Equal ids means equal sets.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Members in canonical order. This is also the decoded carrier of the set as a code.
    pub fn members(&self) -> &[ISet] {
        &self.0.members
    }

    pub fn cardinality(&self) -> usize {
        self.0.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.members.is_empty()
    }

    /// Height of the membership tree: 0 for ∅, otherwise one more than the largest member rank.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    /// Position of `z` among the members, found by binary search.
    pub fn index_of(&self, z: &ISet) -> Option<usize> {
        if z.rank() >= self.rank() {
            return None;
        }
        self.0.members.binary_search(z).ok()
    }

    /// `z ∈ self`.
    pub fn contains(&self, z: &ISet) -> bool {
        self.index_of(z).is_some()
    }

    /// Like [`ISet::index_of`] but reports non-membership as an error.
    pub fn position(&self, z: &ISet) -> Result<usize> {
        self.index_of(z).ok_or_else(|| Error::NotAMember {
            element: z.clone(),
            set: self.clone(),
        })
    }

    /// `self ∪ {x}`.
    pub fn insert(&self, x: ISet) -> ISet {
        match self.0.members.binary_search(&x) {
            Ok(_) => self.clone(),
            Err(at) => {
                let mut members = self.0.members.to_vec();
                members.insert(at, x);
                ISet::intern_sorted(members)
            }
        }
    }

    /// Number of distinct sets registered so far.
    pub fn interned_count() -> usize {
        INTERNER.nodes.len()
    }
}

/// Extensional equality.
pub fn iset_eq(x: &ISet, y: &ISet) -> bool {
    x.id() == y.id()
}

/// The canonical total order (numeric order of Ackermann codes).
pub fn iset_cmp(x: &ISet, y: &ISet) -> Ordering {
    let mut x = x;
    let mut y = y;
    'descend: loop {
        if x.id() == y.id() {
            return Ordering::Equal;
        }
        let xs = x.members();
        let ys = y.members();
        let mut i = xs.len();
        let mut j = ys.len();
        while i > 0 && j > 0 {
            i -= 1;
            j -= 1;
            if xs[i].id() != ys[j].id() {
                x = &xs[i];
                y = &ys[j];
                continue 'descend;
            }
        }
        return i.cmp(&j);
    }
}

/// `z ∈ x`.
pub fn mem(z: &ISet, x: &ISet) -> bool {
    x.contains(z)
}

/// The strictly sorted member sequence of `x`.
pub fn members(x: &ISet) -> &[ISet] {
    x.members()
}

pub fn sup0(elems: impl IntoIterator<Item = ISet>) -> Result<ISet> {
    ISet::sup0(elems)
}

pub fn singleton(x: ISet) -> ISet {
    ISet::singleton(x)
}

pub fn upair(x: ISet, y: ISet) -> Result<ISet> {
    ISet::upair(x, y)
}

pub fn rank(x: &ISet) -> u32 {
    x.rank()
}

impl PartialEq for ISet {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

impl Eq for ISet {}

impl Hash for ISet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id().hash(state);
    }
}

impl Ord for ISet {
    fn cmp(&self, other: &Self) -> Ordering {
        iset_cmp(self, other)
    }
}

impl PartialOrd for ISet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical literal text with `#n` and `<a,b>` sugar; `{:#}` prints without sugar.
impl fmt::Display for ISet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let style = if f.alternate() {
            crate::literal::Style::PLAIN
        } else {
            crate::literal::Style::SUGARED
        };
        f.write_str(&crate::literal::print_with(self, style))
    }
}

impl fmt::Debug for ISet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ISet#{}({})", self.id(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> ISet {
        ISet::empty()
    }

    #[test]
    fn interning_makes_equal_sets_identical() {
        let a = ISet::sup0([e(), ISet::singleton(e())]).unwrap();
        let b = ISet::sup0([ISet::singleton(e()), e()]).unwrap();
        assert_eq!(a.id(), b.id());
        assert!(iset_eq(&a, &b));
        assert_eq!(a.members(), &[e(), ISet::singleton(e())]);
    }

    #[test]
    fn sup0_rejects_duplicates() {
        assert_eq!(ISet::sup0([e(), e()]), Err(Error::DuplicateElement(e())));
        assert!(ISet::upair(e(), e()).is_err());
        assert_eq!(ISet::sup0([]).unwrap(), e());
    }

    #[test]
    fn order_basics() {
        let one = ISet::singleton(e());
        let two = ISet::singleton(one.clone());
        assert_eq!(iset_cmp(&e(), &one), Ordering::Less);
        assert_eq!(iset_cmp(&one, &two), Ordering::Less);
        assert_eq!(iset_cmp(&two, &two), Ordering::Equal);
        // {∅,{∅}} has code 3, {{∅}} has code 2.
        let three = ISet::sup0([e(), one.clone()]).unwrap();
        assert_eq!(iset_cmp(&two, &three), Ordering::Less);
    }

    #[test]
    fn membership_and_rank() {
        let one = ISet::singleton(e());
        assert!(mem(&e(), &one));
        assert!(!mem(&one, &one));
        assert!(!mem(&e(), &e()));
        assert_eq!(rank(&e()), 0);
        assert_eq!(rank(&ISet::singleton(one.clone())), 2);
    }

    #[test]
    fn insert_keeps_order() {
        let one = ISet::singleton(e());
        let s = ISet::singleton(one.clone()).insert(e());
        assert_eq!(s, ISet::sup0([e(), one.clone()]).unwrap());
        assert_eq!(s.insert(one), s);
    }

    #[test]
    fn deep_singletons_are_fine() {
        let mut x = e();
        for _ in 0..10_000 {
            x = ISet::singleton(x);
        }
        assert_eq!(x.rank(), 10_000);
        let mut y = e();
        for _ in 0..9_999 {
            y = ISet::singleton(y);
        }
        assert_eq!(iset_cmp(&y, &x), Ordering::Less);
    }

    #[test]
    fn concurrent_interning_agrees() {
        let handles: Vec<_> = (0..8)
            .map(|_| {
                std::thread::spawn(|| {
                    let mut x = ISet::empty();
                    for _ in 0..200 {
                        x = ISet::sup0([ISet::empty(), ISet::singleton(x)]).unwrap();
                    }
                    x.id()
                })
            })
            .collect();
        let ids: Vec<u64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(ids.windows(2).all(|w| w[0] == w[1]));
    }
}
