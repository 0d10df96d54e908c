//! Well-founded, finitely branching trees whose children may repeat.
//!
//! A node is `sup A f` with `A` the positions `0..n` and `f` positional lookup. All traversals
//! here use an explicit stack, so depth is limited by memory rather than by the call stack;
//! [`Budget::depth_cap`] bounds it for inputs that arrive from outside.

use std::collections::HashMap;
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::iset::ISet;

#[derive(Default)]
pub struct Multiset {
    children: Vec<Multiset>,
}

/// The `sup` constructor: order and multiplicity of `children` are kept as given.
pub fn mk_node(children: Vec<Multiset>) -> Multiset {
    Multiset { children }
}

impl Multiset {
    pub fn empty() -> Multiset {
        Multiset::default()
    }

    pub fn children(&self) -> &[Multiset] {
        &self.children
    }

    /// Number of index positions (`x̄` as a finite ordinal).
    pub fn width(&self) -> usize {
        self.children.len()
    }

    pub fn depth(&self) -> usize {
        self.fold(|_, kids: Vec<usize>| kids.into_iter().max().map_or(0, |d| d + 1))
    }

    /// Post-order fold with an explicit stack: `f` sees each node together with the results
    /// already computed for its children, in child order.
    pub fn fold<T>(&self, mut f: impl FnMut(&Multiset, Vec<T>) -> T) -> T {
        self.try_fold(|node, kids, _| Ok::<T, std::convert::Infallible>(f(node, kids)))
            .unwrap_or_else(|never| match never {})
    }

    /// Fallible post-order fold; `f` also receives the child-index path to the node.
    pub fn try_fold<T, E>(
        &self,
        mut f: impl FnMut(&Multiset, Vec<T>, &[usize]) -> Result<T, E>,
    ) -> Result<T, E> {
        struct Frame<'a, T> {
            node: &'a Multiset,
            next: usize,
            done: Vec<T>,
        }
        let mut path: Vec<usize> = Vec::new();
        let mut stack = vec![Frame {
            node: self,
            next: 0,
            done: Vec::with_capacity(self.children.len()),
        }];
        loop {
            let top = stack.last_mut().expect("stack is never empty here");
            if top.next < top.node.children.len() {
                let child = &top.node.children[top.next];
                path.push(top.next);
                top.next += 1;
                stack.push(Frame {
                    node: child,
                    next: 0,
                    done: Vec::with_capacity(child.children.len()),
                });
                continue;
            }
            let frame = stack.pop().expect("stack is never empty here");
            let value = f(frame.node, frame.done, &path)?;
            match stack.last_mut() {
                Some(parent) => {
                    path.pop();
                    parent.done.push(value);
                }
                None => return Ok(value),
            }
        }
    }

    /// Rejects trees deeper than the budget allows.
    pub fn check_depth(&self, budget: &Budget) -> Result<()> {
        let depth = self.depth() as u64;
        Budget::check("multiset depth", depth, budget.depth_cap)
    }
}

impl Clone for Multiset {
    fn clone(&self) -> Self {
        self.fold(|_, children| Multiset { children })
    }
}

/// Ordered structural equality (same children in the same positions); see [`meq`] for the
/// extensional one.
impl PartialEq for Multiset {
    fn eq(&self, other: &Self) -> bool {
        let mut pending = vec![(self, other)];
        while let Some((a, b)) = pending.pop() {
            if a.children.len() != b.children.len() {
                return false;
            }
            pending.extend(a.children.iter().zip(&b.children));
        }
        true
    }
}

impl Eq for Multiset {}

impl Drop for Multiset {
    fn drop(&mut self) {
        let mut pending = std::mem::take(&mut self.children);
        while let Some(mut node) = pending.pop() {
            pending.append(&mut node.children);
        }
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.fold(|_, kids: Vec<String>| format!("{{{}}}", kids.join(",")));
        f.write_str(&text)
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Assigns every subtree an id such that two subtrees get the same id iff they are `meq`.
///
/// The key of a node is its sorted multiset of child ids, duplicates retained, which is the
/// canonical multiset form.
#[derive(Default)]
struct ClassTable {
    ids: HashMap<Vec<u32>, u32>,
}

impl ClassTable {
    fn class_of(&mut self, x: &Multiset) -> u32 {
        x.fold(|_, mut kids: Vec<u32>| {
            kids.sort_unstable();
            let next = self.ids.len() as u32;
            *self.ids.entry(kids).or_insert(next)
        })
    }

    fn child_classes(&mut self, x: &Multiset) -> Vec<u32> {
        x.children.iter().map(|c| self.class_of(c)).collect()
    }
}

/// Number of children of `y` extensionally equal to `z`: the size of the fiber of `ỹ` over `z`.
pub fn multiplicity(z: &Multiset, y: &Multiset) -> usize {
    let mut table = ClassTable::default();
    let target = table.class_of(z);
    table
        .child_classes(y)
        .into_iter()
        .filter(|&c| c == target)
        .count()
}

/// Extensional equality of multisets: every `z` occurs equally often in both.
pub fn meq(x: &Multiset, y: &Multiset) -> bool {
    let mut table = ClassTable::default();
    table.class_of(x) == table.class_of(y)
}

/// Extensional equality by searching for a bijection of index positions under which the
/// children agree pointwise (recursively, by the same search).
pub fn meq_via_bijection(x: &Multiset, y: &Multiset) -> Result<bool> {
    meq_via_bijection_with(x, y, &Budget::current())
}

pub fn meq_via_bijection_with(x: &Multiset, y: &Multiset, budget: &Budget) -> Result<bool> {
    BijectionSearch {
        budget,
        memo: HashMap::new(),
    }
    .equal(x, y)
}

/// Backtracking search for index bijections. Pointwise comparisons are computed on demand
/// and memoized by node address for the duration of one top-level call.
struct BijectionSearch<'b> {
    budget: &'b Budget,
    memo: HashMap<(*const Multiset, *const Multiset), bool>,
}

impl BijectionSearch<'_> {
    fn equal(&mut self, x: &Multiset, y: &Multiset) -> Result<bool> {
        if x.width() != y.width() {
            return Ok(false);
        }
        Budget::check(
            "permutation search width",
            x.width() as u64,
            self.budget.perm_cap,
        )?;
        let key = (x as *const Multiset, y as *const Multiset);
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        let mut used = vec![false; y.width()];
        let found = self.extend(&x.children, &y.children, 0, &mut used)?;
        self.memo.insert(key, found);
        Ok(found)
    }

    fn extend(
        &mut self,
        xs: &[Multiset],
        ys: &[Multiset],
        i: usize,
        used: &mut [bool],
    ) -> Result<bool> {
        if i == xs.len() {
            return Ok(true);
        }
        for j in 0..ys.len() {
            if !used[j] && self.equal(&xs[i], &ys[j])? {
                used[j] = true;
                if self.extend(xs, ys, i + 1, used)? {
                    return Ok(true);
                }
                used[j] = false;
            }
        }
        Ok(false)
    }
}

/// Children pairwise distinct, hereditarily.
pub fn is_iterative(x: &Multiset) -> bool {
    first_duplicate(x).is_none()
}

fn first_duplicate(x: &Multiset) -> Option<Error> {
    let mut table = ClassTable::default();
    x.try_fold(|_, mut kids: Vec<u32>, path| {
        let mut order: Vec<usize> = (0..kids.len()).collect();
        order.sort_by_key(|&i| (kids[i], i));
        if let Some(w) = order.windows(2).find(|w| kids[w[0]] == kids[w[1]]) {
            return Err(Error::NotIterative {
                path: path.to_vec(),
                first: w[0],
                second: w[1],
            });
        }
        kids.sort_unstable();
        let next = table.ids.len() as u32;
        Ok(*table.ids.entry(kids).or_insert(next))
    })
    .err()
}

/// The unique canonical set extensionally equal to an iterative multiset.
pub fn canonicalize(x: &Multiset) -> Result<ISet> {
    x.try_fold(|_, kids: Vec<ISet>, path| {
        let mut order: Vec<usize> = (0..kids.len()).collect();
        order.sort_by(|&a, &b| kids[a].cmp(&kids[b]));
        if let Some(w) = order.windows(2).find(|w| kids[w[0]] == kids[w[1]]) {
            return Err(Error::NotIterative {
                path: path.to_vec(),
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
        let mut sorted = kids;
        sorted.sort_unstable();
        Ok(ISet::intern_sorted(sorted))
    })
}

/// Hereditarily removes repeated children, then canonicalizes. Total on all multisets.
pub fn collapse(x: &Multiset) -> ISet {
    x.fold(|_, kids: Vec<ISet>| ISet::from_members_dedup(kids))
}

impl ISet {
    /// The underlying tree, members in canonical order.
    pub fn to_multiset(&self) -> Multiset {
        // Members are shared between many parents; rebuild with an explicit stack.
        enum Step {
            Enter(ISet),
            Build(usize),
        }
        let mut work = vec![Step::Enter(self.clone())];
        let mut built: Vec<Multiset> = Vec::new();
        while let Some(step) = work.pop() {
            match step {
                Step::Enter(s) => {
                    work.push(Step::Build(s.cardinality()));
                    for m in s.members().iter().rev() {
                        work.push(Step::Enter(m.clone()));
                    }
                }
                Step::Build(n) => {
                    let children = built.split_off(built.len() - n);
                    built.push(Multiset { children });
                }
            }
        }
        built.pop().expect("one tree is built")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> Multiset {
        Multiset::empty()
    }
    fn node(children: Vec<Multiset>) -> Multiset {
        mk_node(children)
    }

    #[test]
    fn mk_node_keeps_order_and_multiplicity() {
        let m = node(vec![e(), e()]);
        assert_eq!(m.width(), 2);
        assert_eq!(node(vec![]), e());
        assert_eq!(node(vec![node(vec![])]).width(), 1);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&e(), &node(vec![e(), e()])), 2);
        assert_eq!(multiplicity(&e(), &e()), 0);
        let one = node(vec![e()]);
        assert_eq!(multiplicity(&one, &node(vec![e(), one.clone()])), 1);
    }

    #[test]
    fn meq_examples() {
        let one = node(vec![e()]);
        assert!(meq(
            &node(vec![e(), one.clone()]),
            &node(vec![one.clone(), e()])
        ));
        assert!(!meq(&node(vec![e(), e()]), &node(vec![e()])));
        assert!(meq_via_bijection(&node(vec![e(), one.clone()]), &node(vec![one, e()])).unwrap());
        assert!(!meq_via_bijection(&node(vec![e(), e()]), &node(vec![e()])).unwrap());
    }

    #[test]
    fn bijection_search_respects_width_cap() {
        let wide = node((0..9).map(|_| e()).collect());
        assert!(matches!(
            meq_via_bijection_with(&wide, &wide, &Budget::DEFAULT),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn iterativity_examples() {
        assert!(!is_iterative(&node(vec![e(), e()])));
        assert!(is_iterative(&e()));
        assert!(is_iterative(&node(vec![e(), node(vec![e()])])));
        // {{∅,∅}} fails one level down.
        assert_eq!(
            canonicalize(&node(vec![node(vec![e(), e()])])),
            Err(Error::NotIterative {
                path: vec![0],
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn canonicalize_sorts_children() {
        let x = canonicalize(&node(vec![node(vec![e()]), e()])).unwrap();
        let empty = ISet::empty();
        assert_eq!(
            x.members(),
            &[empty.clone(), ISet::singleton(empty.clone())]
        );
        assert_eq!(canonicalize(&e()).unwrap(), empty);
        assert!(matches!(
            canonicalize(&node(vec![e(), e()])),
            Err(Error::NotIterative { .. })
        ));
    }

    #[test]
    fn collapse_whittles_duplicates() {
        let empty = ISet::empty();
        assert_eq!(
            collapse(&node(vec![e(), e()])),
            ISet::singleton(empty.clone())
        );
        assert_eq!(
            collapse(&node(vec![node(vec![e(), e()])])),
            ISet::singleton(ISet::singleton(empty))
        );
    }

    #[test]
    fn deep_trees_do_not_overflow() {
        let mut x = e();
        for _ in 0..100_000 {
            x = node(vec![x]);
        }
        assert_eq!(x.depth(), 100_000);
        assert!(x.check_depth(&Budget::DEFAULT).is_err());
        let c = collapse(&x);
        assert_eq!(c.rank(), 100_000);
        let y = x.clone();
        assert!(meq(&x, &y));
        assert_eq!(c.to_multiset(), y);
    }
}
