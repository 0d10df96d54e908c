//! Instance pools and random generators shared by the suites.

use rand::seq::SliceRandom;
use rand::Rng;

use vz_core::{from_code_u64, mk_node, Family, ISet, Multiset, SetFn};

/// The sets of rank at most 2: ∅, {∅}, {{∅}}, {∅,{∅}}.
pub fn small_sets() -> Vec<ISet> {
    (0..4).map(from_code_u64).collect()
}

/// Sets of at most `max` members drawn from [`small_sets`], in code order.
pub fn objects(max: usize) -> Vec<ISet> {
    (0..16u64)
        .filter(|c| c.count_ones() as usize <= max)
        .map(from_code_u64)
        .collect()
}

/// Every family over `base` whose fibers come from `pool`.
pub fn families(base: &ISet, pool: &[ISet]) -> Vec<Family> {
    let n = base.cardinality();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let values = digits.iter().map(|&d| pool[d].clone()).collect();
        out.push(Family::from_values(base.clone(), values).expect("one value per member"));
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < pool.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

pub fn random_map(rng: &mut impl Rng, dom: &ISet, cod: &ISet) -> Option<SetFn> {
    if cod.is_empty() && !dom.is_empty() {
        return None;
    }
    let map = (0..dom.cardinality())
        .map(|_| rng.gen_range(0..cod.cardinality()) as u32)
        .collect();
    Some(SetFn::from_indices(dom, cod, map).expect("indices are in range"))
}

pub fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("non-empty pool")
}

/// A plain tree whose children may repeat, convertible to a [`Multiset`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree(pub Vec<Tree>);

impl Tree {
    pub fn of_set(x: &ISet) -> Tree {
        Tree(x.members().iter().map(Tree::of_set).collect())
    }

    pub fn to_multiset(&self) -> Multiset {
        mk_node(self.0.iter().map(Tree::to_multiset).collect())
    }

    /// The same tree with the children of every node permuted.
    pub fn shuffled(&self, rng: &mut impl Rng) -> Tree {
        let mut kids: Vec<Tree> = self.0.iter().map(|k| k.shuffled(rng)).collect();
        kids.shuffle(rng);
        Tree(kids)
    }

    /// Replaces one random subtree with ∅ or with a copy of a sibling.
    pub fn mutated(&self, rng: &mut impl Rng) -> Tree {
        if self.0.is_empty() {
            return Tree(vec![Tree(vec![])]);
        }
        let mut kids = self.0.clone();
        let i = rng.gen_range(0..kids.len());
        kids[i] = match rng.gen_range(0..3) {
            0 => Tree(vec![]),
            1 => kids[rng.gen_range(0..kids.len())].clone(),
            _ => kids[i].mutated(rng),
        };
        Tree(kids)
    }

    pub fn text(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(Tree::text).collect();
        format!("[{}]", inner.join(","))
    }
}

/// A random tree with at most `width` children per node and depth at most `depth`.
/// Children may repeat.
pub fn random_tree(rng: &mut impl Rng, width: usize, depth: usize) -> Tree {
    if depth == 0 {
        return Tree(vec![]);
    }
    let w = rng.gen_range(0..=width);
    Tree(
        (0..w)
            .map(|_| {
                let d = rng.gen_range(0..depth);
                random_tree(rng, width, d)
            })
            .collect(),
    )
}

/// A random iterative set with the same shape bounds.
pub fn random_set(rng: &mut impl Rng, width: usize, depth: usize) -> ISet {
    if depth == 0 {
        return ISet::empty();
    }
    let w = rng.gen_range(0..=width);
    ISet::from_members_dedup((0..w).map(|_| {
        let d = rng.gen_range(0..depth);
        random_set(rng, width, d)
    }))
}
