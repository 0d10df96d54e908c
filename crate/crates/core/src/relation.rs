//! Boolean relations on the members of a set, their equivalence closure, and set quotients
//! whose elements are literal equivalence classes.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{field, json_pairs};
use crate::iset::ISet;
use crate::literal;

/// A relation on `members(base)`, stored as a dense matrix indexed by member position.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    base: ISet,
    matrix: Vec<bool>,
}

impl Relation {
    pub fn new(base: ISet, pairs: impl IntoIterator<Item = (ISet, ISet)>) -> Result<Relation> {
        let n = base.cardinality();
        let mut matrix = vec![false; n * n];
        for (a, b) in pairs {
            let i = base.position(&a)?;
            let j = base.position(&b)?;
            matrix[i * n + j] = true;
        }
        Ok(Relation { base, matrix })
    }

    /// From member positions; panics on an out-of-range index.
    pub fn from_indices(base: ISet, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        let n = base.cardinality();
        let mut matrix = vec![false; n * n];
        for (i, j) in pairs {
            assert!(i < n && j < n, "index out of range for a base of size {n}");
            matrix[i * n + j] = true;
        }
        Relation { base, matrix }
    }

    /// The relation whose `(i, j)` entry is bit `i * n + j` of `bits`.
    pub fn from_bits(base: ISet, bits: u64) -> Relation {
        let n = base.cardinality();
        assert!(
            n * n <= 64,
            "bit encoding only covers bases of size at most 8"
        );
        let matrix = (0..n * n).map(|k| bits >> k & 1 == 1).collect();
        Relation { base, matrix }
    }

    pub fn empty(base: ISet) -> Relation {
        Relation::from_indices(base, [])
    }

    pub fn diagonal(base: ISet) -> Relation {
        let n = base.cardinality();
        Relation::from_indices(base, (0..n).map(|i| (i, i)))
    }

    pub fn total(base: ISet) -> Relation {
        let n = base.cardinality();
        Relation::from_indices(base, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))))
    }

    pub fn base(&self) -> &ISet {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.cardinality()
    }

    pub fn holds_at(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.size() + j]
    }

    pub fn relates(&self, a: &ISet, b: &ISet) -> Result<bool> {
        Ok(self.holds_at(self.base.position(a)?, self.base.position(b)?))
    }

    /// Related pairs in member order.
    pub fn pairs(&self) -> Vec<(ISet, ISet)> {
        let n = self.size();
        let ms = self.base.members();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.holds_at(i, j))
            .map(|(i, j)| (ms[i].clone(), ms[j].clone()))
            .collect()
    }

    /// `{"base": set, "pairs": [[member, member], ...]}`.
    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .pairs()
            .iter()
            .map(|(a, b)| json!([literal::to_json(a), literal::to_json(b)]))
            .collect();
        json!({ "base": literal::to_json(&self.base), "pairs": pairs })
    }

    pub fn from_json(v: &Value) -> Result<Relation> {
        let base = literal::from_json(field(v, "base")?)?;
        Relation::new(base, json_pairs(field(v, "pairs")?)?)
    }
}

/// Reflexive, symmetric, transitive closure, by Warshall's algorithm on the symmetrized matrix.
pub fn equiv_closure(r: &Relation) -> Relation {
    let n = r.size();
    let mut m = r.matrix.clone();
    for i in 0..n {
        m[i * n + i] = true;
        for j in 0..n {
            if r.matrix[j * n + i] {
                m[i * n + j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if m[i * n + k] {
                for j in 0..n {
                    if m[k * n + j] {
                        m[i * n + j] = true;
                    }
                }
            }
        }
    }
    Relation {
        base: r.base.clone(),
        matrix: m,
    }
}

/// Evaluates three characterizations of "equivalence relation" on `r`:
/// reflexive ∧ symmetric ∧ transitive; `r(a,b) ⇔ ∀c. r(a,c) ⇔ r(b,c)`; and
/// `r(a,b) ⇔ r(a,-) = r(b,-)` as rows.
pub fn lemma30_check(r: &Relation) -> (bool, bool, bool) {
    let n = r.size();
    let at = |i: usize, j: usize| r.holds_at(i, j);
    let reflexive = (0..n).all(|i| at(i, i));
    let symmetric = (0..n).all(|i| (0..n).all(|j| !at(i, j) || at(j, i)));
    let transitive =
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(at(i, j) && at(j, k)) || at(i, k))));
    let is_equivalence = reflexive && symmetric && transitive;

    let pointwise =
        (0..n).all(|a| (0..n).all(|b| at(a, b) == (0..n).all(|c| at(a, c) == at(b, c))));

    let row = |i: usize| &r.matrix[i * n..(i + 1) * n];
    let rows_equal = (0..n).all(|a| (0..n).all(|b| at(a, b) == (row(a) == row(b))));

    (is_equivalence, pointwise, rows_equal)
}

/// The class `{ y ∈ a : x ~ y }` of `x` under the equivalence closure of `r`.
pub fn class_of(a: &ISet, r: &Relation, x: &ISet) -> Result<ISet> {
    require_base(a, r)?;
    let closure = equiv_closure(r);
    let i = a.position(x)?;
    Ok(class_at(&closure, i))
}

fn class_at(closure: &Relation, i: usize) -> ISet {
    let ms = closure.base.members();
    ISet::intern_sorted(
        (0..ms.len())
            .filter(|&j| closure.holds_at(i, j))
            .map(|j| ms[j].clone())
            .collect(),
    )
}

/// The set of all classes.
pub fn quotient0(a: &ISet, r: &Relation) -> Result<ISet> {
    require_base(a, r)?;
    let closure = equiv_closure(r);
    Ok(ISet::from_members_dedup(
        (0..a.cardinality()).map(|i| class_at(&closure, i)),
    ))
}

/// The quotient map as a list of classes, aligned with `members(a)`.
pub fn quotient_map(a: &ISet, r: &Relation) -> Result<Vec<ISet>> {
    require_base(a, r)?;
    let closure = equiv_closure(r);
    Ok((0..a.cardinality())
        .map(|i| class_at(&closure, i))
        .collect())
}

fn require_base(a: &ISet, r: &Relation) -> Result<()> {
    if r.base() != a {
        return Err(Error::BoundaryMismatch(format!(
            "relation is over {}, expected {}",
            r.base(),
            a
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::{bool0, vn_numeral};

    #[test]
    fn closure_examples() {
        let three = vn_numeral(3).unwrap();
        assert_eq!(
            equiv_closure(&Relation::empty(three.clone())),
            Relation::diagonal(three.clone())
        );
        let r = Relation::from_indices(three.clone(), [(0, 1)]);
        let expected = Relation::from_indices(three, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)]);
        assert_eq!(equiv_closure(&r), expected);
    }

    #[test]
    fn lemma30_examples() {
        let three = vn_numeral(3).unwrap();
        assert_eq!(
            lemma30_check(&Relation::diagonal(three.clone())),
            (true, true, true)
        );
        assert_eq!(
            lemma30_check(&Relation::from_indices(three, [(0, 1)])),
            (false, false, false)
        );
    }

    #[test]
    fn quotient_examples() {
        let b = bool0();
        assert_eq!(
            quotient0(&b, &Relation::total(b.clone()))
                .unwrap()
                .cardinality(),
            1
        );
        assert_eq!(
            quotient0(&b, &Relation::empty(b.clone()))
                .unwrap()
                .cardinality(),
            2
        );
        assert_eq!(
            quotient0(&b, &Relation::total(b.clone())).unwrap(),
            ISet::singleton(b.clone())
        );
        let e = ISet::empty();
        assert_eq!(
            class_of(&b, &Relation::empty(b.clone()), &e).unwrap(),
            ISet::singleton(e.clone())
        );
        assert!(class_of(&b, &Relation::empty(b.clone()), &b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = Relation::from_indices(bool0(), [(0, 1)]);
        let v = r.to_json();
        assert_eq!(v, json!({"base": [[], [[]]], "pairs": [[[], [[]]]]}));
        assert_eq!(Relation::from_json(&v).unwrap(), r);
    }
}
