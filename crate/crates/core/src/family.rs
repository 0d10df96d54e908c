use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::iset::ISet;
use crate::literal;

/// A set-valued function on the members of `base`: a type in context `base`.
///
/// Values are stored in the canonical order of `base`'s members, so two families are equal iff
/// they have the same base and agree everywhere.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Family {
    base: ISet,
    values: Vec<ISet>,
}

impl Family {
    /// From explicit `(member, value)` entries, which must cover every member of `base`
    /// exactly once.
    pub fn new(base: ISet, entries: impl IntoIterator<Item = (ISet, ISet)>) -> Result<Family> {
        let mut values: Vec<Option<ISet>> = vec![None; base.cardinality()];
        for (a, v) in entries {
            let i = base.index_of(&a).ok_or_else(|| Error::NotInDomain {
                element: a.clone(),
                domain: base.clone(),
            })?;
            if values[i].replace(v).is_some() {
                return Err(Error::DuplicateElement(a));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::NotTotal {
                    missing: base.members()[i].clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Family { base, values })
    }

    pub fn from_fn(base: ISet, mut f: impl FnMut(&ISet) -> Result<ISet>) -> Result<Family> {
        let values = base
            .members()
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>>>()?;
        Ok(Family { base, values })
    }

    /// Values listed in the canonical order of `base`'s members.
    pub fn from_values(base: ISet, values: Vec<ISet>) -> Result<Family> {
        if values.len() != base.cardinality() {
            return Err(Error::BoundaryMismatch(format!(
                "{} values for a base with {} members",
                values.len(),
                base.cardinality()
            )));
        }
        Ok(Family { base, values })
    }

    pub fn constant(base: ISet, value: ISet) -> Family {
        let values = vec![value; base.cardinality()];
        Family { base, values }
    }

    pub fn base(&self) -> &ISet {
        &self.base
    }

    /// The value at member `a`.
    pub fn at(&self, a: &ISet) -> Result<&ISet> {
        self.base
            .index_of(a)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::NotInDomain {
                element: a.clone(),
                domain: self.base.clone(),
            })
    }

    pub fn at_index(&self, i: usize) -> &ISet {
        &self.values[i]
    }

    pub fn values(&self) -> &[ISet] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ISet, &ISet)> {
        self.base.members().iter().zip(&self.values)
    }

    /// `{"base": set, "assign": [[member, set], ...]}` in canonical member order.
    pub fn to_json(&self) -> Value {
        let assign: Vec<Value> = self
            .iter()
            .map(|(a, v)| json!([literal::to_json(a), literal::to_json(v)]))
            .collect();
        json!({ "base": literal::to_json(&self.base), "assign": assign })
    }

    pub fn from_json(v: &Value) -> Result<Family> {
        let base = literal::from_json(field(v, "base")?)?;
        let entries = json_pairs(field(v, "assign")?)?;
        Family::new(base, entries)
    }
}

pub(crate) fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name)
        .ok_or_else(|| Error::Json(format!("missing field {name:?}")))
}

pub(crate) fn json_pairs(v: &Value) -> Result<Vec<(ISet, ISet)>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Json("expected an array of pairs".into()))?;
    items
        .iter()
        .map(|item| match item.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((literal::from_json(a)?, literal::from_json(b)?)),
            _ => Err(Error::Json(format!(
                "expected a two-element array, found {item}"
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::{bool0, unit0};

    #[test]
    fn lookup_and_totality() {
        let b = bool0();
        let fam = Family::new(b.clone(), [(ISet::empty(), unit0()), (unit0(), bool0())]).unwrap();
        assert_eq!(fam.at(&ISet::empty()).unwrap(), &unit0());
        assert!(matches!(fam.at(&bool0()), Err(Error::NotInDomain { .. })));
        assert!(matches!(
            Family::new(b.clone(), [(ISet::empty(), unit0())]),
            Err(Error::NotTotal { .. })
        ));
        assert!(matches!(
            Family::new(b, [(ISet::empty(), unit0()), (ISet::empty(), unit0())]),
            Err(Error::DuplicateElement(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let fam = Family::constant(bool0(), unit0());
        let v = fam.to_json();
        assert_eq!(
            v,
            json!({"base": [[], [[]]], "assign": [[[], [[]]], [[[]], [[]]]]})
        );
        assert_eq!(Family::from_json(&v).unwrap(), fam);
    }
}
