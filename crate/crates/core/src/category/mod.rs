//! The strict category whose objects are canonical sets and whose morphisms are total maps
//! between their member sets.
//!
//! Morphisms are extensional finite maps living outside the universe; [`arrow0`] graphs are
//! their internalization, and [`SetFn::to_graph`] / [`SetFn::from_graph`] convert between the
//! two.
//!
//! [`arrow0`]: crate::universe::arrow0

mod limits;
mod slice;
mod universal;

pub use limits::*;
pub use slice::*;
pub use universal::*;

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::family::{field, json_pairs, Family};
use crate::iset::ISet;
use crate::literal;
use crate::universe::{apply_graph, graph_of};

/// A morphism `dom → cod`: for each member of `dom` (in canonical order), the position of its
/// image among the members of `cod`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetFn {
    dom: ISet,
    cod: ISet,
    map: Vec<u32>,
}

impl SetFn {
    /// From explicit `(member, image)` entries covering every member of `dom` once.
    pub fn new(
        dom: ISet,
        cod: ISet,
        entries: impl IntoIterator<Item = (ISet, ISet)>,
    ) -> Result<SetFn> {
        let mut map: Vec<Option<u32>> = vec![None; dom.cardinality()];
        for (a, b) in entries {
            let i = dom.index_of(&a).ok_or_else(|| Error::NotInDomain {
                element: a.clone(),
                domain: dom.clone(),
            })?;
            let j = cod.index_of(&b).ok_or_else(|| Error::NotInCodomain {
                element: a.clone(),
                value: b.clone(),
                codomain: cod.clone(),
            })?;
            if map[i].replace(j as u32).is_some() {
                return Err(Error::DuplicateElement(a));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| Error::NotTotal {
                    missing: dom.members()[i].clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFn { dom, cod, map })
    }

    pub fn from_fn(
        dom: &ISet,
        cod: &ISet,
        mut f: impl FnMut(&ISet) -> Result<ISet>,
    ) -> Result<SetFn> {
        let map = dom
            .members()
            .iter()
            .map(|a| {
                let b = f(a)?;
                cod.index_of(&b)
                    .map(|j| j as u32)
                    .ok_or_else(|| Error::NotInCodomain {
                        element: a.clone(),
                        value: b,
                        codomain: cod.clone(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFn {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    /// From image positions, validated against the sizes of `dom` and `cod`.
    pub fn from_indices(dom: &ISet, cod: &ISet, map: Vec<u32>) -> Result<SetFn> {
        if map.len() != dom.cardinality() {
            return Err(Error::BoundaryMismatch(format!(
                "{} images for a domain with {} members",
                map.len(),
                dom.cardinality()
            )));
        }
        if let Some(i) = map.iter().position(|&j| j as usize >= cod.cardinality()) {
            return Err(Error::BoundaryMismatch(format!(
                "image position {} of {} is outside the codomain",
                map[i],
                dom.members()[i]
            )));
        }
        Ok(SetFn {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    pub(crate) fn from_indices_unchecked(dom: &ISet, cod: &ISet, map: Vec<u32>) -> SetFn {
        debug_assert_eq!(map.len(), dom.cardinality());
        SetFn {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        }
    }

    pub fn identity(x: &ISet) -> SetFn {
        SetFn::from_indices_unchecked(x, x, (0..x.cardinality() as u32).collect())
    }

    pub fn dom(&self) -> &ISet {
        &self.dom
    }

    pub fn cod(&self) -> &ISet {
        &self.cod
    }

    /// Image positions, in member order of the domain.
    pub fn indices(&self) -> &[u32] {
        &self.map
    }

    pub fn apply(&self, a: &ISet) -> Result<ISet> {
        let i = self.dom.index_of(a).ok_or_else(|| Error::NotInDomain {
            element: a.clone(),
            domain: self.dom.clone(),
        })?;
        Ok(self.apply_index(i).clone())
    }

    /// The image of the `i`-th member of the domain.
    pub fn apply_index(&self, i: usize) -> &ISet {
        &self.cod.members()[self.map[i] as usize]
    }

    /// `(member, image)` pairs in domain order.
    pub fn entries(&self) -> impl Iterator<Item = (&ISet, &ISet)> {
        self.dom
            .members()
            .iter()
            .zip(&self.map)
            .map(|(a, &j)| (a, &self.cod.members()[j as usize]))
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SetFn) -> Result<SetFn> {
        compose(self, f)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.cardinality()];
        self.map
            .iter()
            .all(|&j| !std::mem::replace(&mut seen[j as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.cardinality()];
        for &j in &self.map {
            seen[j as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.cardinality() == self.cod.cardinality() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<SetFn> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0u32; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Some(SetFn::from_indices_unchecked(&self.cod, &self.dom, inv))
    }

    /// The graph of this map as a member of `arrow0(dom, cod)`.
    pub fn to_graph(&self) -> ISet {
        let choice: Vec<ISet> = self.entries().map(|(_, b)| b.clone()).collect();
        graph_of(
            &self.dom,
            &Family::constant(self.dom.clone(), self.cod.clone()),
            &choice,
        )
        .expect("images lie in the codomain")
    }

    pub fn from_graph(dom: &ISet, cod: &ISet, graph: &ISet) -> Result<SetFn> {
        if graph.cardinality() != dom.cardinality() {
            return Err(Error::MalformedGraph {
                graph: graph.clone(),
                reason: "graph size differs from the domain size",
            });
        }
        SetFn::from_fn(dom, cod, |a| apply_graph(graph, a))
    }

    /// `{"dom": set, "cod": set, "map": [[member, member], ...]}` in domain order.
    pub fn to_json(&self) -> Value {
        let map: Vec<Value> = self
            .entries()
            .map(|(a, b)| json!([literal::to_json(a), literal::to_json(b)]))
            .collect();
        json!({
            "dom": literal::to_json(&self.dom),
            "cod": literal::to_json(&self.cod),
            "map": map,
        })
    }

    pub fn from_json(v: &Value) -> Result<SetFn> {
        let dom = literal::from_json(field(v, "dom")?)?;
        let cod = literal::from_json(field(v, "cod")?)?;
        SetFn::new(dom, cod, json_pairs(field(v, "map")?)?)
    }
}

pub fn mk_fn(
    dom: ISet,
    cod: ISet,
    mapping: impl IntoIterator<Item = (ISet, ISet)>,
) -> Result<SetFn> {
    SetFn::new(dom, cod, mapping)
}

pub fn id_fn(x: &ISet) -> SetFn {
    SetFn::identity(x)
}

/// `g ∘ f`; requires `f.cod = g.dom`.
pub fn compose(g: &SetFn, f: &SetFn) -> Result<SetFn> {
    if f.cod != g.dom {
        return Err(Error::BoundaryMismatch(format!(
            "cannot compose: {} is not {}",
            f.cod, g.dom
        )));
    }
    let map = f.map.iter().map(|&j| g.map[j as usize]).collect();
    Ok(SetFn::from_indices_unchecked(&f.dom, &g.cod, map))
}

/// `|Hom(x, y)| = |y|^|x|`, saturating.
pub fn hom_count(x: &ISet, y: &ISet) -> u64 {
    (y.cardinality() as u64).saturating_pow(x.cardinality().min(u32::MAX as usize) as u32)
}

/// Every morphism `x → y`, in lexicographic order of image positions.
pub fn homs(x: &ISet, y: &ISet) -> Result<Vec<SetFn>> {
    homs_with(x, y, &Budget::current())
}

pub fn homs_with(x: &ISet, y: &ISet, budget: &Budget) -> Result<Vec<SetFn>> {
    let mut out = Vec::new();
    for_each_index_map(x.cardinality(), y.cardinality(), budget, |m| {
        out.push(SetFn::from_indices_unchecked(x, y, m.to_vec()))
    })?;
    Ok(out)
}

/// Calls `f` on every map `0..n → 0..k` as an array of images, first position most
/// significant.
pub(crate) fn for_each_index_map(
    n: usize,
    k: usize,
    budget: &Budget,
    mut f: impl FnMut(&[u32]),
) -> Result<()> {
    let total = (k as u64).saturating_pow(n.min(u32::MAX as usize) as u32);
    Budget::check("hom-set size", total, budget.pi_cap)?;
    if total == 0 {
        return Ok(());
    }
    let mut digits = vec![0u32; n];
    loop {
        f(&digits);
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            digits[pos] += 1;
            if (digits[pos] as usize) < k {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::{arrow0, bool0, unit0};

    fn e() -> ISet {
        ISet::empty()
    }

    fn swap() -> SetFn {
        mk_fn(bool0(), bool0(), [(e(), unit0()), (unit0(), e())]).unwrap()
    }

    #[test]
    fn category_laws_on_examples() {
        let f = swap();
        assert_eq!(compose(&id_fn(&bool0()), &f).unwrap(), f);
        assert_eq!(compose(&f, &id_fn(&bool0())).unwrap(), f);
        assert_eq!(compose(&f, &f).unwrap(), id_fn(&bool0()));
        let h = SetFn::from_fn(&bool0(), &unit0(), |_| Ok(e())).unwrap();
        assert!(matches!(compose(&f, &h), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn mk_fn_validation() {
        assert!(matches!(
            mk_fn(bool0(), bool0(), [(e(), e())]),
            Err(Error::NotTotal { .. })
        ));
        assert!(matches!(
            mk_fn(bool0(), unit0(), [(e(), e()), (unit0(), unit0())]),
            Err(Error::NotInCodomain { .. })
        ));
        assert!(SetFn::from_indices(&bool0(), &unit0(), vec![0, 1]).is_err());
    }

    #[test]
    fn hom_counts() {
        assert_eq!(homs(&bool0(), &bool0()).unwrap().len(), 4);
        assert_eq!(homs(&e(), &bool0()).unwrap().len(), 1);
        assert_eq!(homs(&bool0(), &e()).unwrap().len(), 0);
        assert_eq!(hom_count(&bool0(), &e()), 0);
        assert_eq!(hom_count(&e(), &e()), 1);
    }

    #[test]
    fn graphs_round_trip() {
        let f = swap();
        let g = f.to_graph();
        assert!(arrow0(&bool0(), &bool0()).unwrap().contains(&g));
        assert_eq!(SetFn::from_graph(&bool0(), &bool0(), &g).unwrap(), f);
        assert_eq!(f.inverse().unwrap(), f);
    }

    #[test]
    fn json_form() {
        let f = swap();
        let v = f.to_json();
        assert_eq!(
            v,
            json!({"dom": [[], [[]]], "cod": [[], [[]]], "map": [[[], [[]]], [[[]], []]]})
        );
        assert_eq!(SetFn::from_json(&v).unwrap(), f);
    }
}
