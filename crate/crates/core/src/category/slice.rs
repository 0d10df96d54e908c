//! Slices over a base set, their products and exponentials, and the passage between slices and
//! families.

use std::collections::HashSet;

use crate::budget::{saturating_product, Budget};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::iset::ISet;
use crate::universe::{
    apply_graph, arrow0_with, fib0, graph_of, sigma0, wiener_pair, wiener_unpair,
};

use super::{compose, pullback, pullback_into, Pullback, SetFn};

/// An object `(total, proj: total → base)` of the slice over `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SliceObj {
    total: ISet,
    proj: SetFn,
}

impl SliceObj {
    pub fn new(proj: SetFn) -> SliceObj {
        SliceObj {
            total: proj.dom().clone(),
            proj,
        }
    }

    /// Checks that `proj` is a map `total → base`.
    pub fn over(base: &ISet, proj: SetFn) -> Result<SliceObj> {
        if proj.cod() != base {
            return Err(Error::BoundaryMismatch(format!(
                "projection lands in {}, not {}",
                proj.cod(),
                base
            )));
        }
        Ok(SliceObj::new(proj))
    }

    pub fn base(&self) -> &ISet {
        self.proj.cod()
    }

    pub fn total(&self) -> &ISet {
        &self.total
    }

    pub fn proj(&self) -> &SetFn {
        &self.proj
    }

    /// `{ x ∈ total : proj(x) = i }`.
    pub fn fiber(&self, i: &ISet) -> Result<ISet> {
        fib0(&self.proj, i)
    }
}

/// A map of total sets commuting with the projections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SliceHom {
    src: SliceObj,
    tgt: SliceObj,
    map: SetFn,
}

impl SliceHom {
    pub fn identity(s: &SliceObj) -> SliceHom {
        SliceHom {
            src: s.clone(),
            tgt: s.clone(),
            map: SetFn::identity(&s.total),
        }
    }

    pub fn src(&self) -> &SliceObj {
        &self.src
    }

    pub fn tgt(&self) -> &SliceObj {
        &self.tgt
    }

    pub fn map(&self) -> &SetFn {
        &self.map
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &SliceHom) -> Result<SliceHom> {
        if other.tgt != self.src {
            return Err(Error::BoundaryMismatch(
                "slice morphisms do not compose".into(),
            ));
        }
        Ok(SliceHom {
            src: other.src.clone(),
            tgt: self.tgt.clone(),
            map: compose(&self.map, &other.map)?,
        })
    }
}

/// Validates `h` as a morphism `s → t` over `a`: `t.proj ∘ h = s.proj`.
pub fn slice_hom(a: &ISet, s: &SliceObj, t: &SliceObj, h: SetFn) -> Result<SliceHom> {
    if s.base() != a || t.base() != a {
        return Err(Error::BoundaryMismatch(format!(
            "slice objects are not over {a}"
        )));
    }
    if h.dom() != s.total() || h.cod() != t.total() {
        return Err(Error::BoundaryMismatch(format!(
            "map {} → {} between totals {} and {}",
            h.dom(),
            h.cod(),
            s.total(),
            t.total()
        )));
    }
    for (i, &j) in h.indices().iter().enumerate() {
        if t.proj.indices()[j as usize] != s.proj.indices()[i] {
            return Err(Error::TriangleViolation {
                at: s.total.members()[i].clone(),
            });
        }
    }
    Ok(SliceHom {
        src: s.clone(),
        tgt: t.clone(),
        map: h,
    })
}

/// All slice morphisms `s → t`, enumerated fiber by fiber.
pub fn slice_homs(s: &SliceObj, t: &SliceObj) -> Result<Vec<SliceHom>> {
    slice_homs_with(s, t, &Budget::current())
}

pub fn slice_homs_with(s: &SliceObj, t: &SliceObj, budget: &Budget) -> Result<Vec<SliceHom>> {
    if s.base() != t.base() {
        return Err(Error::BoundaryMismatch(
            "slice objects over different bases".into(),
        ));
    }
    let by_base: Vec<Vec<u32>> = (0..s.base().cardinality() as u32)
        .map(|i| {
            (0..t.total.cardinality() as u32)
                .filter(|&j| t.proj.indices()[j as usize] == i)
                .collect()
        })
        .collect();
    let options: Vec<&[u32]> = s
        .proj
        .indices()
        .iter()
        .map(|&i| by_base[i as usize].as_slice())
        .collect();
    let total = saturating_product(options.iter().map(|o| o.len() as u64));
    Budget::check("slice hom-set size", total, budget.pi_cap)?;
    let mut out = Vec::with_capacity(total as usize);
    if total == 0 {
        return Ok(out);
    }
    let mut digits = vec![0usize; options.len()];
    loop {
        let map = digits.iter().zip(&options).map(|(&d, o)| o[d]).collect();
        out.push(SliceHom {
            src: s.clone(),
            tgt: t.clone(),
            map: SetFn::from_indices_unchecked(&s.total, &t.total, map),
        });
        let mut pos = options.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < options[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceProduct {
    pub obj: SliceObj,
    pub p1: SliceHom,
    pub p2: SliceHom,
    pullback: Pullback,
}

/// The pullback of the two projections, projected along either leg.
pub fn slice_product(s: &SliceObj, t: &SliceObj) -> Result<SliceProduct> {
    let pb = pullback(&s.proj, &t.proj)?;
    let obj = SliceObj::new(compose(&s.proj, &pb.p1)?);
    let a = s.base();
    Ok(SliceProduct {
        p1: slice_hom(a, &obj, s, pb.p1.clone())?,
        p2: slice_hom(a, &obj, t, pb.p2.clone())?,
        obj,
        pullback: pb,
    })
}

/// The mediator `z → prod.obj` of two slice morphisms out of `z`.
pub fn slice_pair(prod: &SliceProduct, h1: &SliceHom, h2: &SliceHom) -> Result<SliceHom> {
    if h1.src != h2.src || h1.tgt != prod.p1.tgt || h2.tgt != prod.p2.tgt {
        return Err(Error::BoundaryMismatch(
            "slice pairing boundaries differ".into(),
        ));
    }
    let m = pullback_into(&prod.pullback, &h1.map, &h2.map)?;
    slice_hom(prod.obj.base(), &h1.src, &prod.obj, m)
}

/// The slice exponential `t ⇒ s` over `a`, with its evaluation map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceExp {
    pub base: ISet,
    /// `(x, f)`, the codomain side.
    pub target: SliceObj,
    /// `(y, g)`, the exponent.
    pub exponent: SliceObj,
    /// Members `⟨i, h⟩` with `h` a graph `fib(g, i) → fib(f, i)`.
    pub obj: SliceObj,
    /// `obj ×_a exponent`.
    pub product: SliceProduct,
    pub eval: SliceHom,
}

/// `exp((x,f), (y,g)) = (sigma0(a, i ↦ fib0(g,i) → fib0(f,i)), first projection)`.
pub fn slice_exponential(a: &ISet, s: &SliceObj, t: &SliceObj) -> Result<SliceExp> {
    slice_exponential_with(a, s, t, &Budget::current())
}

pub fn slice_exponential_with(
    a: &ISet,
    s: &SliceObj,
    t: &SliceObj,
    budget: &Budget,
) -> Result<SliceExp> {
    if s.base() != a || t.base() != a {
        return Err(Error::BoundaryMismatch(format!(
            "slice objects are not over {a}"
        )));
    }
    let fam = Family::from_fn(a.clone(), |i| {
        arrow0_with(&t.fiber(i)?, &s.fiber(i)?, budget)
    })?;
    let total = sigma0(a, &fam)?;
    let proj = SetFn::from_fn(&total, a, |p| Ok(wiener_unpair(p)?.0))?;
    let obj = SliceObj::new(proj);
    let product = slice_product(&obj, t)?;
    let eval_map = SetFn::from_fn(product.obj.total(), s.total(), |q| {
        let (e, w) = wiener_unpair(q)?;
        let (_, h) = wiener_unpair(&e)?;
        Ok(wiener_unpair(&apply_graph(&h, &w)?)?.0)
    })?;
    let eval = slice_hom(a, &product.obj, s, eval_map)?;
    Ok(SliceExp {
        base: a.clone(),
        target: s.clone(),
        exponent: t.clone(),
        obj,
        product,
        eval,
    })
}

/// Transposes `k : z ×_a exponent → target` to `z → exp.obj`.
pub fn slice_curry(exp: &SliceExp, z: &SliceObj, k: &SliceHom) -> Result<SliceHom> {
    let zt = slice_product(z, &exp.exponent)?;
    if k.src != zt.obj || k.tgt != exp.target {
        return Err(Error::BoundaryMismatch(
            "slice_curry boundaries differ".into(),
        ));
    }
    let a = &exp.base;
    let map = SetFn::from_fn(z.total(), exp.obj.total(), |c| {
        let i = z.proj.apply(c)?;
        let dom = exp.exponent.fiber(&i)?;
        let cod = exp.target.fiber(&i)?;
        // Fiber members are `⟨y, ∅⟩`, which is also the tail of a pullback member.
        let choice = dom
            .members()
            .iter()
            .map(|w| {
                let x = k.map.apply(&wiener_pair(c.clone(), w.clone()))?;
                Ok(wiener_pair(x, ISet::empty()))
            })
            .collect::<Result<Vec<_>>>()?;
        let h = graph_of(&dom, &Family::constant(dom.clone(), cod), &choice)?;
        Ok(wiener_pair(i, h))
    })?;
    slice_hom(a, z, &exp.obj, map)
}

/// `eval ∘ (m ×_a id)`.
pub fn slice_uncurry(exp: &SliceExp, z: &SliceObj, m: &SliceHom) -> Result<SliceHom> {
    if m.src != *z || m.tgt != exp.obj {
        return Err(Error::BoundaryMismatch(
            "slice_uncurry boundaries differ".into(),
        ));
    }
    let zt = slice_product(z, &exp.exponent)?;
    let lifted = slice_pair(&exp.product, &m.after(&zt.p1)?, &zt.p2)?;
    exp.eval.after(&lifted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    /// `|Hom(z ×_a exponent, target)|`.
    pub lhs: usize,
    /// `|Hom(z, exp)|`.
    pub rhs: usize,
    /// Currying is injective, lands in `Hom(z, exp)`, and both round trips are identities.
    pub bijective: bool,
}

/// Exhaustive check of the currying bijection for one `z`.
pub fn verify_slice_adjunction(exp: &SliceExp, z: &SliceObj) -> Result<AdjunctionCheck> {
    let zt = slice_product(z, &exp.exponent)?;
    let left = slice_homs(&zt.obj, &exp.target)?;
    let right = slice_homs(z, &exp.obj)?;
    let mut bijective = true;
    let mut images = HashSet::new();
    for k in &left {
        let m = slice_curry(exp, z, k)?;
        bijective &= slice_uncurry(exp, z, &m)? == *k;
        bijective &= images.insert(m);
    }
    for m in &right {
        bijective &= slice_curry(exp, z, &slice_uncurry(exp, z, m)?)? == *m;
    }
    bijective &= images.len() == right.len();
    Ok(AdjunctionCheck {
        lhs: left.len(),
        rhs: right.len(),
        bijective,
    })
}

/// `i ↦ fib0(proj, i)`.
pub fn slice_to_family(a: &ISet, s: &SliceObj) -> Result<Family> {
    if s.base() != a {
        return Err(Error::BoundaryMismatch(format!(
            "slice object is not over {a}"
        )));
    }
    Family::from_fn(a.clone(), |i| s.fiber(i))
}

/// `(sigma0(a, F), first projection)`.
pub fn family_to_slice(a: &ISet, fam: &Family) -> Result<SliceObj> {
    if fam.base() != a {
        return Err(Error::BoundaryMismatch(format!("family is not over {a}")));
    }
    let total = sigma0(a, fam)?;
    let proj = SetFn::from_fn(&total, a, |p| Ok(wiener_unpair(p)?.0))?;
    Ok(SliceObj::new(proj))
}

/// For each `i`, the bijection `F(i) → slice_to_family(family_to_slice(F))(i)`,
/// `b ↦ ⟨⟨i, b⟩, ∅⟩`.
pub fn family_round_trip_iso(a: &ISet, fam: &Family) -> Result<Vec<SetFn>> {
    let back = slice_to_family(a, &family_to_slice(a, fam)?)?;
    fam.iter()
        .zip(back.values())
        .map(|((i, fi), gi)| {
            let iso = SetFn::from_fn(fi, gi, |b| {
                Ok(wiener_pair(
                    wiener_pair(i.clone(), b.clone()),
                    ISet::empty(),
                ))
            })?;
            if iso.is_bijective() {
                Ok(iso)
            } else {
                Err(Error::BoundaryMismatch(format!(
                    "fiber over {i} is not preserved"
                )))
            }
        })
        .collect()
}

/// The isomorphism `family_to_slice(slice_to_family(s)) → s` over `a`, `⟨i, ⟨x, ∅⟩⟩ ↦ x`.
pub fn slice_round_trip_iso(a: &ISet, s: &SliceObj) -> Result<SliceHom> {
    let back = family_to_slice(a, &slice_to_family(a, s)?)?;
    let map = SetFn::from_fn(back.total(), s.total(), |p| {
        Ok(wiener_unpair(&wiener_unpair(p)?.1)?.0)
    })?;
    if !map.is_bijective() {
        return Err(Error::BoundaryMismatch(
            "round trip is not bijective".into(),
        ));
    }
    slice_hom(a, &back, s, map)
}
