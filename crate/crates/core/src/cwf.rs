//! The category with families on canonical sets.
//!
//! Contexts are sets, types over `Γ` are families on its members, terms are sections, and
//! substitutions are morphisms. Every structural law holds as equality of these finite data.

use crate::budget::{saturating_product, Budget};
use crate::category::{compose, SetFn};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::iset::ISet;
use crate::universe::{
    apply_graph, bool0, coprod0, empty0, graph_of, id0, pi0_with, sigma0, unit0, vn_numeral,
    wiener_pair, wiener_unpair,
};

pub type Ctx = ISet;
pub type TyOver = Family;
pub type Sub = SetFn;

/// A term of type `ty` in context `ty.base()`: a choice of `assign(γ) ∈ ty(γ)` for every `γ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Section {
    ty: Family,
    assign: Vec<ISet>,
}

impl Section {
    /// `assign` lists values in member order of the context.
    pub fn new(ty: Family, assign: Vec<ISet>) -> Result<Section> {
        if assign.len() != ty.base().cardinality() {
            return Err(Error::BoundaryMismatch(format!(
                "{} values for a context with {} members",
                assign.len(),
                ty.base().cardinality()
            )));
        }
        for ((g, fiber), v) in ty.iter().zip(&assign) {
            if !fiber.contains(v) {
                return Err(Error::FiberViolation {
                    at: g.clone(),
                    value: v.clone(),
                    fiber: fiber.clone(),
                });
            }
        }
        Ok(Section { ty, assign })
    }

    pub fn from_fn(ty: Family, f: impl FnMut(&ISet) -> Result<ISet>) -> Result<Section> {
        let assign = ty
            .base()
            .members()
            .iter()
            .map(f)
            .collect::<Result<Vec<_>>>()?;
        Section::new(ty, assign)
    }

    pub fn ctx(&self) -> &Ctx {
        self.ty.base()
    }

    pub fn ty(&self) -> &TyOver {
        &self.ty
    }

    pub fn values(&self) -> &[ISet] {
        &self.assign
    }

    pub fn at(&self, g: &ISet) -> Result<&ISet> {
        Ok(&self.assign[self.ctx().position(g)?])
    }

    pub fn at_index(&self, i: usize) -> &ISet {
        &self.assign[i]
    }
}

/// Every section of `ty`, in lexicographic order (first context member most significant).
pub fn sections(ty: &TyOver) -> Result<Vec<Section>> {
    sections_with(ty, &Budget::current())
}

pub fn sections_with(ty: &TyOver, budget: &Budget) -> Result<Vec<Section>> {
    let sizes = ty.values().iter().map(|f| f.cardinality() as u64);
    let total = saturating_product(sizes);
    Budget::check("section count", total, budget.pi_cap)?;
    let mut out = Vec::with_capacity(total as usize);
    if total == 0 {
        return Ok(out);
    }
    let fibers = ty.values();
    let mut digits = vec![0usize; fibers.len()];
    loop {
        let assign = digits
            .iter()
            .zip(fibers)
            .map(|(&d, f)| f.members()[d].clone())
            .collect();
        out.push(Section {
            ty: ty.clone(),
            assign,
        });
        let mut pos = fibers.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < fibers[pos].cardinality() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn require_ctx(expected: &ISet, found: &ISet, what: &str) -> Result<()> {
    if expected != found {
        return Err(Error::BoundaryMismatch(format!(
            "{what} is over {found}, expected {expected}"
        )));
    }
    Ok(())
}

/// `A · γ`: precomposition.
pub fn subst_ty(a: &TyOver, gamma: &Sub) -> Result<TyOver> {
    require_ctx(gamma.cod(), a.base(), "type")?;
    let values = gamma
        .indices()
        .iter()
        .map(|&j| a.at_index(j as usize).clone())
        .collect();
    Family::from_values(gamma.dom().clone(), values)
}

/// `a[γ]`, a section of `A · γ`.
pub fn subst_tm(a: &Section, gamma: &Sub) -> Result<Section> {
    let ty = subst_ty(&a.ty, gamma)?;
    let assign = gamma
        .indices()
        .iter()
        .map(|&j| a.assign[j as usize].clone())
        .collect();
    Ok(Section { ty, assign })
}

/// `Γ.A = sigma0(Γ, A)`.
pub fn ctx_ext(g: &Ctx, a: &TyOver) -> Result<Ctx> {
    sigma0(g, a)
}

/// The first projection `Γ.A → Γ`.
pub fn p_proj(g: &Ctx, a: &TyOver) -> Result<Sub> {
    let ext = ctx_ext(g, a)?;
    SetFn::from_fn(&ext, g, |p| Ok(wiener_unpair(p)?.0))
}

/// The last variable: a section of `A · p` over `Γ.A`.
pub fn q_var(g: &Ctx, a: &TyOver) -> Result<Section> {
    let p = p_proj(g, a)?;
    let ty = subst_ty(a, &p)?;
    Section::from_fn(ty, |m| Ok(wiener_unpair(m)?.1))
}

/// `γ.a : Δ → Γ.A`, `δ ↦ ⟨γ(δ), a(δ)⟩`.
pub fn ext_sub(gamma: &Sub, a_ty: &TyOver, a: &Section) -> Result<Sub> {
    let expected = subst_ty(a_ty, gamma)?;
    if a.ty != expected {
        return Err(Error::BoundaryMismatch(
            "the term's type is not the substituted type".into(),
        ));
    }
    let ext = ctx_ext(gamma.cod(), a_ty)?;
    let images = (0..gamma.dom().cardinality())
        .map(|i| wiener_pair(gamma.apply_index(i).clone(), a.assign[i].clone()));
    let map = images
        .map(|m| ext.position(&m).map(|j| j as u32))
        .collect::<Result<Vec<_>>>()?;
    SetFn::from_indices(gamma.dom(), &ext, map)
}

/// The inverse of [`ext_sub`]: `δ ↦ (p ∘ δ, q[δ])`.
pub fn compr_fwd(g: &Ctx, a_ty: &TyOver, delta: &Sub) -> Result<(Sub, Section)> {
    let p = p_proj(g, a_ty)?;
    let q = q_var(g, a_ty)?;
    Ok((compose(&p, delta)?, subst_tm(&q, delta)?))
}

pub fn compr_bwd(gamma: &Sub, a_ty: &TyOver, a: &Section) -> Result<Sub> {
    ext_sub(gamma, a_ty, a)
}

/// `γ⁺ = (γ ∘ p).q : Δ.(A·γ) → Γ.A`.
pub fn weaken(gamma: &Sub, a_ty: &TyOver) -> Result<Sub> {
    let delta = gamma.dom();
    let a_gamma = subst_ty(a_ty, gamma)?;
    let p = p_proj(delta, &a_gamma)?;
    let q = q_var(delta, &a_gamma)?;
    ext_sub(&compose(gamma, &p)?, a_ty, &q)
}

/// Values of `B` at `⟨x, a⟩` for `a ∈ A(x)`, as a family on `A(x)`.
fn fiber_family(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver, i: usize) -> Result<Family> {
    let x = &g.members()[i];
    let ax = a_ty.at_index(i);
    Family::from_fn(ax.clone(), |a| {
        b_ty.at(&wiener_pair(x.clone(), a.clone())).cloned()
    })
}

fn require_dependent(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver) -> Result<()> {
    require_ctx(g, a_ty.base(), "A")?;
    require_ctx(&ctx_ext(g, a_ty)?, b_ty.base(), "B")
}

/// `x ↦ pi0(A x, a ↦ B⟨x,a⟩)`.
pub fn pi_str(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver) -> Result<TyOver> {
    pi_str_with(g, a_ty, b_ty, &Budget::current())
}

pub fn pi_str_with(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver, budget: &Budget) -> Result<TyOver> {
    require_dependent(g, a_ty, b_ty)?;
    let values = (0..g.cardinality())
        .map(|i| pi0_with(a_ty.at_index(i), &fiber_family(g, a_ty, b_ty, i)?, budget))
        .collect::<Result<Vec<_>>>()?;
    Family::from_values(g.clone(), values)
}

/// Application: a section of `B` over `Γ.A` from a section of the Π-type.
pub fn alpha_pi(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver, f: &Section) -> Result<Section> {
    require_dependent(g, a_ty, b_ty)?;
    require_ctx(g, f.ctx(), "function")?;
    Section::from_fn(b_ty.clone(), |m| {
        let (x, a) = wiener_unpair(m)?;
        apply_graph(f.at(&x)?, &a)
    })
}

/// Abstraction: the inverse of [`alpha_pi`].
pub fn alpha_pi_inv(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver, body: &Section) -> Result<Section> {
    let pi = pi_str(g, a_ty, b_ty)?;
    require_ctx(&ctx_ext(g, a_ty)?, body.ctx(), "body")?;
    let assign = (0..g.cardinality())
        .map(|i| {
            let x = &g.members()[i];
            let ax = a_ty.at_index(i);
            let choice = ax
                .members()
                .iter()
                .map(|a| body.at(&wiener_pair(x.clone(), a.clone())).cloned())
                .collect::<Result<Vec<_>>>()?;
            graph_of(ax, &fiber_family(g, a_ty, b_ty, i)?, &choice)
        })
        .collect::<Result<Vec<_>>>()?;
    Section::new(pi, assign)
}

/// `x ↦ sigma0(A x, a ↦ B⟨x,a⟩)`.
pub fn sig_str(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver) -> Result<TyOver> {
    require_dependent(g, a_ty, b_ty)?;
    let values = (0..g.cardinality())
        .map(|i| sigma0(a_ty.at_index(i), &fiber_family(g, a_ty, b_ty, i)?))
        .collect::<Result<Vec<_>>>()?;
    Family::from_values(g.clone(), values)
}

/// Splits a section of the Σ-type into `a : A` and `b : B · (id.a)`.
pub fn alpha_sig(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver, s: &Section) -> Result<(Section, Section)> {
    require_dependent(g, a_ty, b_ty)?;
    require_ctx(g, s.ctx(), "pair")?;
    let halves = s
        .assign
        .iter()
        .map(wiener_unpair)
        .collect::<Result<Vec<_>>>()?;
    let a = Section::new(a_ty.clone(), halves.iter().map(|h| h.0.clone()).collect())?;
    let b_ty_a = subst_ty(b_ty, &ext_sub(&SetFn::identity(g), a_ty, &a)?)?;
    let b = Section::new(b_ty_a, halves.into_iter().map(|h| h.1).collect())?;
    Ok((a, b))
}

pub fn alpha_sig_inv(
    g: &Ctx,
    a_ty: &TyOver,
    b_ty: &TyOver,
    a: &Section,
    b: &Section,
) -> Result<Section> {
    let sig = sig_str(g, a_ty, b_ty)?;
    let expected = subst_ty(b_ty, &ext_sub(&SetFn::identity(g), a_ty, a)?)?;
    if b.ty != expected {
        return Err(Error::BoundaryMismatch(
            "second component has the wrong type".into(),
        ));
    }
    let assign = a
        .assign
        .iter()
        .zip(&b.assign)
        .map(|(x, y)| wiener_pair(x.clone(), y.clone()))
        .collect();
    Section::new(sig, assign)
}

/// `x ↦ id0(A x, a x, a' x)`.
pub fn id_str(g: &Ctx, a_ty: &TyOver, a: &Section, a2: &Section) -> Result<TyOver> {
    require_ctx(g, a_ty.base(), "type")?;
    if a.ty != *a_ty || a2.ty != *a_ty {
        return Err(Error::BoundaryMismatch(
            "terms are not of the given type".into(),
        ));
    }
    let values = (0..g.cardinality())
        .map(|i| id0(a_ty.at_index(i), &a.assign[i], &a2.assign[i]))
        .collect::<Result<Vec<_>>>()?;
    Family::from_values(g.clone(), values)
}

/// `refl : Id A a a`.
pub fn refl_tm(a: &Section) -> Result<Section> {
    let ty = id_str(a.ctx(), &a.ty, a, a)?;
    Section::from_fn(ty, |_| Ok(empty0()))
}

/// Equality reflection: given a proof of `Id A a a'`, decides whether `a` and `a'` agree
/// everywhere. A well-typed proof always yields `true`.
pub fn eq_reflect(proof: &Section, a_ty: &TyOver, a: &Section, a2: &Section) -> Result<bool> {
    let ty = id_str(a.ctx(), a_ty, a, a2)?;
    if proof.ty != ty {
        return Err(Error::BoundaryMismatch("proof has the wrong type".into()));
    }
    Ok(a.assign == a2.assign)
}

pub fn unit_str(g: &Ctx) -> TyOver {
    Family::constant(g.clone(), unit0())
}

pub fn tt_tm(g: &Ctx) -> Section {
    Section::from_fn(unit_str(g), |_| Ok(empty0())).expect("∅ ∈ {∅}")
}

pub fn empty_str(g: &Ctx) -> TyOver {
    Family::constant(g.clone(), empty0())
}

/// `absurd e : C`. A section of the empty type exists only over the empty context.
pub fn absurd_tm(e: &Section, c: &TyOver) -> Result<Section> {
    require_ctx(e.ctx(), c.base(), "target type")?;
    if e.ty != empty_str(e.ctx()) {
        return Err(Error::BoundaryMismatch(
            "absurd expects a term of Empty".into(),
        ));
    }
    Section::new(c.clone(), Vec::new())
}

pub fn bool_str(g: &Ctx) -> TyOver {
    Family::constant(g.clone(), bool0())
}

pub fn true_tm(g: &Ctx) -> Section {
    Section::from_fn(bool_str(g), |_| Ok(unit0())).expect("true ∈ Bool")
}

pub fn false_tm(g: &Ctx) -> Section {
    Section::from_fn(bool_str(g), |_| Ok(empty0())).expect("false ∈ Bool")
}

/// Dependent elimination: `c` is over `Γ.Bool`; `then_` has type `c·(id.true)`, `else_` has
/// type `c·(id.false)`; the result has type `c·(id.b)`.
pub fn if_tm(
    g: &Ctx,
    c: &TyOver,
    b: &Section,
    then_: &Section,
    else_: &Section,
) -> Result<Section> {
    let bool_ty = bool_str(g);
    let id = SetFn::identity(g);
    let at = |s: &Section| -> Result<TyOver> { subst_ty(c, &ext_sub(&id, &bool_ty, s)?) };
    if then_.ty != at(&true_tm(g))? || else_.ty != at(&false_tm(g))? {
        return Err(Error::BoundaryMismatch(
            "branch types do not match the motive".into(),
        ));
    }
    let assign = (0..g.cardinality())
        .map(|i| {
            if b.assign[i].is_empty() {
                else_.assign[i].clone()
            } else {
                then_.assign[i].clone()
            }
        })
        .collect();
    Section::new(at(b)?, assign)
}

/// `x ↦ coprod0(A x, B x)`.
pub fn sum_str(g: &Ctx, a_ty: &TyOver, b_ty: &TyOver) -> Result<TyOver> {
    require_ctx(g, a_ty.base(), "left summand")?;
    require_ctx(g, b_ty.base(), "right summand")?;
    let values = a_ty
        .values()
        .iter()
        .zip(b_ty.values())
        .map(|(a, b)| coprod0(a, b))
        .collect();
    Family::from_values(g.clone(), values)
}

pub fn inl_tm(a: &Section, b_ty: &TyOver) -> Result<Section> {
    let sum = sum_str(a.ctx(), &a.ty, b_ty)?;
    Section::new(
        sum,
        a.assign
            .iter()
            .map(|v| wiener_pair(empty0(), v.clone()))
            .collect(),
    )
}

pub fn inr_tm(a_ty: &TyOver, b: &Section) -> Result<Section> {
    let sum = sum_str(b.ctx(), a_ty, &b.ty)?;
    Section::new(
        sum,
        b.assign
            .iter()
            .map(|v| wiener_pair(unit0(), v.clone()))
            .collect(),
    )
}

/// Case analysis into a type `c` over `Γ` that does not depend on the scrutinee: `left` is a
/// section of `c·p` over `Γ.A`, `right` of `c·p` over `Γ.B`.
pub fn case_tm(
    g: &Ctx,
    a_ty: &TyOver,
    b_ty: &TyOver,
    c: &TyOver,
    s: &Section,
    left: &Section,
    right: &Section,
) -> Result<Section> {
    let sum = sum_str(g, a_ty, b_ty)?;
    if s.ty != sum {
        return Err(Error::BoundaryMismatch(
            "scrutinee is not of the sum type".into(),
        ));
    }
    require_ctx(&ctx_ext(g, a_ty)?, left.ctx(), "left branch")?;
    require_ctx(&ctx_ext(g, b_ty)?, right.ctx(), "right branch")?;
    let assign = (0..g.cardinality())
        .map(|i| {
            let x = &g.members()[i];
            let (tag, v) = wiener_unpair(&s.assign[i])?;
            let branch = if tag.is_empty() { left } else { right };
            branch.at(&wiener_pair(x.clone(), v)).cloned()
        })
        .collect::<Result<Vec<_>>>()?;
    Section::new(c.clone(), assign)
}

/// The closed numeral `n` as a constant term of the type `{0, …, n}`.
pub fn numeral_tm(g: &Ctx, n: u64) -> Result<Section> {
    let value = vn_numeral(n)?;
    let ty = Family::constant(g.clone(), value.insert(value.clone()));
    Section::from_fn(ty, |_| Ok(value.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::homs;

    fn e() -> ISet {
        ISet::empty()
    }

    #[test]
    fn presheaf_identity_law() {
        let g = bool0();
        let a = Family::from_values(g.clone(), vec![unit0(), bool0()]).unwrap();
        assert_eq!(subst_ty(&a, &SetFn::identity(&g)).unwrap(), a);
        for s in sections(&a).unwrap() {
            assert_eq!(subst_tm(&s, &SetFn::identity(&g)).unwrap(), s);
        }
    }

    #[test]
    fn comprehension_laws() {
        let g = bool0();
        let a = Family::from_values(g.clone(), vec![unit0(), bool0()]).unwrap();
        let ext = ctx_ext(&g, &a).unwrap();
        assert_eq!(ext.cardinality(), 3);
        let p = p_proj(&g, &a).unwrap();
        let q = q_var(&g, &a).unwrap();
        assert_eq!(ext_sub(&p, &a, &q).unwrap(), SetFn::identity(&ext));
        let delta = vn_numeral(3).unwrap();
        for gamma in homs(&delta, &g).unwrap() {
            for s in sections(&subst_ty(&a, &gamma).unwrap()).unwrap() {
                let d = ext_sub(&gamma, &a, &s).unwrap();
                assert_eq!(compose(&p, &d).unwrap(), gamma);
                assert_eq!(subst_tm(&q, &d).unwrap(), s);
                assert_eq!(compr_fwd(&g, &a, &d).unwrap(), (gamma.clone(), s));
            }
        }
    }

    #[test]
    fn unit_context_extension() {
        let ext = ctx_ext(&unit0(), &bool_str(&unit0())).unwrap();
        assert_eq!(ext.cardinality(), 2);
    }

    #[test]
    fn pi_structure() {
        let g = unit0();
        let a = bool_str(&g);
        let b = bool_str(&ctx_ext(&g, &a).unwrap());
        let pi = pi_str(&g, &a, &b).unwrap();
        assert_eq!(pi.at_index(0).cardinality(), 4);
        for f in sections(&pi).unwrap() {
            let body = alpha_pi(&g, &a, &b, &f).unwrap();
            assert_eq!(alpha_pi_inv(&g, &a, &b, &body).unwrap(), f);
        }
        for body in sections(&b).unwrap() {
            let f = alpha_pi_inv(&g, &a, &b, &body).unwrap();
            assert_eq!(alpha_pi(&g, &a, &b, &f).unwrap(), body);
        }
    }

    #[test]
    fn sigma_structure() {
        let g = bool0();
        let a = Family::from_values(g.clone(), vec![unit0(), bool0()]).unwrap();
        let ext = ctx_ext(&g, &a).unwrap();
        let b = Family::from_fn(ext.clone(), |m| {
            let (_, v) = wiener_unpair(m)?;
            Ok(if v.is_empty() { bool0() } else { unit0() })
        })
        .unwrap();
        let sig = sig_str(&g, &a, &b).unwrap();
        assert_eq!(sig.at_index(0).cardinality(), 2);
        assert_eq!(sig.at_index(1).cardinality(), 3);
        for s in sections(&sig).unwrap() {
            let (x, y) = alpha_sig(&g, &a, &b, &s).unwrap();
            assert_eq!(alpha_sig_inv(&g, &a, &b, &x, &y).unwrap(), s);
        }
    }

    #[test]
    fn identity_types() {
        let g = bool0();
        let b = bool_str(&g);
        let t = true_tm(&g);
        let f = false_tm(&g);
        let refl = refl_tm(&t).unwrap();
        assert!(refl.ty().values().iter().all(|v| *v == unit0()));
        assert!(eq_reflect(&refl, &b, &t, &t).unwrap());
        let distinct = id_str(&g, &b, &t, &f).unwrap();
        assert!(distinct.values().iter().any(ISet::is_empty));
        assert!(sections(&distinct).unwrap().is_empty());
    }

    #[test]
    fn base_types() {
        let g = bool0();
        assert_eq!(sections(&bool_str(&g)).unwrap().len(), 4);
        assert!(sections(&empty_str(&g)).unwrap().is_empty());
        assert_eq!(sections(&empty_str(&e())).unwrap().len(), 1);
        let ext = ctx_ext(&g, &bool_str(&g)).unwrap();
        let c = unit_str(&ext);
        let tt = tt_tm(&g);
        let r = if_tm(&g, &c, &true_tm(&g), &tt, &tt).unwrap();
        assert_eq!(r.values(), tt.values());
        let bad = Section::new(bool_str(&g), vec![bool0(), e()]);
        assert!(matches!(bad, Err(Error::FiberViolation { .. })));
    }

    #[test]
    fn sums() {
        let g = unit0();
        let a = bool_str(&g);
        let u = unit_str(&g);
        let s = inl_tm(&true_tm(&g), &u).unwrap();
        let left = q_var(&g, &a).unwrap();
        let left = Section::new(bool_str(left.ctx()), left.values().to_vec()).unwrap();
        let right = false_tm(&ctx_ext(&g, &u).unwrap());
        let r = case_tm(&g, &a, &u, &a, &s, &left, &right).unwrap();
        assert_eq!(r, true_tm(&g));
        let s = inr_tm(&a, &tt_tm(&g)).unwrap();
        assert_eq!(
            case_tm(&g, &a, &u, &a, &s, &left, &right).unwrap(),
            false_tm(&g)
        );
    }
}
