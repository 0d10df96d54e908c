//! Finite limits, finite colimits and exponentials, built from universe codes.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::iset::ISet;
use crate::relation::{quotient0, quotient_map, Relation};
use crate::universe::{
    apply_graph, arrow0, coprod0, empty0, graph_of, id0, inl0, inr0, prod0, sigma0, unit0,
    wiener_pair, wiener_unpair,
};

use super::{compose, SetFn};

pub fn terminal() -> ISet {
    unit0()
}

/// The unique map `x → terminal()`.
pub fn bang(x: &ISet) -> SetFn {
    SetFn::from_indices_unchecked(x, &terminal(), vec![0; x.cardinality()])
}

pub fn initial() -> ISet {
    empty0()
}

/// The unique map `initial() → x`.
pub fn absurd(x: &ISet) -> SetFn {
    SetFn::from_indices_unchecked(&initial(), x, Vec::new())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub obj: ISet,
    pub pr1: SetFn,
    pub pr2: SetFn,
}

pub fn product(x: &ISet, y: &ISet) -> Product {
    let obj = prod0(x, y);
    let component = |second: bool, target: &ISet| {
        SetFn::from_fn(&obj, target, |p| {
            let (a, b) = wiener_unpair(p)?;
            Ok(if second { b } else { a })
        })
        .expect("members of prod0 are pairs")
    };
    Product {
        pr1: component(false, x),
        pr2: component(true, y),
        obj,
    }
}

/// `⟨f, g⟩ : z → prod0(f.cod, g.cod)`.
pub fn pair_into(f: &SetFn, g: &SetFn) -> Result<SetFn> {
    same_domain(f, g)?;
    let obj = prod0(f.cod(), g.cod());
    SetFn::from_fn(f.dom(), &obj, |c| Ok(wiener_pair(f.apply(c)?, g.apply(c)?)))
}

/// `f × g : prod0(f.dom, g.dom) → prod0(f.cod, g.cod)`.
pub fn product_map(f: &SetFn, g: &SetFn) -> Result<SetFn> {
    let dom = prod0(f.dom(), g.dom());
    let cod = prod0(f.cod(), g.cod());
    SetFn::from_fn(&dom, &cod, |p| {
        let (a, b) = wiener_unpair(p)?;
        Ok(wiener_pair(f.apply(&a)?, g.apply(&b)?))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub obj: ISet,
    pub in1: SetFn,
    pub in2: SetFn,
}

pub fn coproduct(x: &ISet, y: &ISet) -> Coproduct {
    let obj = coprod0(x, y);
    let in1 = SetFn::from_fn(x, &obj, |a| inl0(x, y, a)).expect("inl lands in coprod0");
    let in2 = SetFn::from_fn(y, &obj, |b| inr0(x, y, b)).expect("inr lands in coprod0");
    Coproduct { obj, in1, in2 }
}

/// `[f, g] : coprod0(f.dom, g.dom) → z`.
pub fn copair(f: &SetFn, g: &SetFn) -> Result<SetFn> {
    same_codomain(f, g)?;
    let obj = coprod0(f.dom(), g.dom());
    SetFn::from_fn(&obj, f.cod(), |s| {
        let (tag, v) = wiener_unpair(s)?;
        if tag.is_empty() {
            f.apply(&v)
        } else {
            g.apply(&v)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub obj: ISet,
    pub p1: SetFn,
    pub p2: SetFn,
}

/// Members are `⟨a', ⟨b, ∅⟩⟩` with `f(a') = g(b)`: a sigma over a sigma whose last component
/// is the (unique) identity witness.
pub fn pullback(f: &SetFn, g: &SetFn) -> Result<Pullback> {
    same_codomain(f, g)?;
    let (x, y, a) = (f.dom(), g.dom(), f.cod());
    let outer = Family::from_fn(x.clone(), |a1| {
        let fa1 = f.apply(a1)?;
        let inner = Family::from_fn(y.clone(), |b| id0(a, &fa1, &g.apply(b)?))?;
        sigma0(y, &inner)
    })?;
    let obj = sigma0(x, &outer)?;
    let p1 = SetFn::from_fn(&obj, x, |m| Ok(wiener_unpair(m)?.0))?;
    let p2 = SetFn::from_fn(&obj, y, |m| Ok(wiener_unpair(&wiener_unpair(m)?.1)?.0))?;
    Ok(Pullback { obj, p1, p2 })
}

/// The mediator `z → pb.obj` induced by `h1: z → x`, `h2: z → y` with `f∘h1 = g∘h2`.
pub fn pullback_into(pb: &Pullback, h1: &SetFn, h2: &SetFn) -> Result<SetFn> {
    same_domain(h1, h2)?;
    SetFn::from_fn(h1.dom(), &pb.obj, |c| {
        Ok(wiener_pair(
            h1.apply(c)?,
            wiener_pair(h2.apply(c)?, ISet::empty()),
        ))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalizer {
    pub obj: ISet,
    pub incl: SetFn,
}

/// The subset of `f.dom` where `f` and `g` agree.
pub fn equalizer(f: &SetFn, g: &SetFn) -> Result<Equalizer> {
    parallel(f, g)?;
    let x = f.dom();
    let members = (0..x.cardinality())
        .filter(|&i| f.indices()[i] == g.indices()[i])
        .map(|i| x.members()[i].clone())
        .collect();
    let obj = ISet::intern_sorted(members);
    let incl = SetFn::from_fn(&obj, x, |e| Ok(e.clone()))?;
    Ok(Equalizer { obj, incl })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub obj: ISet,
    pub j1: SetFn,
    pub j2: SetFn,
}

/// The quotient of `coprod0(x, y)` by the equivalence generated by `inl(f c) ~ inr(g c)`.
pub fn pushout(f: &SetFn, g: &SetFn) -> Result<Pushout> {
    same_domain(f, g)?;
    let (x, y) = (f.cod(), g.cod());
    let co = coproduct(x, y);
    let pairs = (0..f.dom().cardinality())
        .map(|c| {
            (
                co.in1.apply_index(f.indices()[c] as usize).clone(),
                co.in2.apply_index(g.indices()[c] as usize).clone(),
            )
        })
        .collect::<Vec<_>>();
    let rel = Relation::new(co.obj.clone(), pairs)?;
    let obj = quotient0(&co.obj, &rel)?;
    let classes = quotient_map(&co.obj, &rel)?;
    let class_fn = SetFn::from_fn(&co.obj, &obj, |s| Ok(classes[co.obj.position(s)?].clone()))?;
    Ok(Pushout {
        j1: compose(&class_fn, &co.in1)?,
        j2: compose(&class_fn, &co.in2)?,
        obj,
    })
}

/// The mediator `po.obj → z` induced by `k1: x → z`, `k2: y → z` with `k1∘f = k2∘g`.
pub fn pushout_out(po: &Pushout, k1: &SetFn, k2: &SetFn) -> Result<SetFn> {
    same_codomain(k1, k2)?;
    let mut entries = Vec::with_capacity(po.obj.cardinality());
    for class in po.obj.members() {
        // Any representative will do when the cocone commutes; check that it does.
        let mut image: Option<ISet> = None;
        for (k, j) in [(k1, &po.j1), (k2, &po.j2)] {
            for (v, c) in j.entries() {
                if c == class {
                    let w = k.apply(v)?;
                    match &image {
                        Some(prev) if *prev != w => {
                            return Err(Error::NotACone(
                                "the legs disagree on a glued class".into(),
                            ))
                        }
                        _ => image = Some(w),
                    }
                }
            }
        }
        let image = image.expect("every class has a representative");
        entries.push((class.clone(), image));
    }
    SetFn::new(po.obj.clone(), k1.cod().clone(), entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coequalizer {
    pub obj: ISet,
    pub quo: SetFn,
}

/// The quotient of `f.cod` by the equivalence generated by `f(c) ~ g(c)`.
pub fn coequalizer(f: &SetFn, g: &SetFn) -> Result<Coequalizer> {
    parallel(f, g)?;
    let y = f.cod();
    let rel = Relation::from_indices(
        y.clone(),
        f.indices()
            .iter()
            .zip(g.indices())
            .map(|(&a, &b)| (a as usize, b as usize)),
    );
    let obj = quotient0(y, &rel)?;
    let classes = quotient_map(y, &rel)?;
    let quo = SetFn::from_fn(y, &obj, |b| Ok(classes[y.position(b)?].clone()))?;
    Ok(Coequalizer { obj, quo })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponential {
    pub base: ISet,
    pub target: ISet,
    pub obj: ISet,
    /// `prod0(obj, base) → target`.
    pub eval: SetFn,
}

pub fn exponential(x: &ISet, y: &ISet) -> Result<Exponential> {
    let obj = arrow0(x, y)?;
    let dom = prod0(&obj, x);
    let eval = SetFn::from_fn(&dom, y, |p| {
        let (h, a) = wiener_unpair(p)?;
        apply_graph(&h, &a)
    })?;
    Ok(Exponential {
        base: x.clone(),
        target: y.clone(),
        obj,
        eval,
    })
}

/// The transpose `z → exp.obj` of `f : prod0(z, exp.base) → exp.target`.
pub fn curry(exp: &Exponential, z: &ISet, f: &SetFn) -> Result<SetFn> {
    let expected = prod0(z, &exp.base);
    if *f.dom() != expected || *f.cod() != exp.target {
        return Err(Error::BoundaryMismatch(format!(
            "curry expects a map {} → {}, found {} → {}",
            expected,
            exp.target,
            f.dom(),
            f.cod()
        )));
    }
    let fam = Family::constant(exp.base.clone(), exp.target.clone());
    SetFn::from_fn(z, &exp.obj, |c| {
        let choice = exp
            .base
            .members()
            .iter()
            .map(|a| f.apply(&wiener_pair(c.clone(), a.clone())))
            .collect::<Result<Vec<_>>>()?;
        graph_of(&exp.base, &fam, &choice)
    })
}

/// `eval ∘ (m × id)`: the inverse of [`curry`].
pub fn uncurry(exp: &Exponential, m: &SetFn) -> Result<SetFn> {
    if *m.cod() != exp.obj {
        return Err(Error::BoundaryMismatch(format!(
            "uncurry expects a map into {}, found one into {}",
            exp.obj,
            m.cod()
        )));
    }
    compose(&exp.eval, &product_map(m, &SetFn::identity(&exp.base))?)
}

fn same_domain(f: &SetFn, g: &SetFn) -> Result<()> {
    if f.dom() != g.dom() {
        return Err(Error::BoundaryMismatch(format!(
            "domains differ: {} and {}",
            f.dom(),
            g.dom()
        )));
    }
    Ok(())
}

fn same_codomain(f: &SetFn, g: &SetFn) -> Result<()> {
    if f.cod() != g.cod() {
        return Err(Error::BoundaryMismatch(format!(
            "codomains differ: {} and {}",
            f.cod(),
            g.cod()
        )));
    }
    Ok(())
}

fn parallel(f: &SetFn, g: &SetFn) -> Result<()> {
    same_domain(f, g)?;
    same_codomain(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{homs, id_fn, mk_fn};
    use crate::universe::{bool0, vn_numeral};

    fn e() -> ISet {
        ISet::empty()
    }

    #[test]
    fn terminal_and_initial_hom_counts() {
        for n in 0..4 {
            let x = vn_numeral(n).unwrap();
            assert_eq!(homs(&x, &terminal()).unwrap(), vec![bang(&x)]);
            assert_eq!(homs(&initial(), &x).unwrap(), vec![absurd(&x)]);
            assert_eq!(homs(&terminal(), &x).unwrap().len(), n as usize);
        }
    }

    #[test]
    fn product_beta() {
        let b = bool0();
        let p = product(&b, &b);
        assert_eq!(p.obj.cardinality(), 4);
        let swap = mk_fn(b.clone(), b.clone(), [(e(), unit0()), (unit0(), e())]).unwrap();
        let m = pair_into(&swap, &id_fn(&b)).unwrap();
        assert_eq!(compose(&p.pr1, &m).unwrap(), swap);
        assert_eq!(compose(&p.pr2, &m).unwrap(), id_fn(&b));
    }

    #[test]
    fn coproduct_beta_and_unit() {
        let b = bool0();
        let c = coproduct(&b, &unit0());
        let f = id_fn(&b);
        let g = SetFn::from_fn(&unit0(), &b, |_| Ok(e())).unwrap();
        let h = copair(&f, &g).unwrap();
        assert_eq!(compose(&h, &c.in1).unwrap(), f);
        assert_eq!(compose(&h, &c.in2).unwrap(), g);
        let left = coproduct(&empty0(), &b);
        assert!(left.in2.is_bijective());
    }

    #[test]
    fn pullback_examples() {
        let b = bool0();
        let pb = pullback(&id_fn(&b), &id_fn(&b)).unwrap();
        assert_eq!(pb.obj.cardinality(), 2);
        assert!(pb.p1.is_bijective());
        let pb = pullback(&bang(&b), &bang(&b)).unwrap();
        assert_eq!(pb.obj.cardinality(), 4);
        let m = &pb.obj.members()[0];
        let (_, rest) = wiener_unpair(m).unwrap();
        assert_eq!(wiener_unpair(&rest).unwrap().1, e());
    }

    #[test]
    fn equalizer_and_coequalizer_trivial_cases() {
        let b = bool0();
        let eq = equalizer(&id_fn(&b), &id_fn(&b)).unwrap();
        assert_eq!(eq.obj, b);
        let coeq = coequalizer(&id_fn(&b), &id_fn(&b)).unwrap();
        assert_eq!(coeq.obj.cardinality(), 2);
        assert!(coeq.quo.is_bijective());
        let swap = mk_fn(b.clone(), b.clone(), [(e(), unit0()), (unit0(), e())]).unwrap();
        assert_eq!(equalizer(&swap, &id_fn(&b)).unwrap().obj, e());
        assert_eq!(coequalizer(&swap, &id_fn(&b)).unwrap().obj.cardinality(), 1);
    }

    #[test]
    fn pushout_examples() {
        let u = unit0();
        let po = pushout(&id_fn(&u), &id_fn(&u)).unwrap();
        assert_eq!(po.obj.cardinality(), 1);
        let b = bool0();
        let po = pushout(&absurd(&b), &absurd(&u)).unwrap();
        assert_eq!(po.obj.cardinality(), 3);
        let k1 = id_fn(&b);
        let k2 = SetFn::from_fn(&u, &b, |_| Ok(u.clone())).unwrap();
        let m = pushout_out(&po, &k1, &k2).unwrap();
        assert_eq!(compose(&m, &po.j1).unwrap(), k1);
        assert_eq!(compose(&m, &po.j2).unwrap(), k2);
    }

    #[test]
    fn exponential_beta() {
        let b = bool0();
        let exp = exponential(&b, &b).unwrap();
        assert_eq!(exp.obj.cardinality(), 4);
        let z = vn_numeral(3).unwrap();
        for f in homs(&prod0(&z, &b), &b).unwrap().iter().step_by(7) {
            let m = curry(&exp, &z, f).unwrap();
            assert_eq!(&uncurry(&exp, &m).unwrap(), f);
        }
    }

    #[test]
    fn boundary_errors() {
        let b = bool0();
        let u = unit0();
        assert!(matches!(
            pair_into(&id_fn(&b), &id_fn(&u)),
            Err(Error::BoundaryMismatch(_))
        ));
        assert!(pullback(&id_fn(&b), &id_fn(&u)).is_err());
        assert!(equalizer(&id_fn(&b), &bang(&b)).is_err());
    }
}
