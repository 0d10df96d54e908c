//! Codes for types. A set is read as the code of the type of its members (`El⁰ x` is
//! [`el0`]), and each type former below builds a code whose members are exactly the expected
//! elements: pairs for Σ, graphs for Π, tagged pairs for +, and `{∅}`/`∅` for identity.

use crate::budget::{saturating_product, Budget};
use crate::category::SetFn;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::iset::ISet;

/// The decoded carrier of a code: its members.
pub fn el0(x: &ISet) -> &[ISet] {
    x.members()
}

pub fn empty0() -> ISet {
    ISet::empty()
}

pub fn unit0() -> ISet {
    ISet::singleton(ISet::empty())
}

pub fn bool0() -> ISet {
    ISet::intern_sorted(vec![ISet::empty(), unit0()])
}

/// `x ∪ {x}`. Well defined for every `x` since no set is a member of itself.
pub fn suc0(x: &ISet) -> ISet {
    x.insert(x.clone())
}

pub fn vn_numeral(n: u64) -> Result<ISet> {
    vn_numeral_with(n, &Budget::current())
}

/// The von Neumann numeral `n = {0, …, n-1}`, which has rank `n`; bounded by the depth cap.
pub fn vn_numeral_with(n: u64, budget: &Budget) -> Result<ISet> {
    Budget::check("von Neumann numeral", n, budget.depth_cap)?;
    let mut x = ISet::empty();
    for _ in 0..n {
        x = suc0(&x);
    }
    Ok(x)
}

/// The ordered pair `⟨x,y⟩ = {{{x},∅},{{y}}}`.
pub fn wiener_pair(x: ISet, y: ISet) -> ISet {
    let left = ISet::intern_sorted(vec![ISet::empty(), ISet::singleton(x)]);
    let right = ISet::singleton(ISet::singleton(y));
    ISet::sup0([left, right]).expect("the two halves differ in cardinality")
}

pub fn wiener_unpair(p: &ISet) -> Result<(ISet, ISet)> {
    let not_a_pair = |reason| Error::NotAPair {
        set: p.clone(),
        reason,
    };
    let [first, second] = p.members() else {
        return Err(not_a_pair("a pair has exactly two members"));
    };
    let (left, right) = match (first.cardinality(), second.cardinality()) {
        (2, 1) => (first, second),
        (1, 2) => (second, first),
        _ => return Err(not_a_pair("members must have cardinalities 2 and 1")),
    };
    let [nil, x_single] = left.members() else {
        unreachable!()
    };
    if !nil.is_empty() || x_single.cardinality() != 1 {
        return Err(not_a_pair("the two-element member must be {{x},∅}"));
    }
    let y_single = &right.members()[0];
    if y_single.cardinality() != 1 {
        return Err(not_a_pair("the one-element member must be {{y}}"));
    }
    Ok((x_single.members()[0].clone(), y_single.members()[0].clone()))
}

fn require_base(x: &ISet, fam: &Family) -> Result<()> {
    if fam.base() != x {
        return Err(Error::BoundaryMismatch(format!(
            "family is over {}, expected {}",
            fam.base(),
            x
        )));
    }
    Ok(())
}

/// The code of dependent pairs: `{ ⟨a,b⟩ : a ∈ x, b ∈ fam(a) }`.
pub fn sigma0(x: &ISet, fam: &Family) -> Result<ISet> {
    require_base(x, fam)?;
    let pairs = fam
        .iter()
        .flat_map(|(a, fiber)| {
            fiber
                .members()
                .iter()
                .map(move |b| wiener_pair(a.clone(), b.clone()))
        })
        .collect::<Vec<_>>();
    ISet::sup0(pairs)
}

pub fn prod0(x: &ISet, y: &ISet) -> ISet {
    sigma0(x, &Family::constant(x.clone(), y.clone())).expect("constant family is over x")
}

/// The graph `{ ⟨a, choice(a)⟩ : a ∈ x }`; `choice` lists values in member order of `x`.
pub fn graph_of(x: &ISet, fam: &Family, choice: &[ISet]) -> Result<ISet> {
    require_base(x, fam)?;
    if choice.len() != x.cardinality() {
        return Err(Error::BoundaryMismatch(format!(
            "{} choices for {} members",
            choice.len(),
            x.cardinality()
        )));
    }
    let mut pairs = Vec::with_capacity(choice.len());
    for ((a, fiber), b) in fam.iter().zip(choice) {
        if !fiber.contains(b) {
            return Err(Error::FiberViolation {
                at: a.clone(),
                value: b.clone(),
                fiber: fiber.clone(),
            });
        }
        pairs.push(wiener_pair(a.clone(), b.clone()));
    }
    ISet::sup0(pairs)
}

pub fn pi0(x: &ISet, fam: &Family) -> Result<ISet> {
    pi0_with(x, fam, &Budget::current())
}

/// The code of dependent functions: the set of all graphs of choices `a ↦ b ∈ fam(a)`.
///
/// Choices are enumerated in lexicographic order with the first member of `x` most
/// significant.
pub fn pi0_with(x: &ISet, fam: &Family, budget: &Budget) -> Result<ISet> {
    require_base(x, fam)?;
    let sizes: Vec<u64> = fam
        .values()
        .iter()
        .map(|f| f.cardinality() as u64)
        .collect();
    let total = saturating_product(sizes.iter().copied());
    Budget::check("dependent function space size", total, budget.pi_cap)?;
    let pair_table: Vec<Vec<ISet>> = fam
        .iter()
        .map(|(a, fiber)| {
            fiber
                .members()
                .iter()
                .map(|b| wiener_pair(a.clone(), b.clone()))
                .collect()
        })
        .collect();
    let mut graphs = Vec::with_capacity(total as usize);
    let mut digits = vec![0usize; pair_table.len()];
    for _ in 0..total {
        let graph = ISet::sup0(
            digits
                .iter()
                .zip(&pair_table)
                .map(|(&d, row)| row[d].clone()),
        )?;
        graphs.push(graph);
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < pair_table[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
    ISet::sup0(graphs)
}

pub fn arrow0(x: &ISet, y: &ISet) -> Result<ISet> {
    pi0(x, &Family::constant(x.clone(), y.clone()))
}

pub fn arrow0_with(x: &ISet, y: &ISet, budget: &Budget) -> Result<ISet> {
    pi0_with(x, &Family::constant(x.clone(), y.clone()), budget)
}

/// Looks up the unique pair `⟨a,b⟩ ∈ g` and returns `b`.
pub fn apply_graph(g: &ISet, a: &ISet) -> Result<ISet> {
    let mut found = None;
    for p in g.members() {
        let (k, v) = wiener_unpair(p).map_err(|_| Error::MalformedGraph {
            graph: g.clone(),
            reason: "a member is not an ordered pair",
        })?;
        if &k == a {
            if found.is_some() {
                return Err(Error::MalformedGraph {
                    graph: g.clone(),
                    reason: "two pairs share a first component",
                });
            }
            found = Some(v);
        }
    }
    found.ok_or_else(|| Error::NotInDomain {
        element: a.clone(),
        domain: g.clone(),
    })
}

/// `{ ⟨∅,a⟩ : a ∈ x } ∪ { ⟨{∅},b⟩ : b ∈ y }`.
pub fn coprod0(x: &ISet, y: &ISet) -> ISet {
    let left = x.members().iter().map(|a| wiener_pair(empty0(), a.clone()));
    let right = y.members().iter().map(|b| wiener_pair(unit0(), b.clone()));
    ISet::sup0(left.chain(right)).expect("tags ∅ and {∅} keep the summands apart")
}

pub fn inl0(x: &ISet, _y: &ISet, a: &ISet) -> Result<ISet> {
    x.position(a)?;
    Ok(wiener_pair(empty0(), a.clone()))
}

pub fn inr0(_x: &ISet, y: &ISet, b: &ISet) -> Result<ISet> {
    y.position(b)?;
    Ok(wiener_pair(unit0(), b.clone()))
}

/// `{∅}` if `a = a'`, else `∅`.
pub fn id0(x: &ISet, a: &ISet, a2: &ISet) -> Result<ISet> {
    x.position(a)?;
    x.position(a2)?;
    Ok(if a == a2 { unit0() } else { empty0() })
}

/// `Σ⁰ dom (λa. Id⁰ cod (f a) b)`: members are `⟨a,∅⟩` for `a` in the preimage of `b`.
pub fn fib0(f: &SetFn, b: &ISet) -> Result<ISet> {
    let cod = f.cod();
    cod.position(b)?;
    let fam = Family::from_fn(f.dom().clone(), |a| id0(cod, &f.apply(a)?, b))?;
    sigma0(f.dom(), &fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ackermann::code_u64;

    fn e() -> ISet {
        ISet::empty()
    }

    #[test]
    fn basic_codes() {
        assert_eq!(code_u64(&empty0()), Some(0));
        assert_eq!(code_u64(&unit0()), Some(1));
        assert_eq!(code_u64(&bool0()), Some(3));
        assert_eq!(el0(&bool0()), &[e(), unit0()]);
        assert!(el0(&empty0()).is_empty());
    }

    #[test]
    fn numerals() {
        assert_eq!(suc0(&e()), unit0());
        assert_eq!(suc0(&suc0(&e())), bool0());
        assert_eq!(vn_numeral(0).unwrap(), e());
        assert_eq!(code_u64(&vn_numeral(3).unwrap()), Some(11));
        assert!(vn_numeral_with(10_001, &Budget::DEFAULT).is_err());
    }

    #[test]
    fn pairs() {
        assert_eq!(code_u64(&wiener_pair(e(), e())), Some(12));
        let p = wiener_pair(unit0(), bool0());
        assert_eq!(wiener_unpair(&p).unwrap(), (unit0(), bool0()));
        assert!(matches!(
            wiener_unpair(&bool0()),
            Err(Error::NotAPair { .. })
        ));
        assert!(wiener_unpair(&e()).is_err());
    }

    #[test]
    fn sigma_and_products() {
        let s = sigma0(&bool0(), &Family::constant(bool0(), unit0())).unwrap();
        assert_eq!(s.cardinality(), 2);
        assert_eq!(sigma0(&e(), &Family::constant(e(), unit0())).unwrap(), e());
        assert_eq!(prod0(&bool0(), &bool0()).cardinality(), 4);
        assert_eq!(prod0(&bool0(), &empty0()), e());
        assert!(sigma0(&unit0(), &Family::constant(bool0(), unit0())).is_err());
    }

    #[test]
    fn pi_and_graphs() {
        assert_eq!(pi0(&e(), &Family::constant(e(), bool0())).unwrap(), unit0());
        assert_eq!(arrow0(&bool0(), &bool0()).unwrap().cardinality(), 4);
        assert_eq!(arrow0(&empty0(), &bool0()).unwrap(), unit0());
        assert_eq!(arrow0(&bool0(), &unit0()).unwrap().cardinality(), 1);
        let some_empty = Family::new(bool0(), [(e(), unit0()), (unit0(), empty0())]).unwrap();
        assert_eq!(pi0(&bool0(), &some_empty).unwrap(), e());

        let fam = Family::constant(unit0(), bool0());
        let g = graph_of(&unit0(), &fam, &[e()]).unwrap();
        assert_eq!(g, ISet::singleton(wiener_pair(e(), e())));
        assert!(matches!(
            graph_of(&unit0(), &fam, &[bool0()]),
            Err(Error::FiberViolation { .. })
        ));
        assert_eq!(apply_graph(&g, &e()).unwrap(), e());
        assert!(matches!(
            apply_graph(&g, &unit0()),
            Err(Error::NotInDomain { .. })
        ));
        assert!(matches!(
            apply_graph(&bool0(), &e()),
            Err(Error::MalformedGraph { .. })
        ));
    }

    #[test]
    fn pi_budget() {
        let tight = Budget {
            pi_cap: 3,
            ..Budget::DEFAULT
        };
        assert!(matches!(
            arrow0_with(&bool0(), &bool0(), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn coproducts_and_identity() {
        assert_eq!(coprod0(&bool0(), &unit0()).cardinality(), 3);
        assert_eq!(coprod0(&e(), &e()), e());
        assert_ne!(
            inl0(&bool0(), &bool0(), &e()).unwrap(),
            inr0(&bool0(), &bool0(), &e()).unwrap()
        );
        assert!(inl0(&unit0(), &unit0(), &unit0()).is_err());
        assert_eq!(id0(&bool0(), &e(), &e()).unwrap(), unit0());
        assert_eq!(id0(&bool0(), &e(), &unit0()).unwrap(), e());
        assert!(id0(&unit0(), &e(), &unit0()).is_err());
    }

    #[test]
    fn fibers() {
        let id = SetFn::identity(&bool0());
        assert_eq!(fib0(&id, &e()).unwrap().cardinality(), 1);
        let constant = SetFn::from_fn(&bool0(), &bool0(), |_| Ok(e())).unwrap();
        assert_eq!(fib0(&constant, &e()).unwrap().cardinality(), 2);
        assert_eq!(fib0(&constant, &unit0()).unwrap(), e());
        assert!(fib0(&constant, &bool0()).is_err());
    }
}
