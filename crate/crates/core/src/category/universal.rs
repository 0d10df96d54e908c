//! Brute-force verification of universal properties.
//!
//! For each test object `T` every morphism between `T` and the apex is enumerated once, and the
//! cone it induces is tallied. Then every cone over the diagram with vertex `T` is enumerated
//! and looked up: a universal candidate has exactly one mediator for each.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::budget::{saturating_product, Budget};
use crate::error::{Error, Result};
use crate::iset::ISet;
use crate::universe::{prod0, wiener_unpair};

use super::{for_each_index_map, SetFn};

/// The shapes whose (co)limits generate all finite (co)limits, plus exponentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Terminal,
    Initial,
    Product(ISet, ISet),
    Coproduct(ISet, ISet),
    /// Cospan `f: x → a`, `g: y → a`.
    Pullback(SetFn, SetFn),
    /// Span `f: a → x`, `g: a → y`.
    Pushout(SetFn, SetFn),
    Equalizer(SetFn, SetFn),
    Coequalizer(SetFn, SetFn),
    /// `y^x`; the single leg is evaluation `prod0(apex, x) → y`.
    Exponential(ISet, ISet),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variance {
    Limit,
    Colimit,
    Exponential,
}

impl Diagram {
    fn variance(&self) -> Variance {
        match self {
            Diagram::Terminal
            | Diagram::Product(..)
            | Diagram::Pullback(..)
            | Diagram::Equalizer(..) => Variance::Limit,
            Diagram::Initial
            | Diagram::Coproduct(..)
            | Diagram::Pushout(..)
            | Diagram::Coequalizer(..) => Variance::Colimit,
            Diagram::Exponential(..) => Variance::Exponential,
        }
    }

    /// Objects the legs point at (limits) or come from (colimits).
    fn leg_objects(&self) -> Vec<ISet> {
        match self {
            Diagram::Terminal | Diagram::Initial => vec![],
            Diagram::Product(x, y) | Diagram::Coproduct(x, y) => vec![x.clone(), y.clone()],
            Diagram::Pullback(f, g) => vec![f.dom().clone(), g.dom().clone()],
            Diagram::Pushout(f, g) => vec![f.cod().clone(), g.cod().clone()],
            Diagram::Equalizer(f, _) => vec![f.dom().clone()],
            Diagram::Coequalizer(f, _) => vec![f.cod().clone()],
            Diagram::Exponential(_, y) => vec![y.clone()],
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            Diagram::Pullback(f, g) => f.cod() == g.cod(),
            Diagram::Pushout(f, g) => f.dom() == g.dom(),
            Diagram::Equalizer(f, g) | Diagram::Coequalizer(f, g) => {
                f.dom() == g.dom() && f.cod() == g.cod()
            }
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BoundaryMismatch(format!(
                "ill-formed diagram {self:?}"
            )))
        }
    }

    /// Whether legs, given as image-position arrays, commute with the diagram.
    fn commutes(&self, legs: &[&[u32]]) -> bool {
        let f_of = |f: &SetFn, i: u32| f.indices()[i as usize];
        match self {
            Diagram::Pullback(f, g) => legs[0]
                .iter()
                .zip(legs[1])
                .all(|(&a, &b)| f_of(f, a) == f_of(g, b)),
            Diagram::Equalizer(f, g) => legs[0].iter().all(|&a| f_of(f, a) == f_of(g, a)),
            Diagram::Pushout(f, g) => (0..f.dom().cardinality())
                .all(|c| legs[0][f.indices()[c] as usize] == legs[1][g.indices()[c] as usize]),
            Diagram::Coequalizer(f, g) => (0..f.dom().cardinality())
                .all(|c| legs[0][f.indices()[c] as usize] == legs[0][g.indices()[c] as usize]),
            _ => true,
        }
    }
}

/// A cone (or cocone) over a diagram, checked to commute on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    diagram: Diagram,
    apex: ISet,
    legs: Vec<SetFn>,
}

impl Candidate {
    pub fn new(diagram: Diagram, apex: ISet, legs: Vec<SetFn>) -> Result<Candidate> {
        diagram.validate()?;
        let objects = diagram.leg_objects();
        if legs.len() != objects.len() {
            return Err(Error::NotACone(format!(
                "expected {} legs, found {}",
                objects.len(),
                legs.len()
            )));
        }
        for (leg, obj) in legs.iter().zip(&objects) {
            let (dom, cod) = match &diagram {
                Diagram::Exponential(x, _) => (prod0(&apex, x), obj.clone()),
                d if d.variance() == Variance::Limit => (apex.clone(), obj.clone()),
                _ => (obj.clone(), apex.clone()),
            };
            if *leg.dom() != dom || *leg.cod() != cod {
                return Err(Error::NotACone(format!(
                    "leg {} → {} should be {} → {}",
                    leg.dom(),
                    leg.cod(),
                    dom,
                    cod
                )));
            }
        }
        let arrays: Vec<&[u32]> = legs.iter().map(SetFn::indices).collect();
        if !diagram.commutes(&arrays) {
            return Err(Error::NotACone(
                "the legs do not commute with the diagram".into(),
            ));
        }
        Ok(Candidate {
            diagram,
            apex,
            legs,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn apex(&self) -> &ISet {
        &self.apex
    }

    pub fn legs(&self) -> &[SetFn] {
        &self.legs
    }
}

/// A test cone with zero or several mediators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalFailure {
    pub test_object: ISet,
    /// The offending test cone's legs.
    pub cone: Vec<SetFn>,
    pub mediators: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MediatorReport {
    /// Test cones examined.
    pub cases: u64,
    pub exists: bool,
    pub unique: bool,
    /// The mediator of the first test cone that has exactly one.
    pub mediator: Option<SetFn>,
    /// The first test cone without a unique mediator.
    pub failure: Option<UniversalFailure>,
}

impl MediatorReport {
    pub fn passed(&self) -> bool {
        self.exists && self.unique
    }
}

pub fn check_universal(candidate: &Candidate, test_objects: &[ISet]) -> Result<MediatorReport> {
    check_universal_with(candidate, test_objects, &Budget::current())
}

/// Results are combined in the order of `test_objects`, so the report does not depend on how
/// the work is scheduled.
pub fn check_universal_with(
    candidate: &Candidate,
    test_objects: &[ISet],
    budget: &Budget,
) -> Result<MediatorReport> {
    let parts = test_objects
        .par_iter()
        .map(|t| check_one(candidate, t, budget))
        .collect::<Vec<Result<MediatorReport>>>();
    let mut report = MediatorReport {
        cases: 0,
        exists: true,
        unique: true,
        mediator: None,
        failure: None,
    };
    for part in parts {
        let part = part?;
        report.cases += part.cases;
        report.exists &= part.exists;
        report.unique &= part.unique;
        if report.mediator.is_none() {
            report.mediator = part.mediator;
        }
        if report.failure.is_none() {
            report.failure = part.failure;
        }
    }
    Ok(report)
}

struct Tally {
    /// Induced cone (concatenated leg arrays) ↦ (number of mediators, first mediator).
    seen: HashMap<Vec<u32>, (u64, Vec<u32>)>,
}

fn check_one(candidate: &Candidate, t: &ISet, budget: &Budget) -> Result<MediatorReport> {
    let diagram = &candidate.diagram;
    let apex = &candidate.apex;
    let objects = diagram.leg_objects();
    let variance = diagram.variance();

    // Shapes of the mediators and of the test legs, as (domain size, codomain size).
    let (med_shape, leg_shapes, exp_tables) = match (variance, diagram) {
        (Variance::Limit, _) => (
            (t.cardinality(), apex.cardinality()),
            objects
                .iter()
                .map(|o| (t.cardinality(), o.cardinality()))
                .collect::<Vec<_>>(),
            None,
        ),
        (Variance::Colimit, _) => (
            (apex.cardinality(), t.cardinality()),
            objects
                .iter()
                .map(|o| (o.cardinality(), t.cardinality()))
                .collect(),
            None,
        ),
        (Variance::Exponential, Diagram::Exponential(x, y)) => {
            let tables = ExpTables::new(apex, x, t)?;
            let shape = (tables.t_split.len(), y.cardinality());
            (
                (t.cardinality(), apex.cardinality()),
                vec![shape],
                Some(tables),
            )
        }
        _ => unreachable!("only exponential diagrams have exponential variance"),
    };

    let cones = saturating_product(leg_shapes.iter().map(|&(n, k)| hom_count_sizes(n, k)));
    Budget::check("test cones per object", cones, budget.pi_cap)?;

    let mut tally = Tally {
        seen: HashMap::new(),
    };
    for_each_index_map(med_shape.0, med_shape.1, budget, |m| {
        let key = induced(candidate, m, exp_tables.as_ref());
        tally
            .seen
            .entry(key)
            .and_modify(|(n, _)| *n += 1)
            .or_insert_with(|| (1, m.to_vec()));
    })?;

    let mut report = MediatorReport {
        cases: 0,
        exists: true,
        unique: true,
        mediator: None,
        failure: None,
    };
    let leg_arrays = all_leg_arrays(&leg_shapes, budget)?;
    if leg_arrays.iter().any(Vec::is_empty) {
        return Ok(report);
    }
    let mut choice = vec![0usize; leg_shapes.len()];
    loop {
        let legs: Vec<&[u32]> = choice
            .iter()
            .zip(&leg_arrays)
            .map(|(&i, arrays)| arrays[i].as_slice())
            .collect();
        if diagram.commutes(&legs) {
            report.cases += 1;
            let key: Vec<u32> = legs.concat();
            let (count, first) = tally
                .seen
                .get(&key)
                .map_or((0, None), |(n, m)| (*n, Some(m)));
            if count == 0 {
                report.exists = false;
            }
            if count > 1 {
                report.unique = false;
            }
            if count == 1 && report.mediator.is_none() {
                let (dom, cod) = match variance {
                    Variance::Colimit => (apex, t),
                    _ => (t, apex),
                };
                report.mediator = Some(SetFn::from_indices_unchecked(
                    dom,
                    cod,
                    first.expect("counted").clone(),
                ));
            }
            if count != 1 && report.failure.is_none() {
                report.failure = Some(UniversalFailure {
                    test_object: t.clone(),
                    cone: test_legs(candidate, t, &legs),
                    mediators: count,
                });
            }
        }
        if !advance(&mut choice, &leg_arrays) {
            break;
        }
    }
    Ok(report)
}

fn hom_count_sizes(n: usize, k: usize) -> u64 {
    (k as u64).saturating_pow(n.min(u32::MAX as usize) as u32)
}

fn all_leg_arrays(shapes: &[(usize, usize)], budget: &Budget) -> Result<Vec<Vec<Vec<u32>>>> {
    shapes
        .iter()
        .map(|&(n, k)| {
            let mut out = Vec::new();
            for_each_index_map(n, k, budget, |m| out.push(m.to_vec()))?;
            Ok(out)
        })
        .collect()
}

/// Odometer over the leg choices; `false` once every combination has been visited.
fn advance(choice: &mut [usize], arrays: &[Vec<Vec<u32>>]) -> bool {
    for pos in (0..choice.len()).rev() {
        choice[pos] += 1;
        if choice[pos] < arrays[pos].len() {
            return true;
        }
        choice[pos] = 0;
    }
    false
}

/// The cone a mediator induces, as concatenated leg arrays.
fn induced(candidate: &Candidate, m: &[u32], exp: Option<&ExpTables>) -> Vec<u32> {
    let mut key = Vec::new();
    match candidate.diagram.variance() {
        Variance::Limit => {
            for leg in &candidate.legs {
                key.extend(m.iter().map(|&i| leg.indices()[i as usize]));
            }
        }
        Variance::Colimit => {
            for leg in &candidate.legs {
                key.extend(leg.indices().iter().map(|&j| m[j as usize]));
            }
        }
        Variance::Exponential => {
            let tables = exp.expect("exponential tables");
            let eval = candidate.legs[0].indices();
            key.extend(
                tables
                    .t_split
                    .iter()
                    .map(|&(ti, ai)| eval[tables.apex_pair[m[ti] as usize][ai] as usize]),
            );
        }
    }
    key
}

fn test_legs(candidate: &Candidate, t: &ISet, legs: &[&[u32]]) -> Vec<SetFn> {
    let objects = candidate.diagram.leg_objects();
    legs.iter()
        .zip(&objects)
        .map(
            |(arr, obj)| match (&candidate.diagram, candidate.diagram.variance()) {
                (Diagram::Exponential(x, _), _) => {
                    SetFn::from_indices_unchecked(&prod0(t, x), obj, arr.to_vec())
                }
                (_, Variance::Limit) => SetFn::from_indices_unchecked(t, obj, arr.to_vec()),
                _ => SetFn::from_indices_unchecked(obj, t, arr.to_vec()),
            },
        )
        .collect()
}

/// Position bookkeeping for `prod0(T, x)` and `prod0(apex, x)`.
struct ExpTables {
    /// For each member of `prod0(T, x)`, the positions of its components in `T` and `x`.
    t_split: Vec<(usize, usize)>,
    /// `apex_pair[e][a]` is the position of `⟨apex_e, x_a⟩` in `prod0(apex, x)`.
    apex_pair: Vec<Vec<u32>>,
}

impl ExpTables {
    fn new(apex: &ISet, x: &ISet, t: &ISet) -> Result<ExpTables> {
        let split = |s: &ISet, left: &ISet| -> Result<Vec<(usize, usize)>> {
            prod0(left, x)
                .members()
                .iter()
                .map(|p| {
                    let (l, a) = wiener_unpair(p)?;
                    Ok((left.position(&l)?, x.position(&a)?))
                })
                .collect::<Result<Vec<_>>>()
                .inspect(|v| debug_assert_eq!(v.len(), s.cardinality()))
        };
        let t_split = split(&prod0(t, x), t)?;
        let mut apex_pair = vec![vec![0u32; x.cardinality()]; apex.cardinality()];
        for (k, (e, a)) in split(&prod0(apex, x), apex)?.into_iter().enumerate() {
            apex_pair[e][a] = k as u32;
        }
        Ok(ExpTables { t_split, apex_pair })
    }
}
