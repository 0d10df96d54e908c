//! Finite limits, colimits and exponentials by brute-force mediator counting; slices.

use vz_core::category::{
    check_universal_with, coequalizer, compose, coproduct, equalizer, exponential,
    family_round_trip_iso, hom_count, homs_with, id_fn, initial, product, pullback, pushout,
    slice_exponential_with, slice_round_trip_iso, terminal, verify_slice_adjunction, Candidate,
    Diagram, SliceObj,
};
use vz_core::literal::print;
use vz_core::universe::{prod0, vn_numeral, wiener_unpair};
use vz_core::{from_code_u64, ISet, SetFn};

use super::gen::{families, objects, pick, random_map, small_sets};
use super::{check_all, ensure, ok, Config, LawFn, LawOutcome};

pub const LAWS: &[(&str, LawFn)] = &[
    ("hom-count-is-power", hom_counts),
    ("composition-is-associative-and-unital", category_laws),
    ("constructions-are-universal", universal),
    ("wrong-cones-are-not-universal", negative_controls),
    ("slice-exponential-adjunction", slice_adjunction),
    ("families-and-slices-round-trip", round_trips),
];

/// Random instances per diagram shape that needs morphisms.
pub const MORPHISM_SAMPLES: usize = 60;

fn hom_counts(config: &Config) -> LawOutcome {
    let objs = objects(config.max_size);
    let pairs: Vec<(ISet, ISet)> = objs
        .iter()
        .flat_map(|x| objs.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let budget = config.budget;
    check_all(
        "hom-count-is-power",
        &pairs,
        |(x, y)| {
            let expected = (y.cardinality() as u64).pow(x.cardinality() as u32);
            let all = ok(homs_with(x, y, &budget))?;
            ensure(all.len() as u64 == expected, || {
                format!("{} maps, expected {expected}", all.len())
            })?;
            ensure(hom_count(x, y) == expected, || {
                format!("hom_count says {}", hom_count(x, y))
            })?;
            let distinct: std::collections::HashSet<&SetFn> = all.iter().collect();
            ensure(distinct.len() == all.len(), || "repeated maps".into())
        },
        |(x, y)| format!("{}, {}", print(x), print(y)),
    )
}

fn category_laws(config: &Config) -> LawOutcome {
    let mut rng = config.rng("composition-is-associative-and-unital");
    let objs: Vec<ISet> = objects(config.max_size)
        .into_iter()
        .filter(|o| !o.is_empty())
        .collect();
    let cases: Vec<(SetFn, SetFn, SetFn)> = (0..500)
        .filter_map(|_| {
            let (x, y, z, w) = (
                pick(&mut rng, &objs),
                pick(&mut rng, &objs),
                pick(&mut rng, &objs),
                pick(&mut rng, &objs),
            );
            Some((
                random_map(&mut rng, x, y)?,
                random_map(&mut rng, y, z)?,
                random_map(&mut rng, z, w)?,
            ))
        })
        .collect();
    check_all(
        "composition-is-associative-and-unital",
        &cases,
        |(f, g, h)| {
            let left = ok(compose(h, &ok(compose(g, f))?))?;
            let right = ok(compose(&ok(compose(h, g))?, f))?;
            ensure(left == right, || "not associative".into())?;
            ensure(ok(compose(f, &id_fn(f.dom())))? == *f, || {
                "right identity fails".into()
            })?;
            ensure(ok(compose(&id_fn(f.cod()), f))? == *f, || {
                "left identity fails".into()
            })
        },
        |(f, g, h)| {
            format!(
                "{}; {}; {}",
                print(&f.to_graph()),
                print(&g.to_graph()),
                print(&h.to_graph())
            )
        },
    )
}

/// A constructed (co)limit or exponential, with a name for reports.
struct Instance {
    name: String,
    candidate: Candidate,
}

fn instances(config: &Config) -> Result<Vec<Instance>, String> {
    let objs = objects(config.max_size);
    let mut out = vec![
        Instance {
            name: "terminal".into(),
            candidate: ok(Candidate::new(Diagram::Terminal, terminal(), vec![]))?,
        },
        Instance {
            name: "initial".into(),
            candidate: ok(Candidate::new(Diagram::Initial, initial(), vec![]))?,
        },
    ];
    for x in &objs {
        for y in &objs {
            let name = |what: &str| format!("{what} of {}, {}", print(x), print(y));
            let p = product(x, y);
            out.push(Instance {
                name: name("product"),
                candidate: ok(Candidate::new(
                    Diagram::Product(x.clone(), y.clone()),
                    p.obj,
                    vec![p.pr1, p.pr2],
                ))?,
            });
            let c = coproduct(x, y);
            out.push(Instance {
                name: name("coproduct"),
                candidate: ok(Candidate::new(
                    Diagram::Coproduct(x.clone(), y.clone()),
                    c.obj,
                    vec![c.in1, c.in2],
                ))?,
            });
            let e = ok(exponential(x, y))?;
            out.push(Instance {
                name: name("exponential"),
                candidate: ok(Candidate::new(
                    Diagram::Exponential(x.clone(), y.clone()),
                    e.obj,
                    vec![e.eval],
                ))?,
            });
        }
    }
    let mut rng = config.rng("constructions-are-universal");
    let map = |rng: &mut rand_chacha::ChaCha8Rng, x: &ISet, y: &ISet| random_map(rng, x, y);
    let shown =
        |f: &SetFn, g: &SetFn| format!("{} and {}", print(&f.to_graph()), print(&g.to_graph()));
    for _ in 0..MORPHISM_SAMPLES {
        let (x, y, a) = (
            pick(&mut rng, &objs).clone(),
            pick(&mut rng, &objs).clone(),
            pick(&mut rng, &objs).clone(),
        );
        if let (Some(f), Some(g)) = (map(&mut rng, &x, &a), map(&mut rng, &y, &a)) {
            let pb = ok(pullback(&f, &g))?;
            out.push(Instance {
                name: format!("pullback of {}", shown(&f, &g)),
                candidate: ok(Candidate::new(
                    Diagram::Pullback(f, g),
                    pb.obj,
                    vec![pb.p1, pb.p2],
                ))?,
            });
        }
        if let (Some(f), Some(g)) = (map(&mut rng, &a, &x), map(&mut rng, &a, &y)) {
            let po = ok(pushout(&f, &g))?;
            out.push(Instance {
                name: format!("pushout of {}", shown(&f, &g)),
                candidate: ok(Candidate::new(
                    Diagram::Pushout(f, g),
                    po.obj,
                    vec![po.j1, po.j2],
                ))?,
            });
        }
        if let (Some(f), Some(g)) = (map(&mut rng, &x, &y), map(&mut rng, &x, &y)) {
            let eq = ok(equalizer(&f, &g))?;
            out.push(Instance {
                name: format!("equalizer of {}", shown(&f, &g)),
                candidate: ok(Candidate::new(
                    Diagram::Equalizer(f.clone(), g.clone()),
                    eq.obj,
                    vec![eq.incl],
                ))?,
            });
            let co = ok(coequalizer(&f, &g))?;
            out.push(Instance {
                name: format!("coequalizer of {}", shown(&f, &g)),
                candidate: ok(Candidate::new(
                    Diagram::Coequalizer(f, g),
                    co.obj,
                    vec![co.quo],
                ))?,
            });
        }
    }
    Ok(out)
}

fn with_instances(
    config: &Config,
    law: &'static str,
    f: impl FnOnce(Vec<Instance>) -> LawOutcome,
) -> LawOutcome {
    match instances(config) {
        Ok(all) => f(all),
        Err(e) => {
            let mut out = LawOutcome::new(law);
            out.record(Err(e), || "building the constructions".into());
            out
        }
    }
}

fn universal(config: &Config) -> LawOutcome {
    let tests = objects(config.max_size);
    let budget = config.budget;
    with_instances(config, "constructions-are-universal", |all| {
        check_all(
            "constructions-are-universal",
            &all,
            |inst| {
                let report = ok(check_universal_with(&inst.candidate, &tests, &budget))?;
                ensure(report.passed(), || match &report.failure {
                    Some(f) => format!(
                        "test object {} has a cone with {} mediators",
                        print(&f.test_object),
                        f.mediators
                    ),
                    None => "no test cones".into(),
                })
            },
            |inst| inst.name.clone(),
        )
    })
}

fn restrict(f: &SetFn, dom: &ISet) -> vz_core::Result<SetFn> {
    SetFn::from_fn(dom, f.cod(), |a| f.apply(a))
}

fn widen(f: &SetFn, cod: &ISet) -> vz_core::Result<SetFn> {
    SetFn::from_fn(f.dom(), cod, |a| f.apply(a))
}

/// The candidate with one apex element removed (limits, exponentials) or one junk element
/// added (colimits). `None` if there is nothing to remove.
fn perturbed(c: &Candidate) -> vz_core::Result<Option<Candidate>> {
    let apex = c.apex();
    let colimit = matches!(
        c.diagram(),
        Diagram::Initial | Diagram::Coproduct(..) | Diagram::Pushout(..) | Diagram::Coequalizer(..)
    );
    if colimit {
        let junk = (0..)
            .map(from_code_u64)
            .find(|s| !apex.contains(s))
            .expect("the universe is infinite");
        let bigger = apex.insert(junk);
        let legs = c
            .legs()
            .iter()
            .map(|l| widen(l, &bigger))
            .collect::<vz_core::Result<_>>()?;
        return Candidate::new(c.diagram().clone(), bigger, legs).map(Some);
    }
    let Some(last) = apex.members().last() else {
        return Ok(None);
    };
    let smaller = ISet::from_members_dedup(apex.members().iter().filter(|m| *m != last).cloned());
    let legs = match c.diagram() {
        Diagram::Exponential(x, _) => {
            let dom = prod0(&smaller, x);
            vec![restrict(&c.legs()[0], &dom)?]
        }
        _ => c
            .legs()
            .iter()
            .map(|l| restrict(l, &smaller))
            .collect::<vz_core::Result<_>>()?,
    };
    Candidate::new(c.diagram().clone(), smaller, legs).map(Some)
}

fn negative_controls(config: &Config) -> LawOutcome {
    let tests = objects(config.max_size);
    let budget = config.budget;
    with_instances(config, "wrong-cones-are-not-universal", |all| {
        let wrong: Vec<Instance> = all
            .into_iter()
            .filter_map(|inst| match perturbed(&inst.candidate) {
                Ok(Some(candidate)) => Some(Instance {
                    name: format!("perturbed {}", inst.name),
                    candidate,
                }),
                _ => None,
            })
            .collect();
        check_all(
            "wrong-cones-are-not-universal",
            &wrong,
            |inst| {
                let report = ok(check_universal_with(&inst.candidate, &tests, &budget))?;
                ensure(!report.passed(), || "a wrong cone passed".into())
            },
            |inst| inst.name.clone(),
        )
    })
}

/// Every slice object over `a` whose total set is a numeral of size at most 2.
fn slices_over(a: &ISet) -> Vec<SliceObj> {
    (0..=2)
        .map(|n| vn_numeral(n).expect("small"))
        .flat_map(|total| {
            let budget = vz_core::Budget::DEFAULT;
            homs_with(&total, a, &budget).expect("small")
        })
        .map(|proj| SliceObj::over(a, proj).expect("lands in a"))
        .collect()
}

fn show_slice(s: &SliceObj) -> String {
    print(&s.proj().to_graph())
}

fn slice_adjunction(config: &Config) -> LawOutcome {
    let budget = config.budget;
    let mut cases = Vec::new();
    for n in 0..=2 {
        let a = vn_numeral(n).expect("small");
        let objs = slices_over(&a);
        for s in &objs {
            for t in &objs {
                for z in &objs {
                    cases.push((a.clone(), s.clone(), t.clone(), z.clone()));
                }
            }
        }
    }
    check_all(
        "slice-exponential-adjunction",
        &cases,
        |(a, s, t, z)| {
            let exp = ok(slice_exponential_with(a, s, t, &budget))?;
            let check = ok(verify_slice_adjunction(&exp, z))?;
            ensure(check.bijective && check.lhs == check.rhs, || {
                format!(
                    "{} maps on the left, {} on the right, bijective: {}",
                    check.lhs, check.rhs, check.bijective
                )
            })
        },
        |(a, s, t, z)| {
            format!(
                "over {}: {}, {}, {}",
                print(a),
                show_slice(s),
                show_slice(t),
                show_slice(z)
            )
        },
    )
}

enum RoundTrip {
    Family(vz_core::Family),
    Slice(ISet, SliceObj),
}

fn round_trips(config: &Config) -> LawOutcome {
    let pool = small_sets();
    let mut cases = Vec::new();
    let budget = config.budget;
    for a in objects(config.max_size) {
        for fam in families(&a, &pool) {
            cases.push(RoundTrip::Family(fam));
        }
        for total in objects(config.max_size.min(2)) {
            for proj in homs_with(&total, &a, &budget).unwrap_or_default() {
                if let Ok(s) = SliceObj::over(&a, proj) {
                    cases.push(RoundTrip::Slice(a.clone(), s));
                }
            }
        }
    }
    check_all(
        "families-and-slices-round-trip",
        &cases,
        |case| match case {
            RoundTrip::Family(fam) => {
                let isos = ok(family_round_trip_iso(fam.base(), fam))?;
                ensure(isos.len() == fam.base().cardinality(), || {
                    "missing fibers".into()
                })?;
                ensure(isos.iter().all(SetFn::is_bijective), || {
                    "a fiber map is not bijective".into()
                })
            }
            RoundTrip::Slice(a, s) => {
                let h = ok(slice_round_trip_iso(a, s))?;
                ensure(h.map().is_bijective(), || "not bijective".into())?;
                // The iso sends ⟨i, ⟨x, ∅⟩⟩ to x, and x lies over i.
                for (p, x) in h.map().entries() {
                    let (i, _) = ok(wiener_unpair(p))?;
                    ensure(ok(s.proj().apply(x))? == i, || {
                        "does not commute with projections".into()
                    })?;
                }
                Ok(())
            }
        },
        |case| match case {
            RoundTrip::Family(fam) => {
                let v: Vec<String> = fam.values().iter().map(print).collect();
                format!(
                    "family over {} with fibers {}",
                    print(fam.base()),
                    v.join(", ")
                )
            }
            RoundTrip::Slice(a, s) => format!("slice over {}: {}", print(a), show_slice(s)),
        },
    )
}
