//! Universe codes against direct combinatorial constructions, and quotients.

use rand::Rng;

use vz_core::literal::print;
use vz_core::relation::{lemma30_check, quotient0};
use vz_core::universe::{
    coprod0, empty0, id0, pi0_with, sigma0, suc0, unit0, vn_numeral, wiener_pair, wiener_unpair,
};
use vz_core::{code_u64, Family, ISet, Relation};

use super::gen::{families, objects, small_sets};
use super::{check_all, ensure, ok, Config, LawFn, LawOutcome};

pub const LAWS: &[(&str, LawFn)] = &[
    ("pi-decodes-to-choice-graphs", pi),
    ("sigma-decodes-to-dependent-pairs", sigma),
    ("coproduct-decodes-to-tagged-union", coproduct),
    ("identity-is-a-proposition", identity),
    ("von-neumann-numerals", numerals),
    ("wiener-pair-round-trip", pairs),
    ("ackermann-anchors", anchors),
    ("equivalence-characterizations-agree", lemma30),
    ("quotient-counts-classes", quotients),
    ("universe-is-not-univalent", non_univalence),
];

pub const QUOTIENT_CASES: usize = 1000;

fn all_families(config: &Config) -> Vec<Family> {
    let pool = small_sets();
    objects(config.max_size)
        .iter()
        .flat_map(|b| families(b, &pool))
        .collect()
}

fn show_family(f: &Family) -> String {
    let entries: Vec<String> = f
        .iter()
        .map(|(a, v)| format!("{} -> {}", print(a), print(v)))
        .collect();
    format!("family {{{}}}", entries.join(", "))
}

/// Every choice of one element per fiber, as index vectors.
fn choices(fibers: &[ISet]) -> Vec<Vec<usize>> {
    fibers.iter().fold(vec![vec![]], |acc, fib| {
        acc.into_iter()
            .flat_map(|prefix| {
                (0..fib.cardinality()).map(move |k| {
                    let mut next = prefix.clone();
                    next.push(k);
                    next
                })
            })
            .collect()
    })
}

fn pi(config: &Config) -> LawOutcome {
    let budget = config.budget;
    check_all(
        "pi-decodes-to-choice-graphs",
        &all_families(config),
        |fam| {
            let base = fam.base();
            let code = ok(pi0_with(base, fam, &budget))?;
            let expected_size: usize = fam.values().iter().map(ISet::cardinality).product();
            ensure(code.cardinality() == expected_size, || {
                format!("{} functions, expected {expected_size}", code.cardinality())
            })?;
            let graphs = choices(fam.values()).into_iter().map(|c| {
                ISet::from_members_dedup(c.iter().enumerate().map(|(i, &k)| {
                    wiener_pair(
                        base.members()[i].clone(),
                        fam.values()[i].members()[k].clone(),
                    )
                }))
            });
            let direct = ok(ISet::sup0(graphs))?;
            ensure(code == direct, || {
                format!("code {} differs from {}", print(&code), print(&direct))
            })
        },
        show_family,
    )
}

fn sigma(config: &Config) -> LawOutcome {
    check_all(
        "sigma-decodes-to-dependent-pairs",
        &all_families(config),
        |fam| {
            let code = ok(sigma0(fam.base(), fam))?;
            let expected_size: usize = fam.values().iter().map(ISet::cardinality).sum();
            ensure(code.cardinality() == expected_size, || {
                format!("{} pairs, expected {expected_size}", code.cardinality())
            })?;
            let direct = ok(ISet::sup0(fam.iter().flat_map(|(a, fib)| {
                fib.members()
                    .iter()
                    .map(move |b| wiener_pair(a.clone(), b.clone()))
            })))?;
            ensure(code == direct, || {
                format!("code {} differs from {}", print(&code), print(&direct))
            })
        },
        show_family,
    )
}

fn object_pairs(config: &Config) -> Vec<(ISet, ISet)> {
    let objs = objects(config.max_size);
    objs.iter()
        .flat_map(|x| objs.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

fn coproduct(config: &Config) -> LawOutcome {
    check_all(
        "coproduct-decodes-to-tagged-union",
        &object_pairs(config),
        |(x, y)| {
            let code = coprod0(x, y);
            let left = x.members().iter().map(|a| wiener_pair(empty0(), a.clone()));
            let right = y.members().iter().map(|b| wiener_pair(unit0(), b.clone()));
            let direct = ok(ISet::sup0(left.chain(right)))?;
            ensure(
                code.cardinality() == x.cardinality() + y.cardinality(),
                || "size is not the sum".into(),
            )?;
            ensure(code == direct, || format!("code {}", print(&code)))
        },
        |(x, y)| format!("{}, {}", print(x), print(y)),
    )
}

fn identity(config: &Config) -> LawOutcome {
    let cases: Vec<(ISet, ISet, ISet)> = objects(config.max_size)
        .into_iter()
        .flat_map(|x| {
            let ms = x.members().to_vec();
            ms.iter()
                .flat_map(|a| {
                    ms.iter()
                        .map(|b| (x.clone(), a.clone(), b.clone()))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    check_all(
        "identity-is-a-proposition",
        &cases,
        |(x, a, b)| {
            let code = ok(id0(x, a, b))?;
            ensure(code.cardinality() <= 1, || "more than one proof".into())?;
            ensure((code.cardinality() == 1) == (a == b), || {
                "inhabited iff equal fails".into()
            })
        },
        |(x, a, b)| format!("{}, {}, {}", print(x), print(a), print(b)),
    )
}

fn numerals(_: &Config) -> LawOutcome {
    let ns: Vec<u64> = (0..=10).collect();
    check_all(
        "von-neumann-numerals",
        &ns,
        |&n| {
            let x = ok(vn_numeral(n))?;
            ensure(x.cardinality() as u64 == n, || {
                format!("|vn {n}| = {}", x.cardinality())
            })?;
            for m in 0..n {
                ensure(ok(vn_numeral(m))? != x, || format!("vn {m} = vn {n}"))?;
            }
            ensure(ok(vn_numeral(n + 1))? == suc0(&x), || {
                "successor mismatch".into()
            })
        },
        |n| n.to_string(),
    )
}

fn pairs(_: &Config) -> LawOutcome {
    let pool = small_sets();
    let cases: Vec<(ISet, ISet)> = pool
        .iter()
        .flat_map(|a| pool.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let all: Vec<ISet> = cases
        .iter()
        .map(|(a, b)| wiener_pair(a.clone(), b.clone()))
        .collect();
    check_all(
        "wiener-pair-round-trip",
        &cases,
        |(a, b)| {
            let p = wiener_pair(a.clone(), b.clone());
            ensure(ok(wiener_unpair(&p))? == (a.clone(), b.clone()), || {
                "unpair(pair) differs".into()
            })?;
            ensure(all.iter().filter(|q| **q == p).count() == 1, || {
                "pairing is not injective".into()
            })
        },
        |(a, b)| format!("{}, {}", print(a), print(b)),
    )
}

/// The code of a set by the defining sum of powers of two.
fn ackermann_oracle(x: &ISet) -> u64 {
    x.members()
        .iter()
        .map(|m| 1u64 << ackermann_oracle(m))
        .sum()
}

fn anchors(_: &Config) -> LawOutcome {
    let cases: Vec<(&'static str, ISet)> = vec![
        ("vn 3", vn_numeral(3).expect("small")),
        ("<{},{}>", wiener_pair(empty0(), empty0())),
    ];
    check_all(
        "ackermann-anchors",
        &cases,
        |(_, x)| {
            let expected = ackermann_oracle(x);
            ensure(code_u64(x) == Some(expected), || {
                format!("code {:?}, oracle {expected}", code_u64(x))
            })
        },
        |(name, _)| name.to_string(),
    )
}

fn lemma30(_: &Config) -> LawOutcome {
    let base = ok(ISet::sup0(small_sets().into_iter().take(3))).expect("distinct");
    let bits: Vec<u64> = (0..512).collect();
    check_all(
        "equivalence-characterizations-agree",
        &bits,
        |&b| {
            let (x, y, z) = lemma30_check(&Relation::from_bits(base.clone(), b));
            ensure(x == y && y == z, || {
                format!("characterizations give {x}, {y}, {z}")
            })
        },
        |b| format!("relation bits {b:09b}"),
    )
}

/// Number of classes of the equivalence generated by `pairs` on `0..n`.
fn union_find_classes(n: usize, pairs: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for &(a, b) in pairs {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).filter(|&i| root(&mut parent, i) == i).count()
}

fn quotients(config: &Config) -> LawOutcome {
    let mut rng = config.rng("quotient-counts-classes");
    let cases: Vec<(u64, Vec<(usize, usize)>)> = (0..QUOTIENT_CASES)
        .map(|_| {
            let n = rng.gen_range(0..=6u64);
            let k = rng.gen_range(0..=n * n);
            let pairs = (0..k)
                .map(|_| (rng.gen_range(0..n as usize), rng.gen_range(0..n as usize)))
                .collect();
            (n, pairs)
        })
        .collect();
    check_all(
        "quotient-counts-classes",
        &cases,
        |(n, pairs)| {
            let base = ok(vn_numeral(*n))?;
            let r = Relation::from_indices(base.clone(), pairs.iter().copied());
            let q = ok(quotient0(&base, &r))?;
            let expected = union_find_classes(*n as usize, pairs);
            ensure(q.cardinality() == expected, || {
                format!("{} classes, expected {expected}", q.cardinality())
            })
        },
        |(n, pairs)| format!("base #{n}, pairs {pairs:?}"),
    )
}

fn non_univalence(_: &Config) -> LawOutcome {
    let other = ISet::singleton(unit0());
    let mut out = LawOutcome::new("universe-is-not-univalent");
    out.record(
        ensure(unit0() != other, || "the two codes are equal".into()).and_then(|_| {
            ensure(
                unit0().cardinality() == 1 && other.cardinality() == 1,
                || "carriers are not both singletons".into(),
            )
        }),
        || format!("{}, {}", print(&unit0()), print(&other)),
    );
    out
}
