//! Iterative sets against Ackermann arithmetic, and canonicalization of multisets.

use rand::Rng;

use vz_core::ackermann::enumerate_upto_with;
use vz_core::multiset::meq_via_bijection_with;
use vz_core::{
    canonicalize, code_u64, from_code_u64, is_iterative, iset_cmp, iset_eq, mem, meq, ISet,
};

use super::gen::{random_set, random_tree, Tree};
use super::{check_all, check_sets, ensure, ok, Config, LawFn, LawOutcome};

pub const LAWS: &[(&str, LawFn)] = &[
    ("ackermann-round-trip", round_trip),
    ("members-are-set-bits", members_are_bits),
    ("membership-is-bit-test", membership),
    ("order-is-numeric", order),
    ("canonical-form-decides-meq", canonical),
    ("meq-agrees-with-bijection-search", bijection),
];

/// Random multisets per canonicalization law.
pub const MULTISET_CASES: usize = 10_000;

fn universe(config: &Config) -> Result<Vec<ISet>, String> {
    ok(enumerate_upto_with(
        config.budget.code_bound,
        &config.budget,
    ))
}

fn bounded(
    config: &Config,
    law: &'static str,
    f: impl FnOnce(Vec<ISet>) -> LawOutcome,
) -> LawOutcome {
    match universe(config) {
        Ok(sets) => f(sets),
        Err(e) => {
            let mut out = LawOutcome::new(law);
            out.record(Err(e), || {
                format!("code bound {}", config.budget.code_bound)
            });
            out
        }
    }
}

fn round_trip(config: &Config) -> LawOutcome {
    bounded(config, "ackermann-round-trip", |sets| {
        let codes: Vec<u64> = (0..sets.len() as u64).collect();
        check_all(
            "ackermann-round-trip",
            &codes,
            |&n| {
                let x = &sets[n as usize];
                ensure(code_u64(x) == Some(n), || {
                    format!("code is {:?}", code_u64(x))
                })?;
                ensure(from_code_u64(n) == *x, || {
                    "decoding is not the enumerated set".into()
                })
            },
            |n| n.to_string(),
        )
    })
}

fn members_are_bits(config: &Config) -> LawOutcome {
    bounded(config, "members-are-set-bits", |sets| {
        let inputs: Vec<Vec<ISet>> = sets.iter().map(|x| vec![x.clone()]).collect();
        check_sets("members-are-set-bits", &inputs, |xs| {
            let n = code_u64(&xs[0]).ok_or("code too large")?;
            let bits: Vec<u64> = (0..64).filter(|b| n >> b & 1 == 1).collect();
            let member_codes: Vec<u64> = xs[0].members().iter().filter_map(code_u64).collect();
            ensure(member_codes == bits, || {
                format!("member codes {member_codes:?}, set bits {bits:?}")
            })
        })
    })
}

fn membership(config: &Config) -> LawOutcome {
    let fault = config.fault;
    bounded(config, "membership-is-bit-test", |sets| {
        let inputs: Vec<Vec<ISet>> = sets.iter().map(|x| vec![x.clone()]).collect();
        let probes: Vec<ISet> = (0..64.min(sets.len() as u64)).map(from_code_u64).collect();
        check_sets("membership-is-bit-test", &inputs, |xs| {
            let x = &xs[0];
            let n = code_u64(x).ok_or("code too large")?;
            for (k, z) in probes.iter().enumerate() {
                let mut claimed = mem(z, x);
                if fault && x.cardinality() >= 2 && x.members().last() == Some(z) {
                    claimed = !claimed;
                }
                let bit = n >> k & 1 == 1;
                ensure(claimed == bit, || {
                    format!(
                        "mem({}) is {claimed}, bit {k} is {bit}",
                        vz_core::literal::print(z)
                    )
                })?;
            }
            Ok(())
        })
    })
}

fn order(config: &Config) -> LawOutcome {
    bounded(config, "order-is-numeric", |sets| {
        let mut rng = config.rng("order-is-numeric");
        let len = sets.len() as u64;
        let mut pairs = Vec::new();
        for n in 0..len {
            pairs.push((n, n));
            if n + 1 < len {
                pairs.push((n, n + 1));
                pairs.push((n + 1, n));
            }
            pairs.push((n, rng.gen_range(0..len)));
            pairs.push((rng.gen_range(0..len), n));
        }
        check_all(
            "order-is-numeric",
            &pairs,
            |&(a, b)| {
                let (x, y) = (&sets[a as usize], &sets[b as usize]);
                ensure(iset_eq(x, y) == (a == b), || {
                    "equality disagrees with codes".into()
                })?;
                ensure(iset_cmp(x, y) == a.cmp(&b), || {
                    "order disagrees with codes".into()
                })
            },
            |(a, b)| format!("codes {a}, {b}"),
        )
    })
}

/// Pairs of iterative multisets, half of them reorderings of one set.
fn canonical(config: &Config) -> LawOutcome {
    let mut rng = config.rng("canonical-form-decides-meq");
    let cases: Vec<(Tree, Tree)> = (0..MULTISET_CASES)
        .map(|_| {
            let base = Tree::of_set(&random_set(&mut rng, 5, 4));
            let p = base.shuffled(&mut rng);
            let q = if rng.gen_bool(0.5) {
                base.shuffled(&mut rng)
            } else {
                Tree::of_set(&random_set(&mut rng, 5, 4)).shuffled(&mut rng)
            };
            (p, q)
        })
        .collect();
    check_all(
        "canonical-form-decides-meq",
        &cases,
        |(p, q)| {
            let (mp, mq) = (p.to_multiset(), q.to_multiset());
            let cp = ok(canonicalize(&mp))?;
            let cq = ok(canonicalize(&mq))?;
            ensure(meq(&mp, &mq) == (cp == cq), || {
                "meq disagrees with canonical forms".into()
            })?;
            ensure(Tree::of_set(&cp).shuffled_eq(p), || {
                "canonical form is not a reordering".into()
            })
        },
        |(p, q)| format!("{} {}", p.text(), q.text()),
    )
}

fn bijection(config: &Config) -> LawOutcome {
    let mut rng = config.rng("meq-agrees-with-bijection-search");
    let cases: Vec<(Tree, Tree)> = (0..MULTISET_CASES)
        .map(|_| {
            let p = random_tree(&mut rng, 5, 4);
            let q = match rng.gen_range(0..3) {
                0 => p.shuffled(&mut rng),
                1 => p.mutated(&mut rng).shuffled(&mut rng),
                _ => random_tree(&mut rng, 5, 4),
            };
            (p, q)
        })
        .collect();
    let budget = config.budget;
    check_all(
        "meq-agrees-with-bijection-search",
        &cases,
        |(p, q)| {
            let (mp, mq) = (p.to_multiset(), q.to_multiset());
            let by_search = ok(meq_via_bijection_with(&mp, &mq, &budget))?;
            ensure(meq(&mp, &mq) == by_search, || {
                format!("meq says {}, search says {by_search}", meq(&mp, &mq))
            })?;
            ensure(is_iterative(&mp) == canonicalize(&mp).is_ok(), || {
                "canonicalize accepts exactly the iterative multisets".into()
            })
        },
        |(p, q)| format!("{} {}", p.text(), q.text()),
    )
}

impl Tree {
    /// Equal up to reordering children, by sorting both sides recursively.
    fn shuffled_eq(&self, other: &Tree) -> bool {
        fn sorted(t: &Tree) -> Tree {
            let mut kids: Vec<Tree> = t.0.iter().map(sorted).collect();
            kids.sort_by_key(Tree::text);
            Tree(kids)
        }
        sorted(self) == sorted(other)
    }
}
