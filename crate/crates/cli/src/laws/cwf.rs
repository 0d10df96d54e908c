//! The category with families on small contexts: functoriality, comprehension, and the type
//! formers' isomorphisms and stability under substitution.

use vz_core::category::{compose, homs_with};
use vz_core::cwf::{
    alpha_pi, alpha_pi_inv, alpha_sig, alpha_sig_inv, compr_bwd, compr_fwd, ctx_ext, eq_reflect,
    id_str, pi_str_with, refl_tm, sections_with, sig_str, subst_tm, subst_ty, sum_str, weaken,
    Section,
};
use vz_core::literal::print;
use vz_core::{Family, ISet, SetFn};

use super::gen::{families, objects, pick, random_map, small_sets};
use super::{check_all, ensure, ok, Config, LawFn, LawOutcome};

pub const LAWS: &[(&str, LawFn)] = &[
    ("substitution-is-functorial", functorial),
    ("comprehension-is-universal", comprehension),
    ("pi-abstraction-inverts-application", pi_iso),
    ("sigma-pairing-inverts-projections", sigma_iso),
    ("type-formers-are-stable", stability),
    ("identity-reflects-equality", reflection),
];

/// Random substitutions drawn per dependent type.
pub const SUBSTITUTIONS: usize = 2;

/// Largest context enumerated, whatever `--max-size` says.
const MAX_CTX: usize = 2;

fn contexts(config: &Config) -> Vec<ISet> {
    objects(config.max_size.min(MAX_CTX))
}

fn show_ty(a: &Family) -> String {
    let v: Vec<String> = a.values().iter().map(print).collect();
    format!("[{}]", v.join(", "))
}

fn show_fn(f: &SetFn) -> String {
    print(&f.to_graph())
}

/// Every type over every context.
fn types(config: &Config) -> Vec<Family> {
    let pool = small_sets();
    contexts(config)
        .iter()
        .flat_map(|g| families(g, &pool))
        .collect()
}

/// Every `(A, B)` with `A` over a context and `B` over its extension.
fn dependent_types(config: &Config) -> Vec<(Family, Family)> {
    let pool = small_sets();
    types(config)
        .into_iter()
        .flat_map(|a| {
            let ext = ctx_ext(a.base(), &a).expect("small");
            families(&ext, &pool)
                .into_iter()
                .map(move |b| (a.clone(), b))
        })
        .collect()
}

fn functorial(config: &Config) -> LawOutcome {
    let mut rng = config.rng("substitution-is-functorial");
    let ctxs = contexts(config);
    let budget = config.budget;
    let cases: Vec<(Family, SetFn, SetFn)> = types(config)
        .into_iter()
        .flat_map(|a| {
            let mut out = Vec::new();
            for _ in 0..SUBSTITUTIONS {
                let (d, e) = (pick(&mut rng, &ctxs).clone(), pick(&mut rng, &ctxs).clone());
                if let (Some(g), Some(h)) = (
                    random_map(&mut rng, &d, a.base()),
                    random_map(&mut rng, &e, &d),
                ) {
                    out.push((a.clone(), g, h));
                }
            }
            out
        })
        .collect();
    check_all(
        "substitution-is-functorial",
        &cases,
        |(a, g, h)| {
            ensure(ok(subst_ty(a, &SetFn::identity(a.base())))? == *a, || {
                "A·id differs from A".into()
            })?;
            let gh = ok(compose(g, h))?;
            let once = ok(subst_ty(a, &gh))?;
            let twice = ok(subst_ty(&ok(subst_ty(a, g))?, h))?;
            ensure(once == twice, || "A·(g∘h) differs from (A·g)·h".into())?;
            for t in ok(sections_with(a, &budget))? {
                ensure(ok(subst_tm(&t, &SetFn::identity(a.base())))? == t, || {
                    "t[id] differs from t".into()
                })?;
                let once = ok(subst_tm(&t, &gh))?;
                let twice = ok(subst_tm(&ok(subst_tm(&t, g))?, h))?;
                ensure(once == twice, || {
                    format!("term {} breaks composition", show_values(&t))
                })?;
            }
            Ok(())
        },
        |(a, g, h)| format!("A = {}, g = {}, h = {}", show_ty(a), show_fn(g), show_fn(h)),
    )
}

fn show_values(t: &Section) -> String {
    let v: Vec<String> = t.values().iter().map(print).collect();
    format!("[{}]", v.join(", "))
}

/// Substitutions into `Γ.A` correspond to pairs `(γ, a)`: both composites are identities and
/// the counts agree.
fn comprehension(config: &Config) -> LawOutcome {
    let budget = config.budget;
    let cases: Vec<(Family, ISet)> = types(config)
        .into_iter()
        .flat_map(|a| contexts(config).into_iter().map(move |d| (a.clone(), d)))
        .collect();
    check_all(
        "comprehension-is-universal",
        &cases,
        |(a, d)| {
            let g = a.base();
            let ext = ok(ctx_ext(g, a))?;
            let mut pairs = 0usize;
            for gamma in ok(homs_with(d, g, &budget))? {
                let a_gamma = ok(subst_ty(a, &gamma))?;
                for t in ok(sections_with(&a_gamma, &budget))? {
                    pairs += 1;
                    let delta = ok(compr_bwd(&gamma, a, &t))?;
                    let (gamma2, t2) = ok(compr_fwd(g, a, &delta))?;
                    ensure(gamma2 == gamma && t2 == t, || {
                        "fwd ∘ bwd is not the identity".into()
                    })?;
                }
            }
            let subs = ok(homs_with(d, &ext, &budget))?;
            ensure(subs.len() == pairs, || {
                format!("{} substitutions, {pairs} pairs", subs.len())
            })?;
            for delta in subs {
                let (gamma, t) = ok(compr_fwd(g, a, &delta))?;
                ensure(ok(compr_bwd(&gamma, a, &t))? == delta, || {
                    format!("bwd ∘ fwd moves {}", show_fn(&delta))
                })?;
            }
            Ok(())
        },
        |(a, d)| {
            format!(
                "A = {} over {}, Δ = {}",
                show_ty(a),
                print(a.base()),
                print(d)
            )
        },
    )
}

fn show_dep((a, b): &(Family, Family)) -> String {
    format!(
        "A = {} over {}, B = {}",
        show_ty(a),
        print(a.base()),
        show_ty(b)
    )
}

fn pi_iso(config: &Config) -> LawOutcome {
    let budget = config.budget;
    check_all(
        "pi-abstraction-inverts-application",
        &dependent_types(config),
        |(a, b)| {
            let g = a.base();
            let pi = ok(pi_str_with(g, a, b, &budget))?;
            let fs = ok(sections_with(&pi, &budget))?;
            let bodies = ok(sections_with(b, &budget))?;
            ensure(fs.len() == bodies.len(), || {
                format!("{} functions, {} bodies", fs.len(), bodies.len())
            })?;
            for f in &fs {
                let body = ok(alpha_pi(g, a, b, f))?;
                ensure(ok(alpha_pi_inv(g, a, b, &body))? == *f, || {
                    "λ(app f) differs from f".into()
                })?;
            }
            for body in &bodies {
                let f = ok(alpha_pi_inv(g, a, b, body))?;
                ensure(ok(alpha_pi(g, a, b, &f))? == *body, || {
                    "app(λ b) differs from b".into()
                })?;
            }
            Ok(())
        },
        show_dep,
    )
}

fn sigma_iso(config: &Config) -> LawOutcome {
    let budget = config.budget;
    check_all(
        "sigma-pairing-inverts-projections",
        &dependent_types(config),
        |(a, b)| {
            let g = a.base();
            let sig = ok(sig_str(g, a, b))?;
            for s in ok(sections_with(&sig, &budget))? {
                let (x, y) = ok(alpha_sig(g, a, b, &s))?;
                ensure(ok(alpha_sig_inv(g, a, b, &x, &y))? == s, || {
                    format!("pair(fst, snd) differs at {}", show_values(&s))
                })?;
            }
            Ok(())
        },
        show_dep,
    )
}

/// `Π`, `Σ`, `+` and `Id` commute with substitution.
fn stability(config: &Config) -> LawOutcome {
    let mut rng = config.rng("type-formers-are-stable");
    let ctxs = contexts(config);
    let budget = config.budget;
    let cases: Vec<(Family, Family, SetFn)> = dependent_types(config)
        .into_iter()
        .flat_map(|(a, b)| {
            let mut out = Vec::new();
            for _ in 0..SUBSTITUTIONS {
                let d = pick(&mut rng, &ctxs).clone();
                if let Some(s) = random_map(&mut rng, &d, a.base()) {
                    out.push((a.clone(), b.clone(), s));
                }
            }
            out
        })
        .collect();
    check_all(
        "type-formers-are-stable",
        &cases,
        |(a, b, s)| {
            let (g, d) = (a.base(), s.dom());
            let a_s = ok(subst_ty(a, s))?;
            let b_s = ok(subst_ty(b, &ok(weaken(s, a))?))?;
            let pi_then = ok(subst_ty(&ok(pi_str_with(g, a, b, &budget))?, s))?;
            ensure(pi_then == ok(pi_str_with(d, &a_s, &b_s, &budget))?, || {
                "Π is not stable".into()
            })?;
            let sig_then = ok(subst_ty(&ok(sig_str(g, a, b))?, s))?;
            ensure(sig_then == ok(sig_str(d, &a_s, &b_s))?, || {
                "Σ is not stable".into()
            })?;
            let sum_then = ok(subst_ty(&ok(sum_str(g, a, a))?, s))?;
            ensure(sum_then == ok(sum_str(d, &a_s, &a_s))?, || {
                "+ is not stable".into()
            })?;
            let terms = ok(sections_with(a, &budget))?;
            for x in &terms {
                for y in &terms {
                    let id_then = ok(subst_ty(&ok(id_str(g, a, x, y))?, s))?;
                    let id_now = ok(id_str(d, &a_s, &ok(subst_tm(x, s))?, &ok(subst_tm(y, s))?))?;
                    ensure(id_then == id_now, || "Id is not stable".into())?;
                }
            }
            Ok(())
        },
        |(a, b, s)| format!("{}, σ = {}", show_dep(&(a.clone(), b.clone())), show_fn(s)),
    )
}

/// `Id A a a'` has a section exactly when `a = a'`, and then only `refl`.
fn reflection(config: &Config) -> LawOutcome {
    let budget = config.budget;
    check_all(
        "identity-reflects-equality",
        &types(config),
        |a| {
            let terms = ok(sections_with(a, &budget))?;
            for x in &terms {
                for y in &terms {
                    let proofs = ok(sections_with(&ok(id_str(a.base(), a, x, y))?, &budget))?;
                    if x == y {
                        ensure(proofs == vec![ok(refl_tm(x))?], || {
                            "refl is not the only proof".into()
                        })?;
                    } else {
                        ensure(proofs.is_empty() || a.base().is_empty(), || {
                            format!(
                                "{} and {} are distinct but provably equal",
                                show_values(x),
                                show_values(y)
                            )
                        })?;
                    }
                    for p in &proofs {
                        ensure(ok(eq_reflect(p, a, x, y))?, || {
                            "a proof does not reflect".into()
                        })?;
                    }
                }
            }
            Ok(())
        },
        |a| format!("A = {} over {}", show_ty(a), print(a.base())),
    )
}
