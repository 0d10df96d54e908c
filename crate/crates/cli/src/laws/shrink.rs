//! Greedy counterexample minimization for laws over tuples of sets.
//!
//! A candidate either drops a member or replaces a member with ∅ or with one of that member's
//! own candidates. Members are visited in descending canonical order and the first candidate
//! that still fails is taken, so the result is deterministic.

use vz_core::ISet;

/// Predicate evaluations allowed per minimization.
const STEPS: usize = 4096;

/// Smaller sets than `x`, most aggressive first.
pub fn candidates(x: &ISet) -> Vec<ISet> {
    let ms = x.members();
    let mut out = Vec::new();
    for j in (0..ms.len()).rev() {
        let others = || {
            ms.iter()
                .enumerate()
                .filter(move |&(k, _)| k != j)
                .map(|(_, m)| m.clone())
        };
        out.push(ISet::from_members_dedup(others()));
        let mut replacements = Vec::new();
        if !ms[j].is_empty() {
            replacements.push(ISet::empty());
        }
        replacements.extend(candidates(&ms[j]));
        for r in replacements {
            if !x.contains(&r) {
                out.push(ISet::from_members_dedup(others().chain([r])));
            }
        }
    }
    out
}

/// Shrinks each component in turn while `fails` stays true.
pub fn minimize(mut xs: Vec<ISet>, fails: impl Fn(&[ISet]) -> bool) -> Vec<ISet> {
    let mut steps = 0;
    'outer: loop {
        for i in 0..xs.len() {
            for c in candidates(&xs[i]) {
                if steps == STEPS {
                    break 'outer;
                }
                steps += 1;
                let old = std::mem::replace(&mut xs[i], c);
                if fails(&xs) {
                    continue 'outer;
                }
                xs[i] = old;
            }
        }
        break;
    }
    xs
}
