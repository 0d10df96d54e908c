//! The acceptance gate. Each criterion prints one PASS/FAIL line; the test fails if any does.
//!
//! Law-suite verdicts come from the `vz` binary's JSON reports. Each criterion also checks
//! something against an oracle written here, without going through the code under test.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use vz_core::budget::Budget;
use vz_core::category::{hom_count, homs_with};
use vz_core::relation::lemma30_check;
use vz_core::universe::{pi0_with, sigma0, unit0, vn_numeral, wiener_pair};
use vz_core::{from_code_u64, iset_cmp, mem, meq, mk_node, Family, ISet, Multiset, Relation};

use common::{json, schema_errors, vz};

type Verdict = Result<String, String>;
type Criterion = fn() -> Verdict;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `vz laws --suite all --json` at the default seed and bounds, run once and shared.
fn full_report() -> &'static Value {
    static REPORT: OnceLock<Value> = OnceLock::new();
    REPORT.get_or_init(|| laws_json(&["--suite", "all"]))
}

fn laws_json(args: &[&str]) -> Value {
    let r = vz(&[&["laws", "--json"], args].concat());
    let doc = json(&r.stdout);
    let errors = schema_errors("laws-report.schema.json", &doc);
    assert!(
        errors.is_empty(),
        "report does not match its schema: {errors:?}"
    );
    assert_eq!(
        r.code == 0,
        doc["failure_count"] == 0,
        "exit code disagrees with failure count"
    );
    doc
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["suite"] == name)
        .unwrap_or_else(|| panic!("no suite {name}"))
}

/// Case counts of the named laws; each must exist, have run, and have no failures.
fn laws_pass(
    report: &Value,
    suite_name: &str,
    laws: &[&str],
) -> Result<BTreeMap<String, u64>, String> {
    let s = suite(report, suite_name);
    let mut counts = BTreeMap::new();
    for &law in laws {
        let entry = s["laws"]
            .as_array()
            .unwrap()
            .iter()
            .find(|l| l["law"] == law)
            .ok_or_else(|| format!("law {law} missing from suite {suite_name}"))?;
        let (cases, failures) = (
            entry["cases"].as_u64().unwrap(),
            entry["failures"].as_u64().unwrap(),
        );
        ensure(cases > 0, || format!("law {law} ran no cases"))?;
        ensure(failures == 0, || {
            format!("law {law}: {failures} failures: {}", s["failures"])
        })?;
        counts.insert(law.to_string(), cases);
    }
    Ok(counts)
}

fn wall_ms(report: &Value, suite_name: &str) -> u64 {
    suite(report, suite_name)["wall_time_ms"].as_u64().unwrap()
}

/// The defining sum: code(x) = Σ 2^code(m).
fn code_oracle(x: &ISet) -> u64 {
    x.members().iter().map(|m| 1u64 << code_oracle(m)).sum()
}

fn criterion_1() -> Verdict {
    let counts = laws_pass(
        full_report(),
        "core",
        &[
            "ackermann-round-trip",
            "members-are-set-bits",
            "membership-is-bit-test",
            "order-is-numeric",
        ],
    )?;
    ensure(counts["ackermann-round-trip"] == 65_536, || {
        "not exhaustive below 2^16".into()
    })?;
    let ms = wall_ms(full_report(), "core");
    ensure(ms < 30_000, || format!("core suite took {ms} ms"))?;
    // Direct: bit tests and numeric order on all 65 536 codes.
    let sets: Vec<ISet> = (0..1u64 << 16).map(from_code_u64).collect();
    let probes: Vec<ISet> = (0..16).map(from_code_u64).collect();
    for (n, x) in sets.iter().enumerate() {
        ensure(code_oracle(x) == n as u64, || {
            format!("code {n} decodes wrongly")
        })?;
        for (k, z) in probes.iter().enumerate() {
            ensure(mem(z, x) == (n >> k & 1 == 1), || {
                format!("mem disagrees with bit {k} of {n}")
            })?;
        }
        if n > 0 {
            ensure(iset_cmp(&sets[n - 1], x).is_lt(), || {
                format!("order breaks at {n}")
            })?;
        }
    }
    Ok(format!("65536 sets, core suite {ms} ms"))
}

/// A multiset as a plain tree; repeated children allowed.
#[derive(Clone)]
struct Tree(Vec<Tree>);

impl Tree {
    fn random(rng: &mut ChaCha8Rng, depth: usize) -> Tree {
        if depth == 0 {
            return Tree(vec![]);
        }
        let w = rng.gen_range(0..=5);
        Tree(
            (0..w)
                .map(|_| {
                    let d = rng.gen_range(0..depth);
                    Tree::random(rng, d)
                })
                .collect(),
        )
    }

    fn iterative(rng: &mut ChaCha8Rng, depth: usize) -> Tree {
        let mut kids: Vec<Tree> = Vec::new();
        if depth > 0 {
            for _ in 0..rng.gen_range(0..=5) {
                let d = rng.gen_range(0..depth);
                let k = Tree::iterative(rng, d);
                if kids.iter().all(|c| c.canon() != k.canon()) {
                    kids.push(k);
                }
            }
        }
        Tree(kids)
    }

    fn shuffled(&self, rng: &mut ChaCha8Rng) -> Tree {
        let mut kids: Vec<Tree> = self.0.iter().map(|k| k.shuffled(rng)).collect();
        for i in (1..kids.len()).rev() {
            kids.swap(i, rng.gen_range(0..=i));
        }
        Tree(kids)
    }

    /// Sorted-children string: equal exactly for equal multisets.
    fn canon(&self) -> String {
        let mut kids: Vec<String> = self.0.iter().map(Tree::canon).collect();
        kids.sort();
        format!("({})", kids.concat())
    }

    fn build(&self) -> Multiset {
        mk_node(self.0.iter().map(Tree::build).collect())
    }
}

fn criterion_2() -> Verdict {
    let counts = laws_pass(
        full_report(),
        "core",
        &[
            "canonical-form-decides-meq",
            "meq-agrees-with-bijection-search",
        ],
    )?;
    ensure(counts.values().all(|&c| c == 10_000), || {
        format!("case counts {counts:?}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut equal = 0;
    for _ in 0..10_000 {
        let p = Tree::iterative(&mut rng, 4);
        let q = if rng.gen_bool(0.5) {
            p.shuffled(&mut rng)
        } else {
            Tree::random(&mut rng, 4)
        };
        let expect = p.canon() == q.canon();
        equal += expect as usize;
        ensure(meq(&p.build(), &q.build()) == expect, || {
            format!("meq wrong on {} {}", p.canon(), q.canon())
        })?;
    }
    Ok(format!(
        "suite 2 x 10000 cases, direct 10000 pairs ({equal} equal)"
    ))
}

fn criterion_3() -> Verdict {
    laws_pass(
        full_report(),
        "universe",
        &[
            "pi-decodes-to-choice-graphs",
            "sigma-decodes-to-dependent-pairs",
            "coproduct-decodes-to-tagged-union",
            "identity-is-a-proposition",
            "von-neumann-numerals",
            "wiener-pair-round-trip",
            "ackermann-anchors",
        ],
    )?;
    let vn3 = vn_numeral(3).map_err(|e| e.to_string())?;
    let p = wiener_pair(ISet::empty(), ISet::empty());
    ensure(code_oracle(&vn3) == 11, || {
        format!("ack(vn 3) = {}", code_oracle(&vn3))
    })?;
    ensure(code_oracle(&p) == 12, || {
        format!("ack(<{{}},{{}}>) = {}", code_oracle(&p))
    })?;
    // Direct: fiber-size products and sums on every family over every base of size ≤ 3.
    let pool: Vec<ISet> = (0..4).map(from_code_u64).collect();
    let mut families = 0;
    for base_code in (0u64..16).filter(|c| c.count_ones() <= 3) {
        let base = from_code_u64(base_code);
        let n = base.cardinality() as u32;
        for choice in 0..4usize.pow(n) {
            let values: Vec<ISet> = (0..n)
                .map(|i| pool[choice / 4usize.pow(i) % 4].clone())
                .collect();
            let fam =
                Family::from_values(base.clone(), values.clone()).map_err(|e| e.to_string())?;
            let pi = pi0_with(&base, &fam, &Budget::DEFAULT).map_err(|e| e.to_string())?;
            let sigma = sigma0(&base, &fam).map_err(|e| e.to_string())?;
            let prod: usize = values.iter().map(ISet::cardinality).product();
            let sum: usize = values.iter().map(ISet::cardinality).sum();
            ensure(
                pi.cardinality() == prod && sigma.cardinality() == sum,
                || "fiber counts wrong".into(),
            )?;
            families += 1;
        }
    }
    Ok(format!(
        "ack(vn 3) = 11, ack(<{{}},{{}}>) = 12, {families} families counted"
    ))
}

fn criterion_4() -> Verdict {
    let counts = laws_pass(
        full_report(),
        "universe",
        &[
            "equivalence-characterizations-agree",
            "quotient-counts-classes",
        ],
    )?;
    ensure(counts["equivalence-characterizations-agree"] == 512, || {
        "not all 2^9 relations".into()
    })?;
    ensure(counts["quotient-counts-classes"] == 1000, || {
        "not 1000 quotients".into()
    })?;
    // Direct: the equivalences on 3 points are the 5 partitions.
    let mut partitions = Vec::new();
    for labels in [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 1, 2]] {
        let bits: u64 = (0..9)
            .filter(|k| labels[k / 3] == labels[k % 3])
            .map(|k| 1 << k)
            .sum();
        partitions.push(bits);
    }
    let base = from_code_u64(7);
    for bits in 0..512u64 {
        let want = partitions.contains(&bits);
        let got = lemma30_check(&Relation::from_bits(base.clone(), bits));
        ensure(got == (want, want, want), || {
            format!("relation {bits:09b}: {got:?}, expected all {want}")
        })?;
    }
    Ok("512 relations, 5 equivalences, 1000 quotients".into())
}

fn criterion_5() -> Verdict {
    let laws = [
        "hom-count-is-power",
        "composition-is-associative-and-unital",
        "constructions-are-universal",
        "wrong-cones-are-not-universal",
    ];
    let a = laws_json(&["--suite", "category", "--max-size", "3", "--seed", "42"]);
    let b = laws_json(&["--suite", "category", "--max-size", "3", "--seed", "42"]);
    let counts = laws_pass(&a, "category", &laws)?;
    ensure(counts == laws_pass(&b, "category", &laws)?, || {
        "case counts differ between runs".into()
    })?;
    let ms = wall_ms(&a, "category");
    ensure(ms < 120_000, || format!("category suite took {ms} ms"))?;
    // Direct: |Hom(x, y)| = |y|^|x| on all objects of size ≤ 3.
    let objs: Vec<ISet> = (0u64..16)
        .filter(|c| c.count_ones() <= 3)
        .map(from_code_u64)
        .collect();
    for x in &objs {
        for y in &objs {
            let want = (y.cardinality() as u64).pow(x.cardinality() as u32);
            let listed = homs_with(x, y, &Budget::DEFAULT)
                .map_err(|e| e.to_string())?
                .len() as u64;
            ensure(hom_count(x, y) == want && listed == want, || {
                format!("|Hom({x}, {y})| wrong")
            })?;
        }
    }
    Ok(format!(
        "{} universal checks, {} wrong cones rejected, {ms} ms",
        counts["constructions-are-universal"], counts["wrong-cones-are-not-universal"]
    ))
}

fn criterion_6() -> Verdict {
    let counts = laws_pass(
        full_report(),
        "category",
        &[
            "slice-exponential-adjunction",
            "families-and-slices-round-trip",
        ],
    )?;
    Ok(format!(
        "{} adjunction instances, {} round trips",
        counts["slice-exponential-adjunction"], counts["families-and-slices-round-trip"]
    ))
}

fn criterion_7() -> Verdict {
    let counts = laws_pass(
        full_report(),
        "cwf",
        &[
            "substitution-is-functorial",
            "comprehension-is-universal",
            "pi-abstraction-inverts-application",
            "sigma-pairing-inverts-projections",
            "type-formers-are-stable",
            "identity-reflects-equality",
        ],
    )?;
    Ok(format!("{} cases", counts.values().sum::<u64>()))
}

fn criterion_8() -> Verdict {
    let dir = common::manifest_dir().join("../tt/tests/corpus");
    let mut files: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|f| f.ends_with(".vz"))
        .collect();
    files.sort();
    ensure(files.len() >= 15, || format!("{} programs", files.len()))?;
    let source = |f: &str| fs::read_to_string(dir.join(f)).unwrap();
    let all: String = files.iter().map(|f| source(f)).collect();
    for needle in [
        "def not : Bool -> Bool",
        "Id (Bool -> Bool) (\\x. x) (\\x. if x then true else false) = refl",
        "fst (",
        "case ",
        "absurd ",
    ] {
        ensure(all.contains(needle), || format!("corpus lacks {needle:?}"))?;
    }
    let mut denotations = 0;
    let mut counterexamples = 0;
    for f in &files {
        let path = dir.join(f);
        let r = vz(&["check", path.to_str().unwrap()]);
        let transcript =
            fs::read_to_string(path.with_extension("check")).map_err(|e| format!("{f}: {e}"))?;
        let (want_exit, want_stdout, want_stderr) = parse_transcript(&transcript);
        let shown = |s: &str| s.replace(&format!("{}/", dir.display()), "");
        ensure(r.code == want_exit, || format!("{f}: exit {}", r.code))?;
        ensure(
            shown(&r.stdout) == want_stdout && shown(&r.stderr) == want_stderr,
            || format!("{f}: diagnostics differ from the transcript"),
        )?;
        counterexamples += want_stderr.contains("  counterexample: ") as usize;
        let Ok(expected) = fs::read_to_string(path.with_extension("expected")) else {
            continue;
        };
        ensure(want_exit == 0, || {
            format!("{f} has expectations but is rejected")
        })?;
        for line in expected.lines() {
            let cols: Vec<&str> = line.split('\t').collect();
            let lit = vz(&["denote", path.to_str().unwrap(), cols[0]]).stdout;
            ensure(lit.trim_end() == cols[1], || {
                format!("{f} {}: literal {lit}", cols[0])
            })?;
            if cols[2] != "none" {
                let ack = vz(&["denote", path.to_str().unwrap(), cols[0], "--ack"]).stdout;
                ensure(ack.trim_end() == cols[2], || {
                    format!("{f} {}: code {ack}", cols[0])
                })?;
            }
            denotations += 1;
        }
    }
    ensure(counterexamples >= 1, || {
        "no rejection with a counterexample".into()
    })?;
    let not = vz(&[
        "denote",
        dir.join("01_not.vz").to_str().unwrap(),
        "not",
        "--json",
    ]);
    ensure(json(&not.stdout)["type_cardinality"] == 4, || {
        "Bool -> Bool does not have 4 elements".into()
    })?;
    Ok(format!(
        "{} programs, {denotations} denotations, transcripts identical",
        files.len()
    ))
}

/// `(exit, stdout, stderr)` of a committed `vz check` transcript.
fn parse_transcript(t: &str) -> (i32, String, String) {
    let mut lines = t.split_inclusive('\n');
    lines.next();
    let exit = lines
        .next()
        .unwrap()
        .trim_end()
        .strip_prefix("exit ")
        .unwrap()
        .parse()
        .unwrap();
    let rest: String = lines.collect();
    let rest = rest.strip_prefix("-- stdout\n").unwrap();
    let (out, err) = rest.split_once("-- stderr\n").unwrap();
    (exit, out.to_string(), err.to_string())
}

fn criterion_9() -> Verdict {
    laws_pass(full_report(), "universe", &["universe-is-not-univalent"])?;
    let other = ISet::singleton(ISet::singleton(ISet::empty()));
    ensure(unit0() != other, || "unit0 = {{∅}}".into())?;
    ensure(
        unit0().cardinality() == 1 && other.cardinality() == 1,
        || "carriers are not singletons".into(),
    )?;
    ensure(code_oracle(&unit0()) != code_oracle(&other), || {
        "same code".into()
    })?;
    Ok("unit0 = {{}} and {{{}}} differ, both have one element".into())
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn criterion_10() -> Verdict {
    let mut a = full_report().clone();
    let mut b = laws_json(&["--suite", "all"]);
    strip_timing(&mut a);
    strip_timing(&mut b);
    ensure(a == b, || "reports differ".into())?;
    ensure(a["failure_count"] == 0, || {
        format!("{} failures", a["failure_count"])
    })?;
    Ok(format!("{} cases, identical reports", a["cases"]))
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("oracle coherence", criterion_1),
        ("canonicalization", criterion_2),
        ("universe laws", criterion_3),
        ("equivalences and quotients", criterion_4),
        ("limits, colimits, exponentials", criterion_5),
        ("slices", criterion_6),
        ("category with families", criterion_7),
        ("golden corpus", criterion_8),
        ("non-univalence", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS criterion {}: {name} ({note})", i + 1),
            Err(why) => {
                println!("FAIL criterion {}: {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
