//! The golden corpus: every accepted program's denotations against `oracle.py`'s expectations,
//! and every rejected program actually rejected.

use std::fs;
use std::path::{Path, PathBuf};

use vz_core::ackermann_code;
use vz_tt::ast::print_program;
use vz_tt::{check_program, parse_program, print_value};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn programs() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "vz"))
        .collect();
    out.sort();
    out
}

struct Expected {
    name: String,
    literal: String,
    ackermann: String,
    type_cardinality: usize,
}

fn expected(path: &Path) -> Option<Vec<Expected>> {
    let text = fs::read_to_string(path.with_extension("expected")).ok()?;
    Some(
        text.lines()
            .map(|line| {
                let cols: Vec<&str> = line.split('\t').collect();
                assert_eq!(cols.len(), 4, "bad expectation line {line:?}");
                Expected {
                    name: cols[0].into(),
                    literal: cols[1].into(),
                    ackermann: cols[2].into(),
                    type_cardinality: cols[3].parse().unwrap(),
                }
            })
            .collect(),
    )
}

#[test]
fn corpus_is_large_enough() {
    let all = programs();
    assert!(all.len() >= 15, "{} programs", all.len());
    let accepted = all.iter().filter(|p| expected(p).is_some()).count();
    assert!(accepted >= 10 && all.len() - accepted >= 5);
}

#[test]
fn accepted_programs_denote_what_the_oracle_says() {
    for path in programs() {
        let Some(exp) = expected(&path) else { continue };
        let src = fs::read_to_string(&path).unwrap();
        let checked = check_program(&src);
        assert!(
            checked.ok(),
            "{}: {:?}",
            path.display(),
            checked.diagnostics
        );
        let names: Vec<&str> = checked
            .program
            .defs
            .iter()
            .map(|d| d.name.as_str())
            .collect();
        let exp_names: Vec<&str> = exp.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, exp_names, "{}", path.display());
        for e in &exp {
            let def = checked.program.get(&e.name).unwrap();
            let at = format!("{} {}", path.display(), e.name);
            assert_eq!(
                print_value(&def.value, Some(&def.ty_code)),
                e.literal,
                "{at}"
            );
            let ack = ackermann_code(&def.value).map_or("none".to_string(), |c| c.to_string());
            assert_eq!(ack, e.ackermann, "{at}");
            assert_eq!(def.ty_code.cardinality(), e.type_cardinality, "{at}");
            assert!(def.ty_code.contains(&def.value), "{at}");
        }
    }
}

#[test]
fn rejected_programs_are_rejected() {
    for path in programs() {
        if expected(&path).is_some() {
            continue;
        }
        let src = fs::read_to_string(&path).unwrap();
        let checked = check_program(&src);
        assert!(!checked.ok(), "{} was accepted", path.display());
    }
}

#[test]
fn not_has_a_four_element_function_space() {
    let src = fs::read_to_string(corpus_dir().join("01_not.vz")).unwrap();
    let checked = check_program(&src);
    let (ty, value) = checked.program.denote("not").unwrap();
    assert_eq!(ty.cardinality(), 4);
    // The four graphs Bool -> Bool are distinct and `not` is one of them.
    assert!(ty.contains(value));
    assert_eq!(ackermann_code(value).unwrap().to_string(), "68736253952");
}

#[test]
fn printing_and_reparsing_is_stable() {
    for path in programs() {
        let src = fs::read_to_string(&path).unwrap();
        let Ok(decls) = parse_program(&src) else {
            continue;
        };
        let printed = print_program(&decls);
        let again = parse_program(&printed)
            .unwrap_or_else(|e| panic!("{}: {e:?}\n{printed}", path.display()));
        assert_eq!(decls.len(), again.len());
        for (d, e) in decls.iter().zip(&again) {
            assert_eq!(
                (&d.name.name, &d.ty, &d.body),
                (&e.name.name, &e.ty, &e.body),
                "{}",
                path.display()
            );
        }
        assert_eq!(print_program(&again), printed);
    }
}

#[test]
fn printed_programs_denote_the_same_values() {
    for path in programs() {
        if expected(&path).is_none() {
            continue;
        }
        let src = fs::read_to_string(&path).unwrap();
        let printed = print_program(&parse_program(&src).unwrap());
        let (a, b) = (check_program(&src), check_program(&printed));
        assert!(b.ok(), "{printed}");
        for (x, y) in a.program.defs.iter().zip(&b.program.defs) {
            assert_eq!((&x.ty_code, &x.value), (&y.ty_code, &y.value));
        }
    }
}

#[test]
fn beta_and_eta_hold_by_denotation() {
    let src = concat!(
        "def f : Bool -> Bool = \\x. if x then false else true\n",
        "def beta : Id Bool ((\\x. if x then false else true) true) (f true) = refl\n",
        "def eta : Id (Bool -> Bool) f (\\y. f y) = refl\n",
        "def pair_eta : Id (Bool * Unit -> Bool * Unit) (\\p. p) (\\p. (fst p, snd p)) = refl\n",
        "def unit_eta : Id (Unit -> Unit) (\\u. u) (\\u. tt) = refl\n",
    );
    let checked = check_program(src);
    assert!(checked.ok(), "{:?}", checked.diagnostics);
}
