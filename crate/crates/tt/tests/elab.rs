use vz_core::budget::Budget;
use vz_core::universe::{arrow0, bool0, empty0, unit0, wiener_pair};
use vz_core::ISet;
use vz_tt::{check_program, check_program_with, elab_term, elab_type, print_value, Program};

fn ok(src: &str) -> Program {
    let c = check_program(src);
    assert!(c.ok(), "{:?}", c.diagnostics);
    c.program
}

fn codes(src: &str) -> Vec<&'static str> {
    check_program(src)
        .diagnostics
        .iter()
        .map(|d| d.code)
        .collect()
}

fn t() -> ISet {
    unit0()
}

fn f() -> ISet {
    empty0()
}

#[test]
fn not_is_the_swap_graph() {
    let p = ok("def not : Bool -> Bool = \\b. if b then false else true");
    let (code, value) = p.denote("not").unwrap();
    assert_eq!(*code, arrow0(&bool0(), &bool0()).unwrap());
    let swap = ISet::sup0([wiener_pair(f(), t()), wiener_pair(t(), f())]).unwrap();
    assert_eq!(*value, swap);
}

#[test]
fn extensional_refl() {
    ok("def e : Id (Bool -> Bool) (\\x. x) (\\x. if x then true else false) = refl");
    assert_eq!(
        codes("def e : Id (Bool -> Bool) (\\x. x) (\\x. if x then false else true) = refl"),
        ["type-mismatch"]
    );
}

#[test]
fn simple_rejections() {
    assert_eq!(codes("def u : Unit = true"), ["type-mismatch"]);
    assert_eq!(codes("def u : Unit = y"), ["unbound-variable"]);
    assert_eq!(
        codes("def u : Unit = tt\ndef u : Unit = tt"),
        ["duplicate-definition"]
    );
    assert_eq!(codes("def u : Unit = (tt"), ["syntax"]);
    assert_eq!(codes("def u : Bool = \\x. x"), ["type-mismatch"]);
    assert_eq!(codes("def u : Bool = fst tt"), ["type-mismatch"]);
}

#[test]
fn counterexample_names_the_failing_environment() {
    let c = check_program("def g : (b : Bool) -> Id Bool b true = \\b. refl");
    let d = &c.diagnostics[0];
    assert_eq!(d.code, "type-mismatch");
    assert_eq!(
        d.counterexample,
        Some(vec![("b".to_string(), "{}".to_string())])
    );
}

#[test]
fn branches_see_only_their_environments() {
    // In the `then` branch b is true, so refl checks there.
    ok("def g : (b : Bool) -> Bool + Id Bool b true = \\b. if b then inr refl else inl false");
    // and the dependent pair of a boolean with a proof about it
    ok("def s : (b : Bool) * Id Bool b b = (true, refl)");
}

#[test]
fn pairs_sums_and_absurd() {
    let p = ok(concat!(
        "def p : Bool * Unit = (true, tt)\n",
        "def a : Bool = fst p\n",
        "def b : Unit = snd p\n",
        "def s : Bool + Unit = inr tt\n",
        "def c : Bool = case s of { inl x => x; inr y => false }\n",
        "def z : Empty -> Bool = \\e. absurd e\n",
        "def w : Bool + Empty -> Bool = \\s. case s of { inl x => x; inr e => absurd e }\n",
    ));
    assert_eq!(*p.denote("p").unwrap().1, wiener_pair(t(), f()));
    assert_eq!(*p.denote("a").unwrap().1, t());
    assert_eq!(*p.denote("c").unwrap().1, f());
    assert_eq!(*p.denote("z").unwrap().1, empty0());
    assert_eq!(p.denote("w").unwrap().1.cardinality(), 2);
}

#[test]
fn let_is_expansion() {
    let p = ok(concat!(
        "def not : Bool -> Bool = \\b. if b then false else true\n",
        "def twice : Bool -> Bool = let f = not in \\x. f (f x)\n",
        "def twice' : Bool -> Bool = \\x. not (not x)\n",
        "def id' : Bool -> Bool = let g = \\y. y in \\x. g x\n",
        "def beta : Bool = (\\x. not x) true\n",
    ));
    assert_eq!(p.denote("twice").unwrap().1, p.denote("twice'").unwrap().1);
    assert_eq!(p.denote("twice").unwrap().1, p.denote("id'").unwrap().1);
    assert_eq!(*p.denote("beta").unwrap().1, f());
}

#[test]
fn type_families() {
    let p = Program::default();
    let fam = elab_type(&p, &[], "Bool -> Bool").unwrap();
    assert_eq!(fam.base().cardinality(), 1);
    assert_eq!(fam.values()[0].cardinality(), 4);

    let fam = elab_type(&p, &[], "Id Bool true true").unwrap();
    assert!(fam.values().iter().all(|v| v.cardinality() == 1));

    let fam = elab_type(&p, &[("b", "Bool")], "(x : Bool) * Id Bool x b").unwrap();
    assert_eq!(fam.base().cardinality(), 2);
    assert!(fam.values().iter().all(|v| v.cardinality() == 1));
}

#[test]
fn sections_over_a_telescope() {
    let p = Program::default();
    let s = elab_term(&p, &[("b", "Bool")], "Bool", "if b then false else true").unwrap();
    assert_eq!(s.values(), &[t(), f()]);
    let e = elab_term(&p, &[("b", "Bool")], "Id Bool b b", "refl").unwrap();
    assert_eq!(e.values().len(), 2);
}

#[test]
fn budgets_are_reported() {
    let tight = Budget {
        pi_cap: 8,
        ..Budget::DEFAULT
    };
    let c = check_program_with(
        "def f : Bool -> Bool -> Bool -> Bool = \\x. \\y. \\z. x",
        &tight,
    );
    assert_eq!(c.diagnostics[0].code, "budget");
}

#[test]
fn values_print_with_and_without_hints() {
    assert_eq!(print_value(&bool0(), None), "#2");
    assert_eq!(print_value(&bool0(), Some(&unit0())), "{{},{{}}}");
    assert_eq!(print_value(&wiener_pair(f(), f()), None), "<{},{}>");
}
