//! A small extensional dependent type theory whose judgments are decided by evaluation.
//!
//! Types denote codes in the iterative-set universe, terms denote members of those codes and
//! functions denote their graphs. A program is checked by computing every denotation at every
//! environment and comparing canonical sets, so equality reflection is decidable here:
//! `refl : Id (Bool -> Bool) (\x. x) (\x. if x then true else false)` is accepted because the
//! two lambdas denote the same graph.
//!
//! ```
//! let src = "def not : Bool -> Bool = \\b. if b then false else true";
//! let checked = vz_tt::check_program(src);
//! assert!(checked.diagnostics.is_empty());
//! let (code, value) = checked.program.denote("not").unwrap();
//! assert_eq!(code.cardinality(), 4);
//! assert_eq!(vz_tt::print_value(value, None), "{<{},{{}}>,<{{}},{}>}");
//! ```

use std::collections::HashMap;

use vz_core::budget::Budget;
use vz_core::cwf::Section;
use vz_core::literal::{print_with, Style};
use vz_core::universe::unit0;
use vz_core::{Family, ISet};

pub mod ast;
pub mod core;
pub mod diag;
mod elab;
pub mod lexer;
pub mod parser;
pub mod syntax_error;

pub use ast::{Decl, Span, Term, Type};
pub use diag::{Diagnostic, Severity};
pub use parser::{parse_program, parse_term, parse_type};
pub use syntax_error::SyntaxError;

use crate::core::CTy;
use crate::elab::{point, Elab};

/// A definition that checked, with its closed denotation.
#[derive(Clone, Debug)]
pub struct Definition {
    pub name: String,
    pub ty: CTy,
    /// The code of the type; `value` is one of its members.
    pub ty_code: ISet,
    pub value: ISet,
    pub span: Span,
}

/// The definitions of a program that checked, in source order.
#[derive(Clone, Debug, Default)]
pub struct Program {
    pub defs: Vec<Definition>,
    index: HashMap<String, usize>,
    values: Vec<ISet>,
}

impl Program {
    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.index.get(name).map(|&k| &self.defs[k])
    }

    /// The type code and value of a definition.
    pub fn denote(&self, name: &str) -> Option<(&ISet, &ISet)> {
        self.get(name).map(|d| (&d.ty_code, &d.value))
    }

    /// Definition names in order, for printing references to them.
    pub fn names(&self) -> Vec<String> {
        self.defs.iter().map(|d| d.name.clone()).collect()
    }

    fn push(&mut self, def: Definition) {
        self.index.insert(def.name.clone(), self.defs.len());
        self.values.push(def.value.clone());
        self.defs.push(def);
    }
}

pub struct Checked {
    pub program: Program,
    /// In source order. Empty iff every definition checked.
    pub diagnostics: Vec<Diagnostic>,
}

impl Checked {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

pub fn check_program(src: &str) -> Checked {
    check_program_with(src, &Budget::current())
}

/// Checks each definition against the ones before it. A definition that fails is reported
/// and skipped; later definitions that mention it get `unbound-variable`.
pub fn check_program_with(src: &str, budget: &Budget) -> Checked {
    let mut program = Program::default();
    let decls = match parse_program(src) {
        Ok(decls) => decls,
        Err(e) => {
            return Checked {
                program,
                diagnostics: vec![e.into()],
            }
        }
    };
    let mut diagnostics = Vec::new();
    for decl in &decls {
        if program.index.contains_key(&decl.name.name) {
            diagnostics.push(Diagnostic::error(
                "duplicate-definition",
                decl.name.span,
                format!("`{}` is already defined", decl.name.name),
            ));
            continue;
        }
        match check_decl(&program, decl, budget) {
            Ok(def) => program.push(def),
            Err(d) => diagnostics.push(d),
        }
    }
    Checked {
        program,
        diagnostics,
    }
}

fn check_decl(program: &Program, decl: &Decl, budget: &Budget) -> Result<Definition, Diagnostic> {
    let mut el = Elab::new(program, *budget);
    let ty = el.ty(&decl.ty)?;
    let body = el.check(&decl.body, &ty)?;
    let ty_code = el.ty_at(&ty, &[], decl.ty.span)?;
    let value = el.tm_at(&body, &[], decl.body.span)?;
    // Redundant with the checker; a failure here is a bug.
    Section::new(
        Family::constant(unit0(), ty_code.clone()),
        vec![value.clone()],
    )
    .map_err(|e| {
        Diagnostic::error(
            "internal",
            decl.body.span,
            format!("denotation is not a member of its type: {e}"),
        )
    })?;
    Ok(Definition {
        name: decl.name.name.clone(),
        ty,
        ty_code,
        value,
        span: decl.span,
    })
}

fn telescope<'p>(
    program: &'p Program,
    telescope: &[(&str, &str)],
    budget: &Budget,
) -> Result<Elab<'p>, Diagnostic> {
    let mut el = Elab::new(program, *budget);
    for (name, src) in telescope {
        let t = parse_type(src)?;
        let ty = el.ty(&t)?;
        el.push_local(name, ty, t.span)?;
    }
    Ok(el)
}

fn family_over(el: &Elab, ty: &CTy, span: Span) -> Result<Family, Diagnostic> {
    let ctx = ISet::sup0(el.envs().iter().map(|e| point(e)))
        .map_err(|e| Diagnostic::error("internal", span, e.to_string()))?;
    let codes = el
        .envs()
        .iter()
        .map(|env| el.ty_at(ty, env, span))
        .collect::<Result<Vec<_>, _>>()?;
    Family::from_values(ctx, codes).map_err(|e| Diagnostic::error("internal", span, e.to_string()))
}

/// The family a type denotes over the context of a telescope, given as `(name, type)` pairs
/// in the scope of `program`. The base of the family is the context: the iterated Σ of the
/// telescope, with members `⟨⟨∅, a₀⟩, a₁⟩, …`.
pub fn elab_type(program: &Program, tele: &[(&str, &str)], ty: &str) -> Result<Family, Diagnostic> {
    let budget = Budget::current();
    let mut el = telescope(program, tele, &budget)?;
    let t = parse_type(ty)?;
    let cty = el.ty(&t)?;
    family_over(&el, &cty, t.span)
}

/// Checks a term against a type over a telescope and returns its denotation as a section.
pub fn elab_term(
    program: &Program,
    tele: &[(&str, &str)],
    ty: &str,
    term: &str,
) -> Result<Section, Diagnostic> {
    let budget = Budget::current();
    let mut el = telescope(program, tele, &budget)?;
    let t = parse_type(ty)?;
    let cty = el.ty(&t)?;
    let family = family_over(&el, &cty, t.span)?;
    let tm = parse_term(term)?;
    let ctm = el.check(&tm, &cty)?;
    let values = el
        .envs()
        .iter()
        .map(|env| el.tm_at(&ctm, env, tm.span))
        .collect::<Result<Vec<_>, _>>()?;
    Section::new(family, values).map_err(|e| Diagnostic::error("internal", tm.span, e.to_string()))
}

/// Set-literal text for a value. Without a hint every abbreviation applies, so `{{},{{}}}`
/// prints as `#2`. With a hint (the code of the value's type) numerals are left literal,
/// since a member of a type is rarely meant as a number.
pub fn print_value(v: &ISet, hint: Option<&ISet>) -> String {
    match hint {
        Some(_) => print_with(v, Style::TYPED),
        None => print_with(v, Style::SUGARED),
    }
}
