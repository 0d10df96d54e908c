//! Elaborated terms with de Bruijn indices, and their evaluation into canonical sets.
//!
//! There is no normalizer: a term's normal form is its denotation.

use std::fmt::Write as _;

use vz_core::budget::Budget;
use vz_core::family::Family;
use vz_core::universe::{
    apply_graph, bool0, coprod0, empty0, id0, pi0_with, sigma0, unit0, wiener_pair, wiener_unpair,
};
use vz_core::{Error, ISet, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CTy {
    Empty,
    Unit,
    Bool,
    /// The name is kept for printing only.
    Pi(String, Box<CTy>, Box<CTy>),
    Sigma(String, Box<CTy>, Box<CTy>),
    Sum(Box<CTy>, Box<CTy>),
    Id(Box<CTy>, Box<CTm>, Box<CTm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CTm {
    /// De Bruijn index: 0 is the innermost binder.
    Var(usize),
    /// A checked top-level definition, by position.
    Global(usize),
    /// `λ(x : A). body`; the domain is needed to build the graph.
    Lam(String, Box<CTy>, Box<CTm>),
    App(Box<CTm>, Box<CTm>),
    Pair(Box<CTm>, Box<CTm>),
    Fst(Box<CTm>),
    Snd(Box<CTm>),
    Tt,
    True,
    False,
    If(Box<CTm>, Box<CTm>, Box<CTm>),
    Inl(Box<CTm>),
    Inr(Box<CTm>),
    Case(Box<CTm>, String, Box<CTm>, String, Box<CTm>),
    Refl,
    Absurd(Box<CTm>),
}

/// Rewrites every variable `Var(i)` with `i >= depth` (free at its position) via `f(i - depth)`,
/// where `depth` counts the binders crossed.
fn map_ty(t: &CTy, depth: usize, f: &dyn Fn(usize, usize) -> CTm) -> CTy {
    match t {
        CTy::Empty | CTy::Unit | CTy::Bool => t.clone(),
        CTy::Pi(x, a, b) => CTy::Pi(
            x.clone(),
            Box::new(map_ty(a, depth, f)),
            Box::new(map_ty(b, depth + 1, f)),
        ),
        CTy::Sigma(x, a, b) => CTy::Sigma(
            x.clone(),
            Box::new(map_ty(a, depth, f)),
            Box::new(map_ty(b, depth + 1, f)),
        ),
        CTy::Sum(a, b) => CTy::Sum(Box::new(map_ty(a, depth, f)), Box::new(map_ty(b, depth, f))),
        CTy::Id(a, x, y) => CTy::Id(
            Box::new(map_ty(a, depth, f)),
            Box::new(map_tm(x, depth, f)),
            Box::new(map_tm(y, depth, f)),
        ),
    }
}

fn map_tm(t: &CTm, depth: usize, f: &dyn Fn(usize, usize) -> CTm) -> CTm {
    let go = |u: &CTm| Box::new(map_tm(u, depth, f));
    match t {
        CTm::Var(i) if *i >= depth => f(*i - depth, depth),
        CTm::Var(_) | CTm::Global(_) | CTm::Tt | CTm::True | CTm::False | CTm::Refl => t.clone(),
        CTm::Lam(x, a, b) => CTm::Lam(
            x.clone(),
            Box::new(map_ty(a, depth, f)),
            Box::new(map_tm(b, depth + 1, f)),
        ),
        CTm::App(g, a) => CTm::App(go(g), go(a)),
        CTm::Pair(a, b) => CTm::Pair(go(a), go(b)),
        CTm::Fst(a) => CTm::Fst(go(a)),
        CTm::Snd(a) => CTm::Snd(go(a)),
        CTm::If(c, a, b) => CTm::If(go(c), go(a), go(b)),
        CTm::Inl(a) => CTm::Inl(go(a)),
        CTm::Inr(a) => CTm::Inr(go(a)),
        CTm::Case(s, x, l, y, r) => CTm::Case(
            go(s),
            x.clone(),
            Box::new(map_tm(l, depth + 1, f)),
            y.clone(),
            Box::new(map_tm(r, depth + 1, f)),
        ),
        CTm::Absurd(a) => CTm::Absurd(go(a)),
    }
}

/// Adds `by` to every free variable.
pub fn shift_ty(t: &CTy, by: usize) -> CTy {
    map_ty(t, 0, &|i, depth| CTm::Var(i + by + depth))
}

pub fn shift_tm(t: &CTm, by: usize) -> CTm {
    map_tm(t, 0, &|i, depth| CTm::Var(i + by + depth))
}

/// Removes `by` from every free variable, or `None` if one of the innermost `by` is used.
pub fn unshift_ty(t: &CTy, by: usize) -> Option<CTy> {
    if mentions_ty(t, by) {
        return None;
    }
    Some(map_ty(t, 0, &|i, depth| CTm::Var(i - by + depth)))
}

fn mentions_ty(t: &CTy, below: usize) -> bool {
    let hit = std::cell::Cell::new(false);
    map_ty(t, 0, &|i, depth| {
        if i < below {
            hit.set(true);
        }
        CTm::Var(i + depth)
    });
    hit.get()
}

/// `body[s / 0]`, lowering the other free variables of `body` by one.
pub fn inst_ty(body: &CTy, s: &CTm) -> CTy {
    map_ty(body, 0, &|i, depth| match i {
        0 => shift_tm(s, depth),
        _ => CTm::Var(i - 1 + depth),
    })
}

pub fn inst_tm(body: &CTm, s: &CTm) -> CTm {
    map_tm(body, 0, &|i, depth| match i {
        0 => shift_tm(s, depth),
        _ => CTm::Var(i - 1 + depth),
    })
}

/// Same type formers in the same places, ignoring the terms inside identity types.
pub fn same_skeleton(a: &CTy, b: &CTy) -> bool {
    match (a, b) {
        (CTy::Empty, CTy::Empty) | (CTy::Unit, CTy::Unit) | (CTy::Bool, CTy::Bool) => true,
        (CTy::Pi(_, a1, b1), CTy::Pi(_, a2, b2))
        | (CTy::Sigma(_, a1, b1), CTy::Sigma(_, a2, b2))
        | (CTy::Sum(a1, b1), CTy::Sum(a2, b2)) => same_skeleton(a1, a2) && same_skeleton(b1, b2),
        (CTy::Id(a1, _, _), CTy::Id(a2, _, _)) => same_skeleton(a1, a2),
        _ => false,
    }
}

/// Evaluation in an environment listing the values of the bound variables, outermost first.
pub struct Eval<'a> {
    pub globals: &'a [ISet],
    pub budget: Budget,
}

impl Eval<'_> {
    pub fn ty(&self, t: &CTy, env: &mut Vec<ISet>) -> Result<ISet> {
        Ok(match t {
            CTy::Empty => empty0(),
            CTy::Unit => unit0(),
            CTy::Bool => bool0(),
            CTy::Pi(_, a, b) | CTy::Sigma(_, a, b) => {
                let dom = self.ty(a, env)?;
                let fibers = self.under(&dom, env, |env| self.ty(b, env))?;
                let fam = Family::from_values(dom.clone(), fibers)?;
                if matches!(t, CTy::Pi(..)) {
                    pi0_with(&dom, &fam, &self.budget)?
                } else {
                    sigma0(&dom, &fam)?
                }
            }
            CTy::Sum(a, b) => coprod0(&self.ty(a, env)?, &self.ty(b, env)?),
            CTy::Id(a, x, y) => id0(&self.ty(a, env)?, &self.tm(x, env)?, &self.tm(y, env)?)?,
        })
    }

    /// Runs `f` once per member of `dom`, with that member bound.
    fn under<T>(
        &self,
        dom: &ISet,
        env: &mut Vec<ISet>,
        mut f: impl FnMut(&mut Vec<ISet>) -> Result<T>,
    ) -> Result<Vec<T>> {
        let mut out = Vec::with_capacity(dom.cardinality());
        for a in dom.members() {
            env.push(a.clone());
            let r = f(env);
            env.pop();
            out.push(r?);
        }
        Ok(out)
    }

    pub fn tm(&self, t: &CTm, env: &mut Vec<ISet>) -> Result<ISet> {
        Ok(match t {
            CTm::Var(i) => env[env.len() - 1 - i].clone(),
            CTm::Global(k) => self.globals[*k].clone(),
            CTm::Lam(_, a, body) => {
                let dom = self.ty(a, env)?;
                let values = self.under(&dom, env, |env| self.tm(body, env))?;
                ISet::sup0(
                    dom.members()
                        .iter()
                        .zip(values)
                        .map(|(a, v)| wiener_pair(a.clone(), v)),
                )?
            }
            CTm::App(f, a) => apply_graph(&self.tm(f, env)?, &self.tm(a, env)?)?,
            CTm::Pair(a, b) => wiener_pair(self.tm(a, env)?, self.tm(b, env)?),
            CTm::Fst(p) => wiener_unpair(&self.tm(p, env)?)?.0,
            CTm::Snd(p) => wiener_unpair(&self.tm(p, env)?)?.1,
            CTm::Tt | CTm::False | CTm::Refl => empty0(),
            CTm::True => unit0(),
            CTm::If(c, a, b) => {
                if self.tm(c, env)?.is_empty() {
                    self.tm(b, env)?
                } else {
                    self.tm(a, env)?
                }
            }
            CTm::Inl(a) => wiener_pair(empty0(), self.tm(a, env)?),
            CTm::Inr(a) => wiener_pair(unit0(), self.tm(a, env)?),
            CTm::Case(s, _, l, _, r) => {
                let (tag, v) = wiener_unpair(&self.tm(s, env)?)?;
                env.push(v);
                let out = self.tm(if tag.is_empty() { l } else { r }, env);
                env.pop();
                out?
            }
            CTm::Absurd(e) => {
                let v = self.tm(e, env)?;
                return Err(Error::NotAMember {
                    element: v,
                    set: empty0(),
                });
            }
        })
    }
}

/// Renders a type, naming globals by definition index and bound variables by the binder
/// names in `locals` (outermost first).
pub fn show_ty(t: &CTy, globals: &[String], locals: &[String]) -> String {
    let mut names = Names {
        globals,
        locals: locals.to_vec(),
    };
    let mut out = String::new();
    write_ty(&mut out, t, &mut names, 0);
    out
}

pub fn show_tm(t: &CTm, globals: &[String], locals: &[String]) -> String {
    let mut names = Names {
        globals,
        locals: locals.to_vec(),
    };
    let mut out = String::new();
    write_tm(&mut out, t, &mut names, 0);
    out
}

struct Names<'a> {
    globals: &'a [String],
    locals: Vec<String>,
}

fn var_name(names: &[String], i: usize) -> String {
    names
        .len()
        .checked_sub(i + 1)
        .map_or_else(|| format!("#{i}"), |k| names[k].clone())
}

fn write_ty(out: &mut String, t: &CTy, names: &mut Names, prec: u8) {
    let paren = match t {
        CTy::Empty | CTy::Unit | CTy::Bool => false,
        CTy::Pi(..) => prec > 0,
        CTy::Sum(..) => prec > 1,
        CTy::Sigma(..) | CTy::Id(..) => prec > 2,
    };
    if paren {
        out.push('(');
    }
    match t {
        CTy::Empty => out.push_str("Empty"),
        CTy::Unit => out.push_str("Unit"),
        CTy::Bool => out.push_str("Bool"),
        CTy::Pi(x, a, b) | CTy::Sigma(x, a, b) => {
            let (op, lhs_prec, rhs_prec) = if matches!(t, CTy::Pi(..)) {
                ("->", 1, 0)
            } else {
                ("*", 3, 2)
            };
            if x == "_" {
                write_ty(out, a, names, lhs_prec);
            } else {
                let _ = write!(out, "({x} : ");
                write_ty(out, a, names, 0);
                out.push(')');
            }
            let _ = write!(out, " {op} ");
            names.locals.push(x.clone());
            write_ty(out, b, names, rhs_prec);
            names.locals.pop();
        }
        CTy::Sum(a, b) => {
            write_ty(out, a, names, 2);
            out.push_str(" + ");
            write_ty(out, b, names, 1);
        }
        CTy::Id(a, x, y) => {
            out.push_str("Id ");
            write_ty(out, a, names, 3);
            out.push(' ');
            write_tm(out, x, names, 2);
            out.push(' ');
            write_tm(out, y, names, 2);
        }
    }
    if paren {
        out.push(')');
    }
}

fn write_tm(out: &mut String, t: &CTm, names: &mut Names, prec: u8) {
    let own = match t {
        CTm::Lam(..) | CTm::If(..) | CTm::Case(..) => 0,
        CTm::App(..) | CTm::Fst(_) | CTm::Snd(_) | CTm::Inl(_) | CTm::Inr(_) | CTm::Absurd(_) => 1,
        _ => 2,
    };
    if own < prec {
        out.push('(');
    }
    match t {
        CTm::Var(i) => out.push_str(&var_name(&names.locals, *i)),
        CTm::Global(k) => match names.globals.get(*k) {
            Some(name) => out.push_str(name),
            None => {
                let _ = write!(out, "@{k}");
            }
        },
        CTm::Lam(x, _, b) => {
            let _ = write!(out, "\\{x}. ");
            names.locals.push(x.clone());
            write_tm(out, b, names, 0);
            names.locals.pop();
        }
        CTm::App(f, a) => {
            write_tm(out, f, names, 1);
            out.push(' ');
            write_tm(out, a, names, 2);
        }
        CTm::Pair(a, b) => {
            out.push('(');
            write_tm(out, a, names, 0);
            out.push_str(", ");
            write_tm(out, b, names, 0);
            out.push(')');
        }
        CTm::Fst(a) | CTm::Snd(a) | CTm::Inl(a) | CTm::Inr(a) | CTm::Absurd(a) => {
            out.push_str(match t {
                CTm::Fst(_) => "fst ",
                CTm::Snd(_) => "snd ",
                CTm::Inl(_) => "inl ",
                CTm::Inr(_) => "inr ",
                _ => "absurd ",
            });
            write_tm(out, a, names, 2);
        }
        CTm::Tt => out.push_str("tt"),
        CTm::True => out.push_str("true"),
        CTm::False => out.push_str("false"),
        CTm::Refl => out.push_str("refl"),
        CTm::If(c, a, b) => {
            out.push_str("if ");
            write_tm(out, c, names, 0);
            out.push_str(" then ");
            write_tm(out, a, names, 0);
            out.push_str(" else ");
            write_tm(out, b, names, 0);
        }
        CTm::Case(s, x, l, y, r) => {
            out.push_str("case ");
            write_tm(out, s, names, 0);
            let _ = write!(out, " of {{ inl {x} => ");
            names.locals.push(x.clone());
            write_tm(out, l, names, 0);
            names.locals.pop();
            let _ = write!(out, "; inr {y} => ");
            names.locals.push(y.clone());
            write_tm(out, r, names, 0);
            names.locals.pop();
            out.push_str(" }");
        }
    }
    if own < prec {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Box<CTm> {
        Box::new(CTm::Var(i))
    }

    #[test]
    fn shifting_respects_binders() {
        let t = CTm::Lam(
            "x".into(),
            Box::new(CTy::Bool),
            Box::new(CTm::Pair(v(0), v(1))),
        );
        assert_eq!(
            shift_tm(&t, 2),
            CTm::Lam(
                "x".into(),
                Box::new(CTy::Bool),
                Box::new(CTm::Pair(v(0), v(3)))
            )
        );
    }

    #[test]
    fn instantiation() {
        // Id Bool #0 #1  [true / 0]  =  Id Bool true #0
        let body = CTy::Id(Box::new(CTy::Bool), v(0), v(1));
        assert_eq!(
            inst_ty(&body, &CTm::True),
            CTy::Id(Box::new(CTy::Bool), Box::new(CTm::True), v(0))
        );
        // under a binder the substituted term is shifted
        let body = CTy::Pi(
            "y".into(),
            Box::new(CTy::Bool),
            Box::new(CTy::Id(Box::new(CTy::Bool), v(1), v(0))),
        );
        let out = inst_ty(&body, &CTm::Var(4));
        assert_eq!(
            out,
            CTy::Pi(
                "y".into(),
                Box::new(CTy::Bool),
                Box::new(CTy::Id(Box::new(CTy::Bool), v(5), v(0)))
            )
        );
        assert_eq!(
            unshift_ty(&CTy::Id(Box::new(CTy::Bool), v(3), v(2)), 2),
            Some(CTy::Id(Box::new(CTy::Bool), v(1), v(0)))
        );
        assert_eq!(
            unshift_ty(&CTy::Id(Box::new(CTy::Bool), v(1), v(2)), 2),
            None
        );
    }

    #[test]
    fn evaluation() {
        let ev = Eval {
            globals: &[],
            budget: Budget::DEFAULT,
        };
        let not = CTm::Lam(
            "b".into(),
            Box::new(CTy::Bool),
            Box::new(CTm::If(v(0), Box::new(CTm::False), Box::new(CTm::True))),
        );
        let g = ev.tm(&not, &mut vec![]).unwrap();
        assert_eq!(g.cardinality(), 2);
        let ty = CTy::Pi("_".into(), Box::new(CTy::Bool), Box::new(CTy::Bool));
        let code = ev.ty(&ty, &mut vec![]).unwrap();
        assert_eq!(code.cardinality(), 4);
        assert!(code.contains(&g));
        assert_eq!(
            show_ty(
                &CTy::Pi(
                    "x".into(),
                    Box::new(CTy::Bool),
                    Box::new(CTy::Id(Box::new(CTy::Bool), v(0), v(1)))
                ),
                &[],
                &["y".into()]
            ),
            "(x : Bool) -> Id Bool x y"
        );
    }
}
