//! Bidirectional elaboration from surface syntax to core terms.
//!
//! Every judgment that depends on values is decided by evaluating at each environment the
//! current context can take. The environments are kept explicitly, in the member order of
//! the iterated Σ that the context denotes. Branches of `if` and `case` only see the
//! environments that reach them.

use std::rc::Rc;

use vz_core::budget::Budget;
use vz_core::literal::{print_with, Style};
use vz_core::universe::{empty0, wiener_pair, wiener_unpair};
use vz_core::{Error, ISet};

use crate::ast::{Ident, Span, Term, TermKind, Type, TypeKind};
use crate::core::{
    inst_ty, same_skeleton, shift_tm, shift_ty, show_tm, show_ty, unshift_ty, CTm, CTy, Eval,
};
use crate::diag::Diagnostic;
use crate::Program;

/// Values of the bound variables, outermost first.
pub type Env = Vec<ISet>;

type R<T> = Result<T, Diagnostic>;

/// Caps the number of check/infer steps, since let-bound lambdas are re-elaborated per use.
const FUEL: u64 = 1 << 20;

struct Local {
    name: String,
    ty: CTy,
}

#[derive(Clone)]
enum Binding {
    Local(usize),
    /// A let whose right-hand side was inferred up front, elaborated at `depth` locals.
    Term {
        tm: CTm,
        ty: CTy,
        depth: usize,
    },
    /// A let whose right-hand side needs a type from its use site.
    Alias(Rc<Alias>),
}

struct Alias {
    name: String,
    term: Term,
    locals: usize,
    names: usize,
}

enum Resolved {
    Binding(Binding),
    Global(usize),
}

pub(crate) struct Elab<'a> {
    program: &'a Program,
    budget: Budget,
    locals: Vec<Local>,
    names: Vec<(String, Binding)>,
    envs: Vec<Env>,
    fuel: u64,
}

/// The context member an environment stands for: `⟨⟨⟨∅, a₀⟩, a₁⟩, …⟩`.
pub(crate) fn point(env: &[ISet]) -> ISet {
    env.iter().fold(empty0(), |p, a| wiener_pair(p, a.clone()))
}

fn sort_envs(envs: &mut Vec<Env>) {
    envs.sort_by_cached_key(|e| point(e));
    envs.dedup();
}

fn mismatch(span: Span, message: String) -> Diagnostic {
    Diagnostic::error("type-mismatch", span, message)
}

impl<'a> Elab<'a> {
    pub(crate) fn new(program: &'a Program, budget: Budget) -> Elab<'a> {
        Elab {
            program,
            budget,
            locals: Vec::new(),
            names: Vec::new(),
            envs: vec![Vec::new()],
            fuel: FUEL,
        }
    }

    fn eval(&self) -> Eval<'a> {
        Eval {
            globals: &self.program.values,
            budget: self.budget,
        }
    }

    fn core_err(span: Span, e: Error) -> Diagnostic {
        match e {
            Error::BudgetExceeded { .. } => Diagnostic::error("budget", span, e.to_string()),
            _ => Diagnostic::error("internal", span, format!("evaluation failed: {e}")),
        }
    }

    pub(crate) fn ty_at(&self, t: &CTy, env: &[ISet], span: Span) -> R<ISet> {
        self.eval()
            .ty(t, &mut env.to_vec())
            .map_err(|e| Self::core_err(span, e))
    }

    pub(crate) fn tm_at(&self, t: &CTm, env: &[ISet], span: Span) -> R<ISet> {
        self.eval()
            .tm(t, &mut env.to_vec())
            .map_err(|e| Self::core_err(span, e))
    }

    pub(crate) fn envs(&self) -> &[Env] {
        &self.envs
    }

    fn tick(&mut self, span: Span) -> R<()> {
        if self.fuel == 0 {
            let e = Error::BudgetExceeded {
                what: "elaboration steps",
                needed: format!("more than {FUEL}"),
                cap: FUEL,
            };
            return Err(Self::core_err(span, e));
        }
        self.fuel -= 1;
        Ok(())
    }

    fn local_names(&self) -> Vec<String> {
        self.locals.iter().map(|l| l.name.clone()).collect()
    }

    fn show(&self, t: &CTy) -> String {
        show_ty(t, &self.program.names(), &self.local_names())
    }

    fn counterexample(&self, d: Diagnostic, env: &[ISet]) -> Diagnostic {
        if self.locals.is_empty() {
            return d;
        }
        d.with_counterexample(
            self.locals
                .iter()
                .zip(env)
                .map(|(l, v)| (l.name.clone(), print_with(v, Style::TYPED)))
                .collect(),
        )
    }

    /// Binds a variable of type `ty` over every current environment. Returns the environments
    /// to restore with [`Elab::leave`].
    pub(crate) fn push_local(&mut self, name: &str, ty: CTy, span: Span) -> R<Vec<Env>> {
        let mut next = Vec::new();
        for env in &self.envs {
            let code = self.ty_at(&ty, env, span)?;
            if (next.len() + code.cardinality()) as u64 > self.budget.pi_cap {
                let e = Error::BudgetExceeded {
                    what: "context size",
                    needed: format!("more than {} environments", self.budget.pi_cap),
                    cap: self.budget.pi_cap,
                };
                return Err(Self::core_err(span, e));
            }
            for a in code.members() {
                let mut e = env.clone();
                e.push(a.clone());
                next.push(e);
            }
        }
        Ok(self.enter(name, ty, next))
    }

    fn enter(&mut self, name: &str, ty: CTy, mut envs: Vec<Env>) -> Vec<Env> {
        sort_envs(&mut envs);
        self.names
            .push((name.to_string(), Binding::Local(self.locals.len())));
        self.locals.push(Local {
            name: name.to_string(),
            ty,
        });
        std::mem::replace(&mut self.envs, envs)
    }

    fn leave(&mut self, saved: Vec<Env>) {
        self.locals.pop();
        self.names.pop();
        self.envs = saved;
    }

    fn resolve(&self, name: &str) -> Option<Resolved> {
        if name == "_" {
            return None;
        }
        if let Some((_, b)) = self.names.iter().rev().find(|(n, _)| n == name) {
            return Some(Resolved::Binding(b.clone()));
        }
        self.program.index.get(name).map(|&k| Resolved::Global(k))
    }

    /// Runs `f` with only the first `locals` variables and `names` bindings in scope, over the
    /// projections of the current environments.
    fn in_prefix<T>(
        &mut self,
        locals: usize,
        names: usize,
        f: impl FnOnce(&mut Self) -> R<T>,
    ) -> R<T> {
        let tail_locals = self.locals.split_off(locals);
        let tail_names = self.names.split_off(names);
        let mut prefix: Vec<Env> = self.envs.iter().map(|e| e[..locals].to_vec()).collect();
        sort_envs(&mut prefix);
        let saved = std::mem::replace(&mut self.envs, prefix);
        let out = f(self);
        self.locals.truncate(locals);
        self.names.truncate(names);
        self.locals.extend(tail_locals);
        self.names.extend(tail_names);
        self.envs = saved;
        out
    }

    /// Binds `x = a` for the duration of `f`. An inferable right-hand side is elaborated once,
    /// here; anything else waits for a use site that supplies a type.
    fn with_let<T>(&mut self, x: &Ident, a: &Term, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        let (locals, names) = (self.locals.len(), self.names.len());
        let binding = match self.try_infer(a)? {
            Some((tm, ty)) => Binding::Term {
                tm,
                ty,
                depth: locals,
            },
            None => Binding::Alias(Rc::new(Alias {
                name: x.name.clone(),
                term: a.clone(),
                locals,
                names,
            })),
        };
        self.names.push((x.name.clone(), binding));
        let out = f(self);
        self.names.truncate(names);
        out
    }

    /// Like [`Elab::infer`], but `Ok(None)` (with the scope restored) if `t` needs a type from
    /// outside.
    fn try_infer(&mut self, t: &Term) -> R<Option<(CTm, CTy)>> {
        let (locals, names, envs) = (self.locals.len(), self.names.len(), self.envs.clone());
        match self.infer(t) {
            Ok(r) => Ok(Some(r)),
            Err(d) if d.code == "cannot-infer" => {
                self.locals.truncate(locals);
                self.names.truncate(names);
                self.envs = envs;
                Ok(None)
            }
            Err(d) => Err(d),
        }
    }

    /// Infers the type of a function-valued term whose domain is known.
    fn infer_fn(&mut self, t: &Term, dom: &CTy) -> R<(CTm, CTy)> {
        self.tick(t.span)?;
        match &t.kind {
            TermKind::Lam(x, body) => {
                let saved = self.push_local(&x.name, dom.clone(), x.span)?;
                let (body2, cod) = self.infer(body)?;
                self.leave(saved);
                Ok((
                    CTm::Lam(x.name.clone(), Box::new(dom.clone()), Box::new(body2)),
                    CTy::Pi(x.name.clone(), Box::new(dom.clone()), Box::new(cod)),
                ))
            }
            TermKind::Let(x, a, body) => self.with_let(x, a, |s| s.infer_fn(body, dom)),
            TermKind::Var(x) => match self.resolve(x) {
                Some(Resolved::Binding(Binding::Alias(alias))) => {
                    let drop = self.locals.len() - alias.locals;
                    let Some(dom0) = unshift_ty(dom, drop) else {
                        return self.infer(t);
                    };
                    let (tm, ty) = self.in_prefix(alias.locals, alias.names, |s| {
                        s.infer_fn(&alias.term, &dom0)
                    })?;
                    Ok((shift_tm(&tm, drop), shift_ty(&ty, drop)))
                }
                _ => self.infer(t),
            },
            _ => self.infer(t),
        }
    }

    pub(crate) fn ty(&mut self, t: &Type) -> R<CTy> {
        self.tick(t.span)?;
        Ok(match &t.kind {
            TypeKind::Empty => CTy::Empty,
            TypeKind::Unit => CTy::Unit,
            TypeKind::Bool => CTy::Bool,
            TypeKind::Pi(x, a, b) | TypeKind::Sigma(x, a, b) => {
                let a2 = self.ty(a)?;
                let name = x.as_ref().map_or("_", |x| x.name.as_str()).to_string();
                let saved = self.push_local(&name, a2.clone(), a.span)?;
                let b2 = self.ty(b)?;
                self.leave(saved);
                match t.kind {
                    TypeKind::Pi(..) => CTy::Pi(name, Box::new(a2), Box::new(b2)),
                    _ => CTy::Sigma(name, Box::new(a2), Box::new(b2)),
                }
            }
            TypeKind::Sum(a, b) => CTy::Sum(Box::new(self.ty(a)?), Box::new(self.ty(b)?)),
            TypeKind::Id(a, x, y) => {
                let a2 = self.ty(a)?;
                let x2 = self.check(x, &a2)?;
                let y2 = self.check(y, &a2)?;
                CTy::Id(Box::new(a2), Box::new(x2), Box::new(y2))
            }
        })
    }

    /// `found` and `expected` must have the same shape and denote the same code everywhere.
    fn conv(&self, span: Span, found: &CTy, expected: &CTy) -> R<()> {
        let message = || {
            format!(
                "expected `{}`, found `{}`",
                self.show(expected),
                self.show(found)
            )
        };
        if !same_skeleton(found, expected) {
            return Err(mismatch(span, message()));
        }
        if found == expected {
            return Ok(());
        }
        for env in &self.envs {
            if self.ty_at(found, env, span)? != self.ty_at(expected, env, span)? {
                let d = mismatch(span, format!("{}, which differ here", message()));
                return Err(self.counterexample(d, env));
            }
        }
        Ok(())
    }

    /// Partitions the current environments by the value of a boolean.
    fn split(&self, c: &CTm, span: Span) -> R<(Vec<Env>, Vec<Env>)> {
        let (mut yes, mut no) = (Vec::new(), Vec::new());
        for env in &self.envs {
            if self.tm_at(c, env, span)?.is_empty() {
                no.push(env.clone());
            } else {
                yes.push(env.clone());
            }
        }
        Ok((yes, no))
    }

    fn with_envs<T>(&mut self, envs: Vec<Env>, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        let saved = std::mem::replace(&mut self.envs, envs);
        let out = f(self);
        self.envs = saved;
        out
    }

    pub(crate) fn check(&mut self, t: &Term, ty: &CTy) -> R<CTm> {
        self.tick(t.span)?;
        let not_a = |what: &str, this: &Self| {
            mismatch(
                t.span,
                format!("expected `{}`, found {what}", this.show(ty)),
            )
        };
        match (&t.kind, ty) {
            (TermKind::Lam(x, body), CTy::Pi(_, a, b)) => {
                let saved = self.push_local(&x.name, (**a).clone(), x.span)?;
                let body2 = self.check(body, b)?;
                self.leave(saved);
                Ok(CTm::Lam(x.name.clone(), a.clone(), Box::new(body2)))
            }
            (TermKind::Lam(..), _) => Err(not_a("a lambda", self)),
            (TermKind::Pair(a, b), CTy::Sigma(_, ta, tb)) => {
                let a2 = self.check(a, ta)?;
                let b2 = self.check(b, &inst_ty(tb, &a2))?;
                Ok(CTm::Pair(Box::new(a2), Box::new(b2)))
            }
            (TermKind::If(c, a, b), _) => {
                let c2 = self.check(c, &CTy::Bool)?;
                let (yes, no) = self.split(&c2, c.span)?;
                let a2 = self.with_envs(yes, |s| s.check(a, ty))?;
                let b2 = self.with_envs(no, |s| s.check(b, ty))?;
                Ok(CTm::If(Box::new(c2), Box::new(a2), Box::new(b2)))
            }
            (TermKind::Inl(a), CTy::Sum(ta, _)) => Ok(CTm::Inl(Box::new(self.check(a, ta)?))),
            (TermKind::Inr(b), CTy::Sum(_, tb)) => Ok(CTm::Inr(Box::new(self.check(b, tb)?))),
            (TermKind::Inl(_) | TermKind::Inr(_), _) => Err(not_a("an injection", self)),
            (
                TermKind::Case {
                    scrutinee,
                    left,
                    left_body,
                    right,
                    right_body,
                },
                _,
            ) => {
                let (s2, sty) = self.infer(scrutinee)?;
                let CTy::Sum(ta, tb) = sty else {
                    return Err(mismatch(
                        scrutinee.span,
                        format!("expected a sum type, found `{}`", self.show(&sty)),
                    ));
                };
                let (mut lenvs, mut renvs) = (Vec::new(), Vec::new());
                for env in &self.envs {
                    let v = self.tm_at(&s2, env, scrutinee.span)?;
                    let (tag, payload) =
                        wiener_unpair(&v).map_err(|e| Self::core_err(scrutinee.span, e))?;
                    let mut e = env.clone();
                    e.push(payload);
                    if tag.is_empty() {
                        &mut lenvs
                    } else {
                        &mut renvs
                    }
                    .push(e);
                }
                let motive = shift_ty(ty, 1);
                let saved = self.enter(&left.name, *ta, lenvs);
                let l2 = self.check(left_body, &motive)?;
                self.leave(saved);
                let saved = self.enter(&right.name, *tb, renvs);
                let r2 = self.check(right_body, &motive)?;
                self.leave(saved);
                Ok(CTm::Case(
                    Box::new(s2),
                    left.name.clone(),
                    Box::new(l2),
                    right.name.clone(),
                    Box::new(r2),
                ))
            }
            (TermKind::Refl, CTy::Id(_, x, y)) => {
                for env in &self.envs {
                    let vx = self.tm_at(x, env, t.span)?;
                    let vy = self.tm_at(y, env, t.span)?;
                    if vx != vy {
                        let names = self.local_names();
                        let d = mismatch(
                            t.span,
                            format!(
                                "`refl` needs `{}` and `{}` to be equal, but they denote {} and {}",
                                show_tm(x, &self.program.names(), &names),
                                show_tm(y, &self.program.names(), &names),
                                print_with(&vx, Style::TYPED),
                                print_with(&vy, Style::TYPED),
                            ),
                        );
                        return Err(self.counterexample(d, env));
                    }
                }
                Ok(CTm::Refl)
            }
            (TermKind::Refl, _) => Err(not_a("`refl`", self)),
            (TermKind::Absurd(e), _) => Ok(CTm::Absurd(Box::new(self.check(e, &CTy::Empty)?))),
            (TermKind::Let(x, a, body), _) => self.with_let(x, a, |s| s.check(body, ty)),
            (TermKind::App(f, a), _) if matches!(f.kind, TermKind::Lam(..)) => {
                let TermKind::Lam(x, body) = &f.kind else {
                    unreachable!()
                };
                self.with_let(x, a, |s| s.check(body, ty))
            }
            (TermKind::Var(x), _) => match self.resolve(x) {
                Some(Resolved::Binding(Binding::Alias(alias))) => {
                    self.check_alias(&alias, ty, t.span)
                }
                _ => self.infer_then_conv(t, ty),
            },
            _ => self.infer_then_conv(t, ty),
        }
    }

    fn infer_then_conv(&mut self, t: &Term, ty: &CTy) -> R<CTm> {
        let (t2, found) = self.infer(t)?;
        self.conv(t.span, &found, ty)?;
        Ok(t2)
    }

    fn check_alias(&mut self, alias: &Alias, ty: &CTy, span: Span) -> R<CTm> {
        let drop = self.locals.len() - alias.locals;
        let Some(ty0) = unshift_ty(ty, drop) else {
            return Err(Diagnostic::error(
                "cannot-infer",
                span,
                format!(
                    "`{}` is let-bound outside the variables its expected type `{}` mentions",
                    alias.name,
                    self.show(ty)
                ),
            ));
        };
        let tm = self.in_prefix(alias.locals, alias.names, |s| s.check(&alias.term, &ty0))?;
        Ok(shift_tm(&tm, drop))
    }

    pub(crate) fn infer(&mut self, t: &Term) -> R<(CTm, CTy)> {
        self.tick(t.span)?;
        let cannot = |what: &str| {
            Diagnostic::error(
                "cannot-infer",
                t.span,
                format!("cannot infer the type of {what}; use it where a type is expected"),
            )
        };
        match &t.kind {
            TermKind::Var(x) => self.var(x, t.span),
            TermKind::App(f, a) => {
                if let TermKind::Lam(x, body) = &f.kind {
                    return self.with_let(x, a, |s| s.infer(body));
                }
                let (f2, fty, arg) = match self.try_infer(f)? {
                    Some((f2, fty)) => (f2, fty, None),
                    None => {
                        // A lambda-valued head takes its domain from the argument.
                        let (a2, ta) = self.infer(a)?;
                        let (f2, fty) = self.infer_fn(f, &ta)?;
                        (f2, fty, Some((a2, ta)))
                    }
                };
                let CTy::Pi(_, ta, tb) = fty else {
                    return Err(mismatch(
                        f.span,
                        format!("expected a function, found `{}`", self.show(&fty)),
                    ));
                };
                let a2 = match arg {
                    Some((a2, found)) => {
                        self.conv(a.span, &found, &ta)?;
                        a2
                    }
                    None => self.check(a, &ta)?,
                };
                let ty = inst_ty(&tb, &a2);
                Ok((CTm::App(Box::new(f2), Box::new(a2)), ty))
            }
            TermKind::Fst(p) | TermKind::Snd(p) => {
                let (p2, pty) = self.infer(p)?;
                let CTy::Sigma(_, ta, tb) = pty else {
                    return Err(mismatch(
                        p.span,
                        format!("expected a pair, found `{}`", self.show(&pty)),
                    ));
                };
                Ok(match t.kind {
                    TermKind::Fst(_) => (CTm::Fst(Box::new(p2)), *ta),
                    _ => {
                        let ty = inst_ty(&tb, &CTm::Fst(Box::new(p2.clone())));
                        (CTm::Snd(Box::new(p2)), ty)
                    }
                })
            }
            TermKind::Tt => Ok((CTm::Tt, CTy::Unit)),
            TermKind::True => Ok((CTm::True, CTy::Bool)),
            TermKind::False => Ok((CTm::False, CTy::Bool)),
            TermKind::Pair(a, b) => {
                let (a2, ta) = self.infer(a)?;
                let (b2, tb) = self.infer(b)?;
                Ok((
                    CTm::Pair(Box::new(a2), Box::new(b2)),
                    CTy::Sigma("_".into(), Box::new(ta), Box::new(shift_ty(&tb, 1))),
                ))
            }
            TermKind::If(c, a, b) => {
                let c2 = self.check(c, &CTy::Bool)?;
                let (yes, no) = self.split(&c2, c.span)?;
                let (a2, ty) = self.with_envs(yes, |s| s.infer(a))?;
                let b2 = self.with_envs(no, |s| s.check(b, &ty))?;
                Ok((CTm::If(Box::new(c2), Box::new(a2), Box::new(b2)), ty))
            }
            TermKind::Let(x, a, body) => self.with_let(x, a, |s| s.infer(body)),
            TermKind::Lam(..) => Err(cannot("a lambda")),
            TermKind::Refl => Err(cannot("`refl`")),
            TermKind::Inl(_) | TermKind::Inr(_) => Err(cannot("an injection")),
            TermKind::Case { .. } => Err(cannot("a `case`")),
            TermKind::Absurd(_) => Err(cannot("`absurd`")),
        }
    }

    fn var(&mut self, x: &str, span: Span) -> R<(CTm, CTy)> {
        let n = self.locals.len();
        match self.resolve(x) {
            None => Err(Diagnostic::error(
                "unbound-variable",
                span,
                format!("unbound variable `{x}`"),
            )),
            Some(Resolved::Global(k)) => Ok((CTm::Global(k), self.program.defs[k].ty.clone())),
            Some(Resolved::Binding(Binding::Local(level))) => {
                let idx = n - 1 - level;
                Ok((CTm::Var(idx), shift_ty(&self.locals[level].ty, idx + 1)))
            }
            Some(Resolved::Binding(Binding::Term { tm, ty, depth })) => {
                Ok((shift_tm(&tm, n - depth), shift_ty(&ty, n - depth)))
            }
            Some(Resolved::Binding(Binding::Alias(alias))) => {
                let drop = n - alias.locals;
                let (tm, ty) =
                    self.in_prefix(alias.locals, alias.names, |s| s.infer(&alias.term))?;
                Ok((shift_tm(&tm, drop), shift_ty(&ty, drop)))
            }
        }
    }
}
