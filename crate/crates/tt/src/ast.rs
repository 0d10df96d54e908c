//! Surface syntax. Equality ignores spans, so a parsed program can be compared with the
//! re-parse of its printed form.

use std::fmt;

/// Byte offsets `[start, end)` into the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Ident) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

#[derive(Clone, Debug)]
pub struct Type {
    pub kind: TypeKind,
    pub span: Span,
}

impl PartialEq for Type {
    fn eq(&self, other: &Type) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Type {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeKind {
    Empty,
    Unit,
    Bool,
    /// `(x : A) -> B`, or `A -> B` without a binder.
    Pi(Option<Ident>, Box<Type>, Box<Type>),
    Sigma(Option<Ident>, Box<Type>, Box<Type>),
    Sum(Box<Type>, Box<Type>),
    Id(Box<Type>, Box<Term>, Box<Term>),
}

#[derive(Clone, Debug)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Term {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Var(String),
    Lam(Ident, Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    Tt,
    True,
    False,
    If(Box<Term>, Box<Term>, Box<Term>),
    Inl(Box<Term>),
    Inr(Box<Term>),
    Case {
        scrutinee: Box<Term>,
        left: Ident,
        left_body: Box<Term>,
        right: Ident,
        right_body: Box<Term>,
    },
    Refl,
    Absurd(Box<Term>),
    Let(Ident, Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: Ident,
    pub ty: Type,
    pub body: Term,
    pub span: Span,
}

// Printing. Types: 0 = arrow, 1 = sum, 2 = product, 3 = atom.
// Terms: 0 = binder forms, 1 = application, 2 = atom.

fn write_type(f: &mut fmt::Formatter<'_>, t: &Type, prec: u8) -> fmt::Result {
    let paren = match &t.kind {
        TypeKind::Empty | TypeKind::Unit | TypeKind::Bool => false,
        TypeKind::Pi(..) => prec > 0,
        TypeKind::Sum(..) => prec > 1,
        TypeKind::Sigma(..) | TypeKind::Id(..) => prec > 2,
    };
    if paren {
        f.write_str("(")?;
    }
    match &t.kind {
        TypeKind::Empty => f.write_str("Empty")?,
        TypeKind::Unit => f.write_str("Unit")?,
        TypeKind::Bool => f.write_str("Bool")?,
        TypeKind::Pi(x, a, b) | TypeKind::Sigma(x, a, b) => {
            let (op, lhs_prec, rhs_prec) = match t.kind {
                TypeKind::Pi(..) => ("->", 1, 0),
                _ => ("*", 3, 2),
            };
            match x {
                Some(x) => {
                    write!(f, "({} : ", x.name)?;
                    write_type(f, a, 0)?;
                    f.write_str(")")?;
                }
                None => write_type(f, a, lhs_prec)?,
            }
            write!(f, " {op} ")?;
            write_type(f, b, rhs_prec)?;
        }
        TypeKind::Sum(a, b) => {
            write_type(f, a, 2)?;
            f.write_str(" + ")?;
            write_type(f, b, 1)?;
        }
        TypeKind::Id(a, x, y) => {
            f.write_str("Id ")?;
            write_type(f, a, 3)?;
            f.write_str(" ")?;
            write_term(f, x, 2)?;
            f.write_str(" ")?;
            write_term(f, y, 2)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, prec: u8) -> fmt::Result {
    let own = match &t.kind {
        TermKind::Lam(..) | TermKind::If(..) | TermKind::Case { .. } | TermKind::Let(..) => 0,
        TermKind::App(..)
        | TermKind::Fst(_)
        | TermKind::Snd(_)
        | TermKind::Inl(_)
        | TermKind::Inr(_)
        | TermKind::Absurd(_) => 1,
        _ => 2,
    };
    let paren = own < prec;
    if paren {
        f.write_str("(")?;
    }
    match &t.kind {
        TermKind::Var(x) => f.write_str(x)?,
        TermKind::Lam(x, body) => {
            write!(f, "\\{}. ", x.name)?;
            write_term(f, body, 0)?;
        }
        TermKind::App(g, a) => {
            write_term(f, g, 1)?;
            f.write_str(" ")?;
            write_term(f, a, 2)?;
        }
        TermKind::Pair(a, b) => {
            f.write_str("(")?;
            write_term(f, a, 0)?;
            f.write_str(", ")?;
            write_term(f, b, 0)?;
            f.write_str(")")?;
        }
        TermKind::Fst(a)
        | TermKind::Snd(a)
        | TermKind::Inl(a)
        | TermKind::Inr(a)
        | TermKind::Absurd(a) => {
            let kw = match t.kind {
                TermKind::Fst(_) => "fst",
                TermKind::Snd(_) => "snd",
                TermKind::Inl(_) => "inl",
                TermKind::Inr(_) => "inr",
                _ => "absurd",
            };
            write!(f, "{kw} ")?;
            write_term(f, a, 2)?;
        }
        TermKind::Tt => f.write_str("tt")?,
        TermKind::True => f.write_str("true")?,
        TermKind::False => f.write_str("false")?,
        TermKind::Refl => f.write_str("refl")?,
        TermKind::If(c, a, b) => {
            f.write_str("if ")?;
            write_term(f, c, 0)?;
            f.write_str(" then ")?;
            write_term(f, a, 0)?;
            f.write_str(" else ")?;
            write_term(f, b, 0)?;
        }
        TermKind::Case {
            scrutinee,
            left,
            left_body,
            right,
            right_body,
        } => {
            f.write_str("case ")?;
            write_term(f, scrutinee, 0)?;
            write!(f, " of {{ inl {} => ", left.name)?;
            write_term(f, left_body, 0)?;
            write!(f, "; inr {} => ", right.name)?;
            write_term(f, right_body, 0)?;
            f.write_str(" }")?;
        }
        TermKind::Let(x, a, b) => {
            write!(f, "let {} = ", x.name)?;
            write_term(f, a, 0)?;
            f.write_str(" in ")?;
            write_term(f, b, 0)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self, 0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0)
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "def {} : {} = {}", self.name.name, self.ty, self.body)
    }
}

/// One declaration per line.
pub fn print_program(decls: &[Decl]) -> String {
    decls.iter().map(|d| format!("{d}\n")).collect()
}
