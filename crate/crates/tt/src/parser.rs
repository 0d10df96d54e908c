//! Recursive-descent parser for `.vz` programs.
//!
//! ```text
//! program ::= decl*
//! decl    ::= 'def' IDENT ':' type '=' term
//! type    ::= binder '->' type | sum ('->' type)?
//! sum     ::= prod ('+' sum)?
//! prod    ::= binder '*' prod | tatom ('*' prod)?
//! binder  ::= '(' IDENT ':' type ')'
//! tatom   ::= 'Empty' | 'Unit' | 'Bool' | 'Id' tatom atom atom | '(' type ')'
//! term    ::= '\' IDENT '.' term | 'let' IDENT '=' term 'in' term
//!           | 'if' term 'then' term 'else' term
//!           | 'case' term 'of' '{' 'inl' IDENT '=>' term ';' 'inr' IDENT '=>' term '}'
//!           | app
//! app     ::= atom+
//! atom    ::= IDENT | 'tt' | 'true' | 'false' | 'refl'
//!           | ('fst' | 'snd' | 'inl' | 'inr' | 'absurd') atom
//!           | '(' term ',' term ')' | '(' term ')'
//! ```

use crate::ast::{Decl, Ident, Span, Term, TermKind, Type, TypeKind};
use crate::lexer::{lex, Kw, Tok, Token};
use crate::syntax_error::SyntaxError;

/// Nesting beyond this is rejected rather than risking the stack.
const MAX_DEPTH: usize = 256;

pub fn parse_program(src: &str) -> Result<Vec<Decl>, SyntaxError> {
    let mut p = Parser::new(src)?;
    let mut decls = Vec::new();
    while p.peek() != &Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

/// A single type, with nothing after it.
pub fn parse_type(src: &str) -> Result<Type, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

/// A single term, with nothing after it.
pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

fn starts_atom(t: &Tok) -> bool {
    matches!(
        t,
        Tok::Ident(_)
            | Tok::LParen
            | Tok::Kw(
                Kw::Tt
                    | Kw::True
                    | Kw::False
                    | Kw::Refl
                    | Kw::Fst
                    | Kw::Snd
                    | Kw::Inl
                    | Kw::Inr
                    | Kw::Absurd
            )
    )
}

impl Parser {
    fn new(src: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        let found = self.peek();
        let message = match expected {
            [] => format!("unexpected {found}"),
            [one] => format!("expected {one}, found {found}"),
            many => format!("expected one of {}, found {found}", many.join(", ")),
        };
        SyntaxError {
            span: self.span(),
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<Span, SyntaxError> {
        if self.peek() == &t {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&t.to_string()]))
        }
    }

    fn ident(&mut self) -> Result<Ident, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => Ok(Ident {
                name,
                span: self.bump().span,
            }),
            _ => Err(self.error(&["an identifier"])),
        }
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(SyntaxError {
                span: self.span(),
                message: format!("nesting deeper than {MAX_DEPTH} levels"),
                expected: Vec::new(),
            });
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn decl(&mut self) -> Result<Decl, SyntaxError> {
        let start = self.expect(Tok::Kw(Kw::Def))?;
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let ty = self.ty()?;
        self.expect(Tok::Equals)?;
        let body = self.term()?;
        Ok(Decl {
            name,
            ty,
            span: start.to(body.span),
            body,
        })
    }

    fn binder_ahead(&self) -> bool {
        self.peek() == &Tok::LParen
            && matches!(self.peek_at(1), Tok::Ident(_))
            && self.peek_at(2) == &Tok::Colon
    }

    fn binder(&mut self) -> Result<(Span, Ident, Type), SyntaxError> {
        let start = self.expect(Tok::LParen)?;
        let x = self.ident()?;
        self.expect(Tok::Colon)?;
        let a = self.ty()?;
        self.expect(Tok::RParen)?;
        Ok((start, x, a))
    }

    fn mk_ty(kind: TypeKind, start: Span, end: Span) -> Type {
        Type {
            kind,
            span: start.to(end),
        }
    }

    pub(crate) fn ty(&mut self) -> Result<Type, SyntaxError> {
        self.enter()?;
        let t = self.arrow();
        self.leave();
        t
    }

    fn arrow(&mut self) -> Result<Type, SyntaxError> {
        let lhs = if self.binder_ahead() {
            let (start, x, a) = self.binder()?;
            if self.eat(&Tok::Arrow) {
                let b = self.ty()?;
                let span = b.span;
                return Ok(Self::mk_ty(
                    TypeKind::Pi(Some(x), Box::new(a), Box::new(b)),
                    start,
                    span,
                ));
            }
            if !self.eat(&Tok::Star) {
                return Err(self.error(&["`->`", "`*`"]));
            }
            let b = self.prod()?;
            let span = b.span;
            let first = Self::mk_ty(
                TypeKind::Sigma(Some(x), Box::new(a), Box::new(b)),
                start,
                span,
            );
            self.sum_rest(first)?
        } else {
            self.sum()?
        };
        if self.eat(&Tok::Arrow) {
            let b = self.ty()?;
            let (s, e) = (lhs.span, b.span);
            return Ok(Self::mk_ty(
                TypeKind::Pi(None, Box::new(lhs), Box::new(b)),
                s,
                e,
            ));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Type, SyntaxError> {
        let first = self.prod()?;
        self.sum_rest(first)
    }

    fn sum_rest(&mut self, first: Type) -> Result<Type, SyntaxError> {
        if self.eat(&Tok::Plus) {
            self.enter()?;
            let rest = self.sum();
            self.leave();
            let rest = rest?;
            let (s, e) = (first.span, rest.span);
            return Ok(Self::mk_ty(
                TypeKind::Sum(Box::new(first), Box::new(rest)),
                s,
                e,
            ));
        }
        Ok(first)
    }

    fn prod(&mut self) -> Result<Type, SyntaxError> {
        self.enter()?;
        let t = self.prod_inner();
        self.leave();
        t
    }

    fn prod_inner(&mut self) -> Result<Type, SyntaxError> {
        if self.binder_ahead() {
            let (start, x, a) = self.binder()?;
            if !self.eat(&Tok::Star) {
                let mut err = self.error(&["`*`"]);
                err.message
                    .push_str(" (a dependent function type here needs parentheses)");
                return Err(err);
            }
            let b = self.prod()?;
            let span = b.span;
            return Ok(Self::mk_ty(
                TypeKind::Sigma(Some(x), Box::new(a), Box::new(b)),
                start,
                span,
            ));
        }
        let lhs = self.tatom()?;
        if self.eat(&Tok::Star) {
            let b = self.prod()?;
            let (s, e) = (lhs.span, b.span);
            return Ok(Self::mk_ty(
                TypeKind::Sigma(None, Box::new(lhs), Box::new(b)),
                s,
                e,
            ));
        }
        Ok(lhs)
    }

    fn tatom(&mut self) -> Result<Type, SyntaxError> {
        let start = self.span();
        let kind = match self.peek() {
            Tok::Kw(Kw::Empty) => TypeKind::Empty,
            Tok::Kw(Kw::Unit) => TypeKind::Unit,
            Tok::Kw(Kw::Bool) => TypeKind::Bool,
            Tok::Kw(Kw::Id) => {
                self.bump();
                self.enter()?;
                let a = self.tatom()?;
                let x = self.atom()?;
                let y = self.atom()?;
                self.leave();
                let end = y.span;
                return Ok(Self::mk_ty(
                    TypeKind::Id(Box::new(a), Box::new(x), Box::new(y)),
                    start,
                    end,
                ));
            }
            Tok::LParen => {
                if self.binder_ahead() {
                    return Err(SyntaxError {
                        span: start,
                        message: "a binder must be followed by `->` or `*`".into(),
                        expected: Vec::new(),
                    });
                }
                self.bump();
                let mut t = self.ty()?;
                let end = self.expect(Tok::RParen)?;
                t.span = start.to(end);
                return Ok(t);
            }
            _ => return Err(self.error(&["`Empty`", "`Unit`", "`Bool`", "`Id`", "`(`"])),
        };
        self.bump();
        Ok(Self::mk_ty(kind, start, start))
    }

    pub(crate) fn term(&mut self) -> Result<Term, SyntaxError> {
        self.enter()?;
        let t = self.term_inner();
        self.leave();
        t
    }

    fn term_inner(&mut self) -> Result<Term, SyntaxError> {
        let start = self.span();
        let kind = match self.peek() {
            Tok::Lambda => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Dot)?;
                TermKind::Lam(x, Box::new(self.term()?))
            }
            Tok::Kw(Kw::Let) => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Equals)?;
                let a = self.term()?;
                self.expect(Tok::Kw(Kw::In))?;
                TermKind::Let(x, Box::new(a), Box::new(self.term()?))
            }
            Tok::Kw(Kw::If) => {
                self.bump();
                let c = self.term()?;
                self.expect(Tok::Kw(Kw::Then))?;
                let a = self.term()?;
                self.expect(Tok::Kw(Kw::Else))?;
                TermKind::If(Box::new(c), Box::new(a), Box::new(self.term()?))
            }
            Tok::Kw(Kw::Case) => {
                self.bump();
                let scrutinee = Box::new(self.term()?);
                self.expect(Tok::Kw(Kw::Of))?;
                self.expect(Tok::LBrace)?;
                self.expect(Tok::Kw(Kw::Inl))?;
                let left = self.ident()?;
                self.expect(Tok::FatArrow)?;
                let left_body = Box::new(self.term()?);
                self.expect(Tok::Semi)?;
                self.expect(Tok::Kw(Kw::Inr))?;
                let right = self.ident()?;
                self.expect(Tok::FatArrow)?;
                let right_body = Box::new(self.term()?);
                self.expect(Tok::RBrace)?;
                TermKind::Case {
                    scrutinee,
                    left,
                    left_body,
                    right,
                    right_body,
                }
            }
            _ => return self.app(),
        };
        Ok(Term {
            kind,
            span: Span::new(start.start, self.prev_end()),
        })
    }

    fn app(&mut self) -> Result<Term, SyntaxError> {
        let mut f = self.atom()?;
        while starts_atom(self.peek()) {
            let a = self.atom()?;
            let span = f.span.to(a.span);
            f = Term {
                kind: TermKind::App(Box::new(f), Box::new(a)),
                span,
            };
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        self.enter()?;
        let t = self.atom_inner();
        self.leave();
        t
    }

    fn atom_inner(&mut self) -> Result<Term, SyntaxError> {
        let start = self.span();
        let kind = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                TermKind::Var(name)
            }
            Tok::Kw(kw @ (Kw::Tt | Kw::True | Kw::False | Kw::Refl)) => {
                self.bump();
                match kw {
                    Kw::Tt => TermKind::Tt,
                    Kw::True => TermKind::True,
                    Kw::False => TermKind::False,
                    _ => TermKind::Refl,
                }
            }
            Tok::Kw(kw @ (Kw::Fst | Kw::Snd | Kw::Inl | Kw::Inr | Kw::Absurd)) => {
                self.bump();
                let a = Box::new(self.atom()?);
                match kw {
                    Kw::Fst => TermKind::Fst(a),
                    Kw::Snd => TermKind::Snd(a),
                    Kw::Inl => TermKind::Inl(a),
                    Kw::Inr => TermKind::Inr(a),
                    _ => TermKind::Absurd(a),
                }
            }
            Tok::LParen => {
                self.bump();
                let a = self.term()?;
                if self.eat(&Tok::Comma) {
                    let b = self.term()?;
                    self.expect(Tok::RParen)?;
                    TermKind::Pair(Box::new(a), Box::new(b))
                } else if self.eat(&Tok::RParen) {
                    return Ok(Term {
                        kind: a.kind,
                        span: Span::new(start.start, self.prev_end()),
                    });
                } else {
                    return Err(self.error(&["`,`", "`)`"]));
                }
            }
            _ => {
                return Err(self.error(&[
                    "an identifier",
                    "`tt`",
                    "`true`",
                    "`false`",
                    "`refl`",
                    "`fst`",
                    "`snd`",
                    "`inl`",
                    "`inr`",
                    "`absurd`",
                    "`(`",
                ]))
            }
        };
        Ok(Term {
            kind,
            span: Span::new(start.start, self.prev_end()),
        })
    }
}
