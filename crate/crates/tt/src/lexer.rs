use std::fmt;

use crate::ast::Span;
use crate::syntax_error::SyntaxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kw {
    Def,
    Let,
    In,
    If,
    Then,
    Else,
    Case,
    Of,
    Inl,
    Inr,
    Fst,
    Snd,
    Tt,
    True,
    False,
    Refl,
    Absurd,
    Empty,
    Unit,
    Bool,
    Id,
}

impl Kw {
    const ALL: [(&'static str, Kw); 21] = [
        ("def", Kw::Def),
        ("let", Kw::Let),
        ("in", Kw::In),
        ("if", Kw::If),
        ("then", Kw::Then),
        ("else", Kw::Else),
        ("case", Kw::Case),
        ("of", Kw::Of),
        ("inl", Kw::Inl),
        ("inr", Kw::Inr),
        ("fst", Kw::Fst),
        ("snd", Kw::Snd),
        ("tt", Kw::Tt),
        ("true", Kw::True),
        ("false", Kw::False),
        ("refl", Kw::Refl),
        ("absurd", Kw::Absurd),
        ("Empty", Kw::Empty),
        ("Unit", Kw::Unit),
        ("Bool", Kw::Bool),
        ("Id", Kw::Id),
    ];

    pub fn as_str(self) -> &'static str {
        Kw::ALL
            .iter()
            .find(|(_, k)| *k == self)
            .map(|(s, _)| *s)
            .unwrap()
    }

    fn lookup(word: &str) -> Option<Kw> {
        Kw::ALL.iter().find(|(s, _)| *s == word).map(|(_, k)| *k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Kw(Kw),
    Colon,
    Equals,
    Arrow,
    FatArrow,
    Star,
    Plus,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Lambda,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Kw(k) => return write!(f, "`{}`", k.as_str()),
            Tok::Colon => "`:`",
            Tok::Equals => "`=`",
            Tok::Arrow => "`->`",
            Tok::FatArrow => "`=>`",
            Tok::Star => "`*`",
            Tok::Plus => "`+`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Lambda => "`\\`",
            Tok::Dot => "`.`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() && c != 'λ' || c == '_'
}

fn ident_continue(c: char) -> bool {
    (c.is_alphanumeric() && c != 'λ') || c == '_' || c == '\''
}

/// Splits `src` into tokens, ending with [`Tok::Eof`]. `--` starts a line comment.
pub fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if src[start..].starts_with("--") {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        if ident_start(c) {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !ident_continue(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let word = &src[start..end];
            let tok = Kw::lookup(word).map_or_else(|| Tok::Ident(word.to_string()), Tok::Kw);
            out.push(Token {
                tok,
                span: Span::new(start, end),
            });
            continue;
        }
        chars.next();
        let two = |next: char, chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            if chars.peek().is_some_and(|&(_, c)| c == next) {
                chars.next();
                true
            } else {
                false
            }
        };
        let (tok, len) = match c {
            ':' => (Tok::Colon, 1),
            '=' if two('>', &mut chars) => (Tok::FatArrow, 2),
            '=' => (Tok::Equals, 1),
            '-' if two('>', &mut chars) => (Tok::Arrow, 2),
            '*' => (Tok::Star, 1),
            '+' => (Tok::Plus, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ',' => (Tok::Comma, 1),
            ';' => (Tok::Semi, 1),
            '\\' => (Tok::Lambda, 1),
            'λ' => (Tok::Lambda, 'λ'.len_utf8()),
            '.' => (Tok::Dot, 1),
            other => {
                return Err(SyntaxError {
                    span: Span::new(start, start + other.len_utf8()),
                    message: format!("unexpected character `{other}`"),
                    expected: Vec::new(),
                })
            }
        };
        out.push(Token {
            tok,
            span: Span::new(start, start + len),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn keywords_symbols_and_comments() {
        assert_eq!(
            toks("def x' : Bool -> Bool = \\b. b -- trailing\n"),
            vec![
                Tok::Kw(Kw::Def),
                Tok::Ident("x'".into()),
                Tok::Colon,
                Tok::Kw(Kw::Bool),
                Tok::Arrow,
                Tok::Kw(Kw::Bool),
                Tok::Equals,
                Tok::Lambda,
                Tok::Ident("b".into()),
                Tok::Dot,
                Tok::Ident("b".into()),
                Tok::Eof,
            ]
        );
        assert_eq!(toks("λx.x")[0], Tok::Lambda);
        assert_eq!(
            toks("=> = ->"),
            vec![Tok::FatArrow, Tok::Equals, Tok::Arrow, Tok::Eof]
        );
    }

    #[test]
    fn spans_and_errors() {
        let t = lex("  foo").unwrap();
        assert_eq!(t[0].span, Span::new(2, 5));
        let err = lex("a ? b").unwrap_err();
        assert_eq!(err.span, Span::new(2, 3));
        assert!(lex("a - b").is_err());
    }
}
