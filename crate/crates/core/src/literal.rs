//! Set-literal text and the JSON form of sets.
//!
//! ```text
//! set ::= '{' [ set (',' set)* ] '}' | '<' set ',' set '>' | '#' NAT
//! ```
//!
//! `<a,b>` is the Wiener pair and `#n` the von Neumann numeral. Whitespace is ignored. Braces
//! go through `sup0`, so a literal naming the same member twice is rejected. Parsing and
//! printing both run on an explicit stack.

use serde_json::Value;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::iset::ISet;
use crate::universe::{vn_numeral_with, wiener_pair, wiener_unpair};

/// Which abbreviations the printer may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Style {
    pub pairs: bool,
    /// `#n` for von Neumann numerals with `n >= 2` (∅ and {∅} stay literal).
    pub numerals: bool,
}

impl Style {
    pub const PLAIN: Style = Style {
        pairs: false,
        numerals: false,
    };
    pub const SUGARED: Style = Style {
        pairs: true,
        numerals: true,
    };
    /// Used for values printed against a type: pairs, but no numerals.
    pub const TYPED: Style = Style {
        pairs: true,
        numerals: false,
    };
}

pub fn parse(text: &str) -> Result<ISet> {
    parse_with(text, &Budget::current())
}

pub fn parse_with(text: &str, budget: &Budget) -> Result<ISet> {
    enum Frame {
        Braces(Vec<ISet>),
        Angles(Vec<ISet>),
    }
    let bytes = text.as_bytes();
    let mut stack: Vec<Frame> = Vec::new();
    let mut result: Option<ISet> = None;
    let mut expect_value = true;
    let mut just_opened = false;
    let mut pos = 0;

    let err = |offset: usize, message: &str| Error::Syntax {
        offset,
        message: message.to_string(),
    };

    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        pos += 1;
        let value = match c {
            b'{' | b'<' => {
                if !expect_value || result.is_some() {
                    return Err(err(start, "expected ',' or a closing bracket"));
                }
                if stack.len() as u64 >= budget.depth_cap {
                    return Err(Error::BudgetExceeded {
                        what: "literal nesting depth",
                        needed: (stack.len() + 1).to_string(),
                        cap: budget.depth_cap,
                    });
                }
                stack.push(if c == b'{' {
                    Frame::Braces(Vec::new())
                } else {
                    Frame::Angles(Vec::new())
                });
                just_opened = c == b'{';
                continue;
            }
            b'#' => {
                if !expect_value || result.is_some() {
                    return Err(err(start, "expected ',' or a closing bracket"));
                }
                let digits_end = bytes[pos..]
                    .iter()
                    .position(|b| !b.is_ascii_digit())
                    .map_or(bytes.len(), |k| pos + k);
                if digits_end == pos {
                    return Err(err(pos, "expected a natural number after '#'"));
                }
                let n: u64 = text[pos..digits_end]
                    .parse()
                    .map_err(|_| err(pos, "numeral too large"))?;
                pos = digits_end;
                vn_numeral_with(n, budget)?
            }
            b'}' => match stack.pop() {
                Some(Frame::Braces(members)) if !expect_value || just_opened => {
                    ISet::sup0(members)?
                }
                Some(Frame::Braces(_)) => return Err(err(start, "expected a set after ','")),
                _ => return Err(err(start, "unmatched '}'")),
            },
            b'>' => match stack.pop() {
                Some(Frame::Angles(parts)) if !expect_value && parts.len() == 2 => {
                    wiener_pair(parts[0].clone(), parts[1].clone())
                }
                Some(Frame::Angles(_)) => {
                    return Err(err(start, "a pair needs exactly two components"))
                }
                _ => return Err(err(start, "unmatched '>'")),
            },
            b',' => {
                match stack.last() {
                    Some(Frame::Angles(parts)) if parts.len() >= 2 => {
                        return Err(err(start, "a pair needs exactly two components"))
                    }
                    Some(_) if !expect_value => {}
                    _ => return Err(err(start, "unexpected ','")),
                }
                expect_value = true;
                just_opened = false;
                continue;
            }
            _ => return Err(err(start, "unexpected character")),
        };
        just_opened = false;
        expect_value = false;
        match stack.last_mut() {
            Some(Frame::Braces(items)) | Some(Frame::Angles(items)) => items.push(value),
            None => result = Some(value),
        }
    }
    if !stack.is_empty() {
        return Err(err(bytes.len(), "unclosed bracket"));
    }
    result.ok_or_else(|| err(bytes.len(), "expected a set"))
}

/// Canonical text with every abbreviation that matches exactly.
pub fn print(x: &ISet) -> String {
    print_with(x, Style::SUGARED)
}

pub fn print_with(x: &ISet, style: Style) -> String {
    enum Item {
        Set(ISet),
        Text(&'static str),
    }
    let mut out = String::new();
    let mut work = vec![Item::Set(x.clone())];
    while let Some(item) = work.pop() {
        let set = match item {
            Item::Text(t) => {
                out.push_str(t);
                continue;
            }
            Item::Set(s) => s,
        };
        if style.numerals {
            if let Some(n) = numeral_value(&set).filter(|&n| n >= 2) {
                out.push('#');
                out.push_str(&n.to_string());
                continue;
            }
        }
        if style.pairs {
            if let Ok((a, b)) = wiener_unpair(&set) {
                work.extend([Item::Text(">"), Item::Set(b), Item::Text(","), Item::Set(a)]);
                out.push('<');
                continue;
            }
        }
        out.push('{');
        work.push(Item::Text("}"));
        for (i, m) in set.members().iter().enumerate().rev() {
            work.push(Item::Set(m.clone()));
            if i > 0 {
                work.push(Item::Text(","));
            }
        }
    }
    out
}

/// `Some(n)` iff `x` is the von Neumann numeral `n`.
pub fn numeral_value(x: &ISet) -> Option<usize> {
    // x = suc(y) with y its largest member, all the way down to ∅.
    let mut cur = x.clone();
    loop {
        let ms = cur.members();
        let Some(top) = ms.last() else {
            return Some(x.cardinality());
        };
        if top.cardinality() + 1 != ms.len() || top.members() != &ms[..ms.len() - 1] {
            return None;
        }
        cur = top.clone();
    }
}

/// A set is the array of its members' JSON forms, in canonical order.
pub fn to_json(x: &ISet) -> Value {
    Value::Array(x.members().iter().map(to_json).collect())
}

pub fn from_json(v: &Value) -> Result<ISet> {
    match v {
        Value::Array(items) => ISet::sup0(items.iter().map(from_json).collect::<Result<Vec<_>>>()?),
        other => Err(Error::Json(format!("expected an array, found {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::{bool0, vn_numeral};

    #[test]
    fn parse_basic_literals() {
        let e = ISet::empty();
        assert_eq!(parse("{}").unwrap(), e);
        assert_eq!(parse(" { { } , {{}} } ").unwrap(), bool0());
        assert_eq!(parse("#3").unwrap(), vn_numeral(3).unwrap());
        assert_eq!(parse("<{},{}>").unwrap(), wiener_pair(e.clone(), e));
    }

    #[test]
    fn parse_rejects_duplicates_and_garbage() {
        assert!(matches!(parse("{{},{}}"), Err(Error::DuplicateElement(_))));
        assert!(matches!(
            parse("{#1,{{}}}"),
            Err(Error::DuplicateElement(_))
        ));
        for bad in [
            "",
            "{",
            "}",
            "{{},}",
            "{,}",
            "<{}>",
            "<{},{},{}>",
            "{}{}",
            "#",
            "{x}",
        ] {
            assert!(parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn printing_uses_sugar_only_on_exact_shapes() {
        let e = ISet::empty();
        assert_eq!(print(&vn_numeral(2).unwrap()), "#2");
        assert_eq!(print(&wiener_pair(e.clone(), e.clone())), "<{},{}>");
        assert_eq!(print_with(&bool0(), Style::TYPED), "{{},{{}}}");
        assert_eq!(print(&e), "{}");
        assert_eq!(print(&ISet::singleton(e.clone())), "{{}}");
        assert_eq!(
            print_with(&vn_numeral(3).unwrap(), Style::PLAIN),
            "{{},{{}},{{},{{}}}}"
        );
    }

    #[test]
    fn deep_literals_parse_and_print() {
        let text = format!("{}{}", "{".repeat(5000), "}".repeat(5000));
        let x = parse(&text).unwrap();
        assert_eq!(x.rank(), 4999);
        assert_eq!(print_with(&x, Style::PLAIN), text);
        let too_deep = format!("{}{}", "{".repeat(10_001), "}".repeat(10_001));
        assert!(matches!(
            parse_with(&too_deep, &Budget::DEFAULT),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn json_form() {
        let e = ISet::empty();
        assert_eq!(to_json(&e), serde_json::json!([]));
        assert_eq!(to_json(&ISet::singleton(e)), serde_json::json!([[]]));
        assert_eq!(from_json(&serde_json::json!([[], [[]]])).unwrap(), bool0());
        assert!(from_json(&serde_json::json!([[], []])).is_err());
        assert!(from_json(&serde_json::json!({"a": 1})).is_err());
    }

    #[test]
    fn numerals_are_recognized() {
        for n in 0..12 {
            assert_eq!(numeral_value(&vn_numeral(n).unwrap()), Some(n as usize));
        }
        assert_eq!(
            numeral_value(&ISet::singleton(ISet::singleton(ISet::empty()))),
            None
        );
    }
}
