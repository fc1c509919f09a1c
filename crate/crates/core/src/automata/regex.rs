//! Regular expressions over edge labels.
//!
//! Syntax: bare identifiers (`[A-Za-z0-9_-]+`) or single-quoted strings are
//! labels, `eps` is the empty word, `.` or juxtaposition concatenates, `|`
//! is union, and `*`, `+`, `?` are postfix. A quote inside a quoted label is
//! written `''`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Epsilon,
    Label(String),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

impl Regex {
    pub fn label(s: &str) -> Regex {
        Regex::Label(s.to_owned())
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    pub fn plus(a: Regex) -> Regex {
        Regex::Plus(Box::new(a))
    }

    pub fn optional(a: Regex) -> Regex {
        Regex::Optional(Box::new(a))
    }

    pub fn parse(text: &str) -> Result<Regex> {
        let mut p = Parser { src: text, pos: 0 };
        let r = p.union()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(Error::syntax(
                p.pos,
                format!("unexpected `{}`", p.peek_char().unwrap()),
            ));
        }
        Ok(r)
    }

    pub fn nullable(&self) -> bool {
        match self {
            Regex::Epsilon | Regex::Star(_) | Regex::Optional(_) => true,
            Regex::Label(_) => false,
            Regex::Concat(a, b) => a.nullable() && b.nullable(),
            Regex::Union(a, b) => a.nullable() || b.nullable(),
            Regex::Plus(a) => a.nullable(),
        }
    }

    /// Rewrites `Plus` and `Optional` into the core constructors.
    pub fn desugar(&self) -> Regex {
        match self {
            Regex::Epsilon => Regex::Epsilon,
            Regex::Label(a) => Regex::Label(a.clone()),
            Regex::Concat(a, b) => Regex::concat(a.desugar(), b.desugar()),
            Regex::Union(a, b) => Regex::union(a.desugar(), b.desugar()),
            Regex::Star(a) => Regex::star(a.desugar()),
            Regex::Plus(a) => {
                let a = a.desugar();
                Regex::concat(a.clone(), Regex::star(a))
            }
            Regex::Optional(a) => Regex::union(Regex::Epsilon, a.desugar()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Regex::Epsilon | Regex::Label(_) => 0,
            Regex::Concat(a, b) | Regex::Union(a, b) => 1 + a.depth().max(b.depth()),
            Regex::Star(a) | Regex::Plus(a) | Regex::Optional(a) => 1 + a.depth(),
        }
    }

    /// Labels in order of first occurrence.
    pub fn labels(&self) -> Vec<&str> {
        fn walk<'a>(r: &'a Regex, out: &mut Vec<&'a str>) {
            match r {
                Regex::Epsilon => {}
                Regex::Label(a) => {
                    if !out.contains(&a.as_str()) {
                        out.push(a);
                    }
                }
                Regex::Concat(a, b) | Regex::Union(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Regex::Star(a) | Regex::Plus(a) | Regex::Optional(a) => walk(a, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn write_label(f: &mut fmt::Formatter<'_>, a: &str) -> fmt::Result {
    if !a.is_empty() && a != "eps" && a.chars().all(is_ident_char) {
        f.write_str(a)
    } else {
        write!(f, "'{}'", a.replace('\'', "''"))
    }
}

impl fmt::Display for Regex {
    // Fully parenthesized except for atoms, so output always re-parses to
    // the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Epsilon => f.write_str("eps"),
            Regex::Label(a) => write_label(f, a),
            Regex::Concat(a, b) => write!(f, "({a}.{b})"),
            Regex::Union(a, b) => write!(f, "({a}|{b})"),
            Regex::Star(a) => write!(f, "{a}*"),
            Regex::Plus(a) => write!(f, "{a}+"),
            Regex::Optional(a) => write!(f, "{a}?"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_char()
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn starts_atom(c: char) -> bool {
        c == '(' || c == '\'' || is_ident_char(c)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut left = self.postfix()?;
        loop {
            match self.peek() {
                Some('.') => {
                    self.pos += 1;
                    let right = self.postfix()?;
                    left = Regex::concat(left, right);
                }
                Some(c) if Self::starts_atom(c) => {
                    let right = self.postfix()?;
                    left = Regex::concat(left, right);
                }
                _ => return Ok(left),
            }
        }
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => r = Regex::star(r),
                Some('+') => r = Regex::plus(r),
                Some('?') => r = Regex::optional(r),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek_char() {
            None => Err(Error::syntax(start, "unexpected end of expression")),
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::syntax(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some('\'') => {
                self.pos += 1;
                let mut label = String::new();
                loop {
                    match self.peek_char() {
                        None => return Err(Error::syntax(start, "unterminated quoted label")),
                        Some('\'') => {
                            self.pos += 1;
                            if self.peek_char() == Some('\'') {
                                label.push('\'');
                                self.pos += 1;
                            } else {
                                break;
                            }
                        }
                        Some(c) => {
                            label.push(c);
                            self.pos += c.len_utf8();
                        }
                    }
                }
                if label.is_empty() {
                    return Err(Error::syntax(start, "empty label"));
                }
                Ok(Regex::Label(label))
            }
            Some(c) if is_ident_char(c) => {
                let end = self.src[self.pos..]
                    .find(|c: char| !is_ident_char(c))
                    .map_or(self.src.len(), |i| self.pos + i);
                let word = &self.src[self.pos..end];
                self.pos = end;
                if word == "eps" {
                    Ok(Regex::Epsilon)
                } else {
                    Ok(Regex::label(word))
                }
            }
            Some(c) => Err(Error::syntax(start, format!("unexpected `{c}`"))),
        }
    }
}
