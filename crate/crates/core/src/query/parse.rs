//! Parser for the query language.
//!
//! ```text
//! q     ::= lang(<regex> | @name)
//!         | select([src=<set>,] [tgt=<set>,] q)
//!         | shortest(q) | radix(q) | simple(q) | trail(q)
//!         | union(q, q, ...)
//!         | group(src|tgt|pair, q)
//!         | chain(atom, ...) | proj1(chain(atom, ...))
//! set   ::= * | {name, ...}
//! atom  ::= (var, <regex> | simple(<regex>) | trail(<regex>), var)
//! ```

use super::ast::{Atom, Endpoints, Lang, Mode, Query};
use crate::automata::Regex;
use crate::error::{Error, Result};
use crate::pmr::GroupKind;

impl Query {
    pub fn parse(text: &str) -> Result<Query> {
        let mut p = Parser { src: text, pos: 0 };
        let q = p.query()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(Error::syntax(p.pos, "trailing input"));
        }
        Ok(q)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !is_name_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return Err(Error::syntax(self.pos, "expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    /// A bare or single-quoted name.
    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        if !self.rest().starts_with('\'') {
            return self.word().map(str::to_owned);
        }
        let start = self.pos;
        self.pos += 1;
        let mut out = String::new();
        loop {
            let Some(c) = self.rest().chars().next() else {
                return Err(Error::syntax(start, "unterminated quoted name"));
            };
            self.pos += c.len_utf8();
            if c == '\'' {
                if self.rest().starts_with('\'') {
                    self.pos += 1;
                    out.push('\'');
                } else {
                    return Ok(out);
                }
            } else {
                out.push(c);
            }
        }
    }

    /// Raw text up to the next `)` or `,` at nesting depth zero, skipping
    /// quoted labels.
    fn raw_until_delim(&mut self) -> Result<(usize, &'a str)> {
        let start = self.pos;
        let mut depth = 0usize;
        let mut quoted = false;
        for (i, c) in self.rest().char_indices() {
            match c {
                '\'' => quoted = !quoted,
                _ if quoted => {}
                '(' => depth += 1,
                ')' if depth == 0 => {
                    self.pos += i;
                    return Ok((start, &self.src[start..self.pos]));
                }
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    self.pos += i;
                    return Ok((start, &self.src[start..self.pos]));
                }
                _ => {}
            }
        }
        Err(Error::syntax(start, "unbalanced parentheses"))
    }

    fn regex_at(base: usize, text: &str) -> Result<Regex> {
        Regex::parse(text).map_err(|e| match e {
            Error::Syntax { offset, message } => Error::Syntax {
                offset: base + offset,
                message,
            },
            other => other,
        })
    }

    fn lang(&mut self) -> Result<Lang> {
        self.skip_ws();
        if self.eat('@') {
            return Ok(Lang::Named(self.name()?));
        }
        let (base, text) = self.raw_until_delim()?;
        Ok(Lang::Regex(Self::regex_at(base, text)?))
    }

    fn endpoints(&mut self) -> Result<Endpoints> {
        if self.eat('*') {
            return Ok(Endpoints::All);
        }
        self.expect('{')?;
        let mut names = Vec::new();
        if !self.eat('}') {
            loop {
                names.push(self.name()?);
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(Endpoints::Nodes(names))
    }

    fn query(&mut self) -> Result<Query> {
        self.skip_ws();
        let at = self.pos;
        let head = self.word()?;
        self.expect('(')?;
        let q = match head {
            "lang" => Query::Lang(self.lang()?),
            "select" => {
                let (mut src, mut tgt) = (Endpoints::All, Endpoints::All);
                loop {
                    self.skip_ws();
                    let save = self.pos;
                    let key = self.word().ok();
                    if key.is_some() && self.eat('=') {
                        let ends = self.endpoints()?;
                        match key {
                            Some("src") => src = ends,
                            Some("tgt") => tgt = ends,
                            _ => return Err(Error::syntax(save, "expected `src` or `tgt`")),
                        }
                        self.expect(',')?;
                    } else {
                        self.pos = save;
                        break;
                    }
                }
                Query::select(src, tgt, self.query()?)
            }
            "shortest" => Query::mode(Mode::Shortest, self.query()?),
            "radix" => Query::mode(Mode::Radix, self.query()?),
            "simple" => Query::mode(Mode::Simple, self.query()?),
            "trail" => Query::mode(Mode::Trail, self.query()?),
            "union" => {
                let mut parts = vec![self.query()?];
                while self.eat(',') {
                    parts.push(self.query()?);
                }
                Query::Union(parts)
            }
            "group" => {
                let at = self.pos;
                let kind = match self.word()? {
                    "src" => GroupKind::Source,
                    "tgt" => GroupKind::Target,
                    "pair" => GroupKind::Pair,
                    _ => return Err(Error::syntax(at, "expected `src`, `tgt` or `pair`")),
                };
                self.expect(',')?;
                Query::Group(kind, Box::new(self.query()?))
            }
            "chain" => Query::Chain(self.atoms()?),
            "proj1" => {
                self.skip_ws();
                let at = self.pos;
                match self.query()? {
                    Query::Chain(atoms) => Query::Proj1(atoms),
                    _ => return Err(Error::syntax(at, "proj1 takes a chain")),
                }
            }
            other => return Err(Error::syntax(at, format!("unknown operator `{other}`"))),
        };
        self.expect(')')?;
        Ok(q)
    }

    fn atoms(&mut self) -> Result<Vec<Atom>> {
        let mut atoms = vec![self.atom()?];
        while self.eat(',') {
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }

    fn atom(&mut self) -> Result<Atom> {
        self.expect('(')?;
        let from = self.name()?;
        self.expect(',')?;
        self.skip_ws();
        let save = self.pos;
        let mode = match self.word().ok() {
            Some("simple") if self.eat('(') => Some(Mode::Simple),
            Some("trail") if self.eat('(') => Some(Mode::Trail),
            _ => None,
        };
        if mode.is_none() {
            self.pos = save;
        }
        let lang = self.lang()?;
        if mode.is_some() {
            self.expect(')')?;
        }
        self.expect(',')?;
        let to = self.name()?;
        self.expect(')')?;
        Ok(Atom {
            from,
            lang,
            mode,
            to,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for text in [
            "lang(a*)",
            "select(src={x}, tgt={y}, lang(a*))",
            "shortest(select(src=*, tgt={'odd name',b}, lang(Transfer.Transfer)))",
            "union(lang(a), radix(lang(b|c)))",
            "group(pair, trail(lang(@fig)))",
            "chain((x, a*, y), (y, simple(b), z))",
            "proj1(chain((x, a*, y)))",
        ] {
            let q = Query::parse(text).unwrap();
            let again = Query::parse(&q.to_string()).unwrap();
            assert_eq!(q, again, "{text}");
        }
    }

    #[test]
    fn select_defaults_and_order() {
        let q = Query::parse("select(tgt={b}, lang(a))").unwrap();
        let Query::Select { src, tgt, .. } = q else {
            panic!()
        };
        assert_eq!(src, Endpoints::All);
        assert_eq!(tgt, Endpoints::Nodes(vec!["b".into()]));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = Query::parse("lang(a|)").unwrap_err();
        assert!(matches!(e, Error::Syntax { offset, .. } if offset >= 5));
        assert!(Query::parse("frobnicate(lang(a))")
            .unwrap_err()
            .is_parse_error());
        assert!(Query::parse("lang(a").is_err());
        assert!(Query::parse("proj1(lang(a))").is_err());
        assert!(Query::parse("lang(a) x").is_err());
    }

    #[test]
    fn quoted_labels_may_hold_delimiters() {
        let q = Query::parse("lang('a,b)'.c)").unwrap();
        let Query::Lang(Lang::Regex(r)) = q else {
            panic!()
        };
        assert_eq!(r, Regex::concat(Regex::label("a,b)"), Regex::label("c")));
    }
}
