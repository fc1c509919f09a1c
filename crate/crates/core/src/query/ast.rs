use std::fmt;

use crate::automata::Regex;
use crate::pmr::GroupKind;

/// A language leaf: an inline regular expression or a named automaton
/// supplied with the evaluation options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lang {
    Regex(Regex),
    Named(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Shortest,
    Radix,
    Simple,
    Trail,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Shortest => "shortest",
            Mode::Radix => "radix",
            Mode::Simple => "simple",
            Mode::Trail => "trail",
        }
    }
}

/// Endpoint selection by node name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoints {
    All,
    Nodes(Vec<String>),
}

/// One atom `(from, lang, to)` of a chain, optionally filtered to simple
/// paths or trails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub from: String,
    pub lang: Lang,
    pub mode: Option<Mode>,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Lang(Lang),
    Select {
        src: Endpoints,
        tgt: Endpoints,
        child: Box<Query>,
    },
    Mode(Mode, Box<Query>),
    Union(Vec<Query>),
    Group(GroupKind, Box<Query>),
    Chain(Vec<Atom>),
    Proj1(Vec<Atom>),
}

impl Query {
    pub fn lang(re: &str) -> crate::Result<Query> {
        Ok(Query::Lang(Lang::Regex(Regex::parse(re)?)))
    }

    pub fn select(src: Endpoints, tgt: Endpoints, child: Query) -> Query {
        Query::Select {
            src,
            tgt,
            child: Box::new(child),
        }
    }

    pub fn mode(m: Mode, child: Query) -> Query {
        Query::Mode(m, Box::new(child))
    }
}

fn write_name(f: &mut fmt::Formatter<'_>, name: &str) -> fmt::Result {
    if !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
    {
        f.write_str(name)
    } else {
        write!(f, "'{}'", name.replace('\'', "''"))
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lang::Regex(r) => write!(f, "{r}"),
            Lang::Named(n) => {
                f.write_str("@")?;
                write_name(f, n)
            }
        }
    }
}

impl fmt::Display for Endpoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoints::All => f.write_str("*"),
            Endpoints::Nodes(ns) => {
                f.write_str("{")?;
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_name(f, n)?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_name(f, &self.from)?;
        f.write_str(", ")?;
        match self.mode {
            Some(m) => write!(f, "{}({})", m.name(), self.lang)?,
            None => write!(f, "{}", self.lang)?,
        }
        f.write_str(", ")?;
        write_name(f, &self.to)?;
        f.write_str(")")
    }
}

fn write_atoms(f: &mut fmt::Formatter<'_>, atoms: &[Atom]) -> fmt::Result {
    f.write_str("chain(")?;
    for (i, a) in atoms.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Lang(l) => write!(f, "lang({l})"),
            Query::Select { src, tgt, child } => {
                write!(f, "select(src={src}, tgt={tgt}, {child})")
            }
            Query::Mode(m, child) => write!(f, "{}({child})", m.name()),
            Query::Union(parts) => {
                f.write_str("union(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            Query::Group(k, child) => write!(f, "group({}, {child})", k.name()),
            Query::Chain(atoms) => write_atoms(f, atoms),
            Query::Proj1(atoms) => {
                f.write_str("proj1(")?;
                write_atoms(f, atoms)?;
                f.write_str(")")
            }
        }
    }
}
