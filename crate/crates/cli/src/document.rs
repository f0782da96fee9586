//! The line-oriented document format: parsing and serialization.
//!
//! A document is a sequence of blocks. Each block opens with an unindented
//! header `KIND NAME key=value…`, continues with indented entry lines
//! `KEYWORD ARG…`, and closes with a line holding only `end`. `#` starts a
//! comment. See `docs/format.md` for the grammar.

use std::fmt;
use std::str::FromStr;

use crate::error::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Group,
    Category,
    GAction,
    SSet,
    Functor,
    Eta,
    Map,
}

impl Kind {
    pub const ALL: [Kind; 7] = [Kind::Group, Kind::Category, Kind::GAction, Kind::SSet, Kind::Functor, Kind::Eta, Kind::Map];

    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Category => "category",
            Kind::GAction => "gaction",
            Kind::SSet => "sset",
            Kind::Functor => "functor",
            Kind::Eta => "eta",
            Kind::Map => "map",
        }
    }

    /// Header attributes this kind accepts; `required` ones must appear.
    fn attributes(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Kind::Group => (&[], &["shape", "from"]),
            Kind::Category => (&[], &["shape", "from"]),
            Kind::GAction => (&["category", "group"], &["from"]),
            Kind::SSet => (&["top"], &["group", "shape", "from"]),
            Kind::Functor => (&["domain"], &["variance", "from"]),
            Kind::Eta => (&["functor"], &["from"]),
            Kind::Map => (&["source", "target"], &["from"]),
        }
    }

    /// Entry keywords with their minimum and maximum argument counts.
    fn entries(self) -> &'static [(&'static str, usize, usize)] {
        const ANY: usize = usize::MAX;
        match self {
            Kind::Group => &[("row", 1, ANY)],
            Kind::Category => &[("objects", 1, 1), ("morphism", 3, 3), ("identity", 2, 2), ("comp", 3, 3)],
            Kind::GAction => &[("objects", 1, ANY), ("morphisms", 1, ANY)],
            Kind::SSet => &[("count", 2, 2), ("face", 2, ANY), ("degen", 2, ANY), ("act", 2, ANY)],
            Kind::Functor => &[("value", 2, 2), ("map", 2, 2)],
            Kind::Eta => &[("entry", 3, 3)],
            Kind::Map => &[("level", 1, ANY), ("objects", 0, ANY), ("morphisms", 0, ANY)],
        }
    }
}

impl FromStr for Kind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Kind::ALL.into_iter().find(|k| k.keyword() == s).ok_or(())
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// One indented line of a block. `line` is 1-based and 0 for entries that
/// were built in memory; it takes no part in equality.
#[derive(Clone, Debug, Eq)]
pub struct Entry {
    pub keyword: String,
    pub args: Vec<String>,
    pub line: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.keyword == other.keyword && self.args == other.args
    }
}

impl Entry {
    pub fn new(keyword: &str, args: impl IntoIterator<Item = impl ToString>) -> Self {
        Self { keyword: keyword.into(), args: args.into_iter().map(|a| a.to_string()).collect(), line: 0 }
    }
}

#[derive(Clone, Debug, Eq)]
pub struct Block {
    pub kind: Kind,
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub entries: Vec<Entry>,
    pub line: usize,
}

impl PartialEq for Block {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.name == other.name && self.attrs == other.attrs && self.entries == other.entries
    }
}

impl Block {
    pub fn new(kind: Kind, name: impl Into<String>) -> Self {
        Self { kind, name: name.into(), attrs: Vec::new(), entries: Vec::new(), line: 0 }
    }

    pub fn attr(mut self, key: &str, value: impl ToString) -> Self {
        self.attrs.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, keyword: &str, args: impl IntoIterator<Item = impl ToString>) {
        self.entries.push(Entry::new(keyword, args));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries_named<'a>(&'a self, keyword: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.keyword == keyword)
    }

    pub fn error(&self, message: impl Into<String>) -> InputError {
        InputError::at(self.line, format!("{} {}: {}", self.kind, self.name, message.into()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(move |b| b.kind == kind)
    }

    /// Appends `block`, refusing a name that is already taken.
    pub fn append(&mut self, block: Block) -> Result<(), InputError> {
        if self.block(&block.name).is_some() {
            return Err(InputError::new(format!("a block named {} already exists", block.name)));
        }
        self.blocks.push(block);
        Ok(())
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_.:-".contains(c))
}

pub fn parse(text: &str) -> Result<Document, InputError> {
    let mut doc = Document::default();
    let mut open: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with(' ') || content.starts_with('\t');
        let mut words = content.split_whitespace();
        let first = words.next().expect("nonblank line");
        let rest: Vec<&str> = words.collect();
        match (&mut open, indented) {
            (Some(_), false) if first == "end" => {
                if !rest.is_empty() {
                    return Err(InputError::at(line, "`end` takes no arguments"));
                }
                let block = open.take().expect("open block");
                if doc.block(&block.name).is_some() {
                    return Err(InputError::at(block.line, format!("duplicate block name {}", block.name)));
                }
                doc.blocks.push(block);
            }
            (Some(block), true) => {
                let spec = block.kind.entries().iter().find(|(k, _, _)| *k == first);
                let Some(&(_, lo, hi)) = spec else {
                    let known: Vec<&str> = block.kind.entries().iter().map(|e| e.0).collect();
                    return Err(InputError::at(
                        line,
                        format!("unknown keyword `{first}` in {} block (expected one of {})", block.kind, known.join(", ")),
                    ));
                };
                if rest.len() < lo || rest.len() > hi {
                    let want = if lo == hi { lo.to_string() } else if hi == usize::MAX { format!("at least {lo}") } else { format!("{lo} to {hi}") };
                    return Err(InputError::at(line, format!("`{first}` takes {want} arguments, found {}", rest.len())));
                }
                block.entries.push(Entry { keyword: first.into(), args: rest.iter().map(|s| s.to_string()).collect(), line });
            }
            (Some(block), false) => {
                return Err(InputError::at(line, format!("block {} opened on line {} is missing `end`", block.name, block.line)));
            }
            (None, true) => return Err(InputError::at(line, "indented entry outside a block")),
            (None, false) => open = Some(parse_header(first, &rest, line)?),
        }
    }
    if let Some(block) = open {
        return Err(InputError::at(block.line, format!("block {} is missing `end`", block.name)));
    }
    Ok(doc)
}

fn parse_header(first: &str, rest: &[&str], line: usize) -> Result<Block, InputError> {
    let kind: Kind = first.parse().map_err(|_| {
        let known: Vec<&str> = Kind::ALL.iter().map(|k| k.keyword()).collect();
        InputError::at(line, format!("unknown block kind `{first}` (expected one of {})", known.join(", ")))
    })?;
    let Some((&name, attrs)) = rest.split_first() else {
        return Err(InputError::at(line, format!("{kind} header needs a name")));
    };
    if !valid_name(name) || name.contains('=') || name == "id" {
        return Err(InputError::at(line, format!("invalid block name `{name}`")));
    }
    let (required, optional) = kind.attributes();
    let mut block = Block { kind, name: name.into(), attrs: Vec::new(), entries: Vec::new(), line };
    for a in attrs {
        let Some((k, v)) = a.split_once('=') else {
            return Err(InputError::at(line, format!("header attribute `{a}` is not key=value")));
        };
        if !required.contains(&k) && !optional.contains(&k) {
            return Err(InputError::at(line, format!("unknown attribute `{k}` for {kind}")));
        }
        if block.get(k).is_some() {
            return Err(InputError::at(line, format!("attribute `{k}` given twice")));
        }
        if v.is_empty() {
            return Err(InputError::at(line, format!("attribute `{k}` has an empty value")));
        }
        block.attrs.push((k.into(), v.into()));
    }
    for r in required {
        if block.get(r).is_none() {
            return Err(InputError::at(line, format!("{kind} {name} is missing attribute `{r}`")));
        }
    }
    Ok(block)
}

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for (i, b) in doc.blocks.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&b.to_string());
    }
    out
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.name)?;
        for (k, v) in &self.attrs {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for e in &self.entries {
            write!(f, "  {}", e.keyword)?;
            for a in &e.args {
                write!(f, " {a}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "end")
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_block_parses() {
        let d = parse("group Z2\n  row 0 1\n  row 1 0\nend\n").unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].entries[1].args, vec!["1", "0"]);
        assert_eq!(d.blocks[0].entries[1].line, 3);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let d = parse("# header\n\ngroup T # trivial\n  row 0 # only row\nend\n").unwrap();
        assert_eq!(d.blocks[0].entries, vec![Entry::new("row", ["0"])]);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let e = parse("group Z2\n  row 0 1\n  rwo 1 0\nend\n").unwrap_err();
        assert_eq!(e.line, Some(3));
        assert!(e.message.contains("unknown keyword `rwo`"));
        let e = parse("category C\n  morphism 0 0\nend\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(e.message.contains("takes 3 arguments"));
        let e = parse("sset X\nend\n").unwrap_err();
        assert!(e.message.contains("missing attribute `top`"));
        let e = parse("group Z2\n  row 0\n").unwrap_err();
        assert!(e.message.contains("missing `end`"));
    }

    #[test]
    fn serialization_round_trips() {
        let text = "group Z2\n  row 0 1\n  row 1 0\nend\n\nsset X top=1 shape=point\nend\n";
        let d = parse(text).unwrap();
        assert_eq!(serialize(&d), text);
        assert_eq!(parse(&serialize(&d)).unwrap(), d);
    }
}
