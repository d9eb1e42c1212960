//! A functional-syntax front end for the supported ontology fragment, plus
//! the seed-signature file format.

mod reader;
mod writer;

use std::fmt;

use crate::model::{Entity, Name, Ontology, Signature};

pub use reader::{parse_ontology_with, ParseOptions, ParsedOntology};
pub use writer::serialize_ontology;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Syntax,
    UnsupportedConstruct,
    UnknownEntity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
    pub kind: ParseErrorKind,
    /// The offending keyword, for unsupported constructs.
    pub construct: Option<String>,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
            kind,
            construct: None,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parse with undeclared names allowed.
pub fn parse_ontology(text: &str) -> Result<Ontology, Vec<ParseError>> {
    parse_ontology_with(text, &ParseOptions::default()).map(|p| p.ontology)
}

/// Reduce an IRI or prefixed name to its local part.
pub(crate) fn local_name(raw: &str) -> &str {
    let s = raw.strip_prefix('<').and_then(|s| s.strip_suffix('>')).unwrap_or(raw);
    if raw.starts_with('<') {
        s.rsplit(['#', '/']).next().unwrap_or(s)
    } else {
        s.rsplit(':').next().unwrap_or(s)
    }
}

/// Cut a line at the first `#` that is not inside an IRI.
pub(crate) fn strip_comment(line: &str) -> &str {
    let mut in_iri = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '<' => in_iri = true,
            '>' => in_iri = false,
            '#' if !in_iri => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Parse a seed signature: one entity per line, `#` starts a comment, and an
/// optional `C:`, `R:` or `I:` prefix fixes the kind. Unprefixed names take
/// every kind they have in `against`.
pub fn parse_signature(text: &str, against: &Ontology) -> Result<Signature, Vec<ParseError>> {
    let known = against.signature();
    let mut sig = Signature::new();
    let mut errors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let entry = strip_comment(line).trim();
        if entry.is_empty() {
            continue;
        }
        let column = line.len() - line.trim_start().len() + 1;
        let (kind, rest) = match entry.split_once(':') {
            Some(("C", rest)) => (Some('C'), rest),
            Some(("R", rest)) => (Some('R'), rest),
            Some(("I", rest)) => (Some('I'), rest),
            _ => (None, entry),
        };
        let name = Name::new(local_name(rest.trim()));
        match kind {
            Some('C') => {
                sig.insert(Entity::Concept(name));
            }
            Some('R') => {
                sig.insert(Entity::Role(name));
            }
            Some(_) => {
                sig.insert(Entity::Individual(name));
            }
            None => {
                let candidates = [
                    Entity::Concept(name.clone()),
                    Entity::Role(name.clone()),
                    Entity::Individual(name.clone()),
                ];
                let mut found = false;
                for e in candidates {
                    if known.contains(&e) {
                        sig.insert(e);
                        found = true;
                    }
                }
                if !found {
                    errors.push(ParseError::new(
                        i + 1,
                        column,
                        ParseErrorKind::UnknownEntity,
                        format!("`{}` does not occur in ontology `{}`", name, against.name()),
                    ));
                }
            }
        }
    }
    if errors.is_empty() {
        Ok(sig)
    } else {
        Err(errors)
    }
}
