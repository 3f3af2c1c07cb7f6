//! Turtle reading and writing for the subset of the syntax that shapes and
//! instance data in this project use.

mod parser;
mod serializer;

use std::fmt;

use thiserror::Error;

use crate::rdf::{Graph, Iri, PrefixMap};

pub use parser::parse;
pub use serializer::serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UndeclaredPrefix,
    BadIri,
    BadLiteral,
    UnterminatedStatement,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ParseErrorKind::UnexpectedToken => "unexpected token",
            ParseErrorKind::UndeclaredPrefix => "undeclared prefix",
            ParseErrorKind::BadIri => "bad IRI",
            ParseErrorKind::BadLiteral => "bad literal",
            ParseErrorKind::UnterminatedStatement => "unterminated statement",
        };
        f.write_str(name)
    }
}

/// Line and column (both 1-based) point at the first offending character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

/// A parsed Turtle document. All IRIs in `graph` are absolute.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub graph: Graph,
    pub prefixes: PrefixMap,
    pub base: Option<Iri>,
}

impl Document {
    pub fn new(graph: Graph, prefixes: PrefixMap) -> Self {
        Document { graph, prefixes, base: None }
    }

    /// Unions `other` into `self`. Blank nodes of `other` stay distinct;
    /// prefixes already declared here keep their namespace.
    pub fn merge(&mut self, other: &Document) {
        self.graph.merge(&other.graph);
        for (prefix, ns) in other.prefixes.iter() {
            if self.prefixes.get(prefix).is_none() {
                self.prefixes.insert(prefix, ns.clone());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("undeclared prefix {0:?}")]
    UndeclaredPrefix(String),
    #[error("{0:?} is not a prefixed name")]
    NotPrefixed(String),
    #[error("{0:?} does not expand to a valid IRI")]
    BadIri(String),
}

/// Expands `prefix:local` against `prefixes`.
pub fn resolve(prefixed_name: &str, prefixes: &PrefixMap) -> Result<Iri, ResolveError> {
    let Some((prefix, local)) = prefixed_name.split_once(':') else {
        return Err(ResolveError::NotPrefixed(prefixed_name.to_owned()));
    };
    let namespace = prefixes.get(prefix).ok_or_else(|| ResolveError::UndeclaredPrefix(prefix.to_owned()))?;
    Iri::new(format!("{}{local}", namespace.as_str())).map_err(|_| ResolveError::BadIri(prefixed_name.to_owned()))
}
