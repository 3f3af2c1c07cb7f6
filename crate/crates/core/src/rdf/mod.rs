//! RDF data model: terms, triples, an indexed in-memory graph, and the query
//! primitives the shapes compiler and validator are built on.

mod graph;
mod iso;
mod numeric;
mod term;

pub use graph::{Graph, ListError};
pub use iso::isomorphic;
pub use numeric::{compare_literal, Comparison, Decimal, RangeRelation};
pub use term::{BlankNode, Iri, Literal, Term, TermError, Triple, TripleRef};
pub(crate) use term::escape_string;

mod prefix;
pub use prefix::PrefixMap;
