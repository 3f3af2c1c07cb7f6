pub mod cli;
pub mod corpus;
pub mod gap;
pub mod rdf;
pub mod shapes;
pub mod turtle;
pub mod validate;
pub mod vocab;
