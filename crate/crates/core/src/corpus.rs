//! The bundled regulation corpus: certificate shapes, a position ontology,
//! sample CVs and the expected outcome for each.

use std::path::PathBuf;

use serde::Deserialize;
use thiserror::Error;

use crate::rdf::{Iri, PrefixMap, Term};
use crate::shapes::{compile_graph, ShapeError, ShapeId, ShapesGraph};
use crate::turtle::{parse, resolve, Document, ParseError, ResolveError};

/// Node shape and property shape in their smallest form.
pub const MINIMAL_VESSEL_SHAPES: &str = "\
:VesselShape
  a sh:NodeShape ;
  sh:targetClass :Vessel ;
  sh:property :GTShape .

:GTShape
  a sh:PropertyShape ;
  sh:path :grossTonnage .";

pub const GROSS_TONNAGE_SHAPE: &str = "\
:GT500
  a sh:PropertyShape ;
  sh:path :grossTonnage ;
  sh:minInclusive 500 ;
  sh:datatype unit:GT ;
  sh:minCount 1 ;
  sh:maxCount 1 .";

pub const SERVICE_PROPERTY_SHAPES: &str = "\
:Duration1080
  a sh:PropertyShape ;
  sh:path :duration ;
  sh:minInclusive 1080 ;
  sh:datatype unit:DAY .

:PositionDO
  a sh:PropertyShape ;
  sh:path :inPosition ;
  sh:class :DeckOfficerPosition .

:TradeAreaBF
  a sh:PropertyShape ;
  sh:path :tradeArea ;
  sh:hasValue :BankFishing .";

/// As published, the target class lacks its prefix; see [`normalize_excerpt`].
pub const SERVICE_NODE_SHAPE: &str = "\
:SeagoingServiceURI
  a sh:NodeShape ;
  sh:targetClass SGS_500_1080_DO ;
  sh:property :Duration1080, :PositionDO, :TradeAreaBF, :GT500 .";

pub const CERTIFICATE_ALTERNATIVES: &str = "\
sh:or (
  [ sh:and ( # first alternative
    [ sh:or (cert:PS_D2A0 cert:PS_D2B0 cert:PS_D3A0
             cert:PS_D3B0 cert:PS_D4B0 cert:PS_D4F0) ]
    [ sh:path :hasSeagoingServiceRequirement ;
      sh:hasValue :SGS_500_1080_DO ;
      sh:order 1 ; ]
  )]

  [ sh:and ( # second alternative
    [ sh:or (cert:PS_D2A0 cert:PS_D2B0 cert:PS_D3A0 cert:PS_D3B0) ]
    [ sh:path :hasSeagoingServiceRequirement ;
      sh:hasValue :SGS_500_720_DO ;
      sh:order 2 ; ]
    [ sh:path :hasSeagoingServiceRequirement ;
      sh:hasValue :SGS_500_360_CO ;
      sh:order 2 ; ]
  )]
) ;";

/// Each excerpt with the corpus file expected to contain it.
pub const EXCERPTS: &[(&str, &str)] = &[
    ("shapes/vessel.ttl", MINIMAL_VESSEL_SHAPES),
    ("shapes/seagoing-service.ttl", GROSS_TONNAGE_SHAPE),
    ("shapes/seagoing-service.ttl", SERVICE_PROPERTY_SHAPES),
    ("shapes/seagoing-service.ttl", SERVICE_NODE_SHAPE),
    ("shapes/certificate-deck-officer-class1.ttl", CERTIFICATE_ALTERNATIVES),
];

pub const PREAMBLE: &str = include_str!("../corpus/preamble.ttl");

const FILES: &[(&str, &str)] = &[
    ("shapes/vessel.ttl", include_str!("../corpus/shapes/vessel.ttl")),
    ("shapes/seagoing-service.ttl", include_str!("../corpus/shapes/seagoing-service.ttl")),
    ("shapes/seagoing-service-reduced.ttl", include_str!("../corpus/shapes/seagoing-service-reduced.ttl")),
    ("shapes/certificates.ttl", include_str!("../corpus/shapes/certificates.ttl")),
    ("shapes/certificate-deck-officer-class1.ttl", include_str!("../corpus/shapes/certificate-deck-officer-class1.ttl")),
    ("ontology/positions.ttl", include_str!("../corpus/ontology/positions.ttl")),
    ("data/complete-alt1.ttl", include_str!("../corpus/data/complete-alt1.ttl")),
    ("data/complete-alt2.ttl", include_str!("../corpus/data/complete-alt2.ttl")),
    ("data/no-certs.ttl", include_str!("../corpus/data/no-certs.ttl")),
    ("data/underweight-vessel.ttl", include_str!("../corpus/data/underweight-vessel.ttl")),
    ("data/short-duration.ttl", include_str!("../corpus/data/short-duration.ttl")),
    ("data/wrong-position.ttl", include_str!("../corpus/data/wrong-position.ttl")),
    ("data/empty-cv.ttl", include_str!("../corpus/data/empty-cv.ttl")),
    ("data/boundary-exact.ttl", include_str!("../corpus/data/boundary-exact.ttl")),
];

const MANIFEST: &str = include_str!("../corpus/manifest.json");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("no corpus file {0}")]
    MissingFile(String),
    #[error("{file}: {source}")]
    Parse { file: String, source: ParseError },
    #[error("{files}: {source}")]
    Compile { files: String, source: ShapeError },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShapeFile {
    pub path: String,
    pub requires: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ExpectedResult {
    pub component: String,
    pub path: Option<String>,
    pub focus: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GapQuery {
    pub focus: String,
    pub shape: String,
    pub exit: i32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Fixture {
    pub name: String,
    pub data: Vec<String>,
    pub conforms: bool,
    pub results: Vec<ExpectedResult>,
    pub validate_exit: i32,
    pub gap: GapQuery,
}

impl Fixture {
    pub fn report_golden(&self) -> PathBuf {
        dir().join("golden").join(format!("{}.report.ttl", self.name))
    }

    pub fn gap_golden(&self) -> PathBuf {
        dir().join("golden").join(format!("{}.gap.json", self.name))
    }

    pub fn data_document(&self) -> Result<Document, CorpusError> {
        merged(&self.data)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub shape_files: Vec<ShapeFile>,
    pub shapes: Vec<String>,
    pub fixtures: Vec<Fixture>,
}

impl Manifest {
    pub fn fixture(&self, name: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| f.name == name)
    }
}

pub fn manifest() -> Manifest {
    serde_json::from_str(MANIFEST).expect("bundled manifest is valid")
}

/// Directory holding the corpus files on disk.
pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Contents of a corpus file, by path relative to [`dir`].
pub fn file(path: &str) -> Option<&'static str> {
    FILES.iter().find(|(p, _)| *p == path).map(|(_, text)| *text)
}

pub fn files() -> impl Iterator<Item = (&'static str, &'static str)> {
    FILES.iter().copied()
}

pub fn load(path: &str) -> Result<Document, CorpusError> {
    let text = file(path).ok_or_else(|| CorpusError::MissingFile(path.to_owned()))?;
    parse(text).map_err(|source| CorpusError::Parse { file: path.to_owned(), source })
}

/// Parses and unions several corpus files.
pub fn merged<S: AsRef<str>>(paths: &[S]) -> Result<Document, CorpusError> {
    let mut doc = Document::default();
    for path in paths {
        doc.merge(&load(path.as_ref())?);
    }
    Ok(doc)
}

pub fn compile<S: AsRef<str>>(paths: &[S]) -> Result<ShapesGraph, CorpusError> {
    let doc = merged(paths)?;
    compile_graph(&doc.graph).map_err(|source| CorpusError::Compile {
        files: paths.iter().map(|p| p.as_ref()).collect::<Vec<_>>().join(", "),
        source,
    })
}

/// All certificate and seagoing-service shapes, compiled together.
pub fn build_certificate_shapes() -> Result<ShapesGraph, CorpusError> {
    compile(&manifest().shapes)
}

pub fn build_cv_fixtures() -> Vec<Fixture> {
    manifest().fixtures
}

/// Prefixes shared by every corpus file.
pub fn prefixes() -> PrefixMap {
    parse(PREAMBLE).expect("preamble parses").prefixes
}

/// Expands a prefixed name such as `:sailor1` with the corpus prefixes.
pub fn iri(prefixed: &str) -> Result<Iri, ResolveError> {
    resolve(prefixed, &prefixes())
}

pub fn term(prefixed: &str) -> Term {
    Term::Iri(iri(prefixed).unwrap_or_else(|e| panic!("{e}")))
}

pub fn shape_id(prefixed: &str) -> ShapeId {
    ShapeId::new(term(prefixed))
}

/// Makes an excerpt valid Turtle: a bare target class name gets the
/// default prefix.
pub fn normalize_excerpt(excerpt: &str) -> String {
    excerpt.replace("sh:targetClass SGS_", "sh:targetClass :SGS_")
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Whether `excerpt`, once normalized, occurs in `text` up to whitespace.
pub fn contains_excerpt(text: &str, excerpt: &str) -> bool {
    collapse_whitespace(text).contains(&collapse_whitespace(&normalize_excerpt(excerpt)))
}

/// Parses a complete excerpt with the corpus preamble.
pub fn parse_excerpt(excerpt: &str) -> Result<Document, ParseError> {
    parse(&format!("{PREAMBLE}\n{}", normalize_excerpt(excerpt)))
}
