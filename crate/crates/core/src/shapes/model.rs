use std::fmt;

use indexmap::IndexMap;
use serde::{Serialize, Serializer};

use crate::rdf::{Decimal, Iri, Literal, RangeRelation, Term};
use crate::vocab::sh;

/// Identity of a shape: its node in the shapes graph. Anonymous shapes carry
/// the (parser-assigned) blank node label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeId(Term);

impl ShapeId {
    pub fn new(term: Term) -> Self {
        ShapeId(term)
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn is_anonymous(&self) -> bool {
        self.0.is_blank()
    }
}

impl fmt::Display for ShapeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ShapeId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&Term::Literal(self.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShapeKind {
    NodeShape,
    PropertyShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "camelCase")]
pub enum Target {
    Class(Iri),
    Node(Term),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "camelCase")]
pub enum Constraint {
    MinCount(u64),
    MaxCount(u64),
    Datatype(Iri),
    Class(Iri),
    HasValue(Term),
    Range { relation: RangeRelation, bound: Literal },
    And(Vec<ShapeId>),
    Or(Vec<ShapeId>),
    Not(ShapeId),
    Property(ShapeId),
    Node(ShapeId),
}

impl Constraint {
    pub fn component(&self) -> ConstraintComponent {
        match self {
            Constraint::MinCount(_) => ConstraintComponent::MinCount,
            Constraint::MaxCount(_) => ConstraintComponent::MaxCount,
            Constraint::Datatype(_) => ConstraintComponent::Datatype,
            Constraint::Class(_) => ConstraintComponent::Class,
            Constraint::HasValue(_) => ConstraintComponent::HasValue,
            Constraint::Range { relation, .. } => match relation {
                RangeRelation::MinInclusive => ConstraintComponent::MinInclusive,
                RangeRelation::MaxInclusive => ConstraintComponent::MaxInclusive,
                RangeRelation::MinExclusive => ConstraintComponent::MinExclusive,
                RangeRelation::MaxExclusive => ConstraintComponent::MaxExclusive,
            },
            Constraint::And(_) => ConstraintComponent::And,
            Constraint::Or(_) => ConstraintComponent::Or,
            Constraint::Not(_) => ConstraintComponent::Not,
            Constraint::Property(_) => ConstraintComponent::Property,
            Constraint::Node(_) => ConstraintComponent::Node,
        }
    }

    /// Shapes this constraint refers to, in list order.
    pub fn references(&self) -> Vec<&ShapeId> {
        match self {
            Constraint::And(members) | Constraint::Or(members) => members.iter().collect(),
            Constraint::Not(m) | Constraint::Property(m) | Constraint::Node(m) => vec![m],
            _ => Vec::new(),
        }
    }

    /// False for constraints that are satisfied through other shapes.
    pub fn is_atomic(&self) -> bool {
        self.references().is_empty()
    }

    /// Short form such as `minInclusive 1080` or `or (3 alternatives)`.
    pub fn summary(&self) -> String {
        let name = self.component().name();
        match self {
            Constraint::MinCount(n) | Constraint::MaxCount(n) => format!("{name} {n}"),
            Constraint::Datatype(iri) | Constraint::Class(iri) => format!("{name} {}", iri.local_name()),
            Constraint::HasValue(v) => format!("{name} {}", v.short_label()),
            Constraint::Range { bound, .. } => format!("{name} {}", bound.lexical()),
            Constraint::And(m) | Constraint::Or(m) => format!("{name} ({} members)", m.len()),
            Constraint::Not(m) | Constraint::Property(m) | Constraint::Node(m) => {
                format!("{name} {}", m.term().short_label())
            }
        }
    }
}

/// The SHACL constraint component a constraint instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintComponent {
    MinCount,
    MaxCount,
    Datatype,
    Class,
    HasValue,
    MinInclusive,
    MaxInclusive,
    MinExclusive,
    MaxExclusive,
    And,
    Or,
    Not,
    Property,
    Node,
}

impl ConstraintComponent {
    pub fn name(self) -> &'static str {
        match self {
            ConstraintComponent::MinCount => "minCount",
            ConstraintComponent::MaxCount => "maxCount",
            ConstraintComponent::Datatype => "datatype",
            ConstraintComponent::Class => "class",
            ConstraintComponent::HasValue => "hasValue",
            ConstraintComponent::MinInclusive => "minInclusive",
            ConstraintComponent::MaxInclusive => "maxInclusive",
            ConstraintComponent::MinExclusive => "minExclusive",
            ConstraintComponent::MaxExclusive => "maxExclusive",
            ConstraintComponent::And => "and",
            ConstraintComponent::Or => "or",
            ConstraintComponent::Not => "not",
            ConstraintComponent::Property => "property",
            ConstraintComponent::Node => "node",
        }
    }

    pub fn iri(self) -> String {
        let name = self.name();
        let mut chars = name.chars();
        let first = chars.next().expect("non-empty").to_ascii_uppercase();
        format!("{}{first}{}ConstraintComponent", sh::NS, chars.as_str())
    }
}

impl Serialize for ConstraintComponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.iri())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub id: ShapeId,
    pub kind: ShapeKind,
    /// Present exactly for property shapes.
    pub path: Option<Iri>,
    pub targets: Vec<Target>,
    pub constraints: Vec<Constraint>,
    /// `sh:order`; carried for diagnosis, never affects conformance.
    pub order: Option<Decimal>,
}

impl Shape {
    pub fn is_property_shape(&self) -> bool {
        self.kind == ShapeKind::PropertyShape
    }

    pub fn order_of(&self) -> Option<&Decimal> {
        self.order.as_ref()
    }
}

/// A compiled, acyclic set of shapes in discovery order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShapesGraph {
    pub(crate) shapes: IndexMap<ShapeId, Shape>,
}

impl ShapesGraph {
    pub fn get(&self, id: &ShapeId) -> Option<&Shape> {
        self.shapes.get(id)
    }

    /// Looks a shape up by the IRI of its node.
    pub fn by_iri(&self, iri: &Iri) -> Option<&Shape> {
        self.shapes.get(&ShapeId::new(Term::Iri(iri.clone())))
    }

    /// Resolves a reference; references are checked at compile time.
    pub(crate) fn resolve(&self, id: &ShapeId) -> &Shape {
        self.shapes.get(id).unwrap_or_else(|| panic!("unresolved shape reference {id}"))
    }

    pub fn shapes(&self) -> impl Iterator<Item = &Shape> {
        self.shapes.values()
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// Shapes with at least one target, in discovery order.
    pub fn entry_points(&self) -> Vec<&Shape> {
        self.shapes.values().filter(|s| !s.targets.is_empty()).collect()
    }
}
