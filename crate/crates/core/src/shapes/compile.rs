use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use super::model::{Constraint, Shape, ShapeId, ShapeKind, ShapesGraph, Target};
use crate::rdf::{Decimal, Graph, Iri, ListError, RangeRelation, Term};
use crate::turtle::Document;
use crate::vocab::{rdf, sh};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("invalid shape {shape}: {reason}")]
    InvalidShape { shape: Term, reason: String },
    #[error("shape {from} refers to {to}, which is not described in the shapes graph")]
    DanglingReference { from: Term, to: Term },
    #[error("shape references form a cycle: {}", fmt_cycle(.cycle))]
    CyclicReference { cycle: Vec<Term> },
    #[error("shape {shape} uses unsupported SHACL predicate {predicate}")]
    UnsupportedConstraint { shape: Term, predicate: Iri },
    #[error("shape {shape} has a malformed {predicate}: {reason}")]
    MalformedConstraint { shape: Term, predicate: Iri, reason: String },
    #[error("shape {shape}: malformed list: {source}")]
    MalformedList { shape: Term, source: ListError },
}

fn fmt_cycle(cycle: &[Term]) -> String {
    cycle.iter().map(Term::to_string).collect::<Vec<_>>().join(" -> ")
}

/// SHACL predicates that annotate a shape without constraining it.
const NON_VALIDATING: &[&str] = &[sh::PATH, sh::TARGET_CLASS, sh::TARGET_NODE, sh::ORDER, sh::NAME, sh::DESCRIPTION, sh::MESSAGE];

/// Finds and compiles every shape in `document`.
///
/// A node is a shape if it is typed `sh:NodeShape`/`sh:PropertyShape`, has a
/// `sh:path` or a target, is the object of `sh:property`/`sh:node`/`sh:not`,
/// or is a member of a `sh:or`/`sh:and` list. Nodes with a `sh:path` are
/// property shapes, all others node shapes.
pub fn discover(document: &Document) -> Result<ShapesGraph, ShapeError> {
    compile_graph(&document.graph)
}

pub fn compile_graph(graph: &Graph) -> Result<ShapesGraph, ShapeError> {
    let candidates = candidates(graph)?;
    let mut shapes = IndexMap::new();
    for node in &candidates {
        let shape = compile_shape(node, graph)?;
        shapes.insert(shape.id.clone(), shape);
    }
    let compiled = ShapesGraph { shapes };
    check_reference_kinds(&compiled)?;
    check_acyclic(&compiled)?;
    Ok(compiled)
}

fn candidates(graph: &Graph) -> Result<IndexSet<Term>, ShapeError> {
    let mut found = IndexSet::new();
    for t in graph.iter() {
        let p = t.predicate.as_iri().expect("predicate is an IRI").as_str();
        match p {
            rdf::TYPE if t.object.is_iri_str(sh::NODE_SHAPE) || t.object.is_iri_str(sh::PROPERTY_SHAPE) => {
                found.insert(t.subject.clone());
            }
            sh::PATH | sh::TARGET_CLASS | sh::TARGET_NODE => {
                found.insert(t.subject.clone());
            }
            sh::PROPERTY | sh::NODE | sh::NOT => {
                found.insert(t.object.clone());
            }
            sh::OR | sh::AND => {
                let members = graph
                    .collect_list(t.object)
                    .map_err(|source| ShapeError::MalformedList { shape: t.subject.clone(), source })?;
                found.extend(members);
            }
            _ => {}
        }
    }
    if let Some(literal) = found.iter().find(|t| t.is_literal()) {
        return Err(ShapeError::InvalidShape { shape: literal.clone(), reason: "a literal cannot be a shape".into() });
    }
    Ok(found)
}

fn single_object<'a>(graph: &'a Graph, node: &Term, predicate: &str) -> Result<Option<&'a Term>, ShapeError> {
    let objects = graph.objects_of(node, &Term::iri(predicate));
    match objects.as_slice() {
        [] => Ok(None),
        [one] => Ok(Some(one)),
        _ => Err(malformed(node, predicate, format!("expected one value, found {}", objects.len()))),
    }
}

fn malformed(shape: &Term, predicate: &str, reason: impl Into<String>) -> ShapeError {
    ShapeError::MalformedConstraint { shape: shape.clone(), predicate: Iri::new(predicate).expect("vocabulary IRI"), reason: reason.into() }
}

fn compile_shape(node: &Term, graph: &Graph) -> Result<Shape, ShapeError> {
    let rdf_type = Term::iri(rdf::TYPE);
    let types = graph.objects_of(node, &rdf_type);
    let typed_node_shape = types.iter().any(|t| t.is_iri_str(sh::NODE_SHAPE));
    let typed_property_shape = types.iter().any(|t| t.is_iri_str(sh::PROPERTY_SHAPE));

    let path = match single_object(graph, node, sh::PATH)? {
        None => None,
        Some(Term::Iri(iri)) => Some(iri.clone()),
        Some(Term::BlankNode(_)) => {
            return Err(ShapeError::UnsupportedConstraint {
                shape: node.clone(),
                predicate: Iri::new(sh::PATH).expect("vocabulary IRI"),
            })
        }
        Some(Term::Literal(_)) => return Err(malformed(node, sh::PATH, "a path must be an IRI")),
    };
    let kind = if path.is_some() { ShapeKind::PropertyShape } else { ShapeKind::NodeShape };
    if typed_node_shape && kind == ShapeKind::PropertyShape {
        return Err(ShapeError::InvalidShape { shape: node.clone(), reason: "typed sh:NodeShape but has sh:path".into() });
    }
    if typed_property_shape && kind == ShapeKind::NodeShape {
        return Err(ShapeError::InvalidShape { shape: node.clone(), reason: "typed sh:PropertyShape but has no sh:path".into() });
    }

    let mut targets = Vec::new();
    for t in graph.matching(Some(node), None, None) {
        if t.predicate.is_iri_str(sh::TARGET_CLASS) {
            match t.object {
                Term::Iri(iri) => targets.push(Target::Class(iri.clone())),
                _ => return Err(malformed(node, sh::TARGET_CLASS, "target class must be an IRI")),
            }
        } else if t.predicate.is_iri_str(sh::TARGET_NODE) {
            targets.push(Target::Node(t.object.clone()));
        }
    }

    let order = match single_object(graph, node, sh::ORDER)? {
        None => None,
        Some(term) => Some(
            term.as_literal()
                .and_then(Decimal::from_literal)
                .ok_or_else(|| malformed(node, sh::ORDER, format!("{term} is not a decimal")))?,
        ),
    };

    let constraints = constraints_of(node, kind, graph)?;
    Ok(Shape { id: ShapeId::new(node.clone()), kind, path, targets, constraints, order })
}

/// Compiles the constraints declared on `shape_node`, in document order.
pub fn compile_constraints(shape_node: &Term, document: &Document) -> Result<Vec<Constraint>, ShapeError> {
    let kind = if document.graph.objects_of(shape_node, &Term::iri(sh::PATH)).is_empty() {
        ShapeKind::NodeShape
    } else {
        ShapeKind::PropertyShape
    };
    constraints_of(shape_node, kind, &document.graph)
}

fn constraints_of(node: &Term, kind: ShapeKind, graph: &Graph) -> Result<Vec<Constraint>, ShapeError> {
    let mut constraints = Vec::new();
    for t in graph.matching(Some(node), None, None) {
        let predicate = t.predicate.as_iri().expect("predicate is an IRI").as_str();
        if !predicate.starts_with(sh::NS) || NON_VALIDATING.contains(&predicate) {
            continue;
        }
        let object = t.object;
        let reference = |member: &Term| -> Result<ShapeId, ShapeError> {
            if member.is_literal() {
                return Err(malformed(node, predicate, format!("{member} cannot be a shape")));
            }
            if !graph.has_subject(member) {
                return Err(ShapeError::DanglingReference { from: node.clone(), to: member.clone() });
            }
            Ok(ShapeId::new(member.clone()))
        };
        let list = |head: &Term| -> Result<Vec<ShapeId>, ShapeError> {
            let members = graph
                .collect_list(head)
                .map_err(|source| ShapeError::MalformedList { shape: node.clone(), source })?;
            if members.is_empty() {
                return Err(malformed(node, predicate, "list must not be empty"));
            }
            members.iter().map(reference).collect()
        };
        let range = |relation: RangeRelation| -> Result<Constraint, ShapeError> {
            match object.as_literal() {
                Some(bound) if Decimal::from_literal(bound).is_some() => {
                    Ok(Constraint::Range { relation, bound: bound.clone() })
                }
                _ => Err(malformed(node, predicate, format!("{object} is not a numeric bound"))),
            }
        };
        let iri_param = || -> Result<Iri, ShapeError> {
            object.as_iri().cloned().ok_or_else(|| malformed(node, predicate, format!("{object} is not an IRI")))
        };

        let constraint = match predicate {
            sh::MIN_COUNT | sh::MAX_COUNT => {
                if kind == ShapeKind::NodeShape {
                    return Err(malformed(node, predicate, "cardinality applies to property shapes only"));
                }
                let n = object
                    .as_literal()
                    .map(|l| l.lexical().strip_prefix('+').unwrap_or(l.lexical()))
                    .filter(|lex| !lex.is_empty() && lex.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|lex| lex.parse::<u64>().ok())
                    .ok_or_else(|| malformed(node, predicate, format!("{object} is not a non-negative integer")))?;
                if predicate == sh::MIN_COUNT {
                    Constraint::MinCount(n)
                } else {
                    Constraint::MaxCount(n)
                }
            }
            sh::DATATYPE => Constraint::Datatype(iri_param()?),
            sh::CLASS => Constraint::Class(iri_param()?),
            sh::HAS_VALUE => Constraint::HasValue(object.clone()),
            sh::MIN_INCLUSIVE => range(RangeRelation::MinInclusive)?,
            sh::MAX_INCLUSIVE => range(RangeRelation::MaxInclusive)?,
            sh::MIN_EXCLUSIVE => range(RangeRelation::MinExclusive)?,
            sh::MAX_EXCLUSIVE => range(RangeRelation::MaxExclusive)?,
            sh::AND => Constraint::And(list(object)?),
            sh::OR => Constraint::Or(list(object)?),
            sh::NOT => Constraint::Not(reference(object)?),
            sh::PROPERTY => Constraint::Property(reference(object)?),
            sh::NODE => Constraint::Node(reference(object)?),
            _ => {
                return Err(ShapeError::UnsupportedConstraint {
                    shape: node.clone(),
                    predicate: Iri::new(predicate).expect("parsed IRI"),
                })
            }
        };
        constraints.push(constraint);
    }
    Ok(constraints)
}

fn check_reference_kinds(shapes: &ShapesGraph) -> Result<(), ShapeError> {
    for shape in shapes.shapes() {
        for c in &shape.constraints {
            let (member, expected) = match c {
                Constraint::Property(m) => (m, ShapeKind::PropertyShape),
                Constraint::Node(m) => (m, ShapeKind::NodeShape),
                _ => continue,
            };
            if shapes.resolve(member).kind != expected {
                return Err(ShapeError::InvalidShape {
                    shape: member.term().clone(),
                    reason: format!("referenced through sh:{} but is a {:?}", c.component().name(), shapes.resolve(member).kind),
                });
            }
        }
    }
    Ok(())
}

fn check_acyclic(shapes: &ShapesGraph) -> Result<(), ShapeError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    fn visit<'a>(
        id: &'a ShapeId,
        shapes: &'a ShapesGraph,
        marks: &mut IndexMap<&'a ShapeId, Mark>,
        stack: &mut Vec<&'a ShapeId>,
    ) -> Result<(), ShapeError> {
        match marks.get(id) {
            Some(Mark::Done) => return Ok(()),
            Some(Mark::Open) => {
                let start = stack.iter().position(|s| *s == id).unwrap_or(0);
                let mut cycle: Vec<Term> = stack[start..].iter().map(|s| s.term().clone()).collect();
                cycle.push(id.term().clone());
                return Err(ShapeError::CyclicReference { cycle });
            }
            None => {}
        }
        marks.insert(id, Mark::Open);
        stack.push(id);
        for c in &shapes.resolve(id).constraints {
            for member in c.references() {
                visit(member, shapes, marks, stack)?;
            }
        }
        stack.pop();
        marks.insert(id, Mark::Done);
        Ok(())
    }

    let mut marks = IndexMap::new();
    for shape in shapes.shapes() {
        visit(&shape.id, shapes, &mut marks, &mut Vec::new())?;
    }
    Ok(())
}

/// Writes the shape model back out as SHACL triples.
pub fn to_graph(shapes: &ShapesGraph) -> Graph {
    let mut graph = Graph::new();
    let rdf_type = Term::iri(rdf::TYPE);
    // Type triples first, so every shape node is known before lists allocate
    // fresh blank nodes.
    for shape in shapes.shapes() {
        let class = match shape.kind {
            ShapeKind::NodeShape => sh::NODE_SHAPE,
            ShapeKind::PropertyShape => sh::PROPERTY_SHAPE,
        };
        graph.insert_terms(shape.id.term(), &rdf_type, &Term::iri(class));
    }
    for shape in shapes.shapes() {
        let node = shape.id.term();
        let put = |graph: &mut Graph, predicate: &str, object: Term| {
            graph.insert_terms(node, &Term::iri(predicate), &object);
        };
        if let Some(path) = &shape.path {
            put(&mut graph, sh::PATH, Term::Iri(path.clone()));
        }
        for target in &shape.targets {
            match target {
                Target::Class(c) => put(&mut graph, sh::TARGET_CLASS, Term::Iri(c.clone())),
                Target::Node(n) => put(&mut graph, sh::TARGET_NODE, n.clone()),
            }
        }
        if let Some(order) = &shape.order {
            let datatype = if order.is_integer() { crate::vocab::xsd::INTEGER } else { crate::vocab::xsd::DECIMAL };
            let lit = crate::rdf::Literal::typed(order.to_string(), Iri::new(datatype).expect("xsd IRI"));
            put(&mut graph, sh::ORDER, Term::Literal(lit));
        }
        for c in &shape.constraints {
            let count = |n: u64| Term::Literal(crate::rdf::Literal::integer(n as i64));
            match c {
                Constraint::MinCount(n) => put(&mut graph, sh::MIN_COUNT, count(*n)),
                Constraint::MaxCount(n) => put(&mut graph, sh::MAX_COUNT, count(*n)),
                Constraint::Datatype(d) => put(&mut graph, sh::DATATYPE, Term::Iri(d.clone())),
                Constraint::Class(k) => put(&mut graph, sh::CLASS, Term::Iri(k.clone())),
                Constraint::HasValue(v) => put(&mut graph, sh::HAS_VALUE, v.clone()),
                Constraint::Range { relation, bound } => {
                    let predicate = match relation {
                        RangeRelation::MinInclusive => sh::MIN_INCLUSIVE,
                        RangeRelation::MaxInclusive => sh::MAX_INCLUSIVE,
                        RangeRelation::MinExclusive => sh::MIN_EXCLUSIVE,
                        RangeRelation::MaxExclusive => sh::MAX_EXCLUSIVE,
                    };
                    put(&mut graph, predicate, Term::Literal(bound.clone()));
                }
                Constraint::And(members) | Constraint::Or(members) => {
                    let terms: Vec<Term> = members.iter().map(|m| m.term().clone()).collect();
                    let head = graph.insert_list(&terms);
                    let predicate = if matches!(c, Constraint::And(_)) { sh::AND } else { sh::OR };
                    put(&mut graph, predicate, head);
                }
                Constraint::Not(m) => put(&mut graph, sh::NOT, m.term().clone()),
                Constraint::Property(m) => put(&mut graph, sh::PROPERTY, m.term().clone()),
                Constraint::Node(m) => put(&mut graph, sh::NODE, m.term().clone()),
            }
        }
    }
    graph
}
