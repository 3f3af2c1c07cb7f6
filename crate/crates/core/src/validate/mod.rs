//! Closed-world validation of a data graph against compiled shapes.

mod report;

use indexmap::IndexSet;
use serde::Serialize;

use crate::rdf::{compare_literal, Comparison, Graph, Iri, Term};
use crate::shapes::{Constraint, ConstraintComponent, Shape, ShapeId, ShapeKind, ShapesGraph, Target};

pub use report::report_to_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Severity {
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationResult {
    pub focus_node: Term,
    pub result_path: Option<Iri>,
    pub value: Option<Term>,
    pub source_shape: ShapeId,
    pub source_constraint_component: ConstraintComponent,
    pub source_constraint: Constraint,
    pub message: String,
    pub severity: Severity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub conforms: bool,
    pub results: Vec<ValidationResult>,
}

/// Validates `data` against every shape that has a target.
pub fn validate(shapes: &ShapesGraph, data: &Graph) -> ValidationReport {
    Validator::new(shapes, data).validate()
}

pub struct Validator<'a> {
    shapes: &'a ShapesGraph,
    data: &'a Graph,
}

impl<'a> Validator<'a> {
    pub fn new(shapes: &'a ShapesGraph, data: &'a Graph) -> Self {
        Validator { shapes, data }
    }

    pub fn shapes(&self) -> &'a ShapesGraph {
        self.shapes
    }

    pub fn data(&self) -> &'a Graph {
        self.data
    }

    /// Target nodes of `shape` in the data graph, without duplicates.
    pub fn focus_nodes(&self, shape: &Shape) -> Vec<Term> {
        let mut nodes = IndexSet::new();
        for target in &shape.targets {
            match target {
                Target::Class(class) => nodes.extend(self.data.instances_of(&Term::Iri(class.clone()))),
                Target::Node(node) => {
                    nodes.insert(node.clone());
                }
            }
        }
        nodes.into_iter().collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut results = Vec::new();
        for shape in self.shapes.entry_points() {
            for focus in self.focus_nodes(shape) {
                self.evaluate_shape(shape, &focus, &mut Some(&mut results));
            }
        }
        ValidationReport { conforms: results.is_empty(), results }
    }

    /// Validates one node against one shape, whatever its kind.
    pub fn validate_node(&self, shape: &Shape, focus: &Term) -> (bool, Vec<ValidationResult>) {
        let mut results = Vec::new();
        let ok = self.evaluate_shape(shape, focus, &mut Some(&mut results));
        (ok, results)
    }

    pub fn conforms_node(&self, shape: &Shape, focus: &Term) -> (bool, Vec<ValidationResult>) {
        assert_eq!(shape.kind, ShapeKind::NodeShape, "{} is not a node shape", shape.id);
        self.validate_node(shape, focus)
    }

    pub fn conforms_property(&self, shape: &Shape, focus: &Term) -> (bool, Vec<ValidationResult>) {
        assert_eq!(shape.kind, ShapeKind::PropertyShape, "{} is not a property shape", shape.id);
        self.validate_node(shape, focus)
    }

    /// Whether `node` conforms to `shape`, without collecting results.
    pub fn conforms(&self, shape: &ShapeId, node: &Term) -> bool {
        self.evaluate_shape(self.shapes.resolve(shape), node, &mut None)
    }

    /// Truth of an `and`/`or`/`not` constraint at a single node.
    pub fn conforms_logical(&self, constraint: &Constraint, node: &Term) -> bool {
        match constraint {
            Constraint::And(members) => members.iter().all(|m| self.conforms(m, node)),
            Constraint::Or(members) => members.iter().any(|m| self.conforms(m, node)),
            Constraint::Not(member) => !self.conforms(member, node),
            other => panic!("{} is not a logical constraint", other.component().name()),
        }
    }

    /// Whether a single constraint of `shape` holds at `focus`.
    pub fn check_constraint(&self, shape: &Shape, constraint: &Constraint, focus: &Term) -> bool {
        self.evaluate_constraint(shape, constraint, focus, &mut None)
    }

    /// Value nodes of `shape` at `focus`: the objects along the path, or the
    /// focus itself for node shapes.
    pub fn value_nodes(&self, shape: &Shape, focus: &Term) -> Vec<Term> {
        match &shape.path {
            Some(path) => self.data.objects_of(focus, &Term::Iri(path.clone())).into_iter().cloned().collect(),
            None => vec![focus.clone()],
        }
    }

    fn evaluate_shape(&self, shape: &Shape, focus: &Term, sink: &mut Option<&mut Vec<ValidationResult>>) -> bool {
        let mut ok = true;
        for c in &shape.constraints {
            ok &= self.evaluate_constraint(shape, c, focus, sink);
            if !ok && sink.is_none() {
                return false;
            }
        }
        ok
    }

    fn evaluate_constraint(
        &self,
        shape: &Shape,
        constraint: &Constraint,
        focus: &Term,
        sink: &mut Option<&mut Vec<ValidationResult>>,
    ) -> bool {
        let values = self.value_nodes(shape, focus);

        if let Constraint::Property(member) = constraint {
            let inner = self.shapes.resolve(member);
            let mut ok = true;
            for v in &values {
                ok &= self.evaluate_shape(inner, v, sink);
                if !ok && sink.is_none() {
                    return false;
                }
            }
            return ok;
        }

        let failure = match self.first_failure(constraint, &values) {
            None => return true,
            Some(failure) => failure,
        };
        if let Some(results) = sink {
            let incomparable = failure_is_incomparable(&failure);
            let value = match (&shape.path, failure) {
                (None, _) => Some(focus.clone()),
                (Some(_), Failure::Value(v, _)) => Some(v),
                (Some(_), Failure::Whole) => None,
            };
            let message = message(constraint, shape.path.as_ref(), &values, value.as_ref(), incomparable);
            results.push(ValidationResult {
                focus_node: focus.clone(),
                result_path: shape.path.clone(),
                value,
                source_shape: shape.id.clone(),
                source_constraint_component: constraint.component(),
                source_constraint: constraint.clone(),
                message,
                severity: Severity::Violation,
            });
        }
        false
    }

    fn first_failure(&self, constraint: &Constraint, values: &[Term]) -> Option<Failure> {
        let first_bad = |bad: &dyn Fn(&Term) -> bool| values.iter().find(|v| bad(v)).map(|v| Failure::Value(v.clone(), false));
        match constraint {
            Constraint::MinCount(n) => (values.len() < *n as usize).then_some(Failure::Whole),
            Constraint::MaxCount(n) => (values.len() > *n as usize).then_some(Failure::Whole),
            Constraint::HasValue(v) => (!values.contains(v)).then_some(Failure::Whole),
            Constraint::Datatype(d) => first_bad(&|v| v.as_literal().map_or(true, |l| l.datatype() != d)),
            Constraint::Class(c) => {
                let class = Term::Iri(c.clone());
                first_bad(&|v| !self.data.is_instance_of(v, &class))
            }
            Constraint::Range { relation, bound } => values.iter().find_map(|v| {
                let cmp = v.as_literal().map_or(Comparison::Incomparable, |l| compare_literal(l, bound, *relation));
                match cmp {
                    Comparison::Satisfied => None,
                    Comparison::Violated => Some(Failure::Value(v.clone(), false)),
                    Comparison::Incomparable => Some(Failure::Value(v.clone(), true)),
                }
            }),
            Constraint::Node(member) => first_bad(&|v| !self.conforms(member, v)),
            Constraint::And(_) | Constraint::Or(_) | Constraint::Not(_) => {
                first_bad(&|v| !self.conforms_logical(constraint, v))
            }
            Constraint::Property(_) => unreachable!("property constraints propagate inner results"),
        }
    }
}

enum Failure {
    /// The value set as a whole fails (cardinality, missing value).
    Whole,
    /// The first offending value node; the flag marks an incomparable value.
    Value(Term, bool),
}

fn failure_is_incomparable(failure: &Failure) -> bool {
    matches!(failure, Failure::Value(_, true))
}

fn message(constraint: &Constraint, path: Option<&Iri>, values: &[Term], value: Option<&Term>, incomparable: bool) -> String {
    let shown = value.map(Term::short_label).unwrap_or_default();
    let (owner, each) = match path {
        Some(p) => (format!("Property {}", p.local_name()), format!("Property {} value {shown}", p.local_name())),
        None => ("Focus node".to_owned(), format!("Focus node {shown}")),
    };
    match constraint {
        Constraint::MinCount(n) => format!("{owner} has {} values, at least {n} required", values.len()),
        Constraint::MaxCount(n) => format!("{owner} has {} values, at most {n} allowed", values.len()),
        Constraint::HasValue(v) => format!("{owner} does not have the value {}", v.short_label()),
        Constraint::Datatype(d) => format!("{each} does not have datatype {}", d.local_name()),
        Constraint::Class(c) => format!("{each} is not an instance of {}", c.local_name()),
        Constraint::Range { relation, bound } if incomparable => {
            format!("{each} cannot be compared with {} {}", relation.name(), bound.lexical())
        }
        Constraint::Range { relation, bound } => format!("{each} violates {} {}", relation.name(), bound.lexical()),
        Constraint::And(m) => format!("{each} does not conform to all {} shapes of an and", m.len()),
        Constraint::Or(m) => format!("{each} conforms to none of {} alternatives", m.len()),
        Constraint::Not(m) => format!("{each} conforms to negated shape {}", m.term().short_label()),
        Constraint::Node(m) => format!("{each} does not conform to shape {}", m.term().short_label()),
        Constraint::Property(_) => unreachable!("property constraints propagate inner results"),
    }
}
