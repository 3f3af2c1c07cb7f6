//! Gap analysis: which requirements of a shape a node does not meet, broken
//! down per alternative of its first disjunction and ranked best-first.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rdf::{Decimal, Graph, Iri, RangeRelation, Term};
use crate::shapes::{Constraint, Shape, ShapeId, ShapeKind, ShapesGraph};
use crate::validate::Validator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("unknown shape {0}")]
    UnknownShape(Term),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observed {
    pub count: usize,
    pub values: Vec<Term>,
}

/// One unmet atomic requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub source_shape: ShapeId,
    pub path: Option<Iri>,
    pub requirement: Constraint,
    pub observed: Observed,
    /// Ranked diagnoses of the members when the requirement is a disjunction.
    pub alternatives: Vec<AlternativeDiagnosis>,
}

impl Serialize for Gap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Gap", 7)?;
        s.serialize_field("sourceShape", &self.source_shape)?;
        s.serialize_field("path", &self.path)?;
        s.serialize_field("requirement", &self.requirement)?;
        s.serialize_field("summary", &self.requirement.summary())?;
        s.serialize_field("observed", &self.observed)?;
        s.serialize_field("explanation", &explain(self))?;
        s.serialize_field("alternatives", &self.alternatives)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlternativeDiagnosis {
    pub branch_index: usize,
    pub shape: ShapeId,
    pub order_tag: Option<Decimal>,
    pub gaps: Vec<Gap>,
    pub satisfied_count: usize,
    pub total_count: usize,
}

impl AlternativeDiagnosis {
    pub fn is_met(&self) -> bool {
        self.gaps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapReport {
    pub focus_node: Term,
    pub shape: ShapeId,
    pub conforms: bool,
    pub common_gaps: Vec<Gap>,
    pub alternatives: Vec<AlternativeDiagnosis>,
}

/// Diagnoses `focus` against the shape `shape`. The focus need not be a
/// target of the shape.
pub fn diagnose(shapes: &ShapesGraph, data: &Graph, shape: &ShapeId, focus: &Term) -> Result<GapReport, GapError> {
    let root = shapes.get(shape).ok_or_else(|| GapError::UnknownShape(shape.term().clone()))?;
    let analyzer = Analyzer { validator: Validator::new(shapes, data) };
    let mut walk = Walk { in_branch: false, ..Walk::default() };
    analyzer.walk(root, focus, &mut walk);
    let alternatives = rank(walk.alternatives.unwrap_or_default());
    let conforms = walk.gaps.is_empty() && (alternatives.is_empty() || alternatives.iter().any(|a| a.is_met()));
    Ok(GapReport { focus_node: focus.clone(), shape: root.id.clone(), conforms, common_gaps: walk.gaps, alternatives })
}

/// Orders alternatives by number of gaps, then order tag (untagged last),
/// then position in the disjunction.
pub fn rank(mut alternatives: Vec<AlternativeDiagnosis>) -> Vec<AlternativeDiagnosis> {
    alternatives.sort_by(|a, b| {
        a.gaps
            .len()
            .cmp(&b.gaps.len())
            .then_with(|| match (&a.order_tag, &b.order_tag) {
                (Some(x), Some(y)) => x.cmp(y),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => Ordering::Equal,
            })
            .then_with(|| a.branch_index.cmp(&b.branch_index))
    });
    alternatives
}

/// One sentence describing the gap for an end user.
pub fn explain(gap: &Gap) -> String {
    let subject = gap.path.as_ref().map(|p| p.local_name().to_owned());
    let what = subject.clone().unwrap_or_else(|| "the node".to_owned());
    let found = if gap.observed.values.is_empty() {
        "none found".to_owned()
    } else {
        format!("found {}", labels(&gap.observed.values))
    };
    match &gap.requirement {
        Constraint::MinCount(n) if gap.observed.count == 0 => {
            format!("{what} is missing: at least {n} value{} required, none found", plural(*n))
        }
        Constraint::MinCount(n) => {
            format!("{what} has {} value{}, at least {n} required", gap.observed.count, plural(gap.observed.count as u64))
        }
        Constraint::MaxCount(n) => format!("{what} has {} values, at most {n} allowed", gap.observed.count),
        Constraint::HasValue(v) => format!("{what} must include {}, {found}", v.short_label()),
        Constraint::Datatype(d) => format!("{what} must have datatype {}, {found}", d.local_name()),
        Constraint::Class(c) => format!("{what} must be an instance of {}, {found}", c.local_name()),
        Constraint::Range { relation, bound } => {
            let phrase = match relation {
                RangeRelation::MinInclusive => "at least",
                RangeRelation::MinExclusive => "greater than",
                RangeRelation::MaxInclusive => "at most",
                RangeRelation::MaxExclusive => "less than",
            };
            format!("{what} must be {phrase} {} ({}), {found}", bound.lexical(), relation.name())
        }
        Constraint::Or(members) => {
            let who = subject.map_or_else(|| labels(&gap.observed.values), |p| format!("every {p} value"));
            format!("{who} must meet one of: {}; none is met", member_labels(members))
        }
        Constraint::And(members) => format!("{what} must meet all of {}, {found}", member_labels(members)),
        Constraint::Not(member) => format!("{what} must not meet {}, {found}", member.term().short_label()),
        Constraint::Node(member) => format!("{what} must meet {}, {found}", member.term().short_label()),
        Constraint::Property(member) => format!("{what} must meet {}, {found}", member.term().short_label()),
    }
}

fn plural(n: u64) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

fn labels(terms: &[Term]) -> String {
    terms.iter().map(Term::short_label).collect::<Vec<_>>().join(", ")
}

fn member_labels(members: &[ShapeId]) -> String {
    members.iter().map(|m| m.term().short_label()).collect::<Vec<_>>().join(", ")
}

#[derive(Default)]
struct Walk {
    in_branch: bool,
    gaps: Vec<Gap>,
    satisfied: usize,
    min_order: Option<Decimal>,
    alternatives: Option<Vec<AlternativeDiagnosis>>,
}

struct Analyzer<'a> {
    validator: Validator<'a>,
}

impl Analyzer<'_> {
    fn shape(&self, id: &ShapeId) -> &Shape {
        self.validator.shapes().get(id).expect("references resolve after compilation")
    }

    /// Collects the atoms of `shape` at `focus`. `and`, `node` and
    /// `property` members of node shapes apply at the same focus and are
    /// flattened into the walk.
    fn walk(&self, shape: &Shape, focus: &Term, walk: &mut Walk) {
        if let Some(order) = &shape.order {
            if walk.min_order.as_ref().map_or(true, |m| order < m) {
                walk.min_order = Some(order.clone());
            }
        }
        for c in &shape.constraints {
            if shape.kind == ShapeKind::NodeShape {
                match c {
                    Constraint::And(members) => {
                        for m in members {
                            self.walk(self.shape(m), focus, walk);
                        }
                        continue;
                    }
                    Constraint::Node(m) | Constraint::Property(m) => {
                        self.walk(self.shape(m), focus, walk);
                        continue;
                    }
                    Constraint::Or(members) if !walk.in_branch && walk.alternatives.is_none() => {
                        let branches = members.iter().enumerate().map(|(i, m)| self.branch(i, m, focus)).collect();
                        walk.alternatives = Some(branches);
                        continue;
                    }
                    _ => {}
                }
            }
            self.atom(shape, c, focus, walk);
        }
    }

    fn atom(&self, shape: &Shape, constraint: &Constraint, focus: &Term, walk: &mut Walk) {
        if self.validator.check_constraint(shape, constraint, focus) {
            walk.satisfied += 1;
            return;
        }
        let values = self.validator.value_nodes(shape, focus);
        let alternatives = match constraint {
            Constraint::Or(members) => {
                // A disjunction is diagnosed at each value node; report the
                // first value node that meets none of the members.
                let at = values
                    .iter()
                    .find(|v| !self.validator.conforms_logical(constraint, v))
                    .unwrap_or(focus);
                rank(members.iter().enumerate().map(|(i, m)| self.branch(i, m, at)).collect())
            }
            _ => Vec::new(),
        };
        walk.gaps.push(Gap {
            source_shape: shape.id.clone(),
            path: shape.path.clone(),
            requirement: constraint.clone(),
            observed: Observed { count: values.len(), values },
            alternatives,
        });
    }

    fn branch(&self, index: usize, member: &ShapeId, focus: &Term) -> AlternativeDiagnosis {
        let shape = self.shape(member);
        let mut walk = Walk { in_branch: true, ..Walk::default() };
        self.walk(shape, focus, &mut walk);
        let total = walk.satisfied + walk.gaps.len();
        AlternativeDiagnosis {
            branch_index: index,
            shape: member.clone(),
            order_tag: shape.order.clone().or(walk.min_order),
            satisfied_count: walk.satisfied,
            total_count: total,
            gaps: walk.gaps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::discover;
    use crate::turtle::parse;

    const PRE: &str = "@prefix : <http://example.org/> .\n@prefix sh: <http://www.w3.org/ns/shacl#> .\n";

    const CERT: &str = ":C a sh:NodeShape ; sh:targetClass :Applicant ; sh:or (\n\
          [ sh:and ( [ sh:or ( :PA :PB ) ] [ sh:path :svc ; sh:hasValue :Long ; sh:order 1 ] ) ]\n\
          [ sh:and ( [ sh:or ( :PA ) ] [ sh:path :svc ; sh:hasValue :Mid ; sh:order 2 ] [ sh:path :svc ; sh:hasValue :Chief ; sh:order 2 ] ) ]\n\
        ) .\n\
        :PA sh:path :cert ; sh:hasValue :A ; sh:minCount 1 .\n\
        :PB sh:path :cert ; sh:hasValue :B ; sh:minCount 1 .";

    fn run(shapes: &str, data: &str, shape: &str, focus: &str) -> GapReport {
        let shapes = discover(&parse(&format!("{PRE}{shapes}")).unwrap()).unwrap();
        let data = parse(&format!("{PRE}{data}")).unwrap().graph;
        let shape = ShapeId::new(Term::iri(&format!("http://example.org/{shape}")));
        diagnose(&shapes, &data, &shape, &Term::iri(&format!("http://example.org/{focus}"))).unwrap()
    }

    fn diag(branch_index: usize, gaps: usize, order: Option<&str>) -> AlternativeDiagnosis {
        let gap = Gap {
            source_shape: ShapeId::new(Term::iri("http://example.org/S")),
            path: None,
            requirement: Constraint::MinCount(1),
            observed: Observed { count: 0, values: vec![] },
            alternatives: vec![],
        };
        AlternativeDiagnosis {
            branch_index,
            shape: ShapeId::new(Term::iri("http://example.org/S")),
            order_tag: order.and_then(Decimal::parse),
            gaps: vec![gap; gaps],
            satisfied_count: 0,
            total_count: gaps,
        }
    }

    #[test]
    fn rank_by_gaps_then_tag_then_index() {
        let ranked = rank(vec![diag(0, 2, None), diag(1, 0, None)]);
        assert_eq!(ranked[0].branch_index, 1);
        let ranked = rank(vec![diag(0, 1, Some("2")), diag(1, 1, Some("1"))]);
        assert_eq!(ranked[0].branch_index, 1);
        let ranked = rank(vec![diag(0, 1, None), diag(1, 1, Some("5")), diag(2, 1, None)]);
        let order: Vec<_> = ranked.iter().map(|d| d.branch_index).collect();
        assert_eq!(order, [1, 0, 2]);
    }

    #[test]
    fn first_alternative_met() {
        let report = run(CERT, ":s a :Applicant ; :cert :B ; :svc :Long .", "C", "s");
        assert!(report.conforms);
        assert_eq!(report.alternatives[0].branch_index, 0);
        assert!(report.alternatives[0].gaps.is_empty());
        assert_eq!(report.alternatives[0].total_count, 2);
        assert_eq!(report.alternatives[1].gaps.len(), 3);
        assert_eq!(report.alternatives[1].total_count, 3);
    }

    #[test]
    fn closer_alternative_ranks_first() {
        let report = run(CERT, ":s :svc :Mid, :Chief .", "C", "s");
        assert!(!report.conforms);
        let first = &report.alternatives[0];
        assert_eq!(first.branch_index, 1);
        assert_eq!(first.gaps.len(), 1);
        assert_eq!(first.order_tag, Decimal::parse("2"));
        assert_eq!(first.satisfied_count, 2);
        let or_gap = &first.gaps[0];
        assert!(matches!(or_gap.requirement, Constraint::Or(_)));
        assert_eq!(or_gap.alternatives.len(), 1);
        assert_eq!(or_gap.alternatives[0].gaps.len(), 2);
        let second = &report.alternatives[1];
        assert_eq!(second.branch_index, 0);
        assert_eq!(second.gaps.len(), 2);
        assert_eq!(second.order_tag, Decimal::parse("1"));
    }

    #[test]
    fn empty_node_misses_every_atom() {
        let report = run(CERT, "", "C", "nobody");
        assert!(!report.conforms);
        for alt in &report.alternatives {
            assert_eq!(alt.satisfied_count, 0);
            assert_eq!(alt.gaps.len(), alt.total_count);
        }
    }

    #[test]
    fn common_gaps_outside_disjunction() {
        let shapes = ":S a sh:NodeShape ; sh:property [ sh:path :age ; sh:minInclusive 18 ; sh:minCount 1 ] .";
        let report = run(shapes, ":p :age 17 .", "S", "p");
        assert!(!report.conforms);
        assert!(report.alternatives.is_empty());
        assert_eq!(report.common_gaps.len(), 1);
        assert!(run(shapes, ":p :age 18 .", "S", "p").conforms);
    }

    #[test]
    fn unknown_shape() {
        let shapes = discover(&parse(&format!("{PRE}{CERT}")).unwrap()).unwrap();
        let err = diagnose(&shapes, &Graph::new(), &ShapeId::new(Term::iri("http://example.org/Nope")), &Term::iri("http://x/y"));
        assert!(matches!(err, Err(GapError::UnknownShape(_))));
    }

    #[test]
    fn explanations() {
        let shapes = ":S a sh:NodeShape ; sh:property [ sh:path :duration ; sh:minInclusive 1080 ] ,\n\
                      [ sh:path :grossTonnage ; sh:minCount 1 ] , [ sh:path :svc ; sh:hasValue :SGS_500_1080_DO ] .";
        let report = run(shapes, ":p :duration 900 .", "S", "p");
        let lines: Vec<String> = report.common_gaps.iter().map(explain).collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].contains("duration") && lines[0].contains("1080") && lines[0].contains("900"), "{}", lines[0]);
        assert!(lines[1].contains("grossTonnage") && lines[1].contains("missing"), "{}", lines[1]);
        assert!(lines[2].contains("SGS_500_1080_DO"), "{}", lines[2]);
    }
}
