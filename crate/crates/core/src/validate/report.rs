use std::collections::HashMap;

use super::ValidationReport;
use crate::rdf::{Graph, Iri, Literal, PrefixMap, Term};
use crate::turtle::Document;
use crate::vocab::{rdf, sh};

/// The report in the SHACL report vocabulary. Blank nodes from the data or
/// shapes graphs are given fresh labels, one per distinct node.
pub fn report_to_graph(report: &ValidationReport) -> Document {
    let mut graph = Graph::new();
    let mut blanks: HashMap<Term, Term> = HashMap::new();
    let mut own = |term: &Term, graph: &mut Graph| -> Term {
        if term.is_blank() {
            blanks.entry(term.clone()).or_insert_with(|| graph.fresh_blank()).clone()
        } else {
            term.clone()
        }
    };
    let p = |iri: &str| Term::iri(iri);
    let rdf_type = p(rdf::TYPE);

    let root = graph.fresh_blank();
    graph.insert_terms(&root, &rdf_type, &p(sh::VALIDATION_REPORT));
    graph.insert_terms(&root, &p(sh::CONFORMS), &Term::Literal(Literal::boolean(report.conforms)));

    for r in &report.results {
        let node = graph.fresh_blank();
        graph.insert_terms(&root, &p(sh::RESULT), &node);
        graph.insert_terms(&node, &rdf_type, &p(sh::VALIDATION_RESULT));
        let focus = own(&r.focus_node, &mut graph);
        graph.insert_terms(&node, &p(sh::FOCUS_NODE), &focus);
        if let Some(path) = &r.result_path {
            graph.insert_terms(&node, &p(sh::RESULT_PATH), &Term::Iri(path.clone()));
        }
        if let Some(value) = &r.value {
            let value = own(value, &mut graph);
            graph.insert_terms(&node, &p(sh::VALUE), &value);
        }
        let shape = own(r.source_shape.term(), &mut graph);
        graph.insert_terms(&node, &p(sh::SOURCE_SHAPE), &shape);
        graph.insert_terms(&node, &p(sh::SOURCE_CONSTRAINT_COMPONENT), &p(&r.source_constraint_component.iri()));
        graph.insert_terms(&node, &p(sh::RESULT_SEVERITY), &p(sh::VIOLATION));
        graph.insert_terms(&node, &p(sh::RESULT_MESSAGE), &Term::Literal(Literal::string(r.message.clone())));
    }

    let mut prefixes = PrefixMap::new();
    prefixes.insert("sh", Iri::new(sh::NS).expect("vocabulary IRI"));
    prefixes.insert("rdf", Iri::new(rdf::NS).expect("vocabulary IRI"));
    Document::new(graph, prefixes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::isomorphic;
    use crate::shapes::{Constraint, ConstraintComponent, ShapeId};
    use crate::turtle::{parse, serialize};
    use crate::validate::{Severity, ValidationResult};

    fn one_violation(focus: Term) -> ValidationReport {
        ValidationReport {
            conforms: false,
            results: vec![ValidationResult {
                focus_node: focus,
                result_path: Some(Iri::new("http://example.org/grossTonnage").unwrap()),
                value: Some(Term::Literal(Literal::integer(499))),
                source_shape: ShapeId::new(Term::blank("b3")),
                source_constraint_component: ConstraintComponent::MinCount,
                source_constraint: Constraint::MinCount(1),
                message: "m".into(),
                severity: Severity::Violation,
            }],
        }
    }

    #[test]
    fn conforming_report_has_two_triples() {
        let doc = report_to_graph(&ValidationReport { conforms: true, results: vec![] });
        assert_eq!(doc.graph.len(), 2);
    }

    #[test]
    fn one_result_node() {
        let doc = report_to_graph(&one_violation(Term::iri("http://example.org/v")));
        let results = doc.graph.subjects_of(&Term::iri(rdf::TYPE), &Term::iri(sh::VALIDATION_RESULT));
        assert_eq!(results.len(), 1);
        assert_eq!(doc.graph.len(), 2 + 1 + 8);
    }

    #[test]
    fn round_trips_through_turtle_with_blank_focus() {
        let doc = report_to_graph(&one_violation(Term::blank("b0")));
        let reparsed = parse(&serialize(&doc)).unwrap();
        assert!(isomorphic(&doc.graph, &reparsed.graph));
    }
}
