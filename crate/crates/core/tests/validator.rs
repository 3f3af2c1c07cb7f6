mod common;

use proptest::prelude::*;

use common::*;
use regshacl::corpus;
use regshacl::rdf::Term;
use regshacl::shapes::{compile_graph, ShapeId};
use regshacl::turtle::parse;
use regshacl::validate::{validate, Validator};

fn fixture_data(name: &str) -> regshacl::rdf::Graph {
    corpus::manifest().fixture(name).unwrap().data_document().unwrap().graph
}

#[test]
fn focus_nodes_follow_subclasses_and_target_nodes() {
    let doc = parse(&format!(
        "{PRE}:S a sh:NodeShape ; sh:targetClass :C0 ; sh:targetNode :n3 .\n\
         :C1 rdfs:subClassOf :C0 . :n0 a :C0 . :n1 a :C1 . :n2 a :C2 ."
    ))
    .unwrap();
    let shapes = compile_graph(&doc.graph).unwrap();
    let validator = Validator::new(&shapes, &doc.graph);
    let shape = shapes.shapes().next().unwrap();
    assert_eq!(validator.focus_nodes(shape), [node(0), node(1), node(3)]);
}

#[test]
fn service_shape_targets_typed_services() {
    let shapes = corpus::build_certificate_shapes().unwrap();
    let data = fixture_data("complete-alt2");
    let validator = Validator::new(&shapes, &data);
    let focus = |name: &str| validator.focus_nodes(shapes.get(&corpus::shape_id(name)).unwrap());
    assert_eq!(focus(":SeagoingService720DO"), [corpus::term(":service1")]);
    assert_eq!(focus(":SeagoingService360CO"), [corpus::term(":service2")]);
    assert_eq!(focus(":DeckOfficerClass1Shape"), [corpus::term(":sailor1")]);
}

#[test]
fn wrong_position_reports_the_value() {
    let shapes = corpus::build_certificate_shapes().unwrap();
    let report = validate(&shapes, &fixture_data("wrong-position"));
    let [r] = report.results.as_slice() else { panic!("{:?}", report.results) };
    assert_eq!(r.value, Some(corpus::term(":position1")));
    assert_eq!(r.source_shape, corpus::shape_id(":PositionDO"));
    assert!(r.message.contains("DeckOfficerPosition"), "{}", r.message);
}

#[test]
fn missing_certificate_is_one_or_result() {
    let shapes = corpus::build_certificate_shapes().unwrap();
    let report = validate(&shapes, &fixture_data("no-certs"));
    let [r] = report.results.as_slice() else { panic!("{:?}", report.results) };
    assert_eq!(r.source_constraint_component.name(), "or");
    assert_eq!(r.value, Some(corpus::term(":sailor1")));
    assert_eq!(r.result_path, None);
}

#[test]
fn range_against_a_resource_cannot_be_compared() {
    let doc = parse(&format!("{PRE}:S sh:targetNode :n0 ; sh:path :p0 ; sh:minInclusive 3 .\n:n0 :p0 :n1 .")).unwrap();
    let report = validate(&compile_graph(&doc.graph).unwrap(), &doc.graph);
    assert_eq!(report.results.len(), 1);
    assert!(report.results[0].message.contains("cannot be compared"), "{}", report.results[0].message);
}

#[test]
fn reports_are_deterministic() {
    let shapes = corpus::build_certificate_shapes().unwrap();
    for f in corpus::build_cv_fixtures() {
        let data = f.data_document().unwrap().graph;
        assert_eq!(validate(&shapes, &data), validate(&shapes, &data), "{}", f.name);
    }
}

proptest! {
    // Every reported focus fails its shape, and every failing target is reported.
    #[test]
    fn results_match_conformance(expr in arb_shape(), data in arb_data()) {
        let shapes = compile_graph(&parse(&shape_document(&expr)).unwrap().graph).unwrap();
        let graph = data.graph();
        let validator = Validator::new(&shapes, &graph);
        let report = validator.validate();
        let x = ShapeId::new(Term::iri("http://example.org/t#X"));
        for r in &report.results {
            prop_assert!(!validator.conforms(&x, &r.focus_node));
        }
        for i in 0..=NODES {
            let reported = report.results.iter().any(|r| r.focus_node == node(i));
            prop_assert_eq!(reported, !validator.conforms(&x, &node(i)));
        }
        prop_assert_eq!(report.conforms, report.results.is_empty());
    }

    #[test]
    fn flat_results_match_reference(atoms in prop::collection::vec((arb_atom(), Just(None)), 1..4), data in arb_data()) {
        let shapes = compile_graph(&parse(&flat_shape_document(&atoms)).unwrap().graph).unwrap();
        let report = validate(&shapes, &data.graph());
        for i in 0..3 {
            let expected = atoms.iter().filter(|(a, _)| !a.holds(&data, i)).count();
            let actual = report.results.iter().filter(|r| r.focus_node == node(i)).count();
            prop_assert_eq!(actual, expected);
        }
    }
}
