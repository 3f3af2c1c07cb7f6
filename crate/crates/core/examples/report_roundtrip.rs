//! Writes a validation report as Turtle, reads it back and compares graphs.

use regshacl::corpus;
use regshacl::rdf::isomorphic;
use regshacl::turtle::{parse, serialize};
use regshacl::validate::{report_to_graph, validate};

fn main() {
    let shapes = corpus::build_certificate_shapes().expect("corpus compiles");
    let fixture = corpus::manifest().fixture("short-duration").cloned().expect("fixture");
    let report = validate(&shapes, &fixture.data_document().expect("fixture parses").graph);
    let doc = report_to_graph(&report);
    let text = serialize(&doc);
    print!("{text}");
    let back = parse(&text).expect("report parses");
    println!("\nisomorphic after round trip: {}", isomorphic(&doc.graph, &back.graph));
}
