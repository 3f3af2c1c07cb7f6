//! Explains what a sailor without certificates still needs, best alternative first.

use regshacl::corpus;
use regshacl::gap::{diagnose, explain};

fn main() {
    let shapes = corpus::build_certificate_shapes().expect("corpus compiles");
    let fixture = corpus::manifest().fixture("no-certs").cloned().expect("fixture");
    let data = fixture.data_document().expect("fixture parses").graph;
    let report = diagnose(&shapes, &data, &corpus::shape_id(":DeckOfficerClass1Shape"), &corpus::term(":sailor1"))
        .expect("shape exists");
    println!("conforms: {}", report.conforms);
    for gap in &report.common_gaps {
        println!("always needed: {}", explain(gap));
    }
    for alt in &report.alternatives {
        println!("alternative {} ({} of {} met)", alt.branch_index + 1, alt.satisfied_count, alt.total_count);
        for gap in &alt.gaps {
            println!("  {}", explain(gap));
        }
    }
}
