//! Validates every sample CV against the certificate shapes.

use regshacl::corpus;
use regshacl::validate::validate;

fn main() {
    let shapes = corpus::build_certificate_shapes().expect("corpus compiles");
    for fixture in corpus::build_cv_fixtures() {
        let data = fixture.data_document().expect("fixture parses").graph;
        let report = validate(&shapes, &data);
        println!("{}: conforms {}", fixture.name, report.conforms);
        for r in &report.results {
            println!("  {}", r.message);
        }
    }
}
