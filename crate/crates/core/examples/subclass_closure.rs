//! Shows how sh:class follows rdfs:subClassOf in the data graph.

use regshacl::corpus;
use regshacl::validate::validate;

fn main() {
    let ontology = corpus::load("ontology/positions.ttl").expect("ontology parses");
    let class = corpus::term(":DeckOfficerPosition");
    println!("subclasses of {class}:");
    for c in ontology.graph.subclass_closure(&class) {
        println!("  {c}");
    }

    let shapes = corpus::compile(&["shapes/seagoing-service.ttl"]).expect("shapes compile");
    let mut data = corpus::load("data/complete-alt1.ttl").expect("data parses");
    println!("\nwithout ontology: conforms {}", validate(&shapes, &data.graph).conforms);
    data.merge(&ontology);
    println!("with ontology: conforms {}", validate(&shapes, &data.graph).conforms);
}
