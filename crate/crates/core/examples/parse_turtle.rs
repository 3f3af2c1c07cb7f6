//! Parses a corpus file and prints its triples back as Turtle.

use regshacl::corpus;
use regshacl::turtle::{parse, serialize};

fn main() {
    let text = corpus::file("data/complete-alt2.ttl").expect("bundled file");
    let doc = parse(text).expect("valid turtle");
    println!("{} triples, {} prefixes\n", doc.graph.len(), doc.prefixes.len());
    print!("{}", serialize(&doc));

    let broken = text.replacen(" .", " ^", 1);
    match parse(&broken) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("\nbroken copy: {e}"),
    }
}
