//! Compiles the certificate shapes and lists each shape with its constraints.

use regshacl::corpus;

fn main() {
    let shapes = corpus::build_certificate_shapes().expect("corpus compiles");
    println!("{} shapes, entry points:", shapes.len());
    for shape in shapes.entry_points() {
        println!("  {}", shape.id);
    }
    for shape in shapes.shapes() {
        println!("\n{} ({:?})", shape.id, shape.kind);
        if let Some(path) = &shape.path {
            println!("  path {path}");
        }
        for c in &shape.constraints {
            println!("  {}", c.summary());
        }
    }
}
