#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use proptest::prelude::*;

use regshacl::cli;
use regshacl::corpus::{self, Fixture};
use regshacl::rdf::{Graph, Iri, Literal, PrefixMap, Term};
use regshacl::validate::ValidationResult;

pub fn corpus_path(rel: &str) -> String {
    corpus::dir().join(rel).to_string_lossy().into_owned()
}

pub fn run_cli(args: &[String]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("regshacl".to_owned()).chain(args.iter().cloned());
    let status = cli::run(argv, &mut out, &mut err);
    (status.code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn inputs(fixture: &Fixture) -> Vec<String> {
    let mut args = vec!["--shapes".to_owned()];
    args.extend(corpus::manifest().shapes.iter().map(|s| corpus_path(s)));
    args.push("--data".to_owned());
    args.extend(fixture.data.iter().map(|d| corpus_path(d)));
    args
}

pub fn validate_args(fixture: &Fixture, format: &str) -> Vec<String> {
    let mut args = vec!["validate".to_owned()];
    args.extend(inputs(fixture));
    args.extend(["--format".to_owned(), format.to_owned()]);
    args
}

pub fn gap_args(fixture: &Fixture, format: &str) -> Vec<String> {
    let mut args = vec!["gap".to_owned()];
    args.extend(inputs(fixture));
    args.extend([
        "--focus".to_owned(),
        fixture.gap.focus.clone(),
        "--shape".to_owned(),
        fixture.gap.shape.clone(),
        "--format".to_owned(),
        format.to_owned(),
    ]);
    args
}

/// Compares `actual` with the golden file, or rewrites the file when
/// `REGSHACL_BLESS=1`.
pub fn check_golden(path: &Path, actual: &str) -> Result<(), String> {
    if std::env::var("REGSHACL_BLESS").as_deref() == Ok("1") {
        fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        fs::write(path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = fs::read_to_string(path)
        .map_err(|e| format!("{}: {e} (regenerate with REGSHACL_BLESS=1)", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{} differs from the current output:\n{actual}", path.display()))
    }
}

/// Counts of equal results, for order-insensitive comparison.
pub fn multiset(results: &[ValidationResult]) -> HashMap<&ValidationResult, usize> {
    let mut counts = HashMap::new();
    for r in results {
        *counts.entry(r).or_default() += 1;
    }
    counts
}

// Random RDF graphs for serializer round trips.

fn arb_iri() -> impl Strategy<Value = Term> {
    prop_oneof![
        (0u8..4).prop_map(|i| Term::iri(&format!("http://e/n{i}"))),
        (0u8..3).prop_map(|i| Term::iri(&format!("http://e/x/item-{i}.v"))),
        Just(Term::iri("http://other.org/a>b{c}")),
        Just(Term::iri("urn:isbn:0451450523")),
        Just(Term::iri("http://e/")),
    ]
}

fn arb_predicate() -> impl Strategy<Value = Term> {
    prop_oneof![
        (0u8..3).prop_map(|i| Term::iri(&format!("http://e/p{i}"))),
        Just(Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")),
        Just(Term::iri("http://other.org/q")),
    ]
}

fn arb_literal() -> impl Strategy<Value = Term> {
    let dt = |s: &str| Iri::new(s).unwrap();
    prop_oneof![
        "[a-z \"'\\\\\n\t\ré€-]{0,6}".prop_map(|s| Term::Literal(Literal::string(s))),
        ("[a-z]{0,4}", "[a-z]{1,3}(-[a-z0-9]{1,3})?").prop_map(|(s, l)| Term::Literal(Literal::lang(s, l))),
        any::<i32>().prop_map(|i| Term::Literal(Literal::integer(i as i64))),
        "[+-]?[0-9]{1,3}\\.[0-9]{1,3}"
            .prop_map(move |s| Term::Literal(Literal::typed(s, dt("http://www.w3.org/2001/XMLSchema#decimal")))),
        "[+-]?[0-9]{1,4}"
            .prop_map(move |s| Term::Literal(Literal::typed(s, dt("http://www.w3.org/2001/XMLSchema#integer")))),
        any::<bool>().prop_map(|b| Term::Literal(Literal::boolean(b))),
        ("[0-9a-z.e]{0,4}", 0u8..2).prop_map(move |(s, i)| {
            let d = if i == 0 { "http://qudt.org/vocab/unit/GT" } else { "http://www.w3.org/2001/XMLSchema#decimal" };
            Term::Literal(Literal::typed(s, dt(d)))
        }),
    ]
}

fn arb_blank() -> impl Strategy<Value = Term> {
    (0u8..4).prop_map(|i| Term::blank(format!("g{i}")))
}

#[derive(Debug, Clone)]
pub struct RandomDoc {
    pub graph: Graph,
    pub prefixes: PrefixMap,
}

pub fn arb_document() -> impl Strategy<Value = RandomDoc> {
    let subject = prop_oneof![3 => arb_iri(), 2 => arb_blank()];
    let object = prop_oneof![2 => arb_iri(), 2 => arb_blank(), 3 => arb_literal()];
    let triples = prop::collection::vec((subject, arb_predicate(), object), 0..14);
    let lists = prop::collection::vec(
        (arb_iri(), prop::collection::vec(prop_oneof![arb_iri(), arb_literal(), arb_blank()], 0..4)),
        0..3,
    );
    let prefixes = prop::collection::vec(0u8..4, 0..4);
    (triples, lists, prefixes).prop_map(|(triples, lists, prefix_picks)| {
        let mut graph = Graph::new();
        for (s, p, o) in &triples {
            graph.insert_terms(s, p, o);
        }
        for (s, members) in &lists {
            let head = graph.insert_list(members);
            graph.insert_terms(s, &Term::iri("http://e/list"), &head);
        }
        let choices = [
            ("e", "http://e/"),
            ("x", "http://e/x/"),
            ("", "http://other.org/"),
            ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
        ];
        let mut prefixes = PrefixMap::new();
        for i in prefix_picks {
            let (p, ns) = choices[i as usize];
            prefixes.insert(p, Iri::new(ns).unwrap());
        }
        RandomDoc { graph, prefixes }
    })
}

// Small shapes and data with an independent reference evaluator.

pub const NODES: u8 = 4;
pub const PRE: &str = "@prefix : <http://example.org/t#> .\n\
                       @prefix sh: <http://www.w3.org/ns/shacl#> .\n\
                       @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
                       @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

pub fn node(i: u8) -> Term {
    Term::iri(&format!("http://example.org/t#n{i}"))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Obj {
    Node(u8),
    Int(i64),
    Str(u8),
}

impl Obj {
    fn turtle(&self) -> String {
        match self {
            Obj::Node(i) => format!(":n{i}"),
            Obj::Int(v) => v.to_string(),
            Obj::Str(i) => format!("\"s{i}\""),
        }
    }
}

fn arb_obj() -> impl Strategy<Value = Obj> {
    prop_oneof![
        3 => (0..NODES).prop_map(Obj::Node),
        3 => (-2i64..6).prop_map(Obj::Int),
        1 => (0u8..2).prop_map(Obj::Str),
    ]
}

#[derive(Debug, Clone)]
pub struct Data {
    pub edges: Vec<(u8, u8, Obj)>,
    pub types: Vec<(u8, u8)>,
    pub subclass: Vec<(u8, u8)>,
}

pub fn arb_data() -> impl Strategy<Value = Data> {
    (
        prop::collection::vec((0..NODES, 0u8..3, arb_obj()), 0..13),
        prop::collection::vec((0..NODES, 0u8..3), 0..5),
        prop::collection::vec((0u8..3, 0u8..3), 0..3),
    )
        .prop_map(|(edges, types, subclass)| Data { edges, types, subclass })
}

impl Data {
    pub fn turtle(&self) -> String {
        let mut out = String::from(PRE);
        for (s, p, o) in &self.edges {
            out.push_str(&format!(":n{s} :p{p} {} .\n", o.turtle()));
        }
        for (n, c) in &self.types {
            out.push_str(&format!(":n{n} a :C{c} .\n"));
        }
        for (sub, sup) in &self.subclass {
            out.push_str(&format!(":C{sub} rdfs:subClassOf :C{sup} .\n"));
        }
        out
    }

    pub fn graph(&self) -> Graph {
        regshacl::turtle::parse(&self.turtle()).unwrap().graph
    }

    fn values(&self, focus: u8, p: u8) -> BTreeSet<Obj> {
        self.edges.iter().filter(|(s, q, _)| *s == focus && *q == p).map(|(_, _, o)| o.clone()).collect()
    }

    fn closure(&self, class: u8) -> BTreeSet<u8> {
        let mut closure = BTreeSet::from([class]);
        loop {
            let before = closure.len();
            for (sub, sup) in &self.subclass {
                if closure.contains(sup) {
                    closure.insert(*sub);
                }
            }
            if closure.len() == before {
                return closure;
            }
        }
    }

    fn has_class(&self, n: u8, class: u8) -> bool {
        let closure = self.closure(class);
        self.types.iter().any(|(m, c)| *m == n && closure.contains(c))
    }
}

#[derive(Debug, Clone)]
pub enum Atom {
    MinCount(u8, u8),
    MaxCount(u8, u8),
    HasValue(u8, Obj),
    Class(u8, u8),
    IntegerDatatype(u8),
    MinInclusive(u8, i64),
    MaxExclusive(u8, i64),
    FocusClass(u8),
    FocusIs(u8),
}

pub fn arb_atom() -> impl Strategy<Value = Atom> {
    let p = 0u8..3;
    prop_oneof![
        (p.clone(), 0u8..3).prop_map(|(p, k)| Atom::MinCount(p, k)),
        (p.clone(), 0u8..3).prop_map(|(p, k)| Atom::MaxCount(p, k)),
        (p.clone(), arb_obj()).prop_map(|(p, o)| Atom::HasValue(p, o)),
        (p.clone(), 0u8..3).prop_map(|(p, c)| Atom::Class(p, c)),
        p.clone().prop_map(Atom::IntegerDatatype),
        (p.clone(), -1i64..5).prop_map(|(p, b)| Atom::MinInclusive(p, b)),
        (p, -1i64..5).prop_map(|(p, b)| Atom::MaxExclusive(p, b)),
        (0u8..3).prop_map(Atom::FocusClass),
        (0..NODES).prop_map(Atom::FocusIs),
    ]
}

impl Atom {
    /// Whether this atom holds at node `focus`, evaluated directly on `data`.
    pub fn holds(&self, data: &Data, focus: u8) -> bool {
        let ints = |p: u8| -> Option<Vec<i64>> {
            data.values(focus, p).into_iter().map(|o| if let Obj::Int(v) = o { Some(v) } else { None }).collect()
        };
        match self {
            Atom::MinCount(p, k) => data.values(focus, *p).len() >= *k as usize,
            Atom::MaxCount(p, k) => data.values(focus, *p).len() <= *k as usize,
            Atom::HasValue(p, o) => data.values(focus, *p).contains(o),
            Atom::Class(p, c) => {
                data.values(focus, *p).iter().all(|o| matches!(o, Obj::Node(n) if data.has_class(*n, *c)))
            }
            Atom::IntegerDatatype(p) => ints(*p).is_some(),
            Atom::MinInclusive(p, b) => ints(*p).is_some_and(|vs| vs.iter().all(|v| v >= b)),
            Atom::MaxExclusive(p, b) => ints(*p).is_some_and(|vs| vs.iter().all(|v| v < b)),
            Atom::FocusClass(c) => data.has_class(focus, *c),
            Atom::FocusIs(n) => focus == *n,
        }
    }

    pub fn turtle(&self, order: Option<u8>) -> String {
        let order = order.map(|o| format!(" ; sh:order {o}")).unwrap_or_default();
        match self {
            Atom::MinCount(p, k) => format!("[ sh:path :p{p} ; sh:minCount {k}{order} ]"),
            Atom::MaxCount(p, k) => format!("[ sh:path :p{p} ; sh:maxCount {k}{order} ]"),
            Atom::HasValue(p, o) => format!("[ sh:path :p{p} ; sh:hasValue {}{order} ]", o.turtle()),
            Atom::Class(p, c) => format!("[ sh:path :p{p} ; sh:class :C{c}{order} ]"),
            Atom::IntegerDatatype(p) => format!("[ sh:path :p{p} ; sh:datatype xsd:integer{order} ]"),
            Atom::MinInclusive(p, b) => format!("[ sh:path :p{p} ; sh:minInclusive {b}{order} ]"),
            Atom::MaxExclusive(p, b) => format!("[ sh:path :p{p} ; sh:maxExclusive {b}{order} ]"),
            Atom::FocusClass(c) => format!("[ sh:class :C{c}{order} ]"),
            Atom::FocusIs(n) => format!("[ sh:hasValue :n{n}{order} ]"),
        }
    }

    pub fn is_property(&self) -> bool {
        !matches!(self, Atom::FocusClass(_) | Atom::FocusIs(_))
    }
}

#[derive(Debug, Clone)]
pub enum ShapeExpr {
    Atom(Atom, Option<u8>),
    And(Vec<ShapeExpr>, Option<u8>),
    Or(Vec<ShapeExpr>, Option<u8>),
    Not(Box<ShapeExpr>, Option<u8>),
}

pub fn arb_shape() -> impl Strategy<Value = ShapeExpr> {
    let order = prop::option::of(0u8..3);
    let leaf = (arb_atom(), order.clone()).prop_map(|(a, o)| ShapeExpr::Atom(a, o));
    leaf.prop_recursive(3, 16, 3, move |inner| {
        prop_oneof![
            (prop::collection::vec(inner.clone(), 1..4), order.clone()).prop_map(|(m, o)| ShapeExpr::And(m, o)),
            (prop::collection::vec(inner.clone(), 1..4), order.clone()).prop_map(|(m, o)| ShapeExpr::Or(m, o)),
            (inner, order.clone()).prop_map(|(m, o)| ShapeExpr::Not(Box::new(m), o)),
        ]
    })
}

impl ShapeExpr {
    pub fn holds(&self, data: &Data, focus: u8) -> bool {
        match self {
            ShapeExpr::Atom(a, _) => a.holds(data, focus),
            ShapeExpr::And(m, _) => m.iter().all(|s| s.holds(data, focus)),
            ShapeExpr::Or(m, _) => m.iter().any(|s| s.holds(data, focus)),
            ShapeExpr::Not(m, _) => !m.holds(data, focus),
        }
    }

    pub fn turtle(&self) -> String {
        let tag = |o: &Option<u8>| o.map(|o| format!(" ; sh:order {o}")).unwrap_or_default();
        let list = |m: &[ShapeExpr]| m.iter().map(ShapeExpr::turtle).collect::<Vec<_>>().join(" ");
        match self {
            ShapeExpr::Atom(a, o) => a.turtle(*o),
            ShapeExpr::And(m, o) => format!("[ sh:and ( {} ){} ]", list(m), tag(o)),
            ShapeExpr::Or(m, o) => format!("[ sh:or ( {} ){} ]", list(m), tag(o)),
            ShapeExpr::Not(m, o) => format!("[ sh:not {}{} ]", m.turtle(), tag(o)),
        }
    }
}

/// A node shape `:X` that is exactly `expr`, targeting every data node.
pub fn shape_document(expr: &ShapeExpr) -> String {
    let targets: Vec<String> = (0..=NODES).map(|i| format!(":n{i}")).collect();
    format!("{PRE}:X a sh:NodeShape ; sh:targetNode {} ; sh:and ( {} ) .\n", targets.join(", "), expr.turtle())
}

/// Node shape `:T` with the given atoms as direct property constraints.
pub fn flat_shape_document(atoms: &[(Atom, Option<u8>)]) -> String {
    let mut out = format!("{PRE}:T a sh:NodeShape ; sh:targetNode :n0, :n1, :n2");
    for (atom, order) in atoms {
        if atom.is_property() {
            out.push_str(&format!(" ;\n  sh:property {}", atom.turtle(*order)));
        } else {
            out.push_str(&format!(" ;\n  sh:node {}", atom.turtle(*order).replacen("[ ", "[ a sh:NodeShape ; ", 1)));
        }
    }
    out.push_str(" .\n");
    out
}
