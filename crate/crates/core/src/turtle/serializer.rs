use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;

use super::Document;
use crate::rdf::{escape_string, Graph, Iri, Literal, PrefixMap, Term};
use crate::vocab::{rdf, xsd};

const INDENT: &str = "    ";

/// Writes `doc` as Turtle: prefix directives in declaration order, then one
/// block per subject with `;` between predicates. Blank nodes referenced once
/// are written inline as `[ ... ]`, well-formed collections as `( ... )`, and
/// all remaining blank nodes get canonical labels in order of appearance.
pub fn serialize(doc: &Document) -> String {
    let mut demoted = HashSet::new();
    loop {
        match Writer::new(&doc.graph, &doc.prefixes, &demoted).write() {
            Ok(text) => return text,
            // A group of blank nodes that only reference each other cannot be
            // reached from any top-level block; give one of them a label.
            Err(stuck) => {
                demoted.insert(stuck);
            }
        }
    }
}

struct Writer<'a> {
    graph: &'a Graph,
    prefixes: &'a PrefixMap,
    heads: HashMap<&'a Term, Vec<&'a Term>>,
    cells: HashSet<&'a Term>,
    inline: HashSet<&'a Term>,
    labels: HashMap<&'a Term, String>,
    emitted: HashSet<&'a Term>,
}

impl<'a> Writer<'a> {
    fn new(graph: &'a Graph, prefixes: &'a PrefixMap, demoted: &HashSet<Term>) -> Self {
        let mut refs: HashMap<&Term, usize> = HashMap::new();
        for t in graph.iter() {
            if t.object.is_blank() {
                *refs.entry(t.object).or_default() += 1;
            }
        }
        let candidates: Vec<&Term> = graph
            .blank_nodes()
            .into_iter()
            .filter(|b| refs.get(*b) == Some(&1) && !demoted.contains(*b))
            .collect();

        // Collection cells: exactly one rdf:first and one rdf:rest, nothing else.
        let first = Term::iri(rdf::FIRST);
        let rest = Term::iri(rdf::REST);
        let is_cell = |b: &Term| {
            let mut n_first = 0;
            let mut n_rest = 0;
            for t in graph.matching(Some(b), None, None) {
                if *t.predicate == first {
                    n_first += 1;
                } else if *t.predicate == rest {
                    n_rest += 1;
                } else {
                    return false;
                }
            }
            n_first == 1 && n_rest == 1
        };
        let cell_set: HashSet<&Term> = candidates.iter().copied().filter(|b| is_cell(b)).collect();

        let mut heads = HashMap::new();
        let mut cells = HashSet::new();
        for &c in &cell_set {
            let incoming_rest = graph
                .matching(None, Some(&rest), Some(c))
                .any(|t| cell_set.contains(t.subject));
            if incoming_rest {
                continue;
            }
            let mut chain = vec![c];
            let mut node = c;
            let valid = loop {
                let next = graph.objects_of(node, &rest)[0];
                if next.is_iri_str(rdf::NIL) {
                    break true;
                }
                if !cell_set.contains(next) || chain.contains(&next) {
                    break false;
                }
                chain.push(next);
                node = next;
            };
            if valid {
                let members = chain.iter().map(|cell| graph.objects_of(cell, &first)[0]).collect();
                cells.extend(chain.iter().copied());
                heads.insert(c, members);
            }
        }

        let inline = candidates.into_iter().filter(|b| !cells.contains(b)).collect();
        Writer { graph, prefixes, heads, cells, inline, labels: HashMap::new(), emitted: HashSet::new() }
    }

    fn write(mut self) -> Result<String, Term> {
        let mut out = String::new();
        for (prefix, ns) in self.prefixes.iter() {
            out.push_str(&format!("@prefix {prefix}: <{}> .\n", escape_iri(ns.as_str())));
        }
        let subjects: Vec<&Term> = self
            .graph
            .subjects()
            .into_iter()
            .filter(|s| !self.inline.contains(*s) && !self.cells.contains(*s))
            .collect();
        for subject in subjects {
            out.push('\n');
            self.emitted.insert(subject);
            let label = self.term(subject);
            out.push_str(&label);
            out.push('\n');
            out.push_str(&self.predicate_objects(subject, 1));
            out.push_str(" .\n");
        }
        if let Some(stuck) = self.graph.subjects().into_iter().find(|s| !self.emitted.contains(*s)) {
            return Err(stuck.clone());
        }
        Ok(out)
    }

    fn predicate_objects(&mut self, subject: &'a Term, depth: usize) -> String {
        let mut grouped: IndexMap<&'a Term, Vec<&'a Term>> = IndexMap::new();
        for t in self.graph.matching(Some(subject), None, None) {
            grouped.entry(t.predicate).or_default().push(t.object);
        }
        let pad = INDENT.repeat(depth);
        let mut lines = Vec::new();
        for (predicate, objects) in grouped {
            let verb = if predicate.is_iri_str(rdf::TYPE) { "a".to_owned() } else { self.term(predicate) };
            let rendered: Vec<String> = objects.into_iter().map(|o| self.object(o, depth)).collect();
            lines.push(format!("{pad}{verb} {}", rendered.join(", ")));
        }
        lines.join(" ;\n")
    }

    fn object(&mut self, term: &'a Term, depth: usize) -> String {
        if let Some(members) = self.heads.get(term).cloned() {
            self.emitted.extend(self.chain_of(term));
            let parts: Vec<String> = members.into_iter().map(|m| self.object(m, depth)).collect();
            return format!("( {} )", parts.join(" "));
        }
        if self.inline.contains(term) {
            self.emitted.insert(term);
            if !self.graph.has_subject(term) {
                return "[]".to_owned();
            }
            let body = self.predicate_objects(term, depth + 1);
            return format!("[\n{body}\n{}]", INDENT.repeat(depth));
        }
        if term.is_iri_str(rdf::NIL) {
            return "()".to_owned();
        }
        self.term(term)
    }

    fn chain_of(&self, head: &'a Term) -> Vec<&'a Term> {
        let rest = Term::iri(rdf::REST);
        let mut chain = vec![head];
        let mut node = head;
        loop {
            let next = self.graph.objects_of(node, &rest)[0];
            if next.is_iri_str(rdf::NIL) {
                return chain;
            }
            chain.push(next);
            node = next;
        }
    }

    fn term(&mut self, term: &'a Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::BlankNode(_) => {
                let next = self.labels.len();
                self.labels.entry(term).or_insert_with(|| format!("_:b{next}")).clone()
            }
            Term::Literal(lit) => self.literal(lit),
        }
    }

    fn iri(&self, iri: &Iri) -> String {
        self.prefixes.compact(iri).unwrap_or_else(|| format!("<{}>", escape_iri(iri.as_str())))
    }

    fn literal(&self, lit: &Literal) -> String {
        let mut quoted = String::from("\"");
        escape_string(lit.lexical(), &mut quoted);
        quoted.push('"');
        if let Some(lang) = lit.language() {
            return format!("{quoted}@{lang}");
        }
        let lexical = lit.lexical();
        match lit.datatype().as_str() {
            xsd::STRING => quoted,
            xsd::INTEGER if is_integer_form(lexical) => lexical.to_owned(),
            xsd::DECIMAL if is_decimal_form(lexical) => lexical.to_owned(),
            xsd::BOOLEAN if lexical == "true" || lexical == "false" => lexical.to_owned(),
            _ => format!("{quoted}^^{}", self.iri(lit.datatype())),
        }
    }
}

fn escape_iri(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        if c.is_control() || c.is_whitespace() || "<>\"{}|^`\\".contains(c) {
            out.push_str(&format!("\\u{:04X}", c as u32));
        } else {
            out.push(c);
        }
    }
    out
}

fn unsigned(lexical: &str) -> &str {
    lexical.strip_prefix(['+', '-']).unwrap_or(lexical)
}

fn is_integer_form(lexical: &str) -> bool {
    let digits = unsigned(lexical);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_form(lexical: &str) -> bool {
    match unsigned(lexical).split_once('.') {
        Some((int, frac)) => {
            int.bytes().all(|b| b.is_ascii_digit()) && !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}
