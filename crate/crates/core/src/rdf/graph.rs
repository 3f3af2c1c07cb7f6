use std::collections::{HashMap, HashSet};

use indexmap::IndexSet;
use thiserror::Error;

use super::{Term, Triple, TripleRef};
use crate::vocab::{rdf, rdfs};

type TermId = u32;
type TripleId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("list node {node} has {count} rdf:first values, expected exactly one")]
    First { node: Term, count: usize },
    #[error("list node {node} has {count} rdf:rest values, expected exactly one")]
    Rest { node: Term, count: usize },
    #[error("list starting at {head} is cyclic")]
    Cycle { head: Term },
    #[error("{node} cannot be a list node")]
    NotANode { node: Term },
}

/// An indexed set of triples.
///
/// Terms are interned; triples are kept in insertion order. Lookups with a bound
/// subject, object, predicate+object or predicate go through a dedicated index.
/// Graphs are built during load and afterwards only read, so `&Graph` may be
/// shared freely between threads.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    terms: IndexSet<Term>,
    triples: IndexSet<[TermId; 3]>,
    by_subject: HashMap<TermId, Vec<TripleId>>,
    by_predicate: HashMap<TermId, Vec<TripleId>>,
    by_predicate_object: HashMap<(TermId, TermId), Vec<TripleId>>,
    by_object: HashMap<TermId, Vec<TripleId>>,
    next_blank: u64,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut graph = Graph::new();
        for t in triples {
            graph.insert(&t);
        }
        graph
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    fn intern(&mut self, term: &Term) -> TermId {
        if let Some(id) = self.terms.get_index_of(term) {
            return id as TermId;
        }
        self.terms.insert_full(term.clone()).0 as TermId
    }

    fn id_of(&self, term: &Term) -> Option<TermId> {
        self.terms.get_index_of(term).map(|i| i as TermId)
    }

    /// Returns `true` if the triple was not already present.
    pub fn insert(&mut self, triple: &Triple) -> bool {
        let predicate = Term::Iri(triple.predicate.clone());
        self.insert_terms(&triple.subject, &predicate, &triple.object)
    }

    /// Convenience for callers that already hold the three terms.
    ///
    /// Panics if the predicate is not an IRI or the subject is a literal.
    pub fn insert_terms(&mut self, subject: &Term, predicate: &Term, object: &Term) -> bool {
        assert!(predicate.as_iri().is_some(), "predicate must be an IRI");
        assert!(!subject.is_literal(), "subject must not be a literal");
        let key = [self.intern(subject), self.intern(predicate), self.intern(object)];
        let (idx, fresh) = self.triples.insert_full(key);
        if fresh {
            let idx = idx as TripleId;
            let [s, p, o] = key;
            self.by_subject.entry(s).or_default().push(idx);
            self.by_predicate.entry(p).or_default().push(idx);
            self.by_predicate_object.entry((p, o)).or_default().push(idx);
            self.by_object.entry(o).or_default().push(idx);
        }
        fresh
    }

    pub fn contains(&self, subject: &Term, predicate: &Term, object: &Term) -> bool {
        match (self.id_of(subject), self.id_of(predicate), self.id_of(object)) {
            (Some(s), Some(p), Some(o)) => self.triples.contains(&[s, p, o]),
            _ => false,
        }
    }

    fn triple_ref(&self, key: &[TermId; 3]) -> TripleRef<'_> {
        TripleRef {
            subject: &self.terms[key[0] as usize],
            predicate: &self.terms[key[1] as usize],
            object: &self.terms[key[2] as usize],
        }
    }

    /// All triples in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = TripleRef<'_>> + '_ {
        self.triples.iter().map(|k| self.triple_ref(k))
    }

    /// Triples agreeing with every bound position, in insertion order.
    pub fn matching<'a>(
        &'a self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Box<dyn Iterator<Item = TripleRef<'a>> + 'a> {
        let lookup = |t: Option<&Term>| t.map(|t| self.id_of(t));
        let (s, p, o) = (lookup(subject), lookup(predicate), lookup(object));
        // A bound term that was never interned cannot match anything.
        if matches!(s, Some(None)) || matches!(p, Some(None)) || matches!(o, Some(None)) {
            return Box::new(std::iter::empty());
        }
        let (s, p, o) = (s.flatten(), p.flatten(), o.flatten());
        let candidates: Option<&Vec<TripleId>> = match (s, p, o) {
            (Some(s), _, _) => Some(self.by_subject.get(&s).unwrap_or(EMPTY)),
            (None, Some(p), Some(o)) => Some(self.by_predicate_object.get(&(p, o)).unwrap_or(EMPTY)),
            (None, None, Some(o)) => Some(self.by_object.get(&o).unwrap_or(EMPTY)),
            (None, Some(p), None) => Some(self.by_predicate.get(&p).unwrap_or(EMPTY)),
            (None, None, None) => None,
        };
        let keep = move |k: &[TermId; 3]| {
            s.is_none_or(|s| k[0] == s) && p.is_none_or(|p| k[1] == p) && o.is_none_or(|o| k[2] == o)
        };
        match candidates {
            Some(ids) => Box::new(
                ids.iter()
                    .map(move |&i| &self.triples[i as usize])
                    .filter(move |k| keep(k))
                    .map(move |k| self.triple_ref(k)),
            ),
            None => Box::new(self.iter()),
        }
    }

    /// Owned variant of [`Graph::matching`].
    pub fn match_pattern(&self, subject: Option<&Term>, predicate: Option<&Term>, object: Option<&Term>) -> Vec<Triple> {
        self.matching(subject, predicate, object).map(|t| t.to_owned()).collect()
    }

    /// Distinct objects of `(subject, predicate, ?)`, in insertion order.
    pub fn objects_of<'a>(&'a self, subject: &Term, predicate: &Term) -> Vec<&'a Term> {
        self.matching(Some(subject), Some(predicate), None).map(|t| t.object).collect()
    }

    /// Distinct subjects of `(?, predicate, object)`, in insertion order.
    pub fn subjects_of<'a>(&'a self, predicate: &Term, object: &Term) -> Vec<&'a Term> {
        self.matching(None, Some(predicate), Some(object)).map(|t| t.subject).collect()
    }

    /// Subjects in order of their first appearance as a subject.
    pub fn subjects(&self) -> Vec<&Term> {
        let mut seen = IndexSet::new();
        for t in self.iter() {
            seen.insert(t.subject);
        }
        seen.into_iter().collect()
    }

    pub fn has_subject(&self, term: &Term) -> bool {
        self.id_of(term).is_some_and(|id| self.by_subject.contains_key(&id))
    }

    pub fn has_term(&self, term: &Term) -> bool {
        self.terms.contains(term)
    }

    /// Members of the RDF collection whose head is `head`.
    pub fn collect_list(&self, head: &Term) -> Result<Vec<Term>, ListError> {
        let first = Term::iri(rdf::FIRST);
        let rest = Term::iri(rdf::REST);
        let mut members = Vec::new();
        let mut visited = HashSet::new();
        let mut node = head;
        while !node.is_iri_str(rdf::NIL) {
            if node.is_literal() {
                return Err(ListError::NotANode { node: node.clone() });
            }
            if !visited.insert(node) {
                return Err(ListError::Cycle { head: head.clone() });
            }
            let firsts = self.objects_of(node, &first);
            if firsts.len() != 1 {
                return Err(ListError::First { node: node.clone(), count: firsts.len() });
            }
            let rests = self.objects_of(node, &rest);
            if rests.len() != 1 {
                return Err(ListError::Rest { node: node.clone(), count: rests.len() });
            }
            members.push(firsts[0].clone());
            node = rests[0];
        }
        Ok(members)
    }

    /// Appends `members` as a fresh RDF collection and returns its head.
    pub fn insert_list(&mut self, members: &[Term]) -> Term {
        let first = Term::iri(rdf::FIRST);
        let rest = Term::iri(rdf::REST);
        let nodes: Vec<Term> = members.iter().map(|_| self.fresh_blank()).collect();
        for (i, member) in members.iter().enumerate() {
            self.insert_terms(&nodes[i], &first, member);
            let next = nodes.get(i + 1).cloned().unwrap_or_else(|| Term::iri(rdf::NIL));
            self.insert_terms(&nodes[i], &rest, &next);
        }
        nodes.into_iter().next().unwrap_or_else(|| Term::iri(rdf::NIL))
    }

    /// Every class whose instances count as instances of `class`: `class`
    /// itself plus everything reaching it through `rdfs:subClassOf`.
    /// Cycles are tolerated.
    pub fn subclass_closure(&self, class: &Term) -> IndexSet<Term> {
        let sub_class_of = Term::iri(rdfs::SUB_CLASS_OF);
        let mut closure = IndexSet::new();
        closure.insert(class.clone());
        let mut i = 0;
        while i < closure.len() {
            let current = closure[i].clone();
            for sub in self.subjects_of(&sub_class_of, &current) {
                closure.insert(sub.clone());
            }
            i += 1;
        }
        closure
    }

    /// Nodes typed with `class` or any of its subclasses.
    pub fn instances_of(&self, class: &Term) -> IndexSet<Term> {
        let rdf_type = Term::iri(rdf::TYPE);
        let mut instances = IndexSet::new();
        for c in self.subclass_closure(class) {
            for node in self.subjects_of(&rdf_type, &c) {
                instances.insert(node.clone());
            }
        }
        instances
    }

    /// Whether `node` is an instance of `class` under the subclass closure.
    pub fn is_instance_of(&self, node: &Term, class: &Term) -> bool {
        let rdf_type = Term::iri(rdf::TYPE);
        let types = self.objects_of(node, &rdf_type);
        if types.is_empty() {
            return false;
        }
        let closure = self.subclass_closure(class);
        types.iter().any(|t| closure.contains(*t))
    }

    /// A blank node label not used anywhere in this graph.
    pub fn fresh_blank(&mut self) -> Term {
        loop {
            let candidate = Term::blank(format!("b{}", self.next_blank));
            self.next_blank += 1;
            if !self.terms.contains(&candidate) {
                return candidate;
            }
        }
    }

    /// Adds every triple of `other`, giving its blank nodes fresh labels so
    /// they stay distinct from blank nodes already in `self`.
    pub fn merge(&mut self, other: &Graph) {
        let mut renamed: HashMap<Term, Term> = HashMap::new();
        for t in other.iter() {
            let mut map = |term: &Term, g: &mut Graph| -> Term {
                if !term.is_blank() {
                    return term.clone();
                }
                renamed.entry(term.clone()).or_insert_with(|| g.fresh_blank()).clone()
            };
            let s = map(t.subject, self);
            let o = map(t.object, self);
            self.insert_terms(&s, t.predicate, &o);
        }
    }

    /// A copy holding only the triples for which `keep` returns true.
    pub fn filtered(&self, mut keep: impl FnMut(&TripleRef<'_>) -> bool) -> Graph {
        let mut out = Graph::new();
        for t in self.iter() {
            if keep(&t) {
                out.insert_terms(t.subject, t.predicate, t.object);
            }
        }
        out.next_blank = self.next_blank;
        out
    }

    /// All blank nodes, in order of first interning.
    pub fn blank_nodes(&self) -> Vec<&Term> {
        self.terms.iter().filter(|t| t.is_blank()).collect()
    }
}

static EMPTY: &Vec<TripleId> = &Vec::new();

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        Term::iri(&format!("http://example.org/{s}"))
    }

    fn g(triples: &[(&str, &str, &str)]) -> Graph {
        let mut graph = Graph::new();
        for (s, p, o) in triples {
            graph.insert_terms(&t(s), &t(p), &t(o));
        }
        graph
    }

    #[test]
    fn insert_is_idempotent() {
        let mut graph = Graph::new();
        assert!(graph.insert_terms(&t("a"), &t("p"), &t("b")));
        assert_eq!(graph.len(), 1);
        assert!(!graph.insert_terms(&t("a"), &t("p"), &t("b")));
        assert_eq!(graph.len(), 1);
    }

    #[test]
    fn match_each_binding_shape() {
        let graph = g(&[("a", "p", "b"), ("a", "q", "c"), ("d", "p", "b"), ("d", "p", "c")]);
        let count = |s: Option<&str>, p: Option<&str>, o: Option<&str>| {
            let (s, p, o) = (s.map(t), p.map(t), o.map(t));
            graph.matching(s.as_ref(), p.as_ref(), o.as_ref()).count()
        };
        assert_eq!(count(None, None, None), 4);
        assert_eq!(count(Some("a"), None, None), 2);
        assert_eq!(count(None, Some("p"), None), 3);
        assert_eq!(count(None, None, Some("b")), 2);
        assert_eq!(count(None, Some("p"), Some("c")), 1);
        assert_eq!(count(Some("d"), Some("p"), None), 2);
        assert_eq!(count(Some("d"), None, Some("c")), 1);
        assert_eq!(count(Some("a"), Some("p"), Some("b")), 1);
        assert_eq!(count(Some("zz"), None, None), 0);
        assert_eq!(Graph::new().matching(None, None, None).count(), 0);
    }

    #[test]
    fn objects_of_absent_subject_is_empty() {
        let graph = g(&[("a", "p", "b")]);
        assert!(graph.objects_of(&t("fresh"), &t("p")).is_empty());
    }

    #[test]
    fn collect_list_cases() {
        let mut graph = Graph::new();
        assert_eq!(graph.collect_list(&Term::iri(rdf::NIL)).unwrap(), vec![]);
        let head = graph.insert_list(&[t("x"), t("y"), t("z")]);
        assert_eq!(graph.collect_list(&head).unwrap(), vec![t("x"), t("y"), t("z")]);

        // second node has no rdf:rest
        let mut broken = Graph::new();
        let (n1, n2) = (Term::blank("n1"), Term::blank("n2"));
        broken.insert_terms(&n1, &Term::iri(rdf::FIRST), &t("x"));
        broken.insert_terms(&n1, &Term::iri(rdf::REST), &n2);
        broken.insert_terms(&n2, &Term::iri(rdf::FIRST), &t("y"));
        assert!(matches!(broken.collect_list(&n1), Err(ListError::Rest { count: 0, .. })));

        let mut cyclic = Graph::new();
        cyclic.insert_terms(&n1, &Term::iri(rdf::FIRST), &t("x"));
        cyclic.insert_terms(&n1, &Term::iri(rdf::REST), &n1);
        assert!(matches!(cyclic.collect_list(&n1), Err(ListError::Cycle { .. })));
    }

    #[test]
    fn subclass_closure_chain_and_cycle() {
        let mut graph = Graph::new();
        let sc = Term::iri(rdfs::SUB_CLASS_OF);
        graph.insert_terms(&t("A"), &sc, &t("B"));
        graph.insert_terms(&t("B"), &sc, &t("C"));
        let closure: HashSet<Term> = graph.subclass_closure(&t("C")).into_iter().collect();
        assert_eq!(closure, [t("A"), t("B"), t("C")].into_iter().collect());
        assert_eq!(graph.subclass_closure(&t("Lonely")).len(), 1);

        graph.insert_terms(&t("C"), &sc, &t("A"));
        assert_eq!(graph.subclass_closure(&t("A")).len(), 3);
    }

    #[test]
    fn instances_follow_subclasses() {
        let mut graph = Graph::new();
        let ty = Term::iri(rdf::TYPE);
        graph.insert_terms(&t("co1"), &ty, &t("ChiefOfficer"));
        graph.insert_terms(&t("ChiefOfficer"), &Term::iri(rdfs::SUB_CLASS_OF), &t("DeckOfficerPosition"));
        assert!(graph.instances_of(&t("DeckOfficerPosition")).contains(&t("co1")));
        assert!(graph.is_instance_of(&t("co1"), &t("DeckOfficerPosition")));
        assert!(Graph::new().instances_of(&t("Vessel")).is_empty());
    }

    #[test]
    fn merge_keeps_blank_nodes_apart() {
        let mut a = Graph::new();
        let b0 = a.fresh_blank();
        a.insert_terms(&b0, &t("p"), &t("x"));
        let mut b = Graph::new();
        let other_b0 = b.fresh_blank();
        assert_eq!(b0, other_b0);
        b.insert_terms(&other_b0, &t("p"), &t("y"));
        a.merge(&b);
        assert_eq!(a.len(), 2);
        assert_eq!(a.blank_nodes().len(), 2);
    }
}
