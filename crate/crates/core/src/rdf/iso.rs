//! Graph isomorphism up to blank node renaming.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::{Graph, Term};

type Key<'a> = (&'a Term, &'a Term, &'a Term);

struct Side<'a> {
    ground: HashSet<Key<'a>>,
    blank_triples: Vec<Key<'a>>,
    blanks: Vec<&'a Term>,
    colors: HashMap<&'a Term, u64>,
    /// Triples mentioning each blank node.
    incident: HashMap<&'a Term, Vec<Key<'a>>>,
    all: HashSet<Key<'a>>,
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

impl<'a> Side<'a> {
    fn new(graph: &'a Graph) -> Self {
        let mut side = Side {
            ground: HashSet::new(),
            blank_triples: Vec::new(),
            blanks: Vec::new(),
            colors: HashMap::new(),
            incident: HashMap::new(),
            all: HashSet::new(),
        };
        for t in graph.iter() {
            let key = (t.subject, t.predicate, t.object);
            side.all.insert(key);
            if t.subject.is_blank() || t.object.is_blank() {
                side.blank_triples.push(key);
                for b in [t.subject, t.object].into_iter().filter(|x| x.is_blank()) {
                    let entry = side.incident.entry(b).or_default();
                    if entry.is_empty() {
                        side.blanks.push(b);
                    }
                    if !entry.contains(&key) {
                        entry.push(key);
                    }
                }
            } else {
                side.ground.insert(key);
            }
        }
        side
    }

    fn term_color(&self, term: &Term, colors: &HashMap<&'a Term, u64>) -> u64 {
        match colors.get(term) {
            Some(c) => hash_of(&("blank", *c)),
            None => hash_of(&("term", term)),
        }
    }

    fn refine(&mut self, rounds: usize) {
        let mut colors: HashMap<&'a Term, u64> = self.blanks.iter().map(|b| (*b, 0)).collect();
        for _ in 0..rounds {
            let mut next = HashMap::new();
            for b in &self.blanks {
                let mut signature: Vec<(u8, u64, u64)> = self.incident[b]
                    .iter()
                    .flat_map(|(s, p, o)| {
                        let mut parts = Vec::new();
                        if s == b {
                            parts.push((0u8, hash_of(p), self.term_color(o, &colors)));
                        }
                        if o == b {
                            parts.push((1u8, hash_of(p), self.term_color(s, &colors)));
                        }
                        parts
                    })
                    .collect();
                signature.sort_unstable();
                next.insert(*b, hash_of(&(colors[b], signature)));
            }
            colors = next;
        }
        self.colors = colors;
    }

    fn color_histogram(&self) -> HashMap<u64, usize> {
        let mut hist = HashMap::new();
        for c in self.colors.values() {
            *hist.entry(*c).or_default() += 1;
        }
        hist
    }
}

/// True if some bijection between the blank nodes of `a` and `b` maps the
/// triples of `a` exactly onto the triples of `b`.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut left = Side::new(a);
    let mut right = Side::new(b);
    if left.ground != right.ground || left.blanks.len() != right.blanks.len() {
        return false;
    }
    if left.blank_triples.len() != right.blank_triples.len() {
        return false;
    }
    let rounds = left.blanks.len().min(8) + 1;
    left.refine(rounds);
    right.refine(rounds);
    if left.color_histogram() != right.color_histogram() {
        return false;
    }

    // Assign the most constrained (rarest color) blank nodes first.
    let hist = left.color_histogram();
    let mut order = left.blanks.clone();
    order.sort_by_key(|b| (hist[&left.colors[b]], left.colors[b]));

    let mut mapping: HashMap<&Term, &Term> = HashMap::new();
    let mut used: HashSet<&Term> = HashSet::new();
    search(&left, &right, &order, 0, &mut mapping, &mut used)
}

fn search<'a>(
    left: &Side<'a>,
    right: &Side<'a>,
    order: &[&'a Term],
    depth: usize,
    mapping: &mut HashMap<&'a Term, &'a Term>,
    used: &mut HashSet<&'a Term>,
) -> bool {
    let Some(&b) = order.get(depth) else {
        return true;
    };
    let color = left.colors[b];
    for &candidate in &right.blanks {
        if used.contains(candidate) || right.colors[candidate] != color {
            continue;
        }
        mapping.insert(b, candidate);
        if consistent(left, right, b, mapping) {
            used.insert(candidate);
            if search(left, right, order, depth + 1, mapping, used) {
                return true;
            }
            used.remove(candidate);
        }
        mapping.remove(b);
    }
    false
}

/// Checks every triple around `b` whose blank nodes are all mapped already.
fn consistent<'a>(left: &Side<'a>, right: &Side<'a>, b: &'a Term, mapping: &HashMap<&'a Term, &'a Term>) -> bool {
    let map = |t: &'a Term| -> Option<&'a Term> {
        if t.is_blank() {
            mapping.get(t).copied()
        } else {
            Some(t)
        }
    };
    let ours = &left.incident[b];
    let theirs = right.incident.get(mapping[b]).map_or(0, Vec::len);
    if ours.len() != theirs {
        return false;
    }
    ours.iter().all(|(s, p, o)| match (map(s), map(o)) {
        (Some(s), Some(o)) => right.all.contains(&(s, *p, o)),
        _ => true,
    })
}
