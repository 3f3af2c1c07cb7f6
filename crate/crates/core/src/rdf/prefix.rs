use indexmap::IndexMap;

use super::Iri;

/// Prefix label to namespace IRI, in declaration order. Re-declaring a label
/// replaces its namespace but keeps its original position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: IndexMap<String, Iri>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, prefix: impl Into<String>, namespace: Iri) {
        self.entries.insert(prefix.into(), namespace);
    }

    pub fn get(&self, prefix: &str) -> Option<&Iri> {
        self.entries.get(prefix)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// `prefix:local` for the longest matching namespace whose remainder is a
    /// valid local name.
    pub fn compact(&self, iri: &Iri) -> Option<String> {
        self.entries
            .iter()
            .filter_map(|(prefix, ns)| {
                let local = iri.as_str().strip_prefix(ns.as_str())?;
                is_simple_local_name(local).then(|| (ns.as_str().len(), prefix, local))
            })
            .max_by_key(|(len, _, _)| *len)
            .map(|(_, prefix, local)| format!("{prefix}:{local}"))
    }
}

/// Local names the serializer is willing to emit unescaped: ASCII
/// alphanumerics, `_` and `-`, with `.` allowed only in the middle.
pub(crate) fn is_simple_local_name(local: &str) -> bool {
    let bytes = local.as_bytes();
    if bytes.is_empty() {
        return true;
    }
    let body_ok = bytes.iter().all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'));
    body_ok && !matches!(bytes[0], b'-' | b'.') && bytes[bytes.len() - 1] != b'.'
}
