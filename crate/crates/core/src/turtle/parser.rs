use std::collections::HashMap;

use super::{Document, ParseError, ParseErrorKind};
use crate::rdf::{Graph, Iri, Literal, PrefixMap, Term};
use crate::vocab::{rdf, xsd};

/// Parses a Turtle document. Stops at the first error.
///
/// Supported: `@prefix`/`PREFIX`, `@base`/`BASE`, `a`, predicate and object
/// lists, collections, `[ ... ]` blank nodes, `_:x` labels, single-line string
/// literals (plain, typed, language-tagged), integers, decimals, booleans and
/// comments. Long strings, exponents and relative IRIs are rejected.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut parser = Parser::new(text);
    parser.document()?;
    Ok(Document { graph: parser.graph, prefixes: parser.prefixes, base: parser.base })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    graph: Graph,
    prefixes: PrefixMap,
    base: Option<Iri>,
    labels: HashMap<String, Term>,
    rdf_type: Term,
    rdf_first: Term,
    rdf_rest: Term,
    rdf_nil: Term,
}

type PResult<T> = Result<T, ParseError>;

fn is_name_start(c: char) -> bool {
    c.is_alphabetic()
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '\u{B7}'
}

const LOCAL_ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            graph: Graph::new(),
            prefixes: PrefixMap::new(),
            base: None,
            labels: HashMap::new(),
            rdf_type: Term::iri(rdf::TYPE),
            rdf_first: Term::iri(rdf::FIRST),
            rdf_rest: Term::iri(rdf::REST),
            rdf_nil: Term::iri(rdf::NIL),
        }
    }

    fn error(&self, at: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = self.src[line_start..at].chars().count() + 1;
        ParseError { line, column, message: message.into(), kind }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            None => self.error(self.pos, ParseErrorKind::UnterminatedStatement, format!("unexpected end of input, expected {expected}")),
            Some(c) => self.error(self.pos, ParseErrorKind::UnexpectedToken, format!("unexpected {c:?}, expected {expected}")),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_nth(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("{c:?}")))
        }
    }

    fn emit(&mut self, s: &Term, p: &Term, o: &Term) {
        self.graph.insert_terms(s, p, o);
    }

    /// True if the input continues with `word` (case-insensitive when asked)
    /// followed by a character that cannot continue a name.
    fn at_keyword(&self, word: &str, case_insensitive: bool) -> bool {
        let rest = self.rest();
        let Some(head) = rest.get(..word.len()) else {
            return false;
        };
        let matches = if case_insensitive { head.eq_ignore_ascii_case(word) } else { head == word };
        matches && !rest[word.len()..].chars().next().is_some_and(|c| is_name_char(c) || c == ':')
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> PResult<()> {
        if self.rest().starts_with('@') {
            if self.at_keyword("@prefix", false) {
                self.pos += "@prefix".len();
                return self.prefix_directive(true);
            }
            if self.at_keyword("@base", false) {
                self.pos += "@base".len();
                return self.base_directive(true);
            }
            return Err(self.error(self.pos, ParseErrorKind::UnexpectedToken, "unknown directive"));
        }
        if self.at_keyword("PREFIX", true) {
            self.pos += "PREFIX".len();
            return self.prefix_directive(false);
        }
        if self.at_keyword("BASE", true) {
            self.pos += "BASE".len();
            return self.base_directive(false);
        }
        self.triples()?;
        self.expect('.')
    }

    fn prefix_directive(&mut self, dotted: bool) -> PResult<()> {
        self.skip_ws();
        let start = self.pos;
        let prefix = self.prefix_label()?;
        if self.peek() != Some(':') {
            return Err(self.error(start, ParseErrorKind::UnexpectedToken, "expected a prefix label ending in ':'"));
        }
        self.bump();
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.unexpected("a namespace IRI"));
        }
        let namespace = self.iriref()?;
        self.prefixes.insert(prefix, namespace);
        if dotted {
            self.expect('.')?;
        }
        Ok(())
    }

    fn base_directive(&mut self, dotted: bool) -> PResult<()> {
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.unexpected("a base IRI"));
        }
        self.base = Some(self.iriref()?);
        if dotted {
            self.expect('.')?;
        }
        Ok(())
    }

    fn triples(&mut self) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                let node = self.blank_node_property_list()?;
                self.skip_ws();
                if self.peek() != Some('.') {
                    self.predicate_object_list(&node)?;
                }
            }
            Some('(') => {
                let head = self.collection(None)?;
                self.predicate_object_list(&head)?;
            }
            _ => {
                let subject = self.subject()?;
                self.predicate_object_list(&subject)?;
            }
        }
        Ok(())
    }

    fn subject(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_nth(1) == Some(':') => self.blank_label(),
            Some(c) if is_name_start(c) || c == ':' => Ok(Term::Iri(self.prefixed_name()?)),
            _ => Err(self.unexpected("a subject")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Term> {
        self.skip_ws();
        if self.at_keyword("a", false) {
            self.bump();
            return Ok(self.rdf_type.clone());
        }
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some(c) if is_name_start(c) || c == ':' => Ok(Term::Iri(self.prefixed_name()?)),
            _ => Err(self.unexpected("a predicate")),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> PResult<()> {
        self.object(subject, predicate)?;
        loop {
            self.skip_ws();
            if self.peek() != Some(',') {
                return Ok(());
            }
            self.bump();
            self.object(subject, predicate)?;
        }
    }

    /// Parses one object and emits `(subject, predicate, object)` as soon as the
    /// object's identity is known, so nested triples follow their parent.
    fn object(&mut self, subject: &Term, predicate: &Term) -> PResult<()> {
        self.skip_ws();
        let object = match self.peek() {
            Some('[') => {
                self.bump();
                let node = self.graph.fresh_blank();
                self.emit(subject, predicate, &node);
                self.skip_ws();
                if self.peek() != Some(']') {
                    self.predicate_object_list(&node)?;
                }
                self.expect(']')?;
                return Ok(());
            }
            Some('(') => {
                self.collection(Some((subject, predicate)))?;
                return Ok(());
            }
            Some('<') => Term::Iri(self.iriref()?),
            Some('_') if self.peek_nth(1) == Some(':') => self.blank_label()?,
            Some('"') | Some('\'') => Term::Literal(self.string_literal()?),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => Term::Literal(self.numeric_literal()?),
            Some(_) if self.at_keyword("true", false) || self.at_keyword("false", false) => {
                let value = self.at_keyword("true", false);
                self.pos += if value { 4 } else { 5 };
                Term::Literal(Literal::boolean(value))
            }
            Some(c) if is_name_start(c) || c == ':' => Term::Iri(self.prefixed_name()?),
            _ => return Err(self.unexpected("an object")),
        };
        self.emit(subject, predicate, &object);
        Ok(())
    }

    fn blank_node_property_list(&mut self) -> PResult<Term> {
        self.bump();
        let node = self.graph.fresh_blank();
        self.skip_ws();
        if self.peek() != Some(']') {
            self.predicate_object_list(&node)?;
        }
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self, parent: Option<(&Term, &Term)>) -> PResult<Term> {
        self.bump();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.bump();
            let nil = self.rdf_nil.clone();
            if let Some((s, p)) = parent {
                self.emit(s, p, &nil);
            }
            return Ok(nil);
        }
        let head = self.graph.fresh_blank();
        if let Some((s, p)) = parent {
            self.emit(s, p, &head);
        }
        let (first, rest) = (self.rdf_first.clone(), self.rdf_rest.clone());
        let mut node = head.clone();
        loop {
            self.object(&node, &first)?;
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    let nil = self.rdf_nil.clone();
                    self.emit(&node, &rest, &nil);
                    return Ok(head);
                }
                None => return Err(self.unexpected("')'")),
                Some(_) => {
                    let next = self.graph.fresh_blank();
                    self.emit(&node, &rest, &next);
                    node = next;
                }
            }
        }
    }

    /// Name characters, with '.' allowed only between them.
    fn name_chars(&mut self) {
        while let Some(c) = self.peek() {
            let continues = is_name_char(c) || (c == '.' && self.peek_nth(1).is_some_and(is_name_char));
            if !continues {
                break;
            }
            self.bump();
        }
    }

    fn blank_label(&mut self) -> PResult<Term> {
        let start = self.pos;
        self.pos += 2;
        let label_start = self.pos;
        match self.peek() {
            Some(c) if is_name_char(c) => {}
            _ => return Err(self.error(start, ParseErrorKind::UnexpectedToken, "empty blank node label")),
        }
        self.name_chars();
        let label = self.src[label_start..self.pos].to_owned();
        if let Some(term) = self.labels.get(&label) {
            return Ok(term.clone());
        }
        let term = self.graph.fresh_blank();
        self.labels.insert(label, term.clone());
        Ok(term)
    }

    fn iriref(&mut self) -> PResult<Iri> {
        let start = self.pos;
        self.bump();
        let mut value = String::new();
        loop {
            let at = self.pos;
            match self.bump() {
                None => return Err(self.error(start, ParseErrorKind::BadIri, "unterminated IRI")),
                Some('>') => break,
                Some('\\') => value.push(self.unicode_escape(at, ParseErrorKind::BadIri)?),
                Some(c) if c.is_whitespace() || c.is_control() || "<\"{}|^`".contains(c) => {
                    return Err(self.error(at, ParseErrorKind::BadIri, format!("character {c:?} not allowed in an IRI")));
                }
                Some(c) => value.push(c),
            }
        }
        if !has_scheme(&value) {
            return Err(self.error(start, ParseErrorKind::BadIri, format!("relative IRI <{value}> is not supported")));
        }
        Iri::new(value).map_err(|e| self.error(start, ParseErrorKind::BadIri, e.to_string()))
    }

    /// Decodes `\uXXXX` or `\UXXXXXXXX`; the backslash is already consumed.
    fn unicode_escape(&mut self, at: usize, kind: ParseErrorKind) -> PResult<char> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error(at, kind, "invalid escape sequence")),
        };
        let digits = self.rest().get(..width).unwrap_or("");
        let code = (digits.len() == width && digits.bytes().all(|b| b.is_ascii_hexdigit()))
            .then(|| u32::from_str_radix(digits, 16).ok())
            .flatten()
            .and_then(char::from_u32);
        match code {
            Some(c) => {
                self.pos += width;
                Ok(c)
            }
            None => Err(self.error(at, kind, "invalid unicode escape")),
        }
    }

    fn prefix_label(&mut self) -> PResult<String> {
        let start = self.pos;
        if let Some(c) = self.peek() {
            if is_name_start(c) {
                self.name_chars();
            }
        }
        Ok(self.src[start..self.pos].to_owned())
    }

    fn prefixed_name(&mut self) -> PResult<Iri> {
        let start = self.pos;
        let prefix = self.prefix_label()?;
        if self.peek() != Some(':') {
            self.pos = start;
            return Err(self.error(start, ParseErrorKind::UnexpectedToken, format!("unexpected bare word {:?}", bare_word(self.rest()))));
        }
        self.bump();
        let local = self.local_name()?;
        let Some(namespace) = self.prefixes.get(&prefix) else {
            return Err(self.error(start, ParseErrorKind::UndeclaredPrefix, format!("undeclared prefix {prefix:?}")));
        };
        Iri::new(format!("{}{}", namespace.as_str(), local)).map_err(|e| self.error(start, ParseErrorKind::BadIri, e.to_string()))
    }

    fn local_name(&mut self) -> PResult<String> {
        let mut local = String::new();
        loop {
            let at = self.pos;
            match self.peek() {
                Some(c) if is_name_char(c) || c == ':' => {
                    self.bump();
                    local.push(c);
                }
                // A '.' belongs to the name only when the name continues after
                // it; otherwise it terminates the statement.
                Some('.') if !local.is_empty() && self.peek_nth(1).is_some_and(|c| is_name_char(c) || matches!(c, ':' | '%' | '\\')) => {
                    self.bump();
                    local.push('.');
                }
                Some('%') => {
                    let hex = self.rest().get(1..3).unwrap_or("");
                    if hex.len() != 2 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
                        return Err(self.error(at, ParseErrorKind::BadIri, "invalid percent escape"));
                    }
                    local.push('%');
                    local.push_str(hex);
                    self.pos += 3;
                }
                Some('\\') => match self.peek_nth(1) {
                    Some(e) if LOCAL_ESCAPABLE.contains(e) => {
                        self.pos += 1 + e.len_utf8();
                        local.push(e);
                    }
                    _ => return Err(self.error(at, ParseErrorKind::UnexpectedToken, "invalid local name escape")),
                },
                _ => return Ok(local),
            }
        }
    }

    fn string_literal(&mut self) -> PResult<Literal> {
        let start = self.pos;
        let quote = self.bump().expect("caller checked quote");
        if self.peek() == Some(quote) && self.peek_nth(1) == Some(quote) {
            return Err(self.error(start, ParseErrorKind::UnexpectedToken, "long (triple-quoted) strings are not supported"));
        }
        let mut value = String::new();
        loop {
            let at = self.pos;
            match self.bump() {
                None => return Err(self.error(at, ParseErrorKind::UnterminatedStatement, "unterminated string literal")),
                Some('\n') | Some('\r') => {
                    return Err(self.error(at, ParseErrorKind::BadLiteral, "line break inside a string literal"));
                }
                Some(c) if c == quote => break,
                Some('\\') => {
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') | Some('U') => {
                            value.push(self.unicode_escape(at, ParseErrorKind::BadLiteral)?);
                            continue;
                        }
                        _ => return Err(self.error(at, ParseErrorKind::BadLiteral, "invalid escape sequence")),
                    };
                    self.bump();
                    value.push(c);
                }
                Some(c) => value.push(c),
            }
        }
        match self.peek() {
            Some('@') => {
                let at = self.pos;
                self.bump();
                let tag_start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                    self.bump();
                }
                if self.pos == tag_start {
                    return Err(self.error(at, ParseErrorKind::BadLiteral, "empty language tag"));
                }
                while self.peek() == Some('-') {
                    self.bump();
                    let sub = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                        self.bump();
                    }
                    if self.pos == sub {
                        return Err(self.error(at, ParseErrorKind::BadLiteral, "malformed language tag"));
                    }
                }
                Ok(Literal::lang(value, &self.src[tag_start..self.pos]))
            }
            Some('^') if self.peek_nth(1) == Some('^') => {
                self.pos += 2;
                let datatype = match self.peek() {
                    Some('<') => self.iriref()?,
                    Some(c) if is_name_start(c) || c == ':' => self.prefixed_name()?,
                    _ => return Err(self.unexpected("a datatype IRI")),
                };
                Ok(Literal::typed(value, datatype))
            }
            _ => Ok(Literal::string(value)),
        }
    }

    fn numeric_literal(&mut self) -> PResult<Literal> {
        let start = self.pos;
        if matches!(self.peek(), Some('+') | Some('-')) {
            self.bump();
        }
        let mut digits = 0;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            digits += 1;
        }
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek_nth(1).is_some_and(|c| c.is_ascii_digit()) {
            decimal = true;
            self.bump();
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
        } else if digits == 0 {
            self.pos = start;
            return Err(self.unexpected("an object"));
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            return Err(self.error(self.pos, ParseErrorKind::UnexpectedToken, "numeric exponents are not supported"));
        }
        let lexical = &self.src[start..self.pos];
        let datatype = if decimal { xsd::DECIMAL } else { xsd::INTEGER };
        Ok(Literal::typed(lexical, Iri::new(datatype).expect("xsd IRI")))
    }
}

fn has_scheme(value: &str) -> bool {
    let Some((scheme, _)) = value.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

fn bare_word(rest: &str) -> &str {
    let end = rest.find(|c: char| !(is_name_char(c) || c == '.')).unwrap_or(rest.len());
    &rest[..end]
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRE: &str = "@prefix : <http://example.org/> .\n@prefix sh: <http://www.w3.org/ns/shacl#> .\n";

    fn parse_ok(body: &str) -> Document {
        parse(&format!("{PRE}{body}")).unwrap_or_else(|e| panic!("{e}"))
    }

    fn parse_err(body: &str) -> ParseError {
        parse(&format!("{PRE}{body}")).expect_err("should fail")
    }

    #[test]
    fn empty_input() {
        let doc = parse("").unwrap();
        assert!(doc.graph.is_empty());
        assert!(doc.prefixes.is_empty());
    }

    #[test]
    fn sparql_style_directives_and_base() {
        let doc = parse("PREFIX ex: <http://e/>\nBASE <http://b/>\nex:a ex:p ex:b .").unwrap();
        assert_eq!(doc.graph.len(), 1);
        assert_eq!(doc.base.unwrap().as_str(), "http://b/");
    }

    #[test]
    fn predicate_and_object_lists() {
        let doc = parse_ok(":s :p :a, :b ; :q 1 ; .");
        assert_eq!(doc.graph.len(), 3);
    }

    #[test]
    fn literals() {
        let doc = parse_ok(r#":s :p "x", 'y', "hei"@nb-NO, "5"^^:unit, 12, -3.5, +.5, true, false, "a\tbé" ."#);
        let objects: Vec<String> = doc.graph.iter().map(|t| t.object.to_string()).collect();
        assert_eq!(objects[0], "\"x\"");
        assert_eq!(objects[1], "\"y\"");
        assert_eq!(objects[2], "\"hei\"@nb-NO");
        assert_eq!(objects[3], "\"5\"^^<http://example.org/unit>");
        assert!(objects[4].starts_with("\"12\"^^<http://www.w3.org/2001/XMLSchema#integer>"));
        assert!(objects[5].starts_with("\"-3.5\"^^<http://www.w3.org/2001/XMLSchema#decimal>"));
        assert!(objects[6].starts_with("\"+.5\"^^<http://www.w3.org/2001/XMLSchema#decimal>"));
        assert!(objects[7].contains("boolean"));
        assert_eq!(objects[9], "\"a\\tb\u{e9}\"");
    }

    #[test]
    fn trailing_integer_before_dot() {
        let doc = parse_ok(":s sh:maxCount 1.");
        let t = doc.graph.iter().next().unwrap();
        assert_eq!(t.object.as_literal().unwrap().lexical(), "1");
    }

    #[test]
    fn local_name_with_trailing_dot_ends_statement() {
        let doc = parse_ok(":s :p :o.");
        assert!(doc.graph.iter().next().unwrap().object.is_iri_str("http://example.org/o"));
        let doc = parse_ok(":s :p :a.b .");
        assert!(doc.graph.iter().next().unwrap().object.is_iri_str("http://example.org/a.b"));
    }

    #[test]
    fn blank_nodes_and_collections() {
        let doc = parse_ok(":s :p [ :q :r ; ] ; :l ( :a [ :x 1 ] () ) .\n_:x :p _:x .\n[ :a :b ] .\n( 1 2 ) :p :o .");
        // 2 + head link + (list: 3 nodes x 2) + 1 inner + 1 + 1 + (2 list nodes x 2) + 1
        assert_eq!(doc.graph.len(), 2 + 1 + 6 + 1 + 1 + 1 + 4 + 1);
        let head = doc.graph.iter().find(|t| t.predicate.is_iri_str("http://example.org/l")).unwrap().object.clone();
        let members = doc.graph.collect_list(&head).unwrap();
        assert_eq!(members.len(), 3);
        assert!(members[2].is_iri_str(rdf::NIL));
    }

    #[test]
    fn labels_are_document_scoped_and_renamed() {
        let doc = parse_ok("_:alice :knows _:bob . _:bob :knows _:alice .");
        assert_eq!(doc.graph.blank_nodes().len(), 2);
        assert!(doc.graph.blank_nodes().iter().all(|b| b.to_string().starts_with("_:b")));
    }

    #[test]
    fn error_kinds_and_positions() {
        let e = parse_err(":s :p zz:o .");
        assert_eq!(e.kind, ParseErrorKind::UndeclaredPrefix);
        assert_eq!((e.line, e.column), (3, 7));

        let e = parse_err(":s :p <relative> .");
        assert_eq!(e.kind, ParseErrorKind::BadIri);

        let e = parse_err(":s :p <http://a b> .");
        assert_eq!((e.kind, e.column), (ParseErrorKind::BadIri, 16));

        let e = parse_err(":s :p \"abc\n\" .");
        assert_eq!((e.kind, e.line), (ParseErrorKind::BadLiteral, 3));

        let e = parse_err(":s :p \"\"\"long\"\"\" .");
        assert_eq!(e.kind, ParseErrorKind::UnexpectedToken);

        let e = parse_err(":s :p 1e3 .");
        assert_eq!((e.kind, e.column), (ParseErrorKind::UnexpectedToken, 8));

        let e = parse_err(":s :p :o");
        assert_eq!(e.kind, ParseErrorKind::UnterminatedStatement);

        let e = parse_err(":s :p ( :a :b");
        assert_eq!(e.kind, ParseErrorKind::UnterminatedStatement);

        let e = parse_err(":s sh:targetClass SGS_500 .");
        assert_eq!((e.kind, e.column), (ParseErrorKind::UnexpectedToken, 19));

        let e = parse_err(":s :p \"x\\q\" .");
        assert_eq!(e.kind, ParseErrorKind::BadLiteral);

        let e = parse_err("\n\n  } :p :o .");
        assert_eq!((e.line, e.column), (5, 3));
    }
}
