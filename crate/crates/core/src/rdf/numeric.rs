//! Exact decimal values parsed from literal lexical forms, and the range
//! comparison used by `sh:minInclusive` and friends.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::Literal;

/// An arbitrary-precision decimal kept as normalized digit strings, so that
/// `1080`, `+1080` and `1080.000` compare (and hash) equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decimal {
    negative: bool,
    /// No leading zeros; empty means zero integer part.
    int: String,
    /// No trailing zeros.
    frac: String,
}

impl Decimal {
    /// Parses `[+-]?(digits(.digits?)?|.digits)`. Exponents are not accepted.
    pub fn parse(lexical: &str) -> Option<Decimal> {
        let (negative, rest) = match lexical.as_bytes().first()? {
            b'-' => (true, &lexical[1..]),
            b'+' => (false, &lexical[1..]),
            _ => (false, lexical),
        };
        let (int, frac) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int = int.trim_start_matches('0').to_owned();
        let frac = frac.trim_end_matches('0').to_owned();
        let negative = negative && !(int.is_empty() && frac.is_empty());
        Some(Decimal { negative, int, frac })
    }

    pub fn from_literal(literal: &Literal) -> Option<Decimal> {
        Decimal::parse(literal.lexical())
    }

    pub fn is_integer(&self) -> bool {
        self.frac.is_empty()
    }

    fn cmp_magnitude(&self, other: &Decimal) -> Ordering {
        self.int
            .len()
            .cmp(&other.int.len())
            .then_with(|| self.int.cmp(&other.int))
            .then_with(|| self.frac.cmp(&other.frac))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_magnitude(other),
            (true, true) => other.cmp_magnitude(self),
        }
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(if self.int.is_empty() { "0" } else { &self.int })?;
        if !self.frac.is_empty() {
            write!(f, ".{}", self.frac)?;
        }
        Ok(())
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let text = self.to_string();
        if self.is_integer() {
            if let Ok(v) = text.parse::<i64>() {
                return serializer.serialize_i64(v);
            }
        }
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => serializer.serialize_f64(v),
            _ => serializer.serialize_str(&text),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RangeRelation {
    MinInclusive,
    MaxInclusive,
    MinExclusive,
    MaxExclusive,
}

impl RangeRelation {
    pub fn name(self) -> &'static str {
        match self {
            RangeRelation::MinInclusive => "minInclusive",
            RangeRelation::MaxInclusive => "maxInclusive",
            RangeRelation::MinExclusive => "minExclusive",
            RangeRelation::MaxExclusive => "maxExclusive",
        }
    }

    fn holds(self, ord: Ordering) -> bool {
        match self {
            RangeRelation::MinInclusive => ord != Ordering::Less,
            RangeRelation::MaxInclusive => ord != Ordering::Greater,
            RangeRelation::MinExclusive => ord == Ordering::Greater,
            RangeRelation::MaxExclusive => ord == Ordering::Less,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Satisfied,
    Violated,
    Incomparable,
}

/// Compares `literal` against `bound` by decimal value of the lexical forms.
/// Datatype IRIs are not consulted: `"500"^^unit:GT` is comparable with `500`.
pub fn compare_literal(literal: &Literal, bound: &Literal, relation: RangeRelation) -> Comparison {
    match (Decimal::from_literal(literal), Decimal::from_literal(bound)) {
        (Some(value), Some(bound)) => {
            if relation.holds(value.cmp(&bound)) {
                Comparison::Satisfied
            } else {
                Comparison::Violated
            }
        }
        _ => Comparison::Incomparable,
    }
}
