//! Extant labels and label subsets.
//!
//! Labels compare in natural order, so `x2 < x10`. Every ordered structure in
//! the crate (extant lists, deck keys, JSON maps) uses this order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        Label(s.into())
    }

    /// The conventional extant label `x{i}` (1-based).
    pub fn indexed(i: usize) -> Self {
        Label(format!("x{i}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn natural_key(&self) -> (&str, usize, &str) {
        let s = self.0.as_str();
        let digits_start = s
            .char_indices()
            .rev()
            .take_while(|(_, c)| c.is_ascii_digit())
            .last()
            .map(|(i, _)| i)
            .unwrap_or(s.len());
        let (prefix, digits) = s.split_at(digits_start);
        let trimmed = digits.trim_start_matches('0');
        (prefix, trimmed.len(), trimmed)
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.natural_key()
            .cmp(&other.natural_key())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer).map(Label)
    }
}

/// A set of labels, always kept sorted. Ordering is lexicographic over the
/// sorted members, which gives the canonical subset order used by decks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(Vec<Label>);

impl LabelSet {
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Self {
        let mut v: Vec<Label> = labels.into_iter().collect();
        v.sort();
        v.dedup();
        LabelSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.0.binary_search(label).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn without(&self, label: &Label) -> LabelSet {
        LabelSet(self.0.iter().filter(|l| *l != label).cloned().collect())
    }

    /// Comma-joined form used as a JSON key.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(Label::as_str)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(key: &str) -> LabelSet {
        LabelSet::new(
            key.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(Label::from),
        )
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl<'a> IntoIterator for &'a LabelSet {
    type Item = &'a Label;
    type IntoIter = std::slice::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut v: Vec<Label> = ["x10", "x2", "x1", "y", "x02"]
            .iter()
            .map(|s| Label::from(*s))
            .collect();
        v.sort();
        let got: Vec<&str> = v.iter().map(Label::as_str).collect();
        assert_eq!(got, ["x1", "x02", "x2", "x10", "y"]);
    }

    #[test]
    fn label_set_key_roundtrip() {
        let s = LabelSet::new([Label::indexed(3), Label::indexed(1), Label::indexed(12)]);
        assert_eq!(s.key(), "x1,x3,x12");
        assert_eq!(LabelSet::parse_key(&s.key()), s);
        assert_eq!(s.without(&Label::indexed(3)).key(), "x1,x12");
    }
}
