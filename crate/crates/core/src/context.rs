//! Formal contexts and the derivation operators between object and attribute sets.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::sets::{AttrSet, ObjSet, MAX_ATTRIBUTES};

/// Attribute count above which the brute-force concept enumeration refuses to run.
pub const ENUMERATION_LIMIT: usize = 20;

/// Largest `|Q|` accepted by the exhaustive approximable-concept oracle.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Objects, attributes and a boolean incidence relation between them.
///
/// Each object row is stored as the set of attributes it has.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttrSet>,
}

fn check_labels(kind: &'static str, labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel {
                kind,
                label: l.clone(),
            });
        }
    }
    Ok(())
}

impl FormalContext {
    /// Builds a context from a dense incidence matrix, one row per object.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: &[Vec<bool>],
    ) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::DimensionMismatch {
                row: incidence.len(),
                found: incidence.len(),
                expected: objects.len(),
            });
        }
        let mut rows = Vec::with_capacity(objects.len());
        for (r, row) in incidence.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::DimensionMismatch {
                    row: r,
                    found: row.len(),
                    expected: attributes.len(),
                });
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| i)
                    .collect(),
            );
        }
        Self::from_rows(objects, attributes, rows)
    }

    /// Builds a context from `(object, attribute)` incidence pairs.
    pub fn from_pairs(
        objects: Vec<String>,
        attributes: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut rows = vec![AttrSet::EMPTY; objects.len()];
        for &(o, a) in pairs {
            if o >= objects.len() {
                return Err(Error::InvalidIndex {
                    kind: "object",
                    index: o,
                    len: objects.len(),
                });
            }
            if a >= attributes.len() {
                return Err(Error::InvalidIndex {
                    kind: "attribute",
                    index: a,
                    len: attributes.len(),
                });
            }
            rows[o] = rows[o].with(a);
        }
        Self::from_rows(objects, attributes, rows)
    }

    pub fn from_rows(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttrSet>,
    ) -> Result<Self> {
        if attributes.len() > MAX_ATTRIBUTES {
            return Err(Error::SizeLimit {
                what: "attribute count",
                limit: MAX_ATTRIBUTES,
                actual: attributes.len(),
            });
        }
        check_labels("object", &objects)?;
        check_labels("attribute", &attributes)?;
        if rows.len() != objects.len() {
            return Err(Error::DimensionMismatch {
                row: rows.len(),
                found: rows.len(),
                expected: objects.len(),
            });
        }
        let all = AttrSet::full(attributes.len());
        for (r, row) in rows.iter().enumerate() {
            if !row.is_subset(all) {
                return Err(Error::DimensionMismatch {
                    row: r,
                    found: row.max_index().unwrap_or(0) + 1,
                    expected: attributes.len(),
                });
            }
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn rows(&self) -> &[AttrSet] {
        &self.rows
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    pub fn all_attributes(&self) -> AttrSet {
        AttrSet::full(self.attributes.len())
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn check_attrs(&self, b: AttrSet) -> Result<()> {
        if b.is_subset(self.all_attributes()) {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                kind: "attribute",
                index: b
                    .difference(self.all_attributes())
                    .iter()
                    .next()
                    .unwrap_or(0),
                len: self.attributes.len(),
            })
        }
    }

    pub fn check_objs(&self, a: &ObjSet) -> Result<()> {
        match a.max_index() {
            Some(i) if i >= self.objects.len() => Err(Error::InvalidIndex {
                kind: "object",
                index: i,
                len: self.objects.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Objects having every attribute of `b`.
    pub fn extent(&self, b: AttrSet) -> Result<ObjSet> {
        self.check_attrs(b)?;
        Ok(self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, row)| b.is_subset(**row))
            .map(|(i, _)| i)
            .collect())
    }

    /// Attributes shared by every object of `a`.
    pub fn intent(&self, a: &ObjSet) -> Result<AttrSet> {
        self.check_objs(a)?;
        Ok(a.iter().fold(self.all_attributes(), |acc, o| {
            acc.intersection(self.rows[o])
        }))
    }

    /// `intent(extent(b))`.
    pub fn attr_closure(&self, b: AttrSet) -> Result<AttrSet> {
        self.check_attrs(b)?;
        Ok(self.closure(b))
    }

    pub(crate) fn closure(&self, b: AttrSet) -> AttrSet {
        self.rows
            .iter()
            .filter(|row| b.is_subset(**row))
            .fold(self.all_attributes(), |acc, row| acc.intersection(*row))
    }

    pub fn is_formal_concept(&self, b: AttrSet) -> Result<bool> {
        Ok(self.attr_closure(b)? == b)
    }

    /// Every closed attribute set, by testing all `2^n` subsets.
    pub fn enumerate_formal_concepts(&self) -> Result<Vec<AttrSet>> {
        self.enumerate_formal_concepts_with_limit(ENUMERATION_LIMIT)
    }

    pub fn enumerate_formal_concepts_with_limit(&self, limit: usize) -> Result<Vec<AttrSet>> {
        let n = self.num_attributes();
        if n > limit {
            return Err(Error::SizeLimit {
                what: "attribute count for concept enumeration",
                limit,
                actual: n,
            });
        }
        let mut out: Vec<AttrSet> = self
            .all_attributes()
            .subsets()
            .filter(|&b| self.closure(b) == b)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Every closed attribute set, by closing one-attribute extensions of
    /// known closed sets until nothing new appears. Works for any width.
    pub fn enumerate_formal_concepts_by_closure(&self) -> Vec<AttrSet> {
        let bottom = self.closure(AttrSet::EMPTY);
        let mut seen = BTreeSet::from([bottom]);
        let mut stack = vec![bottom];
        while let Some(c) = stack.pop() {
            for m in self.all_attributes().difference(c).iter() {
                let next = self.closure(c.with(m));
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Closed sets by whichever enumeration fits the width.
    pub(crate) fn closed_sets(&self) -> Vec<AttrSet> {
        if self.num_attributes() <= ENUMERATION_LIMIT {
            self.enumerate_formal_concepts()
                .expect("width checked against the enumeration limit")
        } else {
            self.enumerate_formal_concepts_by_closure()
        }
    }

    /// Whether `q` contains the closure of each of its finite subsets.
    ///
    /// For a finite attribute set this is the same as `q` being closed,
    /// since `q` is one of its own finite subsets.
    pub fn is_approximable_concept(&self, q: AttrSet) -> Result<bool> {
        self.is_formal_concept(q)
    }

    /// Literal check over every subset `M ⊆ q`.
    pub fn is_approximable_concept_exhaustive(&self, q: AttrSet) -> Result<bool> {
        self.check_attrs(q)?;
        if q.len() > EXHAUSTIVE_LIMIT {
            return Err(Error::SizeLimit {
                what: "set size for exhaustive approximable check",
                limit: EXHAUSTIVE_LIMIT,
                actual: q.len(),
            });
        }
        Ok(q.subsets().all(|m| self.closure(m).is_subset(q)))
    }

    /// `{m1, m2}` using attribute names.
    pub fn format_attrs(&self, b: AttrSet) -> String {
        let names: Vec<&str> = b.iter().map(|i| self.attributes[i].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Parses a comma separated list of attribute names or indices.
    pub fn parse_attrs(&self, text: &str) -> Result<AttrSet> {
        let mut out = AttrSet::EMPTY;
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i = match self.attribute_index(tok) {
                Some(i) => i,
                None => tok
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i < self.num_attributes())
                    .ok_or_else(|| Error::UnknownElement(tok.to_string()))?,
            };
            out = out.with(i);
        }
        Ok(out)
    }
}

/// The three-object example context used throughout the tests.
pub fn example_c0() -> FormalContext {
    FormalContext::from_pairs(
        vec!["o1".into(), "o2".into(), "o3".into()],
        vec!["m1".into(), "m2".into(), "m3".into()],
        &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)],
    )
    .expect("static example is well formed")
}
