//! Continuous concepts, their order, the way-below relation between them,
//! decomposition into brackets and directed suprema.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::context::EXHAUSTIVE_LIMIT;
use crate::error::{Error, Result};
use crate::kernel::AcfContext;
use crate::order::FinitePoset;
use crate::sets::AttrSet;

/// A continuous concept with every selection member whose bracket it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousConcept {
    pub attrs: AttrSet,
    pub witnesses: Vec<usize>,
}

/// All continuous concepts of a context in canonical order, with the
/// inclusion and way-below matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptPoset {
    concepts: Vec<ContinuousConcept>,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    waybelow: Vec<Vec<bool>>,
    index: HashMap<AttrSet, usize>,
}

impl ConceptPoset {
    /// In a finite context the continuous concepts are exactly the brackets
    /// `⌈F⌉` of selection members.
    pub(crate) fn build(acf: &AcfContext) -> Self {
        let mut by_set: BTreeMap<AttrSet, Vec<usize>> = BTreeMap::new();
        for (i, &b) in acf.brackets().iter().enumerate() {
            by_set.entry(b).or_default().push(i);
        }
        let concepts: Vec<ContinuousConcept> = by_set
            .into_iter()
            .map(|(attrs, witnesses)| ContinuousConcept { attrs, witnesses })
            .collect();
        let n = concepts.len();
        let sel = acf.selection().members();
        let br = acf.brackets();
        let mut leq = vec![vec![false; n]; n];
        let mut waybelow = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (qi, qj) = (concepts[i].attrs, concepts[j].attrs);
                leq[i][j] = qi.is_subset(qj);
                waybelow[i][j] =
                    (0..sel.len()).any(|f| qi.is_subset(br[f]) && sel[f].is_subset(qj));
            }
        }
        let labels = concepts
            .iter()
            .map(|c| acf.context().format_attrs(c.attrs))
            .collect();
        let index = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.attrs, i))
            .collect();
        ConceptPoset {
            concepts,
            labels,
            leq,
            waybelow,
            index,
        }
    }

    pub fn concepts(&self) -> &[ContinuousConcept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn get(&self, i: usize) -> &ContinuousConcept {
        &self.concepts[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, attrs: AttrSet) -> Option<usize> {
        self.index.get(&attrs).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn way_below(&self, i: usize, j: usize) -> bool {
        self.waybelow[i][j]
    }

    pub fn leq_matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn waybelow_matrix(&self) -> &[Vec<bool>] {
        &self.waybelow
    }

    /// The inclusion order as a [`FinitePoset`] labelled by attribute names.
    pub fn to_finite_poset(&self) -> FinitePoset {
        FinitePoset::new(self.labels.clone(), &self.leq).expect("inclusion is a partial order")
    }

    /// Graphviz rendering: solid edges for covers, dashed edges for
    /// way-below pairs that are not covers.
    pub fn to_dot(&self) -> String {
        let n = self.len();
        let covers = |i: usize, j: usize| {
            i != j
                && self.leq[i][j]
                && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j])
        };
        let mut out = String::from("digraph concepts {\n  rankdir=BT;\n");
        for i in 0..n {
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}\"];",
                self.labels[i].replace('"', "\\\"")
            );
        }
        for i in 0..n {
            for j in 0..n {
                if covers(i, j) {
                    let _ = writeln!(out, "  n{i} -> n{j};");
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.waybelow[i][j] && !covers(i, j) {
                    let _ = writeln!(out, "  n{i} -> n{j} [style=dashed];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Whether `q` is a continuous concept, by lookup among the brackets.
pub fn is_continuous_concept(acf: &AcfContext, q: AttrSet) -> Result<bool> {
    acf.context().check_attrs(q)?;
    Ok(acf.poset().index_of(q).is_some())
}

/// Literal check: every `M ⊆ q` has some `F` with `M ⊆ ⌈F⌉ ⊆ q`.
pub fn is_continuous_concept_exhaustive(acf: &AcfContext, q: AttrSet) -> Result<bool> {
    acf.context().check_attrs(q)?;
    if q.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeLimit {
            what: "set size for exhaustive concept check",
            limit: EXHAUSTIVE_LIMIT,
            actual: q.len(),
        });
    }
    let br = acf.brackets();
    Ok(q.subsets()
        .all(|m| br.iter().any(|&b| m.is_subset(b) && b.is_subset(q))))
}

/// Freshly computed concept poset (the context also caches one).
pub fn enumerate_concepts(acf: &AcfContext) -> ConceptPoset {
    ConceptPoset::build(acf)
}

fn require_concept(acf: &AcfContext, q: &ContinuousConcept) -> Result<usize> {
    acf.poset()
        .index_of(q.attrs)
        .ok_or(Error::ForeignConcept(q.attrs))
}

/// `q1 ≪ q2` iff some `F` has `q1 ⊆ ⌈F⌉` and `F ⊆ q2`.
pub fn way_below(acf: &AcfContext, q1: &ContinuousConcept, q2: &ContinuousConcept) -> Result<bool> {
    let i = require_concept(acf, q1)?;
    let j = require_concept(acf, q2)?;
    Ok(acf.poset().way_below(i, j))
}

pub fn is_compact(acf: &AcfContext, q: &ContinuousConcept) -> Result<bool> {
    way_below(acf, q, q)
}

/// The brackets `⌈F⌉` with `F ⊆ q`, deduplicated. They form a directed
/// family whose union is `q`; both facts are checked.
pub fn decompose(acf: &AcfContext, q: &ContinuousConcept) -> Result<Vec<AttrSet>> {
    require_concept(acf, q)?;
    let sel = acf.selection().members();
    let mut parts: Vec<AttrSet> = (0..sel.len())
        .filter(|&f| sel[f].is_subset(q.attrs))
        .map(|f| acf.brackets()[f])
        .collect();
    parts.sort();
    parts.dedup();
    let union = parts.iter().fold(AttrSet::EMPTY, |u, &p| u.union(p));
    if union != q.attrs {
        return Err(Error::Invariant(format!(
            "brackets inside {} cover only {}",
            q.attrs, union
        )));
    }
    check_directed(&parts)?;
    Ok(parts)
}

fn check_directed(family: &[AttrSet]) -> Result<()> {
    for &a in family {
        for &b in family {
            if !family.iter().any(|&c| a.union(b).is_subset(c)) {
                return Err(Error::NotDirected(a, b));
            }
        }
    }
    Ok(())
}

/// Union of a directed family of concepts, which is again a concept.
pub fn directed_sup(acf: &AcfContext, family: &[ContinuousConcept]) -> Result<ContinuousConcept> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for q in family {
        require_concept(acf, q)?;
    }
    let sets: Vec<AttrSet> = family.iter().map(|q| q.attrs).collect();
    check_directed(&sets)?;
    let union = sets.iter().fold(AttrSet::EMPTY, |u, &s| u.union(s));
    let i = acf.poset().index_of(union).ok_or_else(|| {
        Error::Invariant(format!(
            "union {union} of a directed family is not a concept"
        ))
    })?;
    Ok(acf.poset().get(i).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::example_c0;
    use crate::kernel::induced_acf;

    fn s(v: &[usize]) -> AttrSet {
        AttrSet::from_indices(v.iter().copied())
    }

    #[test]
    fn c0_has_five_concepts() {
        let acf = induced_acf(example_c0()).unwrap();
        let got: Vec<AttrSet> = acf.poset().concepts().iter().map(|c| c.attrs).collect();
        assert_eq!(
            got,
            vec![s(&[0]), s(&[1]), s(&[0, 1]), s(&[1, 2]), s(&[0, 1, 2])]
        );
        // {m2, m3} is the bracket of {m3} and of {m2, m3}
        let c = &acf.poset().concepts()[3];
        assert_eq!(c.witnesses.len(), 2);
    }

    #[test]
    fn fast_and_exhaustive_agree_on_c0() {
        let acf = induced_acf(example_c0()).unwrap();
        for q in AttrSet::full(3).subsets() {
            assert_eq!(
                is_continuous_concept(&acf, q).unwrap(),
                is_continuous_concept_exhaustive(&acf, q).unwrap(),
                "{q}"
            );
        }
    }

    #[test]
    fn way_below_and_compactness() {
        let acf = induced_acf(example_c0()).unwrap();
        let p = acf.poset();
        let m1 = p.get(p.index_of(s(&[0])).unwrap()).clone();
        let top = p.get(p.index_of(s(&[0, 1, 2])).unwrap()).clone();
        assert!(way_below(&acf, &m1, &top).unwrap());
        assert!(!way_below(&acf, &top, &m1).unwrap());
        assert!(is_compact(&acf, &top).unwrap());
        let stranger = ContinuousConcept {
            attrs: s(&[2]),
            witnesses: vec![],
        };
        assert!(matches!(
            way_below(&acf, &stranger, &top),
            Err(Error::ForeignConcept(_))
        ));
    }

    #[test]
    fn decompose_covers_concept() {
        let acf = induced_acf(example_c0()).unwrap();
        let p = acf.poset();
        let top = p.get(p.index_of(s(&[0, 1, 2])).unwrap()).clone();
        let parts = decompose(&acf, &top).unwrap();
        assert_eq!(
            parts,
            vec![s(&[0]), s(&[1]), s(&[0, 1]), s(&[1, 2]), s(&[0, 1, 2])]
        );
    }

    #[test]
    fn directed_sup_rejects_incomparable_pair() {
        let acf = induced_acf(example_c0()).unwrap();
        let p = acf.poset();
        let a = p.get(p.index_of(s(&[0])).unwrap()).clone();
        let b = p.get(p.index_of(s(&[1, 2])).unwrap()).clone();
        assert!(matches!(
            directed_sup(&acf, &[a.clone(), b]),
            Err(Error::NotDirected(..))
        ));
        let ab = p.get(p.index_of(s(&[0, 1])).unwrap()).clone();
        assert_eq!(directed_sup(&acf, &[a, ab.clone()]).unwrap(), ab);
        assert!(matches!(directed_sup(&acf, &[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn dot_is_deterministic() {
        let acf = induced_acf(example_c0()).unwrap();
        let d1 = acf.poset().to_dot();
        let d2 = enumerate_concepts(&acf).to_dot();
        assert_eq!(d1, d2);
        assert!(d1.contains("n0 -> n2;"));
        assert!(d1.contains("n0 -> n4 [style=dashed];"));
    }
}
