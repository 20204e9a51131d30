//! Syntactic conditions on a context that mirror properties of its concept
//! poset: algebraicity, a bottom, a top, bounded completeness and meets.

use std::collections::{BTreeSet, HashMap};

use crate::kernel::AcfContext;
use crate::order::{DomainClass, EmptySetConvention, CLASSIFY_LIMIT};
use crate::sets::{forall_subsets, AttrSet};

/// Subsets of a bracket enumerated by the literal checks below.
const SUBSET_LIMIT: usize = 12;

/// Largest bracket for which the BC check enumerates subsets.
const BC_LIMIT: usize = 20;

/// One condition with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub holds: bool,
    pub counterexample: Option<String>,
}

impl ConditionCheck {
    fn yes() -> Self {
        ConditionCheck {
            holds: true,
            counterexample: None,
        }
    }

    fn no(msg: String) -> Self {
        ConditionCheck {
            holds: false,
            counterexample: Some(msg),
        }
    }
}

fn name(acf: &AcfContext, b: AttrSet) -> String {
    acf.context().format_attrs(b)
}

/// AD: for `F2 ⊆ ⌈F1⌉` there is `F ⊆ ⌈F⌉` with `F2 ⊆ ⌈F⌉` and `F ⊆ ⌈F1⌉`.
pub fn check_ad(acf: &AcfContext) -> ConditionCheck {
    let sel = acf.selection().members();
    let br = acf.brackets();
    for f1 in 0..sel.len() {
        for f2 in 0..sel.len() {
            if !sel[f2].is_subset(br[f1]) {
                continue;
            }
            let ok = (0..sel.len()).any(|f| {
                sel[f2].is_subset(br[f]) && sel[f].is_subset(br[f]) && sel[f].is_subset(br[f1])
            });
            if !ok {
                return ConditionCheck::no(format!(
                    "F1 = {}, F2 = {}",
                    name(acf, sel[f1]),
                    name(acf, sel[f2])
                ));
            }
        }
    }
    ConditionCheck::yes()
}

/// Some `G` lies inside every bracket.
pub fn check_pointed(acf: &AcfContext) -> ConditionCheck {
    let sel = acf.selection().members();
    let br = acf.brackets();
    if sel.iter().any(|g| br.iter().all(|b| g.is_subset(*b))) {
        return ConditionCheck::yes();
    }
    let common = br
        .iter()
        .fold(acf.context().all_attributes(), |a, &b| a.intersection(b));
    ConditionCheck::no(format!(
        "no member lies inside every bracket; their intersection is {}",
        name(acf, common)
    ))
}

/// The union of all brackets is a continuous concept.
pub fn check_topped(acf: &AcfContext) -> ConditionCheck {
    let union = acf
        .brackets()
        .iter()
        .fold(AttrSet::EMPTY, |a, &b| a.union(b));
    if acf.poset().index_of(union).is_some() {
        ConditionCheck::yes()
    } else {
        ConditionCheck::no(format!(
            "union of brackets {} is not a concept",
            name(acf, union)
        ))
    }
}

/// Every nonempty subset of a bracket is a selection member.
pub fn check_bc(acf: &AcfContext) -> ConditionCheck {
    let sel = acf.selection();
    let mut done = BTreeSet::new();
    for &b in acf.brackets() {
        if !done.insert(b) {
            continue;
        }
        if b.len() > BC_LIMIT {
            return ConditionCheck::no(format!("bracket {} too large to enumerate", name(acf, b)));
        }
        if let Some(x) = b.subsets().find(|x| !x.is_empty() && !sel.contains(*x)) {
            return ConditionCheck::no(format!(
                "{} ⊆ {} is not a member",
                name(acf, x),
                name(acf, b)
            ));
        }
    }
    ConditionCheck::yes()
}

/// Condition pair for binary meets: SS1 and SS2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsCheck {
    pub ss1: ConditionCheck,
    pub ss2: ConditionCheck,
}

impl SsCheck {
    pub fn holds(&self) -> bool {
        self.ss1.holds && self.ss2.holds
    }
}

/// SS1: for any two brackets and any `M` in their intersection (the empty
/// set included) some `F` inside the intersection has `M ⊆ ⌈F⌉`.
///
/// SS2: for `G1 ⊆ ⌈F1⌉` and `G2 ⊆ ⌈F2⌉` there are `F`, `G` with
/// `⌈G1⌉ ∩ ⌈G2⌉ ⊆ ⌈G⌉` and `G ⊆ ⌈F⌉ ⊆ ⌈F1⌉ ∩ ⌈F2⌉`.
pub fn check_ss(acf: &AcfContext) -> SsCheck {
    let sel = acf.selection().members();
    let br = acf.brackets();
    let concepts: Vec<AttrSet> = acf.poset().concepts().iter().map(|c| c.attrs).collect();

    let mut ss1 = ConditionCheck::yes();
    'outer: for &b1 in &concepts {
        for &b2 in &concepts {
            let i = b1.intersection(b2);
            let bad = forall_subsets(i, SUBSET_LIMIT, |m| {
                (0..sel.len()).any(|f| sel[f].is_subset(i) && m.is_subset(br[f]))
            });
            if let Some(m) = bad {
                ss1 = ConditionCheck::no(format!(
                    "brackets {} and {}, M = {}",
                    name(acf, b1),
                    name(acf, b2),
                    name(acf, m)
                ));
                break 'outer;
            }
        }
    }

    // brackets of members lying inside each concept
    let inner: Vec<Vec<AttrSet>> = concepts
        .iter()
        .map(|&q| {
            let mut v: Vec<AttrSet> = (0..sel.len())
                .filter(|&g| sel[g].is_subset(q))
                .map(|g| br[g])
                .collect();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    // for an intersection I: brackets ⌈G⌉ with G ⊆ ⌈F⌉ ⊆ I for some F
    let mut reach: HashMap<AttrSet, Vec<AttrSet>> = HashMap::new();
    let mut ss2 = ConditionCheck::yes();
    'outer2: for (k1, &b1) in concepts.iter().enumerate() {
        for (k2, &b2) in concepts.iter().enumerate() {
            let i = b1.intersection(b2);
            let cands = reach.entry(i).or_insert_with(|| {
                let mut v: Vec<AttrSet> = concepts
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| q.is_subset(i))
                    .flat_map(|(k, _)| inner[k].iter().copied())
                    .collect();
                v.sort();
                v.dedup();
                v
            });
            for &c1 in &inner[k1] {
                for &c2 in &inner[k2] {
                    let j = c1.intersection(c2);
                    if !cands.iter().any(|u| j.is_subset(*u)) {
                        ss2 = ConditionCheck::no(format!(
                            "brackets {} and {} with inner brackets {} and {}",
                            name(acf, b1),
                            name(acf, b2),
                            name(acf, c1),
                            name(acf, c2)
                        ));
                        break 'outer2;
                    }
                }
            }
        }
    }
    SsCheck { ss1, ss2 }
}

/// Every syntactic condition together with the order-theoretic
/// classification of the concept poset (when it is small enough).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubclassReport {
    pub ad: ConditionCheck,
    pub pointed: ConditionCheck,
    pub topped: ConditionCheck,
    pub bc: ConditionCheck,
    pub ss: SsCheck,
    pub semantic: Option<DomainClass>,
    /// Bounded completeness with the empty set excluded from the bounded subsets.
    pub semantic_bc_nonempty: Option<bool>,
}

pub fn classify(acf: &AcfContext) -> SubclassReport {
    let poset = acf.poset().to_finite_poset();
    let semantic = if poset.len() <= CLASSIFY_LIMIT {
        poset.domain_classify(EmptySetConvention::Include).ok()
    } else {
        None
    };
    let semantic_bc_nonempty = if poset.len() <= CLASSIFY_LIMIT {
        poset
            .domain_classify(EmptySetConvention::Exclude)
            .ok()
            .map(|c| c.is_bounded_complete)
    } else {
        None
    };
    SubclassReport {
        ad: check_ad(acf),
        pointed: check_pointed(acf),
        topped: check_topped(acf),
        bc: check_bc(acf),
        ss: check_ss(acf),
        semantic,
        semantic_bc_nonempty,
    }
}

impl SubclassReport {
    /// Aligned two-column text table.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        let show = |c: &ConditionCheck| match &c.counterexample {
            None => "yes".to_string(),
            Some(m) => format!("no ({m})"),
        };
        rows.push(("AD".into(), show(&self.ad)));
        rows.push(("pointed".into(), show(&self.pointed)));
        rows.push(("topped".into(), show(&self.topped)));
        rows.push(("BC".into(), show(&self.bc)));
        rows.push(("SS1".into(), show(&self.ss.ss1)));
        rows.push(("SS2".into(), show(&self.ss.ss2)));
        if let Some(s) = &self.semantic {
            let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
            rows.push(("poset: algebraic".into(), yn(s.is_algebraic)));
            rows.push(("poset: least element".into(), yn(s.is_pointed)));
            rows.push(("poset: greatest element".into(), yn(s.has_top)));
            rows.push(("poset: bounded complete".into(), yn(s.is_bounded_complete)));
            if let Some(b) = self.semantic_bc_nonempty {
                rows.push(("poset: bounded complete (nonempty)".into(), yn(b)));
            }
            rows.push(("poset: semilattice".into(), yn(s.is_semilattice)));
            rows.push((
                "poset: multiplicative way-below".into(),
                yn(s.waybelow_multiplicative),
            ));
        }
        let w = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<w$}  {v}\n"))
            .collect()
    }
}
