//! Kernel attribute operators, selections and attribute continuous contexts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::concepts::ConceptPoset;
use crate::context::{FormalContext, EXHAUSTIVE_LIMIT};
use crate::error::{Error, Result};
use crate::sets::{forall_subsets, AttrSet};

/// Largest attribute count accepted by [`induced_acf`].
pub const INDUCED_LIMIT: usize = 15;

/// Above this many closed sets, monotonicity is checked on one-step
/// extensions instead of all pairs. The two are equivalent because every
/// inclusion between closed sets is a chain of such steps.
const A3_ALL_PAIRS_LIMIT: usize = 1024;

/// A kernel operator on the closed attribute sets of a context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelOperator {
    Identity,
    /// Explicit image of each closed set.
    Table(BTreeMap<AttrSet, AttrSet>),
}

impl KernelOperator {
    pub fn table<I: IntoIterator<Item = (AttrSet, AttrSet)>>(entries: I) -> Self {
        KernelOperator::Table(entries.into_iter().collect())
    }

    /// Image of a closed set.
    pub fn apply(&self, closed: AttrSet) -> Result<AttrSet> {
        match self {
            KernelOperator::Identity => Ok(closed),
            KernelOperator::Table(t) => t
                .get(&closed)
                .copied()
                .ok_or(Error::UncoveredClosedSet(closed)),
        }
    }
}

/// Deliberate corruptions of the bracket, used to test that checks notice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BracketMutation {
    #[default]
    None,
    /// Return the closure without applying the kernel.
    SkipKernel,
    /// Return the argument unchanged.
    Raw,
    /// Remove the largest attribute from the bracket when it has at least two.
    DropMax,
}

/// `⌈B⌉ = τ(α(ω(B)))`, with an optional mutation.
pub fn bracket_of(
    ctx: &FormalContext,
    kernel: &KernelOperator,
    b: AttrSet,
    mutation: BracketMutation,
) -> Result<AttrSet> {
    ctx.check_attrs(b)?;
    match mutation {
        BracketMutation::None => kernel.apply(ctx.closure(b)),
        BracketMutation::SkipKernel => Ok(ctx.closure(b)),
        BracketMutation::Raw => Ok(b),
        BracketMutation::DropMax => {
            let br = kernel.apply(ctx.closure(b))?;
            Ok(match br.max_index() {
                Some(m) if br.len() > 1 => br.without(m),
                _ => br,
            })
        }
    }
}

/// Outcome of one axiom, with the first offending pair of sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomCheck {
    pub passed: bool,
    pub counterexample: Option<(AttrSet, AttrSet)>,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            passed: true,
            counterexample: None,
        }
    }

    fn record(&mut self, a: AttrSet, b: AttrSet) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some((a, b));
        }
    }
}

/// Result of [`check_kernel_axioms`].
///
/// `a2` is the reading `τ(α(ω(τ(C)))) = τ(C)`; `a2_literal` is `τ(τ(C)) = τ(C)`,
/// evaluated only where `τ(C)` is itself closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub closed_sets: usize,
    pub a1: AxiomCheck,
    pub a2: AxiomCheck,
    pub a2_literal: AxiomCheck,
    pub a2_literal_skipped: usize,
    pub a3: AxiomCheck,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.a1.passed && self.a2.passed && self.a3.passed
    }

    /// The two readings of A2 disagree on this kernel.
    pub fn a2_readings_diverge(&self) -> bool {
        self.a2.passed != self.a2_literal.passed
    }
}

impl fmt::Display for KernelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &AxiomCheck| match c.counterexample {
            None => "ok".to_string(),
            Some((a, b)) => format!("fails at ({a}, {b})"),
        };
        write!(
            f,
            "A1 {}; A2 {}; A2 literal {} ({} skipped); A3 {}",
            show(&self.a1),
            show(&self.a2),
            show(&self.a2_literal),
            self.a2_literal_skipped,
            show(&self.a3)
        )
    }
}

/// Checks A1 (contraction), A2 (idempotence, both readings) and A3
/// (monotonicity) over every closed set.
pub fn check_kernel_axioms(ctx: &FormalContext, kernel: &KernelOperator) -> Result<KernelReport> {
    let closed = ctx.closed_sets();
    if let KernelOperator::Table(t) = kernel {
        for &k in t.keys() {
            ctx.check_attrs(k)?;
            if ctx.closure(k) != k {
                return Err(Error::NonClosedKey(k));
            }
        }
        for &v in t.values() {
            ctx.check_attrs(v)?;
        }
    }
    let mut image = HashMap::with_capacity(closed.len());
    for &c in &closed {
        image.insert(c, kernel.apply(c)?);
    }
    let tau = |c: &AttrSet| image[c];

    let mut report = KernelReport {
        closed_sets: closed.len(),
        a1: AxiomCheck::pass(),
        a2: AxiomCheck::pass(),
        a2_literal: AxiomCheck::pass(),
        a2_literal_skipped: 0,
        a3: AxiomCheck::pass(),
    };
    for c in &closed {
        let t = tau(c);
        if !t.is_subset(*c) {
            report.a1.record(*c, t);
        }
        let t2 = tau(&ctx.closure(t));
        if t2 != t {
            report.a2.record(*c, t2);
        }
        match image.get(&t) {
            Some(&tt) if tt != t => report.a2_literal.record(*c, tt),
            Some(_) => {}
            None => report.a2_literal_skipped += 1,
        }
    }
    if closed.len() <= A3_ALL_PAIRS_LIMIT {
        for c in &closed {
            for d in &closed {
                if c.is_subset(*d) && !tau(c).is_subset(tau(d)) {
                    report.a3.record(*c, *d);
                }
            }
        }
    } else {
        for c in &closed {
            for m in ctx.all_attributes().difference(*c).iter() {
                let d = ctx.closure(c.with(m));
                if !tau(c).is_subset(tau(&d)) {
                    report.a3.record(*c, d);
                }
            }
        }
    }
    Ok(report)
}

/// A nonempty list of distinct nonempty attribute sets.
#[derive(Clone, Debug)]
pub struct Selection {
    members: Vec<AttrSet>,
    index: HashMap<AttrSet, usize>,
}

impl PartialEq for Selection {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Selection {}

impl Selection {
    pub fn new(members: Vec<AttrSet>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut index = HashMap::with_capacity(members.len());
        for (i, &m) in members.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::EmptyMember(i));
            }
            if let Some(&first) = index.get(&m) {
                return Err(Error::DuplicateMember { index: i, first });
            }
            index.insert(m, i);
        }
        Ok(Selection { members, index })
    }

    /// Every nonempty subset of `{0, .., n-1}` in canonical order.
    pub fn all_nonempty(n: usize) -> Result<Self> {
        let mut v: Vec<AttrSet> = AttrSet::full(n)
            .subsets()
            .filter(|s| !s.is_empty())
            .collect();
        v.sort();
        Selection::new(v)
    }

    pub fn members(&self) -> &[AttrSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> AttrSet {
        self.members[i]
    }

    pub fn position(&self, f: AttrSet) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn contains(&self, f: AttrSet) -> bool {
        self.index.contains_key(&f)
    }
}

/// Result of [`check_ca1`]: the first member `F` and set `M ⊆ ⌈F⌉` with no witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ca1Report {
    pub passed: bool,
    pub offending: Option<(usize, AttrSet)>,
}

impl fmt::Display for Ca1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.offending {
            None => write!(f, "ok"),
            Some((i, m)) => write!(f, "member #{i} has no witness for M = {m}"),
        }
    }
}

fn brackets_of(
    ctx: &FormalContext,
    kernel: &KernelOperator,
    sel: &Selection,
    mutation: BracketMutation,
) -> Result<Vec<AttrSet>> {
    sel.members()
        .iter()
        .map(|&f| bracket_of(ctx, kernel, f, mutation))
        .collect()
}

fn ca1_from_brackets(sel: &Selection, br: &[AttrSet]) -> Ca1Report {
    for (i, &b) in br.iter().enumerate() {
        let ok = (0..sel.len()).any(|j| sel.get(j).is_subset(b) && br[j] == b);
        if !ok {
            return Ca1Report {
                passed: false,
                offending: Some((i, b)),
            };
        }
    }
    Ca1Report {
        passed: true,
        offending: None,
    }
}

/// Checks that for every `F` there is a `G` with `G ⊆ ⌈F⌉` and `⌈G⌉ = ⌈F⌉`.
///
/// Given the kernel axioms this is equivalent to the condition over all
/// finite `M ⊆ ⌈F⌉`: take `M = ⌈F⌉`, and the bracket inclusion law gives
/// the reverse inclusion.
pub fn check_ca1(
    ctx: &FormalContext,
    kernel: &KernelOperator,
    sel: &Selection,
) -> Result<Ca1Report> {
    let br = brackets_of(ctx, kernel, sel, BracketMutation::None)?;
    Ok(ca1_from_brackets(sel, &br))
}

/// Literal check over every `M ⊆ ⌈F⌉`; brackets of size up to 12 only.
pub fn check_ca1_exhaustive(
    ctx: &FormalContext,
    kernel: &KernelOperator,
    sel: &Selection,
) -> Result<Ca1Report> {
    let br = brackets_of(ctx, kernel, sel, BracketMutation::None)?;
    for (i, &b) in br.iter().enumerate() {
        if b.len() > EXHAUSTIVE_LIMIT {
            return Err(Error::SizeLimit {
                what: "bracket size for exhaustive consistency check",
                limit: EXHAUSTIVE_LIMIT,
                actual: b.len(),
            });
        }
        for m in b.subsets() {
            let ok = (0..sel.len()).any(|j| m.is_subset(br[j]) && sel.get(j).is_subset(b));
            if !ok {
                return Ok(Ca1Report {
                    passed: false,
                    offending: Some((i, m)),
                });
            }
        }
    }
    Ok(Ca1Report {
        passed: true,
        offending: None,
    })
}

/// A validated formal context with kernel operator and consistent selection.
#[derive(Debug)]
pub struct AcfContext {
    context: FormalContext,
    kernel: KernelOperator,
    selection: Selection,
    brackets: Vec<AttrSet>,
    mutation: BracketMutation,
    poset: OnceLock<ConceptPoset>,
}

impl Clone for AcfContext {
    fn clone(&self) -> Self {
        AcfContext {
            context: self.context.clone(),
            kernel: self.kernel.clone(),
            selection: self.selection.clone(),
            brackets: self.brackets.clone(),
            mutation: self.mutation,
            poset: OnceLock::new(),
        }
    }
}

impl PartialEq for AcfContext {
    fn eq(&self, other: &Self) -> bool {
        self.context == other.context
            && self.kernel == other.kernel
            && self.selection == other.selection
            && self.mutation == other.mutation
    }
}

impl Eq for AcfContext {}

impl AcfContext {
    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn kernel(&self) -> &KernelOperator {
        &self.kernel
    }

    pub fn selection(&self) -> &Selection {
        &self.selection
    }

    pub fn mutation(&self) -> BracketMutation {
        self.mutation
    }

    /// Cached `⌈F⌉` for each selection member, in selection order.
    pub fn brackets(&self) -> &[AttrSet] {
        &self.brackets
    }

    pub fn bracket(&self, b: AttrSet) -> Result<AttrSet> {
        bracket_of(&self.context, &self.kernel, b, self.mutation)
    }

    /// The continuous concepts with their order and way-below relation.
    pub fn poset(&self) -> &ConceptPoset {
        self.poset.get_or_init(|| ConceptPoset::build(self))
    }
}

/// Validates and assembles an attribute continuous context.
pub fn build_acf(ctx: FormalContext, kernel: KernelOperator, sel: Selection) -> Result<AcfContext> {
    build_acf_with(ctx, kernel, sel, BracketMutation::None)
}

pub fn build_acf_with(
    ctx: FormalContext,
    kernel: KernelOperator,
    sel: Selection,
    mutation: BracketMutation,
) -> Result<AcfContext> {
    if ctx.num_attributes() == 0 {
        return Err(Error::EmptyAttributes);
    }
    for &f in sel.members() {
        ctx.check_attrs(f)?;
    }
    let report = check_kernel_axioms(&ctx, &kernel)?;
    if !report.passed() {
        return Err(Error::KernelAxioms(Box::new(report)));
    }
    let brackets = brackets_of(&ctx, &kernel, &sel, mutation)?;
    let ca1 = ca1_from_brackets(&sel, &brackets);
    if !ca1.passed {
        return Err(Error::Ca1(Box::new(ca1)));
    }
    Ok(AcfContext {
        context: ctx,
        kernel,
        selection: sel,
        brackets,
        mutation,
        poset: OnceLock::new(),
    })
}

/// Identity kernel with every nonempty attribute subset selected.
pub fn induced_acf(ctx: FormalContext) -> Result<AcfContext> {
    induced_acf_with(ctx, BracketMutation::None)
}

pub fn induced_acf_with(ctx: FormalContext, mutation: BracketMutation) -> Result<AcfContext> {
    let n = ctx.num_attributes();
    if n == 0 {
        return Err(Error::EmptyAttributes);
    }
    if n > INDUCED_LIMIT {
        return Err(Error::SizeLimit {
            what: "attribute count for induced context",
            limit: INDUCED_LIMIT,
            actual: n,
        });
    }
    let sel = Selection::all_nonempty(n)?;
    build_acf_with(ctx, KernelOperator::Identity, sel, mutation)
}

/// Whether every `M ⊆ α(ω(F))` sits between some `G` in the family and `α(ω(F))`.
///
/// For finite sets this holds exactly when each closure `α(ω(F))` is itself
/// a member: `M = α(ω(F))` forces `G = α(ω(F))`, and that `G` covers every
/// smaller `M`.
pub fn check_fc(ctx: &FormalContext, sel: &Selection) -> bool {
    sel.members().iter().all(|&f| sel.contains(ctx.closure(f)))
}

/// Literal form of [`check_fc`] over every `M`.
pub fn check_fc_exhaustive(ctx: &FormalContext, sel: &Selection) -> bool {
    sel.members().iter().all(|&f| {
        let c = ctx.closure(f);
        c.subsets().all(|m| {
            sel.members()
                .iter()
                .any(|&g| m.is_subset(g) && g.is_subset(c))
        })
    })
}

/// FA1 and FA2 for `q` with respect to an explicit family.
pub fn is_f_approximable(ctx: &FormalContext, sel: &Selection, q: AttrSet) -> Result<bool> {
    ctx.check_attrs(q)?;
    let fa2 = sel
        .members()
        .iter()
        .filter(|f| f.is_subset(q))
        .all(|&f| ctx.closure(f).is_subset(q));
    let fa1 = forall_subsets(q, EXHAUSTIVE_LIMIT, |m| {
        sel.members()
            .iter()
            .any(|&f| m.is_subset(f) && f.is_subset(q))
    })
    .is_none();
    Ok(fa1 && fa2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::example_c0;

    fn s(v: &[usize]) -> AttrSet {
        AttrSet::from_indices(v.iter().copied())
    }

    fn c0_closed_table(f: impl Fn(AttrSet) -> AttrSet) -> KernelOperator {
        let c = example_c0();
        KernelOperator::table(c.closed_sets().into_iter().map(|k| (k, f(k))))
    }

    #[test]
    fn identity_kernel_passes_on_c0() {
        let r = check_kernel_axioms(&example_c0(), &KernelOperator::Identity).unwrap();
        assert!(r.passed());
        assert!(!r.a2_readings_diverge());
        assert_eq!(r.closed_sets, 6);
    }

    #[test]
    fn constant_empty_kernel_passes_axioms_but_not_ca1() {
        let k = c0_closed_table(|_| AttrSet::EMPTY);
        let r = check_kernel_axioms(&example_c0(), &k).unwrap();
        assert!(r.passed());
        let sel = Selection::all_nonempty(3).unwrap();
        let ca1 = check_ca1(&example_c0(), &k, &sel).unwrap();
        assert!(!ca1.passed);
        assert_eq!(ca1.offending.unwrap().1, AttrSet::EMPTY);
        assert!(matches!(
            build_acf(example_c0(), k, sel),
            Err(Error::Ca1(_))
        ));
    }

    #[test]
    fn non_contracting_kernel_reports_a1() {
        let k = c0_closed_table(|c| if c == s(&[0, 1]) { s(&[2]) } else { c });
        let r = check_kernel_axioms(&example_c0(), &k).unwrap();
        assert!(!r.a1.passed);
        assert_eq!(r.a1.counterexample, Some((s(&[0, 1]), s(&[2]))));
    }

    #[test]
    fn missing_table_entry_is_an_error() {
        let k = KernelOperator::table([(s(&[0]), s(&[0]))]);
        assert!(matches!(
            check_kernel_axioms(&example_c0(), &k),
            Err(Error::UncoveredClosedSet(_))
        ));
    }

    #[test]
    fn non_closed_key_is_an_error() {
        let mut entries: BTreeMap<AttrSet, AttrSet> = example_c0()
            .closed_sets()
            .into_iter()
            .map(|k| (k, k))
            .collect();
        entries.insert(s(&[2]), s(&[2]));
        assert!(matches!(
            check_kernel_axioms(&example_c0(), &KernelOperator::Table(entries)),
            Err(Error::NonClosedKey(_))
        ));
    }

    #[test]
    fn selection_validation() {
        assert!(matches!(Selection::new(vec![]), Err(Error::EmptySelection)));
        assert!(matches!(
            Selection::new(vec![s(&[0]), AttrSet::EMPTY]),
            Err(Error::EmptyMember(1))
        ));
        assert!(matches!(
            Selection::new(vec![s(&[0]), s(&[0])]),
            Err(Error::DuplicateMember { index: 1, first: 0 })
        ));
    }

    #[test]
    fn brackets_on_c0() {
        let acf = induced_acf(example_c0()).unwrap();
        assert_eq!(acf.bracket(s(&[2])).unwrap(), s(&[1, 2]));
        assert_eq!(acf.bracket(s(&[0])).unwrap(), s(&[0]));
        assert_eq!(acf.selection().len(), 7);
    }

    #[test]
    fn zero_attributes_rejected() {
        let c = FormalContext::from_rows(vec!["o".into()], vec![], vec![AttrSet::EMPTY]).unwrap();
        assert!(matches!(induced_acf(c), Err(Error::EmptyAttributes)));
    }

    #[test]
    fn fc_examples() {
        let c = example_c0();
        let all = Selection::all_nonempty(3).unwrap();
        assert!(check_fc(&c, &all));
        let only_m3 = Selection::new(vec![s(&[2])]).unwrap();
        assert!(!check_fc(&c, &only_m3));
        assert!(!check_fc_exhaustive(&c, &only_m3));
    }

    #[test]
    fn ca1_fast_matches_exhaustive_on_c0_selections() {
        let c = example_c0();
        let nonempty: Vec<AttrSet> = AttrSet::full(3)
            .subsets()
            .filter(|x| !x.is_empty())
            .collect();
        for mask in 1u32..(1 << nonempty.len()) {
            let members: Vec<AttrSet> = (0..nonempty.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| nonempty[i])
                .collect();
            let sel = Selection::new(members).unwrap();
            for k in [
                KernelOperator::Identity,
                c0_closed_table(|x| x.intersection(s(&[1, 2]))),
            ] {
                let fast = check_ca1(&c, &k, &sel).unwrap().passed;
                let slow = check_ca1_exhaustive(&c, &k, &sel).unwrap().passed;
                assert_eq!(fast, slow, "selection {:?}", sel.members());
            }
        }
    }
}
