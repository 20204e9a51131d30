//! The representation context of a finite domain and the isomorphism
//! between the domain and its continuous concepts.

use crate::concepts::ContinuousConcept;
use crate::context::{FormalContext, EXHAUSTIVE_LIMIT};
use crate::error::{Error, Result};
use crate::kernel::{build_acf_with, AcfContext, BracketMutation, KernelOperator, Selection};
use crate::order::{find_isomorphism, FinitePoset, WayBelowMode, DIRECTED_LIMIT};
use crate::sets::{forall_subsets, AttrSet};

/// Largest domain accepted by [`rep`].
pub const REP_LIMIT: usize = 16;

/// A finite domain together with its representation context.
///
/// Attribute `i` and object `i` both stand for element `i` of the domain.
#[derive(Clone, Debug)]
pub struct RepContext {
    domain: FinitePoset,
    basis: Vec<usize>,
    waybelow: Vec<u64>,
    acf: AcfContext,
}

impl RepContext {
    pub fn domain(&self) -> &FinitePoset {
        &self.domain
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn acf(&self) -> &AcfContext {
        &self.acf
    }

    /// `x ≪ y` in the domain.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        self.waybelow[y] >> x & 1 == 1
    }

    /// `↡y ∩ B` as an attribute set.
    pub fn approximants(&self, y: usize) -> AttrSet {
        AttrSet::from_bits(self.waybelow[y])
    }
}

/// Builds the representation context with the whole domain as basis.
pub fn rep(domain: &FinitePoset) -> Result<RepContext> {
    rep_with(domain, BracketMutation::None)
}

pub fn rep_with(domain: &FinitePoset, mutation: BracketMutation) -> Result<RepContext> {
    let basis: Vec<usize> = (0..domain.len()).collect();
    rep_with_basis(domain, &basis, mutation)
}

/// A finite poset has only one basis, itself; a proper subset is rejected.
pub fn rep_with_basis(
    domain: &FinitePoset,
    basis: &[usize],
    mutation: BracketMutation,
) -> Result<RepContext> {
    let n = domain.len();
    if n == 0 {
        return Err(Error::EmptyPoset);
    }
    if n > REP_LIMIT {
        return Err(Error::SizeLimit {
            what: "domain size for representation",
            limit: REP_LIMIT,
            actual: n,
        });
    }
    let mut sorted = basis.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&b| b >= n) {
        return Err(Error::UnknownElement(bad.to_string()));
    }
    if sorted.len() != n {
        let missing = (0..n).find(|i| !sorted.contains(i)).unwrap_or(0);
        return Err(Error::IncompleteBasis(domain.label(missing).to_string()));
    }
    let mode = if n <= DIRECTED_LIMIT {
        WayBelowMode::Literal
    } else {
        WayBelowMode::Shortcut
    };
    let waybelow = domain.way_below_sets(mode)?;
    let labels = domain.labels().to_vec();
    // x ⊨ b iff b ≤ x
    let rows = (0..n).map(|x| AttrSet::from_bits(domain.down(x))).collect();
    let ctx = FormalContext::from_rows(labels.clone(), labels, rows)?;
    let table = KernelOperator::table(ctx.enumerate_formal_concepts()?.into_iter().map(|c| {
        let img = c.iter().fold(AttrSet::EMPTY, |acc, x| {
            acc.union(AttrSet::from_bits(waybelow[x]))
        });
        (c, img)
    }));
    let mut members: Vec<AttrSet> = AttrSet::full(n)
        .subsets()
        .filter(|f| !f.is_empty() && domain.greatest_of(f.bits()).is_some())
        .collect();
    members.sort();
    let acf = build_acf_with(ctx, table, Selection::new(members)?, mutation)?;
    Ok(RepContext {
        domain: domain.clone(),
        basis: (0..n).collect(),
        waybelow,
        acf,
    })
}

/// R1: `Q` is closed downwards under `≪` inside the basis.
/// R2: every finite `M ⊆ Q` lies way below some single `u ∈ Q`.
pub fn check_r1_r2(rc: &RepContext, q: AttrSet) -> Result<bool> {
    rc.acf.context().check_attrs(q)?;
    let r1 = q.iter().all(|v| rc.approximants(v).is_subset(q));
    let r2 = forall_subsets(q, EXHAUSTIVE_LIMIT, |m| {
        q.iter().any(|u| m.is_subset(rc.approximants(u)))
    })
    .is_none();
    Ok(r1 && r2)
}

/// `x ↦ ↡x ∩ B`.
pub fn iso_forward(rc: &RepContext, x: usize) -> Result<ContinuousConcept> {
    if x >= rc.domain.len() {
        return Err(Error::UnknownElement(x.to_string()));
    }
    let attrs = rc.approximants(x);
    let p = rc.acf.poset();
    let i = p
        .index_of(attrs)
        .ok_or_else(|| Error::Invariant(format!("↡{} is not a concept", rc.domain.label(x))))?;
    Ok(p.get(i).clone())
}

/// `Q ↦ ⋁Q`.
pub fn iso_backward(rc: &RepContext, q: &ContinuousConcept) -> Result<usize> {
    if rc.acf.poset().index_of(q.attrs).is_none() {
        return Err(Error::ForeignConcept(q.attrs));
    }
    rc.domain
        .sup(q.attrs.bits())
        .ok_or_else(|| Error::Invariant(format!("concept {} has no supremum", q.attrs)))
}

/// Outcome of [`verify_roundtrip`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub ok: bool,
    pub failure: Option<String>,
}

/// Checks that the two maps are mutually inverse and order preserving, and
/// that the concept poset is isomorphic to the domain.
pub fn verify_roundtrip(rc: &RepContext) -> RoundtripReport {
    let fail = |msg: String| RoundtripReport {
        ok: false,
        failure: Some(msg),
    };
    let d = &rc.domain;
    let p = rc.acf.poset();
    let mut forward = Vec::with_capacity(d.len());
    for x in 0..d.len() {
        let q = match iso_forward(rc, x) {
            Ok(q) => q,
            Err(e) => return fail(e.to_string()),
        };
        match iso_backward(rc, &q) {
            Ok(y) if y == x => {}
            Ok(y) => return fail(format!("g(f({})) = {}", d.label(x), d.label(y))),
            Err(e) => return fail(e.to_string()),
        }
        forward.push(q.attrs);
    }
    for q in p.concepts() {
        match iso_backward(rc, q) {
            Ok(x) if forward[x] == q.attrs => {}
            Ok(x) => return fail(format!("f(g({})) = {}", q.attrs, forward[x])),
            Err(e) => return fail(e.to_string()),
        }
    }
    for x in 0..d.len() {
        for y in 0..d.len() {
            if d.leq(x, y) != forward[x].is_subset(forward[y]) {
                return fail(format!(
                    "order not reflected between {} and {}",
                    d.label(x),
                    d.label(y)
                ));
            }
        }
    }
    if find_isomorphism(d, &p.to_finite_poset()).is_none() {
        return fail("concept poset is not isomorphic to the domain".into());
    }
    RoundtripReport {
        ok: true,
        failure: None,
    }
}

/// `⌈F⌉ = B ∩ ↡(⋁F)` for every selection member.
pub fn bracket_formula_holds(rc: &RepContext) -> bool {
    let sel = rc.acf.selection().members();
    sel.iter().zip(rc.acf.brackets()).all(|(f, &b)| {
        rc.domain
            .sup(f.bits())
            .is_some_and(|s| b == rc.approximants(s))
    })
}
