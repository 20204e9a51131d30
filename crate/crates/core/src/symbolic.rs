//! The two infinite lattices built on an ω-chain, handled through closed-form
//! order and way-below tables plus finite truncations.
//!
//! `L1 = {⊥, a1 < a2 < …, b, ⊤}` where the chain and `b` are only joined at `⊤`.
//! `L2` adds `⊤1` as the supremum of the chain, with `⊤1 < ⊤`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::sets::AttrSet;

/// Default truncation depth.
pub const DEFAULT_DEPTH: u32 = 32;

/// Largest index used when comparing the way-below table with the finite oracle.
pub const ORACLE_INDEX: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    L1,
    L2,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L1" | "l1" => Ok(Family::L1),
            "L2" | "l2" => Ok(Family::L2),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::L1 => "L1",
            Family::L2 => "L2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChainElement {
    Bot,
    /// `a_i` for `i ≥ 1`.
    A(u32),
    B,
    /// Supremum of the chain; only in `L2`.
    Top1,
    Top,
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainElement::Bot => write!(f, "bot"),
            ChainElement::A(i) => write!(f, "a{i}"),
            ChainElement::B => write!(f, "b"),
            ChainElement::Top1 => write!(f, "top1"),
            ChainElement::Top => write!(f, "top"),
        }
    }
}

fn check(family: Family, x: ChainElement) -> Result<()> {
    match (family, x) {
        (_, ChainElement::A(0)) => Err(Error::FamilyMismatch("a0".into(), family.name())),
        (Family::L1, ChainElement::Top1) => Err(Error::FamilyMismatch(x.to_string(), "L1")),
        _ => Ok(()),
    }
}

/// Closed-form order.
pub fn leq(family: Family, x: ChainElement, y: ChainElement) -> Result<bool> {
    use ChainElement::*;
    check(family, x)?;
    check(family, y)?;
    Ok(match (x, y) {
        (Bot, _) | (_, Top) => true,
        (A(i), A(j)) => i <= j,
        (A(_), Top1) => true,
        (B, B) | (Top1, Top1) => true,
        _ => false,
    })
}

/// Closed-form way-below relation.
///
/// `⊥` and each `a_i` are compact. `b` and `⊤` are not compact in `L1`,
/// since `⊤` is the supremum of the chain. In `L2` only `⊤1` fails to be
/// compact, and it is still way below the compact `⊤`.
pub fn way_below(family: Family, x: ChainElement, y: ChainElement) -> Result<bool> {
    use ChainElement::*;
    check(family, x)?;
    check(family, y)?;
    Ok(match family {
        Family::L1 => match (x, y) {
            (Bot, _) => true,
            (A(i), A(j)) => i <= j,
            (A(_), Top) => true,
            _ => false,
        },
        Family::L2 => match (x, y) {
            (Top1, Top) => true,
            (Top1, _) => false,
            _ => leq(family, x, y)?,
        },
    })
}

/// Named subsets with a symbolic membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSet {
    /// `{⊥} ∪ {a_i}`.
    AChainWithBot,
    PrincipalDown(ChainElement),
    Full,
}

impl FromStr for NamedSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "achain" | "AChainWithBot" => Ok(NamedSet::AChainWithBot),
            "full" | "Full" => Ok(NamedSet::Full),
            _ => {
                let inner = s
                    .strip_prefix("down(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::UnknownName(s.to_string()))?;
                Ok(NamedSet::PrincipalDown(parse_element(inner)?))
            }
        }
    }
}

pub fn parse_element(s: &str) -> Result<ChainElement> {
    match s {
        "bot" => Ok(ChainElement::Bot),
        "b" => Ok(ChainElement::B),
        "top1" => Ok(ChainElement::Top1),
        "top" => Ok(ChainElement::Top),
        _ => s
            .strip_prefix('a')
            .and_then(|i| i.parse::<u32>().ok())
            .filter(|&i| i >= 1)
            .map(ChainElement::A)
            .ok_or_else(|| Error::UnknownElement(s.to_string())),
    }
}

pub fn membership(family: Family, set: NamedSet, x: ChainElement) -> Result<bool> {
    check(family, x)?;
    Ok(match set {
        NamedSet::AChainWithBot => matches!(x, ChainElement::Bot | ChainElement::A(_)),
        NamedSet::PrincipalDown(y) => leq(family, x, y)?,
        NamedSet::Full => true,
    })
}

/// `⊥, a1..aN, b, [⊤1,] ⊤`.
pub fn truncation_elements(family: Family, depth: u32) -> Vec<ChainElement> {
    let mut v = vec![ChainElement::Bot];
    v.extend((1..=depth).map(ChainElement::A));
    v.push(ChainElement::B);
    if family == Family::L2 {
        v.push(ChainElement::Top1);
    }
    v.push(ChainElement::Top);
    v
}

/// The depth-`N` truncation as a finite poset under the closed-form order.
pub fn truncation(family: Family, depth: u32) -> Result<FinitePoset> {
    let els = truncation_elements(family, depth);
    let mut leqm = vec![vec![false; els.len()]; els.len()];
    for (i, &x) in els.iter().enumerate() {
        for (j, &y) in els.iter().enumerate() {
            leqm[i][j] = leq(family, x, y)?;
        }
    }
    FinitePoset::new(els.iter().map(|e| e.to_string()).collect(), &leqm)
}

/// Context with the truncation as objects and attributes, `x ⊨ y ⟺ y ≤ x`.
fn truncated_context(family: Family, depth: u32) -> Result<(Vec<ChainElement>, FormalContext)> {
    let els = truncation_elements(family, depth);
    let labels: Vec<String> = els.iter().map(|e| e.to_string()).collect();
    let mut rows = Vec::with_capacity(els.len());
    for &x in &els {
        let mut row = AttrSet::EMPTY;
        for (j, &y) in els.iter().enumerate() {
            if leq(family, y, x)? {
                row = row.with(j);
            }
        }
        rows.push(row);
    }
    Ok((els, FormalContext::from_rows(labels.clone(), labels, rows)?))
}

/// Evidence that the chain with `⊥` is a continuous concept of the induced
/// context on the lattice but not a formal concept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainConceptReport {
    pub family: Family,
    pub depth: u32,
    /// Finite subsets `M` of the chain that were checked.
    pub samples: usize,
    /// Each sample had `F` with `M ⊆ ⌈F⌉ ⊆ Q` in the truncation.
    pub continuous: bool,
    /// Objects of the truncation above every element of the chain.
    pub upper_bound_objects: Vec<ChainElement>,
    /// Attributes the closure adds to the chain.
    pub closure_adds: Vec<ChainElement>,
    pub not_formal_concept: bool,
    pub caveat: &'static str,
}

impl ChainConceptReport {
    pub fn passed(&self) -> bool {
        self.continuous && self.not_formal_concept
    }
}

const TRUNCATION_CAVEAT: &str =
    "finite truncation evidence: depth-N checks support but do not prove the infinite statement";

/// Checks on the depth-`N` truncation (N ≥ 3):
///
/// * every sampled finite `M` of the chain lies in `⌈F⌉ ⊆ Q` for the
///   singleton of its largest element;
/// * the only objects above the whole chain are the ones above `a_{N+1}`
///   outside the chain, and the attributes they share exceed the chain.
pub fn verify_chain_concept(family: Family, depth: u32) -> Result<ChainConceptReport> {
    if depth < 3 {
        return Err(Error::DepthTooSmall(depth));
    }
    let (els, ctx) = truncated_context(family, depth)?;
    let q: AttrSet = (0..=depth as usize).collect();

    let mut samples: Vec<AttrSet> = Vec::new();
    for i in 0..=depth as usize {
        samples.push(AttrSet::singleton(i));
        for j in i + 1..=depth as usize {
            samples.push(AttrSet::from_indices([i, j]));
        }
        samples.push((0..=i).collect());
    }
    samples.push(AttrSet::EMPTY);
    samples.push(q);
    samples.sort();
    samples.dedup();

    let mut continuous = true;
    for &m in &samples {
        let top = m.max_index().unwrap_or(0);
        let f = AttrSet::singleton(top);
        let bracket = ctx.attr_closure(f)?;
        if !(m.is_subset(bracket) && bracket.is_subset(q)) {
            continuous = false;
        }
    }

    // ω(Q): objects above every a_i. Any a_k inside the truncation fails
    // against a_{k+1} (with a_{N+1} standing for the rest of the chain).
    let mut upper = Vec::new();
    let mut obj = Vec::new();
    for (o, &x) in els.iter().enumerate() {
        let mut all = true;
        for k in 1..=depth + 1 {
            if !leq(family, ChainElement::A(k), x)? {
                all = false;
                break;
            }
        }
        if all && leq(family, ChainElement::Bot, x)? {
            upper.push(x);
            obj.push(o);
        }
    }
    let closure = ctx.intent(&obj.iter().copied().collect())?;
    let adds: Vec<ChainElement> = closure.difference(q).iter().map(|i| els[i]).collect();
    let not_formal = q.is_subset(closure) && closure != q;
    Ok(ChainConceptReport {
        family,
        depth,
        samples: samples.len(),
        continuous,
        upper_bound_objects: upper,
        closure_adds: adds,
        not_formal_concept: not_formal,
        caveat: TRUNCATION_CAVEAT,
    })
}

/// Why `L1` is not continuous: `↡b = {⊥}` and its supremum is not `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscontinuityWitness {
    pub element: ChainElement,
    pub approximants: Vec<ChainElement>,
    pub supremum: ChainElement,
    pub certifies_not_continuous: bool,
    pub caveat: &'static str,
}

pub fn l1_discontinuity_witness(depth: u32) -> Result<DiscontinuityWitness> {
    let els = truncation_elements(Family::L1, depth);
    let mut approx = Vec::new();
    for &x in &els {
        if way_below(Family::L1, x, ChainElement::B)? {
            approx.push(x);
        }
    }
    let t = truncation(Family::L1, depth)?;
    let mask = approx
        .iter()
        .map(|&x| els.iter().position(|&e| e == x).expect("in truncation"))
        .fold(0u64, |m, i| m | 1 << i);
    let sup = t
        .sup(mask)
        .map(|i| els[i])
        .ok_or_else(|| Error::Invariant("approximants of b have no supremum".into()))?;
    Ok(DiscontinuityWitness {
        element: ChainElement::B,
        certifies_not_continuous: sup != ChainElement::B,
        approximants: approx,
        supremum: sup,
        caveat: TRUNCATION_CAVEAT,
    })
}

/// Literal way-below on a truncation, with the tails `{a_i | i ≥ k}` of the
/// chain added as directed sets whose supremum is `⊤` (in `L1`) or `⊤1`
/// (in `L2`). Finite directed sets are enumerated on the truncation with
/// depth `max_index + 1`, whose chain top stands in for all larger `a_j`.
pub fn way_below_oracle(
    family: Family,
    max_index: u32,
    x: ChainElement,
    y: ChainElement,
) -> Result<bool> {
    let depth = max_index + 1;
    let els = truncation_elements(family, depth);
    let t = truncation(family, depth)?;
    let pos = |e: ChainElement| {
        els.iter()
            .position(|&z| z == e)
            .ok_or_else(|| Error::UnknownElement(e.to_string()))
    };
    let (xi, yi) = (pos(x)?, pos(y)?);
    for (d, s) in t.directed_subsets()? {
        if let Some(s) = s {
            if t.leq(yi, s) && !(0..els.len()).any(|k| d >> k & 1 == 1 && t.leq(xi, k)) {
                return Ok(false);
            }
        }
    }
    let chain_sup = match family {
        Family::L1 => ChainElement::Top,
        Family::L2 => ChainElement::Top1,
    };
    for k in 1..=depth {
        // some a_i with i ≥ k is above x
        let reach = match x {
            ChainElement::Bot => true,
            ChainElement::A(j) => leq(family, x, ChainElement::A(j.max(k)))?,
            _ => false,
        };
        if leq(family, y, chain_sup)? && !reach {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pairs among elements with index ≤ `max_index` where the closed form
/// and the oracle disagree.
pub fn way_below_table_mismatches(
    family: Family,
    max_index: u32,
) -> Result<Vec<(ChainElement, ChainElement)>> {
    let els = truncation_elements(family, max_index);
    let mut bad = Vec::new();
    for &x in &els {
        for &y in &els {
            if way_below(family, x, y)? != way_below_oracle(family, max_index, x, y)? {
                bad.push((x, y));
            }
        }
    }
    Ok(bad)
}

/// Elements of the depth-`N` truncation that are compact per the closed form.
pub fn compact_elements(family: Family, depth: u32) -> Result<Vec<ChainElement>> {
    let mut out = Vec::new();
    for x in truncation_elements(family, depth) {
        if way_below(family, x, x)? {
            out.push(x);
        }
    }
    Ok(out)
}
