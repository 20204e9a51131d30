//! Finite posets: way-below by directed subsets, domain classification,
//! monotone maps, isomorphism search and a catalog of small posets.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};

/// Largest poset for which directed subsets are enumerated by the public
/// way-below oracle.
pub const DIRECTED_LIMIT: usize = 12;

/// Largest poset accepted by [`FinitePoset::domain_classify`].
pub const CLASSIFY_LIMIT: usize = 16;

/// Default cap on `|Q|^|P|` for monotone-map enumeration.
pub const MONOTONE_BOUND: u64 = 1_000_000;

/// Largest element count for [`poset_catalog`].
pub const CATALOG_LIMIT: usize = 5;

const MAX_ELEMENTS: usize = 64;

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite partial order. `below[j]` holds the elements `i` with `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    below: Vec<u64>,
    above: Vec<u64>,
}

/// Which way-below computation to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WayBelowMode {
    /// Quantify over every directed subset.
    Literal,
    /// Use `x ≪ y ⟺ x ≤ y`, valid for every finite poset.
    Shortcut,
}

/// Whether the empty set counts as a bounded-above subset in bounded completeness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EmptySetConvention {
    #[default]
    Include,
    Exclude,
}

/// Order-theoretic properties, each decided from its definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainClass {
    pub is_dcpo: bool,
    pub is_continuous: bool,
    pub is_algebraic: bool,
    pub is_pointed: bool,
    pub has_top: bool,
    pub is_bounded_complete: bool,
    pub is_semilattice: bool,
    pub waybelow_multiplicative: bool,
}

impl FinitePoset {
    /// From a dense `leq[i][j]` matrix; checks reflexivity, antisymmetry and transitivity.
    pub fn new(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::NotPartialOrder(
                "matrix shape does not match labels".into(),
            ));
        }
        let mut below = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    below[j] |= 1 << i;
                }
            }
        }
        Self::from_below(labels, below)
    }

    /// From `(i, j)` pairs meaning `i ≤ j`. Reflexive pairs are added.
    /// With `close = true` the reflexive-transitive closure is taken first.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)], close: bool) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeLimit {
                what: "poset size",
                limit: MAX_ELEMENTS,
                actual: n,
            });
        }
        let mut below = vec![0u64; n];
        for j in 0..n {
            below[j] |= 1 << j;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidIndex {
                    kind: "element",
                    index: i.max(j),
                    len: n,
                });
            }
            below[j] |= 1 << i;
        }
        if close {
            // Warshall on bitsets
            for k in 0..n {
                for j in 0..n {
                    if below[j] >> k & 1 == 1 {
                        below[j] |= below[k];
                    }
                }
            }
        }
        Self::from_below(labels, below)
    }

    pub(crate) fn from_below(labels: Vec<String>, below: Vec<u64>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeLimit {
                what: "poset size",
                limit: MAX_ELEMENTS,
                actual: n,
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel {
                    kind: "element",
                    label: l.clone(),
                });
            }
        }
        for j in 0..n {
            if below[j] >> j & 1 == 0 {
                return Err(Error::NotPartialOrder(format!(
                    "{} ≰ {}",
                    labels[j], labels[j]
                )));
            }
            for i in bits(below[j]) {
                if i != j && below[i] >> j & 1 == 1 {
                    return Err(Error::NotPartialOrder(format!(
                        "{} and {} are below each other",
                        labels[i], labels[j]
                    )));
                }
                if below[i] & !below[j] != 0 {
                    let k = bits(below[i] & !below[j]).next().unwrap();
                    return Err(Error::NotPartialOrder(format!(
                        "{} ≤ {} ≤ {} but not {} ≤ {}",
                        labels[k], labels[i], labels[j], labels[k], labels[j]
                    )));
                }
            }
        }
        let mut above = vec![0u64; n];
        for j in 0..n {
            for i in bits(below[j]) {
                above[i] |= 1 << j;
            }
        }
        Ok(FinitePoset {
            labels,
            below,
            above,
        })
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let below = (0..n).map(|j| full(j + 1)).collect();
        Self::from_below(labels, below).expect("chain is a partial order")
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        let below = (0..n).map(|j| 1u64 << j).collect();
        Self::from_below(labels, below).expect("antichain is a partial order")
    }

    /// `⊥ < a, b < ⊤` with `a`, `b` incomparable.
    pub fn diamond() -> Self {
        let labels = ["bot", "a", "b", "top"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_pairs(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)], true)
            .expect("diamond is a partial order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn all(&self) -> u64 {
        full(self.len())
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    /// `↓j` as a mask.
    pub fn down(&self, j: usize) -> u64 {
        self.below[j]
    }

    /// `↑i` as a mask.
    pub fn up(&self, i: usize) -> u64 {
        self.above[i]
    }

    /// Down-closure of a set.
    pub fn down_closure(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, i| acc | self.below[i])
    }

    pub fn upper_bounds(&self, mask: u64) -> u64 {
        bits(mask).fold(self.all(), |acc, i| acc & self.above[i])
    }

    pub fn lower_bounds(&self, mask: u64) -> u64 {
        bits(mask).fold(self.all(), |acc, i| acc & self.below[i])
    }

    /// Element of `mask` below every other element of `mask`.
    pub fn least_of(&self, mask: u64) -> Option<usize> {
        bits(mask).find(|&i| mask & !self.above[i] == 0)
    }

    pub fn greatest_of(&self, mask: u64) -> Option<usize> {
        bits(mask).find(|&i| mask & !self.below[i] == 0)
    }

    pub fn sup(&self, mask: u64) -> Option<usize> {
        self.least_of(self.upper_bounds(mask))
    }

    pub fn inf(&self, mask: u64) -> Option<usize> {
        self.greatest_of(self.lower_bounds(mask))
    }

    pub fn least(&self) -> Option<usize> {
        self.least_of(self.all())
    }

    pub fn greatest(&self) -> Option<usize> {
        self.greatest_of(self.all())
    }

    /// Nonempty, and every two members have an upper bound inside the set.
    pub fn is_directed(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        for i in bits(mask) {
            for j in bits(mask) {
                if j > i && self.above[i] & self.above[j] & mask == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn directed_with_sups(&self, limit: usize) -> Result<Vec<(u64, Option<usize>)>> {
        if self.len() > limit {
            return Err(Error::SizeLimit {
                what: "poset size for directed-subset enumeration",
                limit,
                actual: self.len(),
            });
        }
        let mut out = Vec::new();
        for mask in 1..=self.all() {
            if self.is_directed(mask) {
                out.push((mask, self.sup(mask)));
            }
        }
        Ok(out)
    }

    /// Every directed subset with its supremum, if any. Size ≤ 12.
    pub fn directed_subsets(&self) -> Result<Vec<(u64, Option<usize>)>> {
        self.directed_with_sups(DIRECTED_LIMIT)
    }

    fn way_below_from(&self, directed: &[(u64, Option<usize>)]) -> Vec<u64> {
        // wb[y] = {x | x ≪ y}
        let mut wb = vec![self.all(); self.len()];
        for &(d, s) in directed {
            if let Some(s) = s {
                let reach = self.down_closure(d);
                for y in bits(self.below[s]) {
                    wb[y] &= reach;
                }
            }
        }
        wb
    }

    /// `↡y` for every `y`, as masks.
    pub fn way_below_sets(&self, mode: WayBelowMode) -> Result<Vec<u64>> {
        match mode {
            WayBelowMode::Shortcut => Ok(self.below.clone()),
            WayBelowMode::Literal => Ok(self.way_below_from(&self.directed_subsets()?)),
        }
    }

    /// `x ≪ y`: every directed set whose supremum is above `y` meets `↑x`.
    pub fn way_below_bruteforce(&self, x: usize, y: usize, mode: WayBelowMode) -> Result<bool> {
        for e in [x, y] {
            if e >= self.len() {
                return Err(Error::UnknownElement(e.to_string()));
            }
        }
        Ok(self.way_below_sets(mode)?[y] >> x & 1 == 1)
    }

    /// Decides each property from its definition, quantifying over subsets.
    pub fn domain_classify(&self, conv: EmptySetConvention) -> Result<DomainClass> {
        let directed = self.directed_with_sups(CLASSIFY_LIMIT)?;
        let n = self.len();
        let is_dcpo = directed.iter().all(|(_, s)| s.is_some());
        let wb = self.way_below_from(&directed);
        let basis_ok = |basis: u64| {
            (0..n).all(|x| {
                let approx = wb[x] & basis;
                self.is_directed(approx) && self.sup(approx) == Some(x)
            })
        };
        let is_continuous = is_dcpo && basis_ok(self.all());
        let compact = (0..n)
            .filter(|&x| wb[x] >> x & 1 == 1)
            .fold(0u64, |m, x| m | 1 << x);
        let is_algebraic = is_dcpo && basis_ok(compact);
        let mut bounded_sups = true;
        for mask in 0..=self.all() {
            if mask == 0 && conv == EmptySetConvention::Exclude {
                continue;
            }
            if self.upper_bounds(mask) != 0 && self.sup(mask).is_none() {
                bounded_sups = false;
                break;
            }
        }
        let mut is_semilattice = true;
        let mut multiplicative = true;
        for y in 0..n {
            for z in y + 1..n {
                match self.inf(1 << y | 1 << z) {
                    None => is_semilattice = false,
                    Some(m) => {
                        if wb[y] & wb[z] & !wb[m] != 0 {
                            multiplicative = false;
                        }
                    }
                }
            }
        }
        Ok(DomainClass {
            is_dcpo,
            is_continuous,
            is_algebraic,
            is_pointed: self.least().is_some(),
            has_top: self.greatest().is_some(),
            is_bounded_complete: is_continuous && bounded_sups,
            is_semilattice,
            waybelow_multiplicative: multiplicative,
        })
    }

    /// Nonempty with top, bottom, and all binary meets and joins.
    ///
    /// For a finite poset this is the same as every subset having a
    /// supremum and an infimum: nonempty finite subsets reduce to pairs,
    /// and the empty set to the extremal elements.
    pub fn is_complete_lattice(&self) -> bool {
        if self.is_empty() || self.least().is_none() || self.greatest().is_none() {
            return false;
        }
        let n = self.len();
        (0..n).all(|i| {
            (i + 1..n)
                .all(|j| self.sup(1 << i | 1 << j).is_some() && self.inf(1 << i | 1 << j).is_some())
        })
    }

    /// For every finite `M` and `y` with `M ≪ y` there is `z` with `M ≪ z ≪ y`.
    pub fn interpolation_check(&self) -> Result<bool> {
        let wb = self.way_below_sets(WayBelowMode::Literal)?;
        for m in 0..=self.all() {
            for y in 0..self.len() {
                let m_below_y = bits(m).all(|x| wb[y] >> x & 1 == 1);
                if m_below_y && !bits(wb[y]).any(|z| bits(m).all(|x| wb[z] >> x & 1 == 1)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Relabelled copy under a permutation: element `i` moves to `perm[i]`.
    fn permuted(&self, perm: &[usize]) -> Vec<u64> {
        let n = self.len();
        let mut below = vec![0u64; n];
        for j in 0..n {
            for i in bits(self.below[j]) {
                below[perm[j]] |= 1 << perm[i];
            }
        }
        below
    }

    /// Key invariant under isomorphism; equal keys mean isomorphic posets.
    pub fn canonical_form(&self) -> Vec<u64> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = self.permuted(&perm);
        for_each_permutation(&mut perm, 0, &mut |p| {
            let cand = self.permuted(p);
            if cand < best {
                best = cand;
            }
        });
        best
    }
}

fn for_each_permutation(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        for_each_permutation(p, k + 1, f);
        p.swap(k, i);
    }
}

/// An order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    source: FinitePoset,
    target: FinitePoset,
    mapping: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: FinitePoset, target: FinitePoset, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.len() {
            return Err(Error::NotMonotone(format!(
                "mapping has {} entries for {} elements",
                mapping.len(),
                source.len()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&y| y >= target.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        for j in 0..source.len() {
            for i in bits(source.down(j)) {
                if !target.leq(mapping[i], mapping[j]) {
                    return Err(Error::NotMonotone(format!(
                        "{} ≤ {} but {} ≰ {}",
                        source.label(i),
                        source.label(j),
                        target.label(mapping[i]),
                        target.label(mapping[j])
                    )));
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            mapping,
        })
    }

    pub fn identity(p: &FinitePoset) -> Self {
        MonotoneMap {
            source: p.clone(),
            target: p.clone(),
            mapping: (0..p.len()).collect(),
        }
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != other.source {
            return Err(Error::ContextMismatch("maps do not compose".into()));
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: other.target.clone(),
            mapping: self.mapping.iter().map(|&x| other.mapping[x]).collect(),
        })
    }

    /// Image of the supremum equals the supremum of the image, for every
    /// directed subset that has a supremum.
    pub fn preserves_directed_sups(&self) -> Result<bool> {
        let directed = self.source.directed_subsets()?;
        Ok(self.preserves_sups_of(&directed))
    }

    fn preserves_sups_of(&self, directed: &[(u64, Option<usize>)]) -> bool {
        directed.iter().all(|&(d, s)| match s {
            None => true,
            Some(s) => {
                let img = bits(d).fold(0u64, |m, x| m | 1 << self.mapping[x]);
                self.target.sup(img) == Some(self.mapping[s])
            }
        })
    }
}

/// Every monotone map from `p` to `q`, sorted by mapping vector.
///
/// Each map is also checked to preserve directed suprema (always true on
/// finite posets); a failure there is reported as an invariant error.
pub fn enumerate_monotone_maps(
    p: &FinitePoset,
    q: &FinitePoset,
    bound: u64,
) -> Result<Vec<MonotoneMap>> {
    let candidates = (q.len() as u64)
        .checked_pow(p.len() as u32)
        .unwrap_or(u64::MAX);
    if candidates > bound {
        return Err(Error::SizeLimit {
            what: "candidate map count",
            limit: bound.min(usize::MAX as u64) as usize,
            actual: candidates.min(usize::MAX as u64) as usize,
        });
    }
    // assign in a linear extension so every predecessor is fixed first
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| p.down(i).count_ones());
    let mut found = Vec::new();
    let mut assign = vec![usize::MAX; p.len()];
    fn go(
        k: usize,
        order: &[usize],
        p: &FinitePoset,
        q: &FinitePoset,
        assign: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            found.push(assign.clone());
            return;
        }
        let x = order[k];
        let floor = bits(p.down(x) & !(1 << x)).fold(q.all(), |acc, y| acc & q.up(assign[y]));
        for v in bits(floor) {
            assign[x] = v;
            go(k + 1, order, p, q, assign, found);
        }
        assign[x] = usize::MAX;
    }
    go(0, &order, p, q, &mut assign, &mut found);
    found.sort();
    let directed = if p.len() <= DIRECTED_LIMIT {
        Some(p.directed_subsets()?)
    } else {
        None
    };
    found
        .into_iter()
        .map(|m| {
            let f = MonotoneMap::new(p.clone(), q.clone(), m)?;
            if let Some(d) = &directed {
                if !f.preserves_sups_of(d) {
                    return Err(Error::Invariant(format!(
                        "monotone map {:?} fails to preserve a directed supremum",
                        f.mapping
                    )));
                }
            }
            Ok(f)
        })
        .collect()
}

/// Order isomorphism from `p` onto `q`, found by backtracking.
pub fn find_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<MonotoneMap> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let sig = |x: &FinitePoset, i: usize| (x.down(i).count_ones(), x.up(i).count_ones());
    let mut ps: Vec<_> = (0..n).map(|i| sig(p, i)).collect();
    let mut qs: Vec<_> = (0..n).map(|i| sig(q, i)).collect();
    let (pk, qk) = (ps.clone(), qs.clone());
    ps.sort();
    qs.sort();
    if ps != qs {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| p.down(i).count_ones());
    let mut assign = vec![usize::MAX; n];
    let mut used = 0u64;
    fn go(
        k: usize,
        order: &[usize],
        p: &FinitePoset,
        q: &FinitePoset,
        pk: &[(u32, u32)],
        qk: &[(u32, u32)],
        assign: &mut Vec<usize>,
        used: &mut u64,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for v in 0..q.len() {
            if *used >> v & 1 == 1 || pk[x] != qk[v] {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&y| p.leq(y, x) == q.leq(assign[y], v) && p.leq(x, y) == q.leq(v, assign[y]));
            if !consistent {
                continue;
            }
            assign[x] = v;
            *used |= 1 << v;
            if go(k + 1, order, p, q, pk, qk, assign, used) {
                return true;
            }
            *used &= !(1 << v);
            assign[x] = usize::MAX;
        }
        false
    }
    if go(0, &order, p, q, &pk, &qk, &mut assign, &mut used) {
        Some(MonotoneMap {
            source: p.clone(),
            target: q.clone(),
            mapping: assign,
        })
    } else {
        None
    }
}

/// All posets with at most `max_n` elements, one per isomorphism class.
///
/// Built by filtering every relation matrix on `n` points for the partial
/// order axioms and keeping one representative per canonical form.
pub fn poset_catalog(max_n: usize) -> Result<Vec<FinitePoset>> {
    if max_n > CATALOG_LIMIT {
        return Err(Error::SizeLimit {
            what: "catalog element count",
            limit: CATALOG_LIMIT,
            actual: max_n,
        });
    }
    let mut out = Vec::new();
    for n in 0..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut seen = BTreeSet::new();
        for rel in 0u64..(1u64 << pairs.len()) {
            let mut below: Vec<u64> = (0..n).map(|j| 1u64 << j).collect();
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if rel >> k & 1 == 1 {
                    below[j] |= 1 << i;
                }
            }
            let antisym =
                (0..n).all(|j| bits(below[j] & !(1 << j)).all(|i| below[i] >> j & 1 == 0));
            let trans = (0..n).all(|j| bits(below[j]).all(|i| below[i] & !below[j] == 0));
            if !(antisym && trans) {
                continue;
            }
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            let p = FinitePoset::from_below(labels, below)?;
            let key = p.canonical_form();
            if seen.insert(key.clone()) {
                let labels = (0..n).map(|i| format!("e{i}")).collect();
                out.push(FinitePoset::from_below(labels, key)?);
            }
        }
    }
    Ok(out)
}
