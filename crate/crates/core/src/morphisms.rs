//! Approximable relations between contexts, their calculus, and the
//! correspondence with monotone maps of concepts and of finite domains.

use std::fmt;

use crate::concepts::ConceptPoset;
use crate::context::EXHAUSTIVE_LIMIT;
use crate::error::{Error, Result};
use crate::kernel::AcfContext;
use crate::order::{enumerate_monotone_maps, MonotoneMap, DIRECTED_LIMIT, MONOTONE_BOUND};
use crate::representation::RepContext;
use crate::sets::{forall_subsets, AttrSet};
use crate::subclasses::ConditionCheck;

fn same(a: &AcfContext, b: &AcfContext) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// A relation between the selection of `source` and the attributes of
/// `target`, stored as the image set of each selection member.
#[derive(Clone)]
pub struct FMorphism<'a> {
    source: &'a AcfContext,
    target: &'a AcfContext,
    rel: Vec<AttrSet>,
}

impl fmt::Debug for FMorphism<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FMorphism").field("rel", &self.rel).finish()
    }
}

impl PartialEq for FMorphism<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rel == other.rel && same(self.source, other.source) && same(self.target, other.target)
    }
}

impl Eq for FMorphism<'_> {}

impl<'a> FMorphism<'a> {
    pub fn new(source: &'a AcfContext, target: &'a AcfContext, rel: Vec<AttrSet>) -> Result<Self> {
        if rel.len() != source.selection().len() {
            return Err(Error::ContextMismatch(format!(
                "relation has {} rows for {} selection members",
                rel.len(),
                source.selection().len()
            )));
        }
        for &r in &rel {
            target.context().check_attrs(r)?;
        }
        Ok(FMorphism {
            source,
            target,
            rel,
        })
    }

    /// From `(selection index, target attribute)` pairs.
    pub fn from_pairs(
        source: &'a AcfContext,
        target: &'a AcfContext,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut rel = vec![AttrSet::EMPTY; source.selection().len()];
        for &(f, x) in pairs {
            if f >= rel.len() {
                return Err(Error::InvalidIndex {
                    kind: "selection member",
                    index: f,
                    len: rel.len(),
                });
            }
            if x >= target.context().num_attributes() {
                return Err(Error::InvalidIndex {
                    kind: "attribute",
                    index: x,
                    len: target.context().num_attributes(),
                });
            }
            rel[f] = rel[f].with(x);
        }
        Self::new(source, target, rel)
    }

    pub fn source(&self) -> &'a AcfContext {
        self.source
    }

    pub fn target(&self) -> &'a AcfContext {
        self.target
    }

    pub fn rel(&self) -> &[AttrSet] {
        &self.rel
    }

    /// Sorted `(selection index, attribute)` pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rel
            .iter()
            .enumerate()
            .flat_map(|(f, r)| r.iter().map(move |x| (f, x)))
            .collect()
    }
}

/// AR1 to AR4, AR5, and whether AR5 agreed with AR3 and AR4 together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub ar1: ConditionCheck,
    pub ar2: ConditionCheck,
    pub ar3: ConditionCheck,
    pub ar4: ConditionCheck,
    pub ar5: ConditionCheck,
    /// `AR1 ∧ AR2 ⟹ (AR3 ∧ AR4 ⟺ AR5)` on this relation.
    pub ar5_equivalence_holds: bool,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.ar1.holds && self.ar2.holds && self.ar3.holds && self.ar4.holds
    }
}

fn cond(fail: Option<String>) -> ConditionCheck {
    ConditionCheck {
        holds: fail.is_none(),
        counterexample: fail,
    }
}

/// Checks the morphism axioms. Quantifiers over finite `M' ⊆ H(F)` are
/// enumerated when the image has at most 12 elements; otherwise only
/// `M' = H(F)` is tested, which decides the rest since each condition only
/// gets harder as `M'` grows.
pub fn validate(h: &FMorphism) -> MorphismReport {
    let (s, t) = (h.source, h.target);
    let sel = s.selection().members();
    let br = s.brackets();
    let tsel = t.selection().members();
    let tbr = t.brackets();
    let rel = &h.rel;

    let mut ar1 = None;
    'a1: for f in 0..sel.len() {
        for g in 0..tsel.len() {
            if tsel[g].is_subset(rel[f]) && !tbr[g].is_subset(rel[f]) {
                ar1 = Some(format!(
                    "member #{f} relates to target member #{g} but not to all of its bracket"
                ));
                break 'a1;
            }
        }
    }

    let mut ar2 = None;
    'a2: for f in 0..sel.len() {
        for g in 0..sel.len() {
            if sel[g].is_subset(br[f]) && !rel[g].is_subset(rel[f]) {
                ar2 = Some(format!(
                    "member #{g} ⊆ ⌈#{f}⌉ but its image is not contained in that of #{f}"
                ));
                break 'a2;
            }
        }
    }

    let mut ar3 = None;
    for f in 0..sel.len() {
        let bad = forall_subsets(rel[f], EXHAUSTIVE_LIMIT, |m| {
            tsel.iter().any(|g| m.is_subset(*g) && g.is_subset(rel[f]))
        });
        if let Some(m) = bad {
            ar3 = Some(format!(
                "member #{f}: no target member between {m} and its image {}",
                rel[f]
            ));
            break;
        }
    }

    let mut ar4 = None;
    'a4: for f in 0..sel.len() {
        for x in rel[f].iter() {
            let ok = (0..sel.len()).any(|fx| {
                sel[fx].is_subset(br[f])
                    && (0..tsel.len()).any(|g| tbr[g].contains(x) && tsel[g].is_subset(rel[fx]))
            });
            if !ok {
                ar4 = Some(format!(
                    "member #{f} and attribute {x} have no approximating pair"
                ));
                break 'a4;
            }
        }
    }

    let mut ar5 = None;
    for f in 0..sel.len() {
        let bad = forall_subsets(rel[f], EXHAUSTIVE_LIMIT, |m| {
            (0..sel.len()).any(|g| {
                sel[g].is_subset(br[f])
                    && (0..tsel.len()).any(|gp| m.is_subset(tbr[gp]) && tsel[gp].is_subset(rel[g]))
            })
        });
        if let Some(m) = bad {
            ar5 = Some(format!("member #{f}, M' = {m}"));
            break;
        }
    }

    let (ar1, ar2, ar3, ar4, ar5) = (cond(ar1), cond(ar2), cond(ar3), cond(ar4), cond(ar5));
    let ar5_equivalence_holds = !(ar1.holds && ar2.holds) || (ar3.holds && ar4.holds) == ar5.holds;
    MorphismReport {
        ar1,
        ar2,
        ar3,
        ar4,
        ar5,
        ar5_equivalence_holds,
    }
}

/// `H(X)`: attributes related to some member contained in `X`.
pub fn apply(h: &FMorphism, x: AttrSet) -> Result<AttrSet> {
    h.source.context().check_attrs(x)?;
    Ok(h.source
        .selection()
        .members()
        .iter()
        .zip(&h.rel)
        .filter(|(f, _)| f.is_subset(x))
        .fold(AttrSet::EMPTY, |acc, (_, r)| acc.union(*r)))
}

/// A monotone map between the concept posets of two contexts, by index.
#[derive(Clone)]
pub struct ConceptFunction<'a> {
    source: &'a AcfContext,
    target: &'a AcfContext,
    mapping: Vec<usize>,
}

impl fmt::Debug for ConceptFunction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConceptFunction")
            .field("mapping", &self.mapping)
            .finish()
    }
}

impl PartialEq for ConceptFunction<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.mapping == other.mapping
            && same(self.source, other.source)
            && same(self.target, other.target)
    }
}

impl Eq for ConceptFunction<'_> {}

impl<'a> ConceptFunction<'a> {
    pub fn new(
        source: &'a AcfContext,
        target: &'a AcfContext,
        mapping: Vec<usize>,
    ) -> Result<Self> {
        let (p, q) = (source.poset(), target.poset());
        if mapping.len() != p.len() {
            return Err(Error::NotMonotone(format!(
                "mapping has {} entries for {} concepts",
                mapping.len(),
                p.len()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&j| j >= q.len()) {
            return Err(Error::UnknownElement(format!("concept #{bad}")));
        }
        for i in 0..p.len() {
            for j in 0..p.len() {
                if p.leq(i, j) && !q.leq(mapping[i], mapping[j]) {
                    return Err(Error::NotMonotone(format!(
                        "{} ⊆ {} but images are not included",
                        p.label(i),
                        p.label(j)
                    )));
                }
            }
        }
        Ok(ConceptFunction {
            source,
            target,
            mapping,
        })
    }

    /// From explicit `(source concept, target concept)` attribute-set pairs.
    pub fn from_sets(
        source: &'a AcfContext,
        target: &'a AcfContext,
        pairs: &[(AttrSet, AttrSet)],
    ) -> Result<Self> {
        let (p, q) = (source.poset(), target.poset());
        let mut mapping = vec![usize::MAX; p.len()];
        for &(a, b) in pairs {
            let i = p.index_of(a).ok_or(Error::ForeignConcept(a))?;
            let j = q.index_of(b).ok_or(Error::ForeignConcept(b))?;
            mapping[i] = j;
        }
        if let Some(i) = mapping.iter().position(|&j| j == usize::MAX) {
            return Err(Error::NotMonotone(format!(
                "no image given for {}",
                p.label(i)
            )));
        }
        Self::new(source, target, mapping)
    }

    pub fn identity(acf: &'a AcfContext) -> Self {
        ConceptFunction {
            source: acf,
            target: acf,
            mapping: (0..acf.poset().len()).collect(),
        }
    }

    pub fn source(&self) -> &'a AcfContext {
        self.source
    }

    pub fn target(&self) -> &'a AcfContext {
        self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// Image of the concept with attribute set `q`.
    pub fn apply(&self, q: AttrSet) -> Result<AttrSet> {
        let i = self
            .source
            .poset()
            .index_of(q)
            .ok_or(Error::ForeignConcept(q))?;
        Ok(self.target.poset().get(self.mapping[i]).attrs)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ConceptFunction<'a>) -> Result<ConceptFunction<'a>> {
        if !same(self.target, other.source) {
            return Err(Error::ContextMismatch(
                "concept functions do not compose".into(),
            ));
        }
        Ok(ConceptFunction {
            source: self.source,
            target: other.target,
            mapping: self.mapping.iter().map(|&i| other.mapping[i]).collect(),
        })
    }

    /// The image of the union of a directed family is the union of the images.
    pub fn preserves_directed_unions(&self) -> Result<bool> {
        let p = self.source.poset();
        let q = self.target.poset();
        if p.len() > DIRECTED_LIMIT {
            return Err(Error::SizeLimit {
                what: "concept count for directed-union check",
                limit: DIRECTED_LIMIT,
                actual: p.len(),
            });
        }
        let fp = p.to_finite_poset();
        for (d, _) in fp.directed_subsets()? {
            let members: Vec<usize> = (0..p.len()).filter(|i| d >> i & 1 == 1).collect();
            let union = members
                .iter()
                .fold(AttrSet::EMPTY, |u, &i| u.union(p.get(i).attrs));
            let Some(k) = p.index_of(union) else {
                return Ok(false);
            };
            let img = members.iter().fold(AttrSet::EMPTY, |u, &i| {
                u.union(q.get(self.mapping[i]).attrs)
            });
            if q.get(self.mapping[k]).attrs != img {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(F, x) ∈ I ⟺ x ∈ ⌈F⌉`.
pub fn identity_morphism(acf: &AcfContext) -> FMorphism<'_> {
    FMorphism {
        source: acf,
        target: acf,
        rel: acf.brackets().to_vec(),
    }
}

/// `Q ↦ H(Q)` on continuous concepts. Fails if some image is not a concept
/// or the map is not monotone.
pub fn to_function<'a>(h: &FMorphism<'a>) -> Result<ConceptFunction<'a>> {
    let p = h.source.poset();
    let q = h.target.poset();
    let mut mapping = Vec::with_capacity(p.len());
    for c in p.concepts() {
        let img = apply(h, c.attrs)?;
        let j = q.index_of(img).ok_or_else(|| {
            Error::Invariant(format!(
                "image {} of {} is not a concept",
                h.target.context().format_attrs(img),
                h.source.context().format_attrs(c.attrs)
            ))
        })?;
        mapping.push(j);
    }
    ConceptFunction::new(h.source, h.target, mapping)
}

/// `(F, x) ∈ H ⟺ x ∈ φ(⌈F⌉)`.
pub fn from_function<'a>(phi: &ConceptFunction<'a>) -> FMorphism<'a> {
    let p = phi.source.poset();
    let q = phi.target.poset();
    let rel = phi
        .source
        .brackets()
        .iter()
        .map(|&b| {
            let i = p.index_of(b).expect("every bracket is a concept");
            q.get(phi.mapping[i]).attrs
        })
        .collect();
    FMorphism {
        source: phi.source,
        target: phi.target,
        rel,
    }
}

/// `(F, x'') ∈ H2 ∘ H1 ⟺ ∃G ∈ 𝔉': F H1 G and (G, x'') ∈ H2`.
pub fn compose<'a>(h2: &FMorphism<'a>, h1: &FMorphism<'a>) -> Result<FMorphism<'a>> {
    if !same(h1.target, h2.source) {
        return Err(Error::ContextMismatch(
            "target of the first relation is not the source of the second".into(),
        ));
    }
    let mid = h2.source.selection().members();
    let rel = h1
        .rel
        .iter()
        .map(|&r| {
            mid.iter()
                .zip(&h2.rel)
                .filter(|(g, _)| g.is_subset(r))
                .fold(AttrSet::EMPTY, |acc, (_, r2)| acc.union(*r2))
        })
        .collect();
    Ok(FMorphism {
        source: h1.source,
        target: h2.target,
        rel,
    })
}

/// Every monotone map between the concept posets.
pub fn concept_functions<'a>(
    source: &'a AcfContext,
    target: &'a AcfContext,
) -> Result<Vec<ConceptFunction<'a>>> {
    let maps = enumerate_monotone_maps(
        &source.poset().to_finite_poset(),
        &target.poset().to_finite_poset(),
        MONOTONE_BOUND,
    )?;
    maps.into_iter()
        .map(|m| ConceptFunction::new(source, target, m.mapping().to_vec()))
        .collect()
}

fn check_domains(rc_d: &RepContext, rc_e: &RepContext, f: &MonotoneMap) -> Result<()> {
    if f.source() != rc_d.domain() || f.target() != rc_e.domain() {
        return Err(Error::ContextMismatch(
            "map does not run between the two domains".into(),
        ));
    }
    Ok(())
}

/// `(F, x') ∈ G_f ⟺ x' ≪ f(⋁F)`.
pub fn from_scott<'a>(
    rc_d: &'a RepContext,
    rc_e: &'a RepContext,
    f: &MonotoneMap,
) -> Result<FMorphism<'a>> {
    check_domains(rc_d, rc_e, f)?;
    let d = rc_d.domain();
    let rel = rc_d
        .acf()
        .selection()
        .members()
        .iter()
        .map(|m| {
            let top = d
                .greatest_of(m.bits())
                .expect("rep selection members have a greatest element");
            rc_e.approximants(f.apply(top))
        })
        .collect();
    Ok(FMorphism {
        source: rc_d.acf(),
        target: rc_e.acf(),
        rel,
    })
}

/// `f(x) = ⋁ { x' | ∃F ⊆ ↡x, (F, x') ∈ G }`.
pub fn to_scott(rc_d: &RepContext, rc_e: &RepContext, g: &FMorphism) -> Result<MonotoneMap> {
    if !same(g.source, rc_d.acf()) || !same(g.target, rc_e.acf()) {
        return Err(Error::ContextMismatch(
            "relation does not run between the two representations".into(),
        ));
    }
    let e = rc_e.domain();
    let mut mapping = Vec::with_capacity(rc_d.domain().len());
    for x in 0..rc_d.domain().len() {
        let ix = apply(g, rc_d.approximants(x))?;
        let s = e.sup(ix.bits()).ok_or_else(|| {
            Error::Invariant(format!(
                "image of {} has no supremum",
                rc_d.domain().label(x)
            ))
        })?;
        mapping.push(s);
    }
    MonotoneMap::new(rc_d.domain().clone(), e.clone(), mapping)
}

/// `↡f(x) = { x' | ∃y ≪ x, x' ≪ f(y) }` at every `x`.
pub fn approximation_identity_holds(
    rc_d: &RepContext,
    rc_e: &RepContext,
    f: &MonotoneMap,
) -> Result<bool> {
    check_domains(rc_d, rc_e, f)?;
    let n = rc_d.domain().len();
    Ok((0..n).all(|x| {
        let right = rc_d.approximants(x).iter().fold(AttrSet::EMPTY, |acc, y| {
            acc.union(rc_e.approximants(f.apply(y)))
        });
        rc_e.approximants(f.apply(x)) == right
    }))
}

/// Summary of the functor checks over a list of contexts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorReport {
    /// `(source, target, monotone maps, distinct valid relations)` per ordered pair.
    pub hom_sizes: Vec<(usize, usize, usize, usize)>,
    pub compositions_checked: usize,
    pub failures: Vec<String>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Hom-set bijection, identity laws and composition preservation over
/// every ordered pair (and triple) of the given contexts.
pub fn functor_check(contexts: &[&AcfContext]) -> Result<FunctorReport> {
    let mut report = FunctorReport::default();
    let n = contexts.len();
    let mut homs: Vec<Vec<Vec<(ConceptFunction, FMorphism)>>> = Vec::with_capacity(n);
    for (i, &a) in contexts.iter().enumerate() {
        let id = identity_morphism(a);
        match to_function(&id) {
            Ok(phi) if phi == ConceptFunction::identity(a) => {}
            Ok(_) => report.failures.push(format!(
                "context {i}: identity relation maps to a non-identity function"
            )),
            Err(e) => report
                .failures
                .push(format!("context {i}: identity relation: {e}")),
        }
        let mut row = Vec::with_capacity(n);
        for (j, &b) in contexts.iter().enumerate() {
            let fns = concept_functions(a, b)?;
            let mut pairs = Vec::with_capacity(fns.len());
            for phi in fns {
                let h = from_function(&phi);
                let rep = validate(&h);
                if !rep.passed() {
                    report.failures.push(format!(
                        "hom({i},{j}): relation of {:?} fails validation: {rep:?}",
                        phi.mapping
                    ));
                }
                match to_function(&h) {
                    Ok(back) if back == phi => {}
                    Ok(back) => report.failures.push(format!(
                        "hom({i},{j}): {:?} comes back as {:?}",
                        phi.mapping, back.mapping
                    )),
                    Err(e) => report.failures.push(format!("hom({i},{j}): {e}")),
                }
                if let Ok(back) = to_function(&h) {
                    if from_function(&back) != h {
                        report.failures.push(format!(
                            "hom({i},{j}): relation of {:?} does not round trip",
                            phi.mapping
                        ));
                    }
                }
                pairs.push((phi, h));
            }
            let mut rels: Vec<&Vec<AttrSet>> = pairs.iter().map(|(_, h)| &h.rel).collect();
            rels.sort();
            rels.dedup();
            report.hom_sizes.push((i, j, pairs.len(), rels.len()));
            if rels.len() != pairs.len() {
                report
                    .failures
                    .push(format!("hom({i},{j}): distinct maps give equal relations"));
            }
            row.push(pairs);
        }
        homs.push(row);
    }
    for i in 0..n {
        let id_i = identity_morphism(contexts[i]);
        for j in 0..n {
            let id_j = identity_morphism(contexts[j]);
            for (_, h) in &homs[i][j] {
                if compose(h, &id_i)? != *h || compose(&id_j, h)? != *h {
                    report
                        .failures
                        .push(format!("hom({i},{j}): identity law fails for {:?}", h.rel));
                }
            }
            for k in 0..n {
                for (phi1, h1) in &homs[i][j] {
                    for (phi2, h2) in &homs[j][k] {
                        let c = compose(h2, h1)?;
                        let expected = phi1.then(phi2)?;
                        report.compositions_checked += 1;
                        if c != from_function(&expected) {
                            report.failures.push(format!(
                                "composite of {:?} and {:?} ({i}->{j}->{k}) differs from the composed function",
                                phi1.mapping, phi2.mapping
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The poset a concept function acts on, for display.
pub fn describe(phi: &ConceptFunction) -> Vec<(String, String)> {
    let (p, q): (&ConceptPoset, &ConceptPoset) = (phi.source.poset(), phi.target.poset());
    (0..p.len())
        .map(|i| (p.label(i).to_string(), q.label(phi.mapping[i]).to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::example_c0;
    use crate::kernel::{build_acf, induced_acf, KernelOperator, Selection};
    use crate::order::FinitePoset;
    use crate::representation::rep;

    fn s(v: &[usize]) -> AttrSet {
        AttrSet::from_indices(v.iter().copied())
    }

    #[test]
    fn identity_validates_and_maps_to_identity() {
        let acf = induced_acf(example_c0()).unwrap();
        let id = identity_morphism(&acf);
        assert!(validate(&id).passed());
        assert_eq!(to_function(&id).unwrap(), ConceptFunction::identity(&acf));
    }

    #[test]
    fn apply_on_concepts_is_identity_for_identity() {
        let acf = induced_acf(example_c0()).unwrap();
        let id = identity_morphism(&acf);
        for c in acf.poset().concepts() {
            assert_eq!(apply(&id, c.attrs).unwrap(), c.attrs);
        }
    }

    #[test]
    fn constant_map_into_two_chain() {
        let acf = induced_acf(example_c0()).unwrap();
        let rc = rep(&FinitePoset::chain(2)).unwrap();
        let target = rc.acf();
        let bottom = target.poset().index_of(s(&[0])).unwrap();
        let phi = ConceptFunction::new(&acf, target, vec![bottom; acf.poset().len()]).unwrap();
        let h = from_function(&phi);
        assert!(validate(&h).passed());
        assert_eq!(to_function(&h).unwrap(), phi);
    }

    #[test]
    fn non_monotone_function_rejected() {
        let rc = rep(&FinitePoset::chain(2)).unwrap();
        assert!(matches!(
            ConceptFunction::new(rc.acf(), rc.acf(), vec![1, 0]),
            Err(Error::NotMonotone(_))
        ));
    }

    #[test]
    fn compose_checks_contexts() {
        let a = induced_acf(example_c0()).unwrap();
        let rc = rep(&FinitePoset::chain(2)).unwrap();
        let ida = identity_morphism(&a);
        let idb = identity_morphism(rc.acf());
        assert!(matches!(
            compose(&ida, &idb),
            Err(Error::ContextMismatch(_))
        ));
    }

    #[test]
    fn identity_relation_can_leave_the_selection() {
        // brackets that are not themselves members break AR3 for the identity
        // relation, while AR5 still holds
        let sel = Selection::new(vec![s(&[0]), s(&[2])]).unwrap();
        let acf = build_acf(example_c0(), KernelOperator::Identity, sel).unwrap();
        let r = validate(&identity_morphism(&acf));
        assert!(r.ar1.holds && r.ar2.holds && r.ar4.holds && r.ar5.holds);
        assert!(!r.ar3.holds);
        assert!(!r.ar5_equivalence_holds);
    }

    #[test]
    fn scott_round_trip_on_chain() {
        let d = FinitePoset::chain(3);
        let rc = rep(&d).unwrap();
        for f in enumerate_monotone_maps(&d, &d, MONOTONE_BOUND).unwrap() {
            let g = from_scott(&rc, &rc, &f).unwrap();
            assert!(validate(&g).passed());
            assert_eq!(to_scott(&rc, &rc, &g).unwrap(), f);
            assert!(approximation_identity_holds(&rc, &rc, &f).unwrap());
        }
    }

    #[test]
    fn functor_on_small_contexts() {
        let a = induced_acf(example_c0()).unwrap();
        let b = rep(&FinitePoset::chain(2)).unwrap();
        let r = functor_check(&[&a, b.acf()]).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        // 2-chain to 2-chain has three monotone maps
        assert!(r.hom_sizes.contains(&(1, 1, 3, 3)));
    }
}
