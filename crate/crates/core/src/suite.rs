//! Randomized and exhaustive property checks over the whole library.
//!
//! Each named check is a pure function of the configuration; checks run in
//! parallel and the report lists them in the canonical order below.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::concepts::{enumerate_concepts, is_continuous_concept};
use crate::context::{example_c0, FormalContext};
use crate::error::Result;
use crate::generate::{
    derive_seeds, random_bounded_context, random_fc_selection, random_poset, random_selection,
    random_valid_acf, rng, AcfGenConfig, Bounds,
};
use crate::kernel::{
    build_acf_with, check_fc, check_fc_exhaustive, induced_acf_with, is_f_approximable, AcfContext,
    BracketMutation, KernelOperator, Selection,
};
use crate::morphisms::{
    approximation_identity_holds, concept_functions, from_function, from_scott, functor_check,
    to_function, to_scott, validate, FMorphism,
};
use crate::order::{
    enumerate_monotone_maps, poset_catalog, EmptySetConvention, FinitePoset, WayBelowMode,
    MONOTONE_BOUND,
};
use crate::representation::{bracket_formula_holds, rep_with, verify_roundtrip, RepContext};
use crate::sets::AttrSet;
use crate::subclasses::{check_ad, check_bc, check_pointed, check_ss, check_topped};
use crate::symbolic::{
    l1_discontinuity_witness, verify_chain_concept, way_below_table_mismatches, ChainElement,
    Family, ORACLE_INDEX,
};

pub const CHECK_NAMES: [&str; 10] = [
    "basic-theorem",
    "induced-equivalence",
    "representation",
    "way-below",
    "subclasses",
    "morphism-bijection",
    "functor-laws",
    "rep-morphisms",
    "symbolic",
    "mutation",
];

/// Largest concept poset compared against the literal way-below and
/// classified order-theoretically.
const SMALL_POSET: usize = 12;

/// Relations between two contexts are enumerated outright when there are at
/// most this many `(member, attribute)` pairs.
const BRUTE_RELATION_BITS: usize = 16;

const SYMBOLIC_DEPTHS: [u32; 3] = [3, 10, 32];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random contexts for the first two checks and random valid ACF
    /// contexts for the subclass check.
    pub count: usize,
    pub max_attrs: usize,
    pub max_objects: usize,
    /// Largest catalog poset.
    pub max_poset: usize,
    pub random_posets: usize,
    pub random_poset_size: usize,
    pub checks: BTreeSet<String>,
    pub mutation: BracketMutation,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            count: 200,
            max_attrs: 6,
            max_objects: 6,
            max_poset: 5,
            random_posets: 100,
            random_poset_size: 6,
            checks: CHECK_NAMES.iter().map(|s| s.to_string()).collect(),
            mutation: BracketMutation::None,
        }
    }
}

impl SuiteConfig {
    pub fn with_checks<I: IntoIterator<Item = S>, S: Into<String>>(mut self, checks: I) -> Self {
        self.checks = checks.into_iter().map(Into::into).collect();
        self
    }

    fn bounds(&self) -> Bounds {
        Bounds {
            max_objects: self.max_objects,
            max_attributes: self.max_attrs.max(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub instances: usize,
    pub counterexample: Option<String>,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {} ({} instances)",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.instances
            );
            if let Some(ce) = &c.counterexample {
                let _ = writeln!(out, "  counterexample: {ce}");
            }
            for d in &c.details {
                let _ = writeln!(out, "  {d}");
            }
        }
        out
    }
}

/// Records the first failure of a check and counts instances.
#[derive(Default)]
struct Tally {
    instances: usize,
    failure: Option<String>,
    details: Vec<String>,
}

impl Tally {
    fn fail(&mut self, msg: impl FnOnce() -> String) {
        if self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg);
        }
    }

    fn outcome(self, name: &str) -> CheckOutcome {
        CheckOutcome {
            name: name.to_string(),
            passed: self.failure.is_none(),
            instances: self.instances,
            counterexample: self.failure,
            details: self.details,
        }
    }
}

/// One implication or equivalence checked over many instances.
struct SubResult {
    name: &'static str,
    informational: bool,
    checked: usize,
    violations: usize,
    first: Option<String>,
}

impl SubResult {
    fn new(name: &'static str) -> Self {
        SubResult {
            name,
            informational: false,
            checked: 0,
            violations: 0,
            first: None,
        }
    }

    fn info(name: &'static str) -> Self {
        SubResult {
            informational: true,
            ..SubResult::new(name)
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn line(&self) -> String {
        let mut s = format!(
            "{}{}: {} checked, {} violations",
            self.name,
            if self.informational { " [info]" } else { "" },
            self.checked,
            self.violations
        );
        if let Some(f) = &self.first {
            let _ = write!(s, "; first: {f}");
        }
        s
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut names: Vec<&str> = CHECK_NAMES
        .iter()
        .copied()
        .filter(|n| cfg.checks.contains(*n))
        .collect();
    names.extend(
        cfg.checks
            .iter()
            .map(String::as_str)
            .filter(|n| !CHECK_NAMES.contains(n)),
    );
    let checks = names.par_iter().map(|n| run_check(cfg, n)).collect();
    SuiteReport {
        seed: cfg.seed,
        checks,
    }
}

/// Unknown names report a failure rather than being ignored.
pub fn run_check(cfg: &SuiteConfig, name: &str) -> CheckOutcome {
    let t = match name {
        "basic-theorem" => basic_theorem(cfg),
        "induced-equivalence" => induced_equivalence(cfg),
        "representation" => representation(cfg),
        "way-below" => way_below_check(cfg),
        "subclasses" => subclasses(cfg),
        "morphism-bijection" => morphism_bijection(cfg),
        "functor-laws" => functor_laws(cfg),
        "rep-morphisms" => rep_morphisms(cfg),
        "symbolic" => symbolic(),
        "mutation" => mutation(cfg),
        other => {
            let mut t = Tally::default();
            t.fail(|| format!("unknown check `{other}`"));
            t
        }
    };
    t.outcome(name)
}

fn suite_contexts(cfg: &SuiteConfig) -> Vec<(u64, Result<FormalContext>)> {
    derive_seeds(cfg.seed, 1, cfg.count)
        .into_iter()
        .map(|s| (s, random_bounded_context(s, cfg.bounds())))
        .collect()
}

fn suite_posets(cfg: &SuiteConfig) -> Result<Vec<FinitePoset>> {
    // the empty poset has no representation
    let mut v: Vec<FinitePoset> = poset_catalog(cfg.max_poset)?
        .into_iter()
        .filter(|p| !p.is_empty())
        .collect();
    for s in derive_seeds(cfg.seed, 2, cfg.random_posets) {
        v.push(random_poset(s, cfg.random_poset_size, 0.35)?);
    }
    Ok(v)
}

fn all_subsets(n: usize) -> impl Iterator<Item = AttrSet> {
    AttrSet::full(n).subsets()
}

fn concept_lattice(concepts: &[AttrSet]) -> Result<FinitePoset> {
    let labels = (0..concepts.len()).map(|i| format!("c{i}")).collect();
    let leq: Vec<Vec<bool>> = concepts
        .iter()
        .map(|a| concepts.iter().map(|b| a.is_subset(*b)).collect())
        .collect();
    FinitePoset::new(labels, &leq)
}

fn basic_theorem(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    for (seed, ctx) in suite_contexts(cfg) {
        t.instances += 1;
        let ctx = match ctx {
            Ok(c) => c,
            Err(e) => {
                t.fail(|| format!("seed {seed}: {e}"));
                continue;
            }
        };
        let concepts = match ctx.enumerate_formal_concepts() {
            Ok(c) => c,
            Err(e) => {
                t.fail(|| format!("seed {seed}: {e}"));
                continue;
            }
        };
        let mut by_closure = ctx.enumerate_formal_concepts_by_closure();
        by_closure.sort();
        t.require(by_closure == concepts, || {
            format!("seed {seed}: the two enumerations disagree")
        });
        match concept_lattice(&concepts) {
            Ok(p) => t.require(p.is_complete_lattice(), || {
                format!("seed {seed}: concepts do not form a complete lattice")
            }),
            Err(e) => t.fail(|| format!("seed {seed}: {e}")),
        }
        let formal: BTreeSet<AttrSet> = concepts.into_iter().collect();
        for q in all_subsets(ctx.num_attributes()) {
            let literal = ctx.is_approximable_concept_exhaustive(q).unwrap_or(false);
            let fast = ctx.is_approximable_concept(q).unwrap_or(false);
            t.require(literal == formal.contains(&q) && fast == literal, || {
                format!(
                    "seed {seed}: {} approximable={literal} formal={}",
                    ctx.format_attrs(q),
                    formal.contains(&q)
                )
            });
        }
    }
    t
}

/// Acf contexts built alongside the induced-equivalence check, reused by
/// the way-below check.
fn induced_instances(cfg: &SuiteConfig, t: &mut Tally, collect: &mut Vec<AcfContext>) {
    let mut fc_valid = 0usize;
    let mut fc_tried = 0usize;
    for (seed, ctx) in suite_contexts(cfg) {
        t.instances += 1;
        let ctx = match ctx {
            Ok(c) => c,
            Err(e) => {
                t.fail(|| format!("seed {seed}: {e}"));
                continue;
            }
        };
        let n = ctx.num_attributes();
        let acf = match induced_acf_with(ctx.clone(), cfg.mutation) {
            Ok(a) => a,
            Err(e) => {
                t.fail(|| format!("seed {seed}: induced context: {e}"));
                continue;
            }
        };
        let got: BTreeSet<AttrSet> = enumerate_concepts(&acf)
            .concepts()
            .iter()
            .map(|c| c.attrs)
            .collect();
        let expected: BTreeSet<AttrSet> = ctx
            .enumerate_formal_concepts()
            .unwrap_or_default()
            .into_iter()
            .filter(|q| !q.is_empty())
            .collect();
        t.require(got == expected, || {
            format!("seed {seed}: continuous concepts {got:?} differ from nonempty formal concepts {expected:?}")
        });

        let mut r = rng(seed);
        let mut selections: Vec<Selection> = vec![acf.selection().clone()];
        for k in 0..3 {
            let s = if k < 2 {
                random_fc_selection(&mut r, &ctx, 4)
            } else {
                random_selection(&mut r, &ctx, 5)
            };
            if let Ok(s) = s {
                selections.push(s);
            }
        }
        for sel in selections {
            fc_tried += 1;
            let fc = check_fc(&ctx, &sel);
            t.require(fc == check_fc_exhaustive(&ctx, &sel), || {
                format!(
                    "seed {seed}: FC fast and exhaustive checks disagree on {:?}",
                    sel.members()
                )
            });
            if !fc {
                continue;
            }
            fc_valid += 1;
            let fa = match build_acf_with(
                ctx.clone(),
                KernelOperator::Identity,
                sel.clone(),
                cfg.mutation,
            ) {
                Ok(a) => a,
                Err(e) => {
                    t.fail(|| {
                        format!(
                            "seed {seed}: FC selection {:?} rejected: {e}",
                            sel.members()
                        )
                    });
                    continue;
                }
            };
            for q in all_subsets(n) {
                let a = is_f_approximable(&ctx, &sel, q).unwrap_or(false);
                let b = is_continuous_concept(&fa, q).unwrap_or(false);
                t.require(a == b, || {
                    format!(
                        "seed {seed}: Q = {}: F-approximable={a}, continuous={b}",
                        ctx.format_attrs(q)
                    )
                });
            }
            collect.push(fa);
        }
        collect.push(acf);
    }
    t.details
        .push(format!("FC-valid selections: {fc_valid} of {fc_tried}"));
}

fn induced_equivalence(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    induced_instances(cfg, &mut t, &mut Vec::new());
    t
}

fn rep_instances(cfg: &SuiteConfig, t: &mut Tally) -> Vec<RepContext> {
    let posets = match suite_posets(cfg) {
        Ok(p) => p,
        Err(e) => {
            t.fail(|| e.to_string());
            return Vec::new();
        }
    };
    let mut out = Vec::with_capacity(posets.len());
    for d in posets {
        t.instances += 1;
        match rep_with(&d, cfg.mutation) {
            Ok(rc) => out.push(rc),
            Err(e) => t.fail(|| format!("rep of {:?}: {e}", d.labels())),
        }
    }
    out
}

fn representation(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    for rc in rep_instances(cfg, &mut t) {
        let r = verify_roundtrip(&rc);
        t.require(r.ok, || {
            format!(
                "rep of {:?}: {}",
                rc.domain().labels(),
                r.failure.clone().unwrap_or_default()
            )
        });
        t.require(bracket_formula_holds(&rc), || {
            format!(
                "rep of {:?}: bracket differs from the basis formula",
                rc.domain().labels()
            )
        });
    }
    t
}

fn way_below_check(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    let mut acfs = Vec::new();
    let mut scratch = Tally::default();
    induced_instances(cfg, &mut scratch, &mut acfs);
    acfs.extend(
        rep_instances(cfg, &mut scratch)
            .into_iter()
            .map(|rc| rc.acf().clone()),
    );
    if let Some(e) = scratch.failure {
        t.fail(|| format!("building instances: {e}"));
    }
    let mut skipped = 0;
    for acf in &acfs {
        let cp = acf.poset();
        if cp.len() > SMALL_POSET {
            skipped += 1;
            continue;
        }
        t.instances += 1;
        let fp = cp.to_finite_poset();
        let literal = match fp.way_below_sets(WayBelowMode::Literal) {
            Ok(w) => w,
            Err(e) => {
                t.fail(|| e.to_string());
                continue;
            }
        };
        let n = cp.len();
        'pairs: for x in 0..n {
            for y in 0..n {
                if cp.way_below(x, y) != (literal[y] >> x & 1 == 1) {
                    t.fail(|| {
                        format!(
                            "{} ≪ {}: syntactic {}, directed sets {}",
                            cp.label(x),
                            cp.label(y),
                            cp.way_below(x, y),
                            !cp.way_below(x, y)
                        )
                    });
                    break 'pairs;
                }
            }
        }
    }
    t.details.push(format!(
        "concept posets compared: {}, larger than {SMALL_POSET}: {skipped}",
        t.instances
    ));
    t
}

fn subclasses(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    let mut pointed = SubResult::new("pointed ⟺ least element");
    let mut topped = SubResult::new("topped ⟺ greatest element");
    let mut ad = SubResult::new("AD ⟹ algebraic");
    let mut bc = SubResult::new("BC ⟹ bounded complete (nonempty bounded subsets)");
    let mut bc_incl = SubResult::info("BC ⟹ bounded complete (empty set included)");
    let mut ss = SubResult::new("SS1 ∧ SS2 ⟹ semilattice with multiplicative way-below");
    let mut rep_pointed = SubResult::new("least element ⟹ rep passes pointed");
    let mut rep_topped = SubResult::new("greatest element ⟹ rep passes topped");
    let mut rep_bc = SubResult::new("bounded complete ⟹ rep passes BC");
    let mut rep_ss = SubResult::new("semilattice ⟹ rep passes SS1 ∧ SS2");

    let reps = rep_instances(cfg, &mut t);
    let mut acfs: Vec<(String, AcfContext)> = reps
        .iter()
        .map(|rc| {
            (
                format!("rep of {:?}", rc.domain().labels()),
                rc.acf().clone(),
            )
        })
        .collect();
    let gen = AcfGenConfig {
        bounds: cfg.bounds(),
        ..AcfGenConfig::default()
    };
    let mut rejections = 0;
    let mut fallbacks = 0;
    for s in derive_seeds(cfg.seed, 3, cfg.count) {
        t.instances += 1;
        match random_valid_acf(s, gen) {
            Ok(g) => {
                rejections += g.rejections;
                fallbacks += g.fell_back as usize;
                acfs.push((format!("random acf seed {s}"), g.acf));
            }
            Err(e) => t.fail(|| format!("generator seed {s}: {e}")),
        }
    }

    let mut classified = 0;
    for (name, acf) in &acfs {
        let p = acf.poset().to_finite_poset();
        pointed.record(check_pointed(acf).holds == p.least().is_some(), || {
            name.clone()
        });
        topped.record(check_topped(acf).holds == p.greatest().is_some(), || {
            name.clone()
        });
        if p.len() > SMALL_POSET {
            continue;
        }
        let (inc, exc) = match (
            p.domain_classify(EmptySetConvention::Include),
            p.domain_classify(EmptySetConvention::Exclude),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                t.fail(|| format!("{name}: {e}"));
                continue;
            }
        };
        classified += 1;
        ad.record(!check_ad(acf).holds || inc.is_algebraic, || name.clone());
        let has_bc = check_bc(acf).holds;
        bc.record(!has_bc || exc.is_bounded_complete, || name.clone());
        bc_incl.record(!has_bc || inc.is_bounded_complete, || name.clone());
        ss.record(
            !check_ss(acf).holds() || (inc.is_semilattice && inc.waybelow_multiplicative),
            || name.clone(),
        );
    }

    for rc in &reps {
        let d = rc.domain();
        let name = || format!("{:?}", d.labels());
        let Ok(class) = d.domain_classify(EmptySetConvention::Include) else {
            continue;
        };
        if class.is_pointed {
            rep_pointed.record(check_pointed(rc.acf()).holds, name);
        }
        if class.has_top {
            rep_topped.record(check_topped(rc.acf()).holds, name);
        }
        if class.is_bounded_complete {
            rep_bc.record(check_bc(rc.acf()).holds, name);
        }
        if class.is_semilattice {
            rep_ss.record(check_ss(rc.acf()).holds(), name);
        }
    }

    let subs = [
        &pointed,
        &topped,
        &ad,
        &bc,
        &bc_incl,
        &ss,
        &rep_pointed,
        &rep_topped,
        &rep_bc,
        &rep_ss,
    ];
    for s in subs {
        t.details.push(s.line());
        if !s.informational && s.violations > 0 {
            t.fail(|| format!("{}: {}", s.name, s.first.clone().unwrap_or_default()));
        }
    }
    t.details.push(format!(
        "instances: {} rep contexts, {} random; classified {classified}; generator rejections {rejections}, fallbacks {fallbacks}",
        reps.len(),
        acfs.len() - reps.len()
    ));
    t
}

/// The four contexts of the morphism checks, in a fixed order.
fn morphism_contexts(mutation: BracketMutation) -> Result<Vec<(&'static str, AcfContext)>> {
    Ok(vec![
        ("C0", induced_acf_with(example_c0(), mutation)?),
        (
            "rep(2-chain)",
            rep_with(&FinitePoset::chain(2), mutation)?.acf().clone(),
        ),
        (
            "rep(diamond)",
            rep_with(&FinitePoset::diamond(), mutation)?.acf().clone(),
        ),
        (
            "rep(2-antichain)",
            rep_with(&FinitePoset::antichain(2), mutation)?
                .acf()
                .clone(),
        ),
    ])
}

/// Every relation between the two contexts that passes validation, or
/// `None` when there are too many relations to enumerate.
fn brute_force_hom<'a>(s: &'a AcfContext, t: &'a AcfContext) -> Option<Vec<FMorphism<'a>>> {
    let k = s.selection().len();
    let m = t.context().num_attributes();
    if k * m > BRUTE_RELATION_BITS {
        return None;
    }
    let mut out = Vec::new();
    for code in 0u64..1 << (k * m) {
        let rel = (0..k)
            .map(|f| AttrSet::from_bits(code >> (f * m) & ((1u64 << m) - 1)))
            .collect();
        let h = FMorphism::new(s, t, rel).expect("indices in range");
        if validate(&h).passed() {
            out.push(h);
        }
    }
    Some(out)
}

fn morphism_bijection(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    let ctxs = match morphism_contexts(cfg.mutation) {
        Ok(c) => c,
        Err(e) => {
            t.fail(|| e.to_string());
            return t;
        }
    };
    let mut brute_pairs = 0;
    for (sn, s) in &ctxs {
        for (tn, tg) in &ctxs {
            let fns = match concept_functions(s, tg) {
                Ok(f) => f,
                Err(e) => {
                    t.fail(|| format!("{sn} → {tn}: {e}"));
                    continue;
                }
            };
            for phi in &fns {
                t.instances += 1;
                let h = from_function(phi);
                let report = validate(&h);
                t.require(report.passed(), || {
                    format!(
                        "{sn} → {tn}: relation of {:?} is invalid: {report:?}",
                        phi.mapping()
                    )
                });
                match to_function(&h) {
                    Ok(back) => {
                        t.require(&back == phi, || {
                            format!(
                                "{sn} → {tn}: {:?} returns as {:?}",
                                phi.mapping(),
                                back.mapping()
                            )
                        });
                        t.require(from_function(&back) == h, || {
                            format!(
                                "{sn} → {tn}: relation of {:?} does not round trip",
                                phi.mapping()
                            )
                        });
                    }
                    Err(e) => t.fail(|| format!("{sn} → {tn}: {e}")),
                }
            }
            if let Some(valid) = brute_force_hom(s, tg) {
                brute_pairs += 1;
                for h in &valid {
                    match to_function(h) {
                        Ok(phi) => t.require(from_function(&phi) == *h, || {
                            format!("{sn} → {tn}: valid relation {:?} is not the relation of its function", h.rel())
                        }),
                        Err(e) => t.fail(|| format!("{sn} → {tn}: valid relation {:?}: {e}", h.rel())),
                    }
                }
            }
        }
    }
    t.details.push(format!(
        "ordered pairs with every relation enumerated: {brute_pairs}"
    ));
    t
}

fn functor_laws(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    let ctxs = match morphism_contexts(cfg.mutation) {
        Ok(c) => c,
        Err(e) => {
            t.fail(|| e.to_string());
            return t;
        }
    };
    let refs: Vec<&AcfContext> = ctxs.iter().map(|(_, a)| a).collect();
    match functor_check(&refs) {
        Ok(report) => {
            t.instances = report.compositions_checked;
            if let Some(f) = report.failures.first() {
                t.fail(|| f.clone());
            }
            for &(i, j, maps, rels) in &report.hom_sizes {
                let mut line = format!(
                    "hom({} → {}): {maps} monotone maps, {rels} relations",
                    ctxs[i].0, ctxs[j].0
                );
                if let Some(valid) = brute_force_hom(refs[i], refs[j]) {
                    let _ = write!(line, ", {} valid among all relations", valid.len());
                    t.require(valid.len() == maps, || {
                        format!(
                            "hom({} → {}): {maps} monotone maps but {} valid relations",
                            ctxs[i].0,
                            ctxs[j].0,
                            valid.len()
                        )
                    });
                }
                t.details.push(line);
            }
        }
        Err(e) => t.fail(|| e.to_string()),
    }
    t
}

fn rep_morphisms(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    let posets: Vec<FinitePoset> = match poset_catalog(cfg.max_poset.min(4)) {
        Ok(p) => p.into_iter().filter(|p| !p.is_empty()).collect(),
        Err(e) => {
            t.fail(|| e.to_string());
            return t;
        }
    };
    let reps: Vec<RepContext> = match posets.iter().map(|d| rep_with(d, cfg.mutation)).collect() {
        Ok(r) => r,
        Err(e) => {
            t.fail(|| e.to_string());
            return t;
        }
    };
    for rd in &reps {
        for re in &reps {
            let name = || format!("{:?} → {:?}", rd.domain().labels(), re.domain().labels());
            let maps = match enumerate_monotone_maps(rd.domain(), re.domain(), MONOTONE_BOUND) {
                Ok(m) => m,
                Err(e) => {
                    t.fail(|| format!("{}: {e}", name()));
                    continue;
                }
            };
            for f in &maps {
                t.instances += 1;
                let res = (|| -> Result<(bool, bool, bool)> {
                    let g = from_scott(rd, re, f)?;
                    let valid = validate(&g).passed();
                    let back = to_scott(rd, re, &g)? == *f;
                    Ok((valid, back, approximation_identity_holds(rd, re, f)?))
                })();
                match res {
                    Ok((valid, back, ident)) => {
                        t.require(valid, || {
                            format!("{}: relation of {:?} is invalid", name(), f.mapping())
                        });
                        t.require(back, || {
                            format!(
                                "{}: {:?} does not return from its relation",
                                name(),
                                f.mapping()
                            )
                        });
                        t.require(ident, || {
                            format!(
                                "{}: approximation identity fails for {:?}",
                                name(),
                                f.mapping()
                            )
                        });
                    }
                    Err(e) => t.fail(|| format!("{}: {:?}: {e}", name(), f.mapping())),
                }
            }
            let fns = match concept_functions(rd.acf(), re.acf()) {
                Ok(f) => f,
                Err(e) => {
                    t.fail(|| format!("{}: {e}", name()));
                    continue;
                }
            };
            for phi in &fns {
                let g = from_function(phi);
                match to_scott(rd, re, &g).and_then(|f| from_scott(rd, re, &f)) {
                    Ok(g2) => t.require(g2 == g, || {
                        format!("{}: relation does not return from its map", name())
                    }),
                    Err(e) => t.fail(|| format!("{}: {e}", name())),
                }
            }
        }
    }
    t.details.push(format!("catalog posets: {}", reps.len()));
    t
}

fn symbolic() -> Tally {
    let mut t = Tally::default();
    for family in [Family::L1, Family::L2] {
        for depth in SYMBOLIC_DEPTHS {
            t.instances += 1;
            match verify_chain_concept(family, depth) {
                Ok(r) => {
                    t.require(r.passed(), || format!("{family:?} depth {depth}: {r:?}"));
                    let adds: Vec<String> = r.closure_adds.iter().map(|e| e.to_string()).collect();
                    t.details.push(format!(
                        "{family:?} depth {depth}: {} samples, closure adds {{{}}}",
                        r.samples,
                        adds.join(", ")
                    ));
                }
                Err(e) => t.fail(|| format!("{family:?} depth {depth}: {e}")),
            }
        }
        match way_below_table_mismatches(family, ORACLE_INDEX) {
            Ok(m) => t.require(m.is_empty(), || {
                format!("{family:?}: way-below table disagrees with the oracle at {m:?}")
            }),
            Err(e) => t.fail(|| format!("{family:?}: {e}")),
        }
    }
    for depth in SYMBOLIC_DEPTHS {
        match l1_discontinuity_witness(depth) {
            Ok(w) => t.require(
                w.certifies_not_continuous && w.approximants == [ChainElement::Bot],
                || format!("depth {depth}: {w:?}"),
            ),
            Err(e) => t.fail(|| format!("depth {depth}: {e}")),
        }
    }
    t
}

/// The corrupted bracket must make the representation, way-below and
/// morphism-bijection checks fail.
fn mutation(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    let targets = ["representation", "way-below", "morphism-bijection"];
    for (mutation, informational) in [
        (BracketMutation::SkipKernel, false),
        (BracketMutation::Raw, true),
        (BracketMutation::DropMax, true),
    ] {
        let mcfg = SuiteConfig {
            mutation,
            ..cfg.clone()
        };
        for name in targets {
            t.instances += 1;
            let o = run_check(&mcfg, name);
            t.details.push(format!(
                "{mutation:?}{}: {name} {}",
                if informational { " [info]" } else { "" },
                if o.passed { "still passes" } else { "fails" }
            ));
            if !informational && o.passed {
                t.fail(|| format!("{name} passes with the {mutation:?} bracket"));
            }
        }
    }
    t
}
