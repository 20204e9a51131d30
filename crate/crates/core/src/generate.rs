//! Seeded random instances: contexts, valid ACF contexts, selections and
//! posets. Equal seeds give equal instances on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::kernel::{
    build_acf, check_kernel_axioms, induced_acf, AcfContext, KernelOperator, Selection,
};
use crate::order::FinitePoset;
use crate::sets::{AttrSet, MAX_ATTRIBUTES};

/// Exact dimensions and incidence density of a random context.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContextShape {
    pub objects: usize,
    pub attributes: usize,
    /// Probability of each cell, clamped to `[0, 1]`.
    pub density: f64,
}

/// Upper bounds for generated instances; actual sizes are drawn below them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_objects: usize,
    pub max_attributes: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_objects: 6,
            max_attributes: 6,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` seeds for independent instances, drawn from `seed` on `stream`.
pub fn derive_seeds(seed: u64, stream: u64, count: usize) -> Vec<u64> {
    let mut r = rng(seed);
    r.set_stream(stream);
    (0..count).map(|_| r.gen()).collect()
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn context_from(r: &mut ChaCha8Rng, shape: ContextShape) -> Result<FormalContext> {
    if shape.attributes > MAX_ATTRIBUTES {
        return Err(Error::SizeLimit {
            what: "attributes",
            limit: MAX_ATTRIBUTES,
            actual: shape.attributes,
        });
    }
    let p = shape.density.clamp(0.0, 1.0);
    let rows = (0..shape.objects)
        .map(|_| (0..shape.attributes).filter(|_| r.gen_bool(p)).collect())
        .collect();
    FormalContext::from_rows(
        labels("o", shape.objects),
        labels("m", shape.attributes),
        rows,
    )
}

/// Objects `o1..`, attributes `m1..`, each cell set with probability `density`.
pub fn random_context(seed: u64, shape: ContextShape) -> Result<FormalContext> {
    context_from(&mut rng(seed), shape)
}

/// Size drawn from the bounds (at least one attribute, possibly no objects)
/// and density from `[0.2, 0.8]`.
pub fn random_bounded_context(seed: u64, bounds: Bounds) -> Result<FormalContext> {
    let mut r = rng(seed);
    let shape = random_shape(&mut r, bounds);
    context_from(&mut r, shape)
}

fn random_shape(r: &mut ChaCha8Rng, bounds: Bounds) -> ContextShape {
    ContextShape {
        objects: r.gen_range(0..=bounds.max_objects),
        attributes: r.gen_range(1..=bounds.max_attributes.max(1)),
        density: r.gen_range(0.2..0.8),
    }
}

fn random_nonempty(r: &mut ChaCha8Rng, n: usize) -> AttrSet {
    loop {
        let s: AttrSet = (0..n).filter(|_| r.gen_bool(0.4)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

fn dedup_sorted(mut v: Vec<AttrSet>) -> Vec<AttrSet> {
    v.sort();
    v.dedup();
    v
}

/// Up to `max_members` random nonempty attribute sets.
pub fn random_selection(
    r: &mut ChaCha8Rng,
    ctx: &FormalContext,
    max_members: usize,
) -> Result<Selection> {
    let n = ctx.num_attributes();
    if n == 0 {
        return Err(Error::EmptyAttributes);
    }
    let k = r.gen_range(1..=max_members.max(1));
    Selection::new(dedup_sorted(
        (0..k).map(|_| random_nonempty(r, n)).collect(),
    ))
}

/// A selection containing the closure of each of its members, so that the
/// FC condition holds whenever no closure is empty.
pub fn random_fc_selection(
    r: &mut ChaCha8Rng,
    ctx: &FormalContext,
    max_members: usize,
) -> Result<Selection> {
    let n = ctx.num_attributes();
    if n == 0 {
        return Err(Error::EmptyAttributes);
    }
    let k = r.gen_range(1..=max_members.max(1));
    let mut members = Vec::with_capacity(2 * k);
    for _ in 0..k {
        let f = random_nonempty(r, n);
        members.push(f);
        members.push(ctx.attr_closure(f)?);
    }
    Selection::new(dedup_sorted(members))
}

/// Generator settings for [`random_valid_acf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AcfGenConfig {
    pub bounds: Bounds,
    pub max_attempts: usize,
    pub max_members: usize,
    /// Return `induced_acf` of the last context instead of giving up.
    pub fallback: bool,
}

impl Default for AcfGenConfig {
    fn default() -> Self {
        AcfGenConfig {
            bounds: Bounds::default(),
            max_attempts: 64,
            max_members: 6,
            fallback: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedAcf {
    pub acf: AcfContext,
    /// Candidates rejected before this one.
    pub rejections: usize,
    pub fell_back: bool,
}

/// `C ↦ C ∩ U`, tabulated on the closed sets.
fn intersection_kernel(ctx: &FormalContext, u: AttrSet) -> KernelOperator {
    KernelOperator::table(
        ctx.closed_sets()
            .into_iter()
            .map(|c| (c, c.intersection(u))),
    )
}

/// Rejection sampling: a kernel `C ↦ C ∩ U` (or the identity) is drawn until
/// it satisfies the axioms, then a selection until CA1 holds. Half of the
/// selections are closed under brackets up front, the rest are raw.
pub fn random_valid_acf(seed: u64, cfg: AcfGenConfig) -> Result<GeneratedAcf> {
    let mut r = rng(seed);
    let mut rejections = 0;
    let mut last = None;
    for _ in 0..cfg.max_attempts {
        let shape = random_shape(&mut r, cfg.bounds);
        let ctx = context_from(&mut r, shape)?;
        let n = ctx.num_attributes();
        let kernel = if r.gen_bool(0.3) {
            KernelOperator::Identity
        } else {
            intersection_kernel(&ctx, random_nonempty(&mut r, n))
        };
        if !check_kernel_axioms(&ctx, &kernel)?.passed() {
            rejections += 1;
            last = Some(ctx);
            continue;
        }
        let mut members: Vec<AttrSet> = random_selection(&mut r, &ctx, cfg.max_members)?
            .members()
            .to_vec();
        if r.gen_bool(0.5) {
            let brackets = members
                .iter()
                .map(|&f| kernel.apply(ctx.closure(f)))
                .collect::<Result<Vec<_>>>()?;
            members.extend(brackets.into_iter().filter(|b| !b.is_empty()));
        }
        let sel = Selection::new(dedup_sorted(members))?;
        match build_acf(ctx.clone(), kernel, sel) {
            Ok(acf) => {
                return Ok(GeneratedAcf {
                    acf,
                    rejections,
                    fell_back: false,
                })
            }
            Err(Error::Ca1(_)) | Err(Error::KernelAxioms(_)) => {
                rejections += 1;
                last = Some(ctx);
            }
            Err(e) => return Err(e),
        }
    }
    match last {
        Some(ctx) if cfg.fallback => Ok(GeneratedAcf {
            acf: induced_acf(ctx)?,
            rejections,
            fell_back: true,
        }),
        _ => Err(Error::GaveUp(cfg.max_attempts)),
    }
}

/// `n` elements `x0..`; each pair `i < j` is a cover candidate with
/// probability `p`, then closed transitively. Labels are shuffled positions,
/// so the index order is a linear extension.
pub fn random_poset(seed: u64, n: usize, p: f64) -> Result<FinitePoset> {
    let mut r = rng(seed);
    let p = p.clamp(0.0, 1.0);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    FinitePoset::from_pairs(labels, &pairs, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_ca1, check_fc};

    #[test]
    fn contexts_are_reproducible() {
        let shape = ContextShape {
            objects: 3,
            attributes: 3,
            density: 0.5,
        };
        assert_eq!(
            random_context(1, shape).unwrap(),
            random_context(1, shape).unwrap()
        );
        assert_ne!(
            (0..8)
                .map(|s| random_context(s, shape).unwrap())
                .collect::<Vec<_>>(),
            vec![random_context(0, shape).unwrap(); 8]
        );
    }

    #[test]
    fn density_extremes() {
        let mut shape = ContextShape {
            objects: 4,
            attributes: 5,
            density: 0.0,
        };
        let c = random_context(7, shape).unwrap();
        assert!(c.rows().iter().all(|r| r.is_empty()));
        shape.density = 1.0;
        let c = random_context(7, shape).unwrap();
        assert!(c.rows().iter().all(|&r| r == c.all_attributes()));
    }

    #[test]
    fn generated_acfs_rebuild() {
        let mut fell_back = 0;
        let mut rejected = 0;
        for seed in 0..100 {
            let g = random_valid_acf(seed, AcfGenConfig::default()).unwrap();
            let a = &g.acf;
            let again = build_acf(
                a.context().clone(),
                a.kernel().clone(),
                a.selection().clone(),
            )
            .unwrap();
            assert_eq!(&again, a);
            fell_back += g.fell_back as usize;
            rejected += g.rejections;
            let g2 = random_valid_acf(seed, AcfGenConfig::default()).unwrap();
            assert_eq!(g2.acf, g.acf);
            assert_eq!(g2.rejections, g.rejections);
        }
        assert!(fell_back < 10, "{fell_back}");
        assert!(rejected > 0);
    }

    #[test]
    fn gives_up_without_fallback() {
        let cfg = AcfGenConfig {
            max_attempts: 0,
            fallback: false,
            ..AcfGenConfig::default()
        };
        assert!(matches!(random_valid_acf(3, cfg), Err(Error::GaveUp(0))));
    }

    #[test]
    fn fc_selections_pass_fc_and_ca1() {
        for seed in 0..200 {
            let mut r = rng(seed);
            let ctx = random_bounded_context(seed, Bounds::default()).unwrap();
            let sel = random_fc_selection(&mut r, &ctx, 4).unwrap();
            if check_fc(&ctx, &sel) {
                assert!(
                    check_ca1(&ctx, &KernelOperator::Identity, &sel)
                        .unwrap()
                        .passed
                );
            }
        }
    }

    #[test]
    fn posets_are_reproducible() {
        let a = random_poset(5, 6, 0.4).unwrap();
        assert_eq!(a, random_poset(5, 6, 0.4).unwrap());
        assert_eq!(a.len(), 6);
    }
}
