use proptest::prelude::*;

use acf_core::concepts::{is_continuous_concept, is_continuous_concept_exhaustive};
use acf_core::context::FormalContext;
use acf_core::generate::{random_poset, random_valid_acf, AcfGenConfig};
use acf_core::io::cxt::{read_cxt, write_cxt, CxtFile};
use acf_core::io::json::{acf_from_json, acf_to_json, poset_from_json, poset_to_json};
use acf_core::kernel::{check_ca1, check_ca1_exhaustive, AcfContext};
use acf_core::order::{enumerate_monotone_maps, find_isomorphism, FinitePoset, WayBelowMode};
use acf_core::subclasses::{check_pointed, check_topped};
use acf_core::{AttrSet, ObjSet};

fn context() -> impl Strategy<Value = FormalContext> {
    (0usize..6, 1usize..7).prop_flat_map(|(n_obj, n_att)| {
        prop::collection::vec(0u64..(1u64 << n_att), n_obj).prop_map(move |rows| {
            FormalContext::from_rows(
                (0..n_obj).map(|i| format!("o{i}")).collect(),
                (0..n_att).map(|i| format!("m{i}")).collect(),
                rows.into_iter().map(AttrSet::from_bits).collect(),
            )
            .unwrap()
        })
    })
}

fn context_and_sets() -> impl Strategy<Value = (FormalContext, AttrSet, AttrSet)> {
    context().prop_flat_map(|c| {
        let full = c.all_attributes().bits();
        (Just(c), 0..=full, 0..=full).prop_map(move |(c, a, b)| {
            (
                c,
                AttrSet::from_bits(a & full),
                AttrSet::from_bits(b & full),
            )
        })
    })
}

fn acf() -> impl Strategy<Value = AcfContext> {
    any::<u64>().prop_map(|seed| random_valid_acf(seed, AcfGenConfig::default()).unwrap().acf)
}

/// Brute force: `B` is closed iff every object row containing `B` is only
/// missing attributes that some such row also lacks.
fn closed_by_definition(c: &FormalContext, b: AttrSet) -> bool {
    let rows: Vec<AttrSet> = c
        .rows()
        .iter()
        .copied()
        .filter(|r| b.is_subset(*r))
        .collect();
    (0..c.num_attributes())
        .filter(|&m| !b.contains(m))
        .all(|m| rows.iter().any(|r| !r.contains(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn galois_connection((c, b, b2) in context_and_sets()) {
        let ext = c.extent(b).unwrap();
        let cl = c.attr_closure(b).unwrap();
        prop_assert!(b.is_subset(cl));
        prop_assert_eq!(c.attr_closure(cl).unwrap(), cl);
        prop_assert_eq!(c.extent(cl).unwrap(), ext.clone());
        if b2.is_subset(b) {
            prop_assert!(c.attr_closure(b2).unwrap().is_subset(cl));
            let e2: ObjSet = c.extent(b2).unwrap();
            prop_assert!(ext.iter().all(|o| e2.contains(o)));
        }
    }

    #[test]
    fn enumeration_matches_definition(c in context()) {
        let expected: Vec<AttrSet> = c.all_attributes().subsets().filter(|&b| closed_by_definition(&c, b)).collect();
        let mut expected = expected;
        expected.sort();
        prop_assert_eq!(c.enumerate_formal_concepts().unwrap(), expected.clone());
        let mut by_closure = c.enumerate_formal_concepts_by_closure();
        by_closure.sort();
        prop_assert_eq!(by_closure, expected);
    }

    #[test]
    fn shortlex_order(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (AttrSet::from_bits(a), AttrSet::from_bits(b));
        let key = |s: AttrSet| (s.len(), s.to_vec());
        prop_assert_eq!(x.cmp(&y), key(x).cmp(&key(y)));
    }

    #[test]
    fn bracket_inclusion_law(a in acf(), b in any::<u64>(), b1 in any::<u64>()) {
        let full = a.context().all_attributes().bits();
        let (b, b1) = (AttrSet::from_bits(b & full), AttrSet::from_bits(b1 & full));
        let br = a.bracket(b).unwrap();
        let sub = AttrSet::from_bits(b1.bits() & br.bits());
        prop_assert!(a.bracket(sub).unwrap().is_subset(br));
        prop_assert_eq!(a.bracket(br).unwrap(), br);
    }

    #[test]
    fn brackets_of_members_are_nonempty_and_directed(a in acf()) {
        let sel = a.selection().members();
        let br = a.brackets();
        for f in 0..sel.len() {
            prop_assert!(!br[f].is_empty());
            let inner: Vec<AttrSet> = (0..sel.len()).filter(|&g| sel[g].is_subset(br[f])).map(|g| br[g]).collect();
            let union = inner.iter().fold(AttrSet::EMPTY, |u, x| u.union(*x));
            prop_assert_eq!(union, br[f]);
            for x in &inner {
                for y in &inner {
                    prop_assert!(inner.iter().any(|z| x.is_subset(*z) && y.is_subset(*z)));
                }
            }
        }
    }

    #[test]
    fn ca1_fast_matches_exhaustive(a in acf()) {
        let fast = check_ca1(a.context(), a.kernel(), a.selection()).unwrap();
        let slow = check_ca1_exhaustive(a.context(), a.kernel(), a.selection()).unwrap();
        prop_assert!(fast.passed);
        prop_assert_eq!(fast.passed, slow.passed);
    }

    #[test]
    fn continuous_concepts_fast_matches_exhaustive(a in acf()) {
        for q in a.context().all_attributes().subsets() {
            prop_assert_eq!(
                is_continuous_concept(&a, q).unwrap(),
                is_continuous_concept_exhaustive(&a, q).unwrap(),
                "Q = {}", q
            );
        }
    }

    #[test]
    fn pointed_and_topped_match_the_poset(a in acf()) {
        let p = a.poset().to_finite_poset();
        prop_assert_eq!(check_pointed(&a).holds, p.least().is_some());
        prop_assert_eq!(check_topped(&a).holds, p.greatest().is_some());
    }

    #[test]
    fn acf_json_round_trip(a in acf()) {
        let text = acf_to_json(&a);
        prop_assert_eq!(acf_from_json(&text).unwrap(), a);
    }

    #[test]
    fn cxt_round_trip(c in context(), name in prop::option::of("[a-z ]{0,8}")) {
        let file = CxtFile { name, context: c };
        let text = write_cxt(&file);
        let back = read_cxt(&text).unwrap();
        prop_assert_eq!(back.context, file.context);
    }

    #[test]
    fn poset_json_round_trip(seed in any::<u64>(), n in 1usize..8) {
        let p = random_poset(seed, n, 0.4).unwrap();
        prop_assert_eq!(poset_from_json(&poset_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn finite_way_below_is_order(seed in any::<u64>(), n in 1usize..8) {
        let p = random_poset(seed, n, 0.4).unwrap();
        prop_assert_eq!(
            p.way_below_sets(WayBelowMode::Literal).unwrap(),
            p.way_below_sets(WayBelowMode::Shortcut).unwrap()
        );
    }

    #[test]
    fn isomorphism_survives_relabelling(seed in any::<u64>(), n in 1usize..7, rot in 0usize..7) {
        let p = random_poset(seed, n, 0.4).unwrap();
        let k = rot % n;
        let perm: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p.leq(i, j))
            .map(|(i, j)| (perm[i], perm[j]))
            .collect();
        let q = FinitePoset::from_pairs(p.labels().to_vec(), &pairs, false).unwrap();
        prop_assert_eq!(p.canonical_form(), q.canonical_form());
        let iso = find_isomorphism(&p, &q).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(p.leq(i, j), q.leq(iso.apply(i), iso.apply(j)));
            }
        }
    }

    #[test]
    fn monotone_maps_match_brute_force(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let p = random_poset(s1, n, 0.5).unwrap();
        let q = random_poset(s2, m, 0.5).unwrap();
        let mut count = 0;
        for code in 0..m.pow(n as u32) {
            let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
            if (0..n).all(|i| (0..n).all(|j| !p.leq(i, j) || q.leq(f[i], f[j]))) {
                count += 1;
            }
        }
        prop_assert_eq!(enumerate_monotone_maps(&p, &q, 1_000_000).unwrap().len(), count);
    }
}

/// The shortcut CA1 check against the literal one on raw random selections,
/// most of which fail.
#[test]
fn ca1_shortcut_on_1000_random_instances() {
    use acf_core::generate::{random_bounded_context, random_selection, rng, Bounds};
    use acf_core::kernel::{check_kernel_axioms, KernelOperator};
    use rand::Rng;

    let (mut checked, mut failing) = (0, 0);
    let mut seed = 0u64;
    while checked < 1000 {
        seed += 1;
        let c = random_bounded_context(seed, Bounds::default()).unwrap();
        let mut r = rng(seed);
        let kernel = if r.gen_bool(0.3) {
            KernelOperator::Identity
        } else {
            let u = AttrSet::from_bits(r.gen::<u64>() & c.all_attributes().bits());
            KernelOperator::table(
                c.enumerate_formal_concepts()
                    .unwrap()
                    .into_iter()
                    .map(|k| (k, k.intersection(u))),
            )
        };
        if !check_kernel_axioms(&c, &kernel).unwrap().passed() {
            continue;
        }
        let sel = random_selection(&mut r, &c, 6).unwrap();
        let fast = check_ca1(&c, &kernel, &sel).unwrap();
        let slow = check_ca1_exhaustive(&c, &kernel, &sel).unwrap();
        assert_eq!(fast.passed, slow.passed, "seed {seed}");
        checked += 1;
        failing += !fast.passed as usize;
    }
    assert!(failing > 100 && failing < 900, "{failing}");
}
