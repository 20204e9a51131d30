//! Small hand-checked instances, one test per operation.

use acf_core::concepts::{
    decompose, directed_sup, enumerate_concepts, is_compact, is_continuous_concept, way_below,
};
use acf_core::context::{example_c0, FormalContext};
use acf_core::error::Error;
use acf_core::kernel::{
    build_acf, check_ca1, check_fc, check_kernel_axioms, induced_acf, is_f_approximable,
    KernelOperator, Selection,
};
use acf_core::morphisms::{
    apply, compose, from_function, from_scott, identity_morphism, to_function, to_scott, validate,
    ConceptFunction,
};
use acf_core::order::{
    enumerate_monotone_maps, find_isomorphism, EmptySetConvention, FinitePoset, MonotoneMap,
    WayBelowMode,
};
use acf_core::representation::{check_r1_r2, iso_backward, iso_forward, rep};
use acf_core::subclasses::{check_ad, check_bc, check_pointed, check_ss, check_topped};
use acf_core::symbolic::{self, compact_elements, membership, ChainElement, Family, NamedSet};
use acf_core::{AttrSet, ObjSet};

fn s(ix: &[usize]) -> AttrSet {
    AttrSet::from_indices(ix.iter().copied())
}

fn objs(ix: &[usize]) -> ObjSet {
    ObjSet::from_indices(ix.iter().copied())
}

fn single_incident() -> FormalContext {
    FormalContext::from_pairs(vec!["o1".into()], vec!["m1".into()], &[(0, 0)]).unwrap()
}

fn constant_empty_kernel(c: &FormalContext) -> KernelOperator {
    KernelOperator::table(
        c.enumerate_formal_concepts()
            .unwrap()
            .into_iter()
            .map(|k| (k, AttrSet::EMPTY)),
    )
}

#[test]
fn derivations_on_c0() {
    let c = example_c0();
    assert_eq!(c.extent(s(&[1])).unwrap(), objs(&[1, 2]));
    assert_eq!(c.extent(AttrSet::EMPTY).unwrap(), objs(&[0, 1, 2]));
    assert_eq!(c.extent(s(&[0, 2])).unwrap(), objs(&[]));
    assert_eq!(c.intent(&objs(&[1])).unwrap(), s(&[0, 1]));
    assert_eq!(c.intent(&objs(&[])).unwrap(), s(&[0, 1, 2]));
    assert_eq!(c.intent(&objs(&[0, 1, 2])).unwrap(), AttrSet::EMPTY);
    assert_eq!(c.attr_closure(s(&[2])).unwrap(), s(&[1, 2]));
    assert_eq!(c.attr_closure(s(&[0, 1])).unwrap(), s(&[0, 1]));
    assert!(c.is_formal_concept(s(&[1, 2])).unwrap());
    assert!(!c.is_formal_concept(s(&[2])).unwrap());
    assert!(c.is_formal_concept(s(&[0, 1, 2])).unwrap());
}

#[test]
fn formal_concept_listings() {
    let c = example_c0();
    let expected = vec![
        AttrSet::EMPTY,
        s(&[0]),
        s(&[1]),
        s(&[0, 1]),
        s(&[1, 2]),
        s(&[0, 1, 2]),
    ];
    assert_eq!(c.enumerate_formal_concepts().unwrap(), expected);
    assert_eq!(
        single_incident().enumerate_formal_concepts().unwrap(),
        vec![s(&[0])]
    );
    let empty =
        FormalContext::from_pairs(vec!["o1".into()], vec!["m1".into(), "m2".into()], &[]).unwrap();
    assert_eq!(
        empty.enumerate_formal_concepts().unwrap(),
        vec![AttrSet::EMPTY, s(&[0, 1])]
    );
}

#[test]
fn approximable_concepts_on_c0() {
    let c = example_c0();
    assert!(c.is_approximable_concept(s(&[0, 1])).unwrap());
    assert!(!c.is_approximable_concept(s(&[2])).unwrap());
    assert!(c.is_approximable_concept(AttrSet::EMPTY).unwrap());
}

#[test]
fn kernel_axiom_examples() {
    let c = example_c0();
    assert!(check_kernel_axioms(&c, &KernelOperator::Identity)
        .unwrap()
        .passed());
    assert!(check_kernel_axioms(&c, &constant_empty_kernel(&c))
        .unwrap()
        .passed());
    let bad = KernelOperator::table(
        c.enumerate_formal_concepts()
            .unwrap()
            .into_iter()
            .map(|k| (k, if k == s(&[0, 1]) { s(&[2]) } else { k })),
    );
    let report = check_kernel_axioms(&c, &bad).unwrap();
    assert!(!report.a1.passed);
    let ce = report.a1.counterexample.unwrap();
    assert_eq!((ce.0, ce.1), (s(&[0, 1]), s(&[2])));
}

#[test]
fn bracket_examples() {
    let c = example_c0();
    let a = induced_acf(c.clone()).unwrap();
    for b in c.all_attributes().subsets() {
        assert_eq!(a.bracket(b).unwrap(), c.attr_closure(b).unwrap());
    }
    let sel = Selection::new(vec![s(&[0])]).unwrap();
    let report = check_ca1(&c, &constant_empty_kernel(&c), &sel).unwrap();
    assert!(!report.passed);
}

#[test]
fn building_contexts() {
    let c = example_c0();
    let sel = Selection::new(vec![s(&[0]), s(&[2])]).unwrap();
    let a = build_acf(c.clone(), KernelOperator::Identity, sel).unwrap();
    assert_eq!(a.brackets(), &[s(&[0]), s(&[1, 2])]);
    assert_eq!(induced_acf(c).unwrap().selection().len(), 7);
    let none = FormalContext::from_pairs(vec!["o1".into()], vec![], &[]).unwrap();
    assert!(matches!(induced_acf(none), Err(Error::EmptyAttributes)));
    let one = induced_acf(single_incident()).unwrap();
    assert_eq!(one.selection().members(), &[s(&[0])]);
    assert_eq!(one.brackets(), &[s(&[0])]);
}

#[test]
fn fc_and_f_approximability() {
    let c = example_c0();
    let all = Selection::all_nonempty(3).unwrap();
    assert!(check_fc(&c, &all));
    assert!(!check_fc(&c, &Selection::new(vec![s(&[2])]).unwrap()));
    assert!(!is_f_approximable(&c, &all, AttrSet::EMPTY).unwrap());
    assert!(is_f_approximable(&c, &all, s(&[1, 2])).unwrap());
}

#[test]
fn continuous_concepts_of_c0() {
    let a = induced_acf(example_c0()).unwrap();
    assert!(is_continuous_concept(&a, s(&[1, 2])).unwrap());
    assert!(!is_continuous_concept(&a, AttrSet::EMPTY).unwrap());
    assert!(!is_continuous_concept(&a, s(&[0, 2])).unwrap());
    let cp = enumerate_concepts(&a);
    let got: Vec<AttrSet> = cp.concepts().iter().map(|q| q.attrs).collect();
    assert_eq!(
        got,
        vec![s(&[0]), s(&[1]), s(&[0, 1]), s(&[1, 2]), s(&[0, 1, 2])]
    );
    for q in cp.concepts() {
        assert!(is_compact(&a, q).unwrap());
    }
}

#[test]
fn decomposition_and_directed_sups() {
    let a = induced_acf(example_c0()).unwrap();
    let cp = a.poset();
    let q = cp.get(cp.index_of(s(&[0, 1])).unwrap());
    let family = decompose(&a, q).unwrap();
    for part in [s(&[0]), s(&[1]), s(&[0, 1])] {
        assert!(family.contains(&part));
    }
    assert_eq!(
        family.iter().fold(AttrSet::EMPTY, |u, x| u.union(*x)),
        s(&[0, 1])
    );
    let at = |b: AttrSet| cp.get(cp.index_of(b).unwrap()).clone();
    assert_eq!(directed_sup(&a, &[at(s(&[1]))]).unwrap().attrs, s(&[1]));
    assert_eq!(
        directed_sup(&a, &[at(s(&[1])), at(s(&[1, 2]))])
            .unwrap()
            .attrs,
        s(&[1, 2])
    );
    assert!(matches!(
        directed_sup(&a, &[at(s(&[0])), at(s(&[1, 2]))]),
        Err(Error::NotDirected(..))
    ));
}

#[test]
fn two_chain_representation() {
    let d = FinitePoset::chain(2);
    let rc = rep(&d).unwrap();
    let a = rc.acf();
    assert_eq!(a.selection().members(), &[s(&[0]), s(&[1]), s(&[0, 1])]);
    assert_eq!(a.brackets(), &[s(&[0]), s(&[0, 1]), s(&[0, 1])]);
    let cp = a.poset();
    assert_eq!(cp.len(), 2);
    assert!(way_below(a, cp.get(0), cp.get(1)).unwrap());
    assert!(check_r1_r2(&rc, s(&[0, 1])).unwrap());
    assert!(!check_r1_r2(&rc, AttrSet::EMPTY).unwrap());
    assert_eq!(iso_forward(&rc, 1).unwrap().attrs, s(&[0, 1]));
    assert_eq!(iso_forward(&rc, 0).unwrap().attrs, s(&[0]));
    assert_eq!(iso_backward(&rc, cp.get(1)).unwrap(), 1);
}

#[test]
fn antichain_and_diamond_representations() {
    let rc = rep(&FinitePoset::antichain(2)).unwrap();
    assert_eq!(rc.acf().selection().members(), &[s(&[0]), s(&[1])]);
    assert_eq!(rc.acf().poset().len(), 2);
    assert!(!rc.acf().poset().leq(0, 1) && !rc.acf().poset().leq(1, 0));
    assert!(!check_r1_r2(&rc, s(&[0, 1])).unwrap());

    let d = FinitePoset::diamond();
    let rc = rep(&d).unwrap();
    let a_idx = d.index_of("a").unwrap();
    let q = iso_forward(&rc, a_idx).unwrap();
    assert_eq!(q.attrs, s(&[0, a_idx]));
    assert_eq!(iso_backward(&rc, &q).unwrap(), a_idx);

    let one = rep(&FinitePoset::chain(1)).unwrap();
    assert_eq!(one.acf().poset().len(), 1);
}

#[test]
fn finite_order_examples() {
    let chain = FinitePoset::chain(2);
    assert!(chain
        .way_below_bruteforce(0, 1, WayBelowMode::Literal)
        .unwrap());
    let anti = FinitePoset::antichain(2);
    assert!(!anti
        .way_below_bruteforce(0, 1, WayBelowMode::Literal)
        .unwrap());

    let c = chain.domain_classify(EmptySetConvention::Exclude).unwrap();
    assert!(c.is_dcpo && c.is_pointed && c.is_bounded_complete && c.is_semilattice);
    let a = anti.domain_classify(EmptySetConvention::Include).unwrap();
    assert!(a.is_dcpo && !a.is_pointed && !a.is_bounded_complete && !a.is_semilattice);
    let d = FinitePoset::diamond()
        .domain_classify(EmptySetConvention::Exclude)
        .unwrap();
    assert!(d.is_semilattice && d.is_pointed);
    assert!(FinitePoset::diamond().greatest().is_some());
    assert!(FinitePoset::chain(1).interpolation_check().unwrap());
}

#[test]
fn monotone_maps_and_isomorphisms() {
    let chain = FinitePoset::chain(2);
    let anti = FinitePoset::antichain(2);
    assert_eq!(
        enumerate_monotone_maps(&chain, &chain, 100).unwrap().len(),
        3
    );
    assert_eq!(
        enumerate_monotone_maps(&FinitePoset::chain(1), &anti, 100)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(
        enumerate_monotone_maps(&anti, &chain, 100).unwrap().len(),
        4
    );
    assert!(find_isomorphism(&chain, &chain).is_some());
    assert!(find_isomorphism(&chain, &anti).is_none());
    let p = induced_acf(example_c0()).unwrap().poset().to_finite_poset();
    let n = p.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| p.leq(i, j))
        .map(|(i, j)| (n - 1 - i, n - 1 - j))
        .collect();
    let relabelled = FinitePoset::from_pairs(p.labels().to_vec(), &pairs, false).unwrap();
    assert!(find_isomorphism(&p, &relabelled).is_some());
}

#[test]
fn subclass_examples() {
    let c0 = induced_acf(example_c0()).unwrap();
    assert!(check_ad(&c0).holds);
    assert!(!check_pointed(&c0).holds);
    assert!(check_topped(&c0).holds);

    let chain = rep(&FinitePoset::chain(2)).unwrap();
    assert!(check_pointed(chain.acf()).holds);
    assert!(check_bc(chain.acf()).holds);
    let ss = check_ss(chain.acf());
    assert!(ss.ss1.holds && ss.ss2.holds);

    let anti = rep(&FinitePoset::antichain(2)).unwrap();
    assert!(!check_topped(anti.acf()).holds);
    assert!(!check_ss(anti.acf()).ss1.holds);

    let diamond = rep(&FinitePoset::diamond()).unwrap();
    assert!(!check_bc(diamond.acf()).holds);
}

#[test]
fn morphism_examples() {
    let a = induced_acf(example_c0()).unwrap();
    let id = identity_morphism(&a);
    assert!(validate(&id).passed());
    assert_eq!(apply(&id, AttrSet::EMPTY).unwrap(), AttrSet::EMPTY);
    for q in a.poset().concepts() {
        assert_eq!(apply(&id, q.attrs).unwrap(), q.attrs);
    }
    assert_eq!(to_function(&id).unwrap(), ConceptFunction::identity(&a));
    assert_eq!(
        from_function(&ConceptFunction::identity(&a)).rel(),
        id.rel()
    );

    // Constant map to the least concept of a pointed target.
    let t = rep(&FinitePoset::chain(2)).unwrap();
    let ta = t.acf();
    let constant = ConceptFunction::new(&a, ta, vec![0; a.poset().len()]).unwrap();
    let h = from_function(&constant);
    assert!(validate(&h).passed());
    assert_eq!(to_function(&h).unwrap(), constant);

    // Dropping one target from a bracket-closed image breaks AR1.
    let mut rel = id.rel().to_vec();
    let f = a.selection().position(s(&[0, 1])).unwrap();
    rel[f] = rel[f].without(1);
    let broken = acf_core::morphisms::FMorphism::new(&a, &a, rel).unwrap();
    assert!(!validate(&broken).passed());

    let left = compose(&id, &h).unwrap_err();
    assert!(matches!(left, Error::ContextMismatch(_)));
    let tid = identity_morphism(ta);
    assert_eq!(compose(&tid, &h).unwrap().rel(), h.rel());
    assert_eq!(compose(&h, &id).unwrap().rel(), h.rel());
    let three = compose(&tid, &compose(&h, &id).unwrap()).unwrap();
    assert_eq!(
        three.rel(),
        compose(&compose(&tid, &h).unwrap(), &id).unwrap().rel()
    );
}

#[test]
fn scott_examples() {
    let d = FinitePoset::chain(2);
    let rc = rep(&d).unwrap();
    let id = MonotoneMap::identity(&d);
    let g = from_scott(&rc, &rc, &id).unwrap();
    assert_eq!(g.rel(), identity_morphism(rc.acf()).rel());
    assert_eq!(
        to_scott(&rc, &rc, &identity_morphism(rc.acf())).unwrap(),
        id
    );

    let e = FinitePoset::diamond();
    let re = rep(&e).unwrap();
    let bot = MonotoneMap::new(d.clone(), e.clone(), vec![0, 0]).unwrap();
    let g = from_scott(&rc, &re, &bot).unwrap();
    assert!(g.rel().iter().all(|&targets| targets == s(&[0])));
    assert!(validate(&g).passed());
    assert_eq!(to_scott(&rc, &re, &g).unwrap(), bot);
}

#[test]
fn chain_family_examples() {
    use ChainElement::*;
    assert!(symbolic::leq(Family::L1, A(3), Top).unwrap());
    assert!(!symbolic::leq(Family::L1, A(1), B).unwrap());
    assert!(symbolic::leq(Family::L2, Bot, Top1).unwrap());
    assert!(membership(Family::L1, NamedSet::AChainWithBot, A(7)).unwrap());
    assert!(!membership(Family::L1, NamedSet::AChainWithBot, B).unwrap());
    for x in [Bot, A(4), B, Top] {
        assert!(membership(Family::L1, NamedSet::PrincipalDown(Top), x).unwrap());
    }
    assert!(symbolic::way_below(Family::L1, Bot, B).unwrap());
    assert!(!symbolic::way_below(Family::L1, A(1), B).unwrap());

    let l2 = compact_elements(Family::L2, 6).unwrap();
    assert!(!l2.contains(&Top1));
    assert!(l2.contains(&Top) && l2.contains(&B) && l2.contains(&A(6)));
    let l1 = compact_elements(Family::L1, 6).unwrap();
    assert!((1..=6).all(|i| l1.contains(&A(i))));

    for depth in [3, 10] {
        assert!(symbolic::verify_chain_concept(Family::L1, depth)
            .unwrap()
            .passed());
        assert!(symbolic::verify_chain_concept(Family::L2, depth)
            .unwrap()
            .passed());
    }
}
