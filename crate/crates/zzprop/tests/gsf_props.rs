mod common;

use common::{
    embed_matches_oracle, example_f, example_family, example_g, non_propagation, random_graph, random_marked,
    realisation_sound, rng, union_sound,
};
use proptest::prelude::*;
use rand::Rng;
use zzprop::gsf::{
    covers, deg2_augment, enumerate_types, k_realisations, small_graphs, union_family, Deg2Member, MarkedFamily,
    MarkedGraph,
};
use zzprop::Graph;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_search_matches_injections(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(r.gen_range(1..=7), 0.4, 7, &mut r);
        let f = random_marked(r.gen_range(1..=4), &mut r);
        prop_assert!(embed_matches_oracle(&f, &g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn marked_text_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_marked(r.gen_range(1..=5), &mut r);
        let back = MarkedGraph::parse(&f.to_text()).unwrap();
        prop_assert_eq!(back.canonical_code(), f.canonical_code());
        let fam: MarkedFamily = [f, random_marked(3, &mut r)].into_iter().collect();
        let again = MarkedFamily::parse(&fam.to_text()).unwrap();
        prop_assert_eq!(again.len(), fam.len());
    }

    #[test]
    fn unions_are_disjunctions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f1 = random_marked(r.gen_range(1..=3), &mut r);
        let f2 = random_marked(r.gen_range(1..=3), &mut r);
        let graphs: Vec<Graph> = small_graphs(5, 4).unwrap().into_iter().flatten().collect();
        prop_assert!(union_sound(&f1, &f2, &graphs));
    }
}

#[test]
fn realisations_count_occurrences() {
    let graphs: Vec<Graph> = small_graphs(7, 2).unwrap().into_iter().flatten().collect();
    let types = enumerate_types(2, 1, 3).unwrap();
    for k in 1..=2 {
        for tau in types.representatives() {
            assert!(realisation_sound(tau, k, &graphs), "k = {k}");
        }
    }
}

#[test]
fn union_freeness_up_to_six_vertices() {
    let graphs: Vec<Graph> = small_graphs(6, 5).unwrap().into_iter().flatten().collect();
    let f = example_f();
    let edge = MarkedGraph::uniform(Graph::path(2), zzprop::gsf::Mark::Partial);
    assert!(union_sound(&f, &edge, &graphs));
    assert!(union_sound(&edge, &edge, &graphs));
    assert!(union_family(&f, &f, 6).is_ok());
}

#[test]
fn realisations_have_k_centres_of_the_type() {
    let tau = zzprop::structures::Ball::from_graph(&Graph::path(3), 1, 1).unwrap();
    let fam = k_realisations(&tau, 2, 2, 9).unwrap();
    assert!(!fam.is_empty());
    for f in fam.members() {
        assert!(f.n() <= 2 * tau.n());
        assert!(common::tau_count(f.graph(), &tau) >= 1);
    }
}

#[test]
fn example_covering_set() {
    let fam: MarkedFamily = [example_f()].into_iter().collect();
    for k in 2..=6 {
        let g = example_g(k);
        assert!(covers(&[0], &fam, &g));
        assert!((1..g.n()).all(|v| !covers(&[v], &fam, &g)));
    }
}

#[test]
fn augmentation_adds_full_edges_only_at_odd_n() {
    let edges = Deg2Member::Components { paths: vec![1], cycles: vec![] };
    for n in 6..=9 {
        let aug = deg2_augment(&example_family(), 3, n).unwrap();
        assert_eq!(aug.added.contains(&edges), n % 2 == 1, "n = {n}");
    }
}

#[test]
fn non_propagation_small_n() {
    for n in 1..=6 {
        assert!(non_propagation(n, 3).is_ok(), "n = {n}");
    }
}
