mod common;

use common::{monotone_on, random_graph, rng, tau_count};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use zzprop::structures::{histogram, r_ball, sampling_distance, sampling_distance_r, Ball, Structure, TypeRegistry};
use zzprop::Graph;

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut h = Graph::new(g.n());
    for (u, v) in g.edges() {
        h.add_edge(perm[u], perm[v]);
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn histogram_counts_every_element(seed in any::<u64>(), r in 0usize..3) {
        let mut rg = rng(seed);
        let g = random_graph(rg.gen_range(1..=12), 0.3, 3, &mut rg);
        let mut reg = TypeRegistry::new(r);
        let h = histogram(&Structure::from_graph(&g), &mut reg).unwrap();
        prop_assert_eq!(h.iter().sum::<usize>(), g.n());
        prop_assert_eq!(h.len(), reg.len());
    }

    #[test]
    fn types_survive_relabelling(seed in any::<u64>()) {
        let mut rg = rng(seed);
        let g = random_graph(rg.gen_range(1..=10), 0.3, 3, &mut rg);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rg);
        let h = relabel(&g, &perm);
        let v = rg.gen_range(0..g.n());
        let tau = common::ball(&g, v, 1);
        prop_assert_eq!(tau_count(&g, &tau), tau_count(&h, &tau));
        prop_assert_eq!(sampling_distance_r(&Structure::from_graph(&g), &Structure::from_graph(&h), &mut TypeRegistry::new(2)).unwrap(), 0.0);
    }

    #[test]
    fn sampling_distance_is_a_bounded_symmetric_sum(seed in any::<u64>()) {
        let mut rg = rng(seed);
        let a = Structure::from_graph(&random_graph(rg.gen_range(1..=9), 0.3, 3, &mut rg));
        let b = Structure::from_graph(&random_graph(rg.gen_range(1..=9), 0.3, 3, &mut rg));
        let ab = sampling_distance(&a, &b, 3).unwrap();
        let ba = sampling_distance(&b, &a, 3).unwrap();
        prop_assert!((ab.value - ba.value).abs() < 1e-12);
        prop_assert!(ab.terms.iter().all(|t| (0.0..=1.0 + 1e-12).contains(t)));
        prop_assert!(ab.terms.windows(2).all(|w| w[0] <= w[1] + 1e-12));
        prop_assert_eq!(sampling_distance(&a, &a, 3).unwrap().value, 0.0);
        let shorter = sampling_distance(&a, &b, 2).unwrap();
        prop_assert!(shorter.value <= ab.value + 1e-12);
    }

    #[test]
    fn zero_profiles_are_monotone(seed in any::<u64>()) {
        let mut rg = rng(seed);
        let a = random_graph(rg.gen_range(1..=8), 0.4, 3, &mut rg);
        let c = random_graph(rg.gen_range(1..=8), 0.4, 3, &mut rg);
        prop_assert!(monotone_on(&a, &c, &mut rg));
    }

    #[test]
    fn structure_text_round_trip(seed in any::<u64>()) {
        let mut rg = rng(seed);
        let s = Structure::from_graph(&random_graph(rg.gen_range(0..=9), 0.3, 4, &mut rg));
        prop_assert_eq!(Structure::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn ball_text_round_trip(seed in any::<u64>(), r in 0usize..3) {
        let mut rg = rng(seed);
        let g = random_graph(rg.gen_range(1..=9), 0.3, 3, &mut rg);
        let s = Structure::from_graph(&g);
        let b = r_ball(&s, rg.gen_range(0..g.n()), r);
        let back = Ball::parse(&b.to_text()).unwrap();
        prop_assert_eq!(back.radius(), b.radius());
        prop_assert!(zzprop::structures::ball_isomorphic(&back, &b).unwrap());
    }
}

#[test]
fn cycle_distances() {
    // C6 and two triangles agree on 0-types; their 1-balls are a wedge and a triangle
    let c6 = Structure::from_graph(&Graph::cycle(6));
    let tt = Structure::from_graph(&Graph::cycle(3).disjoint_union(&Graph::cycle(3)));
    let sd = sampling_distance(&c6, &tt, 2).unwrap();
    assert_eq!(sd.terms[0], 0.0);
    assert_eq!(sd.terms[1], 1.0);
    // cycles longer than 2r+1 all have a path as r-ball
    let c9 = Structure::from_graph(&Graph::cycle(9));
    let c10 = Structure::from_graph(&Graph::cycle(10));
    assert_eq!(sampling_distance(&c9, &c10, 3).unwrap().value, 0.0);
    assert!(sampling_distance(&c9, &c10, 4).unwrap().value > 0.0);
}
