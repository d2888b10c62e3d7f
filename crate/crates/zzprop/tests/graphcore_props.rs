mod common;

use common::rng;
use proptest::prelude::*;
use zzprop::graphcore::{
    cheeger_check, connectivity_flags, spectral_cross_check, spectrum, square, validate_rotmap, zigzag, RotMapGraph,
};

fn random_rotmap(seed: u64, max_n: usize, max_d: usize) -> RotMapGraph {
    use rand::Rng;
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let d = r.gen_range(1..=max_d);
    RotMapGraph::random(n, d, 0.15, &mut r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_is_valid_with_squared_lambda(seed in any::<u64>()) {
        let g = random_rotmap(seed, 16, 4);
        let sq = square(&g).unwrap();
        prop_assert!(validate_rotmap(&sq).is_ok());
        prop_assert_eq!((sq.n(), sq.degree()), (g.n(), g.degree() * g.degree()));
        let l = spectrum(&g).unwrap().lambda;
        prop_assert!((spectrum(&sq).unwrap().lambda - l * l).abs() <= 1e-8);
    }

    #[test]
    fn zigzag_sizes_and_bound(seed in any::<u64>(), d2 in 1usize..=4) {
        let g1 = random_rotmap(seed, 12, 4);
        let g2 = RotMapGraph::random(g1.degree(), d2, 0.15, &mut rng(seed ^ 0x5a5a));
        let z = zigzag(&g1, &g2).unwrap();
        prop_assert!(validate_rotmap(&z).is_ok());
        prop_assert_eq!((z.n(), z.degree()), (g1.n() * g1.degree(), d2 * d2));
        let (l1, l2) = (spectrum(&g1).unwrap().lambda, spectrum(&g2).unwrap().lambda);
        if l1 < 1.0 && l2 < 1.0 {
            prop_assert!(spectrum(&z).unwrap().lambda <= l1 + l2 + 1e-8);
        }
    }

    #[test]
    fn cheeger_holds(seed in any::<u64>()) {
        let g = random_rotmap(seed, 14, 4);
        prop_assert!(cheeger_check(&g).unwrap().satisfied);
    }

    #[test]
    fn lambda_below_one_iff_connected_non_bipartite(seed in any::<u64>()) {
        let g = random_rotmap(seed, 16, 3);
        prop_assert!(spectral_cross_check(&g, 1e-9).unwrap());
        let f = connectivity_flags(&g);
        let l = spectrum(&g).unwrap().lambda;
        if g.n() > 1 {
            prop_assert_eq!(l < 1.0 - 1e-9, f.connected && !f.bipartite);
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let g = random_rotmap(seed, 10, 4);
        prop_assert_eq!(RotMapGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn eigenvalues_sorted_and_bounded(seed in any::<u64>()) {
        let g = random_rotmap(seed, 16, 4);
        let s = spectrum(&g).unwrap();
        prop_assert_eq!(s.eigenvalues.len(), g.n());
        prop_assert!((s.eigenvalues[0] - 1.0).abs() <= 1e-9);
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1] - 1e-12));
        prop_assert!(s.eigenvalues.iter().all(|e| e.abs() <= 1.0 + 1e-9));
    }
}

#[test]
fn cycle_spectrum_matches_cosines() {
    // eigenvalues of the n-cycle are cos(2πj/n)
    for n in 3..=12 {
        let s = spectrum(&RotMapGraph::cycle(n)).unwrap();
        let mut want: Vec<f64> = (0..n).map(|j| (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos()).collect();
        want.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (a, b) in s.eigenvalues.iter().zip(&want) {
            assert!((a - b).abs() < 1e-9, "n = {n}");
        }
    }
}
