//! Properties of the exact simulation itself.

use proptest::prelude::*;
use spin_squeeze::chain::{rng_for, unit_draw};
use spin_squeeze::oracle::{
    central_difference, default_fd_step, evolve_general, evolve_ising, fd_derivative, moments,
    prepare_polarized,
};
use spin_squeeze::short_time::{aggregate, ising_to_pairset, noise_derivative, PairCouplingSet, PairTerm};
use spin_squeeze::verify::{random_orientation, random_pair_set};
use spin_squeeze::{CouplingChain, Orientation};

fn chain_strategy(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CouplingChain> {
    prop::collection::vec(-2.0f64..2.0, n).prop_map(|c| CouplingChain::new(c).unwrap())
}

fn angles() -> impl Strategy<Value = Orientation> {
    (0.0f64..6.3, 0.0f64..3.2, 0.0f64..6.3).prop_map(|(a, b, g)| Orientation::new(a, b, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ising_evolution_conserves_x(chain in chain_strategy(2..=9), o in angles(), t in -4.0f64..4.0) {
        let s = prepare_polarized(chain.n(), &o).unwrap();
        let before = moments(&s);
        let after_state = evolve_ising(&s, &chain, t).unwrap();
        let after = moments(&after_state);
        prop_assert!((after_state.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((after.first[0] - before.first[0]).abs() < 1e-12);
        prop_assert!((after.second[0][0] - before.second[0][0]).abs() < 1e-12);
    }

    #[test]
    fn second_moments_are_positive(chain in chain_strategy(2..=7), o in angles(), t in 0.0f64..6.0) {
        let s = evolve_ising(&prepare_polarized(chain.n(), &o).unwrap(), &chain, t).unwrap();
        let m = moments(&s);
        let n = chain.n() as f64;
        let total: f64 = (0..3).map(|a| m.second[a][a]).sum();
        prop_assert!(total <= n / 2.0 * (n / 2.0 + 1.0) + 1e-10);
        // every direction has non-negative second moment
        for k in 0..50 {
            let (th, ph) = (0.063 * k as f64, 0.41 * k as f64);
            let e = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
            let q: f64 = (0..3).flat_map(|a| (0..3).map(move |b| (a, b)))
                .map(|(a, b)| e[a] * m.second[a][b] * e[b]).sum();
            prop_assert!(q >= -1e-10);
        }
    }

    #[test]
    fn evolution_paths_agree(chain in chain_strategy(2..=8), o in angles(), t in -3.0f64..3.0) {
        let s = prepare_polarized(chain.n(), &o).unwrap();
        let a = evolve_ising(&s, &chain, t).unwrap();
        let b = evolve_general(&s, &ising_to_pairset(&chain), t).unwrap();
        prop_assert!(a.distance(&b) < 1e-11);
    }
}

#[test]
fn general_evolution_is_unitary_and_reversible() {
    let mut rng = rng_for(99, 0);
    for n in [3, 5, 8, 10] {
        let ps = random_pair_set(n, n + 2, &mut rng).unwrap();
        let s = prepare_polarized(n, &random_orientation(&mut rng)).unwrap();
        let t = 0.5 + unit_draw(&mut rng);
        let there = evolve_general(&s, &ps, t).unwrap();
        assert!((there.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(evolve_general(&there, &ps, -t).unwrap().distance(&s) < 1e-11);
    }
}

#[test]
fn mean_spin_length_is_stationary_at_start() {
    let mut rng = rng_for(7, 0);
    for _ in 0..10 {
        let ps = random_pair_set(5, 8, &mut rng).unwrap();
        let o = random_orientation(&mut rng);
        let h = default_fd_step(&ps);
        let length2 = |t: f64| {
            let s = evolve_general(&prepare_polarized(5, &o).unwrap(), &ps, t).unwrap();
            moments(&s).first.iter().map(|x| x * x).sum::<f64>()
        };
        let d = (length2(h) - length2(-h)) / (2.0 * h);
        // relative to the scale |⟨J⟩|² · ‖H‖ of a generic first derivative
        let scale = 6.25 * ps.norm_bound();
        assert!(d.abs() <= 1e-6 * scale, "{d} vs {scale}");
    }
}

#[test]
fn central_difference_is_second_order() {
    let mut rng = rng_for(3, 0);
    let ps = random_pair_set(4, 6, &mut rng).unwrap();
    let o = random_orientation(&mut rng);
    let exact = noise_derivative(&aggregate(&ps), &o);
    let h0 = 0.2 / ps.norm_bound();
    let errors: Vec<f64> = (0..4)
        .map(|k| (central_difference(&ps, &o, h0 / 2f64.powi(k)).unwrap() - exact).abs())
        .collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 1.9, "{errors:?}");
    }
    let extrapolated = fd_derivative(&ps, &o, default_fd_step(&ps)).unwrap();
    assert!((extrapolated - exact).abs() <= (1e-6 * exact.abs()).max(1e-8));
}

#[test]
fn pair_set_with_both_orders_of_a_pair() {
    let m = [[0.2, 0.5, 0.0], [0.0, -0.3, 0.1], [0.4, 0.0, 0.6]];
    let mt = [[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]];
    // (k, l, m) and (l, k, mᵀ) are the same operator
    let a = PairCouplingSet::new(3, vec![PairTerm { k: 1, l: 3, m }, PairTerm { k: 2, l: 3, m }]).unwrap();
    let b = PairCouplingSet::new(3, vec![PairTerm { k: 3, l: 1, m: mt }, PairTerm { k: 2, l: 3, m }]).unwrap();
    let s = prepare_polarized(3, &Orientation::new(0.3, 1.2, -0.7)).unwrap();
    let (x, y) = (evolve_general(&s, &a, 1.4).unwrap(), evolve_general(&s, &b, 1.4).unwrap());
    assert!(x.distance(&y) < 1e-12);
}
