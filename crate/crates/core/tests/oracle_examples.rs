//! Closed forms checked against the exact state-vector simulation at the
//! individual example points.

use spin_squeeze::analytic::{
    corr_yy, expectations, jxjy_sym, jy_squared, mean_jz, xi_pi4, xi_pi4_general, xi_pi4_n4,
    xi_theta, xi_theta_optimal, QuadratureAngle,
};
use spin_squeeze::chain::{rng_for, unit_draw};
use spin_squeeze::oracle::{
    evolve_ising, moments, prepare_polarized, site_corr_yy, xi_oracle, xi_oracle_at,
    CollectiveMoments, StateVector,
};
use spin_squeeze::{make_uniform, CouplingChain, Orientation};

fn evolved(chain: &CouplingChain, t: f64) -> StateVector {
    let up = prepare_polarized(chain.n(), &Orientation::IDENTITY).unwrap();
    evolve_ising(&up, chain, t).unwrap()
}

fn oracle_moments(chain: &CouplingChain, t: f64) -> CollectiveMoments {
    moments(&evolved(chain, t))
}

fn random_chain(n: usize, seed: u64) -> CouplingChain {
    let mut rng = rng_for(seed, 0);
    CouplingChain::new((0..n).map(|_| 2.0 * unit_draw(&mut rng)).collect()).unwrap()
}

fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
}

#[test]
fn mean_spin_of_random_ring() {
    let c = random_chain(6, 1);
    assert_close(mean_jz(&c, 0.7), oracle_moments(&c, 0.7).first[2], 1e-10);
    let c5 = make_uniform(5, 1.0).unwrap();
    assert_close(mean_jz(&c5, 1.0), oracle_moments(&c5, 1.0).first[2], 1e-10);
}

#[test]
fn distance_two_correlator() {
    let c = make_uniform(6, 1.0).unwrap();
    let s = evolved(&c, 1.0);
    assert_close(corr_yy(&c, 1, 2, 1.0).unwrap(), site_corr_yy(&s, 1, 3), 1e-10);
    // offset N − 2 wraps backwards
    assert_close(corr_yy(&c, 1, 4, 1.0).unwrap(), site_corr_yy(&s, 1, 5), 1e-10);
    let r = random_chain(7, 2);
    let s = evolved(&r, 0.9);
    for i in 1..=7 {
        for k in 0..7 {
            let j = (i - 1 + k) % 7 + 1;
            assert_close(corr_yy(&r, i, k, 0.9).unwrap(), site_corr_yy(&s, i, j), 1e-10);
        }
    }
}

#[test]
fn transverse_second_moment() {
    let c = make_uniform(8, 1.0).unwrap();
    assert_close(jy_squared(&c, 0.9).unwrap(), oracle_moments(&c, 0.9).second[1][1], 1e-10);
    let open = CouplingChain::open(&[0.8, 1.4, 0.3, 1.1]).unwrap();
    assert_eq!(open.couplings()[4], 0.0);
    assert_close(jy_squared(&open, 1.3).unwrap(), oracle_moments(&open, 1.3).second[1][1], 1e-10);
}

#[test]
fn symmetrized_cross_moment() {
    let c = random_chain(7, 3);
    assert_close(jxjy_sym(&c, 0.4), 2.0 * oracle_moments(&c, 0.4).second[0][1], 1e-10);
    // small rings too
    for n in 2..5 {
        let c = random_chain(n, 30 + n as u64);
        assert_close(jxjy_sym(&c, 1.1), 2.0 * oracle_moments(&c, 1.1).second[0][1], 1e-10);
    }
}

#[test]
fn full_expectation_set_for_every_size() {
    for n in 2..=10 {
        let c = random_chain(n, 40 + n as u64);
        for t in [0.3, 1.2, 2.9] {
            let es = expectations(&c, t);
            let m = oracle_moments(&c, t);
            assert_close(es.jz, m.first[2], 1e-10);
            assert_close(es.jx2, m.second[0][0], 1e-10);
            assert_close(es.jy2, m.second[1][1], 1e-10);
            assert_close(es.jxjy_sym, 2.0 * m.second[0][1], 1e-10);
        }
    }
}

#[test]
fn general_ring_values() {
    let c = random_chain(9, 4);
    assert_close(xi_pi4_general(&c, 0.6).unwrap(), xi_oracle_at(&c, 0.6, QuadratureAngle::PI_4).unwrap(), 1e-10);
    let c5 = make_uniform(5, 2.0).unwrap();
    for t in [0.1, 0.45, 0.8] {
        assert_close(xi_pi4(&c5, t).unwrap(), xi_oracle_at(&c5, t, QuadratureAngle::PI_4).unwrap(), 1e-10);
    }
}

#[test]
fn four_spin_value() {
    let c = CouplingChain::new(vec![0.7, 1.3, 0.2, 1.0]).unwrap();
    assert_close(
        xi_pi4_n4([0.7, 1.3, 0.2, 1.0], 0.5),
        xi_oracle_at(&c, 0.5, QuadratureAngle::PI_4).unwrap(),
        1e-10,
    );
}

#[test]
fn quadrature_values() {
    let c = make_uniform(6, 1.0).unwrap();
    let s = evolved(&c, 0.8);
    let es = expectations(&c, 0.8);
    assert_close(xi_theta(&es, QuadratureAngle::PI_4, 6), xi_oracle(&s, QuadratureAngle::PI_4), 1e-10);
    assert_close(xi_theta(&es, QuadratureAngle::PI_4, 6), xi_pi4(&c, 0.8).unwrap(), 1e-12);
    for theta in [-1.2, -0.3, 0.2, 1.0, 1.5] {
        let q = QuadratureAngle::new(theta);
        assert_close(xi_theta(&es, q, 6), xi_oracle(&s, q), 1e-10);
    }
    // the closed-form optimum is no worse than any sampled angle
    let (best_theta, best) = xi_theta_optimal(&es, 6);
    assert_close(xi_oracle(&s, best_theta), best, 1e-10);
    for k in 0..180 {
        let q = QuadratureAngle::new(k as f64 * std::f64::consts::PI / 180.0);
        assert!(best <= xi_oracle(&s, q) + 1e-12);
    }
}

#[test]
fn three_spin_quarter_period() {
    let c = make_uniform(3, 1.0).unwrap();
    let t = std::f64::consts::FRAC_PI_2;
    assert_close(xi_pi4(&c, t).unwrap(), 2.0, 1e-12);
    assert_close(xi_oracle(&evolved(&c, t), QuadratureAngle::PI_4), 2.0, 1e-12);
}

#[test]
fn uniform_period() {
    let c = make_uniform(7, 1.3).unwrap();
    let period = 4.0 * std::f64::consts::PI / 1.3;
    for k in 0..50 {
        let t = 0.05 * k as f64;
        assert_close(xi_pi4(&c, t).unwrap(), xi_pi4(&c, t + period).unwrap(), 1e-12 * xi_pi4(&c, t).unwrap().max(1.0));
    }
}
