//! Ball and operator-metric invariants over seeded ensembles.

use num_complex::Complex64;
use opball::random::{self, rng};
use opball::{
    ball_dist, bounded_transform, inverse, inverse_bounded_transform, metric_d, metric_d_psi,
    mobius, mobius_inv, op_norm, poincare, psi, r_inv_closed, r_op, BallPoint, CMat, OperatorHK,
};
use proptest::prelude::*;

fn dims(i: usize) -> (usize, usize) {
    let p = 1 + i % 8;
    (p, (1 + (i / 8) % 4).min(p))
}

#[test]
fn mobius_round_trip_commutation_and_ball_preservation() {
    let mut r = rng(200);
    for i in 0..200 {
        let (p, q) = dims(i);
        let a = random::ball_point(&mut r, p, q, 0.05);
        let z = random::ball_point(&mut r, p, q, 0.05);
        let image = mobius(&a, &z).unwrap();
        assert!(image.norm() < 1.0);
        let back = mobius_inv(&a, &image).unwrap();
        assert!(op_norm(&(back.mat() - z.mat())) <= 1e-9);

        let (am, zm) = (a.mat(), z.mat());
        let aa = am.adjoint();
        let lhs = (zm - am)
            * inverse(&(&aa * am).identity_minus()).unwrap()
            * (&aa * zm).identity_minus();
        let rhs = (zm * &aa).identity_minus()
            * inverse(&(am * &aa).identity_minus()).unwrap()
            * (zm - am);
        assert!(op_norm(&(lhs - rhs)) <= 1e-10 * (1.0 + a.norm() + z.norm()));
    }
}

#[test]
fn ball_distance_is_a_mobius_invariant_metric() {
    let mut r = rng(201);
    for i in 0..100 {
        let (p, q) = dims(i);
        let [a, x, y, w] = [0; 4].map(|_| random::ball_point(&mut r, p, q, 0.05));
        let dxy = ball_dist(&x, &y).unwrap();
        let moved = ball_dist(&mobius(&a, &x).unwrap(), &mobius(&a, &y).unwrap()).unwrap();
        assert!((moved - dxy).abs() <= 1e-8);
        assert!((ball_dist(&y, &x).unwrap() - dxy).abs() <= 1e-10);
        assert!(dxy <= ball_dist(&x, &w).unwrap() + ball_dist(&w, &y).unwrap() + 1e-9);
        assert!(dxy > 0.0);
        assert!(ball_dist(&x, &x).unwrap() <= 1e-12);
        let origin = BallPoint::zero(p, q);
        assert!((ball_dist(&origin, &y).unwrap() - y.norm().atanh()).abs() <= 1e-10);
    }
}

#[test]
fn scalar_ball_distance_is_poincare() {
    let mut r = rng(202);
    for _ in 0..200 {
        let x = random::ball_point(&mut r, 1, 1, 1e-4);
        let y = random::ball_point(&mut r, 1, 1, 1e-4);
        let d = ball_dist(&x, &y).unwrap();
        let w = poincare(x.mat()[(0, 0)], y.mat()[(0, 0)]).unwrap();
        assert!((d - w).abs() <= 1e-12 * d.max(1.0), "{d} vs {w}");
    }
}

#[test]
fn psi_moves_centre_to_origin() {
    let mut r = rng(203);
    for i in 0..50 {
        let (p, q) = dims(i);
        let x = random::ball_point(&mut r, p, q, 0.05);
        assert!(psi(&x, &x).unwrap().mat().max_abs() <= 1e-14);
        let at_zero = psi(&x, &BallPoint::zero(p, q)).unwrap();
        assert!(op_norm(&(at_zero.mat() + x.mat())) <= 1e-13);
    }
}

fn operator_ensemble(seed: u64, n: usize) -> Vec<OperatorHK> {
    let mut r = rng(seed);
    (0..n)
        .map(|i| {
            let p = 1 + i % 12;
            let q = (1 + (i / 12) % 4).min(p);
            random::operator(&mut r, p, q, 1e-2, 1e3)
        })
        .collect()
}

#[test]
fn bounded_transform_norm_identity_and_round_trips() {
    let mut r = rng(204);
    for t in operator_ensemble(205, 200) {
        let tt = op_norm(&(t.mat() * &t.adjoint()));
        let hat = bounded_transform(&t).unwrap();
        assert_eq!(hat.shape(), (t.dim_h(), t.dim_k()));
        assert!((hat.norm().powi(2) - tt / (1.0 + tt)).abs() <= 1e-10 * (1.0 + tt));
        let back = inverse_bounded_transform(&hat).unwrap().operator;
        let err = op_norm(&(back.mat() - t.mat()));
        assert!(
            err <= 1e-8 * op_norm(t.mat()).max(1.0),
            "round trip {err:e}"
        );

        let a = random::ball_point(&mut r, t.dim_h(), t.dim_k(), 1e-8);
        let again = bounded_transform(&inverse_bounded_transform(&a).unwrap().operator).unwrap();
        assert!(op_norm(&(again.mat() - a.mat())) <= 1e-8);
    }
}

#[test]
fn metric_routes_agree_and_closed_inverse_matches() {
    let ops = operator_ensemble(206, 400);
    let others = operator_ensemble(207, 400);
    for (t, s) in ops.iter().zip(&others) {
        let d = metric_d(t, s).unwrap();
        assert!((d - metric_d_psi(t, s).unwrap()).abs() <= 1e-8);
        let direct = inverse(&r_op(s, t).unwrap()).unwrap();
        let closed = r_inv_closed(s, t).unwrap();
        assert!(op_norm(&(closed - &direct)) <= 1e-8 * op_norm(&direct));
    }
}

#[test]
fn metric_axioms() {
    let a = operator_ensemble(208, 200);
    let b = operator_ensemble(209, 200);
    let c = operator_ensemble(210, 200);
    for ((t, s), u) in a.iter().zip(&b).zip(&c) {
        let d = metric_d(t, s).unwrap();
        assert!((d - metric_d(s, t).unwrap()).abs() <= 1e-10);
        assert!(d <= metric_d(t, u).unwrap() + metric_d(u, s).unwrap() + 1e-9);
        assert!(d > 0.0);
        assert_eq!(metric_d(t, t).unwrap(), 0.0);
    }
}

#[test]
fn metric_matches_scalar_closed_form() {
    // On 1x1 operators d(t, s) = |asinh t - asinh s| for real t, s.
    let mut r = rng(211);
    for _ in 0..100 {
        let t: f64 = random::complex_normal(&mut r).re * 30.0;
        let s: f64 = random::complex_normal(&mut r).re * 30.0;
        let to = |v: f64| OperatorHK::new(CMat::from_fn(1, 1, |_, _| Complex64::new(v, 0.0)));
        let d = metric_d(&to(t), &to(s)).unwrap();
        assert!((d - (t.asinh() - s.asinh()).abs()).abs() <= 1e-12 * d.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_mobius_inverse(seed in any::<u64>(), p in 1usize..6, q in 1usize..4, margin in 0.05f64..0.9) {
        let q = q.min(p);
        let mut r = rng(seed);
        let a = random::ball_point(&mut r, p, q, margin);
        let z = random::ball_point(&mut r, p, q, margin);
        let back = mobius(&a, &mobius_inv(&a, &z).unwrap()).unwrap();
        prop_assert!(op_norm(&(back.mat() - z.mat())) <= 1e-9);
    }

    #[test]
    fn prop_metric_equals_ball_distance(seed in any::<u64>(), p in 1usize..6, q in 1usize..4) {
        let q = q.min(p);
        let mut r = rng(seed);
        let t = random::operator(&mut r, p, q, 1e-2, 1e2);
        let s = random::operator(&mut r, p, q, 1e-2, 1e2);
        prop_assert!((metric_d(&t, &s).unwrap() - metric_d_psi(&t, &s).unwrap()).abs() <= 1e-8);
    }
}
