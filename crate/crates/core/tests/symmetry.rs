use num_complex::Complex64;
use opball::identities::{graph_residual, symmetric_contraction};
use opball::random::{self, rng};
use opball::{
    canonical_pair, conj_apply, lemma4_operator, lemma4_pair, op_norm, random_pair,
    symmetric_extension, symmetrize, symmetry_residual, CMat, Direction, Side,
};
use proptest::prelude::*;

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

#[test]
fn block_characterization_both_directions() {
    let mut r = rng(300);
    let (mut symmetric_seen, mut asymmetric_seen) = (0, 0);
    for i in 0..200 {
        let m = 1 + i % 4;
        let n = m + (i / 4) % 4;
        let mut t = random::gaussian(&mut r, n, m);
        if i % 2 == 0 {
            let top = t.block(0, 0, m, m);
            t.set_block(0, 0, &(&top + &top.transpose()).scale_real(0.5));
        }
        let top = t.block(0, 0, m, m);
        let block_symmetric = op_norm(&(&top - &top.transpose())) <= 1e-9;
        let residual = symmetry_residual(&t, &canonical_pair(m, n).unwrap()).unwrap();
        assert_eq!(
            residual <= 1e-10,
            block_symmetric,
            "case {i}: residual {residual:e}"
        );
        if block_symmetric {
            symmetric_seen += 1;
        } else {
            asymmetric_seen += 1;
        }
    }
    // Both sides of the equivalence are exercised (m = 1 blocks are always symmetric).
    assert!(symmetric_seen >= 100 && asymmetric_seen >= 50);
}

#[test]
fn random_pairs_satisfy_the_pairing_axiom() {
    let mut r = rng(301);
    for i in 0..100 {
        let (src, dst) = (1 + i % 5, 1 + (i / 5) % 5);
        let pair = random_pair(src, dst, i as u64).unwrap();
        assert!(pair.residuals().max() <= 1e-10);
        let x = random::gaussian_vec(&mut r, src);
        let y = random::gaussian_vec(&mut r, dst);
        let lhs = inner(&conj_apply(&pair, Direction::Fwd, &x).unwrap(), &y);
        let rhs = inner(&conj_apply(&pair, Direction::Bwd, &y).unwrap(), &x);
        assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }
}

#[test]
fn extension_and_symmetrize_are_symmetric_for_arbitrary_input() {
    let mut r = rng(302);
    for i in 0..100 {
        let (q, p) = (1 + i % 3, 1 + i % 3 + (i / 3) % 5);
        let pair = random_pair(q, p, 1000 + i as u64).unwrap();
        let t = random::gaussian(&mut r, p, q).scale_real(10f64.powi((i % 4) as i32));
        let scale = op_norm(&t).max(1.0);
        let (ext, doubled) = symmetric_extension(&t, &pair).unwrap();
        assert_eq!(ext.block(0, 0, p, q), t);
        assert!(symmetry_residual(&ext, &doubled).unwrap() <= 1e-10 * scale);
        assert!(doubled.residuals().max() <= 1e-10);
        assert!(
            symmetry_residual(&symmetrize(&t, &pair).unwrap(), &pair).unwrap() <= 1e-10 * scale
        );
    }
}

#[test]
fn constructed_pair_invariants() {
    let mut r = rng(303);
    for i in 0..100 {
        let (p, q) = (1 + i % 8, 1 + (i / 8) % 3);
        let q = q.min(p);
        let (a, pair) = symmetric_contraction(&mut r, p, q, 0.05).unwrap();
        let (t, out) = lemma4_operator(&a, &pair).unwrap();
        assert_eq!(out.side(), Side::FwdBwdIsId);
        assert_eq!((out.dim_src(), out.dim_dst()), (p, q));
        let res = out.residuals();
        assert!(res.max() <= 1e-8, "pair residuals {res:?}");
        assert!(symmetry_residual(t.mat(), &out).unwrap() <= 1e-8);
        // The backward map is isometric; the forward one contracts.
        let bwd = out.bwd();
        assert!(op_norm(&(bwd.adjoint() * bwd - CMat::identity(q))) <= 1e-8);
        assert!(op_norm(out.fwd()) <= 1.0 + 1e-8);
    }
}

#[test]
fn constructed_pair_mirrored_branch() {
    // dim_k > dim_h: the input pair has its identity composition on H.
    let mut r = rng(304);
    for i in 0..50 {
        let (p, q) = (1 + i % 3, 4 + i % 2);
        let (a, pair) = symmetric_contraction(&mut r, p, q, 0.05).unwrap();
        assert_eq!(pair.side(), Side::FwdBwdIsId);
        let (t, out) = lemma4_operator(&a, &pair).unwrap();
        assert_eq!(out.side(), Side::BwdFwdIsId);
        assert!(out.residuals().max() <= 1e-8);
        assert!(symmetry_residual(t.mat(), &out).unwrap() <= 1e-8);
    }
}

#[test]
fn graph_identity_over_vectors() {
    let mut r = rng(305);
    for i in 0..50 {
        let p = 2 + i % 7;
        let (a, pair) = symmetric_contraction(&mut r, p, 2, 0.05).unwrap();
        let (t, _) = lemma4_operator(&a, &pair).unwrap();
        let d = opball::herm_fun(
            &(a.mat() * &a.mat().adjoint()).identity_minus(),
            |l| 1.0 / l.sqrt(),
            1e-13,
        )
        .unwrap();
        for _ in 0..20 {
            let x = random::gaussian_vec(&mut r, p);
            assert!(graph_residual(t.mat(), &d, &x) <= 1e-8);
        }
    }
}

#[test]
fn asymmetric_input_is_rejected() {
    let a = opball::BallPoint::new(CMat::from_real(&[&[0.1, 0.4], &[0.0, 0.2]])).unwrap();
    assert!(lemma4_pair(&a, &canonical_pair(2, 2).unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_symmetrize_is_a_projection_for_square_pairs(seed in any::<u64>(), n in 1usize..6) {
        let pair = random_pair(n, n, seed).unwrap();
        let t = random::gaussian(&mut rng(seed ^ 0x5eed), n, n);
        let s = symmetrize(&t, &pair).unwrap();
        let again = symmetrize(&s, &pair).unwrap();
        prop_assert!(op_norm(&(again - &s)) <= 1e-12 * (1.0 + op_norm(&s)));
    }
}
