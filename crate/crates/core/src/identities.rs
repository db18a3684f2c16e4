//! Seeded identity suites over the ball, transform and symmetry modules.
//!
//! Each check reports the largest normalized residual over its ensemble; a
//! check passes when that residual is at most the caller's tolerance. Checks
//! draw from independent ChaCha streams (stream id = check index), so the
//! result of one check does not depend on which others run.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ball::{ball_dist, mobius, mobius_inv, BallPoint};
use crate::error::Result;
use crate::matkernel::eig::inv_sqrt_pd;
use crate::matkernel::{inverse, op_norm, CMat};
use crate::random;
use crate::symmetry::{
    lemma4_operator, random_pair, symmetric_extension, symmetrize, symmetry_residual,
};
use crate::transform::{
    bounded_transform, inverse_bounded_transform, metric_d, metric_d_psi, r_inv_closed, r_op,
};

/// Minimum ball margin of Möbius ensembles.
pub const MOBIUS_MARGIN: f64 = 0.05;
/// Operator-norm range of transform ensembles.
pub const OPERATOR_NORMS: (f64, f64) = (1e-2, 1e3);
/// Minimum ball margin of the symmetric contractions fed to the pair construction.
pub const SYMMETRIC_MARGIN: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_residual: f64,
    pub cases: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim_h: usize,
    pub dim_k: usize,
}

type Check = fn(&SuiteConfig, &mut ChaCha8Rng) -> Result<f64>;

const CHECKS: &[(&str, Check)] = &[
    ("mobius_round_trip", mobius_round_trip),
    ("mobius_commutation", mobius_commutation),
    ("mobius_invariance", mobius_invariance),
    ("base_point_distance", base_point_distance),
    ("bounded_transform_norm", bounded_transform_norm),
    ("bounded_transform_round_trip", bounded_transform_round_trip),
    ("metric_two_routes", metric_two_routes),
    ("metric_symmetry", metric_symmetry),
    ("metric_triangle", metric_triangle),
    ("r_inverse_closed_form", r_inverse_closed_form),
    ("extension_symmetry", extension_symmetry),
    ("constructed_pair", constructed_pair),
    ("graph_norm_identity", graph_norm_identity),
];

/// Runs every check `trials` times; no trials gives an empty report.
pub fn run(config: &SuiteConfig) -> Result<Vec<IdentityCheck>> {
    if config.trials == 0 {
        return Ok(Vec::new());
    }
    CHECKS
        .iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let mut rng = random::trial_rng(config.seed, i as u64);
            let mut worst = 0.0_f64;
            for _ in 0..config.trials {
                let r = check(config, &mut rng)?;
                // NaN must fail the check.
                worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
            }
            Ok(IdentityCheck {
                name,
                max_residual: worst,
                cases: config.trials,
            })
        })
        .collect()
}

fn ball_pair(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> (BallPoint, BallPoint) {
    (
        random::ball_point(rng, c.dim_h, c.dim_k, MOBIUS_MARGIN),
        random::ball_point(rng, c.dim_h, c.dim_k, MOBIUS_MARGIN),
    )
}

fn operator(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> crate::OperatorHK {
    random::operator(rng, c.dim_h, c.dim_k, OPERATOR_NORMS.0, OPERATOR_NORMS.1)
}

fn mobius_round_trip(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (a, z) = ball_pair(c, rng);
    let back = mobius_inv(&a, &mobius(&a, &z)?)?;
    Ok(op_norm(&(back.mat() - z.mat())))
}

fn mobius_commutation(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (a, z) = ball_pair(c, rng);
    let (a, z) = (a.mat(), z.mat());
    let a_adj = a.adjoint();
    let lhs = (z - a) * inverse(&(&a_adj * a).identity_minus())? * (&a_adj * z).identity_minus();
    let rhs = (z * &a_adj).identity_minus() * inverse(&(a * &a_adj).identity_minus())? * (z - a);
    Ok(op_norm(&(lhs - rhs)) / (1.0 + op_norm(a) + op_norm(z)))
}

fn mobius_invariance(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (a, x) = ball_pair(c, rng);
    let y = random::ball_point(rng, c.dim_h, c.dim_k, MOBIUS_MARGIN);
    let before = ball_dist(&x, &y)?;
    let after = ball_dist(&mobius(&a, &x)?, &mobius(&a, &y)?)?;
    Ok((before - after).abs())
}

fn base_point_distance(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let y = random::ball_point(rng, c.dim_h, c.dim_k, MOBIUS_MARGIN);
    let d = ball_dist(&BallPoint::zero(c.dim_h, c.dim_k), &y)?;
    Ok((d - y.norm().atanh()).abs())
}

fn bounded_transform_norm(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let t = operator(c, rng);
    let tt = op_norm(&(t.mat() * &t.adjoint()));
    let hat = bounded_transform(&t)?;
    Ok((hat.norm().powi(2) - tt / (1.0 + tt)).abs() / (1.0 + tt))
}

fn bounded_transform_round_trip(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let t = operator(c, rng);
    let back = inverse_bounded_transform(&bounded_transform(&t)?)?.operator;
    let op_side = op_norm(&(back.mat() - t.mat())) / op_norm(t.mat()).max(1.0);
    let a = random::ball_point(rng, c.dim_h, c.dim_k, 1e-6);
    let again = bounded_transform(&inverse_bounded_transform(&a)?.operator)?;
    Ok(op_side.max(op_norm(&(again.mat() - a.mat()))))
}

fn metric_two_routes(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (t, s) = (operator(c, rng), operator(c, rng));
    Ok((metric_d(&t, &s)? - metric_d_psi(&t, &s)?).abs())
}

fn metric_symmetry(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (t, s) = (operator(c, rng), operator(c, rng));
    Ok((metric_d(&t, &s)? - metric_d(&s, &t)?).abs())
}

fn metric_triangle(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (t, s, u) = (operator(c, rng), operator(c, rng), operator(c, rng));
    let excess = metric_d(&t, &s)? - metric_d(&t, &u)? - metric_d(&u, &s)?;
    Ok(excess.max(0.0))
}

fn r_inverse_closed_form(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (t, s) = (operator(c, rng), operator(c, rng));
    let direct = inverse(&r_op(&s, &t)?)?;
    Ok(op_norm(&(r_inv_closed(&s, &t)? - &direct)) / op_norm(&direct))
}

fn extension_symmetry(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let t = operator(c, rng);
    let pair = random_pair(c.dim_h, c.dim_k, rng.random())?;
    let (ext, doubled) = symmetric_extension(t.mat(), &pair)?;
    Ok(symmetry_residual(&ext, &doubled)? / op_norm(t.mat()).max(1.0))
}

/// Symmetric contraction `K -> H` for a random pair from `K` to `H`.
pub fn symmetric_contraction<R: Rng + ?Sized>(
    rng: &mut R,
    dim_h: usize,
    dim_k: usize,
    min_margin: f64,
) -> Result<(BallPoint, crate::ConjugationPair)> {
    let pair = random_pair(dim_k, dim_h, rng.random())?;
    let g = random::gaussian(rng, dim_h, dim_k);
    let s = symmetrize(&g, &pair)?;
    let radius = rng.random_range(0.0..(1.0 - min_margin));
    let n = op_norm(&s);
    let m = if n > 0.0 { s.scale_real(radius / n) } else { s };
    Ok((BallPoint::new(m)?, pair))
}

fn constructed_pair(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (a, pair) = symmetric_contraction(rng, c.dim_h, c.dim_k, SYMMETRIC_MARGIN)?;
    let (t, out) = lemma4_operator(&a, &pair)?;
    Ok(out.residuals().max().max(symmetry_residual(t.mat(), &out)?))
}

fn graph_norm_identity(c: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (a, pair) = symmetric_contraction(rng, c.dim_h, c.dim_k, SYMMETRIC_MARGIN)?;
    let (t, _) = lemma4_operator(&a, &pair)?;
    let d = inv_sqrt_pd(&(a.mat() * &a.mat().adjoint()).identity_minus(), 1e-13)?;
    let x = random::gaussian_vec(rng, c.dim_h);
    Ok(graph_residual(t.mat(), &d, &x))
}

/// Relative gap in `‖Tx‖² + ‖x‖² = ‖(I - AA*)^{-1/2} x‖²`.
pub fn graph_residual(t: &CMat, defect_inv_sqrt: &CMat, x: &[Complex64]) -> f64 {
    let sq = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let lhs = sq(&t.matvec(x)) + sq(x);
    let rhs = sq(&defect_inv_sqrt.matvec(x));
    (lhs - rhs).abs() / rhs
}
