//! Seeded random ensembles.
//!
//! Every generator is a ChaCha8 stream. Independent trials of one experiment
//! share the master seed and use the trial index as the ChaCha stream id, so
//! a trial's draws do not depend on which thread runs it or in what order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::ball::BallPoint;
use crate::matkernel::{herm_eig, op_norm, CMat};
use crate::transform::OperatorHK;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `index` of an experiment seeded with `master`.
pub fn trial_rng(master: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(master);
    r.set_stream(index);
    r
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Matrix of independent standard complex Gaussian entries.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex_normal(rng)).collect()
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    gaussian(rng, n, n).hermitian_part()
}

/// Unitary taken from the eigenbasis of a random Hermitian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    herm_eig(&hermitian(rng, n))
        .expect("Hermitian by construction")
        .basis
}

/// `rows x cols` matrix with orthonormal columns (`rows >= cols`), by
/// modified Gram-Schmidt with one re-orthogonalization pass.
pub fn orthonormal_columns<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    assert!(
        rows >= cols,
        "cannot fit {cols} orthonormal columns in C^{rows}"
    );
    let mut cols_v: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    while cols_v.len() < cols {
        let mut v = gaussian_vec(rng, rows);
        for _ in 0..2 {
            for u in &cols_v {
                let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(u) {
                    *x -= dot * a;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        cols_v.push(v);
    }
    CMat::from_fn(rows, cols, |i, j| cols_v[j][i])
}

/// Ball point with a random direction and a norm drawn uniformly from
/// `[0, 1 - min_margin]`.
pub fn ball_point<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    min_margin: f64,
) -> BallPoint {
    let g = gaussian(rng, rows, cols);
    let radius = rng.random_range(0.0..(1.0 - min_margin));
    let m = g.scale_real(radius / op_norm(&g));
    BallPoint::new(m).expect("radius below one")
}

/// Operator `H -> K` (a `dim_k x dim_h` matrix) whose spectral norm is drawn
/// log-uniformly from `[lo, hi]`.
pub fn operator<R: Rng + ?Sized>(
    rng: &mut R,
    dim_h: usize,
    dim_k: usize,
    lo: f64,
    hi: f64,
) -> OperatorHK {
    let g = gaussian(rng, dim_k, dim_h);
    let norm = if lo == hi {
        lo
    } else {
        (rng.random_range(lo.ln()..hi.ln())).exp()
    };
    OperatorHK::new(g.scale_real(norm / op_norm(&g)))
}
