//! Conjugation pairs between two spaces and complex symmetric operators.
//!
//! A conjugate-linear map `C` is stored by its linear part `J`, acting as
//! `x -> J · conj(x)`. With the inner product linear in its first argument,
//! the pairing `<C1 x, y>_K = <C2 y, x>_H` holds exactly when
//! `J_fwd = J_bwdᵀ`. Compositions translate as follows:
//!
//! | conjugate-linear         | linear matrix                  |
//! |--------------------------|--------------------------------|
//! | `C2 C1`                  | `J_bwd · conj(J_fwd)`          |
//! | `C1 C2`                  | `J_fwd · conj(J_bwd)`          |
//! | `C2 T` (`T` linear)      | `J_bwd · conj(T)`              |
//! | `T* C1`                  | `T* · J_fwd`                   |
//! | `C1 T*`                  | `J_fwd · Tᵀ`                   |
//! | `C1 T* C1`               | `J_fwd · Tᵀ · conj(J_fwd)`     |
//!
//! A pair goes from a source space to a destination space: `C1` (forward)
//! maps source to destination, `C2` (backward) maps back. One of the two
//! compositions is the identity, recorded by [`Side`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ball::BallPoint;
use crate::config::TOL;
use crate::error::{Error, Result};
use crate::matkernel::eig::{inv_sqrt_pd, sqrt_psd};
use crate::matkernel::{op_norm, CMat};
use crate::random;
use crate::transform::{inverse_bounded_transform, OperatorHK};

/// Which composition of the pair is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `C2 C1 = id` on the source space.
    BwdFwdIsId,
    /// `C1 C2 = id` on the destination space.
    FwdBwdIsId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Fwd,
    Bwd,
}

/// Invariant residuals of a pair, all zero for an exact pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairResiduals {
    /// `‖J_fwd - J_bwdᵀ‖`.
    pub pairing: f64,
    /// Distance of the identity-side composition from the identity.
    pub composition: f64,
    /// Distance of `J* J` from the identity for the map applied first in
    /// the identity composition.
    pub isometry: f64,
}

impl PairResiduals {
    pub fn max(&self) -> f64 {
        self.pairing.max(self.composition).max(self.isometry)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationPair {
    fwd: CMat,
    bwd: CMat,
    side: Side,
}

impl ConjugationPair {
    /// Builds a pair and checks its invariants at `TOL.pair`.
    pub fn new(fwd: CMat, bwd: CMat, side: Side) -> Result<Self> {
        Self::with_tolerance(fwd, bwd, side, TOL.pair)
    }

    pub fn with_tolerance(fwd: CMat, bwd: CMat, side: Side, tol: f64) -> Result<Self> {
        if fwd.shape() != (bwd.cols(), bwd.rows()) {
            return Err(Error::ShapeMismatch {
                left: fwd.shape(),
                right: bwd.shape(),
            });
        }
        let pair = Self { fwd, bwd, side };
        let res = pair.residuals();
        if !(res.max() <= tol) {
            return Err(Error::BadDims(format!(
                "not a conjugation pair: pairing {:.3e}, composition {:.3e}, isometry {:.3e}",
                res.pairing, res.composition, res.isometry
            )));
        }
        Ok(pair)
    }

    /// `C1 = C2 = plain conjugation` on `C^n`.
    pub fn identity(n: usize) -> Self {
        Self {
            fwd: CMat::identity(n),
            bwd: CMat::identity(n),
            side: Side::BwdFwdIsId,
        }
    }

    pub fn fwd(&self) -> &CMat {
        &self.fwd
    }

    pub fn bwd(&self) -> &CMat {
        &self.bwd
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim_src(&self) -> usize {
        self.fwd.cols()
    }

    pub fn dim_dst(&self) -> usize {
        self.fwd.rows()
    }

    /// The same maps read in the opposite direction: `(C2, C1)` as a pair from
    /// the old destination to the old source.
    pub fn reversed(&self) -> Self {
        let side = match self.side {
            Side::BwdFwdIsId => Side::FwdBwdIsId,
            Side::FwdBwdIsId => Side::BwdFwdIsId,
        };
        Self {
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
            side,
        }
    }

    pub fn residuals(&self) -> PairResiduals {
        let pairing = op_norm(&(&self.fwd - &self.bwd.transpose()));
        let (composition, first) = match self.side {
            Side::BwdFwdIsId => {
                let c = &self.bwd * &self.fwd.conj();
                (op_norm(&(c - CMat::identity(self.dim_src()))), &self.fwd)
            }
            Side::FwdBwdIsId => {
                let c = &self.fwd * &self.bwd.conj();
                (op_norm(&(c - CMat::identity(self.dim_dst()))), &self.bwd)
            }
        };
        let isometry = op_norm(&(first.adjoint() * first - CMat::identity(first.cols())));
        PairResiduals {
            pairing,
            composition,
            isometry,
        }
    }
}

/// Pair on `C^m -> C^n`, `n >= m`: `C1 z = (conj z, 0)`, `C2 z = conj(z_1..z_m)`.
pub fn canonical_pair(m: usize, n: usize) -> Result<ConjugationPair> {
    if m == 0 || n < m {
        return Err(Error::BadDims(format!(
            "canonical pair needs n >= m >= 1, got m={m}, n={n}"
        )));
    }
    let fwd = CMat::from_fn(n, m, |i, j| {
        Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
    });
    let bwd = fwd.transpose();
    Ok(ConjugationPair {
        fwd,
        bwd,
        side: Side::BwdFwdIsId,
    })
}

/// Seeded random pair from `C^dim_src` to `C^dim_dst`, with the identity
/// composition on the smaller space.
pub fn random_pair(dim_src: usize, dim_dst: usize, seed: u64) -> Result<ConjugationPair> {
    if dim_src == 0 || dim_dst == 0 {
        return Err(Error::BadDims(format!(
            "random pair {dim_src} -> {dim_dst}"
        )));
    }
    let mut rng = random::rng(seed);
    let (fwd, side) = if dim_src <= dim_dst {
        (
            random::orthonormal_columns(&mut rng, dim_dst, dim_src),
            Side::BwdFwdIsId,
        )
    } else {
        (
            random::orthonormal_columns(&mut rng, dim_src, dim_dst).transpose(),
            Side::FwdBwdIsId,
        )
    };
    let bwd = fwd.transpose();
    ConjugationPair::new(fwd, bwd, side)
}

/// `J · conj(x)` for the chosen map.
pub fn conj_apply(
    pair: &ConjugationPair,
    direction: Direction,
    x: &[Complex64],
) -> Result<Vec<Complex64>> {
    let j = match direction {
        Direction::Fwd => &pair.fwd,
        Direction::Bwd => &pair.bwd,
    };
    if x.len() != j.cols() {
        return Err(Error::ShapeMismatch {
            left: j.shape(),
            right: (x.len(), 1),
        });
    }
    let xc: Vec<Complex64> = x.iter().map(|z| z.conj()).collect();
    Ok(j.matvec(&xc))
}

fn check_op_shape(op: &CMat, pair: &ConjugationPair) -> Result<()> {
    if op.shape() != (pair.dim_dst(), pair.dim_src()) {
        return Err(Error::ShapeMismatch {
            left: op.shape(),
            right: (pair.dim_dst(), pair.dim_src()),
        });
    }
    Ok(())
}

/// Distance of `op` (source -> destination of `pair`) from being
/// `(C1, C2)`-symmetric: `‖C2 T - T* C1‖` when `C2 C1 = id`, else
/// `‖T C2 - C1 T*‖`.
pub fn symmetry_residual(op: &CMat, pair: &ConjugationPair) -> Result<f64> {
    check_op_shape(op, pair)?;
    let diff = match pair.side {
        Side::BwdFwdIsId => &pair.bwd * &op.conj() - op.adjoint() * &pair.fwd,
        Side::FwdBwdIsId => op * &pair.bwd - &pair.fwd * &op.transpose(),
    };
    Ok(op_norm(&diff))
}

/// `C1 T* C1` as a linear matrix.
fn conjugated_adjoint(op: &CMat, pair: &ConjugationPair) -> CMat {
    &pair.fwd * &op.transpose() * pair.fwd.conj()
}

/// Averaging symmetrization `(T + C1 T* C1) / 2`, symmetric for `pair`. For a
/// square pair it is the projection onto symmetric operators; for a
/// rectangular pair it need not fix an operator that is already symmetric.
pub fn symmetrize(op: &CMat, pair: &ConjugationPair) -> Result<CMat> {
    check_op_shape(op, pair)?;
    Ok((op + &conjugated_adjoint(op, pair)).scale_real(0.5))
}

/// Doubled operator `diag(T, C1 T* C1)` with the pair
/// `(offdiag(C1, C1), offdiag(C2, C2))`, symmetric whatever `T` is.
pub fn symmetric_extension(op: &CMat, pair: &ConjugationPair) -> Result<(CMat, ConjugationPair)> {
    check_op_shape(op, pair)?;
    let ext = CMat::block_diag(op, &conjugated_adjoint(op, pair));
    let doubled = ConjugationPair {
        fwd: CMat::block_offdiag(&pair.fwd, &pair.fwd),
        bwd: CMat::block_offdiag(&pair.bwd, &pair.bwd),
        side: pair.side,
    };
    Ok((ext, doubled))
}

/// Conjugation pair from `H` to `K` for which `(I - A*A)^{-1/2} A*` is
/// symmetric, given a `(C1, C2)`-symmetric contraction `A: K -> H` and its
/// pair from `K` to `H`:
///
/// ```text
/// 𝒞1 = (I - A* C1 C2 A)^{-1/2} C2 (I - AA*)^{1/2}
/// 𝒞2 = (I - AA*)^{1/2} C1 (I - A* C1 C2 A)^{-1/2}
/// ```
///
/// For an input pair with `C2 C1 = id_K` the output has `𝒞1 𝒞2 = id_K`. An
/// input pair with `C1 C2 = id_H` is handled through `A*` and the reversed
/// pair, and the output then has `𝒞2 𝒞1 = id_H`.
pub fn lemma4_pair(a: &BallPoint, pair: &ConjugationPair) -> Result<ConjugationPair> {
    let residual = symmetry_residual(a.mat(), pair)?;
    if !(residual <= TOL.symmetric) {
        return Err(Error::NotSymmetric {
            residual,
            limit: TOL.symmetric,
        });
    }
    match pair.side {
        Side::BwdFwdIsId => lemma4_pair_kernel(a.mat(), pair),
        Side::FwdBwdIsId => {
            let mirrored = lemma4_pair_kernel(&a.mat().adjoint(), &pair.reversed())?;
            Ok(mirrored.reversed())
        }
    }
}

/// Construction for `C2 C1 = id` on the source of the input pair.
fn lemma4_pair_kernel(a: &CMat, pair: &ConjugationPair) -> Result<ConjugationPair> {
    let a_adj = a.adjoint();
    // C1 C2 as a linear map.
    let c1c2 = &pair.fwd * &pair.bwd.conj();
    let m = (&a_adj * &c1c2 * a).identity_minus().hermitian_part();
    let m_inv_sqrt = inv_sqrt_pd(&m, TOL.lemma_floor)?;
    let n = sqrt_psd(&(a * &a_adj).identity_minus())?;
    let fwd = &m_inv_sqrt * &pair.bwd * n.conj();
    let bwd = n * &pair.fwd * m_inv_sqrt.conj();
    ConjugationPair::with_tolerance(fwd, bwd, Side::FwdBwdIsId, 1e-8)
}

/// `T = (I - A*A)^{-1/2} A*` together with the pair that makes it symmetric.
pub fn lemma4_operator(
    a: &BallPoint,
    pair: &ConjugationPair,
) -> Result<(OperatorHK, ConjugationPair)> {
    let out_pair = lemma4_pair(a, pair)?;
    let t = inverse_bounded_transform(a)?.operator;
    Ok((t, out_pair))
}
