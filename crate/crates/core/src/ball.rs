//! The open unit ball `𝓑` of `B(K, H)` and its Möbius geometry.
//!
//! For a centre `A ∈ 𝓑` the automorphism
//!
//! ```text
//! η_A(Z) = (I - AA*)^{-1/2} (Z + A) (I + A*Z)^{-1} (I - A*A)^{1/2}
//! ```
//!
//! sends `0` to `A`; its inverse is `η_{-A}`, and `ψ_X = η_{-X}` moves `X` to
//! the origin. The invariant distance on the ball is
//! `ball_dist(X, Y) = atanh ‖ψ_X(Y)‖`, which collapses to the Poincaré
//! distance on the unit disc for `1 x 1` points.
//!
//! Near the boundary `atanh` of a norm close to one loses every digit, so the
//! distance is evaluated through the defect identity
//! `I - ψ*ψ = G* G`, `G^{-1} = (I - X*X)^{-1/2} (I - X*Y) (I - Y*Y)^{-1/2}`,
//! which gives `cosh(dist) = ‖G^{-1}‖` and `dist = ln(cosh + sinh)`.

use num_complex::Complex64;

use crate::config::TOL;
use crate::error::{Error, Result};
use crate::matkernel::eig::inv_sqrt_pd;
use crate::matkernel::{ensure_same_shape, herm_eig, inverse, op_norm, CMat};

/// Above this value of `‖ψ_X(Y)‖` the distance switches to the defect form.
const STABLE_SWITCH: f64 = 0.5;

/// A strict contraction: operator norm below one.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    mat: CMat,
    margin: f64,
}

impl BallPoint {
    pub fn new(mat: CMat) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = op_norm(&mat);
        if !(norm < 1.0) {
            return Err(Error::NotInBall { norm });
        }
        Ok(Self {
            mat,
            margin: 1.0 - norm,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            mat: CMat::zeros(rows, cols),
            margin: 1.0,
        }
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn into_mat(self) -> CMat {
        self.mat
    }

    /// `1 - ‖mat‖`.
    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn norm(&self) -> f64 {
        1.0 - self.margin
    }

    pub fn shape(&self) -> (usize, usize) {
        self.mat.shape()
    }

    pub fn neg(&self) -> Self {
        Self {
            mat: -&self.mat,
            margin: self.margin,
        }
    }
}

/// Maps defect-floor violations to `Singular`: the point sits too close to
/// the boundary for the factor to be trusted.
fn defect_inv_sqrt(d: &CMat) -> Result<CMat> {
    inv_sqrt_pd(d, TOL.defect_floor).map_err(|e| match e {
        Error::EigenvalueBelowFloor { eigenvalue, .. } => Error::Singular { pivot: eigenvalue },
        other => other,
    })
}

fn defect_sqrt(d: &CMat) -> Result<CMat> {
    let spec = herm_eig(d)?;
    if spec.eigenvalues[0] < TOL.defect_floor {
        return Err(Error::Singular {
            pivot: spec.eigenvalues[0],
        });
    }
    Ok(spec.apply(|l| l.sqrt()))
}

/// `η_A(Z)` as a plain matrix, for a centre that is known to be a ball point.
fn mobius_matrix(a: &CMat, z: &CMat) -> Result<CMat> {
    ensure_same_shape(a, z)?;
    let a_adj = a.adjoint();
    let left = defect_inv_sqrt(&(a * &a_adj).identity_minus())?;
    let right = defect_sqrt(&(&a_adj * a).identity_minus())?;
    let mid = inverse(&(&a_adj * z).identity_plus())?;
    Ok(left * (z + a) * mid * right)
}

fn mobius_raw(a: &CMat, z: &CMat) -> Result<BallPoint> {
    BallPoint::new(mobius_matrix(a, z)?)
}

/// Möbius automorphism `η_A(Z)`.
pub fn mobius(a: &BallPoint, z: &BallPoint) -> Result<BallPoint> {
    mobius_raw(a.mat(), z.mat())
}

/// Inverse automorphism `η_A^{-1}(Z) = η_{-A}(Z)`.
pub fn mobius_inv(a: &BallPoint, z: &BallPoint) -> Result<BallPoint> {
    mobius_raw(&-a.mat(), z.mat())
}

/// `ψ_X(Y) = η_{-X}(Y)`; sends `X` to `0` and `0` to `-X`.
pub fn psi(x: &BallPoint, y: &BallPoint) -> Result<BallPoint> {
    mobius_raw(&-x.mat(), y.mat())
}

/// Poincaré distance `atanh(|a - b| / |1 - conj(a) b|)` on the unit disc.
pub fn poincare(a: Complex64, b: Complex64) -> Result<f64> {
    for z in [a, b] {
        if !(z.norm() < 1.0) {
            return Err(Error::OutOfDisc { modulus: z.norm() });
        }
    }
    let denom = (Complex64::new(1.0, 0.0) - a.conj() * b).norm();
    let x = (a - b).norm() / denom;
    if x < STABLE_SWITCH {
        return atanh_checked(x);
    }
    // 1 - x^2 = (1 - |a|^2)(1 - |b|^2) / |1 - conj(a) b|^2
    let cosh = denom / ((1.0 - a.norm_sqr()).sqrt() * (1.0 - b.norm_sqr()).sqrt());
    Ok(cosh.ln() + (1.0 + x.min(1.0)).ln())
}

fn atanh_checked(x: f64) -> Result<f64> {
    if !(x < 1.0) {
        return Err(Error::OutOfDisc { modulus: x });
    }
    Ok(x.atanh())
}

/// Invariant distance `atanh ‖ψ_X(Y)‖`.
pub fn ball_dist(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    ensure_same_shape(x.mat(), y.mat())?;
    // Far-apart points near the boundary put ψ within roundoff of the unit
    // sphere, so its norm is read off the unvalidated matrix.
    let norm = op_norm(&mobius_matrix(&-x.mat(), y.mat())?);
    if norm < STABLE_SWITCH {
        return atanh_checked(norm);
    }
    let cosh = cosh_dist(x.mat(), y.mat())?;
    if !cosh.is_finite() {
        return Err(Error::OutOfDisc { modulus: norm });
    }
    Ok(cosh.ln() + (1.0 + norm.min(1.0)).ln())
}

/// `‖(I - X*X)^{-1/2} (I - X*Y) (I - Y*Y)^{-1/2}‖`, the hyperbolic cosine of
/// the distance between `X` and `Y`.
pub(crate) fn cosh_dist(x: &CMat, y: &CMat) -> Result<f64> {
    let x_adj = x.adjoint();
    let dx = defect_inv_sqrt(&(&x_adj * x).identity_minus())?;
    let dy = defect_inv_sqrt(&(&y.adjoint() * y).identity_minus())?;
    let mid = (&x_adj * y).identity_minus();
    Ok(op_norm(&(dx * mid * dy)))
}
