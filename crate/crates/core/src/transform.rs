//! Bounded transform between operators `H -> K` and the ball of `B(K, H)`,
//! the defect maps `L_T`, `R_T`, and the metric `d` they define.
//!
//! Finite matrices stand in for closed densely-defined operators: every
//! operator is bounded and everywhere defined, and large norms play the part
//! of unboundedness.

use crate::ball::{ball_dist, BallPoint};
use crate::config::TOL;
use crate::error::{Error, Result};
use crate::matkernel::eig::{inv_sqrt_pd, sqrt_psd};
use crate::matkernel::{ensure_same_shape, inverse, op_norm, CMat};

/// Operator `T: H -> K` stored as a `dim_k x dim_h` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorHK {
    mat: CMat,
}

impl OperatorHK {
    pub fn new(mat: CMat) -> Self {
        Self { mat }
    }

    /// Checks the matrix against the stated space dimensions.
    pub fn with_dims(mat: CMat, dim_h: usize, dim_k: usize) -> Result<Self> {
        if mat.shape() != (dim_k, dim_h) {
            return Err(Error::ShapeMismatch {
                left: mat.shape(),
                right: (dim_k, dim_h),
            });
        }
        Ok(Self { mat })
    }

    pub fn zero(dim_h: usize, dim_k: usize) -> Self {
        Self {
            mat: CMat::zeros(dim_k, dim_h),
        }
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn into_mat(self) -> CMat {
        self.mat
    }

    pub fn dim_h(&self) -> usize {
        self.mat.cols()
    }

    pub fn dim_k(&self) -> usize {
        self.mat.rows()
    }

    /// `T*: K -> H`, computed on demand.
    pub fn adjoint(&self) -> CMat {
        self.mat.adjoint()
    }
}

/// Result of inverting the bounded transform.
#[derive(Debug, Clone)]
pub struct Recovered {
    pub operator: OperatorHK,
    /// Set when the ball margin was below `TOL.low_margin`; the operator is
    /// then only as accurate as `1 / margin` allows.
    pub low_margin: bool,
}

/// `T̂ = (I + T*T)^{-1/2} T*`, evaluated as `T* (I + TT*)^{-1/2}` so that only
/// the `dim_k x dim_k` Gram matrix is decomposed.
pub fn bounded_transform(t: &OperatorHK) -> Result<BallPoint> {
    let t_adj = t.adjoint();
    let g = (t.mat() * &t_adj).identity_plus();
    let root = inv_sqrt_pd(&g, 1.0 - 1e-9)?;
    BallPoint::new(t_adj * root)
}

/// `A_0 = (I - A*A)^{-1/2} A*`, the operator whose bounded transform is `A`.
pub fn inverse_bounded_transform(a: &BallPoint) -> Result<Recovered> {
    let a_adj = a.mat().adjoint();
    let d = (&a_adj * a.mat()).identity_minus();
    let root = inv_sqrt_pd(&d, f64::MIN_POSITIVE)?;
    Ok(Recovered {
        operator: OperatorHK::new(root * a_adj),
        low_margin: a.margin() < TOL.low_margin,
    })
}

/// `L_T(X) = (I + T*T)^{1/2} X* - T* (I + XX*)^{1/2}`, a `dim_h x dim_k` matrix.
pub fn l_op(t: &OperatorHK, x: &OperatorHK) -> Result<CMat> {
    ensure_same_shape(t.mat(), x.mat())?;
    let t_adj = t.adjoint();
    let x_adj = x.adjoint();
    let left = sqrt_psd(&(&t_adj * t.mat()).identity_plus())?;
    let right = sqrt_psd(&(x.mat() * &x_adj).identity_plus())?;
    Ok(left * x_adj - t_adj * right)
}

/// `R_T(X) = (I + XX*)^{1/2} (I + TT*)^{1/2} - X T*`, a `dim_k x dim_k` matrix.
pub fn r_op(t: &OperatorHK, x: &OperatorHK) -> Result<CMat> {
    ensure_same_shape(t.mat(), x.mat())?;
    let t_adj = t.adjoint();
    let xx = sqrt_psd(&(x.mat() * &x.adjoint()).identity_plus())?;
    let tt = sqrt_psd(&(t.mat() * &t_adj).identity_plus())?;
    Ok(xx * tt - x.mat() * &t_adj)
}

/// Closed form of `R_S(T)^{-1}`:
///
/// ```text
/// (I + SS*)^{-1/2} [I - T (I + T*T)^{-1/2} (I + S*S)^{-1/2} S*]^{-1} (I + TT*)^{-1/2}
/// ```
pub fn r_inv_closed(s: &OperatorHK, t: &OperatorHK) -> Result<CMat> {
    ensure_same_shape(s.mat(), t.mat())?;
    let s_adj = s.adjoint();
    let t_adj = t.adjoint();
    let ss = inv_sqrt_pd(&(s.mat() * &s_adj).identity_plus(), 0.5)?;
    let tt = inv_sqrt_pd(&(t.mat() * &t_adj).identity_plus(), 0.5)?;
    let t_t = inv_sqrt_pd(&(&t_adj * t.mat()).identity_plus(), 0.5)?;
    let s_s = inv_sqrt_pd(&(&s_adj * s.mat()).identity_plus(), 0.5)?;
    let bracket = (t.mat() * t_t * s_s * s_adj).identity_minus();
    Ok(ss * inverse(&bracket)? * tt)
}

/// Metric `d(T, S) = atanh ‖L_T(S) R_S(T)^{-1}‖`.
///
/// `‖L_T(S) R_S(T)^{-1}‖` approaches one for far-apart operators, where
/// `atanh` is ill-conditioned. There the identity
/// `I - Q*Q = (R R*)^{-1}` for `Q = L_T(S) R_S(T)^{-1}`, `R = R_S(T)` gives
/// `cosh d = ‖R_S(T)‖`, and `d = ln(cosh d) + ln(1 + tanh d)`.
pub fn metric_d(t: &OperatorHK, s: &OperatorHK) -> Result<f64> {
    ensure_same_shape(t.mat(), s.mat())?;
    if t == s {
        return Ok(0.0);
    }
    let r = r_op(s, t)?;
    let q = l_op(t, s)? * inverse(&r)?;
    let tanh = op_norm(&q);
    if !tanh.is_finite() {
        return Err(Error::NonFinite);
    }
    if tanh < 0.5 {
        return Ok(tanh.atanh());
    }
    let cosh = op_norm(&r);
    Ok(cosh.ln() + (1.0 + tanh.min(1.0)).ln())
}

/// The same metric through the ball: `ball_dist(T̂, Ŝ)`.
pub fn metric_d_psi(t: &OperatorHK, s: &OperatorHK) -> Result<f64> {
    ensure_same_shape(t.mat(), s.mat())?;
    ball_dist(&bounded_transform(t)?, &bounded_transform(s)?)
}
