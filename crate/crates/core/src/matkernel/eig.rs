use num_complex::Complex64;

use super::CMat;
use crate::config::TOL;
use crate::error::{Error, Result};

/// Eigen-decomposition of a Hermitian matrix: `P = basis · diag(eigenvalues) · basis*`.
#[derive(Debug, Clone)]
pub struct HermSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` is the eigenvector of `eigenvalues[k]`.
    pub basis: CMat,
}

impl HermSpectrum {
    /// `basis · diag(f(λ)) · basis*`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.eigenvalues.len();
        let fv: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.basis;
        let mut out = CMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &w) in fv.iter().enumerate() {
                    acc += v[(i, k)] * v[(j, k)].conj() * w;
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }
}

/// Hermitian eigensolver by cyclic two-sided complex Jacobi rotations.
///
/// The input is accepted when `‖P - P*‖_F <= 1e-10 · max(1, ‖P‖_F)` and is
/// replaced by `(P + P*) / 2` before iterating.
pub fn herm_eig(p: &CMat) -> Result<HermSpectrum> {
    if !p.is_square() {
        return Err(Error::ShapeMismatch {
            left: p.shape(),
            right: (p.cols(), p.rows()),
        });
    }
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let asym = (p - &p.adjoint()).fro_norm();
    let limit = TOL.herm_guard * p.fro_norm().max(1.0);
    if asym > limit {
        return Err(Error::NotHermitian {
            asymmetry: asym,
            limit,
        });
    }

    let n = p.rows();
    let mut a = p.hermitian_part();
    let mut v = CMat::identity(n);
    let abs_floor = a.fro_norm() * 1e-300_f64.max(f64::EPSILON * 1e-4);

    let mut converged = n == 1;
    for _sweep in 0..TOL.jacobi_sweeps {
        let mut rotated = false;
        for q in 1..n {
            for p_ in 0..q {
                let apq = a[(p_, q)];
                let r = apq.norm();
                let app = a[(p_, p_)].re;
                let aqq = a[(q, q)].re;
                if r <= abs_floor || r <= f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p_, q, apq, app, aqq);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: TOL.jacobi_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let basis = CMat::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermSpectrum { eigenvalues, basis })
}

/// Annihilates `a[p][q]` with `U = diag(1, e^{-iφ}) · [[c, s], [-s, c]]`,
/// `a[p][q] = r e^{iφ}`, updating `a ← U* a U` and `v ← v U`.
fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize, apq: Complex64, app: f64, aqq: f64) {
    let r = apq.norm();
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ph = phase.conj();
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = ph * -s;
    let u_qq = ph * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Hermitian functional calculus `basis · diag(f(λ)) · basis*`.
///
/// Every eigenvalue must be `>= floor`; pass `f64::NEG_INFINITY` when `f` is
/// regular on the whole spectrum.
pub fn herm_fun(p: &CMat, f: impl Fn(f64) -> f64, floor: f64) -> Result<CMat> {
    let spec = herm_eig(p)?;
    if let Some(&low) = spec.eigenvalues.first() {
        if low < floor {
            return Err(Error::EigenvalueBelowFloor {
                eigenvalue: low,
                floor,
            });
        }
    }
    Ok(spec.apply(f))
}

/// Principal square root of a positive semidefinite matrix; roundoff-level
/// negative eigenvalues are treated as zero.
pub(crate) fn sqrt_psd(p: &CMat) -> Result<CMat> {
    herm_fun(p, |l| l.max(0.0).sqrt(), f64::NEG_INFINITY)
}

/// Inverse square root of a positive definite matrix with eigenvalue floor.
pub(crate) fn inv_sqrt_pd(p: &CMat, floor: f64) -> Result<CMat> {
    herm_fun(p, |l| 1.0 / l.sqrt(), floor)
}
