//! Complex symmetric approximants of an arbitrary operator `T: H -> K`.
//!
//! For depth `n` the bounded transform `T̂` is truncated to its first `n`
//! rows (`A_n`), doubled into the symmetric extension `Ã_n` on
//! `K ⊕ K -> H ⊕ H`, and pulled back to `T_n = (I - Ã_n*Ã_n)^{-1/2} Ã_n*`,
//! which is symmetric for the pair built by [`lemma4_pair`]. The profile
//! measures `d(T_n, T_p)` against the full-depth iterate `T_p`, whose
//! leading block is `T` itself.
//!
//! Ensembles draw one ChaCha stream per trial (stream id = trial index) from
//! the master seed, so reports do not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{ball_dist, BallPoint};
use crate::error::{Error, Result};
use crate::matkernel::{op_norm, CMat};
use crate::random;
use crate::symmetry::{
    lemma4_operator, random_pair, symmetric_extension, symmetry_residual, ConjugationPair,
};
use crate::transform::{bounded_transform, metric_d, OperatorHK};

/// Threshold shared by the profile invariants.
pub const PROFILE_TOL: f64 = 1e-8;

/// Keeps the first `n` rows of `t_hat` and zeroes the rest.
pub fn truncate(t_hat: &BallPoint, n: usize) -> Result<BallPoint> {
    let rows = t_hat.shape().0;
    if n == 0 || n > rows {
        return Err(Error::BadDepth {
            depth: n,
            max: rows,
        });
    }
    let m = t_hat.mat();
    let out = CMat::from_fn(m.rows(), m.cols(), |i, j| {
        if i < n {
            m[(i, j)]
        } else {
            Default::default()
        }
    });
    BallPoint::new(out)
}

/// One approximant and what it took to build it.
#[derive(Debug, Clone)]
pub struct ApproxStep {
    pub depth: usize,
    /// `T_n: H ⊕ H -> K ⊕ K`.
    pub operator: OperatorHK,
    /// Pair from `H ⊕ H` to `K ⊕ K` making `T_n` symmetric.
    pub pair: ConjugationPair,
    /// `Ã_n`, the bounded transform of `T_n`.
    pub a_tilde: BallPoint,
    pub sym_residual: f64,
    pub margin: f64,
}

fn check_pair(t: &OperatorHK, pair: &ConjugationPair) -> Result<()> {
    if (pair.dim_src(), pair.dim_dst()) != (t.dim_k(), t.dim_h()) {
        return Err(Error::ShapeMismatch {
            left: (pair.dim_dst(), pair.dim_src()),
            right: (t.dim_h(), t.dim_k()),
        });
    }
    Ok(())
}

/// Builds `T_n` for `T` and a conjugation pair from `K` to `H`.
pub fn approx_operator(t: &OperatorHK, pair: &ConjugationPair, n: usize) -> Result<ApproxStep> {
    check_pair(t, pair)?;
    let a_n = truncate(&bounded_transform(t)?, n)?;
    let (ext, doubled) = symmetric_extension(a_n.mat(), pair)?;
    let a_tilde = BallPoint::new(ext)?;
    let (operator, out_pair) = lemma4_operator(&a_tilde, &doubled)?;
    let sym_residual = symmetry_residual(operator.mat(), &out_pair)?;
    Ok(ApproxStep {
        depth: n,
        operator,
        pair: out_pair,
        margin: a_tilde.margin(),
        a_tilde,
        sym_residual,
    })
}

/// Operator the approximants are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// The full-depth iterate `T_p`.
    FullDepth,
    /// `diag(T, C2 T* C2)`, the symmetric extension of `T` for the reversed
    /// pair. Differs from `T_p` in its second block when `dim_k < dim_h`.
    Extension,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    /// `d(T_n, T_ref)` by the defect-map formula.
    pub dist: f64,
    pub sym_residual: f64,
    pub margin: f64,
    /// `ball_dist(Ã_n, T̂_ref)`, the same distance through the ball.
    pub dist_ball: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxProfile {
    pub rows: Vec<ProfileRow>,
    /// `‖block_11(T_p) - T‖`.
    pub recovery_error: f64,
}

impl ApproxProfile {
    /// Broken profile invariants, empty when all hold: depths run `1..=p`,
    /// the final distance vanishes, every iterate is symmetric.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.rows.iter().enumerate().all(|(i, r)| r.n == i + 1) {
            out.push("depths are not 1..=p".to_string());
        }
        match self.rows.last() {
            Some(last) if last.dist <= PROFILE_TOL => {}
            Some(last) => out.push(format!("final distance {:.3e}", last.dist)),
            None => out.push("empty profile".to_string()),
        }
        for r in &self.rows {
            if !(r.sym_residual <= PROFILE_TOL) {
                out.push(format!(
                    "symmetry residual {:.3e} at n={}",
                    r.sym_residual, r.n
                ));
            }
        }
        out
    }

    pub fn invariants_hold(&self) -> bool {
        self.violations().is_empty()
    }

    /// True when no depth comes closer to the reference than the last one.
    pub fn min_at_full_depth(&self) -> bool {
        match self.rows.last() {
            Some(last) => self.rows.iter().all(|r| r.dist >= last.dist),
            None => false,
        }
    }

    /// Largest gap between the defect-map and ball routes to the distance.
    pub fn route_gap(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.dist - r.dist_ball).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with the fixed column order `n,dist,sym_residual,margin`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,dist,sym_residual,margin\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:e},{:e},{:e}\n",
                r.n, r.dist, r.sym_residual, r.margin
            ));
        }
        s
    }
}

/// Convergence profile of `T_n`, `n = 1..=dim_h`.
pub fn density_profile(
    t: &OperatorHK,
    pair: &ConjugationPair,
    reference: Reference,
) -> Result<ApproxProfile> {
    check_pair(t, pair)?;
    let p = t.dim_h();
    let full = approx_operator(t, pair, p)?;
    let recovery_error = op_norm(&(full.operator.mat().block(0, 0, t.dim_k(), p) - t.mat()));
    let (ref_op, ref_hat) = match reference {
        Reference::FullDepth => (full.operator.clone(), full.a_tilde.clone()),
        Reference::Extension => {
            let (ext, _) = symmetric_extension(t.mat(), &pair.reversed())?;
            let ext = OperatorHK::new(ext);
            let hat = bounded_transform(&ext)?;
            (ext, hat)
        }
    };
    let mut rows = Vec::with_capacity(p);
    for n in 1..=p {
        let step = approx_operator(t, pair, n)?;
        rows.push(ProfileRow {
            n,
            dist: metric_d(&step.operator, &ref_op)?,
            sym_residual: step.sym_residual,
            margin: step.margin,
            dist_ball: ball_dist(&step.a_tilde, &ref_hat)?,
        });
    }
    Ok(ApproxProfile {
        rows,
        recovery_error,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub operator_norm: f64,
    pub invariants_hold: bool,
    pub violations: Vec<String>,
    pub min_at_full_depth: bool,
    pub route_gap: f64,
    pub profile: ApproxProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub dim_h: usize,
    pub dim_k: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_sym_residual: f64,
    pub max_recovery_error: f64,
    pub max_route_gap: f64,
    /// Median of `dist` over trials, per depth `n = 1..=dim_h`.
    pub median_dist: Vec<f64>,
    pub median_non_increasing: bool,
    pub min_at_full_depth_fraction: f64,
    pub all_invariants_hold: bool,
    pub per_trial: Vec<TrialReport>,
}

/// Operator-norm range of ensemble draws; keeps `‖T̂‖ <= 10/√101 ≈ 0.995`.
pub const ENSEMBLE_NORM_RANGE: (f64, f64) = (0.1, 10.0);

/// Draws trial `index` of an ensemble: the operator and its pair.
pub fn ensemble_draw(
    dim_h: usize,
    dim_k: usize,
    seed: u64,
    index: usize,
) -> Result<(OperatorHK, ConjugationPair)> {
    use rand::RngCore;
    let mut rng = random::trial_rng(seed, index as u64);
    let (lo, hi) = ENSEMBLE_NORM_RANGE;
    let t = random::operator(&mut rng, dim_h, dim_k, lo, hi);
    let pair = random_pair(dim_k, dim_h, rng.next_u64())?;
    Ok((t, pair))
}

fn run_trial(dim_h: usize, dim_k: usize, seed: u64, index: usize) -> Result<TrialReport> {
    let (t, pair) = ensemble_draw(dim_h, dim_k, seed, index)?;
    let profile = density_profile(&t, &pair, Reference::FullDepth)?;
    let violations = profile.violations();
    Ok(TrialReport {
        trial: index,
        operator_norm: op_norm(t.mat()),
        invariants_hold: violations.is_empty(),
        violations,
        min_at_full_depth: profile.min_at_full_depth(),
        route_gap: profile.route_gap(),
        profile,
    })
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Runs `trials` independent density profiles in parallel.
pub fn ensemble_experiment(
    dim_h: usize,
    dim_k: usize,
    trials: usize,
    seed: u64,
) -> Result<EnsembleReport> {
    if dim_k == 0 || dim_k > dim_h {
        return Err(Error::BadDims(format!(
            "need 1 <= dim_k <= dim_h, got dim_h={dim_h}, dim_k={dim_k}"
        )));
    }
    if trials == 0 {
        return Err(Error::BadDims("at least one trial".to_string()));
    }
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(dim_h, dim_k, seed, i))
        .collect::<Result<Vec<_>>>()?;

    let median_dist: Vec<f64> = (0..dim_h)
        .map(|k| median(per_trial.iter().map(|t| t.profile.rows[k].dist).collect()))
        .collect();
    let fold_max = |f: &dyn Fn(&TrialReport) -> f64| per_trial.iter().map(f).fold(0.0, f64::max);
    Ok(EnsembleReport {
        dim_h,
        dim_k,
        trials,
        seed,
        max_sym_residual: fold_max(&|t| {
            t.profile
                .rows
                .iter()
                .map(|r| r.sym_residual)
                .fold(0.0, f64::max)
        }),
        max_recovery_error: fold_max(&|t| t.profile.recovery_error),
        max_route_gap: fold_max(&|t| t.route_gap),
        median_non_increasing: median_dist.windows(2).all(|w| w[1] <= w[0]),
        median_dist,
        min_at_full_depth_fraction: per_trial.iter().filter(|t| t.min_at_full_depth).count() as f64
            / trials as f64,
        all_invariants_hold: per_trial.iter().all(|t| t.invariants_hold),
        per_trial,
    })
}
