//! Geometry of the operator ball and complex symmetric operators between two
//! Hilbert spaces, modelled with dense complex matrices.
//!
//! Spaces are `H = C^p` and `K = C^q` with `q <= p`. An operator `T: H -> K`
//! is a `q x p` matrix ([`OperatorHK`]); the open unit ball of `B(K, H)` holds
//! `p x q` contractions ([`BallPoint`]). The bounded transform
//! `T -> (I + T*T)^{-1/2} T*` maps the first set bijectively onto the second,
//! and pulls the ball's invariant distance back to a metric on operators.
//!
//! Module map:
//!
//! * [`matkernel`]: dense complex matrices, Jacobi Hermitian eigensolver,
//!   Hermitian functional calculus, spectral norm, inversion.
//! * [`ball`]: Möbius automorphisms of the ball and the invariant distance.
//! * [`transform`]: bounded transform, defect maps `L_T`/`R_T`, metric `d`.
//! * [`symmetry`]: conjugation pairs, symmetry residuals, symmetric
//!   extensions and the conjugation pair carried by `(I - A*A)^{-1/2} A*`.
//! * [`density`]: truncation pipeline producing complex symmetric
//!   approximants and their convergence profiles.
//! * [`random`]: seeded ensembles shared by tests, the CLI and benches.
//! * [`identities`]: seeded residual checks behind the `identities` command.
//! * [`config`]: numerical tolerances.

// `!(x < bound)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball;
pub mod config;
pub mod density;
mod error;
pub mod identities;
pub mod matkernel;
pub mod random;
pub mod symmetry;
pub mod transform;

pub use ball::{ball_dist, mobius, mobius_inv, poincare, psi, BallPoint};
pub use config::{Tolerances, TOL};
pub use density::{
    approx_operator, density_profile, ensemble_draw, ensemble_experiment, truncate, ApproxProfile,
    ApproxStep, EnsembleReport, ProfileRow, Reference,
};
pub use error::{Error, Result};
pub use matkernel::{herm_eig, herm_fun, inverse, op_norm, CMat, HermSpectrum};
pub use num_complex::Complex64;
pub use symmetry::{
    canonical_pair, conj_apply, lemma4_operator, lemma4_pair, random_pair, symmetric_extension,
    symmetrize, symmetry_residual, ConjugationPair, Direction, Side,
};
pub use transform::{
    bounded_transform, inverse_bounded_transform, l_op, metric_d, metric_d_psi, r_inv_closed, r_op,
    OperatorHK, Recovered,
};
