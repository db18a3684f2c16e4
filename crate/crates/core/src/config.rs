//! Numerical tolerances shared by the library, the CLI and the test suites.

/// Every threshold the library acts on, in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative asymmetry `‖P - P*‖ / max(1, ‖P‖)` accepted by the Hermitian
    /// eigensolver before symmetrizing.
    pub herm_guard: f64,
    /// Sweep budget of the cyclic Jacobi iteration.
    pub jacobi_sweeps: usize,
    /// Relative pivot threshold for Gauss-Jordan inversion.
    pub pivot: f64,
    /// Smallest admissible eigenvalue of a defect operator `I - A*A` or `I - AA*`.
    pub defect_floor: f64,
    /// Floor for `I - A* C1 C2 A` in the conjugation pair construction.
    pub lemma_floor: f64,
    /// Residual bound for the invariants of a constructed conjugation pair.
    pub pair: f64,
    /// Residual below which an operator counts as symmetric for a pair.
    pub symmetric: f64,
    /// Margin `1 - ‖A‖` below which inversion of the bounded transform is
    /// flagged as low accuracy.
    pub low_margin: f64,
}

pub const TOL: Tolerances = Tolerances {
    herm_guard: 1e-10,
    jacobi_sweeps: 64,
    pivot: 1e-13,
    defect_floor: 1e-13,
    lemma_floor: 1e-12,
    pair: 1e-10,
    symmetric: 1e-8,
    low_margin: 1e-8,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOL
    }
}
