//! Dense complex linear algebra: the [`CMat`] carrier, a cyclic Jacobi
//! Hermitian eigensolver, Hermitian functional calculus, the spectral norm
//! and Gauss-Jordan inversion.

pub(crate) mod eig;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::config::TOL;
use crate::error::{Error, Result};

pub use eig::{herm_eig, herm_fun, HermSpectrum};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// length mismatches and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadDims(format!("{rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::BadDims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix {rows}x{cols}");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Real matrix from nested rows; panics on ragged input.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Complex matrix from nested rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j])
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Column vector.
    pub fn column(values: &[Complex64]) -> Self {
        Self::from_fn(values.len(), 1, |i, _| values[i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `I - self`, for square matrices.
    pub fn identity_minus(&self) -> Self {
        assert!(
            self.is_square(),
            "identity_minus on {}x{}",
            self.rows,
            self.cols
        );
        let mut m = -self;
        for i in 0..self.rows {
            m[(i, i)] += ONE;
        }
        m
    }

    /// `I + self`, for square matrices.
    pub fn identity_plus(&self) -> Self {
        assert!(
            self.is_square(),
            "identity_plus on {}x{}",
            self.rows,
            self.cols
        );
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] += ONE;
        }
        m
    }

    /// Hermitian part `(P + P*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Copy of the `nr x nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(
            r0 + nr <= self.rows && c0 + nc <= self.cols,
            "block out of range"
        );
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CMat) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "block out of range"
        );
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    /// `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &CMat, b: &CMat) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    /// `[[0, upper], [lower, 0]]`, where `upper` and `lower` share a shape.
    pub fn block_offdiag(upper: &CMat, lower: &CMat) -> Self {
        assert_eq!(
            upper.shape(),
            lower.shape(),
            "off-diagonal blocks must share a shape"
        );
        let (r, c) = upper.shape();
        let mut m = Self::zeros(2 * r, 2 * c);
        m.set_block(0, c, upper);
        m.set_block(r, 0, lower);
        m
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "matvec length mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn assert_same_shape(&self, other: &CMat, op: &str) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in {op}");
    }
}

/// Checks that two matrices share a shape, as an error rather than a panic.
pub fn ensure_same_shape(a: &CMat, b: &CMat) -> Result<()> {
    if a.shape() == b.shape() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        })
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMat {
    type Output = CMat;

    fn add(self, rhs: &CMat) -> CMat {
        self.assert_same_shape(rhs, "add");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMat {
    type Output = CMat;

    fn sub(self, rhs: &CMat) -> CMat {
        self.assert_same_shape(rhs, "sub");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CMat {
    type Output = CMat;

    fn neg(self) -> CMat {
        self.map(|z| -z)
    }
}

impl Mul for &CMat {
    type Output = CMat;

    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(
            self.cols, rhs.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CMat {
            type Output = CMat;
            fn $m(self, rhs: CMat) -> CMat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CMat> for CMat {
            type Output = CMat;
            fn $m(self, rhs: &CMat) -> CMat {
                (&self).$m(rhs)
            }
        }
        impl $tr<CMat> for &CMat {
            type Output = CMat;
            fn $m(self, rhs: CMat) -> CMat {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CMat {
    type Output = CMat;

    fn neg(self) -> CMat {
        -&self
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Spectral norm: the largest singular value, from the smaller Gram matrix.
pub fn op_norm(a: &CMat) -> f64 {
    let gram = if a.rows <= a.cols {
        a * a.adjoint()
    } else {
        a.adjoint() * a
    };
    // Exactly Hermitian by construction after symmetrizing, so the guard cannot trip.
    let gram = gram.hermitian_part();
    match herm_eig(&gram) {
        Ok(spec) => spec
            .eigenvalues
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(0.0)
            .sqrt(),
        Err(_) => f64::NAN,
    }
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Fails with [`Error::Singular`] when a pivot falls below `1e-13 * ‖A‖`.
pub fn inverse(a: &CMat) -> Result<CMat> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: (a.cols, a.rows),
        });
    }
    let n = a.rows;
    let scale = op_norm(a);
    let threshold = TOL.pivot * scale;
    let mut work = a.clone();
    let mut inv = CMat::identity(n);
    for col in 0..n {
        let (piv_row, piv_abs) =
            (col..n)
                .map(|r| (r, work[(r, col)].norm()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if !(piv_abs > threshold) || piv_abs == 0.0 {
            return Err(Error::Singular { pivot: piv_abs });
        }
        work.swap_rows(col, piv_row);
        inv.swap_rows(col, piv_row);
        let p = ONE / work[(col, col)];
        for j in 0..n {
            work[(col, j)] *= p;
            inv[(col, j)] *= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = work[(r, col)];
            if factor == ZERO {
                continue;
            }
            for j in 0..n {
                let wv = work[(col, j)];
                let iv = inv[(col, j)];
                work[(r, j)] -= factor * wv;
                inv[(r, j)] -= factor * iv;
            }
        }
    }
    Ok(inv)
}
