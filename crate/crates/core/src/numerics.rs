//! Small dense real/complex matrix kernels and derivative estimation.
//!
//! Every linear-algebra problem in this workbench is 4×4 (8×8 at the very
//! worst), so the kernels are deliberately plain: row-major storage, LU
//! elimination with partial pivoting, and a central-difference helper. No
//! blocking, no BLAS, no iterative machinery.

use num_complex::Complex64;
use thiserror::Error;

/// Relative pivot threshold below which elimination reports singularity.
pub const PIVOT_TOL: f64 = 1e-14;

/// Default step for phase derivatives (radians). Callers with unusually
/// scaled signals can pass their own step to the `*_with_step` variants.
pub const DEFAULT_DIFF_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Error)]
pub enum NumericsError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: pivot {pivot:.3e} below {threshold:.3e} at column {col}")]
    SingularMatrix {
        pivot: f64,
        threshold: f64,
        col: usize,
    },
}

/// Scalar types the dense kernels operate on (f64 and Complex64).
pub trait Scalar:
    Copy
    + PartialEq
    + std::fmt::Debug
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;
    fn modulus(self) -> f64;
    fn conjugate(self) -> Self;
    fn from_re(x: f64) -> Self;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn conjugate(self) -> Self {
        self
    }
    fn from_re(x: f64) -> Self {
        x
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn conjugate(self) -> Self {
        self.conj()
    }
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}

/// Dense row-major matrix over `f64` or `Complex64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RealMatrix = Matrix<f64>;
pub type ComplexMatrix = Matrix<Complex64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![T::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::ONE;
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_array<const R: usize, const C: usize>(a: [[T; C]; R]) -> Self {
        Self::from_fn(R, C, |i, j| a[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conjugate())
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "inner dimensions must agree: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == T::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product for an owned column.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|k| self[(i, k)] * v[k])
                    .fold(T::ZERO, |acc, x| acc + x)
            })
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::ZERO, |acc, i| acc + self[(i, i)])
    }

    /// Solve `A·X = B` by LU elimination with partial pivoting.
    ///
    /// Reports [`NumericsError::SingularMatrix`] when a pivot falls below
    /// [`PIVOT_TOL`] times the largest entry of the pivot's original row.
    pub fn solve(&self, rhs: &Self) -> Result<Self, NumericsError> {
        if !self.is_square() {
            return Err(NumericsError::DimensionMismatch(format!(
                "solve needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if rhs.rows != self.rows {
            return Err(NumericsError::DimensionMismatch(format!(
                "rhs has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        // Per-row scale of the original matrix, tracked through swaps.
        let mut scale: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a[(i, j)].modulus()).fold(0.0, f64::max))
            .collect();

        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&p, &q| {
                    a[(p, col)]
                        .modulus()
                        .partial_cmp(&a[(q, col)].modulus())
                        .unwrap()
                })
                .unwrap();
            if pivot_row != col {
                for j in 0..n {
                    let t = a[(col, j)];
                    a[(col, j)] = a[(pivot_row, j)];
                    a[(pivot_row, j)] = t;
                }
                for j in 0..b.cols {
                    let t = b[(col, j)];
                    b[(col, j)] = b[(pivot_row, j)];
                    b[(pivot_row, j)] = t;
                }
                scale.swap(col, pivot_row);
            }
            let pivot = a[(col, col)];
            let threshold = PIVOT_TOL * scale[col].max(f64::MIN_POSITIVE);
            if pivot.modulus() < threshold {
                return Err(NumericsError::SingularMatrix {
                    pivot: pivot.modulus(),
                    threshold,
                    col,
                });
            }
            for row in (col + 1)..n {
                let factor = a[(row, col)] / pivot;
                if factor == T::ZERO {
                    continue;
                }
                a[(row, col)] = T::ZERO;
                for j in (col + 1)..n {
                    a[(row, j)] = a[(row, j)] - factor * a[(col, j)];
                }
                for j in 0..b.cols {
                    b[(row, j)] = b[(row, j)] - factor * b[(col, j)];
                }
            }
        }
        // Back substitution.
        let mut x = Matrix::zeros(n, b.cols);
        for j in 0..b.cols {
            for i in (0..n).rev() {
                let mut acc = b[(i, j)];
                for k in (i + 1)..n {
                    acc = acc - a[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = acc / a[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self, NumericsError> {
        self.solve(&Self::identity(self.rows))
    }

    /// Determinant via LU with partial pivoting. Zero is a valid result.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::ONE;
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&p, &q| {
                    a[(p, col)]
                        .modulus()
                        .partial_cmp(&a[(q, col)].modulus())
                        .unwrap()
                })
                .unwrap();
            if pivot_row != col {
                for j in 0..n {
                    let t = a[(col, j)];
                    a[(col, j)] = a[(pivot_row, j)];
                    a[(pivot_row, j)] = t;
                }
                det = -det;
            }
            let pivot = a[(col, col)];
            if pivot == T::ZERO {
                return T::ZERO;
            }
            det = det * pivot;
            for row in (col + 1)..n {
                let factor = a[(row, col)] / pivot;
                for j in (col + 1)..n {
                    a[(row, j)] = a[(row, j)] - factor * a[(col, j)];
                }
            }
        }
        det
    }

    /// Infinity-norm condition estimate via the explicit inverse. Fine at
    /// these dimensions; returns `f64::INFINITY` for singular input.
    pub fn condition_estimate(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm_inf() * inv.norm_inf(),
            Err(_) => f64::INFINITY,
        }
    }

    fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].modulus()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl RealMatrix {
    /// Lift a real matrix into the complex kernels.
    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            Complex64::new(self[(i, j)], 0.0)
        })
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// ascending. Backward stable, which matters for the uncertainty checks
/// where the interesting eigenvalues sit at zero.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off < 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b < 1e-300 {
                    continue;
                }
                let phase = apq / b;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * b);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = akp * c - akq * (s * phase.conj());
                    let new_kq = akp * (s * phase) + akq * c;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp.conj();
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq.conj();
                }
                let new_pp = c * c * app - 2.0 * c * s * b + s * s * aqq;
                let new_qq = s * s * app + 2.0 * c * s * b + c * c * aqq;
                a[(p, p)] = Complex64::new(new_pp, 0.0);
                a[(q, q)] = Complex64::new(new_qq, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Symmetric two-point derivative estimate, error O(h²) for smooth f.
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    assert!(h > 0.0, "step must be positive");
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central difference for fallible integrands; evaluation failures propagate.
pub fn try_central_difference<E>(
    f: impl Fn(f64) -> Result<f64, E>,
    x: f64,
    h: f64,
) -> Result<f64, E> {
    assert!(h > 0.0, "step must be positive");
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}
