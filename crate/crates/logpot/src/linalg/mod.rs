//! Dense complex linear algebra kernels: orthonormal complements, complex
//! Schur decomposition, a Hermitian eigensolver, and multiplicative/additive
//! compound matrices. Everything here is sized for desk-scale problems
//! (dimensions up to a few hundred, compound sizes capped at 10^4).

mod compound;
mod hermitian;
mod lu;
mod schur;

pub use compound::{additive_compound, binomial, compound, k_subsets};
pub use hermitian::hermitian_eigen;
pub use lu::determinant;
pub use schur::{schur_decompose, SchurForm};

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Index, IndexMut};

pub const MAX_EIGEN_DIM: usize = 2048;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = ComplexMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Shape("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(ComplexMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = ComplexMatrix::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
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

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::Shape("matrix-vector dimension mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("subtraction shape mismatch".into()));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max_ij |(A*A - I)_ij|`; zero for unitary matrices.
    pub fn unitary_defect(&self) -> f64 {
        let gram = self.adjoint().mul(self).expect("square by construction");
        gram.sub(&ComplexMatrix::identity(self.cols))
            .expect("same shape")
            .max_norm()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Sesquilinear inner product `Σ xᵢ ȳᵢ` (linear in the first argument).
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Entrywise (Hadamard-Schur) product.
pub fn hadamard(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "hadamard shape mismatch: {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(ComplexMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x * y).collect(),
    })
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `v`,
/// returned as the columns of an `n × (n−1)` matrix.
///
/// Built from the Householder reflection mapping `v` to a multiple of `e₁`:
/// the remaining columns of the reflector are orthonormal and orthogonal
/// to `v`.
pub fn orthonormal_complement(v: &[Complex64]) -> Result<ComplexMatrix> {
    let n = v.len();
    if n < 2 {
        return Err(Error::Shape("complement needs dimension >= 2".into()));
    }
    let norm = vec_norm(v);
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "input must be a unit vector (|norm - 1| = {:.3e})",
            (norm - 1.0).abs()
        )));
    }
    // alpha = -phase(v[0]) keeps w = v - alpha e1 away from cancellation.
    let alpha = if v[0].norm() > 0.0 {
        -v[0] / v[0].norm()
    } else {
        Complex64::new(-1.0, 0.0)
    };
    let mut w: Vec<Complex64> = v.to_vec();
    w[0] -= alpha;
    let wn2 = w.iter().map(|z| z.norm_sqr()).sum::<f64>();
    // H = I - 2 w w* / |w|^2 is Hermitian unitary with H v = alpha e1, so
    // columns 2..n of H span v-perp.
    let mut c = ComplexMatrix::zeros(n, n - 1);
    for j in 1..n {
        let scale = 2.0 * w[j].conj() / wn2;
        for i in 0..n {
            let e = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            c[(i, j - 1)] = e - w[i] * scale;
        }
    }
    Ok(c)
}

/// Haar-ish random unitary matrix (modified Gram-Schmidt on a random
/// complex Gaussian-free matrix; good enough for test sweeps).
pub fn random_unitary(n: usize, rng: &mut crate::rng::Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)))
                .collect()
        })
        .collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let proj = inner(&cols[j], &cols[k]);
                let prev = cols[k].clone();
                for (x, p) in cols[j].iter_mut().zip(prev) {
                    *x -= proj * p;
                }
            }
        }
        let norm = vec_norm(&cols[j]);
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complement_of_e1_is_e2() {
        let v = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let m = orthonormal_complement(&v).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 1);
        // single column (0, 1) up to unit phase
        assert!(m[(0, 0)].norm() < 1e-14);
        assert!((m[(1, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complement_of_diagonal_direction() {
        let s = 1.0 / 2f64.sqrt();
        let v = vec![c(s, 0.0), c(s, 0.0)];
        let m = orthonormal_complement(&v).unwrap();
        // column proportional to (1, -1)/sqrt(2)
        let ratio = m[(0, 0)] / m[(1, 0)];
        assert!((ratio + 1.0).norm() < 1e-12);
        assert!((vec_norm(&m.column(0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complement_gram_residual_dim_six() {
        let mut rng = Rng::new(11);
        for _ in 0..20 {
            let mut v: Vec<Complex64> = (0..6)
                .map(|_| c(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)))
                .collect();
            let nv = vec_norm(&v);
            v.iter_mut().for_each(|z| *z /= nv);
            let m = orthonormal_complement(&v).unwrap();
            // Gram residual: columns orthonormal
            assert!(m.unitary_defect() < 1e-12);
            // each column orthogonal to v
            for j in 0..5 {
                assert!(inner(&m.column(j), &v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn complement_rejects_non_unit() {
        let v = vec![c(2.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(orthonormal_complement(&v), Err(Error::Domain(_))));
        let v = vec![c(1.0, 0.0)];
        assert!(matches!(orthonormal_complement(&v), Err(Error::Shape(_))));
    }

    #[test]
    fn hadamard_identities() {
        let mut rng = Rng::new(5);
        let a = ComplexMatrix::from_fn(3, 4, |_, _| {
            c(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0))
        });
        let ones = ComplexMatrix::from_fn(3, 4, |_, _| c(1.0, 0.0));
        let zeros = ComplexMatrix::zeros(3, 4);
        assert_eq!(hadamard(&a, &ones).unwrap(), a);
        assert_eq!(hadamard(&a, &zeros).unwrap(), zeros);
        assert!(hadamard(&a, &ComplexMatrix::zeros(4, 3)).is_err());
    }

    #[test]
    fn hadamard_unitary_conjugate_is_doubly_stochastic() {
        let mut rng = Rng::new(17);
        for n in [2usize, 3, 6] {
            let u = random_unitary(n, &mut rng);
            let s = hadamard(&u, &u.conj()).unwrap();
            for i in 0..n {
                let row: f64 = (0..n).map(|j| s[(i, j)].re).sum();
                let col: f64 = (0..n).map(|j| s[(j, i)].re).sum();
                assert!((row - 1.0).abs() < 1e-12, "row sum {row}");
                assert!((col - 1.0).abs() < 1e-12, "col sum {col}");
                for j in 0..n {
                    assert!(s[(i, j)].im.abs() < 1e-16);
                    assert!(s[(i, j)].re >= 0.0);
                }
            }
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = Rng::new(23);
        let u = random_unitary(8, &mut rng);
        assert!(u.unitary_defect() < 1e-13);
    }
}
