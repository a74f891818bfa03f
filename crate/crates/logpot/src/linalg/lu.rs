use super::ComplexMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Determinant by LU with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::Shape("determinant of non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|idx| m[(idx / n, idx % n)])
        .collect();
    Ok(det_in_place(&mut a, n))
}

/// Determinant of the submatrix with the given (sorted) row/column indices.
pub fn det_submatrix(m: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> Complex64 {
    let k = rows.len();
    debug_assert_eq!(k, cols.len());
    match k {
        0 => Complex64::new(1.0, 0.0),
        1 => m[(rows[0], cols[0])],
        2 => {
            m[(rows[0], cols[0])] * m[(rows[1], cols[1])]
                - m[(rows[0], cols[1])] * m[(rows[1], cols[0])]
        }
        _ => {
            let mut a: Vec<Complex64> = Vec::with_capacity(k * k);
            for &i in rows {
                for &j in cols {
                    a.push(m[(i, j)]);
                }
            }
            det_in_place(&mut a, k)
        }
    }
}

fn det_in_place(a: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        // partial pivot
        let mut pivot = col;
        let mut best = a[col * n + col].norm();
        for row in col + 1..n {
            let mag = a[row * n + col].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for row in col + 1..n {
            let factor = a[row * n + col] / p;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col + 1..n {
                let sub = factor * a[col * n + j];
                a[row * n + j] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    #[test]
    fn identity_det_is_one() {
        let det = determinant(&ComplexMatrix::identity(5)).unwrap();
        assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_det_is_product() {
        let d = ComplexMatrix::diag(&[
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 3.0),
            Complex64::new(-1.0, 1.0),
        ]);
        let expect = Complex64::new(2.0, 0.0) * Complex64::new(0.0, 3.0) * Complex64::new(-1.0, 1.0);
        assert!((determinant(&d).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = Rng::new(9);
        for _ in 0..10 {
            let a = ComplexMatrix::from_fn(4, 4, |_, _| {
                Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0))
            });
            let b = ComplexMatrix::from_fn(4, 4, |_, _| {
                Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0))
            });
            let lhs = determinant(&a.mul(&b).unwrap()).unwrap();
            let rhs = determinant(&a).unwrap() * determinant(&b).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn empty_submatrix_det_is_one() {
        let m = ComplexMatrix::identity(3);
        assert_eq!(det_submatrix(&m, &[], &[]), Complex64::new(1.0, 0.0));
    }
}
