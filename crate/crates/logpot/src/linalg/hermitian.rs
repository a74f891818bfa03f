use super::{ComplexMatrix, MAX_EIGEN_DIM};
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order and a unitary matrix
/// whose columns are the matching eigenvectors (`A V = V diag(λ)`).
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::Shape("hermitian_eigen needs a square matrix".into()));
    }
    let n = a.rows();
    if n > MAX_EIGEN_DIM {
        return Err(Error::CapExceeded(format!(
            "dimension {n} exceeds eigensolver cap {MAX_EIGEN_DIM}"
        )));
    }
    let scale = a.max_norm();
    if a.hermitian_defect() > 1e-12 * scale.max(1e-300) {
        return Err(Error::Domain(format!(
            "matrix is not Hermitian within tolerance (defect {:.3e})",
            a.hermitian_defect()
        )));
    }
    // symmetrize away representation noise
    let mut b = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    if n == 1 {
        return Ok((vec![b[(0, 0)].re], v));
    }

    let fro = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += m[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    };
    let total = fro(&b).max(1e-300);

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += b[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= 1e-15 * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let beta = b[(p, q)];
                let bn = beta.norm();
                if bn <= 1e-300 {
                    b[(p, q)] = Complex64::new(0.0, 0.0);
                    b[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let alpha = b[(p, p)].re;
                let gamma = b[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * bn);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = beta / bn * (t * c);
                // B <- U* B U with U = [[c, s], [-conj(s), c]] on coordinates (p, q)
                for i in 0..n {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    b[(i, p)] = c * bp - s.conj() * bq;
                    b[(i, q)] = s * bp + c * bq;
                }
                for j in 0..n {
                    let bp = b[(p, j)];
                    let bq = b[(q, j)];
                    b[(p, j)] = c * bp - s * bq;
                    b[(q, j)] = s.conj() * bp + c * bq;
                }
                b[(p, q)] = Complex64::new(0.0, 0.0);
                b[(q, p)] = Complex64::new(0.0, 0.0);
                b[(p, p)] = Complex64::new(b[(p, p)].re, 0.0);
                b[(q, q)] = Complex64::new(b[(q, q)].re, 0.0);
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s.conj() * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| b[(i, i)].re).collect();
    order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let vs = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((sorted, vs))
}
