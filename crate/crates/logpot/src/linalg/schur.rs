use super::{ComplexMatrix, MAX_EIGEN_DIM};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Unitary `Q` and upper triangular `T` with `A = Q T Q*`.
#[derive(Debug, Clone)]
pub struct SchurForm {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

impl SchurForm {
    /// Eigenvalues in Schur order (diagonal of `T`).
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.t.diagonal()
    }
}

const MAX_SWEEPS_PER_EIGENVALUE: usize = 30;

/// Complex Schur decomposition: Hessenberg reduction by Householder
/// reflections followed by single-shift QR with Wilkinson shifts.
/// Subdiagonal entries deflate once `|h[i+1][i]| <= eps*(|h[i][i]| + |h[i+1][i+1]|)`.
pub fn schur_decompose(a: &ComplexMatrix) -> Result<SchurForm> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "schur needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let n = a.rows();
    if n > MAX_EIGEN_DIM {
        return Err(Error::CapExceeded(format!(
            "dimension {n} exceeds eigensolver cap {MAX_EIGEN_DIM}"
        )));
    }
    let mut t = a.clone();
    let mut q = ComplexMatrix::identity(n);
    if n <= 1 {
        return Ok(SchurForm { q, t });
    }

    hessenberg(&mut t, &mut q);

    let hnorm = t.max_norm();
    let eps = f64::EPSILON;
    let floor = eps * hnorm;

    let mut hi = n - 1;
    let mut sweeps_here = 0usize;
    while hi > 0 {
        // deflate negligible subdiagonals
        for i in 0..hi {
            let thr = (eps * (t[(i, i)].norm() + t[(i + 1, i + 1)].norm())).max(floor * eps);
            if t[(i + 1, i)].norm() <= thr {
                t[(i + 1, i)] = Complex64::new(0.0, 0.0);
            }
        }
        if t[(hi, hi - 1)] == Complex64::new(0.0, 0.0) {
            hi -= 1;
            sweeps_here = 0;
            continue;
        }
        let mut lo = hi;
        while lo > 0 && t[(lo, lo - 1)] != Complex64::new(0.0, 0.0) {
            lo -= 1;
        }
        sweeps_here += 1;
        if sweeps_here > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::Convergence(format!(
                "QR iteration exceeded {MAX_SWEEPS_PER_EIGENVALUE} sweeps for eigenvalue {hi}"
            )));
        }
        let shift = if sweeps_here % 10 == 0 {
            // exceptional shift to break rare symmetric stalls
            t[(hi, hi)] + Complex64::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&t, hi)
        };
        qr_sweep(&mut t, &mut q, lo, hi, shift);
    }

    // exact triangular cleanup
    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(SchurForm { q, t })
}

/// Reduce to upper Hessenberg form, accumulating the transform into `q`.
fn hessenberg(h: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1; // length of the column tail to reflect
        let mut w: Vec<Complex64> = (0..m).map(|i| h[(k + 1 + i, k)]).collect();
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= f64::EPSILON * h.max_norm() {
            continue;
        }
        let alpha = if w[0].norm() > 0.0 {
            -w[0] / w[0].norm() * norm
        } else {
            Complex64::new(-norm, 0.0)
        };
        w[0] -= alpha;
        let wn2 = w.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if wn2 == 0.0 {
            continue;
        }
        let scale = 2.0 / wn2;
        // rows k+1..n: H <- P H with P = I - 2 w w* / |w|^2
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in 0..m {
                dot += w[i].conj() * h[(k + 1 + i, j)];
            }
            dot *= scale;
            for i in 0..m {
                let sub = w[i] * dot;
                h[(k + 1 + i, j)] -= sub;
            }
        }
        // columns k+1..n: H <- H P
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in 0..m {
                dot += h[(i, k + 1 + j)] * w[j];
            }
            dot *= scale;
            for j in 0..m {
                let sub = dot * w[j].conj();
                h[(i, k + 1 + j)] -= sub;
            }
        }
        // accumulate: Q <- Q P
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in 0..m {
                dot += q[(i, k + 1 + j)] * w[j];
            }
            dot *= scale;
            for j in 0..m {
                let sub = dot * w[j].conj();
                q[(i, k + 1 + j)] -= sub;
            }
        }
        // exact zeros below the first subdiagonal of this column
        for i in 1..m {
            h[(k + 1 + i, k)] = Complex64::new(0.0, 0.0);
        }
        h[(k + 1, k)] = alpha;
    }
}

/// Eigenvalue of the trailing 2x2 block closest to the corner entry.
fn wilkinson_shift(t: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = t[(hi - 1, hi - 1)];
    let b = t[(hi - 1, hi)];
    let c = t[(hi, hi - 1)];
    let d = t[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

struct Givens {
    c: f64,
    s: Complex64,
}

/// Rotation with `[c, s; -conj(s), c] [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (Givens, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (
            Givens {
                c: 1.0,
                s: Complex64::new(0.0, 0.0),
            },
            a,
        );
    }
    if an == 0.0 {
        return (
            Givens {
                c: 0.0,
                s: b.conj() / bn,
            },
            Complex64::new(bn, 0.0),
        );
    }
    let t = (an * an + bn * bn).sqrt();
    let phase = a / an;
    (
        Givens {
            c: an / t,
            s: phase * b.conj() / t,
        },
        phase * t,
    )
}

/// One explicit single-shift QR step on the active block `[lo, hi]`.
fn qr_sweep(t: &mut ComplexMatrix, q: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    let n = t.rows();
    for i in lo..=hi {
        t[(i, i)] -= shift;
    }
    let mut rots: Vec<Givens> = Vec::with_capacity(hi - lo);
    // left pass: triangularize with rotations on row pairs (i, i+1)
    for i in lo..hi {
        let (g, r) = givens(t[(i, i)], t[(i + 1, i)]);
        t[(i, i)] = r;
        t[(i + 1, i)] = Complex64::new(0.0, 0.0);
        for j in i + 1..n {
            let x = t[(i, j)];
            let y = t[(i + 1, j)];
            t[(i, j)] = g.c * x + g.s * y;
            t[(i + 1, j)] = -g.s.conj() * x + g.c * y;
        }
        rots.push(g);
    }
    // right pass: T <- T G*, Q <- Q G*
    for (idx, g) in rots.iter().enumerate() {
        let i = lo + idx;
        for r in 0..=(i + 1).min(hi) {
            let x = t[(r, i)];
            let y = t[(r, i + 1)];
            t[(r, i)] = g.c * x + g.s.conj() * y;
            t[(r, i + 1)] = -g.s * x + g.c * y;
        }
        for r in 0..n {
            let x = q[(r, i)];
            let y = q[(r, i + 1)];
            q[(r, i)] = g.c * x + g.s.conj() * y;
            q[(r, i + 1)] = -g.s * x + g.c * y;
        }
    }
    for i in lo..=hi {
        t[(i, i)] += shift;
    }
}
