//! Explicit row-stochastic certificates relating equilibrium points to the
//! charges, and the full hierarchy built on compound matrices.
//!
//! The construction runs through a single unitary frame: take the compression
//! `A' = B* diag(z) B` of the charge diagonal to the hyperplane orthogonal to
//! `v = (√a₁,…,√aₙ)`, Schur-factor `A' = Q T Q*`, and lift the Schur basis
//! back to `Cⁿ` as `vᵢ = B qᵢ` with `vₙ = v`. The adjoint `U` of
//! `[Bq₁ … Bqₙ₋₁ v]` is unitary, diagonalizes `diag(z)` against the lifted
//! frame, and has last row exactly `(√a₁,…,√aₙ)`. First-order certificates
//! are rows of `U ∘ conj(U)`; level-k certificates are rows of
//! `U⁽ᵏ⁾ ∘ conj(U⁽ᵏ⁾)` indexed by subsets avoiding the last position.

use crate::error::{Error, Result};
use crate::linalg::{self, binomial, k_subsets, ComplexMatrix};
use crate::majorization::{verify_certificate, ResidualTriple, WeightedTuple};
use crate::potential::{self, ChargeConfiguration};
use num_complex::Complex64;

/// Overall size cap for hierarchy constructions; compound sizes are further
/// capped at `C(n,k) <= 10^4`.
pub const HIERARCHY_MAX_N: usize = 12;

fn c1() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `m`-th elementary symmetric function of the values.
pub fn elementary_symmetric(values: &[Complex64], m: usize) -> Complex64 {
    debug_assert!(m <= values.len());
    let mut e = vec![Complex64::new(0.0, 0.0); m + 1];
    e[0] = c1();
    for &v in values {
        for j in (1..=m).rev() {
            let lower = e[j - 1];
            e[j] += v * lower;
        }
    }
    e[m]
}

/// Unitary change of basis from the lifted Schur frame to the eigenbasis of
/// `diag(z)`, together with the equilibrium points in Schur order.
pub struct SchurFrame {
    pub u: ComplexMatrix,
    pub w: Vec<Complex64>,
}

pub fn schur_frame(cfg: &ChargeConfiguration) -> Result<SchurFrame> {
    let (compression, basis, v) = potential::compression_parts(cfg)?;
    let schur = linalg::schur_decompose(&compression)?;
    let n = cfg.n();
    // columns of V: lifted Schur vectors B q_i, then v itself
    let mut vmat = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n - 1 {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n - 1 {
                acc += basis[(i, l)] * schur.q[(l, j)];
            }
            vmat[(i, j)] = acc;
        }
        vmat[(i, n - 1)] = v[i];
    }
    Ok(SchurFrame {
        u: vmat.adjoint(),
        w: schur.t.diagonal(),
    })
}

/// First-order certificate: `r_ij = |u_ij|²` over the Schur rows. It
/// realizes `(W, a) ≺ (Z, b)` with uniform `a` and `b_j = (1−a_j)/(n−1)`,
/// simultaneously for every affine reparametrization `λ·+μ`.
#[derive(Debug, Clone)]
pub struct FirstOrderCertificate {
    pub r: Vec<Vec<f64>>,
    /// equilibrium points in Schur order, matching the rows of `r`
    pub w: Vec<Complex64>,
    pub residuals: ResidualTriple,
}

pub fn construct_first_order(cfg: &ChargeConfiguration) -> Result<FirstOrderCertificate> {
    let frame = schur_frame(cfg)?;
    let n = cfg.n();
    let r: Vec<Vec<f64>> = (0..n - 1)
        .map(|i| (0..n).map(|j| frame.u[(i, j)].norm_sqr()).collect())
        .collect();
    let (x, y) = dbs_pair(cfg, &frame.w, c1(), Complex64::new(0.0, 0.0))?;
    let residuals = verify_certificate(&r, &x, &y)?;
    Ok(FirstOrderCertificate {
        r,
        w: frame.w,
        residuals,
    })
}

/// The weighted pair `(W(λ,μ), a)` and `(Z(λ,μ), b)` of the first-order
/// relation, as planar tuples ready for the LP.
pub fn dbs_pair(
    cfg: &ChargeConfiguration,
    w: &[Complex64],
    lambda: Complex64,
    mu: Complex64,
) -> Result<(WeightedTuple, WeightedTuple)> {
    let n = cfg.n();
    if w.len() + 1 != n {
        return Err(Error::Shape("equilibrium count must be n - 1".into()));
    }
    let wt: Vec<Complex64> = w.iter().map(|&z| lambda * z + mu).collect();
    let zt: Vec<Complex64> = cfg.points().iter().map(|&z| lambda * z + mu).collect();
    let a = vec![1.0 / (n - 1) as f64; n - 1];
    let b: Vec<f64> = cfg
        .charges()
        .iter()
        .map(|&ai| (1.0 - ai) / (n - 1) as f64)
        .collect();
    Ok((
        WeightedTuple::from_complex(&wt, a)?,
        WeightedTuple::from_complex(&zt, b)?,
    ))
}

/// Elementary-symmetric-function vectors of the transformed equilibria and
/// charges over k-subsets, in lexicographic subset order.
#[derive(Debug, Clone)]
pub struct SymmetricVectors {
    pub k: usize,
    pub m: usize,
    pub lambda: Complex64,
    pub mu: Complex64,
    pub w_vec: Vec<Complex64>,
    pub z_vec: Vec<Complex64>,
    pub a_weights: Vec<f64>,
    pub b_weights: Vec<f64>,
}

/// Build the level-k order-m symmetric vectors. `lambda = 0` is allowed and
/// produces constant vectors (the relations degenerate to equalities).
pub fn symmetric_vectors(
    cfg: &ChargeConfiguration,
    w: &[Complex64],
    k: usize,
    m: usize,
    lambda: Complex64,
    mu: Complex64,
) -> Result<SymmetricVectors> {
    let n = cfg.n();
    if w.len() + 1 != n {
        return Err(Error::Shape("equilibrium count must be n - 1".into()));
    }
    if k == 0 || k > n - 1 || m == 0 || m > k {
        return Err(Error::Domain(format!(
            "need 1 <= m <= k <= n-1, got k={k}, m={m}, n={n}"
        )));
    }
    if binomial(n, k) > 10_000 {
        return Err(Error::CapExceeded(format!(
            "C({n},{k}) = {} exceeds cap 10^4",
            binomial(n, k)
        )));
    }
    let wt: Vec<Complex64> = w.iter().map(|&z| lambda * z + mu).collect();
    let zt: Vec<Complex64> = cfg.points().iter().map(|&z| lambda * z + mu).collect();
    let w_vec: Vec<Complex64> = k_subsets(n - 1, k)
        .iter()
        .map(|s| {
            let vals: Vec<Complex64> = s.iter().map(|&i| wt[i]).collect();
            elementary_symmetric(&vals, m)
        })
        .collect();
    let zsets = k_subsets(n, k);
    let z_vec: Vec<Complex64> = zsets
        .iter()
        .map(|s| {
            let vals: Vec<Complex64> = s.iter().map(|&i| zt[i]).collect();
            elementary_symmetric(&vals, m)
        })
        .collect();
    let cnk1 = binomial(n - 1, k) as f64;
    let a_weights = vec![1.0 / cnk1; w_vec.len()];
    let b_weights: Vec<f64> = zsets
        .iter()
        .map(|s| {
            let mass: f64 = s.iter().map(|&i| cfg.charges()[i]).sum();
            (1.0 - mass) / cnk1
        })
        .collect();
    Ok(SymmetricVectors {
        k,
        m,
        lambda,
        mu,
        w_vec,
        z_vec,
        a_weights,
        b_weights,
    })
}

impl SymmetricVectors {
    /// Planar weighted tuples for the LP route.
    pub fn tuples(&self) -> Result<(WeightedTuple, WeightedTuple)> {
        Ok((
            WeightedTuple::from_complex(&self.w_vec, self.a_weights.clone())?,
            WeightedTuple::from_complex(&self.z_vec, self.b_weights.clone())?,
        ))
    }
}

/// Level-k certificate extracted from the Hadamard square of the k-th
/// compound of the frame unitary.
#[derive(Debug, Clone)]
pub struct DbsCertificate {
    pub k: usize,
    /// `C(n−1,k) × C(n,k)` row-stochastic matrix
    pub r: Vec<Vec<f64>>,
    /// equilibria in Schur order; subset products pair with the rows of `r`
    pub w: Vec<Complex64>,
    /// residuals of the defining relation at `m = k`, `λ = 1`, `μ = 0`
    pub residuals: ResidualTriple,
}

pub fn construct_hierarchy(cfg: &ChargeConfiguration, k: usize) -> Result<DbsCertificate> {
    let n = cfg.n();
    if n > HIERARCHY_MAX_N {
        return Err(Error::CapExceeded(format!(
            "hierarchy construction capped at n <= {HIERARCHY_MAX_N}, got {n}"
        )));
    }
    if k == 0 || k > n - 1 {
        return Err(Error::Domain(format!("level k={k} out of range 1..={}", n - 1)));
    }
    let frame = schur_frame(cfg)?;
    let uk = linalg::compound(&frame.u, k)?;
    // S_k = U^(k) ∘ conj(U^(k)) is doubly stochastic; keep the rows whose
    // index set avoids the last frame position (those index the principal
    // minors of the triangular block, i.e. the products of equilibria).
    let zsets = k_subsets(n, k);
    let keep: Vec<usize> = zsets
        .iter()
        .enumerate()
        .filter(|(_, s)| *s.last().unwrap() < n - 1)
        .map(|(row, _)| row)
        .collect();
    debug_assert_eq!(keep.len(), binomial(n - 1, k));
    let r: Vec<Vec<f64>> = keep
        .iter()
        .map(|&row| {
            (0..zsets.len())
                .map(|col| uk[(row, col)].norm_sqr())
                .collect()
        })
        .collect();
    let sv = symmetric_vectors(cfg, &frame.w, k, k, c1(), Complex64::new(0.0, 0.0))?;
    let (x, y) = sv.tuples()?;
    let residuals = verify_certificate(&r, &x, &y)?;
    Ok(DbsCertificate {
        k,
        r,
        w: frame.w,
        residuals,
    })
}

/// Residuals of an already-built level-k certificate against the order-m
/// relation at an arbitrary `(λ, μ)`. The same matrix must verify for every
/// `1 <= m <= k` and every affine reparametrization.
pub fn verify_hierarchy(
    cert: &DbsCertificate,
    cfg: &ChargeConfiguration,
    m: usize,
    lambda: Complex64,
    mu: Complex64,
) -> Result<ResidualTriple> {
    let sv = symmetric_vectors(cfg, &cert.w, cert.k, m, lambda, mu)?;
    let (x, y) = sv.tuples()?;
    verify_certificate(&cert.r, &x, &y)
}

/// Newton-type identity at level k: absolute difference between the sum of
/// k-fold equilibrium products and the charge-weighted sum of k-fold point
/// products, by direct enumeration.
pub fn check_newton_identities(
    cfg: &ChargeConfiguration,
    w: &[Complex64],
    k: usize,
) -> Result<f64> {
    let n = cfg.n();
    if w.len() + 1 != n {
        return Err(Error::Shape("equilibrium count must be n - 1".into()));
    }
    if k == 0 || k > n - 1 {
        return Err(Error::Domain(format!("level k={k} out of range 1..={}", n - 1)));
    }
    if binomial(n, k) > 10_000 {
        return Err(Error::CapExceeded(format!("C({n},{k}) exceeds cap 10^4")));
    }
    let mut lhs = Complex64::new(0.0, 0.0);
    for s in k_subsets(n - 1, k) {
        lhs += s.iter().map(|&i| w[i]).product::<Complex64>();
    }
    let mut rhs = Complex64::new(0.0, 0.0);
    for s in k_subsets(n, k) {
        let mass: f64 = s.iter().map(|&i| cfg.charges()[i]).sum();
        rhs += (1.0 - mass) * s.iter().map(|&i| cfg.points()[i]).product::<Complex64>();
    }
    Ok((lhs - rhs).norm())
}

/// Magnitude scale of the level-k identity, for normalizing residuals.
pub fn newton_scale(cfg: &ChargeConfiguration, k: usize) -> f64 {
    let mut scale = 0.0f64;
    for s in k_subsets(cfg.n(), k) {
        let mass: f64 = s.iter().map(|&i| cfg.charges()[i]).sum();
        scale += (1.0 - mass).abs()
            * s.iter()
                .map(|&i| cfg.points()[i].norm())
                .product::<f64>();
    }
    scale.max(1.0)
}

/// Moment-inequality margin at (k, m, α):
/// `Σ_z (1 − Σ a) |Π_{k,m}(z)|^α − Σ_w |Π_{k,m}(w)|^α`, expected
/// nonnegative.
pub fn moment_inequality(
    cfg: &ChargeConfiguration,
    w: &[Complex64],
    k: usize,
    m: usize,
    alpha: f64,
) -> Result<f64> {
    let n = cfg.n();
    if m == 0 || m > k || k == 0 || k > n - 1 {
        return Err(Error::Domain(format!("need 1 <= m <= k <= n-1, got k={k}, m={m}")));
    }
    if alpha < 1.0 {
        return Err(Error::Domain(format!("alpha must be >= 1, got {alpha}")));
    }
    if binomial(n, k) > 10_000 {
        return Err(Error::CapExceeded(format!("C({n},{k}) exceeds cap 10^4")));
    }
    let mut lhs = 0.0f64;
    for s in k_subsets(n - 1, k) {
        let vals: Vec<Complex64> = s.iter().map(|&i| w[i]).collect();
        lhs += elementary_symmetric(&vals, m).norm().powf(alpha);
    }
    let mut rhs = 0.0f64;
    for s in k_subsets(n, k) {
        let mass: f64 = s.iter().map(|&i| cfg.charges()[i]).sum();
        let vals: Vec<Complex64> = s.iter().map(|&i| cfg.points()[i]).collect();
        rhs += (1.0 - mass) * elementary_symmetric(&vals, m).norm().powf(alpha);
    }
    Ok(rhs - lhs)
}

/// M-matrix identity for `X = I − xᵀx`: the sum of principal minors of
/// order `m−1` minus `m det X` equals `tr(I − X) = ‖x‖²`. Returns
/// `(lhs, rhs, |lhs − rhs|)`.
pub fn m_matrix_identity(x: &[f64]) -> Result<(f64, f64, f64)> {
    let m = x.len();
    if m == 0 {
        return Err(Error::Domain("x must be nonempty".into()));
    }
    let norm2: f64 = x.iter().map(|v| v * v).sum();
    if x.iter().any(|&v| !(0.0 < v && v < 1.0)) || norm2 >= 1.0 {
        return Err(Error::Domain("need x in (0,1)^m with ||x|| < 1".into()));
    }
    let xmat = ComplexMatrix::from_fn(m, m, |i, j| {
        let e = if i == j { 1.0 } else { 0.0 };
        Complex64::new(e - x[i] * x[j], 0.0)
    });
    let mut lhs = 0.0f64;
    if m == 1 {
        // the single order-zero principal minor is the empty determinant 1
        lhs = 1.0;
    } else {
        for s in k_subsets(m, m - 1) {
            lhs += crate::linalg::determinant(&submatrix(&xmat, &s))?.re;
        }
    }
    lhs -= m as f64 * crate::linalg::determinant(&xmat)?.re;
    let rhs = norm2;
    Ok((lhs, rhs, (lhs - rhs).abs()))
}

fn submatrix(m: &ComplexMatrix, idx: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}
