//! Planar charge configurations, their fields and logarithmic potentials,
//! and the equilibrium points (zeros of the field). Equilibria are computed
//! spectrally from the compression of `diag(z)` to the hyperplane orthogonal
//! to `(√a₁,…,√aₙ)`; expanding the field into a polynomial and root-finding
//! it is the independent cross-check route.

use crate::error::{Error, Result};
use crate::geometry;
use crate::linalg::{self, ComplexMatrix};
use crate::poly::{aberth_roots, Polynomial};
use num_complex::Complex64;

/// Default separation factor under which two points count as coincident.
pub const SEP_FACTOR: f64 = 1e-9;

/// Distinct planar points carrying positive charges.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeConfiguration {
    points: Vec<Complex64>,
    charges: Vec<f64>,
    normalized: bool,
}

impl ChargeConfiguration {
    /// Validating constructor; coincident points (closer than
    /// `SEP_FACTOR * diameter`) are rejected.
    pub fn new(points: Vec<Complex64>, charges: Vec<f64>) -> Result<Self> {
        Self::build(points, charges, false)
    }

    /// Like [`ChargeConfiguration::new`] but coincident points are merged,
    /// summing their charges.
    pub fn new_merging_coincident(points: Vec<Complex64>, charges: Vec<f64>) -> Result<Self> {
        Self::build(points, charges, true)
    }

    fn build(points: Vec<Complex64>, charges: Vec<f64>, merge: bool) -> Result<Self> {
        if points.len() != charges.len() {
            return Err(Error::Shape(format!(
                "{} points but {} charges",
                points.len(),
                charges.len()
            )));
        }
        if points.is_empty() {
            return Err(Error::Domain("configuration needs at least one point".into()));
        }
        for (i, z) in points.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::Domain(format!("point {i} is not finite")));
            }
        }
        for (i, &a) in charges.iter().enumerate() {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::Domain(format!("charge {i} must be positive, got {a}")));
            }
        }
        let mut cfg = ChargeConfiguration {
            points,
            charges,
            normalized: false,
        };
        let sep = cfg.separation();
        if merge {
            let mut pts: Vec<Complex64> = Vec::new();
            let mut chs: Vec<f64> = Vec::new();
            for (z, a) in cfg.points.iter().zip(&cfg.charges) {
                if let Some(k) = pts.iter().position(|p| (p - z).norm() <= sep) {
                    chs[k] += a;
                } else {
                    pts.push(*z);
                    chs.push(*a);
                }
            }
            cfg.points = pts;
            cfg.charges = chs;
        } else {
            for i in 0..cfg.points.len() {
                for j in i + 1..cfg.points.len() {
                    if (cfg.points[i] - cfg.points[j]).norm() <= sep {
                        return Err(Error::Domain(format!(
                            "points {i} and {j} coincide within separation {sep:.3e}"
                        )));
                    }
                }
            }
        }
        Ok(cfg)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn charges(&self) -> &[f64] {
        &self.charges
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn total_charge(&self) -> f64 {
        self.charges.iter().sum()
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                d = d.max((self.points[i] - self.points[j]).norm());
            }
        }
        d
    }

    /// Minimum distance under which a point counts as sitting on a charge.
    pub fn separation(&self) -> f64 {
        let d = self.diameter();
        SEP_FACTOR * if d > 0.0 { d } else { 1.0 }
    }

    /// Rescale charges to total 1. Points are untouched; idempotent.
    pub fn normalize(&self) -> ChargeConfiguration {
        let total = self.total_charge();
        ChargeConfiguration {
            points: self.points.clone(),
            charges: self.charges.iter().map(|a| a / total).collect(),
            normalized: true,
        }
    }

    /// The same charge sites with transformed positions `λ z + μ`.
    pub fn affine(&self, lambda: Complex64, mu: Complex64) -> Result<ChargeConfiguration> {
        if lambda.norm() == 0.0 {
            return Err(Error::Domain("affine map must have lambda != 0".into()));
        }
        Ok(ChargeConfiguration {
            points: self.points.iter().map(|&z| lambda * z + mu).collect(),
            charges: self.charges.clone(),
            normalized: self.normalized,
        })
    }

    fn require_normalized(&self, what: &str) -> Result<()> {
        if !self.normalized {
            return Err(Error::Domain(format!("{what} requires a normalized configuration")));
        }
        Ok(())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.diameter().max(1e-300);
        self.points.iter().all(|z| z.im.abs() <= tol * scale)
    }
}

/// The electrostatic force `f(z) = Σ aᵢ / (z − zᵢ)`.
pub fn field_eval(cfg: &ChargeConfiguration, z: Complex64) -> Result<Complex64> {
    let sep = cfg.separation();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&p, &a) in cfg.points().iter().zip(cfg.charges()) {
        let d = z - p;
        if d.norm() <= sep {
            return Err(Error::Domain(format!(
                "evaluation point within {sep:.3e} of the pole at {p}"
            )));
        }
        acc += a / d;
    }
    Ok(acc)
}

/// Gauge for the logarithmic potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// `Σ aᵢ log|1 − z/zᵢ|`; undefined when some charge sits at the origin.
    Reference,
    /// `Σ aᵢ log|z − zᵢ|`; differs from `Reference` by the constant
    /// `Σ aᵢ log|zᵢ|`. Both have gradient `conj(f)`.
    Shifted,
}

/// Logarithmic potential of the configuration at `z`.
pub fn potential_eval(cfg: &ChargeConfiguration, z: Complex64, gauge: Gauge) -> Result<f64> {
    let sep = cfg.separation();
    let mut acc = 0.0f64;
    for (&p, &a) in cfg.points().iter().zip(cfg.charges()) {
        let d = z - p;
        if d.norm() <= sep {
            return Err(Error::Domain("potential evaluated at a pole".into()));
        }
        match gauge {
            Gauge::Reference => {
                if p.norm() <= sep {
                    return Err(Error::Domain(
                        "reference gauge undefined with a charge at the origin".into(),
                    ));
                }
                acc += a * (1.0 - z / p).norm().ln();
            }
            Gauge::Shifted => acc += a * d.norm().ln(),
        }
    }
    Ok(acc)
}

/// Weighted barycenter `ζ = Σ aᵢ zᵢ`.
pub fn barycenter(cfg: &ChargeConfiguration) -> Result<Complex64> {
    cfg.require_normalized("barycenter")?;
    Ok(cfg
        .points()
        .iter()
        .zip(cfg.charges())
        .map(|(&z, &a)| z * a)
        .sum())
}

/// a-weighted variance `σ₂² = Σ aᵢ |zᵢ − ζ|²`.
pub fn weighted_variance(cfg: &ChargeConfiguration) -> Result<f64> {
    let zeta = barycenter(cfg)?;
    Ok(cfg
        .points()
        .iter()
        .zip(cfg.charges())
        .map(|(&z, &a)| a * (z - zeta).norm_sqr())
        .sum())
}

/// Numerator of the field: the monic degree `n−1` polynomial
/// `Σᵢ aᵢ Πⱼ≠ᵢ (z − zⱼ)`, expanded by convolution.
pub fn equilibrium_polynomial(cfg: &ChargeConfiguration) -> Result<Polynomial> {
    cfg.require_normalized("equilibrium polynomial")?;
    let n = cfg.n();
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    for (i, &a) in cfg.charges().iter().enumerate() {
        let mut prod = vec![Complex64::new(0.0, 0.0); n];
        prod[0] = Complex64::new(1.0, 0.0);
        let mut deg = 0usize;
        for (j, &z) in cfg.points().iter().enumerate() {
            if j == i {
                continue;
            }
            // multiply by (x - z)
            deg += 1;
            for d in (1..=deg).rev() {
                prod[d] = prod[d - 1] - z * prod[d];
            }
            prod[0] = -z * prod[0];
        }
        for (dst, src) in acc.iter_mut().zip(&prod) {
            *dst += a * src;
        }
    }
    Ok(Polynomial::new(acc))
}

/// Compression of `diag(z₁,…,zₙ)` to the hyperplane orthogonal to the unit
/// vector `v = (√a₁,…,√aₙ)`: the `(n−1)×(n−1)` matrix `B* diag(z) B` with
/// `B` an orthonormal basis of `v⊥`. Its spectrum is the equilibrium set.
pub fn compression_matrix(cfg: &ChargeConfiguration) -> Result<ComplexMatrix> {
    Ok(compression_parts(cfg)?.0)
}

/// The compression together with the complement basis used to build it.
pub(crate) fn compression_parts(
    cfg: &ChargeConfiguration,
) -> Result<(ComplexMatrix, ComplexMatrix, Vec<Complex64>)> {
    cfg.require_normalized("compression")?;
    let n = cfg.n();
    if n < 2 {
        return Err(Error::Domain("compression needs at least two charges".into()));
    }
    let v: Vec<Complex64> = cfg
        .charges()
        .iter()
        .map(|&a| Complex64::new(a.sqrt(), 0.0))
        .collect();
    let b = linalg::orthonormal_complement(&v)?;
    // B* diag(z) B without forming diag(z)
    let mut m = ComplexMatrix::zeros(n - 1, n - 1);
    for r in 0..n - 1 {
        for c in 0..n - 1 {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += b[(l, r)].conj() * cfg.points()[l] * b[(l, c)];
            }
            m[(r, c)] = acc;
        }
    }
    Ok((m, b, v))
}

/// How an equilibrium set was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Compression,
    Polynomial,
}

impl SolveMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveMethod::Compression => "compression",
            SolveMethod::Polynomial => "polynomial",
        }
    }
}

/// The `n−1` equilibrium points with per-point residual diagnostics.
#[derive(Debug, Clone)]
pub struct EquilibriumSet {
    pub points: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub method: SolveMethod,
}

impl EquilibriumSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Scale-free residual `|P(w)| / (1 + |w|^{n-1})` of the field numerator at
/// a candidate equilibrium.
fn normalized_residuals(p: &Polynomial, points: &[Complex64], n: usize) -> Vec<f64> {
    points
        .iter()
        .map(|&w| p.eval(w).norm() / (1.0 + w.norm().powi(n as i32 - 1)))
        .collect()
}

/// Equilibrium points as eigenvalues of the compression. Collinear
/// configurations are rotated onto the real axis first so that the
/// Hermitian eigensolver applies; general ones go through the complex Schur
/// decomposition. Errors if any normalized residual exceeds `tol`.
pub fn solve_equilibria(cfg: &ChargeConfiguration, tol: f64) -> Result<EquilibriumSet> {
    cfg.require_normalized("equilibrium solve")?;
    let n = cfg.n();
    if n < 2 {
        return Err(Error::Domain("need at least two charges for equilibria".into()));
    }
    let collinear = geometry::is_collinear(cfg.points(), 1e-10);
    let w = if collinear {
        // rotate/translate onto the real axis, solve Hermitian, map back
        let (anchor, dir) = geometry::best_line(cfg.points());
        let flat = cfg.affine(dir.conj(), -dir.conj() * anchor)?;
        let m = compression_matrix(&flat)?;
        let (vals, _) = linalg::hermitian_eigen(&m)?;
        vals.into_iter()
            .map(|x| dir * x + anchor)
            .collect::<Vec<Complex64>>()
    } else {
        let m = compression_matrix(cfg)?;
        linalg::schur_decompose(&m)?.eigenvalues()
    };
    let p = equilibrium_polynomial(cfg)?;
    let residuals = normalized_residuals(&p, &w, n);
    let set = EquilibriumSet {
        points: w,
        residuals,
        method: SolveMethod::Compression,
    };
    if set.max_residual() > tol {
        return Err(Error::Convergence(format!(
            "equilibrium residual {:.3e} exceeds tolerance {tol:.3e}",
            set.max_residual()
        )));
    }
    Ok(set)
}

/// Independent route: expand the field numerator and run the
/// Aberth-Ehrlich root finder on it.
pub fn solve_equilibria_polynomial(cfg: &ChargeConfiguration, tol: f64) -> Result<EquilibriumSet> {
    cfg.require_normalized("equilibrium solve")?;
    let n = cfg.n();
    if n < 2 {
        return Err(Error::Domain("need at least two charges for equilibria".into()));
    }
    let p = equilibrium_polynomial(cfg)?;
    let roots = aberth_roots(&p, 1e-13)?;
    let residuals = normalized_residuals(&p, &roots, n);
    let set = EquilibriumSet {
        points: roots,
        residuals,
        method: SolveMethod::Polynomial,
    };
    if set.max_residual() > tol {
        return Err(Error::Convergence(format!(
            "polynomial-route residual {:.3e} exceeds tolerance {tol:.3e}",
            set.max_residual()
        )));
    }
    Ok(set)
}
