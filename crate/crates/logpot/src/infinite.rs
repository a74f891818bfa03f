//! Truncation ladders for infinite discrete charge families. All checkable
//! content of the infinite statements lives at finite N: interlacing and
//! certificate checks for real families, nonnegative-convex batteries for
//! bounded complex ones, and zero-count exploration for the open
//! conjectures on bounded, unbounded, and complex-charge families.

use crate::convex::BatterySpec;
use crate::dbs::{construct_first_order, FirstOrderCertificate};
use crate::error::{Error, Result};
use crate::poly::{aberth_roots, Polynomial};
use crate::potential::{solve_equilibria, ChargeConfiguration};
use num_complex::Complex64;

/// Classification of a charge family, fixing which hypotheses apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// real points increasing to the disk radius, positive summable charges
    BoundedReal,
    /// complex points accumulating at a boundary point of the disk
    BoundedComplex,
    /// points escaping to infinity with `Σ a_i/|z_i| < ∞`
    Unbounded,
    /// complex charges with `a_i conj(z_i) > 0`
    ComplexCharge,
}

impl FamilyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyKind::BoundedReal => "bounded-real",
            FamilyKind::BoundedComplex => "bounded-complex",
            FamilyKind::Unbounded => "unbounded",
            FamilyKind::ComplexCharge => "complex-charge",
        }
    }
}

/// Generator rule for an infinite family; infinite objects exist only
/// through these rules plus finite truncation.
#[derive(Debug, Clone)]
pub enum SequenceFamily {
    /// `z_i = rho (1 - base^i)`, `a_i = base^i`
    GeometricReal { rho: f64, base: f64 },
    /// `z_i = rho (1 - base^i) e^{i theta0 / i^2}`, `a_i = base^i`
    GeometricSpiral { rho: f64, base: f64, theta0: f64 },
    /// `z_i = i e^{i twist i}`, `a_i = 1/i^2`
    HarmonicUnbounded { twist: f64 },
    /// `z_i = i e^{i twist i}`, `a_i = i^{-2} e^{i twist i}` so that
    /// `a_i conj(z_i) = 1/i > 0`
    ComplexSpiral { twist: f64 },
    /// explicit list; `charges` may be complex only for the complex kind
    PointList {
        kind: FamilyKind,
        rho: Option<f64>,
        points: Vec<Complex64>,
        charges: Vec<Complex64>,
    },
}

impl SequenceFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            SequenceFamily::GeometricReal { .. } => FamilyKind::BoundedReal,
            SequenceFamily::GeometricSpiral { .. } => FamilyKind::BoundedComplex,
            SequenceFamily::HarmonicUnbounded { .. } => FamilyKind::Unbounded,
            SequenceFamily::ComplexSpiral { .. } => FamilyKind::ComplexCharge,
            SequenceFamily::PointList { kind, .. } => *kind,
        }
    }

    /// Disk radius for bounded kinds.
    pub fn rho(&self) -> Option<f64> {
        match self {
            SequenceFamily::GeometricReal { rho, .. }
            | SequenceFamily::GeometricSpiral { rho, .. } => Some(*rho),
            SequenceFamily::PointList { rho, .. } => *rho,
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceFamily::GeometricReal { rho, base }
            | SequenceFamily::GeometricSpiral { rho, base, .. } => {
                if !(*rho > 0.0) {
                    return Err(Error::Domain("rho must be positive".into()));
                }
                if !(0.0 < *base && *base < 1.0) {
                    return Err(Error::Domain("base must lie in (0,1)".into()));
                }
                Ok(())
            }
            SequenceFamily::HarmonicUnbounded { .. } | SequenceFamily::ComplexSpiral { .. } => {
                Ok(())
            }
            SequenceFamily::PointList {
                kind,
                rho,
                points,
                charges,
            } => {
                if points.len() != charges.len() || points.is_empty() {
                    return Err(Error::Domain("point list needs matching nonempty data".into()));
                }
                if *kind != FamilyKind::ComplexCharge && charges.iter().any(|a| a.im != 0.0) {
                    return Err(Error::Domain(
                        "complex charges only allowed for the complex-charge kind".into(),
                    ));
                }
                if let Some(r) = rho {
                    if matches!(kind, FamilyKind::BoundedReal | FamilyKind::BoundedComplex)
                        && points.iter().any(|z| z.norm() >= *r)
                    {
                        return Err(Error::Domain("bounded family has |z_i| >= rho".into()));
                    }
                }
                Ok(())
            }
        }
    }

    /// The i-th term (1-based): position and (possibly complex) charge.
    pub fn term(&self, i: usize) -> Result<(Complex64, Complex64)> {
        debug_assert!(i >= 1);
        let fi = i as f64;
        match self {
            SequenceFamily::GeometricReal { rho, base } => Ok((
                Complex64::new(rho * (1.0 - base.powi(i as i32)), 0.0),
                Complex64::new(base.powi(i as i32), 0.0),
            )),
            SequenceFamily::GeometricSpiral { rho, base, theta0 } => Ok((
                Complex64::from_polar(rho * (1.0 - base.powi(i as i32)), theta0 / (fi * fi)),
                Complex64::new(base.powi(i as i32), 0.0),
            )),
            SequenceFamily::HarmonicUnbounded { twist } => Ok((
                Complex64::from_polar(fi, twist * fi),
                Complex64::new(1.0 / (fi * fi), 0.0),
            )),
            SequenceFamily::ComplexSpiral { twist } => Ok((
                Complex64::from_polar(fi, twist * fi),
                Complex64::from_polar(1.0 / (fi * fi), twist * fi),
            )),
            SequenceFamily::PointList { points, charges, .. } => {
                if i > points.len() {
                    return Err(Error::Domain(format!(
                        "point list exhausted at index {i} (have {})",
                        points.len()
                    )));
                }
                Ok((points[i - 1], charges[i - 1]))
            }
        }
    }
}

/// First `n` terms as a positive charge configuration. Charges are
/// renormalized to total 1 when the flag is set; the zeros of the field do
/// not depend on that positive rescaling.
pub fn truncate(
    family: &SequenceFamily,
    n: usize,
    renormalize: bool,
) -> Result<ChargeConfiguration> {
    family.validate()?;
    if family.kind() == FamilyKind::ComplexCharge {
        return Err(Error::Domain(
            "complex-charge families have no positive-charge truncation".into(),
        ));
    }
    let mut points = Vec::with_capacity(n);
    let mut charges = Vec::with_capacity(n);
    for i in 1..=n {
        let (z, a) = family.term(i)?;
        points.push(z);
        charges.push(a.re);
    }
    let cfg = ChargeConfiguration::new(points, charges)
        .map_err(|e| Error::Domain(format!("generator collision: {e}")))?;
    Ok(if renormalize { cfg.normalize() } else { cfg })
}

/// First `n` terms of a complex-charge family.
pub fn truncate_complex(
    family: &SequenceFamily,
    n: usize,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    family.validate()?;
    let mut points = Vec::with_capacity(n);
    let mut charges = Vec::with_capacity(n);
    for i in 1..=n {
        let (z, a) = family.term(i)?;
        points.push(z);
        charges.push(a);
    }
    Ok((points, charges))
}

/// Strict interlacing report for a real configuration.
#[derive(Debug, Clone)]
pub struct InterlacingReport {
    pub interlaced: bool,
    /// merged pole/zero pattern along the axis, e.g. "z w z w z"
    pub pattern: String,
    /// smallest gap between consecutive poles and zeros, in units of spread
    pub min_gap_ratio: f64,
    pub max_residual: f64,
}

/// Check `z_(1) < w_(1) < z_(2) < ... < w_(n-1) < z_(n)` strictly, with
/// gaps larger than `1e-12` times the spread.
pub fn interlacing_check(cfg: &ChargeConfiguration) -> Result<InterlacingReport> {
    if !cfg.is_real(1e-12) {
        return Err(Error::Domain("interlacing check needs a real configuration".into()));
    }
    let eq = solve_equilibria(cfg, f64::INFINITY)?;
    let mut zs: Vec<f64> = cfg.points().iter().map(|z| z.re).collect();
    let mut ws: Vec<f64> = eq.points.iter().map(|w| w.re).collect();
    zs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let spread = zs[zs.len() - 1] - zs[0];
    let mut min_gap = f64::INFINITY;
    let mut ok = true;
    let mut pattern = String::new();
    for i in 0..zs.len() {
        if i > 0 {
            pattern.push(' ');
        }
        pattern.push('z');
        if i < ws.len() {
            pattern.push_str(" w");
            let left = ws[i] - zs[i];
            let right = zs[i + 1] - ws[i];
            min_gap = min_gap.min(left).min(right);
            if !(left > 1e-12 * spread && right > 1e-12 * spread) {
                ok = false;
            }
        }
    }
    Ok(InterlacingReport {
        interlaced: ok,
        pattern,
        min_gap_ratio: if spread > 0.0 { min_gap / spread } else { 0.0 },
        max_residual: eq.max_residual(),
    })
}

/// First-order certificate for a real configuration, with the finite-level
/// column identity `Σ_i r_ij = 1 − a_j` checked to `1e-8` (the infinite
/// statement only gives an inequality; finite truncations give equality).
pub fn t7_certificate(cfg: &ChargeConfiguration) -> Result<(FirstOrderCertificate, f64)> {
    if !cfg.is_real(1e-12) {
        return Err(Error::Domain("t7 certificate needs a real configuration".into()));
    }
    let cert = construct_first_order(cfg)?;
    let n = cfg.n();
    let mut col_residual = 0.0f64;
    for j in 0..n {
        let col: f64 = (0..n - 1).map(|i| cert.r[i][j]).sum();
        col_residual = col_residual.max((col - (1.0 - cfg.charges()[j])).abs());
    }
    if col_residual > 1e-8 {
        return Err(Error::Convergence(format!(
            "column sums deviate from 1 - a_j by {col_residual:.3e}"
        )));
    }
    Ok((cert, col_residual))
}

/// Worst margin of `Σ (1−a_i) Φ(λz_i+μ) − Σ Φ(λw_j+μ)` over a battery of
/// nonnegative convex functions. Signed convex functions are excluded by
/// construction: for them only the barycenter identity survives in the
/// infinite setting.
pub fn t8_battery(
    cfg: &ChargeConfiguration,
    lambda: Complex64,
    mu: Complex64,
    spec: &BatterySpec,
) -> Result<(f64, String)> {
    let eq = solve_equilibria(cfg, f64::INFINITY)?;
    let zt: Vec<Complex64> = cfg.points().iter().map(|&z| lambda * z + mu).collect();
    let wt: Vec<Complex64> = eq.points.iter().map(|&w| lambda * w + mu).collect();
    let fns = spec.functions(&zt);
    let mut worst = f64::INFINITY;
    let mut worst_fn = String::new();
    for f in &fns {
        let rhs: f64 = zt
            .iter()
            .zip(cfg.charges())
            .map(|(&z, &a)| (1.0 - a) * f.eval(z))
            .sum();
        let lhs: f64 = wt.iter().map(|&w| f.eval(w)).sum();
        let margin = rhs - lhs;
        if margin < worst {
            worst = margin;
            worst_fn = f.describe();
        }
    }
    Ok((worst, worst_fn))
}

/// Counting region for the zero explorer.
#[derive(Debug, Clone, Copy)]
pub enum Region {
    Disk { center: Complex64, radius: f64 },
    Annulus { center: Complex64, inner: f64, outer: f64 },
}

impl Region {
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::Disk { center, radius } => (z - center).norm() < radius,
            Region::Annulus { center, inner, outer } => {
                let r = (z - center).norm();
                inner <= r && r < outer
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LadderLevel {
    pub n: usize,
    pub zeros: Vec<Complex64>,
    pub in_region: usize,
    pub max_residual: f64,
    /// largest matched displacement from the previous level, if any matched
    pub max_step: Option<f64>,
}

/// A zero tracked across consecutive ladder levels.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// index into the level list where this zero first appeared
    pub start_level: usize,
    pub points: Vec<Complex64>,
    /// displacement at each extension step
    pub steps: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct LadderReport {
    pub levels: Vec<LadderLevel>,
    pub trajectories: Vec<Trajectory>,
}

/// Field numerator for possibly-complex charges, normalized monic.
fn complex_numerator(points: &[Complex64], charges: &[Complex64]) -> Result<Polynomial> {
    let n = points.len();
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    for (i, &a) in charges.iter().enumerate() {
        let mut prod = vec![Complex64::new(0.0, 0.0); n];
        prod[0] = Complex64::new(1.0, 0.0);
        let mut deg = 0usize;
        for (j, &z) in points.iter().enumerate() {
            if j == i {
                continue;
            }
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
    let p = Polynomial::new(acc);
    if p.is_zero() {
        return Err(Error::Domain("charge sum cancels the field numerator".into()));
    }
    let lead = *p.coeffs().last().unwrap();
    if lead.norm() < 1e-12 * p.max_coeff_norm() {
        return Err(Error::Domain(
            "leading coefficient nearly cancels; truncated degree is ambiguous".into(),
        ));
    }
    Ok(p.scale(1.0 / lead))
}

fn zeros_at_level(family: &SequenceFamily, n: usize) -> Result<(Vec<Complex64>, f64)> {
    match family.kind() {
        FamilyKind::ComplexCharge => {
            let (points, charges) = truncate_complex(family, n)?;
            let p = complex_numerator(&points, &charges)?;
            let roots = aberth_roots(&p, 1e-12)?;
            let deg = p.degree();
            let max_residual = roots
                .iter()
                .map(|&w| p.eval(w).norm() / (1.0 + w.norm().powi(deg as i32)))
                .fold(0.0, f64::max);
            Ok((roots, max_residual))
        }
        _ => {
            let cfg = truncate(family, n, true)?;
            if cfg.n() < 2 {
                return Ok((Vec::new(), 0.0));
            }
            let eq = solve_equilibria(&cfg, f64::INFINITY)?;
            let max_residual = eq.max_residual();
            Ok((eq.points, max_residual))
        }
    }
}

/// Solve the family at each level, count zeros inside the region, and match
/// zeros between consecutive levels by nearest neighbor. A match is rejected
/// when its distance exceeds half the minimal inter-zero gap at the new
/// level; unmatched zeros start new trajectories.
pub fn zero_count_explorer(
    family: &SequenceFamily,
    levels: &[usize],
    region: &Region,
) -> Result<LadderReport> {
    if levels.is_empty() {
        return Err(Error::Domain("ladder needs at least one level".into()));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("ladder levels must be strictly increasing".into()));
    }
    let mut report = LadderReport {
        levels: Vec::with_capacity(levels.len()),
        trajectories: Vec::new(),
    };
    // index of the trajectory currently ending at each zero of the previous level
    let mut live: Vec<usize> = Vec::new();
    let mut prev: Vec<Complex64> = Vec::new();
    for (lvl_idx, &n) in levels.iter().enumerate() {
        let (zeros, max_residual) = zeros_at_level(family, n)?;
        // rejection threshold per zero: half the gap to its nearest sibling
        // (a global minimum would reject everything once the tail of a
        // clustering family compresses the smallest gap)
        let local_gap: Vec<f64> = (0..zeros.len())
            .map(|i| {
                let mut gap = f64::INFINITY;
                for j in 0..zeros.len() {
                    if j != i {
                        gap = gap.min((zeros[i] - zeros[j]).norm());
                    }
                }
                gap
            })
            .collect();
        let mut assigned_new = vec![false; zeros.len()];
        let mut next_live = vec![usize::MAX; zeros.len()];
        let mut max_step: Option<f64> = None;
        if !prev.is_empty() && !zeros.is_empty() {
            let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
            for (pi, &pz) in prev.iter().enumerate() {
                for (ni, &nz) in zeros.iter().enumerate() {
                    pairs.push(((pz - nz).norm(), pi, ni));
                }
            }
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let mut used_prev = vec![false; prev.len()];
            for (d, pi, ni) in pairs {
                if used_prev[pi] || assigned_new[ni] || d > 0.5 * local_gap[ni] {
                    continue;
                }
                used_prev[pi] = true;
                assigned_new[ni] = true;
                let traj = live[pi];
                report.trajectories[traj].points.push(zeros[ni]);
                report.trajectories[traj].steps.push(d);
                next_live[ni] = traj;
                max_step = Some(max_step.unwrap_or(0.0).max(d));
            }
        }
        for (ni, &z) in zeros.iter().enumerate() {
            if !assigned_new[ni] {
                next_live[ni] = report.trajectories.len();
                report.trajectories.push(Trajectory {
                    start_level: lvl_idx,
                    points: vec![z],
                    steps: Vec::new(),
                });
            }
        }
        let in_region = zeros.iter().filter(|&&z| region.contains(z)).count();
        report.levels.push(LadderLevel {
            n,
            zeros: zeros.clone(),
            in_region,
            max_residual,
            max_step,
        });
        live = next_live;
        prev = zeros;
    }
    Ok(report)
}
