//! Directed and symmetric Hausdorff distances between finite point sets and
//! the weighted-variance bounds relating the charges to the extended set of
//! equilibrium points (equilibria plus the barycenter).

use crate::error::{Error, Result};
use crate::geometry;
use crate::potential::{self, ChargeConfiguration};
use num_complex::Complex64;

/// Exact duplicates never change a Hausdorff distance; dropping them keeps
/// the O(mn) scan small.
fn dedup(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    pts
}

/// `max over s1 of min over s2 of |w − z|`.
pub fn directed_hausdorff(s1: &[Complex64], s2: &[Complex64]) -> Result<f64> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::Domain("Hausdorff distance needs nonempty sets".into()));
    }
    let s1 = dedup(s1);
    let s2 = dedup(s2);
    let mut worst = 0.0f64;
    for w in &s1 {
        let mut best = f64::INFINITY;
        for z in &s2 {
            best = best.min((w - z).norm());
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

/// Symmetrized distance: max of the two directed distances.
pub fn symmetric_hausdorff(s1: &[Complex64], s2: &[Complex64]) -> Result<f64> {
    Ok(directed_hausdorff(s1, s2)?.max(directed_hausdorff(s2, s1)?))
}

/// The equilibria together with the weighted barycenter.
pub fn extended_equilibria(cfg: &ChargeConfiguration, tol: f64) -> Result<Vec<Complex64>> {
    let eq = potential::solve_equilibria(cfg, tol)?;
    let mut out = eq.points;
    out.push(potential::barycenter(cfg)?);
    Ok(out)
}

/// Margin report for the one-sided bound `h(W_e, Z) <= σ₂`.
#[derive(Debug, Clone, Copy)]
pub struct T5Report {
    pub h_w_z: f64,
    pub h_we_z: f64,
    pub sigma2: f64,
    /// `σ₂ − h(W_e, Z)`; nonnegative when the bound holds.
    pub margin: f64,
}

pub fn verify_t5(cfg: &ChargeConfiguration, tol: f64) -> Result<T5Report> {
    let eq = potential::solve_equilibria(cfg, tol)?;
    let mut we = eq.points.clone();
    we.push(potential::barycenter(cfg)?);
    let h_w_z = directed_hausdorff(&eq.points, cfg.points())?;
    let h_we_z = directed_hausdorff(&we, cfg.points())?;
    debug_assert!(h_w_z <= h_we_z + 1e-12);
    let sigma2 = potential::weighted_variance(cfg)?.sqrt();
    Ok(T5Report {
        h_w_z,
        h_we_z,
        sigma2,
        margin: sigma2 - h_we_z,
    })
}

/// Margin report for the collinear two-sided bound `H(Z, W_e) <= σ₂`.
#[derive(Debug, Clone, Copy)]
pub struct T6Report {
    pub h_sym: f64,
    pub sigma2: f64,
    /// `σ₂ − H(Z, W_e)`; nonnegative when the bound holds.
    pub margin: f64,
}

pub fn verify_t6(cfg: &ChargeConfiguration, tol: f64) -> Result<T6Report> {
    if !geometry::is_collinear(cfg.points(), 1e-10) {
        return Err(Error::Domain(
            "two-sided bound requires collinear charges".into(),
        ));
    }
    let we = extended_equilibria(cfg, tol)?;
    let h_sym = symmetric_hausdorff(cfg.points(), &we)?;
    let sigma2 = potential::weighted_variance(cfg)?.sqrt();
    Ok(T6Report {
        h_sym,
        sigma2,
        margin: sigma2 - h_sym,
    })
}
