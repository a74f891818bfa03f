//! Complex polynomials and an Aberth-Ehrlich root finder. This is the
//! independent route to equilibrium points, kept separate from the spectral
//! path so the two can cross-check each other.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Polynomial with coefficients in ascending degree order
/// (`coeffs[i]` multiplies `z^i`).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            // multiply by (z - r)
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        Polynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1
            && self.coeffs.last().map(|c| c.norm() == 0.0).unwrap_or(false)
        {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::new(0.0, 0.0));
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::new(vec![Complex64::new(0.0, 0.0)]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }
}

const ABERTH_MAX_ITER: usize = 400;

/// All complex roots (with multiplicity) by simultaneous Aberth-Ehrlich
/// iteration. Returns roots in no particular order.
pub fn aberth_roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::Domain("root finding on the zero polynomial".into()));
    }
    let mut coeffs = p.coeffs().to_vec();
    // roots at the origin: factor out z^m
    let mut zero_roots = 0usize;
    while coeffs.len() > 1 && coeffs[0].norm() == 0.0 {
        coeffs.remove(0);
        zero_roots += 1;
    }
    let n = coeffs.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_roots];
    if n == 0 {
        return Ok(roots);
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();
    let poly = Polynomial::new(monic);
    let deriv = poly.derivative();

    // Cauchy bound for initial guesses on a circle
    let radius = 1.0
        + poly.coeffs()[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut w: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.45;
            Complex64::from_polar(radius.min(1e6), theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..ABERTH_MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pv = poly.eval(w[i]);
            let dv = deriv.eval(w[i]);
            let ratio = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // perturb out of a critical point
                Complex64::new(tol, tol)
            };
            let mut repulse = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = w[i] - w[j];
                    if diff.norm() > 0.0 {
                        repulse += 1.0 / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * repulse;
            let step = if denom.norm() > 1e-300 {
                ratio / denom
            } else {
                ratio
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::Convergence("Aberth iteration produced NaN/Inf".into()));
            }
            w[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + w[i].norm()));
        }
        if max_step <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!(
            "Aberth did not converge in {ABERTH_MAX_ITER} iterations"
        )));
    }
    roots.extend(w);
    Ok(roots)
}
