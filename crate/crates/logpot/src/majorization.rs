//! Decision procedure for the weighted multivariate majorization preorder.
//!
//! `(X, a) ≺ (Y, b)` holds exactly when a row-stochastic matrix `R` exists
//! with `X = R Y` (row-wise mixing) and `b = a R`. Feasibility of that linear
//! system over `r_ij ≥ 0` is decided by a phase-1 simplex with Bland's rule;
//! a feasible run returns the mixing matrix as a certificate, an infeasible
//! one returns a piecewise-linear convex functional violating the
//! convex-function characterization, rebuilt from the terminal dual values
//! and re-verified by direct evaluation before it is reported.

mod lp;

use crate::convex::{BatterySpec, PiecewiseLinearConvex};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default tolerance on `|Σ weights − 1|`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Default certification tolerance on a returned mixing matrix.
pub const CERT_TOL: f64 = 1e-8;

/// A finite list of points in `R^d` with positive probability weights.
/// Point masses (a single vector with weight 1) are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTuple {
    vectors: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl WeightedTuple {
    pub fn new(vectors: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        Self::with_weight_tolerance(vectors, weights, WEIGHT_SUM_TOL)
    }

    pub fn with_weight_tolerance(
        vectors: Vec<Vec<f64>>,
        weights: Vec<f64>,
        tol: f64,
    ) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Domain("weighted tuple needs at least one vector".into()));
        }
        if vectors.len() != weights.len() {
            return Err(Error::Shape(format!(
                "{} vectors but {} weights",
                vectors.len(),
                weights.len()
            )));
        }
        let d = vectors[0].len();
        if d == 0 || vectors.iter().any(|v| v.len() != d) {
            return Err(Error::Shape("vectors must share a positive dimension".into()));
        }
        if vectors.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Domain("vectors must be finite".into()));
        }
        for &w in &weights {
            if !(w.is_finite() && w > 0.0 && w <= 1.0 + tol) {
                return Err(Error::Domain(format!("weight {w} outside (0, 1]")));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::Domain(format!(
                "weights sum to {sum}, expected 1 within {tol:.1e}"
            )));
        }
        Ok(WeightedTuple { vectors, weights })
    }

    /// Planar tuple from complex points.
    pub fn from_complex(points: &[Complex64], weights: Vec<f64>) -> Result<Self> {
        Self::new(points.iter().map(|z| vec![z.re, z.im]).collect(), weights)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn barycenter(&self) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for (v, &w) in self.vectors.iter().zip(&self.weights) {
            for c in 0..d {
                out[c] += w * v[c];
            }
        }
        out
    }

    pub fn complex_points(&self) -> Result<Vec<Complex64>> {
        if self.dim() != 2 {
            return Err(Error::Domain("planar view needs dimension 2".into()));
        }
        Ok(self
            .vectors
            .iter()
            .map(|v| Complex64::new(v[0], v[1]))
            .collect())
    }
}

/// Residuals of a candidate mixing matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualTriple {
    /// max_i |Σ_j r_ij − 1|
    pub row: f64,
    /// max_i ‖x_i − Σ_j r_ij y_j‖
    pub mix: f64,
    /// max_j |b_j − Σ_i a_i r_ij|
    pub weight: f64,
}

impl ResidualTriple {
    pub fn max(&self) -> f64 {
        self.row.max(self.mix).max(self.weight)
    }
}

/// Row-stochastic mixing matrix with measured residuals.
#[derive(Debug, Clone)]
pub struct StochasticCertificate {
    pub r: Vec<Vec<f64>>,
    pub residuals: ResidualTriple,
}

/// Convex functional witnessing non-majorization, with its measured
/// violation `Σ aᵢ Φ(xᵢ) − Σ bⱼ Φ(yⱼ) > 0`.
#[derive(Debug, Clone)]
pub struct InfeasibilityWitness {
    pub functional: PiecewiseLinearConvex,
    pub violation: f64,
}

#[derive(Debug, Clone)]
pub enum MajorizationOutcome {
    Feasible(StochasticCertificate),
    Infeasible(InfeasibilityWitness),
}

impl MajorizationOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, MajorizationOutcome::Feasible(_))
    }
}

/// Residuals of `r` as a certificate for `(x, a) ≺ (y, b)`, by direct
/// summation.
pub fn verify_certificate(
    r: &[Vec<f64>],
    x: &WeightedTuple,
    y: &WeightedTuple,
) -> Result<ResidualTriple> {
    let (m, n, d) = (x.len(), y.len(), x.dim());
    if y.dim() != d {
        return Err(Error::Shape("tuple dimensions differ".into()));
    }
    if r.len() != m || r.iter().any(|row| row.len() != n) {
        return Err(Error::Shape(format!("certificate must be {m}x{n}")));
    }
    let mut row_res = 0.0f64;
    let mut mix_res = 0.0f64;
    for i in 0..m {
        let s: f64 = r[i].iter().sum();
        row_res = row_res.max((s - 1.0).abs());
        let mut err2 = 0.0;
        for c in 0..d {
            let mixed: f64 = (0..n).map(|j| r[i][j] * y.vectors()[j][c]).sum();
            err2 += (x.vectors()[i][c] - mixed).powi(2);
        }
        mix_res = mix_res.max(err2.sqrt());
    }
    let mut weight_res = 0.0f64;
    for j in 0..n {
        let s: f64 = (0..m).map(|i| x.weights()[i] * r[i][j]).sum();
        weight_res = weight_res.max((y.weights()[j] - s).abs());
    }
    Ok(ResidualTriple {
        row: row_res,
        mix: mix_res,
        weight: weight_res,
    })
}

/// Compose certificates along the transitivity of the preorder: if `r1`
/// certifies `(X,a) ≺ (Y,b)` and `r2` certifies `(Y,b) ≺ (Z,c)`, the product
/// certifies `(X,a) ≺ (Z,c)`.
pub fn compose_certificates(r1: &[Vec<f64>], r2: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if r1.is_empty() || r2.is_empty() || r1[0].len() != r2.len() {
        return Err(Error::Shape("certificate shapes do not chain".into()));
    }
    let (m, k, n) = (r1.len(), r2.len(), r2[0].len());
    let mut out = vec![vec![0.0; n]; m];
    for i in 0..m {
        for l in 0..k {
            let v = r1[i][l];
            if v == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += v * r2[l][j];
            }
        }
    }
    Ok(out)
}

/// Decide `(x, a) ≺ (y, b)` exactly (up to LP tolerances).
pub fn check_weighted_majorization(
    x: &WeightedTuple,
    y: &WeightedTuple,
    tol: f64,
) -> Result<MajorizationOutcome> {
    if x.dim() != y.dim() {
        return Err(Error::Shape(format!(
            "tuple dimensions differ: {} vs {}",
            x.dim(),
            y.dim()
        )));
    }
    let (m, n, d) = (x.len(), y.len(), x.dim());

    // Common translation/scale normalization keeps the simplex tolerances
    // meaningful regardless of the data's units. The same R solves the
    // normalized and the original system.
    let mut center = vec![0.0; d];
    for c in 0..d {
        center[c] = y.vectors().iter().map(|v| v[c]).sum::<f64>() / n as f64;
    }
    let mut scale = 0.0f64;
    for v in y.vectors().iter().chain(x.vectors()) {
        let r2: f64 = (0..d).map(|c| (v[c] - center[c]).powi(2)).sum();
        scale = scale.max(r2.sqrt());
    }
    if scale == 0.0 {
        scale = 1.0;
    }
    let norm = |v: &[f64]| -> Vec<f64> { (0..d).map(|c| (v[c] - center[c]) / scale).collect() };
    let xs: Vec<Vec<f64>> = x.vectors().iter().map(|v| norm(v)).collect();
    let ys: Vec<Vec<f64>> = y.vectors().iter().map(|v| norm(v)).collect();

    let problem = lp::MixingProblem {
        xs: &xs,
        ys: &ys,
        a: x.weights(),
        b: y.weights(),
    };
    match lp::solve(&problem)? {
        lp::LpOutcome::Feasible(rflat) => {
            let r: Vec<Vec<f64>> = (0..m)
                .map(|i| rflat[i * n..(i + 1) * n].to_vec())
                .collect();
            let residuals = verify_certificate(&r, x, y)?;
            Ok(MajorizationOutcome::Feasible(StochasticCertificate {
                r,
                residuals,
            }))
        }
        lp::LpOutcome::Infeasible(dual) => {
            let witness = build_witness(&dual, x, y, &center, scale, tol)?;
            Ok(MajorizationOutcome::Infeasible(witness))
        }
    }
}

/// Assemble the separating convex functional `Φ(u) = max_i (uᵢ + pᵢ·u)/aᵢ`
/// from the Farkas dual of the infeasible system, map it back to original
/// coordinates, prune pieces inactive on the x side, and re-verify the
/// violation by direct evaluation.
fn build_witness(
    dual: &lp::DualValues,
    x: &WeightedTuple,
    y: &WeightedTuple,
    center: &[f64],
    scale: f64,
    tol: f64,
) -> Result<InfeasibilityWitness> {
    let (m, d) = (x.len(), x.dim());
    let mut pieces: Vec<(Vec<f64>, f64)> = Vec::with_capacity(m);
    for i in 0..m {
        let ai = x.weights()[i];
        let u = dual.row[i];
        let p = &dual.mix[i * d..(i + 1) * d];
        // (u + p.((z - center)/scale)) / a_i as an affine function of z
        let grad: Vec<f64> = p.iter().map(|&pc| pc / (scale * ai)).collect();
        let mut offset = u / ai;
        for c in 0..d {
            offset -= p[c] * center[c] / (scale * ai);
        }
        pieces.push((grad, offset));
    }
    let violation_of = |pieces: &[(Vec<f64>, f64)]| -> f64 {
        let f = PiecewiseLinearConvex {
            pieces: pieces.to_vec(),
            include_zero: false,
        };
        let lhs: f64 = x
            .vectors()
            .iter()
            .zip(x.weights())
            .map(|(v, &a)| a * f.eval(v))
            .sum();
        let rhs: f64 = y
            .vectors()
            .iter()
            .zip(y.weights())
            .map(|(v, &b)| b * f.eval(v))
            .sum();
        lhs - rhs
    };
    let full_violation = violation_of(&pieces);
    // Keep only pieces attaining the max at some x point; dropping the rest
    // can only lower Φ on the y side, which strengthens the witness.
    let mut active = vec![false; pieces.len()];
    for v in x.vectors() {
        let mut best = (0usize, f64::NEG_INFINITY);
        for (idx, (g, q)) in pieces.iter().enumerate() {
            let val = g.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() + q;
            if val > best.1 {
                best = (idx, val);
            }
        }
        active[best.0] = true;
    }
    let pruned: Vec<(Vec<f64>, f64)> = pieces
        .iter()
        .zip(&active)
        .filter(|(_, &keep)| keep)
        .map(|(p, _)| p.clone())
        .collect();
    let (chosen, violation) = if !pruned.is_empty() && violation_of(&pruned) >= full_violation {
        let v = violation_of(&pruned);
        (pruned, v)
    } else {
        (pieces, full_violation)
    };
    if violation <= tol {
        return Err(Error::Convergence(format!(
            "dual witness failed re-verification (violation {violation:.3e} <= tol {tol:.3e})"
        )));
    }
    Ok(InfeasibilityWitness {
        functional: PiecewiseLinearConvex {
            pieces: chosen,
            include_zero: false,
        },
        violation,
    })
}

/// Result of the convex-function falsification battery.
#[derive(Debug, Clone)]
pub struct ConvexBatteryReport {
    /// min over the battery of `Σ bⱼ Φ(yⱼ) − Σ aᵢ Φ(xᵢ)`.
    pub worst_margin: f64,
    pub worst_function: String,
    pub evaluations: usize,
}

/// Evaluate the planar convex battery. A margin below `-tol` certifies
/// non-majorization; the battery cannot certify the positive direction
/// (it is a falsification tool, the LP is the decision procedure).
pub fn convex_battery(
    x: &WeightedTuple,
    y: &WeightedTuple,
    spec: &BatterySpec,
) -> Result<ConvexBatteryReport> {
    if x.dim() != 2 || y.dim() != 2 {
        return Err(Error::Domain("battery is planar (dimension 2)".into()));
    }
    let xp = x.complex_points()?;
    let yp = y.complex_points()?;
    let fns = spec.functions(&yp);
    let mut worst = f64::INFINITY;
    let mut worst_fn = String::new();
    for f in &fns {
        let lhs: f64 = xp
            .iter()
            .zip(x.weights())
            .map(|(&z, &a)| a * f.eval(z))
            .sum();
        let rhs: f64 = yp
            .iter()
            .zip(y.weights())
            .map(|(&z, &b)| b * f.eval(z))
            .sum();
        let margin = rhs - lhs;
        if margin < worst {
            worst = margin;
            worst_fn = f.describe();
        }
    }
    Ok(ConvexBatteryReport {
        worst_margin: worst,
        worst_function: worst_fn,
        evaluations: fns.len(),
    })
}

/// Choquet-order verdict for atomic measures.
#[derive(Debug, Clone, PartialEq)]
pub enum ChoquetVerdict {
    Dominated,
    NotDominated,
    /// Never produced when the LP terminates; the battery alone is advisory.
    UndeterminedByBattery,
}

/// `Dominated` iff the measure of `x` is dominated by that of `y` in the
/// Choquet ordering, decided by the LP.
pub fn choquet_compare(
    x: &WeightedTuple,
    y: &WeightedTuple,
) -> Result<(ChoquetVerdict, Option<InfeasibilityWitness>)> {
    match check_weighted_majorization(x, y, CERT_TOL)? {
        MajorizationOutcome::Feasible(_) => Ok((ChoquetVerdict::Dominated, None)),
        MajorizationOutcome::Infeasible(w) => Ok((ChoquetVerdict::NotDominated, Some(w))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn planar(points: &[(f64, f64)], weights: &[f64]) -> WeightedTuple {
        WeightedTuple::new(
            points.iter().map(|&(a, b)| vec![a, b]).collect(),
            weights.to_vec(),
        )
        .unwrap()
    }

    fn random_simplex(rng: &mut Rng, n: usize) -> Vec<f64> {
        let mut v: Vec<f64> = (0..n).map(|_| rng.range(0.05, 1.0)).collect();
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
        v
    }

    #[test]
    fn tuple_validation() {
        assert!(WeightedTuple::new(vec![vec![0.0]], vec![1.0]).is_ok());
        assert!(WeightedTuple::new(vec![vec![0.0]], vec![0.5]).is_err());
        assert!(WeightedTuple::new(vec![vec![0.0], vec![1.0]], vec![0.5, 0.6]).is_err());
        assert!(WeightedTuple::new(vec![vec![0.0], vec![1.0]], vec![-0.5, 1.5]).is_err());
        assert!(WeightedTuple::new(vec![vec![0.0], vec![1.0, 2.0]], vec![0.5, 0.5]).is_err());
    }

    #[test]
    fn reflexivity_is_feasible() {
        let x = planar(&[(0.0, 0.0), (1.0, 0.5), (-0.5, 2.0)], &[0.2, 0.3, 0.5]);
        match check_weighted_majorization(&x, &x, CERT_TOL).unwrap() {
            MajorizationOutcome::Feasible(cert) => {
                assert!(cert.residuals.max() < 1e-9, "{:?}", cert.residuals);
            }
            _ => panic!("self-comparison must be feasible"),
        }
    }

    #[test]
    fn barycenter_mismatch_is_infeasible() {
        let x = planar(&[(2.0, 0.0)], &[1.0]);
        let y = planar(&[(0.0, 0.0), (1.0, 0.0)], &[0.5, 0.5]);
        match check_weighted_majorization(&x, &y, CERT_TOL).unwrap() {
            MajorizationOutcome::Infeasible(w) => {
                assert!(w.violation > CERT_TOL);
                // re-verify by direct evaluation
                let lhs = w.functional.eval(&[2.0, 0.0]);
                let rhs =
                    0.5 * w.functional.eval(&[0.0, 0.0]) + 0.5 * w.functional.eval(&[1.0, 0.0]);
                assert!(lhs - rhs > CERT_TOL);
            }
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn double_zero_majorized_by_cube_roots() {
        let x = planar(&[(0.0, 0.0), (0.0, 0.0)], &[0.5, 0.5]);
        let tau = std::f64::consts::TAU;
        let y = planar(
            &[
                (1.0, 0.0),
                ((tau / 3.0).cos(), (tau / 3.0).sin()),
                ((2.0 * tau / 3.0).cos(), (2.0 * tau / 3.0).sin()),
            ],
            &[1.0 / 3.0; 3],
        );
        match check_weighted_majorization(&x, &y, CERT_TOL).unwrap() {
            MajorizationOutcome::Feasible(cert) => assert!(cert.residuals.max() < 1e-9),
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn verify_certificate_examples() {
        let x = planar(&[(0.0, 0.0), (1.0, 1.0)], &[0.5, 0.5]);
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let res = verify_certificate(&id, &x, &x).unwrap();
        assert_eq!(res.max(), 0.0);

        // forced 1x2 case: w = a1 z2 + a2 z1, R = (a2, a1)
        let (a1, a2) = (0.25, 0.75);
        let w = planar(&[(a1 * 1.0 + a2 * 0.0, 0.0)], &[1.0]);
        let z = planar(&[(0.0, 0.0), (1.0, 0.0)], &[1.0 - a1, 1.0 - a2]);
        let r = vec![vec![a2, a1]];
        let res = verify_certificate(&r, &w, &z).unwrap();
        assert!(res.max() < 1e-14, "{res:?}");
    }

    #[test]
    fn random_feasible_instances_round_trip() {
        let mut rng = Rng::new(606);
        for _ in 0..40 {
            let n = 2 + rng.usize_below(5);
            let m = 1 + rng.usize_below(4);
            let y: Vec<Vec<f64>> = (0..n)
                .map(|_| vec![rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)])
                .collect();
            let aw = random_simplex(&mut rng, m);
            let r: Vec<Vec<f64>> = (0..m).map(|_| random_simplex(&mut rng, n)).collect();
            let x: Vec<Vec<f64>> = (0..m)
                .map(|i| {
                    (0..2)
                        .map(|c| (0..n).map(|j| r[i][j] * y[j][c]).sum())
                        .collect()
                })
                .collect();
            let mut bw = vec![0.0; n];
            for j in 0..n {
                for i in 0..m {
                    bw[j] += aw[i] * r[i][j];
                }
            }
            let xt = WeightedTuple::new(x, aw).unwrap();
            let yt = WeightedTuple::new(y, bw).unwrap();
            match check_weighted_majorization(&xt, &yt, CERT_TOL).unwrap() {
                MajorizationOutcome::Feasible(cert) => {
                    assert!(cert.residuals.max() < CERT_TOL, "{:?}", cert.residuals);
                    for row in &cert.r {
                        for &v in row {
                            assert!(v >= -1e-12);
                        }
                    }
                }
                _ => panic!("constructed instance must be feasible"),
            }
        }
    }

    #[test]
    fn doubly_stochastic_specialization() {
        // m = n with uniform weights on both sides: the weight constraints
        // force unit column sums on any returned certificate.
        let mut rng = Rng::new(99);
        for _ in 0..10 {
            let n = 4;
            let y: Vec<Vec<f64>> = (0..n)
                .map(|_| vec![rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)])
                .collect();
            // Birkhoff: random convex combination of permutation matrices
            let mut s = vec![vec![0.0; n]; n];
            let mut coefs = random_simplex(&mut rng, 3);
            for c in coefs.drain(..) {
                let mut perm: Vec<usize> = (0..n).collect();
                rng.shuffle(&mut perm);
                for (i, &j) in perm.iter().enumerate() {
                    s[i][j] += c;
                }
            }
            let x: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..2)
                        .map(|c| (0..n).map(|j| s[i][j] * y[j][c]).sum())
                        .collect()
                })
                .collect();
            let uniform = vec![1.0 / n as f64; n];
            let xt = WeightedTuple::new(x, uniform.clone()).unwrap();
            let yt = WeightedTuple::new(y, uniform).unwrap();
            match check_weighted_majorization(&xt, &yt, CERT_TOL).unwrap() {
                MajorizationOutcome::Feasible(cert) => {
                    for j in 0..n {
                        let col: f64 = (0..n).map(|i| cert.r[i][j]).sum();
                        assert!((col - 1.0).abs() < 1e-8, "column sum {col}");
                    }
                }
                _ => panic!("doubly stochastic instance must be feasible"),
            }
        }
    }

    #[test]
    fn transitivity_of_certificates() {
        let mut rng = Rng::new(31415);
        let n = 4;
        let z: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)])
            .collect();
        // y = R2 z with weights chained so both certificates are exact
        let r2: Vec<Vec<f64>> = (0..3).map(|_| random_simplex(&mut rng, n)).collect();
        let yw = random_simplex(&mut rng, 3);
        let y: Vec<Vec<f64>> = (0..3)
            .map(|i| {
                (0..2)
                    .map(|c| (0..n).map(|j| r2[i][j] * z[j][c]).sum())
                    .collect()
            })
            .collect();
        let mut zw = vec![0.0; n];
        for j in 0..n {
            for i in 0..3 {
                zw[j] += yw[i] * r2[i][j];
            }
        }
        let r1: Vec<Vec<f64>> = (0..2).map(|_| random_simplex(&mut rng, 3)).collect();
        let xw = random_simplex(&mut rng, 2);
        let x: Vec<Vec<f64>> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|c| (0..3).map(|j| r1[i][j] * y[j][c]).sum())
                    .collect()
            })
            .collect();
        let mut yw_from_x = vec![0.0; 3];
        for j in 0..3 {
            for i in 0..2 {
                yw_from_x[j] += xw[i] * r1[i][j];
            }
        }
        // rebuild the middle/z weights so every link is consistent
        let mut zw_from_y = vec![0.0; n];
        for j in 0..n {
            for i in 0..3 {
                zw_from_y[j] += yw_from_x[i] * r2[i][j];
            }
        }
        let _ = (yw, zw);
        let xt = WeightedTuple::new(x, xw).unwrap();
        let yt = WeightedTuple::new(y, yw_from_x).unwrap();
        let zt = WeightedTuple::new(z, zw_from_y).unwrap();
        let res1 = verify_certificate(&r1, &xt, &yt).unwrap();
        let res2 = verify_certificate(&r2, &yt, &zt).unwrap();
        let composed = compose_certificates(&r1, &r2).unwrap();
        let res = verify_certificate(&composed, &xt, &zt).unwrap();
        assert!(res.max() <= res1.max() + res2.max() + 1e-12);
    }

    #[test]
    fn battery_on_identical_pairs_is_zero() {
        let x = planar(&[(0.1, -0.4), (0.7, 0.2)], &[0.4, 0.6]);
        let report = convex_battery(&x, &x, &BatterySpec::default()).unwrap();
        assert_eq!(report.worst_margin, 0.0);
        assert!(report.evaluations > 0);
    }

    #[test]
    fn battery_flags_barycenter_mismatch() {
        let x = planar(&[(2.0, 0.0)], &[1.0]);
        let y = planar(&[(0.0, 0.0), (1.0, 0.0)], &[0.5, 0.5]);
        let report = convex_battery(&x, &y, &BatterySpec::default()).unwrap();
        assert!(report.worst_margin < -1e-6, "margin {}", report.worst_margin);
    }

    #[test]
    fn battery_respects_feasible_pairs() {
        let x = planar(&[(0.5, 0.0)], &[1.0]);
        let y = planar(&[(0.0, 0.0), (1.0, 0.0)], &[0.5, 0.5]);
        let report = convex_battery(&x, &y, &BatterySpec::default()).unwrap();
        assert!(report.worst_margin >= -1e-10);
    }

    #[test]
    fn choquet_verdicts() {
        // point mass at the barycenter is dominated (Jensen)
        let y = planar(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], &[0.2, 0.3, 0.5]);
        let bary = y.barycenter();
        let x = planar(&[(bary[0], bary[1])], &[1.0]);
        let (verdict, _) = choquet_compare(&x, &y).unwrap();
        assert_eq!(verdict, ChoquetVerdict::Dominated);
        // strict dilations are not symmetric
        let (verdict, witness) = choquet_compare(&y, &x).unwrap();
        assert_eq!(verdict, ChoquetVerdict::NotDominated);
        assert!(witness.unwrap().violation > 0.0);
    }
}
