//! Phase-1 simplex (dense tableau, Bland's anti-cycling rule) for the
//! row-stochastic mixing system
//!
//!   Σ_j r_ij          = 1          (m rows)
//!   Σ_j r_ij y_j      = x_i        (m·d rows)
//!   Σ_i a_i r_ij      = b_j        (n−1 rows; the last is implied by the
//!                                   row sums together with Σa = Σb = 1)
//!   r_ij >= 0.
//!
//! Feasibility is declared when the artificial objective drops below 1e-9.
//! On infeasible instances the terminal simplex multipliers form a Farkas
//! certificate of the original system, which the caller turns into a convex
//! separating functional.

use crate::error::{Error, Result};

/// Pivot tolerance for entering/leaving decisions.
const EPS_PIVOT: f64 = 1e-11;
/// Artificial objective below this is a feasible system.
const FEAS_TOL: f64 = 1e-9;
/// Bland's rule terminates in finitely many steps; this cap only guards
/// against pathological floating-point stalls.
const MAX_ITER: usize = 1_000_000;

pub(crate) struct MixingProblem<'a> {
    pub xs: &'a [Vec<f64>],
    pub ys: &'a [Vec<f64>],
    pub a: &'a [f64],
    pub b: &'a [f64],
}

/// Simplex multipliers of the original (unflipped) constraint rows.
pub(crate) struct DualValues {
    pub row: Vec<f64>,
    pub mix: Vec<f64>,
    #[allow(dead_code)]
    pub weight: Vec<f64>,
}

pub(crate) enum LpOutcome {
    Feasible(Vec<f64>),
    Infeasible(DualValues),
}

pub(crate) fn solve(p: &MixingProblem) -> Result<LpOutcome> {
    let m = p.xs.len();
    let n = p.ys.len();
    let d = if m > 0 { p.xs[0].len() } else { 0 };
    let nvars = m * n;
    let nrows = m + m * d + n.saturating_sub(1);
    let col = |i: usize, j: usize| i * n + j;

    // dense constraint matrix and rhs
    let mut a = vec![vec![0.0f64; nvars]; nrows];
    let mut rhs = vec![0.0f64; nrows];
    for i in 0..m {
        for j in 0..n {
            a[i][col(i, j)] = 1.0;
        }
        rhs[i] = 1.0;
    }
    for i in 0..m {
        for c in 0..d {
            let r = m + i * d + c;
            for j in 0..n {
                a[r][col(i, j)] = p.ys[j][c];
            }
            rhs[r] = p.xs[i][c];
        }
    }
    for j in 0..n.saturating_sub(1) {
        let r = m + m * d + j;
        for i in 0..m {
            a[r][col(i, j)] = p.a[i];
        }
        rhs[r] = p.b[j];
    }

    // flip rows to make rhs nonnegative; remember signs for the duals
    let mut flipped = vec![false; nrows];
    for r in 0..nrows {
        if rhs[r] < 0.0 {
            flipped[r] = true;
            rhs[r] = -rhs[r];
            for v in a[r].iter_mut() {
                *v = -*v;
            }
        }
    }

    // tableau columns: structural | artificial; objective = min Σ artificials
    let total = nvars + nrows;
    let mut tab = vec![vec![0.0f64; total]; nrows];
    for r in 0..nrows {
        tab[r][..nvars].copy_from_slice(&a[r]);
        tab[r][nvars + r] = 1.0;
    }
    let mut basis: Vec<usize> = (0..nrows).map(|r| nvars + r).collect();
    // reduced costs: c_j - Σ_rows tab[r][j] for the artificial basis
    let mut obj = vec![0.0f64; total];
    for j in 0..nvars {
        obj[j] = -(0..nrows).map(|r| tab[r][j]).sum::<f64>();
    }

    let mut iters = 0usize;
    loop {
        iters += 1;
        if iters > MAX_ITER {
            return Err(Error::Convergence(
                "simplex iteration cap (1e6) exceeded".into(),
            ));
        }
        // Bland: entering = lowest-index structural column with negative
        // reduced cost (artificials never re-enter)
        let entering = (0..nvars).find(|&j| obj[j] < -EPS_PIVOT);
        let Some(e) = entering else { break };
        // ratio test; ties broken by smallest basic variable index
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..nrows {
            if tab[r][e] > EPS_PIVOT {
                let ratio = rhs[r] / tab[r][e];
                match leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - 1e-15
                            || ((ratio - lratio).abs() <= 1e-15 && basis[r] < basis[lr])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((lr, _)) = leave else {
            // unbounded cannot occur in phase 1 (objective bounded below by 0)
            return Err(Error::Convergence("phase-1 simplex lost boundedness".into()));
        };
        // pivot on (lr, e)
        let piv = tab[lr][e];
        for v in tab[lr].iter_mut() {
            *v /= piv;
        }
        rhs[lr] /= piv;
        for r in 0..nrows {
            if r != lr && tab[r][e].abs() > 0.0 {
                let f = tab[r][e];
                let (src, dst) = if r < lr {
                    let (lo, hi) = tab.split_at_mut(lr);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = tab.split_at_mut(r);
                    (&lo[lr], &mut hi[0])
                };
                for (dv, sv) in dst.iter_mut().zip(src.iter()) {
                    *dv -= f * sv;
                }
                rhs[r] -= f * rhs[lr];
                if rhs[r] < 0.0 && rhs[r] > -1e-13 {
                    rhs[r] = 0.0;
                }
            }
        }
        let f = obj[e];
        for (ov, sv) in obj.iter_mut().zip(tab[lr].iter()) {
            *ov -= f * sv;
        }
        basis[lr] = e;
    }

    let objective: f64 = (0..nrows)
        .filter(|&r| basis[r] >= nvars)
        .map(|r| rhs[r])
        .sum();
    if objective < FEAS_TOL {
        let mut x = vec![0.0f64; nvars];
        for r in 0..nrows {
            if basis[r] < nvars {
                x[basis[r]] = rhs[r].max(0.0);
            }
        }
        Ok(LpOutcome::Feasible(x))
    } else {
        // duals: y_k = 1 - reduced cost of artificial k, undoing row flips
        let mut y = vec![0.0f64; nrows];
        for k in 0..nrows {
            y[k] = 1.0 - obj[nvars + k];
            if flipped[k] {
                y[k] = -y[k];
            }
        }
        let row = y[0..m].to_vec();
        let mix = y[m..m + m * d].to_vec();
        let mut weight = y[m + m * d..].to_vec();
        weight.push(0.0); // multiplier of the dropped redundant equation
        Ok(LpOutcome::Infeasible(DualValues { row, mix, weight }))
    }
}
