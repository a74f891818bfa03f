//! Convex test functions used by the falsification batteries and the LP
//! infeasibility witnesses.

use num_complex::Complex64;

/// A convex function on the plane drawn from the standard battery. All
/// variants are nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexFn {
    /// `max(0, Re(e^{-i theta} (z - c)))`: a half-plane support function.
    Hinge { c: Complex64, theta: f64 },
    /// `|z - c|^alpha` with `alpha >= 1`.
    DistPow { c: Complex64, alpha: f64 },
}

impl ConvexFn {
    pub fn eval(&self, z: Complex64) -> f64 {
        match *self {
            ConvexFn::Hinge { c, theta } => {
                let rotated = (z - c) * Complex64::from_polar(1.0, -theta);
                rotated.re.max(0.0)
            }
            ConvexFn::DistPow { c, alpha } => {
                let d = (z - c).norm();
                if alpha == 1.0 {
                    d
                } else if alpha == 2.0 {
                    d * d
                } else {
                    d.powf(alpha)
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            ConvexFn::Hinge { c, theta } => format!(
                "hinge(c = {:.6} + {:.6}i, theta = {:.6})",
                c.re, c.im, theta
            ),
            ConvexFn::DistPow { c, alpha } => format!(
                "|z - ({:.6} + {:.6}i)|^{}",
                c.re, c.im, alpha
            ),
        }
    }
}

/// Battery parameters: an angular grid for the hinges and a rectangular grid
/// of centers spread over the (inflated) bounding box of the reference
/// points.
#[derive(Debug, Clone)]
pub struct BatterySpec {
    pub angles: usize,
    pub grid: usize,
    pub alphas: Vec<f64>,
    /// Fractional inflation of the bounding box; pushing centers past the
    /// hull lets a hinge act as an affine functional on all test points,
    /// which is what detects barycenter mismatches.
    pub inflate: f64,
}

impl Default for BatterySpec {
    fn default() -> Self {
        BatterySpec {
            angles: 24,
            grid: 9,
            alphas: vec![1.0, 2.0, 3.0, 4.0],
            inflate: 0.5,
        }
    }
}

impl BatterySpec {
    /// Instantiate the battery for a reference point cloud.
    pub fn functions(&self, reference: &[Complex64]) -> Vec<ConvexFn> {
        let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for z in reference {
            lo_x = lo_x.min(z.re);
            hi_x = hi_x.max(z.re);
            lo_y = lo_y.min(z.im);
            hi_y = hi_y.max(z.im);
        }
        if !lo_x.is_finite() {
            return Vec::new();
        }
        let span = ((hi_x - lo_x).max(hi_y - lo_y)).max(1.0);
        let pad = self.inflate * span;
        lo_x -= pad;
        hi_x += pad;
        lo_y -= pad;
        hi_y += pad;
        let mut centers = Vec::with_capacity(self.grid * self.grid);
        for i in 0..self.grid {
            for j in 0..self.grid {
                let fx = if self.grid > 1 {
                    i as f64 / (self.grid - 1) as f64
                } else {
                    0.5
                };
                let fy = if self.grid > 1 {
                    j as f64 / (self.grid - 1) as f64
                } else {
                    0.5
                };
                centers.push(Complex64::new(
                    lo_x + fx * (hi_x - lo_x),
                    lo_y + fy * (hi_y - lo_y),
                ));
            }
        }
        let mut fns = Vec::with_capacity(centers.len() * (self.angles + self.alphas.len()));
        for &c in &centers {
            for a in 0..self.angles {
                let theta = std::f64::consts::TAU * a as f64 / self.angles as f64;
                fns.push(ConvexFn::Hinge { c, theta });
            }
            for &alpha in &self.alphas {
                fns.push(ConvexFn::DistPow { c, alpha });
            }
        }
        fns
    }
}

/// Piecewise-linear convex functional `z -> max_i (g_i . z + q_i)`, optionally
/// including the zero function in the max. This is the certificate format for
/// LP infeasibility: evaluating it on both tuples re-verifies the violation.
#[derive(Debug, Clone)]
pub struct PiecewiseLinearConvex {
    /// (gradient, offset) pairs; the gradient has the tuple dimension.
    pub pieces: Vec<(Vec<f64>, f64)>,
    pub include_zero: bool,
}

impl PiecewiseLinearConvex {
    pub fn eval(&self, point: &[f64]) -> f64 {
        let mut best = if self.include_zero {
            0.0
        } else {
            f64::NEG_INFINITY
        };
        for (g, q) in &self.pieces {
            let v = g.iter().zip(point).map(|(a, b)| a * b).sum::<f64>() + q;
            best = best.max(v);
        }
        best
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .pieces
            .iter()
            .map(|(g, q)| {
                let terms: Vec<String> = g
                    .iter()
                    .enumerate()
                    .map(|(i, gi)| format!("{gi:.6}*u{i}"))
                    .collect();
                format!("{} + {q:.6}", terms.join(" + "))
            })
            .collect();
        if self.include_zero {
            parts.push("0".to_string());
        }
        format!("max({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hinge_clamps_at_zero() {
        let f = ConvexFn::Hinge {
            c: Complex64::new(1.0, 0.0),
            theta: 0.0,
        };
        assert_eq!(f.eval(Complex64::new(0.0, 0.0)), 0.0);
        assert!((f.eval(Complex64::new(3.0, 5.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn battery_size() {
        let spec = BatterySpec::default();
        let fns = spec.functions(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)]);
        assert_eq!(fns.len(), 81 * (24 + 4));
    }

    #[test]
    fn pwl_eval() {
        let f = PiecewiseLinearConvex {
            pieces: vec![(vec![1.0, 0.0], -1.0), (vec![-1.0, 0.0], -1.0)],
            include_zero: true,
        };
        assert_eq!(f.eval(&[0.5, 0.0]), 0.0);
        assert!((f.eval(&[3.0, 0.0]) - 2.0).abs() < 1e-15);
        assert!((f.eval(&[-3.0, 0.0]) - 2.0).abs() < 1e-15);
    }
}
