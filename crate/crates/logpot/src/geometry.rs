//! Planar convex hull, point-to-hull distances, and collinearity detection.

use num_complex::Complex64;

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull by Andrew's monotone chain, vertices in counterclockwise
/// order. Degenerate inputs collapse to one or two points.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

pub fn dist_to_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * ab.re) + ((p - a).im * ab.im)) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Euclidean distance from `p` to the convex hull of `points`; zero inside.
pub fn dist_to_hull(p: Complex64, points: &[Complex64]) -> f64 {
    let hull = convex_hull(points);
    match hull.len() {
        0 => f64::INFINITY,
        1 => (p - hull[0]).norm(),
        2 => dist_to_segment(p, hull[0], hull[1]),
        m => {
            // inside iff left of every CCW edge
            let mut inside = true;
            let mut best = f64::INFINITY;
            for i in 0..m {
                let a = hull[i];
                let b = hull[(i + 1) % m];
                if cross(a, b, p) < 0.0 {
                    inside = false;
                }
                best = best.min(dist_to_segment(p, a, b));
            }
            if inside {
                0.0
            } else {
                best
            }
        }
    }
}

/// Singular values of the centered 2 x n coordinate matrix, largest first.
/// The small one is computed as the residual along the best-line normal;
/// the textbook `tr/2 - disc` formula cancels catastrophically for nearly
/// collinear clouds.
pub fn centered_singular_values(points: &[Complex64]) -> (f64, f64) {
    let n = points.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let (centroid, dir) = best_line(points);
    let (mut para, mut perp) = (0.0f64, 0.0f64);
    for z in points {
        let d = z - centroid;
        let along = d.re * dir.re + d.im * dir.im;
        let across = -d.re * dir.im + d.im * dir.re;
        para += along * along;
        perp += across * across;
    }
    (para.max(perp).sqrt(), para.min(perp).sqrt())
}

/// Scale-free, rotation-invariant collinearity test: the smallest singular
/// value of the centered coordinate matrix must not exceed `tol` times the
/// largest.
pub fn is_collinear(points: &[Complex64], tol: f64) -> bool {
    if points.len() <= 2 {
        return true;
    }
    let (s1, s2) = centered_singular_values(points);
    if s1 == 0.0 {
        return true; // all points coincide
    }
    s2 <= tol * s1
}

/// Best-fit line through the points: (centroid, unit direction).
pub fn best_line(points: &[Complex64]) -> (Complex64, Complex64) {
    let n = points.len().max(1);
    let centroid = points.iter().sum::<Complex64>() / n as f64;
    let (mut sxx, mut sxy, mut syy) = (0.0f64, 0.0f64, 0.0f64);
    for z in points {
        let x = z.re - centroid.re;
        let y = z.im - centroid.im;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    let tr = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    let l1 = tr / 2.0 + disc;
    // eigenvector of the scatter matrix for the dominant eigenvalue
    let dir = if sxy.abs() > 1e-300 {
        Complex64::new(l1 - syy, sxy)
    } else if sxx >= syy {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    let norm = dir.norm();
    let dir = if norm > 0.0 {
        dir / norm
    } else {
        Complex64::new(1.0, 0.0)
    };
    (centroid, dir)
}
