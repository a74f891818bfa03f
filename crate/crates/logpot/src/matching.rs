//! Multiset matching helpers and compensated summation.

use num_complex::Complex64;

/// Greedy minimal-cost nearest-neighbor matching between two equal-length
/// multisets: repeatedly pair the globally closest unmatched points. Exact
/// assignment is unnecessary at desk scale as long as point separations stay
/// above ~1e-6.
pub fn greedy_match(a: &[Complex64], b: &[Complex64]) -> Vec<(usize, usize, f64)> {
    assert_eq!(a.len(), b.len(), "matching needs equal multiset sizes");
    let n = a.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            pairs.push(((a[i] - b[j]).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            out.push((i, j, d));
            if out.len() == n {
                break;
            }
        }
    }
    out
}

/// Largest pair distance under the greedy matching.
pub fn match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    greedy_match(a, b)
        .into_iter()
        .map(|(_, _, d)| d)
        .fold(0.0, f64::max)
}

/// Kahan-Babuska compensated accumulator; order-stable enough that sharded
/// sums agree bit for bit when shards are combined in index order.
#[derive(Debug, Clone, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
