//! Empirical probes of the open hierarchy/inertia inequalities: exact
//! enumeration for the symmetric-function form, seeded Monte-Carlo
//! integration over the simplex for the inertia-moment form. Outcomes are
//! reported with uncertainty; only proven sub-cases are ever asserted.

use crate::convex::ConvexFn;
use crate::dbs::elementary_symmetric;
use crate::error::{Error, Result};
use crate::linalg::{binomial, k_subsets};
use crate::matching::KahanSum;
use crate::potential::ChargeConfiguration;
use crate::rng::Rng;
use num_complex::Complex64;

/// Shard length for counter-based stream derivation; aggregation in shard
/// order is deterministic however shards are scheduled.
const SHARD: usize = 4096;

/// Moment order and rotation axis for inertia computations.
#[derive(Debug, Clone)]
pub struct InertiaSpec {
    pub alpha: f64,
    pub line_point: [f64; 3],
    pub line_dir: [f64; 3],
}

impl InertiaSpec {
    pub fn new(alpha: f64, line_point: [f64; 3], line_dir: [f64; 3]) -> Result<Self> {
        if alpha < 1.0 {
            return Err(Error::Domain(format!("alpha must be >= 1, got {alpha}")));
        }
        let norm = (line_dir.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("line direction must be a unit vector".into()));
        }
        Ok(InertiaSpec {
            alpha,
            line_point,
            line_dir,
        })
    }

    /// The x3-axis, the default rotation axis for planar configurations.
    pub fn vertical_axis(alpha: f64) -> Result<Self> {
        Self::new(alpha, [0.0; 3], [0.0, 0.0, 1.0])
    }

    /// Distance from a planar point (embedded in the x1x2-plane) to the line.
    pub fn dist(&self, z: Complex64) -> f64 {
        let q = [
            z.re - self.line_point[0],
            z.im - self.line_point[1],
            -self.line_point[2],
        ];
        let t = q[0] * self.line_dir[0] + q[1] * self.line_dir[1] + q[2] * self.line_dir[2];
        let mut d2 = 0.0;
        for c in 0..3 {
            let r = q[c] - t * self.line_dir[c];
            d2 += r * r;
        }
        d2.sqrt()
    }
}

/// Uniform sample from the standard simplex by sorted-uniform spacings:
/// k−1 uniforms in (0,1), sorted, consecutive gaps.
pub fn simplex_sample(k: usize, rng: &mut Rng) -> Vec<f64> {
    debug_assert!(k >= 1);
    if k == 1 {
        return vec![1.0];
    }
    let mut cuts: Vec<f64> = (0..k - 1).map(|_| rng.next_f64()).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = Vec::with_capacity(k);
    let mut prev = 0.0;
    for &c in &cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(1.0 - prev);
    out
}

fn moment_value(vertices: &[Complex64], t: &[f64], spec: &InertiaSpec) -> f64 {
    let mut p = Complex64::new(0.0, 0.0);
    for (ti, v) in t.iter().zip(vertices) {
        p += ti * v;
    }
    spec.dist(p).powf(spec.alpha)
}

/// Monte-Carlo estimate `(mean, standard error)` of the α-moment of the
/// vertex hull with respect to the line: the expectation of
/// `d(Σ tᵢ vᵢ, L)^α` under the uniform simplex law. Degenerate `k = 1` is
/// evaluated exactly.
pub fn inertia_moment_mc(
    vertices: &[Complex64],
    spec: &InertiaSpec,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let k = vertices.len();
    if k == 0 {
        return Err(Error::Domain("need at least one vertex".into()));
    }
    if k == 1 {
        return Ok((spec.dist(vertices[0]).powf(spec.alpha), 0.0));
    }
    if trials < 2 {
        return Err(Error::Domain("need at least two trials".into()));
    }
    let mut sum = KahanSum::new();
    let mut sumsq = KahanSum::new();
    let shards = trials.div_ceil(SHARD);
    let mut done = 0usize;
    for shard in 0..shards {
        let mut rng = Rng::derive(seed, shard as u64);
        let count = SHARD.min(trials - done);
        for _ in 0..count {
            let t = simplex_sample(k, &mut rng);
            let v = moment_value(vertices, &t, spec);
            sum.add(v);
            sumsq.add(v * v);
        }
        done += count;
    }
    let n = trials as f64;
    let mean = sum.value() / n;
    let var = ((sumsq.value() - sum.value() * sum.value() / n) / (n - 1.0)).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

/// Re-estimate the moment under 10 random relabelings of the vertices with
/// a common random stream: coordinates and vertices are permuted together,
/// so each trial evaluates the same summands in a different order. The
/// returned maximum deviation is pure floating-point reordering noise.
pub fn permutation_invariance_check(
    vertices: &[Complex64],
    spec: &InertiaSpec,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let k = vertices.len();
    if k == 0 {
        return Err(Error::Domain("need at least one vertex".into()));
    }
    let estimate = |perm: &[usize]| -> f64 {
        let mut sum = KahanSum::new();
        let shards = trials.div_ceil(SHARD);
        let mut done = 0usize;
        for shard in 0..shards {
            let mut rng = Rng::derive(seed, shard as u64);
            let count = SHARD.min(trials - done);
            for _ in 0..count {
                let t = simplex_sample(k, &mut rng);
                let mut p = Complex64::new(0.0, 0.0);
                for &i in perm {
                    p += t[i] * vertices[i];
                }
                sum.add(spec.dist(p).powf(spec.alpha));
            }
            done += count;
        }
        sum.value() / trials as f64
    };
    let identity: Vec<usize> = (0..k).collect();
    let base = estimate(&identity);
    let mut rng = Rng::derive(seed, 0xC0FFEE);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let mut perm = identity.clone();
        rng.shuffle(&mut perm);
        worst = worst.max((estimate(&perm) - base).abs());
    }
    Ok(worst)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    // Heap's algorithm
    let mut out = Vec::with_capacity((1..=k).product());
    let mut items: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    out.push(items.clone());
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Margin `RHS − LHS` of the symmetrized hierarchy inequality at
/// `(k, m, t, Φ)` by direct enumeration over index sets and permutations.
/// Proven only for `t = (1,…,1)` (where the permutation sum collapses);
/// general `t` is an open conjecture and the result is data, not a check.
pub fn dbs_hierarchy_trial(
    cfg: &ChargeConfiguration,
    w: &[Complex64],
    k: usize,
    m: usize,
    t: &[Complex64],
    phi: &ConvexFn,
) -> Result<f64> {
    let n = cfg.n();
    if w.len() + 1 != n {
        return Err(Error::Shape("equilibrium count must be n - 1".into()));
    }
    if k == 0 || k > n - 1 || m == 0 || m > k {
        return Err(Error::Domain(format!("need 1 <= m <= k <= n-1, got k={k}, m={m}")));
    }
    if t.len() != k {
        return Err(Error::Shape(format!("t must have length k = {k}")));
    }
    let kfact: usize = (1..=k).product();
    if kfact.saturating_mul(binomial(n, k)) > 1_000_000 {
        return Err(Error::CapExceeded(format!(
            "k! C(n,k) = {} exceeds enumeration cap 10^6",
            kfact * binomial(n, k)
        )));
    }
    let perms = permutations(k);
    let mut scaled = vec![Complex64::new(0.0, 0.0); k];
    let mut lhs = KahanSum::new();
    for s in k_subsets(n - 1, k) {
        for perm in &perms {
            for (slot, (&pi, &si)) in perm.iter().zip(&s).enumerate() {
                scaled[slot] = t[pi] * w[si];
            }
            lhs.add(phi.eval(elementary_symmetric(&scaled, m)));
        }
    }
    let mut rhs = KahanSum::new();
    for s in k_subsets(n, k) {
        let mass: f64 = s.iter().map(|&i| cfg.charges()[i]).sum();
        let mut inner = KahanSum::new();
        for perm in &perms {
            for (slot, (&pi, &si)) in perm.iter().zip(&s).enumerate() {
                scaled[slot] = t[pi] * cfg.points()[si];
            }
            inner.add(phi.eval(elementary_symmetric(&scaled, m)));
        }
        rhs.add((1.0 - mass) * inner.value());
    }
    Ok(rhs.value() - lhs.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialVerdict {
    Consistent,
    ViolationCandidate,
}

impl TrialVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrialVerdict::Consistent => "consistent",
            TrialVerdict::ViolationCandidate => "violation-candidate",
        }
    }
}

/// Monte-Carlo comparison of the two sides of an inertia-law trial.
#[derive(Debug, Clone)]
pub struct TrialReport {
    pub lhs_estimate: f64,
    pub rhs_estimate: f64,
    pub lhs_se: f64,
    pub rhs_se: f64,
    pub margin: f64,
    pub verdict: TrialVerdict,
}

impl TrialReport {
    fn from_estimates(lhs: f64, rhs: f64, lhs_se: f64, rhs_se: f64) -> Self {
        let margin = rhs - lhs;
        let verdict = if margin < -5.0 * (lhs_se + rhs_se) {
            TrialVerdict::ViolationCandidate
        } else {
            TrialVerdict::Consistent
        };
        TrialReport {
            lhs_estimate: lhs,
            rhs_estimate: rhs,
            lhs_se,
            rhs_se,
            margin,
            verdict,
        }
    }
}

/// Compare `Σ_w-sets I_{α,L}(hull)` against `Σ_z-sets (1−Σa) I_{α,L}(hull)`
/// with a shared random stream across all hulls (common-random-numbers
/// variance reduction). `k = 1` is evaluated exactly.
pub fn inertia_inequality_trial(
    cfg: &ChargeConfiguration,
    w: &[Complex64],
    k: usize,
    spec: &InertiaSpec,
    trials: usize,
    seed: u64,
) -> Result<TrialReport> {
    let n = cfg.n();
    if w.len() + 1 != n {
        return Err(Error::Shape("equilibrium count must be n - 1".into()));
    }
    if k == 0 || k > n - 1 {
        return Err(Error::Domain(format!("level k={k} out of range 1..={}", n - 1)));
    }
    if binomial(n, k) > 1000 {
        return Err(Error::CapExceeded(format!("C({n},{k}) exceeds cap 10^3")));
    }
    let wsets = k_subsets(n - 1, k);
    let zsets = k_subsets(n, k);
    if k == 1 {
        let lhs: f64 = w.iter().map(|&p| spec.dist(p).powf(spec.alpha)).sum();
        let rhs: f64 = cfg
            .points()
            .iter()
            .zip(cfg.charges())
            .map(|(&p, &a)| (1.0 - a) * spec.dist(p).powf(spec.alpha))
            .sum();
        return Ok(TrialReport::from_estimates(lhs, rhs, 0.0, 0.0));
    }
    if trials < 10 {
        return Err(Error::Domain("need at least 10 trials".into()));
    }
    let mut lhs_sum = KahanSum::new();
    let mut lhs_sq = KahanSum::new();
    let mut rhs_sum = KahanSum::new();
    let mut rhs_sq = KahanSum::new();
    let mut wvals = vec![Complex64::new(0.0, 0.0); k];
    let shards = trials.div_ceil(SHARD);
    let mut done = 0usize;
    for shard in 0..shards {
        let mut rng = Rng::derive(seed, shard as u64);
        let count = SHARD.min(trials - done);
        for _ in 0..count {
            let t = simplex_sample(k, &mut rng);
            let mut lhs_trial = KahanSum::new();
            for s in &wsets {
                for (slot, &si) in s.iter().enumerate() {
                    wvals[slot] = w[si];
                }
                lhs_trial.add(moment_value(&wvals, &t, spec));
            }
            let mut rhs_trial = KahanSum::new();
            for s in &zsets {
                let mass: f64 = s.iter().map(|&i| cfg.charges()[i]).sum();
                for (slot, &si) in s.iter().enumerate() {
                    wvals[slot] = cfg.points()[si];
                }
                rhs_trial.add((1.0 - mass) * moment_value(&wvals, &t, spec));
            }
            let lv = lhs_trial.value();
            let rv = rhs_trial.value();
            lhs_sum.add(lv);
            lhs_sq.add(lv * lv);
            rhs_sum.add(rv);
            rhs_sq.add(rv * rv);
        }
        done += count;
    }
    let nf = trials as f64;
    let lhs = lhs_sum.value() / nf;
    let rhs = rhs_sum.value() / nf;
    let lhs_var = ((lhs_sq.value() - lhs_sum.value() * lhs_sum.value() / nf) / (nf - 1.0)).max(0.0);
    let rhs_var = ((rhs_sq.value() - rhs_sum.value() * rhs_sum.value() / nf) / (nf - 1.0)).max(0.0);
    Ok(TrialReport::from_estimates(
        lhs,
        rhs,
        (lhs_var / nf).sqrt(),
        (rhs_var / nf).sqrt(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::solve_equilibria;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Dirichlet(1,...,1) second-moment closed form for the x3-axis:
    /// `E|Σ t_i v_i|² = (2 Σ|v_i|² + 2 Σ_{i<j} Re(v_i conj(v_j))) / (k(k+1))`.
    fn closed_form_alpha2(vertices: &[Complex64]) -> f64 {
        let k = vertices.len() as f64;
        let mut diag = 0.0;
        let mut cross = 0.0;
        for (i, v) in vertices.iter().enumerate() {
            diag += v.norm_sqr();
            for u in vertices.iter().skip(i + 1) {
                cross += (v * u.conj()).re;
            }
        }
        (2.0 * diag + 2.0 * cross) / (k * (k + 1.0))
    }

    #[test]
    fn simplex_sample_basics() {
        let mut rng = Rng::new(1);
        assert_eq!(simplex_sample(1, &mut rng), vec![1.0]);
        for k in [2usize, 3, 6] {
            for _ in 0..200 {
                let t = simplex_sample(k, &mut rng);
                assert_eq!(t.len(), k);
                assert!(t.iter().all(|&x| x >= 0.0));
                assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn simplex_sample_first_component_mean() {
        let mut rng = Rng::new(2);
        let trials = 100_000;
        let mut sum = 0.0;
        for _ in 0..trials {
            sum += simplex_sample(2, &mut rng)[0];
        }
        let mean = sum / trials as f64;
        // E[t1] = 1/2, Var = 1/12, allow 4 standard errors
        let se = (1.0f64 / 12.0 / trials as f64).sqrt();
        assert!((mean - 0.5).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn simplex_sample_second_moment() {
        let mut rng = Rng::new(3);
        let trials = 100_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..trials {
            let t = simplex_sample(3, &mut rng);
            let v = t[0] * t[0];
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / trials as f64;
        let var = (sumsq - sum * sum / trials as f64) / (trials as f64 - 1.0);
        let se = (var / trials as f64).sqrt();
        // E[t1^2] = 2/(k(k+1)) = 1/6 for Dirichlet(1,1,1)
        assert!((mean - 1.0 / 6.0).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn moment_exact_cases() {
        let spec = InertiaSpec::vertical_axis(2.5).unwrap();
        // all vertices on the axis through the plane origin
        let (est, se) =
            inertia_moment_mc(&[c(0.0, 0.0), c(0.0, 0.0)], &spec, 100, 7).unwrap();
        assert_eq!(est, 0.0);
        assert_eq!(se, 0.0);
        // k = 1 is exact: |v|^alpha
        let (est, se) = inertia_moment_mc(&[c(3.0, 4.0)], &spec, 10, 7).unwrap();
        assert!((est - 5.0f64.powf(2.5)).abs() < 1e-12);
        assert_eq!(se, 0.0);
    }

    #[test]
    fn closed_form_validated_against_large_mc() {
        let vertices = [c(0.8, -0.2), c(-0.3, 0.5), c(0.1, 0.9)];
        let spec = InertiaSpec::vertical_axis(2.0).unwrap();
        let (est, se) = inertia_moment_mc(&vertices, &spec, 1_000_000, 11).unwrap();
        let exact = closed_form_alpha2(&vertices);
        assert!(
            (est - exact).abs() < 4.0 * se,
            "mc {est} vs closed form {exact} (se {se})"
        );
    }

    #[test]
    fn se_shrinks_like_sqrt_trials() {
        let vertices = [c(1.0, 0.0), c(0.0, 1.0), c(-0.5, -0.5)];
        let spec = InertiaSpec::vertical_axis(2.0).unwrap();
        let mut ratio_sum = 0.0;
        let reps = 20;
        for rep in 0..reps {
            let (_, se1) = inertia_moment_mc(&vertices, &spec, 2000, 100 + rep).unwrap();
            let (_, se2) = inertia_moment_mc(&vertices, &spec, 4000, 5000 + rep).unwrap();
            ratio_sum += se2 / se1;
        }
        let mean_ratio = ratio_sum / reps as f64;
        let expect = 1.0 / 2.0f64.sqrt();
        assert!(
            (mean_ratio - expect).abs() < 0.2 * expect,
            "mean ratio {mean_ratio}"
        );
    }

    #[test]
    fn permutation_invariance_is_exact() {
        let spec = InertiaSpec::vertical_axis(3.0).unwrap();
        // triangle
        let tri = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, -0.2)];
        assert!(permutation_invariance_check(&tri, &spec, 5000, 13).unwrap() < 1e-12);
        // segment
        let seg = [c(0.4, 0.1), c(-0.6, 0.3)];
        let spec1 = InertiaSpec::vertical_axis(1.0).unwrap();
        assert!(permutation_invariance_check(&seg, &spec1, 5000, 14).unwrap() < 1e-12);
        // pentagon
        let pent: Vec<Complex64> = (0..5)
            .map(|i| Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / 5.0 + 0.3))
            .collect();
        assert!(permutation_invariance_check(&pent, &spec, 5000, 15).unwrap() < 1e-12);
    }

    #[test]
    fn permutations_cover_all() {
        let p = permutations(4);
        assert_eq!(p.len(), 24);
        let mut sorted = p.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
    }

    fn sample_config() -> (ChargeConfiguration, Vec<Complex64>) {
        let mut rng = Rng::new(77);
        let cfg = ChargeConfiguration::new(
            (0..6).map(|_| rng.complex_in_disk(1.0)).collect(),
            (0..6).map(|_| rng.range(0.2, 1.0)).collect(),
        )
        .unwrap()
        .normalize();
        let eq = solve_equilibria(&cfg, 1e-8).unwrap();
        (cfg, eq.points)
    }

    #[test]
    fn hierarchy_trial_unit_vector_is_proven_case() {
        let (cfg, w) = sample_config();
        let mut rng = Rng::new(21);
        for k in 1..=3usize {
            let t = vec![c(1.0, 0.0); k];
            for _ in 0..10 {
                let phi = ConvexFn::DistPow {
                    c: rng.complex_in_disk(1.0),
                    alpha: 1.0 + 2.0 * rng.next_f64(),
                };
                for m in 1..=k {
                    let margin = dbs_hierarchy_trial(&cfg, &w, k, m, &t, &phi).unwrap();
                    assert!(margin >= -1e-9, "k={k} m={m} margin {margin}");
                }
            }
        }
    }

    #[test]
    fn hierarchy_trial_zero_vector_balances() {
        let (cfg, w) = sample_config();
        let phi = ConvexFn::DistPow {
            c: c(0.3, -0.2),
            alpha: 2.0,
        };
        for k in 1..=3usize {
            let t = vec![c(0.0, 0.0); k];
            let margin = dbs_hierarchy_trial(&cfg, &w, k, k, &t, &phi).unwrap();
            // both sides reduce to matching multiples of Φ(0)
            assert!(margin.abs() < 1e-12, "k={k} margin {margin}");
        }
    }

    #[test]
    fn hierarchy_trial_respects_cap() {
        let (cfg, w) = sample_config();
        let t = vec![c(1.0, 0.0); 5];
        let phi = ConvexFn::DistPow {
            c: c(0.0, 0.0),
            alpha: 2.0,
        };
        // k! C(n,k) = 120 * 6 = 720 is fine; large synthetic cap needs n > 12
        assert!(dbs_hierarchy_trial(&cfg, &w, 5, 5, &t, &phi).is_ok());
    }

    #[test]
    fn inertia_trial_level_one_is_exact_moment_case() {
        let (cfg, w) = sample_config();
        let spec = InertiaSpec::vertical_axis(2.0).unwrap();
        let report = inertia_inequality_trial(&cfg, &w, 1, &spec, 10, 1).unwrap();
        assert_eq!(report.lhs_se, 0.0);
        assert_eq!(report.rhs_se, 0.0);
        // identical to the k = m = 1, alpha = 2 moment margin
        let margin = crate::dbs::moment_inequality(&cfg, &w, 1, 1, 2.0).unwrap();
        assert!((report.margin - margin).abs() < 1e-12);
        assert_eq!(report.verdict, TrialVerdict::Consistent);
    }

    #[test]
    fn inertia_trial_all_points_on_axis() {
        // collinear on the real axis, with L = that axis embedded in 3-space
        let cfg = ChargeConfiguration::new(
            vec![c(-1.0, 0.0), c(0.2, 0.0), c(1.0, 0.0)],
            vec![1.0, 2.0, 1.0],
        )
        .unwrap()
        .normalize();
        let eq = solve_equilibria(&cfg, 1e-8).unwrap();
        let spec = InertiaSpec::new(2.0, [0.0; 3], [1.0, 0.0, 0.0]).unwrap();
        let report = inertia_inequality_trial(&cfg, &eq.points, 2, &spec, 500, 3).unwrap();
        assert_eq!(report.lhs_estimate, 0.0);
        assert_eq!(report.rhs_estimate, 0.0);
        assert_eq!(report.verdict, TrialVerdict::Consistent);
    }

    #[test]
    fn inertia_trial_reports_consistent_on_random_config() {
        let (cfg, w) = sample_config();
        let spec = InertiaSpec::vertical_axis(2.0).unwrap();
        for k in [2usize, 3] {
            let report = inertia_inequality_trial(&cfg, &w, k, &spec, 20_000, 9).unwrap();
            assert_eq!(
                report.verdict,
                TrialVerdict::Consistent,
                "margin {} at k={k}",
                report.margin
            );
        }
    }

    #[test]
    fn trial_determinism() {
        let (cfg, w) = sample_config();
        let spec = InertiaSpec::vertical_axis(1.5).unwrap();
        let a = inertia_inequality_trial(&cfg, &w, 2, &spec, 5000, 123).unwrap();
        let b = inertia_inequality_trial(&cfg, &w, 2, &spec, 5000, 123).unwrap();
        assert_eq!(a.lhs_estimate, b.lhs_estimate);
        assert_eq!(a.rhs_estimate, b.rhs_estimate);
        assert_eq!(a.margin, b.margin);
    }
}
