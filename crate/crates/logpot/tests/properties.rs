//! Structural properties under randomized inputs.

use logpot::geometry::dist_to_hull;
use logpot::hausdorff::{directed_hausdorff, symmetric_hausdorff};
use logpot::matching::match_distance;
use logpot::rng::Rng;
use num_complex::Complex64;
use proptest::prelude::*;

fn complex_vec(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), len)
        .prop_map(|v| v.into_iter().map(|(x, y)| Complex64::new(x, y)).collect())
}

proptest! {
    #[test]
    fn hausdorff_is_a_metric_on_finite_sets(
        a in complex_vec(1..8),
        b in complex_vec(1..8),
        c in complex_vec(1..8),
    ) {
        let hab = symmetric_hausdorff(&a, &b).unwrap();
        let hba = symmetric_hausdorff(&b, &a).unwrap();
        prop_assert_eq!(hab, hba);
        prop_assert!(hab >= 0.0);
        prop_assert_eq!(symmetric_hausdorff(&a, &a).unwrap(), 0.0);
        // triangle inequality
        let hac = symmetric_hausdorff(&a, &c).unwrap();
        let hcb = symmetric_hausdorff(&c, &b).unwrap();
        prop_assert!(hab <= hac + hcb + 1e-12);
        // directed distances are dominated by the symmetric one
        prop_assert!(directed_hausdorff(&a, &b).unwrap() <= hab);
    }

    #[test]
    fn hull_distance_vanishes_on_members(pts in complex_vec(1..10)) {
        // members on a degenerate (collinear) hull pick up projection
        // roundoff, so this is a tolerance check rather than exact zero
        for &p in &pts {
            prop_assert!(dist_to_hull(p, &pts) <= 1e-12 * (1.0 + p.norm()));
        }
        let bary = pts.iter().sum::<Complex64>() / pts.len() as f64;
        prop_assert!(dist_to_hull(bary, &pts) <= 1e-12 * (1.0 + bary.norm()));
    }

    #[test]
    fn matching_permutations_has_zero_distance(pts in complex_vec(1..9), seed in any::<u64>()) {
        let mut shuffled = pts.clone();
        Rng::new(seed).shuffle(&mut shuffled);
        prop_assert_eq!(match_distance(&pts, &shuffled), 0.0);
    }

    #[test]
    fn simplex_samples_live_on_the_simplex(k in 1usize..9, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let t = logpot::conjecture::simplex_sample(k, &mut rng);
        prop_assert_eq!(t.len(), k);
        prop_assert!(t.iter().all(|&x| (0.0..=1.0).contains(&x)));
        prop_assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn weighted_variance_is_nonnegative_and_centered(
        pts in complex_vec(2..8),
        seed in any::<u64>(),
    ) {
        use logpot::potential::{barycenter, weighted_variance, ChargeConfiguration};
        let mut rng = Rng::new(seed);
        // ensure distinct points
        let mut unique = pts.clone();
        unique.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        unique.dedup_by(|a, b| (*a - *b).norm() < 1e-6);
        prop_assume!(unique.len() >= 2);
        let charges: Vec<f64> = (0..unique.len()).map(|_| rng.range(0.1, 1.0)).collect();
        let cfg = ChargeConfiguration::new(unique, charges).unwrap().normalize();
        let var = weighted_variance(&cfg).unwrap();
        prop_assert!(var >= 0.0);
        // shifting by the barycenter re-centers at zero
        let zeta = barycenter(&cfg).unwrap();
        let centered = cfg.affine(Complex64::new(1.0, 0.0), -zeta).unwrap();
        let zeta2 = barycenter(&centered).unwrap();
        prop_assert!(zeta2.norm() < 1e-12 * (1.0 + zeta.norm()));
        prop_assert!((weighted_variance(&centered).unwrap() - var).abs() < 1e-10 * (1.0 + var));
    }
}
