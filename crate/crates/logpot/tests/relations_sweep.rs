//! Cross-module sweeps: the diagonal-vs-spectrum specialization for normal
//! matrices, LP verification of the subset-sum relations independently of
//! the constructed certificates, the perturbation (uniqueness) probe, and
//! LP/battery consistency.

use logpot::convex::BatterySpec;
use logpot::dbs::{
    check_newton_identities, construct_hierarchy, newton_scale, symmetric_vectors,
};
use logpot::linalg::{binomial, random_unitary, ComplexMatrix};
use logpot::majorization::{
    check_weighted_majorization, convex_battery, MajorizationOutcome, WeightedTuple, CERT_TOL,
};
use logpot::potential::{solve_equilibria, ChargeConfiguration};
use logpot::rng::Rng;
use num_complex::Complex64;

fn random_config(rng: &mut Rng, n: usize) -> ChargeConfiguration {
    ChargeConfiguration::new(
        (0..n).map(|_| rng.complex_in_disk(1.0)).collect(),
        (0..n).map(|_| rng.range(0.1, 1.0)).collect(),
    )
    .unwrap()
    .normalize()
}

#[test]
fn normal_matrix_diagonal_majorized_by_spectrum() {
    // diag(U diag(tau) U*) with uniform weights is LP-dominated by the
    // spectrum: the doubly stochastic specialization for normal matrices.
    let mut rng = Rng::new(41);
    for n in [3usize, 5] {
        for _ in 0..5 {
            let u = random_unitary(n, &mut rng);
            let tau: Vec<Complex64> = (0..n).map(|_| rng.complex_in_disk(1.0)).collect();
            let t = u
                .mul(&ComplexMatrix::diag(&tau))
                .unwrap()
                .mul(&u.adjoint())
                .unwrap();
            let uniform = vec![1.0 / n as f64; n];
            let diag = WeightedTuple::from_complex(&t.diagonal(), uniform.clone()).unwrap();
            let spectrum = WeightedTuple::from_complex(&tau, uniform).unwrap();
            let out = check_weighted_majorization(&diag, &spectrum, CERT_TOL).unwrap();
            match out {
                MajorizationOutcome::Feasible(cert) => {
                    // column sums 1: doubly stochastic certificate
                    for j in 0..n {
                        let col: f64 = (0..n).map(|i| cert.r[i][j]).sum();
                        assert!((col - 1.0).abs() < 1e-8);
                    }
                }
                _ => panic!("diagonal must be majorized by the spectrum"),
            }
        }
    }
}

#[test]
fn subset_sum_relations_are_lp_feasible_independently() {
    // level-k subset sums (order m = 1) pass the LP without using the
    // constructed certificate at all
    let mut rng = Rng::new(42);
    for n in [4usize, 6, 7] {
        let cfg = random_config(&mut rng, n);
        let eq = solve_equilibria(&cfg, 1e-8).unwrap();
        for k in 1..n {
            if binomial(n - 1, k) * binomial(n, k) > 1200 {
                continue; // keep the LP tableaus small in this sweep
            }
            let sv =
                symmetric_vectors(&cfg, &eq.points, k, 1, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
                    .unwrap();
            let (x, y) = sv.tuples().unwrap();
            let out = check_weighted_majorization(&x, &y, CERT_TOL).unwrap();
            assert!(
                out.is_feasible(),
                "level-{k} subset sums must be feasible at n={n}"
            );
        }
    }
}

#[test]
fn perturbed_equilibria_are_detected() {
    // moving a single equilibrium point must break at least one level
    // check: a subset-product identity or a level LP
    let mut rng = Rng::new(43);
    let mut detected = 0usize;
    let total = 25usize;
    for _ in 0..total {
        let n = 4 + rng.usize_below(4); // 4..=7
        let cfg = random_config(&mut rng, n);
        let eq = solve_equilibria(&cfg, 1e-8).unwrap();
        let diameter = cfg.diameter();
        let mut w = eq.points.clone();
        let idx = rng.usize_below(w.len());
        let delta = Complex64::from_polar(1e-3 * diameter, rng.range(0.0, 6.28));
        w[idx] += delta;
        let mut caught = false;
        for k in 1..n {
            let resid = check_newton_identities(&cfg, &w, k).unwrap();
            if resid / newton_scale(&cfg, k) > 1e-6 {
                caught = true;
                break;
            }
        }
        if !caught {
            // fall back to the level LPs
            for k in 1..n {
                let sv = symmetric_vectors(
                    &cfg,
                    &w,
                    k,
                    k,
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                )
                .unwrap();
                let (x, y) = sv.tuples().unwrap();
                if !check_weighted_majorization(&x, &y, CERT_TOL)
                    .unwrap()
                    .is_feasible()
                {
                    caught = true;
                    break;
                }
            }
        }
        assert!(caught, "perturbation of size {:.3e} went unnoticed", delta.norm());
        detected += 1;
    }
    assert_eq!(detected, total);
}

#[test]
fn battery_never_contradicts_feasible_lp() {
    let mut rng = Rng::new(44);
    let spec = BatterySpec {
        angles: 12,
        grid: 5,
        ..BatterySpec::default()
    };
    for trial in 0..60 {
        let n = 2 + rng.usize_below(4);
        let m = 1 + rng.usize_below(3);
        let y: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)])
            .collect();
        let mut aw: Vec<f64> = (0..m).map(|_| rng.range(0.05, 1.0)).collect();
        let s: f64 = aw.iter().sum();
        aw.iter_mut().for_each(|v| *v /= s);
        let (x, bw) = if trial % 2 == 0 {
            // feasible by construction
            let r: Vec<Vec<f64>> = (0..m)
                .map(|_| {
                    let mut row: Vec<f64> = (0..n).map(|_| rng.range(0.05, 1.0)).collect();
                    let s: f64 = row.iter().sum();
                    row.iter_mut().for_each(|v| *v /= s);
                    row
                })
                .collect();
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
            (x, bw)
        } else {
            // shifted points: infeasible when the shift is substantial
            let x: Vec<Vec<f64>> = (0..m)
                .map(|_| vec![rng.range(-1.0, 1.0) + 3.0, rng.range(-1.0, 1.0)])
                .collect();
            let mut bw: Vec<f64> = (0..n).map(|_| rng.range(0.05, 1.0)).collect();
            let s: f64 = bw.iter().sum();
            bw.iter_mut().for_each(|v| *v /= s);
            (x, bw)
        };
        let xt = WeightedTuple::new(x, aw).unwrap();
        let yt = WeightedTuple::new(y, bw).unwrap();
        let lp = check_weighted_majorization(&xt, &yt, CERT_TOL).unwrap();
        let battery = convex_battery(&xt, &yt, &spec).unwrap();
        if battery.worst_margin < -1e-6 {
            assert!(
                !lp.is_feasible(),
                "battery found violation {} but LP said feasible",
                battery.worst_margin
            );
        }
        if trial % 2 == 0 {
            assert!(lp.is_feasible());
        }
    }
}

#[test]
fn hierarchy_certificates_at_larger_n() {
    let mut rng = Rng::new(45);
    let cfg = random_config(&mut rng, 8);
    for k in [2usize, 4, 7] {
        let cert = construct_hierarchy(&cfg, k).unwrap();
        assert!(
            cert.residuals.max() < 1e-8,
            "k={k}: {:?}",
            cert.residuals
        );
    }
}
