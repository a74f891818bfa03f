//! Cross-solver checks for the linear-algebra kernels: Schur residual
//! sweeps, eigenvalues against an independent characteristic-polynomial
//! route, and the compound-matrix spectral identities.

use logpot::linalg::{
    additive_compound, compound, hadamard, hermitian_eigen, k_subsets, random_unitary,
    schur_decompose, ComplexMatrix,
};
use logpot::matching::match_distance;
use logpot::poly::{aberth_roots, Polynomial};
use logpot::rng::Rng;
use num_complex::Complex64;

fn random_matrix(n: usize, rng: &mut Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0))
    })
}

fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().into_iter().sum()
}

/// Characteristic polynomial by the Faddeev-LeVerrier trace recursion;
/// an eigensolver-independent route to the spectrum.
fn characteristic_polynomial(a: &ComplexMatrix) -> Polynomial {
    let n = a.rows();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = ComplexMatrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m).unwrap();
        let c = -trace(&am) / k as f64;
        coeffs[n - k] = c;
        m = ComplexMatrix::from_fn(n, n, |i, j| {
            let e = if i == j { c } else { Complex64::new(0.0, 0.0) };
            am[(i, j)] + e
        });
    }
    Polynomial::new(coeffs)
}

#[test]
fn schur_invariants_on_200_random_matrices() {
    let mut rng = Rng::new(20_240_101);
    for trial in 0..200 {
        let n = 2 + trial % 15; // dims 2..16
        let a = random_matrix(n, &mut rng);
        let s = schur_decompose(&a).unwrap();
        assert!(
            s.q.unitary_defect() <= 1e-12 * n as f64,
            "unitary defect at n={n}"
        );
        let tnorm = s.t.max_norm();
        for i in 1..n {
            for j in 0..i {
                assert!(s.t[(i, j)].norm() <= 1e-12 * tnorm);
            }
        }
        let recon = s.q.mul(&s.t).unwrap().mul(&s.q.adjoint()).unwrap();
        let resid = recon.sub(&a).unwrap().max_norm();
        assert!(resid <= 1e-10 * a.max_norm(), "residual {resid:e} at n={n}");
    }
}

#[test]
fn schur_eigenvalues_match_characteristic_roots() {
    let mut rng = Rng::new(7);
    for _ in 0..20 {
        let a = random_matrix(6, &mut rng);
        let schur_eigs = schur_decompose(&a).unwrap().eigenvalues();
        let p = characteristic_polynomial(&a);
        let roots = aberth_roots(&p, 1e-13).unwrap();
        let dist = match_distance(&schur_eigs, &roots);
        assert!(dist < 1e-8, "matching distance {dist:e}");
    }
}

#[test]
fn hermitian_eigen_matches_schur() {
    let mut rng = Rng::new(8);
    for _ in 0..10 {
        let g = random_matrix(8, &mut rng);
        let a = ComplexMatrix::from_fn(8, 8, |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5);
        let (vals, _) = hermitian_eigen(&a).unwrap();
        let schur_eigs = schur_decompose(&a).unwrap().eigenvalues();
        let as_complex: Vec<Complex64> = vals.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        assert!(match_distance(&as_complex, &schur_eigs) < 1e-9);
    }
}

#[test]
fn compound_of_unitary_is_unitary() {
    let mut rng = Rng::new(9);
    for n in [4usize, 6, 8] {
        let u = random_unitary(n, &mut rng);
        for k in 1..=n.min(4) {
            let uk = compound(&u, k).unwrap();
            assert!(
                uk.unitary_defect() < 1e-10,
                "defect {} at n={n}, k={k}",
                uk.unitary_defect()
            );
            // its Hadamard square is doubly stochastic
            let s = hadamard(&uk, &uk.conj()).unwrap();
            for i in 0..s.rows() {
                let row: f64 = (0..s.cols()).map(|j| s[(i, j)].re).sum();
                let col: f64 = (0..s.rows()).map(|j| s[(j, i)].re).sum();
                assert!((row - 1.0).abs() < 1e-10);
                assert!((col - 1.0).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn additive_compound_spectrum_is_pairwise_sums() {
    let mut rng = Rng::new(10);
    for _ in 0..10 {
        let a = random_matrix(5, &mut rng);
        let eigs = schur_decompose(&a).unwrap().eigenvalues();
        let delta = additive_compound(&a, 2).unwrap();
        let delta_eigs = schur_decompose(&delta).unwrap().eigenvalues();
        let expected: Vec<Complex64> = k_subsets(5, 2)
            .iter()
            .map(|s| eigs[s[0]] + eigs[s[1]])
            .collect();
        assert!(match_distance(&delta_eigs, &expected) < 1e-8);
    }
}
