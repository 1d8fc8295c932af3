//! Cross-module properties of the embedding, polygon and quotient examples.

use horn_lab_core::embeddings::{composite_moment, graded_dimension, moment_flag, WeightedEmbeddingSpec};
use horn_lab_core::hermitian_core::{eigenvalues, rng_from_seed, Flag};
use horn_lab_core::lr_invariants::{semistandard_count, Partition};
use horn_lab_core::polygon_spaces::{
    close_polygon, polygon_nonempty, random_rotation, EdgeLengths, TAU_CLOSE,
};
use horn_lab_core::quotient_examples::{
    cpn_moment, hopf_level, isospectral_diagonal_fiber, two_row_level, two_row_moments,
    QuotientStatus,
};
use horn_lab_core::schur_horn::sh_membership;
use horn_lab_core::spectra::{IntegralSpectrum, Spectrum};
use num_complex::Complex64;
use proptest::prelude::*;

fn partitions(size: u32, rows: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, rows: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if rows == 0 {
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, rows - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, rows, &mut Vec::new(), &mut out);
    out
}

#[test]
fn weyl_formula_matches_tableau_enumeration() {
    for size in 0..=8 {
        for parts in partitions(size, 4) {
            let mut w: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
            w.resize(4, 0);
            let lambda = IntegralSpectrum::new(w).unwrap();
            let count = semistandard_count(&Partition::new(parts.clone()).unwrap(), 4);
            assert_eq!(graded_dimension(&lambda, 1).unwrap(), count as u128, "{parts:?}");
        }
    }
}

#[test]
fn graded_pieces_are_rescaled_representations() {
    let mut seen = 0;
    for a in 0..=3i64 {
        for b in 0..=a {
            for c in 0..=b {
                let lambda = IntegralSpectrum::new(vec![a, b, c]).unwrap();
                for k in 1..=5u64 {
                    let scaled: Vec<i64> = lambda.values().iter().map(|v| v * k as i64).collect();
                    let direct = graded_dimension(&IntegralSpectrum::new(scaled).unwrap(), 1).unwrap();
                    assert_eq!(graded_dimension(&lambda, k).unwrap(), direct);
                    seen += 1;
                }
            }
        }
    }
    assert_eq!(seen, 100);
}

#[test]
fn composite_moment_on_random_flags() {
    let spec = WeightedEmbeddingSpec::new(IntegralSpectrum::new(vec![3, 1, 0]).unwrap()).unwrap();
    let lambda = Spectrum::new(vec![3.0, 1.0, 0.0]).unwrap();
    for seed in 0..100 {
        let flag = Flag::random(vec![1, 2, 3], seed).unwrap();
        let h = composite_moment(&flag, &spec).unwrap();
        assert!(eigenvalues(&h).max_abs_diff(&lambda).unwrap() < 1e-10);
        assert!(moment_flag(&h).same_as(&flag, 1e-9));
    }
}

#[test]
fn polygon_closure_agrees_with_inequality() {
    use rand::Rng;
    let mut rng = rng_from_seed(17);
    let mut feasible = 0;
    for trial in 0..300u64 {
        let n = rng.random_range(2..=6);
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0f64).max(1e-3)).collect();
        let lengths = EdgeLengths::new(a).unwrap();
        let closed = close_polygon(&lengths, trial, 10_000);
        assert_eq!(closed.is_some(), polygon_nonempty(&lengths), "{lengths:?}");
        if let Some(p) = closed {
            feasible += 1;
            assert!(p.closure_residual() < TAU_CLOSE);
            assert!(p.length_defect(&lengths) < 1e-12);
        }
    }
    assert!(feasible > 50);
}

#[test]
fn fiber_emptiness_is_schur_horn_membership() {
    let lambdas = [vec![1.0, 0.0], vec![2.0, 1.0, 0.0], vec![1.0, 1.0, -1.0]];
    for l in lambdas {
        let lambda = Spectrum::new(l.clone()).unwrap();
        let n = l.len();
        let grid: Vec<f64> = (0..=4).map(|i| -1.0 + 0.75 * i as f64).collect();
        let mut cases = 0;
        for first in &grid {
            for second in &grid {
                let mut mu = vec![*first, *second];
                mu.truncate(n - 1);
                mu.push(lambda.sum() - mu.iter().sum::<f64>());
                let report = isospectral_diagonal_fiber(&lambda, &mu, 2, 5).unwrap();
                let member = sh_membership(&lambda, &mu).unwrap();
                assert_eq!(report.status == QuotientStatus::Empty, !member, "{l:?} {mu:?}");
                if member {
                    assert!(!report.witnesses.unwrap().is_empty(), "{l:?} {mu:?}");
                }
                cases += 1;
            }
        }
        assert!(cases >= 25);
    }
}

#[test]
fn hopf_status_follows_sign_of_level() {
    for n in 2..6 {
        for k in [-3.0, -1e-9, 0.0, 1e-9, 0.5, 10.0] {
            let expected = if k < 0.0 {
                QuotientStatus::Empty
            } else if k == 0.0 {
                QuotientStatus::Point
            } else {
                QuotientStatus::PositiveDimensional
            };
            assert_eq!(hopf_level(n, k).unwrap().status, expected);
        }
    }
}

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), len)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

proptest! {
    #[test]
    fn cpn_image_in_simplex(z in complex_vec(4)) {
        prop_assume!(z.iter().any(|c| c.norm() > 1e-6));
        let p = cpn_moment(&z).unwrap();
        prop_assert!(p.iter().all(|&x| x >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polygon_rotation_invariance(a in prop::collection::vec(0.1..2.0f64, 3..6), seed in 0u64..1000) {
        let lengths = EdgeLengths::new(a).unwrap();
        if let Some(p) = close_polygon(&lengths, seed, 10_000) {
            let q = p.rotated(&random_rotation(&mut rng_from_seed(seed)));
            prop_assert!(q.length_defect(&lengths) < 1e-12);
            prop_assert!(q.closure_residual() < 2.0 * TAU_CLOSE);
        }
    }

    #[test]
    fn two_row_trace_identity(z in complex_vec(8)) {
        let m = horn_lab_core::matrix_json::CMatrix::from_row_slice(2, 4, &z);
        let (left, right) = two_row_moments(&m).unwrap();
        prop_assert!((left.trace() + right.iter().sum::<f64>()).abs() < 1e-12 * (1.0 + left.trace().abs()));
    }

    #[test]
    fn two_row_level_iff_orthogonal_rows(z in complex_vec(4), s in 0.1..3.0f64, mix in 0.0..1.0f64) {
        // Rows u and v orthogonal with |u|^2 = |v|^2 = s, then optionally mixed.
        let u: Vec<Complex64> = z[..2].to_vec();
        prop_assume!(u.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-3);
        let nu = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let u: Vec<Complex64> = u.iter().map(|c| c * (s.sqrt() / nu)).collect();
        let v = [-u[1].conj(), u[0].conj()];
        let w: Vec<Complex64> = v.iter().zip(&u).map(|(a, b)| a + b * mix).collect();
        let m = horn_lab_core::matrix_json::CMatrix::from_row_slice(2, 2, &[u[0], u[1], w[0], w[1]]);
        let level = two_row_level(&m, 1e-9).unwrap();
        if mix == 0.0 {
            prop_assert!((level.unwrap() - s).abs() < 1e-9);
        } else if mix > 1e-6 {
            prop_assert!(level.is_none());
        }
    }
}
