use horn_lab_core::horn_flow::{
    feasibility, norm_square_descent, FeasibilityStatus, HornOptions,
};
use horn_lab_core::lr_invariants::{invariant_dimension, lr_coefficient, saturation_scan, Partition};
use horn_lab_core::schur_horn::{sh_membership, sh_sample_image, sh_vertices};
use horn_lab_core::spectra::{IntegralSpectrum, Spectrum};
use proptest::prelude::*;

fn sp(v: &[f64]) -> Spectrum {
    Spectrum::new(v.to_vec()).unwrap()
}

fn isp(v: &[i64]) -> IntegralSpectrum {
    IntegralSpectrum::new(v.to_vec()).unwrap()
}

#[test]
fn witnesses_keep_their_spectra() {
    let (l, m, n) = (sp(&[2.0, 0.0, -1.0]), sp(&[1.0, 0.5, 0.0]), sp(&[0.0, -1.0, -1.5]));
    let w = norm_square_descent(&l, &m, &n, 4, &HornOptions::default()).unwrap();
    assert!(w.spectrum_error(&l, &m, &n) < 1e-9);
    assert!((w.recompute_residual() - w.residual).abs() < 1e-15);
}

#[test]
fn feasibility_agrees_with_invariants_on_small_triples() {
    let triples: [[&[i64]; 3]; 5] = [
        [&[1, 0], &[1, 0], &[-1, -1]],
        [&[1, 0], &[1, 0], &[0, -2]],
        [&[2, 0], &[1, 0], &[-1, -2]],
        [&[1, 0, 0], &[1, 0, 0], &[0, -1, -1]],
        [&[2, 0, 0], &[0, 0, 0], &[0, 0, -1]],
    ];
    for [a, b, c] in triples {
        let (l, m, n) = (isp(a), isp(b), isp(c));
        let report = feasibility(&l.to_real(), &m.to_real(), &n.to_real(), 0, &HornOptions::default()).unwrap();
        let dim = invariant_dimension(&l, &m, &n).unwrap();
        assert_eq!(report.status == FeasibilityStatus::Feasible, dim > 0, "{a:?} {b:?} {c:?}");
        if dim > 0 {
            assert_eq!(saturation_scan(&l, &m, &n, 4).unwrap(), Some(1));
        }
    }
}

#[test]
fn vertices_lie_in_their_polytope() {
    let lambda = sp(&[3.0, 1.0, 1.0, -2.0]);
    let p = sh_vertices(&lambda);
    assert_eq!(p.vertices.len(), 12);
    for v in &p.vertices {
        assert!(sh_membership(&lambda, v).unwrap());
    }
    for d in sh_sample_image(&lambda, 200, 1) {
        assert!(sh_membership(&lambda, &d).unwrap());
    }
}

fn partition(max_rows: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lr_coefficients_are_symmetric(a in partition(3, 3), b in partition(3, 3), c in partition(4, 5)) {
        prop_assert_eq!(lr_coefficient(&a, &b, &c), lr_coefficient(&b, &a, &c));
    }

    #[test]
    fn invariants_are_permutation_symmetric(
        a in prop::collection::vec(-2i64..=2, 2),
        b in prop::collection::vec(-2i64..=2, 2),
        c0 in -2i64..=2,
    ) {
        let mut a = a; a.sort_unstable_by(|x, y| y.cmp(x));
        let mut b = b; b.sort_unstable_by(|x, y| y.cmp(x));
        let rest = -(a.iter().sum::<i64>() + b.iter().sum::<i64>());
        let mut c = vec![c0, rest - c0]; c.sort_unstable_by(|x, y| y.cmp(x));
        let (l, m, n) = (isp(&a), isp(&b), isp(&c));
        let d = invariant_dimension(&l, &m, &n).unwrap();
        prop_assert_eq!(d, invariant_dimension(&m, &l, &n).unwrap());
        prop_assert_eq!(d, invariant_dimension(&n, &m, &l).unwrap());
        prop_assert_eq!(d, invariant_dimension(&l, &n, &m).unwrap());
    }
}
