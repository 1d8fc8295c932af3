//! Small symplectic quotients whose level sets can be classified by hand:
//! the circle acting on `C^n`, the torus acting on projective space, the
//! diagonal torus acting on an isospectral orbit, and the pair of unitary
//! actions on `2 x n` matrices.
//!
//! Sign conventions: with `Phi(v) = |v|^2 / 2` the circle quotient at level
//! `k` is nonempty for `k >= 0`, whereas the corresponding GIT description
//! uses characters of negative weight. The two conventions differ by a sign
//! that this module does not try to reconcile; all levels here are
//! symplectic levels.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conjugation_flow::{ConjugationFlow, FlowSettings, ResidualProjection};
use crate::error::{check_dim, HornError, Result};
use crate::hermitian_core::{
    complex_gaussian, derive_seed, diagonal_moment, eigenvalues, haar_unitary, orbit_point,
    rng_from_seed, HermitianMatrix,
};
use crate::matrix_json::CMatrix;
use crate::schur_horn::{sh_boundary_blocks, sh_membership, DEFAULT_FACET_TOLERANCE};
use crate::spectra::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientStatus {
    Empty,
    Point,
    PositiveDimensional,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Level {
    Scalar(f64),
    Vector(Vec<f64>),
}

/// Classification of one level set, with sample points of the fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport<W> {
    pub level: Level,
    pub status: QuotientStatus,
    /// Real dimension of the quotient (0 for a point or an empty set).
    pub quotient_dimension: usize,
    pub witnesses: Option<Vec<W>>,
}

/// `|v|^2 / 2`, the moment map of the scalar circle action.
pub fn hopf_moment(v: &[Complex64]) -> f64 {
    0.5 * v.iter().map(|z| z.norm_sqr()).sum::<f64>()
}

/// The quotient of `{ |v|^2 / 2 = k }` in `C^n` by the circle: empty for
/// `k < 0`, the origin for `k = 0`, and `CP^{n-1}` for `k > 0` (a point when
/// `n = 1`). Witnesses for `k > 0` are the scaled coordinate vectors.
pub fn hopf_level(n: usize, k: f64) -> Result<LevelReport<Vec<Complex64>>> {
    if n == 0 {
        return Err(HornError::domain("n", "dimension must be at least 1"));
    }
    if !k.is_finite() {
        return Err(HornError::domain("k", "level must be finite"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let (status, quotient_dimension, witnesses) = if k < 0.0 {
        (QuotientStatus::Empty, 0, None)
    } else if k == 0.0 {
        (QuotientStatus::Point, 0, Some(vec![vec![zero; n]]))
    } else {
        let r = (2.0 * k).sqrt();
        let w = (0..n)
            .map(|i| {
                let mut v = vec![zero; n];
                v[i] = Complex64::new(r, 0.0);
                v
            })
            .collect();
        let status = if n == 1 {
            QuotientStatus::Point
        } else {
            QuotientStatus::PositiveDimensional
        };
        (status, 2 * (n - 1), Some(w))
    };
    Ok(LevelReport {
        level: Level::Scalar(k),
        status,
        quotient_dimension,
        witnesses,
    })
}

/// Random points of the level `|v|^2 / 2 = k`, `k > 0`.
pub fn sample_hopf_fiber(n: usize, k: f64, count: usize, seed: u64) -> Result<Vec<Vec<Complex64>>> {
    if n == 0 || !(k > 0.0 && k.is_finite()) {
        return Err(HornError::domain("k", "sampling needs n >= 1 and a finite level k > 0"));
    }
    let r = (2.0 * k).sqrt();
    Ok((0..count as u64)
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            let v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.into_iter().map(|z| z * (r / norm)).collect()
        })
        .collect())
}

/// `(|z_0|^2, ..., |z_n|^2) / |z|^2`, the torus moment map on `CP^n`.
pub fn cpn_moment(z: &[Complex64]) -> Result<Vec<f64>> {
    let w: Vec<f64> = z.iter().map(|c| c.norm_sqr()).collect();
    let total: f64 = w.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(HornError::domain("z", "needs a nonzero finite vector"));
    }
    Ok(w.into_iter().map(|x| x / total).collect())
}

/// `count` points of `CP^n` pushed through [`cpn_moment`].
///
/// Each sample is a complex Gaussian vector with coordinate scales
/// `exp(c u_j)`, `u_j` uniform in `[0, 1]` and `c` uniform in `[0, 12]`, so
/// the samples range from nearly uniform to concentrated on one coordinate
/// and reach every face of the simplex.
pub fn cpn_sample(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            let c: f64 = rng.random_range(0.0..12.0);
            let z: Vec<Complex64> = (0..=n)
                .map(|_| {
                    let u: f64 = rng.random();
                    complex_gaussian(&mut rng) * (c * u).exp()
                })
                .collect();
            cpn_moment(&z).expect("Gaussian vectors are nonzero")
        })
        .collect()
}

/// Real dimension of the orbit with this spectrum.
fn orbit_dimension(lambda: &[f64], tol: f64) -> usize {
    let n = lambda.len();
    let mut sorted = lambda.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut multiplicities = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || sorted[start] - sorted[i] > tol {
            multiplicities.push(i - start);
            start = i;
        }
    }
    n * n - multiplicities.iter().map(|m| m * m).sum::<usize>()
}

/// Hermitian matrices with spectrum `lambda` and diagonal `mu`, modulo the
/// diagonal torus.
///
/// Empty exactly when `mu` is outside the Schur-Horn polytope. Otherwise
/// `samples` descents of `|diag(H) - mu|^2` over the orbit are run from
/// Haar-random starts (sample `i` seeded by `derive_seed(seed, i)`) and the
/// converged ones are reported as witnesses. The quotient dimension is read
/// off the best witness: on each diagonal block forced by the active facets
/// of the polytope it is `dim O_block - 2 (block size - 1)`, clamped at 0.
pub fn isospectral_diagonal_fiber(
    lambda: &Spectrum,
    mu: &[f64],
    samples: usize,
    seed: u64,
) -> Result<LevelReport<HermitianMatrix>> {
    check_dim(lambda.len(), mu.len())?;
    let level = Level::Vector(mu.to_vec());
    if !sh_membership(lambda, mu)? {
        return Ok(LevelReport {
            level,
            status: QuotientStatus::Empty,
            quotient_dimension: 0,
            witnesses: None,
        });
    }

    let n = lambda.len();
    let scale = 1.0 + lambda.norm();
    let diameter = if lambda.diameter() > 0.0 { lambda.diameter() } else { 1.0 };
    let settings = FlowSettings {
        target_residual: 1e-10 * scale,
        grad_tolerance: 1e-12 * scale,
        max_iter: 5000,
        initial_step: 1.0 / (4.0 * diameter * diameter),
        record_history: false,
    };
    let offset = HermitianMatrix::from_real_diagonal(mu).scaled(-1.0).into_matrix();
    let flow = ConjugationFlow::new(offset, ResidualProjection::Diagonal);

    let runs: Vec<(f64, HermitianMatrix)> = (0..samples.max(1) as u64)
        .into_par_iter()
        .map(|i| {
            let start = orbit_point(lambda, &haar_unitary(n, derive_seed(seed, i)))
                .expect("dimensions agree");
            let out = flow.run(vec![start], &settings);
            let h = out.iterates.into_iter().next().expect("one iterate");
            (out.residual, h)
        })
        .collect();

    let (_, best) = runs
        .iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one sample");
    let tol = 1e-8 * scale;
    let blocks = sh_boundary_blocks(best, DEFAULT_FACET_TOLERANCE.max(tol))
        .map(|b| b.blocks)
        .unwrap_or_else(|| vec![(0..n).collect()]);
    let quotient_dimension: usize = blocks
        .iter()
        .map(|b| {
            let sub = CMatrix::from_fn(b.len(), b.len(), |i, j| best.entry(b[i], b[j]));
            let block_spectrum = eigenvalues(&HermitianMatrix::new(sub).expect("principal submatrix"));
            orbit_dimension(block_spectrum.values(), tol).saturating_sub(2 * (b.len() - 1))
        })
        .sum();

    let witnesses: Vec<HermitianMatrix> = runs
        .into_iter()
        .filter(|(r, _)| *r < settings.target_residual)
        .map(|(_, h)| h)
        .collect();
    Ok(LevelReport {
        level,
        status: if quotient_dimension == 0 {
            QuotientStatus::Point
        } else {
            QuotientStatus::PositiveDimensional
        },
        quotient_dimension,
        witnesses: Some(witnesses),
    })
}

/// Moment maps of `U(2)` acting on the left and the diagonal torus of
/// `U(n)` acting on the right of a `2 x n` matrix: `(-M M*, diag(M* M))`.
pub fn two_row_moments(m: &CMatrix) -> Result<(HermitianMatrix, Vec<f64>)> {
    check_dim(2, m.nrows())?;
    if m.ncols() < 2 {
        return Err(HornError::domain("matrix", "needs at least two columns"));
    }
    let left = HermitianMatrix::new(-(m * m.adjoint()))?;
    let right = diagonal_moment(&HermitianMatrix::new(m.adjoint() * m)?);
    Ok((left, right))
}

/// `Some(s)` when the rows of `m` are orthogonal with common norm-square `s`,
/// i.e. when `-M M* = -s I` within `tol`.
pub fn two_row_level(m: &CMatrix, tol: f64) -> Result<Option<f64>> {
    let (left, _) = two_row_moments(m)?;
    let s = -left.entry(0, 0).re;
    let target = HermitianMatrix::identity(2).scaled(-s);
    Ok((left.max_abs_diff(&target) <= tol).then_some(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian_core::ginibre;

    fn sp(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hopf_trichotomy() {
        let r = hopf_level(2, 0.5).unwrap();
        assert_eq!(r.status, QuotientStatus::PositiveDimensional);
        for w in r.witnesses.unwrap() {
            assert!((2.0 * hopf_moment(&w) - 1.0).abs() < 1e-15);
        }
        assert_eq!(hopf_level(2, 0.0).unwrap().status, QuotientStatus::Point);
        let empty = hopf_level(2, -1.0).unwrap();
        assert_eq!(empty.status, QuotientStatus::Empty);
        assert!(empty.witnesses.is_none());
        assert_eq!(hopf_level(1, 3.0).unwrap().status, QuotientStatus::Point);
        assert!(hopf_level(0, 1.0).is_err());
    }

    #[test]
    fn hopf_samples_on_level() {
        for v in sample_hopf_fiber(3, 0.7, 20, 4).unwrap() {
            assert!((hopf_moment(&v) - 0.7).abs() < 1e-13);
        }
    }

    #[test]
    fn cpn_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(cpn_moment(&[one, zero, zero]).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(cpn_moment(&[one, one]).unwrap(), vec![0.5, 0.5]);
        assert!(cpn_moment(&[zero, zero]).is_err());
        let z = [Complex64::new(0.3, -1.0), Complex64::new(2.0, 0.5)];
        let scaled: Vec<Complex64> = z.iter().map(|c| c * Complex64::new(-2.0, 7.0)).collect();
        let (a, b) = (cpn_moment(&z).unwrap(), cpn_moment(&scaled).unwrap());
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-15));
    }

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dimension(&[1.0, 0.0], 1e-12), 2);
        assert_eq!(orbit_dimension(&[1.0, 0.0, 0.0], 1e-12), 4);
        assert_eq!(orbit_dimension(&[2.0, 1.0, 0.0], 1e-12), 6);
        assert_eq!(orbit_dimension(&[0.0, 0.0], 1e-12), 0);
    }

    #[test]
    fn fiber_at_a_vertex_is_the_diagonal_matrix() {
        let r = isospectral_diagonal_fiber(&sp(&[1.0, 0.0]), &[1.0, 0.0], 4, 0).unwrap();
        assert_eq!(r.status, QuotientStatus::Point);
        let w = r.witnesses.unwrap();
        assert!(!w.is_empty());
        // Off-diagonal entries are of order sqrt(diagonal residual).
        for h in w {
            assert!(h.max_abs_diff(&HermitianMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-4);
        }
    }

    #[test]
    fn fiber_at_the_center_is_a_circle() {
        let r = isospectral_diagonal_fiber(&sp(&[1.0, 0.0]), &[0.5, 0.5], 4, 0).unwrap();
        assert_eq!(r.status, QuotientStatus::Point);
        for h in r.witnesses.unwrap() {
            assert!((h.entry(0, 1).norm() - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn fiber_outside_is_empty() {
        let r = isospectral_diagonal_fiber(&sp(&[1.0, 0.0]), &[2.0, -1.0], 4, 0).unwrap();
        assert_eq!(r.status, QuotientStatus::Empty);
        assert!(r.witnesses.is_none());
    }

    #[test]
    fn interior_fiber_of_regular_orbit_has_dimension_two() {
        let r = isospectral_diagonal_fiber(&sp(&[2.0, 1.0, 0.0]), &[1.0, 1.0, 1.0], 4, 3).unwrap();
        assert_eq!(r.status, QuotientStatus::PositiveDimensional);
        assert_eq!(r.quotient_dimension, 2);
        // An edge of the hexagon: the fiber is a single torus orbit.
        let e = isospectral_diagonal_fiber(&sp(&[2.0, 1.0, 0.0]), &[1.5, 1.5, 0.0], 4, 3).unwrap();
        assert_eq!(e.status, QuotientStatus::Point);
    }

    #[test]
    fn two_row_examples() {
        let mut m = CMatrix::zeros(2, 4);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::new(1.0, 0.0);
        let (left, right) = two_row_moments(&m).unwrap();
        assert!(left.max_abs_diff(&HermitianMatrix::identity(2).scaled(-1.0)) == 0.0);
        assert_eq!(right, vec![1.0, 1.0, 0.0, 0.0]);
        assert_eq!(two_row_level(&m, 1e-12).unwrap(), Some(1.0));

        let (left, right) = two_row_moments(&CMatrix::zeros(2, 3)).unwrap();
        assert_eq!(left.frobenius_norm(), 0.0);
        assert_eq!(right, vec![0.0; 3]);

        let g = ginibre(2, 5, &mut rng_from_seed(1));
        let (left, right) = two_row_moments(&g).unwrap();
        assert!((left.trace() + right.iter().sum::<f64>()).abs() < 1e-12);
        assert_eq!(two_row_level(&g, 1e-9).unwrap(), None);

        assert!(two_row_moments(&CMatrix::zeros(3, 3)).is_err());
        assert!(two_row_moments(&CMatrix::zeros(2, 1)).is_err());
    }
}
