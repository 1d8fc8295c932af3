//! Projective embeddings of Grassmannians and flag manifolds, seen through
//! their moment maps.
//!
//! A `k`-plane maps to the line through the wedge of any basis (Plücker
//! coordinates). A full flag `V_1 < ... < V_n` maps through the Plücker maps
//! of its subspaces, Veronese maps of degrees `a_k = lambda_k - lambda_{k+1}`
//! and a Segre product. Pulling back the Fubini-Study moment map along that
//! composite gives `sum_k a_k P_{V_k}`, a point of the orbit of `lambda`.
//!
//! Orientation: `V_k` is spanned by the `k` directions with the largest
//! eigenvalues, so `composite_moment` has eigenvalue `lambda_j` on the
//! `j`-th basis vector of the flag. [`crate::hermitian_core::hermitian_to_flag`]
//! orders eigenspaces increasingly, so it returns the complementary flag;
//! [`moment_flag`] undoes that reversal.

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HornError, Result};
use crate::hermitian_core::{eigendecompose_matrix, hermitian_to_flag, Flag, HermitianMatrix};
use crate::matrix_json::CMatrix;
use crate::spectra::IntegralSpectrum;

/// Relative threshold on singular values for rank decisions.
pub const TAU_RANK: f64 = 1e-10;

/// Plücker coordinates of a `k`-plane in `C^n`, indexed by the `k`-subsets
/// of `{1..n}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PluckerVector {
    pub k: usize,
    pub n: usize,
    pub coords: Vec<Complex64>,
}

impl PluckerVector {
    /// 1-based index sets matching `coords`.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        (1..=self.n).combinations(self.k).collect()
    }

    pub fn coordinate(&self, subset: &[usize]) -> Option<Complex64> {
        (1..=self.n)
            .combinations(self.k)
            .position(|s| s == subset)
            .map(|i| self.coords[i])
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest violation of the three-term relations
    /// `p_ij p_kl - p_ik p_jl + p_il p_jk = 0` over `i < j < k < l`.
    /// Only meaningful for `k = 2`; returns `None` otherwise.
    pub fn three_term_residual(&self) -> Option<f64> {
        if self.k != 2 {
            return None;
        }
        let n = self.n;
        let mut index = vec![vec![usize::MAX; n]; n];
        for (pos, s) in (0..n).combinations(2).enumerate() {
            index[s[0]][s[1]] = pos;
        }
        let p = |a: usize, b: usize| self.coords[index[a][b]];
        let worst = (0..n)
            .combinations(4)
            .map(|q| {
                let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
                (p(i, j) * p(k, l) - p(i, k) * p(j, l) + p(i, l) * p(j, k)).norm()
            })
            .fold(0.0, f64::max);
        Some(worst)
    }

    /// `Some(c)` with `other = c * self` when the two vectors are
    /// proportional within `tol` (relative to `|other|`).
    pub fn ratio_to(&self, other: &PluckerVector, tol: f64) -> Option<Complex64> {
        if self.k != other.k || self.n != other.n {
            return None;
        }
        let pivot = (0..self.coords.len())
            .max_by(|&a, &b| self.coords[a].norm().total_cmp(&self.coords[b].norm()))?;
        if self.coords[pivot].norm() == 0.0 {
            return None;
        }
        let c = other.coords[pivot] / self.coords[pivot];
        let defect = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (b - c * a).norm())
            .fold(0.0, f64::max);
        (defect <= tol * other.norm().max(f64::MIN_POSITIVE)).then_some(c)
    }
}

/// Singular values of `m`, largest first, from the eigenvalues of `m m*`.
fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let gram = m * m.adjoint();
    let (s, _) = eigendecompose_matrix(&gram)?;
    Ok(s.values().iter().map(|v| v.max(0.0).sqrt()).collect())
}

fn numerical_rank(m: &CMatrix) -> Result<usize> {
    let sv = singular_values(m)?;
    let top = sv.first().copied().unwrap_or(0.0);
    Ok(sv.iter().filter(|&&s| top > 0.0 && s > TAU_RANK * top).count())
}

/// Lexicographic `k x k` minors of a `k x n` basis matrix (rows span the
/// subspace).
pub fn plucker(basis: &CMatrix) -> Result<PluckerVector> {
    let (k, n) = basis.shape();
    if k == 0 || k > n {
        return Err(HornError::domain(
            "basis",
            format!("need 1 <= k <= n rows, got a {k}x{n} matrix"),
        ));
    }
    let rank = numerical_rank(basis)?;
    if rank < k {
        return Err(HornError::Rank { rank, expected: k });
    }
    let coords = (0..n)
        .combinations(k)
        .map(|cols| basis.select_columns(&cols).determinant())
        .collect();
    Ok(PluckerVector { k, n, coords })
}

/// The weights of the composite embedding of a full flag manifold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IntegralSpectrum", into = "IntegralSpectrum")]
pub struct WeightedEmbeddingSpec {
    lambda: IntegralSpectrum,
}

impl WeightedEmbeddingSpec {
    pub fn new(lambda: IntegralSpectrum) -> Result<Self> {
        if lambda.values().windows(2).any(|w| w[0] <= w[1]) {
            return Err(HornError::domain("lambda", "must be strictly decreasing"));
        }
        Ok(WeightedEmbeddingSpec { lambda })
    }

    pub fn lambda(&self) -> &IntegralSpectrum {
        &self.lambda
    }

    /// `a_k = lambda_k - lambda_{k+1}` with `lambda_{n+1} = 0`. Only the last
    /// degree can be negative.
    pub fn degrees(&self) -> Vec<i64> {
        let v = self.lambda.values();
        (0..v.len())
            .map(|k| v[k] - v.get(k + 1).copied().unwrap_or(0))
            .collect()
    }
}

impl TryFrom<IntegralSpectrum> for WeightedEmbeddingSpec {
    type Error = HornError;

    fn try_from(lambda: IntegralSpectrum) -> Result<Self> {
        WeightedEmbeddingSpec::new(lambda)
    }
}

impl From<WeightedEmbeddingSpec> for IntegralSpectrum {
    fn from(s: WeightedEmbeddingSpec) -> Self {
        s.lambda
    }
}

/// `sum_k a_k P_{V_k}` for a full flag.
pub fn composite_moment(flag: &Flag, spec: &WeightedEmbeddingSpec) -> Result<HermitianMatrix> {
    if !flag.is_full() {
        return Err(HornError::domain("flag", "composite moment needs a full flag"));
    }
    let n = flag.ambient_dim();
    let a = spec.degrees();
    if a.len() != n {
        return Err(HornError::Dimension {
            expected: n,
            found: a.len(),
        });
    }
    let mut m = CMatrix::zeros(n, n);
    for (k, &ak) in a.iter().enumerate() {
        m += flag.subspace_projection(k + 1) * Complex64::new(ak as f64, 0.0);
    }
    HermitianMatrix::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0))
}

/// The flag of top eigenspaces of `h` (largest eigenvalue first), the inverse
/// of [`composite_moment`] on its image.
pub fn moment_flag(h: &HermitianMatrix) -> Flag {
    hermitian_to_flag(h).0.complement()
}

/// Is the `m`-tuple of vectors in `C^n` (rows of `rows`) linearly dependent?
pub fn grassmannian_unstable(rows: &CMatrix) -> Result<bool> {
    let (m, n) = rows.shape();
    if m == 0 || m > n {
        return Err(HornError::domain(
            "matrix",
            format!("need 1 <= m <= n rows, got a {m}x{n} matrix"),
        ));
    }
    Ok(numerical_rank(rows)? < m)
}

/// Dimension of the irreducible representation of highest weight
/// `k * lambda` (Weyl's product formula).
pub fn graded_dimension(lambda: &IntegralSpectrum, k: u64) -> Result<u128> {
    let v = lambda.values();
    let n = v.len();
    let k = BigInt::from(k);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = BigInt::from(j - i);
            num *= &k * (BigInt::from(v[i]) - v[j]) + &gap;
            den *= gap;
        }
    }
    u128::try_from(num / den).map_err(|_| HornError::Overflow("graded dimension".into()))
}
