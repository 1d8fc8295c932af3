//! Hermitian matrices, their eigendecomposition, Haar-random unitaries and
//! the dictionary between Hermitian matrices and flags.
//!
//! A Hermitian matrix `H` with distinct eigenvalues determines the full flag
//! `V_1 < V_2 < ... < V_n` where `V_i` is the sum of the eigenspaces of its
//! `i` smallest eigenvalues. Conversely a flag plus an increasing list of
//! eigenvalues `e_i` determines `H = sum_i e_i * P_i`, with `P_i` the
//! orthogonal projection onto `V_{i-1}^perp ∩ V_i`. Repeated eigenvalues
//! give partial flags.
//!
//! The trace-form identification of Hermitian matrices with the dual of the
//! Lie algebra of `U(n)` is never materialized: every moment map in this
//! crate takes values directly in Hermitian matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, HornError, Result};
use crate::matrix_json::{CMatrix, MatrixJson};
use crate::spectra::Spectrum;

pub const TAU_HERM: f64 = 1e-10;
pub const TAU_UNIT: f64 = 1e-10;
pub const TAU_EIG: f64 = 1e-8;
/// Relative gap (fraction of the spectral diameter) below which eigenvalues merge.
pub const TAU_GAP: f64 = 1e-8;

const JACOBI_REL_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Checks squareness and self-adjointness within [`TAU_HERM`] (scaled by
    /// the largest entry when that exceeds one), then symmetrizes exactly.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(HornError::Invariant(format!(
                "Hermitian matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(HornError::Invariant("matrix dimension must be positive".into()));
        }
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let defect = (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !defect.is_finite() || defect > TAU_HERM * scale {
            return Err(HornError::Invariant(format!(
                "matrix is not Hermitian: max |H - H*| = {defect:e}"
            )));
        }
        Ok(Self::symmetrized(m))
    }

    /// Projects onto the Hermitian part without validation.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        HermitianMatrix(h)
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        HermitianMatrix(CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    /// Builds a real symmetric matrix from rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            check_dim(n, r.len())?;
        }
        Self::new(CMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j], 0.0)))
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix(CMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix(CMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        check_dim(self.dim(), other.dim())?;
        Ok(HermitianMatrix(&self.0 + &other.0))
    }

    pub fn scaled(&self, c: f64) -> HermitianMatrix {
        HermitianMatrix(&self.0 * Complex64::new(c, 0.0))
    }

    /// `U H U*`.
    pub fn conjugate_by(&self, u: &CMatrix) -> HermitianMatrix {
        Self::symmetrized(u * &self.0 * u.adjoint())
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl TryFrom<MatrixJson> for HermitianMatrix {
    type Error = HornError;

    fn try_from(j: MatrixJson) -> Result<Self> {
        HermitianMatrix::new(j.to_matrix()?)
    }
}

impl From<HermitianMatrix> for MatrixJson {
    fn from(h: HermitianMatrix) -> Self {
        MatrixJson::from_matrix(&h.0)
    }
}

/// Square complex matrix with `U U* = I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(HornError::Invariant(format!(
                "unitary matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows();
        let defect = (&m * m.adjoint() - CMatrix::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if !defect.is_finite() || defect > TAU_UNIT {
            return Err(HornError::Invariant(format!(
                "matrix is not unitary: max |UU* - I| = {defect:e}"
            )));
        }
        Ok(UnitaryMatrix(m))
    }

    pub(crate) fn new_unchecked(m: CMatrix) -> Self {
        UnitaryMatrix(m)
    }

    pub fn identity(n: usize) -> Self {
        UnitaryMatrix(CMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix(self.0.adjoint())
    }

    pub fn mul(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix(&self.0 * &other.0)
    }

    /// Max-entry distance of `U U*` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        (&self.0 * self.0.adjoint() - CMatrix::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<MatrixJson> for UnitaryMatrix {
    type Error = HornError;

    fn try_from(j: MatrixJson) -> Result<Self> {
        UnitaryMatrix::new(j.to_matrix()?)
    }
}

impl From<UnitaryMatrix> for MatrixJson {
    fn from(u: UnitaryMatrix) -> Self {
        MatrixJson::from_matrix(&u.0)
    }
}

/// Spectrum in decreasing order plus a unitary whose columns are the
/// matching eigenvectors, so `H = U diag(spectrum) U*`.
pub fn eigendecompose(h: &HermitianMatrix) -> (Spectrum, UnitaryMatrix) {
    let (values, vectors) = jacobi_eigen(h.matrix());
    let spectrum = Spectrum::new(values).expect("Jacobi eigenvalues are finite and sorted");
    (spectrum, UnitaryMatrix::new_unchecked(vectors))
}

/// Same as [`eigendecompose`] for an unvalidated matrix.
pub fn eigendecompose_matrix(m: &CMatrix) -> Result<(Spectrum, UnitaryMatrix)> {
    let h = HermitianMatrix::new(m.clone())?;
    Ok(eigendecompose(&h))
}

/// Eigenvalues only, decreasing.
pub fn eigenvalues(h: &HermitianMatrix) -> Spectrum {
    eigendecompose(h).0
}

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius mass is
/// below `1e-12 * ||A||_F`.
fn jacobi_eigen(input: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = input.nrows();
    let mut a = input.clone();
    let mut v = CMatrix::identity(n, n);
    let norm = a.norm();

    if n > 1 && norm > 0.0 {
        let threshold = JACOBI_REL_TOL * norm;
        for _ in 0..JACOBI_MAX_SWEEPS {
            if off_diagonal_norm(&a) < threshold {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (values, vectors)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with `A <- J* A J`, `V <- V J`.
///
/// `J` is a real plane rotation preceded by a phase on coordinate `q` that
/// makes the pivot real.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = phase.conj() * (-s);
    let j_qq = phase.conj() * c;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

/// SplitMix64 finalizer; derives independent stream seeds from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub fn complex_gaussian<R: rand::Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `rows x cols` matrix of independent standard complex Gaussians, filled row by row.
pub fn ginibre<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Haar-distributed unitary, deterministic in `seed`.
///
/// Orthonormalizes the columns of a Ginibre matrix by Gram-Schmidt (two
/// passes), which is the Q factor of a QR decomposition whose triangular
/// factor has a positive real diagonal.
pub fn haar_unitary(n: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = rng_from_seed(seed);
    haar_unitary_with(n, &mut rng)
}

pub fn haar_unitary_with<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    assert!(n >= 1, "dimension must be positive");
    loop {
        let g = ginibre(n, n, rng);
        if let Some(q) = orthonormalize_columns(&g) {
            return UnitaryMatrix::new_unchecked(q);
        }
    }
}

/// Gram-Schmidt with reorthogonalization; `None` if the columns are
/// numerically dependent.
pub(crate) fn orthonormalize_columns(g: &CMatrix) -> Option<CMatrix> {
    let (rows, cols) = g.shape();
    let mut q = g.clone();
    for j in 0..cols {
        for _pass in 0..2 {
            for k in 0..j {
                let mut dot = ZERO;
                for r in 0..rows {
                    dot += q[(r, k)].conj() * q[(r, j)];
                }
                for r in 0..rows {
                    let qk = q[(r, k)];
                    q[(r, j)] -= dot * qk;
                }
            }
        }
        let norm = q.column(j).norm();
        if norm < 1e-12 {
            return None;
        }
        for r in 0..rows {
            q[(r, j)] /= norm;
        }
    }
    Some(q)
}

/// `U diag(lambda) U*`.
pub fn orbit_point(lambda: &Spectrum, u: &UnitaryMatrix) -> Result<HermitianMatrix> {
    check_dim(u.dim(), lambda.len())?;
    Ok(HermitianMatrix::from_real_diagonal(lambda.values()).conjugate_by(u.matrix()))
}

/// Diagonal entries, in matrix order (the moment map of the diagonal torus).
pub fn diagonal_moment(h: &HermitianMatrix) -> Vec<f64> {
    (0..h.dim()).map(|i| h.entry(i, i).re).collect()
}

/// `diag(exp(i theta_1), ..., exp(i theta_n))`.
pub fn diagonal_unitary(thetas: &[f64]) -> CMatrix {
    let n = thetas.len();
    CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, thetas[r])
        } else {
            ZERO
        }
    })
}

/// `A B - B A`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `exp(eta X)` for skew-Hermitian `X`, computed from the eigendecomposition
/// of the Hermitian matrix `iX`, so the result is unitary to rounding.
pub fn exp_skew(x: &CMatrix, eta: f64) -> CMatrix {
    let i = Complex64::new(0.0, 1.0);
    let ix = HermitianMatrix::symmetrized(x * i);
    let (d, v) = eigendecompose(&ix);
    let v = v.matrix();
    let n = x.nrows();
    // exp(eta X) = exp(-i eta (iX)) = V exp(-i eta D) V*
    let phases = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, -eta * d.values()[r])
        } else {
            ZERO
        }
    });
    v * phases * v.adjoint()
}

/// Orthogonal projection onto the span of the given orthonormal columns.
fn column_projection(basis: &CMatrix, cols: std::ops::Range<usize>) -> CMatrix {
    let b = basis.columns(cols.start, cols.end - cols.start);
    b * b.adjoint()
}

/// Nested subspaces `0 < V_1 < ... < V_s = C^n`, stored as cumulative
/// dimensions plus a unitary basis whose first `dims[i]` columns span `V_{i+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FlagJson", into = "FlagJson")]
pub struct Flag {
    dims: Vec<usize>,
    basis: UnitaryMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlagJson {
    pub dims: Vec<usize>,
    pub basis: UnitaryMatrix,
}

impl TryFrom<FlagJson> for Flag {
    type Error = HornError;

    fn try_from(j: FlagJson) -> Result<Self> {
        Flag::new(j.dims, j.basis)
    }
}

impl From<Flag> for FlagJson {
    fn from(f: Flag) -> Self {
        FlagJson {
            dims: f.dims,
            basis: f.basis,
        }
    }
}

impl Flag {
    pub fn new(dims: Vec<usize>, basis: UnitaryMatrix) -> Result<Self> {
        let n = basis.dim();
        if dims.is_empty() {
            return Err(HornError::domain("dims", "flag needs at least one step"));
        }
        if dims[0] == 0 || dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HornError::domain("dims", "dimensions must be strictly increasing and positive"));
        }
        if *dims.last().unwrap() != n {
            return Err(HornError::domain(
                "dims",
                format!("last dimension must equal {n}, found {}", dims.last().unwrap()),
            ));
        }
        Ok(Flag { dims, basis })
    }

    /// Full flag spanned by successive columns of `basis`.
    pub fn full(basis: UnitaryMatrix) -> Self {
        let dims = (1..=basis.dim()).collect();
        Flag { dims, basis }
    }

    /// `span(e_1) < span(e_1, e_2) < ... < C^n`.
    pub fn standard(n: usize) -> Self {
        Flag::full(UnitaryMatrix::identity(n))
    }

    /// Haar-random flag with the given cumulative dimensions.
    pub fn random(dims: Vec<usize>, seed: u64) -> Result<Self> {
        let n = *dims
            .last()
            .ok_or_else(|| HornError::domain("dims", "flag needs at least one step"))?;
        Flag::new(dims, haar_unitary(n, seed))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn basis(&self) -> &UnitaryMatrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.dim()
    }

    /// Number of steps `s`.
    pub fn steps(&self) -> usize {
        self.dims.len()
    }

    pub fn is_full(&self) -> bool {
        self.dims.len() == self.ambient_dim()
    }

    /// Relative dimensions `dim V_i - dim V_{i-1}`.
    pub fn relative_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.dims
            .iter()
            .map(|&d| {
                let r = d - prev;
                prev = d;
                r
            })
            .collect()
    }

    /// Orthogonal projection onto `V_i`, `1 <= i <= s`.
    pub fn subspace_projection(&self, i: usize) -> CMatrix {
        assert!(i >= 1 && i <= self.steps(), "flag step out of range");
        column_projection(self.basis.matrix(), 0..self.dims[i - 1])
    }

    /// Orthogonal projection onto `V_{i-1}^perp ∩ V_i`.
    pub fn step_projection(&self, i: usize) -> CMatrix {
        assert!(i >= 1 && i <= self.steps(), "flag step out of range");
        let start = if i == 1 { 0 } else { self.dims[i - 2] };
        column_projection(self.basis.matrix(), start..self.dims[i - 1])
    }

    /// The flag of orthogonal complements `W_i = V_{s-i}^perp`, listed
    /// increasingly. Reverses the basis order.
    pub fn complement(&self) -> Flag {
        let n = self.ambient_dim();
        let s = self.steps();
        let mut dims: Vec<usize> = (1..s).rev().map(|i| n - self.dims[i - 1]).collect();
        dims.push(n);
        let b = self.basis.matrix();
        let reversed = CMatrix::from_fn(n, n, |r, c| b[(r, n - 1 - c)]);
        Flag {
            dims,
            basis: UnitaryMatrix::new_unchecked(reversed),
        }
    }

    /// Same subspaces, compared through their projections.
    pub fn same_as(&self, other: &Flag, tol: f64) -> bool {
        if self.dims != other.dims || self.ambient_dim() != other.ambient_dim() {
            return false;
        }
        (1..=self.steps()).all(|i| {
            let d = self.subspace_projection(i) - other.subspace_projection(i);
            d.iter().all(|z| z.norm() <= tol)
        })
    }
}

/// `H = sum_i e_i * [projection onto V_{i-1}^perp ∩ V_i]` for strictly
/// increasing `e`.
pub fn flag_to_hermitian(flag: &Flag, e: &[f64]) -> Result<HermitianMatrix> {
    check_dim(flag.steps(), e.len())?;
    if e.iter().any(|v| !v.is_finite()) || e.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HornError::domain("e", "eigenvalues must be finite and strictly increasing"));
    }
    let n = flag.ambient_dim();
    let mut h = CMatrix::zeros(n, n);
    for (i, &ei) in e.iter().enumerate() {
        h += flag.step_projection(i + 1) * Complex64::new(ei, 0.0);
    }
    Ok(HermitianMatrix::symmetrized(h))
}

/// The flag whose `i`-th subspace is the sum of eigenspaces of the `i`
/// smallest distinct eigenvalues, together with those eigenvalues in
/// increasing order.
///
/// Eigenvalues closer than [`TAU_GAP`] times the spectral diameter are
/// treated as one repeated eigenvalue (their mean is reported).
pub fn hermitian_to_flag(h: &HermitianMatrix) -> (Flag, Vec<f64>) {
    hermitian_to_flag_with_gap(h, TAU_GAP)
}

pub fn hermitian_to_flag_with_gap(h: &HermitianMatrix, rel_gap: f64) -> (Flag, Vec<f64>) {
    let (spectrum, vectors) = eigendecompose(h);
    let n = h.dim();
    let increasing: Vec<f64> = spectrum.values().iter().rev().copied().collect();
    let v = vectors.matrix();
    let basis = CMatrix::from_fn(n, n, |r, c| v[(r, n - 1 - c)]);

    let gap = rel_gap * spectrum.diameter();
    let mut dims = Vec::new();
    let mut values = Vec::new();
    let mut start = 0;
    for i in 0..n {
        let last = i + 1 == n || increasing[i + 1] - increasing[i] > gap;
        if last {
            let cluster = &increasing[start..=i];
            values.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
            dims.push(i + 1);
            start = i + 1;
        }
    }
    let flag = Flag {
        dims,
        basis: UnitaryMatrix::new_unchecked(basis),
    };
    (flag, values)
}
