//! Descent on the squared norm of a moment map over a product of
//! isospectral orbits.
//!
//! The iterates are Hermitian matrices `H_1, ..., H_m`, each moved only by
//! unitary conjugation, so their spectra never change. The residual is
//! `R = P(H_1 + ... + H_m) + C` for a fixed Hermitian offset `C` and a
//! projection `P` (the identity, or extraction of the diagonal). The
//! objective is `f = ||R||_F^2 / 2`.
//!
//! Conjugating `H_j` by `exp(t X_j)` with `X_j = [H_j, R]` decreases `f` at
//! rate `sum_j ||X_j||^2`, so these commutators are the negative gradient.
//! Each iteration takes one Armijo-backtracked gradient step, then tries one
//! Levenberg-Marquardt step built from the linearization
//! `R(A) ~ R + P(sum_j [A_j, H_j])` over skew-Hermitian `A_j`. The second
//! step is kept only if it lowers `f`. It matters near degenerate zeros
//! (boundary points of the moment image), where the gradient flow alone is
//! sublinear.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hermitian_core::{commutator, exp_skew, HermitianMatrix};
use crate::matrix_json::CMatrix;

const ARMIJO: f64 = 0.1;
const MAX_BACKTRACKS: usize = 60;
const MAX_LM_HALVINGS: usize = 12;
const MAX_SLOW_LM_STEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualProjection {
    Full,
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Residual dropped below the target.
    Converged,
    /// Gradient norm dropped below the stationarity threshold and
    /// Gauss-Newton steps stopped making progress.
    Stationary,
    /// Neither step could decrease the objective.
    Stalled,
    MaxIterations,
}

#[derive(Debug, Clone)]
pub struct FlowSettings {
    pub target_residual: f64,
    pub grad_tolerance: f64,
    pub max_iter: usize,
    pub initial_step: f64,
    pub record_history: bool,
}

#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub iterates: Vec<HermitianMatrix>,
    pub residual: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub termination: Termination,
    /// Residual before each iteration and after the last one.
    pub history: Vec<f64>,
}

pub struct ConjugationFlow {
    offset: CMatrix,
    projection: ResidualProjection,
}

impl ConjugationFlow {
    pub fn new(offset: CMatrix, projection: ResidualProjection) -> Self {
        ConjugationFlow { offset, projection }
    }

    fn project(&self, m: CMatrix) -> CMatrix {
        match self.projection {
            ResidualProjection::Full => m,
            ResidualProjection::Diagonal => {
                let n = m.nrows();
                CMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        Complex64::new(m[(i, i)].re, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }
        }
    }

    pub fn residual_matrix(&self, iterates: &[HermitianMatrix]) -> CMatrix {
        let mut sum = CMatrix::zeros(self.offset.nrows(), self.offset.ncols());
        for h in iterates {
            sum += h.matrix();
        }
        self.project(sum) + &self.offset
    }

    pub fn residual(&self, iterates: &[HermitianMatrix]) -> f64 {
        self.residual_matrix(iterates).norm()
    }

    pub fn run(&self, start: Vec<HermitianMatrix>, settings: &FlowSettings) -> FlowOutcome {
        let mut iterates = start;
        let mut history = Vec::new();
        let mut iterations = 0;
        let mut termination = Termination::MaxIterations;
        let mut slow_steps = 0;

        let mut r = self.residual_matrix(&iterates);
        let mut residual = r.norm();
        let mut grads = gradients(&iterates, &r);
        let mut grad_norm = grads_norm(&grads);

        loop {
            if settings.record_history {
                history.push(residual);
            }
            if residual < settings.target_residual {
                termination = Termination::Converged;
                break;
            }
            if iterations >= settings.max_iter {
                break;
            }
            if grad_norm < settings.grad_tolerance {
                // Near a degenerate zero the gradient vanishes faster than the
                // residual; keep going while Gauss-Newton makes progress, with
                // a budget for steps that fail to halve the residual.
                let candidate = self.levenberg_marquardt(&iterates, residual);
                let accepted = candidate.filter(|c| {
                    let rc = self.residual(c);
                    if rc < 0.5 * residual {
                        true
                    } else if rc < residual && slow_steps < MAX_SLOW_LM_STEPS {
                        slow_steps += 1;
                        true
                    } else {
                        false
                    }
                });
                match accepted {
                    Some(candidate) => {
                        iterations += 1;
                        iterates = candidate;
                        r = self.residual_matrix(&iterates);
                        residual = r.norm();
                        grads = gradients(&iterates, &r);
                        grad_norm = grads_norm(&grads);
                        continue;
                    }
                    _ => {
                        termination = Termination::Stationary;
                        break;
                    }
                }
            }
            iterations += 1;

            let f = 0.5 * residual * residual;
            let mut moved = false;

            let mut eta = settings.initial_step;
            for _ in 0..MAX_BACKTRACKS {
                let candidate: Vec<HermitianMatrix> = iterates
                    .iter()
                    .zip(&grads)
                    .map(|(h, x)| h.conjugate_by(&exp_skew(x, eta)))
                    .collect();
                let rc = self.residual(&candidate);
                if 0.5 * rc * rc <= f - ARMIJO * eta * grad_norm * grad_norm {
                    iterates = candidate;
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }

            let current = self.residual(&iterates);
            if let Some(candidate) = self.levenberg_marquardt(&iterates, current) {
                iterates = candidate;
                moved = true;
            }

            r = self.residual_matrix(&iterates);
            residual = r.norm();
            grads = gradients(&iterates, &r);
            grad_norm = grads_norm(&grads);
            if !moved {
                if settings.record_history {
                    history.push(residual);
                }
                termination = Termination::Stalled;
                break;
            }
        }

        FlowOutcome {
            iterates,
            residual,
            grad_norm,
            iterations,
            termination,
            history,
        }
    }

    /// One damped Gauss-Newton step in the skew-Hermitian directions,
    /// halved until the residual decreases.
    fn levenberg_marquardt(
        &self,
        iterates: &[HermitianMatrix],
        current: f64,
    ) -> Option<Vec<HermitianMatrix>> {
        let n = self.offset.nrows();
        let per = n * n;
        let basis = skew_basis(n);
        let m = iterates.len();

        let mut jac = DMatrix::<f64>::zeros(per, m * per);
        for (j, h) in iterates.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                let col = hermitian_to_vec(&self.project(commutator(b, h.matrix())));
                jac.set_column(j * per + k, &col);
            }
        }
        let r = hermitian_to_vec(&self.residual_matrix(iterates));
        let jt_r = jac.transpose() * &r;
        let g = jt_r.norm();
        if g == 0.0 {
            return None;
        }
        // Damped least squares on [J; sqrt(rho) I] by QR rather than the
        // normal equations, which would square the conditioning near
        // degenerate zeros.
        let cols = m * per;
        let col_scale = (0..cols).map(|c| jac.column(c).norm()).fold(0.0, f64::max);
        let damping = g.max(1e-28 * col_scale * col_scale).sqrt();
        let mut aug = DMatrix::<f64>::zeros(per + cols, cols);
        aug.view_mut((0, 0), (per, cols)).copy_from(&jac);
        for i in 0..cols {
            aug[(per + i, i)] = damping;
        }
        let mut rhs = DVector::<f64>::zeros(per + cols);
        rhs.rows_mut(0, per).copy_from(&(-&r));
        let qr = aug.qr();
        let qt_b = qr.q().transpose() * rhs;
        let delta = qr.r().solve_upper_triangular(&qt_b)?;

        let directions: Vec<CMatrix> = (0..m)
            .map(|j| {
                let mut a = CMatrix::zeros(n, n);
                for (k, b) in basis.iter().enumerate() {
                    a += b * Complex64::new(delta[j * per + k], 0.0);
                }
                a
            })
            .collect();

        let mut t = 1.0;
        for _ in 0..MAX_LM_HALVINGS {
            let candidate: Vec<HermitianMatrix> = iterates
                .iter()
                .zip(&directions)
                .map(|(h, a)| h.conjugate_by(&exp_skew(a, t)))
                .collect();
            if self.residual(&candidate) < current {
                return Some(candidate);
            }
            t *= 0.5;
        }
        None
    }
}

fn gradients(iterates: &[HermitianMatrix], r: &CMatrix) -> Vec<CMatrix> {
    iterates.iter().map(|h| commutator(h.matrix(), r)).collect()
}

fn grads_norm(grads: &[CMatrix]) -> f64 {
    grads.iter().map(|x| x.norm_squared()).sum::<f64>().sqrt()
}

/// Orthonormal basis of the skew-Hermitian `n x n` matrices.
fn skew_basis(n: usize) -> Vec<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut b = CMatrix::zeros(n, n);
        b[(i, i)] = Complex64::new(0.0, 1.0);
        out.push(b);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut re = CMatrix::zeros(n, n);
            re[(i, j)] = Complex64::new(s, 0.0);
            re[(j, i)] = Complex64::new(-s, 0.0);
            out.push(re);
            let mut im = CMatrix::zeros(n, n);
            im[(i, j)] = Complex64::new(0.0, s);
            im[(j, i)] = Complex64::new(0.0, s);
            out.push(im);
        }
    }
    out
}

/// Isometric real coordinates of a Hermitian matrix.
fn hermitian_to_vec(m: &CMatrix) -> DVector<f64> {
    let n = m.nrows();
    let s = std::f64::consts::SQRT_2;
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        v.push(m[(i, i)].re);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            v.push(s * m[(i, j)].re);
            v.push(s * m[(i, j)].im);
        }
    }
    DVector::from_vec(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian_core::{eigenvalues, haar_unitary, orbit_point};
    use crate::spectra::Spectrum;

    #[test]
    fn vectorization_is_isometric() {
        let h = orbit_point(&Spectrum::new(vec![2.0, 0.5, -1.0]).unwrap(), &haar_unitary(3, 1))
            .unwrap();
        assert!((hermitian_to_vec(h.matrix()).norm() - h.frobenius_norm()).abs() < 1e-12);
        for b in skew_basis(3) {
            assert!((b.norm() - 1.0).abs() < 1e-15);
            assert!((&b + b.adjoint()).norm() == 0.0);
        }
    }

    #[test]
    fn flow_preserves_spectra_and_decreases() {
        let l = Spectrum::new(vec![1.0, 0.0, 0.0]).unwrap();
        let m = Spectrum::new(vec![0.5, 0.0, -0.5]).unwrap();
        let start = vec![
            orbit_point(&l, &haar_unitary(3, 10)).unwrap(),
            orbit_point(&m, &haar_unitary(3, 11)).unwrap(),
        ];
        let offset = HermitianMatrix::from_real_diagonal(&[-0.75, -0.25, 0.0]).into_matrix();
        let flow = ConjugationFlow::new(offset, ResidualProjection::Full);
        let out = flow.run(
            start,
            &FlowSettings {
                target_residual: 1e-12,
                grad_tolerance: 1e-14,
                max_iter: 500,
                initial_step: 0.25,
                record_history: true,
            },
        );
        assert!(out.history.windows(2).all(|w| w[1] <= w[0]));
        assert!(eigenvalues(&out.iterates[0]).max_abs_diff(&l).unwrap() < 1e-10);
        assert!(eigenvalues(&out.iterates[1]).max_abs_diff(&m).unwrap() < 1e-10);
    }
}
