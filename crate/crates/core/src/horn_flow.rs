//! Horn's problem: find Hermitian `H_lambda, H_mu, H_nu` with prescribed
//! spectra and `H_lambda + H_mu + H_nu = 0`.
//!
//! The sum of the three matrices is the moment map of the diagonal `U(n)`
//! action on `O_lambda x O_mu x O_nu`, so witnesses are zeros of that map.
//! [`norm_square_descent`] fixes `H_lambda = diag(lambda)`, starts the other
//! two at Haar-random orbit points and runs the conjugation flow of
//! [`crate::conjugation_flow`] on `||H_lambda + H_mu + H_nu||_F^2 / 2`.
//!
//! The trace of the sum never changes under conjugation, so
//! `|sum(lambda) + sum(mu) + sum(nu)| / sqrt(n)` bounds the residual from
//! below for every iterate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conjugation_flow::{ConjugationFlow, FlowSettings, ResidualProjection, Termination};
use crate::error::{check_dim, HornError, Result};
use crate::hermitian_core::{
    derive_seed, eigendecompose, eigenvalues, haar_unitary, orbit_point, HermitianMatrix, TAU_GAP,
};
use crate::lr_invariants::invariant_dimension;
use crate::schur_horn::BlockStructure;
use crate::spectra::{dual_spectrum, scale, IntegralSpectrum, Spectrum};

pub const DEFAULT_RESTARTS: usize = 20;
pub const DEFAULT_MAX_ITER: usize = 5000;
pub const GRAD_TOLERANCE: f64 = 1e-10;
pub const K_SAT: i64 = 4;
pub const TAU_BLOCK: f64 = 1e-7;

/// Numerical knobs shared by the solver entry points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HornOptions {
    pub max_iter: usize,
    pub restarts: usize,
    pub grad_tolerance: f64,
    /// Multiplies the feasibility threshold `1e-8 (1 + |lambda| + |mu| + |nu|)`.
    pub tolerance_scale: f64,
    pub k_sat: i64,
}

impl Default for HornOptions {
    fn default() -> Self {
        HornOptions {
            max_iter: DEFAULT_MAX_ITER,
            restarts: DEFAULT_RESTARTS,
            grad_tolerance: GRAD_TOLERANCE,
            tolerance_scale: 1.0,
            k_sat: K_SAT,
        }
    }
}

/// `1e-8 (1 + |lambda| + |mu| + |nu|)`, times `scale`.
pub fn feasibility_tolerance(lambda: &Spectrum, mu: &Spectrum, nu: &Spectrum, scale: f64) -> f64 {
    scale * 1e-8 * (1.0 + lambda.norm() + mu.norm() + nu.norm())
}

/// `|sum(lambda) + sum(mu) + sum(nu)| / sqrt(n)`.
pub fn trace_lower_bound(lambda: &Spectrum, mu: &Spectrum, nu: &Spectrum) -> f64 {
    (lambda.sum() + mu.sum() + nu.sum()).abs() / (lambda.len() as f64).sqrt()
}

/// Three matrices with prescribed spectra and the Frobenius norm of their sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessTriple {
    #[serde(rename = "H_lambda")]
    pub h_lambda: HermitianMatrix,
    #[serde(rename = "H_mu")]
    pub h_mu: HermitianMatrix,
    #[serde(rename = "H_nu")]
    pub h_nu: HermitianMatrix,
    pub residual: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl WitnessTriple {
    pub fn sum(&self) -> HermitianMatrix {
        self.h_lambda
            .add(&self.h_mu)
            .and_then(|s| s.add(&self.h_nu))
            .expect("witness matrices share a dimension")
    }

    pub fn recompute_residual(&self) -> f64 {
        self.sum().frobenius_norm()
    }

    /// Largest eigenvalue error across the three matrices.
    pub fn spectrum_error(&self, lambda: &Spectrum, mu: &Spectrum, nu: &Spectrum) -> f64 {
        [(&self.h_lambda, lambda), (&self.h_mu, mu), (&self.h_nu, nu)]
            .iter()
            .map(|(h, s)| eigenvalues(h).max_abs_diff(s).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

/// Per-run diagnostics not carried in the witness itself.
#[derive(Debug, Clone)]
pub struct DescentTrace {
    pub termination: Termination,
    pub grad_norm: f64,
    /// Residual at the start of each iteration and after the last one.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeasibilityStatus {
    Feasible,
    NumericallyInfeasible,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub status: FeasibilityStatus,
    pub best_residual: f64,
    pub restarts: usize,
    /// Invariant dimension at `k = 1`, when all three spectra are integral.
    pub lr_crosscheck: Option<u64>,
    pub best_restart: usize,
    pub tolerance: f64,
}

/// Spectrum of `H_a + H_b`, decreasing.
pub fn sum_spectrum(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<Spectrum> {
    Ok(eigenvalues(&a.add(b)?))
}

fn check_lengths(lambda: &Spectrum, mu: &Spectrum, nu: &Spectrum) -> Result<()> {
    check_dim(lambda.len(), mu.len())?;
    check_dim(lambda.len(), nu.len())
}

/// Searches `O_mu x O_nu` for a zero of `diag(lambda) + H_mu + H_nu`.
///
/// Never fails on infeasible input: the best iterate found is returned and
/// its residual tells the story.
pub fn norm_square_descent(
    lambda: &Spectrum,
    mu: &Spectrum,
    nu: &Spectrum,
    seed: u64,
    options: &HornOptions,
) -> Result<WitnessTriple> {
    norm_square_descent_traced(lambda, mu, nu, seed, options, false).map(|(w, _)| w)
}

pub fn norm_square_descent_traced(
    lambda: &Spectrum,
    mu: &Spectrum,
    nu: &Spectrum,
    seed: u64,
    options: &HornOptions,
    record_history: bool,
) -> Result<(WitnessTriple, DescentTrace)> {
    check_lengths(lambda, mu, nu)?;
    let n = lambda.len();
    let h_lambda = HermitianMatrix::from_real_diagonal(lambda.values());
    let h_mu = orbit_point(mu, &haar_unitary(n, derive_seed(seed, 0)))?;
    let h_nu = orbit_point(nu, &haar_unitary(n, derive_seed(seed, 1)))?;

    let diameter = [lambda, mu, nu]
        .iter()
        .map(|s| s.diameter())
        .fold(0.0, f64::max);
    let diameter = if diameter > 0.0 { diameter } else { 1.0 };
    let settings = FlowSettings {
        target_residual: feasibility_tolerance(lambda, mu, nu, options.tolerance_scale),
        grad_tolerance: options.grad_tolerance,
        max_iter: options.max_iter,
        initial_step: 1.0 / (4.0 * diameter * diameter),
        record_history,
    };
    let flow = ConjugationFlow::new(h_lambda.matrix().clone(), ResidualProjection::Full);
    let outcome = flow.run(vec![h_mu, h_nu], &settings);
    let mut iterates = outcome.iterates.into_iter();
    let h_mu = iterates.next().expect("two iterates");
    let h_nu = iterates.next().expect("two iterates");

    let mut witness = WitnessTriple {
        h_lambda,
        h_mu,
        h_nu,
        residual: 0.0,
        iterations: outcome.iterations,
        seed,
    };
    witness.residual = witness.recompute_residual();
    let trace = DescentTrace {
        termination: outcome.termination,
        grad_norm: outcome.grad_norm,
        residuals: outcome.history,
    };
    Ok((witness, trace))
}

/// Runs independent restarts and merges them deterministically (smallest
/// residual, ties to the lower restart index). Restart `r` uses seed
/// `derive_seed(seed, r)`.
pub fn best_of_restarts(
    lambda: &Spectrum,
    mu: &Spectrum,
    nu: &Spectrum,
    seed: u64,
    options: &HornOptions,
) -> Result<(usize, WitnessTriple)> {
    check_lengths(lambda, mu, nu)?;
    let restarts = options.restarts.max(1);
    let runs: Vec<WitnessTriple> = (0..restarts)
        .into_par_iter()
        .map(|r| norm_square_descent(lambda, mu, nu, derive_seed(seed, r as u64), options))
        .collect::<Result<_>>()?;
    let (best, _) = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.residual.total_cmp(&b.residual).then(i.cmp(j)))
        .expect("at least one restart");
    Ok((best, runs[best].clone()))
}

/// Decides whether the zero fiber of the sum map is nonempty.
///
/// `feasible` when some restart reaches the feasibility threshold. For
/// integral spectra the invariant dimension is reported as a cross-check,
/// and `numerically-infeasible` additionally needs it to vanish for every
/// `k <= k_sat`. For non-integral spectra a stalled flow certifies nothing,
/// so `numerically-infeasible` is claimed only when the trace obstruction
/// alone exceeds ten times the threshold; otherwise the status is
/// `undecided`.
pub fn feasibility(
    lambda: &Spectrum,
    mu: &Spectrum,
    nu: &Spectrum,
    seed: u64,
    options: &HornOptions,
) -> Result<FeasibilityReport> {
    let (best_restart, best) = best_of_restarts(lambda, mu, nu, seed, options)?;
    let tolerance = feasibility_tolerance(lambda, mu, nu, options.tolerance_scale);

    let integral = match (
        IntegralSpectrum::from_real(lambda),
        IntegralSpectrum::from_real(mu),
        IntegralSpectrum::from_real(nu),
    ) {
        (Some(a), Some(b), Some(c)) => Some((a, b, c)),
        _ => None,
    };
    let lr_crosscheck = match &integral {
        Some((a, b, c)) => Some(invariant_dimension(a, b, c)?),
        None => None,
    };

    let stalled = best.residual > 10.0 * tolerance;
    let status = if best.residual < tolerance {
        FeasibilityStatus::Feasible
    } else if !stalled {
        FeasibilityStatus::Undecided
    } else if let Some((a, b, c)) = &integral {
        let mut any_invariant = false;
        for k in 1..=options.k_sat.max(1) {
            if invariant_dimension(&scale(a, k)?, &scale(b, k)?, &scale(c, k)?)? > 0 {
                any_invariant = true;
                break;
            }
        }
        if any_invariant {
            FeasibilityStatus::Undecided
        } else {
            FeasibilityStatus::NumericallyInfeasible
        }
    } else if trace_lower_bound(lambda, mu, nu) > 10.0 * tolerance {
        FeasibilityStatus::NumericallyInfeasible
    } else {
        FeasibilityStatus::Undecided
    };

    Ok(FeasibilityReport {
        status,
        best_residual: best.residual,
        restarts: options.restarts.max(1),
        lr_crosscheck,
        best_restart,
        tolerance,
    })
}

/// Third spectrum that asks `H_lambda + H_mu` to have spectrum
/// `(top, sum(lambda) + sum(mu) - top)` (sorted), for the `2 x 2` sweep.
pub fn pair_sum_target(lambda: &Spectrum, mu: &Spectrum, top: f64) -> Result<Spectrum> {
    check_dim(2, lambda.len())?;
    check_dim(2, mu.len())?;
    let pair = Spectrum::from_unsorted(vec![top, lambda.sum() + mu.sum() - top])?;
    Ok(dual_spectrum(&pair))
}

/// `(top, best residual)` for each requested top eigenvalue of the pair sum.
pub fn horn_sweep(
    lambda: &Spectrum,
    mu: &Spectrum,
    tops: &[f64],
    seed: u64,
    options: &HornOptions,
) -> Result<Vec<(f64, f64)>> {
    tops.iter()
        .enumerate()
        .map(|(i, &t)| {
            let nu = pair_sum_target(lambda, mu, t)?;
            let (_, best) = best_of_restarts(lambda, mu, &nu, derive_seed(seed, i as u64), options)?;
            Ok((t, best.residual))
        })
        .collect()
}

/// Block structure of the pair `(H_lambda, H_mu)` of a witness, read in the
/// basis where `H_lambda + H_mu` is diagonal with decreasing entries.
///
/// Indices `i, j` are linked when `|(H_lambda)_ij| + |(H_mu)_ij|` exceeds
/// [`TAU_BLOCK`]; a disconnected link graph yields its components. The sum
/// must have distinct eigenvalues (gap above [`TAU_GAP`] times its
/// diameter), otherwise the slice is not defined and a precondition error
/// is returned.
pub fn extremal_block_check(w: &WitnessTriple) -> Result<Option<BlockStructure>> {
    pair_block_check(&w.h_lambda, &w.h_mu, TAU_BLOCK)
}

pub fn pair_block_check(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tau_block: f64,
) -> Result<Option<BlockStructure>> {
    let sum = a.add(b)?;
    let (spectrum, u) = eigendecompose(&sum);
    let n = sum.dim();
    let gap = TAU_GAP * spectrum.diameter();
    if n > 1 && !spectrum.is_strictly_decreasing(gap) {
        return Err(HornError::Precondition(format!(
            "sum spectrum {spectrum} has a repeated eigenvalue (Weyl wall)"
        )));
    }
    let ut = u.adjoint();
    let a_slice = a.conjugate_by(ut.matrix());
    let b_slice = b.conjugate_by(ut.matrix());

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if a_slice.entry(i, j).norm() + b_slice.entry(i, j).norm() > tau_block {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_block = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_block[r]].push(i);
    }
    if blocks.len() > 1 {
        Ok(BlockStructure::new(blocks, n))
    } else {
        Ok(None)
    }
}
