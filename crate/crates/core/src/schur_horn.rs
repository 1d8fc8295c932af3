//! The Schur-Horn polytope: the image of an isospectral orbit under the
//! diagonal moment map is the convex hull of the permutations of the
//! spectrum (a permutohedron).
//!
//! Membership is decided by majorization. Points on the boundary of the
//! polytope come from matrices fixed by a circle in the diagonal torus, which
//! forces a block-diagonal shape; [`sh_boundary_blocks`] recovers that shape.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};
use crate::hermitian_core::{
    derive_seed, diagonal_moment, eigenvalues, haar_unitary, orbit_point, HermitianMatrix,
};
use crate::spectra::{majorizes, Spectrum};

pub const DEFAULT_FACET_TOLERANCE: f64 = 1e-7;

/// Largest dimension for which every proper coordinate subset is scanned.
pub const EXHAUSTIVE_FACET_SCAN_MAX_DIM: usize = 12;

/// Convex hull of the permutations of `lambda`, listed by its distinct vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Permutohedron {
    pub lambda: Spectrum,
    pub vertices: Vec<Vec<f64>>,
}

impl Permutohedron {
    pub fn contains(&self, d: &[f64]) -> Result<bool> {
        sh_membership(&self.lambda, d)
    }
}

/// Partition of the coordinate indices `0..n` into nonempty blocks.
///
/// Blocks are sorted by their smallest index, and indices within a block
/// are increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockStructure {
    /// Normalizes ordering and checks that the blocks partition `0..n`.
    pub fn new(mut blocks: Vec<Vec<usize>>, n: usize) -> Option<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return None;
            }
            b.sort_unstable();
            for &i in b.iter() {
                if i >= n || seen[i] {
                    return None;
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return None;
        }
        blocks.sort_by_key(|b| b[0]);
        Some(BlockStructure { blocks })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// More than one block.
    pub fn is_nontrivial(&self) -> bool {
        self.blocks.len() > 1
    }

    /// Block index of every coordinate.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(|b| b.len()).sum();
        let mut labels = vec![0; n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                labels[i] = k;
            }
        }
        labels
    }

    /// Largest `|H_ij|` over pairs in different blocks.
    pub fn off_block_max(&self, h: &HermitianMatrix) -> f64 {
        let labels = self.labels();
        let n = labels.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if labels[i] != labels[j] {
                    worst = worst.max(h.entry(i, j).norm());
                }
            }
        }
        worst
    }
}

/// Is `d` in the permutohedron of `lambda`?
pub fn sh_membership(lambda: &Spectrum, d: &[f64]) -> Result<bool> {
    check_dim(lambda.len(), d.len())?;
    majorizes(lambda, d)
}

/// Distinct permutations of `lambda`, in decreasing lexicographic order
/// starting from `lambda` itself.
pub fn sh_vertices(lambda: &Spectrum) -> Permutohedron {
    let mut distinct: Vec<(f64, usize)> = Vec::new();
    for &v in lambda.values() {
        match distinct.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => distinct.push((v, 1)),
        }
    }
    let mut vertices = Vec::new();
    let mut current = Vec::with_capacity(lambda.len());
    multiset_permutations(&mut distinct, lambda.len(), &mut current, &mut vertices);
    Permutohedron {
        lambda: lambda.clone(),
        vertices,
    }
}

fn multiset_permutations(
    counts: &mut [(f64, usize)],
    n: usize,
    current: &mut Vec<f64>,
    out: &mut Vec<Vec<f64>>,
) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for k in 0..counts.len() {
        if counts[k].1 == 0 {
            continue;
        }
        counts[k].1 -= 1;
        current.push(counts[k].0);
        multiset_permutations(counts, n, current, out);
        current.pop();
        counts[k].1 += 1;
    }
}

/// Diagonals of `count` Haar-random points of the orbit of `lambda`.
///
/// Sample `i` uses the unitary seeded by `derive_seed(seed, i)`, so the
/// output does not depend on how the work is scheduled.
pub fn sh_sample_image(lambda: &Spectrum, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = lambda.len();
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let u = haar_unitary(n, derive_seed(seed, i));
            let h = orbit_point(lambda, &u).expect("dimensions agree");
            diagonal_moment(&h)
        })
        .collect()
}

/// Block structure forced by the active facets at the diagonal of `h`.
///
/// A coordinate subset `S` spans an active facet when the diagonal entries
/// over `S` sum to the `|S|` largest eigenvalues (within `facet_tolerance`).
/// The blocks are the atoms generated by all active subsets. The result is
/// returned only if some facet is active and every entry of `h` linking two
/// different blocks is at most `sqrt(facet_tolerance) * max(1, diameter)`:
/// a facet defect of `delta` corresponds to off-block entries of order
/// `sqrt(delta)`.
///
/// Up to [`EXHAUSTIVE_FACET_SCAN_MAX_DIM`] every proper subset is scanned;
/// above that only prefixes of the diagonal sorted decreasingly are tried.
pub fn sh_boundary_blocks(h: &HermitianMatrix, facet_tolerance: f64) -> Option<BlockStructure> {
    let n = h.dim();
    if n < 2 {
        return None;
    }
    let lambda = eigenvalues(h);
    let d = diagonal_moment(h);
    let mut top = vec![0.0; n + 1];
    for k in 0..n {
        top[k + 1] = top[k] + lambda.values()[k];
    }

    let active: Vec<Vec<bool>> = if n <= EXHAUSTIVE_FACET_SCAN_MAX_DIM {
        (1u32..(1u32 << n) - 1)
            .filter_map(|mask| {
                let k = mask.count_ones() as usize;
                let s: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| d[i]).sum();
                ((s - top[k]).abs() <= facet_tolerance)
                    .then(|| (0..n).map(|i| mask >> i & 1 == 1).collect())
            })
            .collect()
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| d[j].total_cmp(&d[i]).then(i.cmp(&j)));
        let mut s = 0.0;
        let mut sets = Vec::new();
        for k in 1..n {
            s += d[order[k - 1]];
            if (s - top[k]).abs() <= facet_tolerance {
                let mut member = vec![false; n];
                for &i in &order[..k] {
                    member[i] = true;
                }
                sets.push(member);
            }
        }
        sets
    };
    if active.is_empty() {
        return None;
    }

    // Indices with identical membership across all active sets form an atom.
    let mut blocks: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let signature: Vec<bool> = active.iter().map(|s| s[i]).collect();
        match blocks.iter_mut().find(|(sig, _)| *sig == signature) {
            Some((_, members)) => members.push(i),
            None => blocks.push((signature, vec![i])),
        }
    }
    let structure = BlockStructure::new(blocks.into_iter().map(|(_, b)| b).collect(), n)?;
    let off_tol = facet_tolerance.sqrt() * lambda.diameter().max(1.0);
    (structure.off_block_max(h) <= off_tol).then_some(structure)
}
