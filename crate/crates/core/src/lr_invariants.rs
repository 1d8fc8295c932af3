//! Littlewood-Richardson coefficients and dimensions of `GL_n`-invariants in
//! triple tensor products `V_lambda ⊗ V_mu ⊗ V_nu`.
//!
//! Coefficients are counted by backtracking over LR tableaux: semistandard
//! fillings of a skew shape whose reverse reading word (rows right to left,
//! top to bottom) is a lattice word.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, HornError, Result};
use crate::spectra::{dual_integral, scale, IntegralSpectrum};

/// Weakly decreasing list of nonnegative integers, trailing zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HornError::domain("partition", "parts must be weakly decreasing"));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (zero past the length).
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && (0..other.length()).all(|i| other.0[i] <= self.0[i])
    }

    /// Shifts an integral weight by `c` and reads it as a partition, if
    /// every entry becomes nonnegative.
    pub fn from_weight(w: &IntegralSpectrum, c: i64) -> Option<Partition> {
        let parts = w
            .values()
            .iter()
            .map(|&v| u32::try_from(v.checked_add(c)?).ok())
            .collect::<Option<Vec<_>>>()?;
        Partition::new(parts).ok()
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = HornError;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        let parts = v
            .into_iter()
            .map(|x| u32::try_from(x).map_err(|_| HornError::domain("partition", "parts must be nonnegative")))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Filling of the skew shape `outer / inner`; `rows[r]` lists the entries of
/// row `r` from left to right (columns `inner_r .. outer_r`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrTableau {
    pub outer: Partition,
    pub inner: Partition,
    pub rows: Vec<Vec<u32>>,
}

impl LrTableau {
    /// Semistandard, with a lattice reverse reading word.
    pub fn is_valid(&self) -> bool {
        let rows = self.outer.length();
        if self.rows.len() != rows {
            return false;
        }
        for r in 0..rows {
            let lo = self.inner.part(r) as usize;
            let hi = self.outer.part(r) as usize;
            if self.rows[r].len() != hi.saturating_sub(lo) || hi < lo {
                return false;
            }
            if self.rows[r].windows(2).any(|w| w[0] > w[1]) || self.rows[r].contains(&0) {
                return false;
            }
            if r > 0 {
                let plo = self.inner.part(r - 1) as usize;
                for c in lo.max(plo)..hi {
                    if self.rows[r][c - lo] <= self.rows[r - 1][c - plo] {
                        return false;
                    }
                }
            }
        }
        let mut counts: Vec<u32> = Vec::new();
        for row in &self.rows {
            for &v in row.iter().rev() {
                let v = v as usize;
                if counts.len() < v {
                    counts.resize(v, 0);
                }
                counts[v - 1] += 1;
                if v > 1 && counts[v - 1] > counts[v - 2] {
                    return false;
                }
            }
        }
        true
    }

    /// Number of occurrences of each letter `1, 2, ...`.
    pub fn content(&self) -> Vec<u32> {
        let mut counts: Vec<u32> = Vec::new();
        for &v in self.rows.iter().flatten() {
            if counts.len() < v as usize {
                counts.resize(v as usize, 0);
            }
            counts[v as usize - 1] += 1;
        }
        counts
    }
}

struct Search<'a> {
    outer: &'a Partition,
    inner: &'a Partition,
    content: &'a Partition,
    /// Skew cells in reverse reading order: (row, column).
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<u32>>,
    counts: Vec<u32>,
    found: u64,
    keep: bool,
    tableaux: Vec<LrTableau>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if k == self.cells.len() {
            self.found += 1;
            if self.keep {
                let rows = (0..self.outer.length())
                    .map(|r| {
                        let lo = self.inner.part(r) as usize;
                        self.grid[r][lo..self.outer.part(r) as usize].to_vec()
                    })
                    .collect();
                self.tableaux.push(LrTableau {
                    outer: self.outer.clone(),
                    inner: self.inner.clone(),
                    rows,
                });
            }
            return;
        }
        let (r, c) = self.cells[k];
        // Row weakly increases left to right; we fill right to left.
        let upper = if c + 1 < self.outer.part(r) as usize {
            self.grid[r][c + 1]
        } else {
            u32::MAX
        };
        // Column strictly increases downward.
        let lower = if r > 0 && c >= self.inner.part(r - 1) as usize {
            self.grid[r - 1][c] + 1
        } else {
            1
        };
        // In a lattice word the letter r+2 cannot appear in row r.
        let max_letter = upper.min(self.content.length() as u32).min(r as u32 + 1);
        for v in lower..=max_letter {
            let i = v as usize - 1;
            if self.counts[i] >= self.content.part(i) {
                continue;
            }
            if i > 0 && self.counts[i] + 1 > self.counts[i - 1] {
                continue;
            }
            self.counts[i] += 1;
            self.grid[r][c] = v;
            self.run(k + 1);
            self.grid[r][c] = 0;
            self.counts[i] -= 1;
        }
    }
}

fn search<'a>(alpha: &'a Partition, beta: &'a Partition, gamma: &'a Partition, keep: bool) -> Search<'a> {
    let mut cells = Vec::new();
    for r in 0..gamma.length() {
        for c in (alpha.part(r) as usize..gamma.part(r) as usize).rev() {
            cells.push((r, c));
        }
    }
    let grid = (0..gamma.length())
        .map(|r| vec![0; gamma.part(r) as usize])
        .collect();
    Search {
        outer: gamma,
        inner: alpha,
        content: beta,
        cells,
        grid,
        counts: vec![0; beta.length()],
        found: 0,
        keep,
        tableaux: Vec::new(),
    }
}

fn shapes_compatible(alpha: &Partition, beta: &Partition, gamma: &Partition) -> bool {
    gamma.size() == alpha.size() + beta.size() && gamma.contains(alpha) && gamma.contains(beta)
}

/// Multiplicity of `V_gamma` in `V_alpha ⊗ V_beta`: the number of LR
/// tableaux of shape `gamma / alpha` and content `beta`.
pub fn lr_coefficient(alpha: &Partition, beta: &Partition, gamma: &Partition) -> u64 {
    if !shapes_compatible(alpha, beta, gamma) {
        return 0;
    }
    let mut s = search(alpha, beta, gamma, false);
    s.run(0);
    s.found
}

/// The LR tableaux counted by [`lr_coefficient`].
pub fn lr_tableaux(alpha: &Partition, beta: &Partition, gamma: &Partition) -> Vec<LrTableau> {
    if !shapes_compatible(alpha, beta, gamma) {
        return Vec::new();
    }
    let mut s = search(alpha, beta, gamma, true);
    s.run(0);
    s.tableaux
}

/// The partitions `(alpha, beta, gamma)` whose LR coefficient equals the
/// invariant dimension of `V_lambda ⊗ V_mu ⊗ V_nu`, or `None` when the
/// determinant weights already force it to vanish.
///
/// `alpha = lambda - lambda_n`, `beta = mu - mu_n`, and `gamma` is the dual
/// weight `(-nu_n, ..., -nu_1)` shifted by `-(lambda_n + mu_n)`.
pub fn invariant_shapes(
    lambda: &IntegralSpectrum,
    mu: &IntegralSpectrum,
    nu: &IntegralSpectrum,
) -> Result<Option<(Partition, Partition, Partition)>> {
    let n = lambda.len();
    check_dim(n, mu.len())?;
    check_dim(n, nu.len())?;
    let total = lambda.sum() as i128 + mu.sum() as i128 + nu.sum() as i128;
    if total != 0 {
        return Ok(None);
    }
    let ln = lambda.values()[n - 1];
    let mn = mu.values()[n - 1];
    let alpha = Partition::from_weight(lambda, -ln).ok_or_else(|| HornError::Overflow("shifted weight".into()))?;
    let beta = Partition::from_weight(mu, -mn).ok_or_else(|| HornError::Overflow("shifted weight".into()))?;
    let shift = ln
        .checked_add(mn)
        .and_then(|s| s.checked_neg())
        .ok_or_else(|| HornError::Overflow("shifted weight".into()))?;
    Ok(Partition::from_weight(&dual_integral(nu), shift).map(|gamma| (alpha, beta, gamma)))
}

/// Dimension of the `GL_n`-invariant subspace of `V_lambda ⊗ V_mu ⊗ V_nu`.
pub fn invariant_dimension(
    lambda: &IntegralSpectrum,
    mu: &IntegralSpectrum,
    nu: &IntegralSpectrum,
) -> Result<u64> {
    Ok(match invariant_shapes(lambda, mu, nu)? {
        Some((a, b, g)) => lr_coefficient(&a, &b, &g),
        None => 0,
    })
}

/// Smallest `k <= k_max` with a nonzero invariant in
/// `V_{k lambda} ⊗ V_{k mu} ⊗ V_{k nu}`.
pub fn saturation_scan(
    lambda: &IntegralSpectrum,
    mu: &IntegralSpectrum,
    nu: &IntegralSpectrum,
    k_max: i64,
) -> Result<Option<i64>> {
    if k_max < 1 {
        return Err(HornError::domain("k_max", "must be at least 1"));
    }
    for k in 1..=k_max {
        let d = invariant_dimension(&scale(lambda, k)?, &scale(mu, k)?, &scale(nu, k)?)?;
        if d > 0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Number of semistandard tableaux of shape `shape` with entries in `1..=n`
/// (the dimension of the `GL_n` module `V_shape`), by direct enumeration.
pub fn semistandard_count(shape: &Partition, n: u32) -> u64 {
    if shape.length() > n as usize {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..shape.length())
        .flat_map(|r| (0..shape.part(r) as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u32>> = (0..shape.length()).map(|r| vec![0; shape.part(r) as usize]).collect();
    fn fill(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, n: u32) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let left = if c > 0 { grid[r][c - 1] } else { 1 };
        let above = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in left.max(above)..=n {
            grid[r][c] = v;
            total += fill(k + 1, cells, grid, n);
        }
        grid[r][c] = 0;
        total
    }
    fill(0, &cells, &mut grid, n)
}
