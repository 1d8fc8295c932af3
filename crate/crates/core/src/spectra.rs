//! Weakly decreasing spectra, majorization and the dual/rescaling maps.
//!
//! A [`Spectrum`] names an isospectral orbit of Hermitian matrices by its
//! eigenvalues listed largest first. [`IntegralSpectrum`] is the integer
//! counterpart used as a highest weight of a `GL_n` representation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, HornError, Result};

/// Absolute tolerance applied to partial sums in [`majorizes`].
pub const TAU_MAJ: f64 = 1e-9;

/// Real eigenvalue list in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Validates that `values` is nonempty, finite and weakly decreasing.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(HornError::domain("spectrum", "must have at least one entry"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(HornError::domain(
                "spectrum",
                format!("entry {i} is not a finite number"),
            ));
        }
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(HornError::domain(
                "spectrum",
                format!(
                    "not weakly decreasing at position {}: {} < {}",
                    i + 1,
                    values[i],
                    values[i + 1]
                ),
            ));
        }
        Ok(Spectrum(values))
    }

    /// Sorts arbitrary finite values into decreasing order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum::new(values)
    }

    /// The scalar orbit `(c, ..., c)`.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Spectrum::new(vec![c; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Largest minus smallest eigenvalue.
    pub fn diameter(&self) -> f64 {
        self.0[0] - self.0[self.0.len() - 1]
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// True when consecutive entries differ by more than `tol`.
    pub fn is_strictly_decreasing(&self, tol: f64) -> bool {
        self.0.windows(2).all(|w| w[0] - w[1] > tol)
    }

    /// Maximum absolute entrywise difference, or `None` on length mismatch.
    pub fn max_abs_diff(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = HornError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Spectrum::new(values)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Integer weight in weakly decreasing order (a dominant weight of `GL_n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntegralSpectrum(Vec<i64>);

impl IntegralSpectrum {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(HornError::domain("spectrum", "must have at least one entry"));
        }
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(HornError::domain(
                "spectrum",
                format!(
                    "not weakly decreasing at position {}: {} < {}",
                    i + 1,
                    values[i],
                    values[i + 1]
                ),
            ));
        }
        Ok(IntegralSpectrum(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Adds `c` to every entry (twist by a power of the determinant).
    pub fn shift(&self, c: i64) -> IntegralSpectrum {
        IntegralSpectrum(self.0.iter().map(|v| v + c).collect())
    }

    pub fn to_real(&self) -> Spectrum {
        Spectrum(self.0.iter().map(|&v| v as f64).collect())
    }

    /// Recovers an integral spectrum when every entry of `s` is an integer.
    pub fn from_real(s: &Spectrum) -> Option<IntegralSpectrum> {
        s.values()
            .iter()
            .map(|&v| (v.fract() == 0.0 && v.abs() < 9.0e15).then_some(v as i64))
            .collect::<Option<Vec<_>>>()
            .map(IntegralSpectrum)
    }
}

impl TryFrom<Vec<i64>> for IntegralSpectrum {
    type Error = HornError;

    fn try_from(values: Vec<i64>) -> Result<Self> {
        IntegralSpectrum::new(values)
    }
}

impl From<IntegralSpectrum> for Vec<i64> {
    fn from(s: IntegralSpectrum) -> Self {
        s.0
    }
}

/// Does `a` majorize `b`?
///
/// `b` is sorted decreasingly first, then every top-`k` partial sum of `b`
/// must be at most the matching partial sum of `a`, with equal totals. All
/// comparisons use the absolute tolerance [`TAU_MAJ`].
pub fn majorizes(a: &Spectrum, b: &[f64]) -> Result<bool> {
    majorizes_with_tolerance(a, b, TAU_MAJ)
}

pub fn majorizes_with_tolerance(a: &Spectrum, b: &[f64], tol: f64) -> Result<bool> {
    check_dim(a.len(), b.len())?;
    let mut sorted = b.to_vec();
    sorted.sort_by(|x, y| y.total_cmp(x));
    let mut pa = 0.0;
    let mut pb = 0.0;
    for (x, y) in a.values().iter().zip(&sorted) {
        pa += x;
        pb += y;
        if pb > pa + tol {
            return Ok(false);
        }
    }
    Ok((pa - pb).abs() <= tol)
}

/// `(s_1, ..., s_n) -> (-s_n, ..., -s_1)`.
pub fn dual_spectrum(s: &Spectrum) -> Spectrum {
    Spectrum(s.values().iter().rev().map(|v| 0.0 - v).collect())
}

pub fn dual_integral(s: &IntegralSpectrum) -> IntegralSpectrum {
    IntegralSpectrum(s.values().iter().rev().map(|v| -v).collect())
}

/// Entrywise multiplication by a positive integer.
pub fn scale(s: &IntegralSpectrum, k: i64) -> Result<IntegralSpectrum> {
    if k <= 0 {
        return Err(HornError::domain("k", format!("scale factor must be positive, got {k}")));
    }
    let values = s
        .values()
        .iter()
        .map(|v| v.checked_mul(k))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| HornError::Overflow("scaled spectrum".into()))?;
    Ok(IntegralSpectrum(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&sp(&[2.0, 0.0]), &[1.0, 1.0]).unwrap());
        assert!(majorizes(&sp(&[3.0, 2.0, 1.0]), &[3.0, 2.0, 1.0]).unwrap());
        assert!(!majorizes(&sp(&[1.0, 0.0]), &[1.5, -0.5]).unwrap());
    }

    #[test]
    fn majorization_requires_equal_totals() {
        assert!(!majorizes(&sp(&[1.0, 0.0]), &[0.5, 0.4]).unwrap());
    }

    #[test]
    fn majorization_length_mismatch() {
        let err = majorizes(&sp(&[1.0, 0.0]), &[1.0]).unwrap_err();
        assert_eq!(err, HornError::Dimension { expected: 2, found: 1 });
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_spectrum(&sp(&[1.0, 0.0])).values(), &[0.0, -1.0]);
        assert_eq!(dual_spectrum(&sp(&[0.0, 0.0, 0.0])).values(), &[0.0, 0.0, 0.0]);
        assert_eq!(dual_spectrum(&sp(&[3.0, 1.0, -2.0])).values(), &[2.0, -1.0, -3.0]);
    }

    #[test]
    fn scale_examples() {
        let s = |v: Vec<i64>| IntegralSpectrum::new(v).unwrap();
        assert_eq!(scale(&s(vec![1, 0]), 3).unwrap(), s(vec![3, 0]));
        assert_eq!(scale(&s(vec![2, 1, 0]), 1).unwrap(), s(vec![2, 1, 0]));
        assert_eq!(scale(&s(vec![1, -1]), 2).unwrap(), s(vec![2, -2]));
        assert!(matches!(
            scale(&s(vec![1, 0]), 0),
            Err(HornError::Domain { .. })
        ));
    }

    #[test]
    fn rejects_increasing_input() {
        let err = Spectrum::new(vec![0.0, 1.0]).unwrap_err();
        assert_eq!(err.field(), Some("spectrum"));
    }

    #[test]
    fn serializes_as_plain_array() {
        let s = sp(&[2.0, -1.5]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[2.0,-1.5]");
        let back: Spectrum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Spectrum>("[1.0, 2.0]").is_err());
    }

    fn sorted_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-5.0f64..5.0, n).prop_map(|mut v| {
            v.sort_by(|a, b| b.total_cmp(a));
            v
        })
    }

    proptest! {
        #[test]
        fn majorization_is_reflexive(v in sorted_vec(5)) {
            let s = Spectrum::new(v.clone()).unwrap();
            prop_assert!(majorizes(&s, &v).unwrap());
        }

        #[test]
        fn majorization_ignores_order_of_b(v in sorted_vec(4), w in sorted_vec(4), rot in 0usize..4) {
            let a = Spectrum::new(v).unwrap();
            let mut b = w.clone();
            b.rotate_left(rot);
            b.swap(0, 3);
            prop_assert_eq!(majorizes(&a, &w).unwrap(), majorizes(&a, &b).unwrap());
        }

        #[test]
        fn majorization_is_transitive(v in sorted_vec(4), t in 0.0f64..1.0, s in 0.0f64..1.0) {
            // Averaging with the barycenter moves down the majorization order.
            let a = Spectrum::new(v.clone()).unwrap();
            let mean = v.iter().sum::<f64>() / 4.0;
            let b: Vec<f64> = v.iter().map(|x| t * x + (1.0 - t) * mean).collect();
            let c: Vec<f64> = b.iter().map(|x| s * x + (1.0 - s) * mean).collect();
            let bs = Spectrum::new(b.clone()).unwrap();
            prop_assert!(majorizes(&a, &b).unwrap());
            prop_assert!(majorizes(&bs, &c).unwrap());
            prop_assert!(majorizes(&a, &c).unwrap());
        }

        #[test]
        fn mutual_majorization_means_equal(v in sorted_vec(4), w in sorted_vec(4)) {
            let a = Spectrum::new(v.clone()).unwrap();
            let b = Spectrum::new(w.clone()).unwrap();
            if majorizes(&a, &w).unwrap() && majorizes(&b, &v).unwrap() {
                prop_assert!(a.max_abs_diff(&b).unwrap() <= 2.0 * TAU_MAJ);
            }
        }

        #[test]
        fn dual_is_involution(v in sorted_vec(6)) {
            let s = Spectrum::new(v).unwrap();
            let d = dual_spectrum(&s);
            prop_assert!(d.values().windows(2).all(|w| w[0] >= w[1]));
            prop_assert_eq!(dual_spectrum(&d), s.clone());
            prop_assert!((d.sum() + s.sum()).abs() < 1e-12);
        }
    }
}
