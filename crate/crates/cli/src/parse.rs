//! Parsing of comma-separated command-line lists into validated types.

use std::fs;
use std::io::Read;

use horn_lab_core::polygon_spaces::EdgeLengths;
use horn_lab_core::spectra::{IntegralSpectrum, Spectrum};
use horn_lab_core::{HornError, Result};
use serde::de::DeserializeOwned;

fn items(field: &str, text: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if text.trim().is_empty() || parts.iter().any(String::is_empty) {
        return Err(HornError::domain(field, format!("expected a comma-separated list, got {text:?}")));
    }
    Ok(parts)
}

pub fn reals(field: &str, text: &str) -> Result<Vec<f64>> {
    items(field, text)?
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| HornError::domain(field, format!("{s:?} is not a finite number")))
        })
        .collect()
}

pub fn integers(field: &str, text: &str) -> Result<Vec<i64>> {
    items(field, text)?
        .iter()
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| HornError::domain(field, format!("{s:?} is not an integer")))
        })
        .collect()
}

/// Re-labels a validation error with the command-line field it came from.
fn relabel(field: &str, e: HornError) -> HornError {
    match e {
        HornError::Domain { message, .. } => HornError::domain(field, message),
        other => HornError::domain(field, other.to_string()),
    }
}

pub fn spectrum(field: &str, text: &str) -> Result<Spectrum> {
    Spectrum::new(reals(field, text)?).map_err(|e| relabel(field, e))
}

pub fn integral_spectrum(field: &str, text: &str) -> Result<IntegralSpectrum> {
    IntegralSpectrum::new(integers(field, text)?).map_err(|e| relabel(field, e))
}

pub fn lengths(field: &str, text: &str) -> Result<EdgeLengths> {
    EdgeLengths::new(reals(field, text)?).map_err(|e| relabel(field, e))
}

/// Reads JSON from a file, or from standard input for `-`.
pub fn json_input<T: DeserializeOwned>(field: &str, path: &str) -> Result<T> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| HornError::domain(field, format!("cannot read standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| HornError::domain(field, format!("cannot read {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| HornError::domain(field, format!("invalid JSON in {path}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(reals("x", "1, -2.5,3e1").unwrap(), vec![1.0, -2.5, 30.0]);
        assert!(reals("x", "1,,2").is_err());
        assert!(reals("x", "").is_err());
        assert!(reals("x", "1,nan").is_err());
        assert_eq!(integers("x", "-1,0").unwrap(), vec![-1, 0]);
        assert!(integers("x", "1.5").is_err());
    }

    #[test]
    fn errors_name_the_field() {
        let e = spectrum("lambda", "1,2").unwrap_err();
        assert_eq!(e.field(), Some("lambda"));
        assert_eq!(e.kind(), "domain");
    }
}
