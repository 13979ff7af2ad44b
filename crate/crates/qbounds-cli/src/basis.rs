//! Measurement-basis arguments: Pauli presets by letter plus
//! `custom:<path>` loading a JSON array of vectors of [re, im] pairs.

use crate::CliError;
use qbounds::measurement::{OrthonormalBasis, Pauli, pauli_basis};
use qbounds::{Basis64, Complex};
use std::path::Path;

pub fn parse_bases(text: &str) -> Result<Vec<Basis64>, CliError> {
    let labels: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if labels.len() < 2 {
        return Err(CliError::Args(format!(
            "need at least two measurement bases, got {:?}",
            text
        )));
    }
    labels.iter().map(|label| parse_one(label)).collect()
}

fn parse_one(label: &str) -> Result<Basis64, CliError> {
    match label {
        "X" => Ok(pauli_basis(Pauli::X)),
        "Y" => Ok(pauli_basis(Pauli::Y)),
        "Z" => Ok(pauli_basis(Pauli::Z)),
        _ => match label.strip_prefix("custom:") {
            Some(path) => load_custom(Path::new(path)),
            None => Err(CliError::Args(format!(
                "unknown basis label {label:?}; use X, Y, Z or custom:<path>"
            ))),
        },
    }
}

fn load_custom(path: &Path) -> Result<Basis64, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read basis file {}: {e}", path.display())))?;
    let raw: Vec<Vec<[f64; 2]>> = serde_json::from_str(&text).map_err(|e| {
        CliError::Args(format!(
            "basis file {} is not a JSON array of vectors of [re, im] pairs: {e}",
            path.display()
        ))
    })?;
    let vectors = raw
        .into_iter()
        .map(|v| v.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
        .collect();
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "custom".to_string());
    OrthonormalBasis::new(label, vectors).map_err(|e| CliError::Args(e.to_string()))
}
