#![allow(clippy::needless_range_loop)]

//! Structured-text tensor documents.
//!
//! A document carries exactly one payload form: a 6×6 `kelvin` matrix, a 6×6
//! `voigt` matrix (input dialect, converted on load), or a `components` map
//! keyed by index strings like `"1123"`. The role tag distinguishes
//! stiffness from compliance.

use exela::tensor::{ElasticityTensor, SQRT_2};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Stiffness,
    Compliance,
}

impl Role {
    pub fn flipped(self) -> Role {
        match self {
            Role::Stiffness => Role::Compliance,
            Role::Compliance => Role::Stiffness,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub version: u32,
    pub role: Role,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kelvin: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub voigt: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<std::collections::BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Debug)]
pub enum DocError {
    Validation(String),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Validation(m) => write!(f, "{m}"),
        }
    }
}

impl TensorDocument {
    pub fn from_kelvin(t: &ElasticityTensor, role: Role, description: Option<String>) -> Self {
        let kelvin = t
            .kelvin()
            .iter()
            .map(|row| row.to_vec())
            .collect::<Vec<_>>();
        TensorDocument {
            version: 1,
            role,
            kelvin: Some(kelvin),
            voigt: None,
            components: None,
            description,
        }
    }

    /// Parses document text and validates the payload.
    pub fn parse(text: &str) -> Result<(Self, ElasticityTensor), DocError> {
        let doc: TensorDocument = serde_json::from_str(text)
            .map_err(|e| DocError::Validation(format!("malformed document: {e}")))?;
        if doc.version != 1 {
            return Err(DocError::Validation(format!(
                "unsupported document version {}",
                doc.version
            )));
        }
        let payloads =
            doc.kelvin.is_some() as u8 + doc.voigt.is_some() as u8 + doc.components.is_some() as u8;
        if payloads != 1 {
            return Err(DocError::Validation(format!(
                "document must carry exactly one payload, found {payloads}"
            )));
        }
        let tensor = if let Some(kelvin) = &doc.kelvin {
            kelvin_from_rows(kelvin, 1.0)?
        } else if let Some(voigt) = &doc.voigt {
            // Voigt dialect: plain index components; shear rows/columns gain
            // the Kelvin factors on load
            kelvin_from_rows(voigt, SQRT_2)?
        } else {
            components_payload(doc.components.as_ref().unwrap())?
        };
        Ok((doc, tensor))
    }
}

fn kelvin_from_rows(rows: &[Vec<f64>], shear_weight: f64) -> Result<ElasticityTensor, DocError> {
    if rows.len() != 6 || rows.iter().any(|r| r.len() != 6) {
        return Err(DocError::Validation("matrix payload must be 6x6".into()));
    }
    let mut k = [[0.0; 6]; 6];
    let mut scale: f64 = 1.0;
    for a in 0..6 {
        for b in 0..6 {
            let w = match (a < 3, b < 3) {
                (true, true) => 1.0,
                (false, false) => shear_weight * shear_weight,
                _ => shear_weight,
            };
            // exact factors: 1, sqrt(2), 2
            let w = if w > 1.5 { 2.0 } else { w };
            k[a][b] = w * rows[a][b];
            scale = scale.max(k[a][b].abs());
        }
    }
    let tol = 1e-12 * scale;
    let mut worst = (0usize, 0usize, 0.0f64);
    for a in 0..6 {
        for b in (a + 1)..6 {
            let delta = (k[a][b] - k[b][a]).abs();
            if delta > worst.2 {
                worst = (a, b, delta);
            }
        }
    }
    if worst.2 > tol {
        return Err(DocError::Validation(format!(
            "asymmetric matrix: entries ({},{}) and ({},{}) differ by {:e}",
            worst.0 + 1,
            worst.1 + 1,
            worst.1 + 1,
            worst.0 + 1,
            worst.2
        )));
    }
    ElasticityTensor::from_kelvin(k, tol).map_err(|e| DocError::Validation(e.to_string()))
}

fn components_payload(
    map: &std::collections::BTreeMap<String, f64>,
) -> Result<ElasticityTensor, DocError> {
    let mut comps = [[[[f64::NAN; 3]; 3]; 3]; 3];
    for (key, &value) in map {
        let digits: Vec<usize> = key
            .trim_start_matches('C')
            .trim_start_matches('_')
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DocError::Validation(format!("bad component key '{key}'")))?;
        if digits.len() != 4 || digits.iter().any(|&d| !(1..=3).contains(&d)) {
            return Err(DocError::Validation(format!(
                "component key '{key}' must be four indices in 1..3"
            )));
        }
        let (i, j, p, q) = (digits[0] - 1, digits[1] - 1, digits[2] - 1, digits[3] - 1);
        for (a, b) in [(i, j), (j, i)] {
            for (c, d) in [(p, q), (q, p)] {
                for (x, y, z, w) in [(a, b, c, d), (c, d, a, b)] {
                    let slot = &mut comps[x][y][z][w];
                    if !slot.is_nan() && (*slot - value).abs() > 1e-12 * value.abs().max(1.0) {
                        return Err(DocError::Validation(format!(
                            "conflicting values for component {}{}{}{}",
                            x + 1,
                            y + 1,
                            z + 1,
                            w + 1
                        )));
                    }
                    *slot = value;
                }
            }
        }
    }
    for plane in comps.iter_mut().flatten().flatten().flatten() {
        if plane.is_nan() {
            *plane = 0.0;
        }
    }
    ElasticityTensor::from_components(&comps).map_err(|e| DocError::Validation(e.to_string()))
}

/// Pretty-printed document text.
pub fn to_json(doc: &TensorDocument) -> String {
    serde_json::to_string_pretty(doc).expect("serializable document")
}
