//! Channel specification files: `{"matrix": [[...], ...], "base": 2, "method": "auto"}`.

use capacity_core::ChannelMatrix;
use serde::Deserialize;
use thiserror::Error;

/// Rows within this distance of summing to 1 are renormalized (with a
/// warning); anything further is rejected.
pub const INGEST_ROW_TOLERANCE: f64 = 1e-9;

/// Row sums closer to 1 than this are accepted without touching them.
const EXACT_ROW_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct ChannelSpecFile {
    pub matrix: Vec<Vec<f64>>,
    #[serde(default)]
    pub base: Option<f64>,
    #[serde(default)]
    pub method: Option<String>,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed channel file: {0}")]
    Malformed(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}

/// A validated channel plus any warnings raised while reading it.
#[derive(Clone, Debug)]
pub struct Ingested {
    pub channel: ChannelMatrix,
    pub warnings: Vec<String>,
}

pub fn parse_spec(text: &str) -> Result<ChannelSpecFile, IngestError> {
    serde_json::from_str(text).map_err(|e| IngestError::Malformed(e.to_string()))
}

/// Validates raw rows into a channel, renormalizing rows that are off by at
/// most [`INGEST_ROW_TOLERANCE`].
pub fn ingest_matrix(rows: &[Vec<f64>]) -> Result<Ingested, IngestError> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 {
        return Err(IngestError::InvalidMatrix("matrix is empty".into()));
    }
    let mut warnings = Vec::new();
    let mut cleaned = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(IngestError::InvalidMatrix(format!(
                "row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        if let Some((j, x)) = row
            .iter()
            .enumerate()
            .find(|(_, x)| !(x.is_finite() && **x >= 0.0 && **x <= 1.0))
        {
            return Err(IngestError::InvalidMatrix(format!(
                "entry ({i}, {j}) = {x} outside [0, 1]"
            )));
        }
        let sum: f64 = row.iter().sum();
        let off = (sum - 1.0).abs();
        if off > INGEST_ROW_TOLERANCE {
            return Err(IngestError::InvalidMatrix(format!(
                "row {i} sums to {sum}, not 1"
            )));
        }
        if off > EXACT_ROW_TOLERANCE {
            warnings.push(format!("row {i} sums to {sum}; renormalized"));
            cleaned.push(row.iter().map(|x| x / sum).collect());
        } else {
            cleaned.push(row.clone());
        }
    }
    let channel =
        ChannelMatrix::new(cleaned).map_err(|e| IngestError::InvalidMatrix(e.to_string()))?;
    Ok(Ingested { channel, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let spec = parse_spec(r#"{"matrix": [[1, 0], [0.5, 0.5]]}"#).unwrap();
        assert_eq!(spec.matrix, vec![vec![1.0, 0.0], vec![0.5, 0.5]]);
        assert_eq!(spec.base, None);
        assert_eq!(spec.method, None);
        let spec = parse_spec(r#"{"matrix": [[1]], "base": 10, "method": "muroga"}"#).unwrap();
        assert_eq!(spec.base, Some(10.0));
        assert_eq!(spec.method.as_deref(), Some("muroga"));
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(parse_spec("{"), Err(IngestError::Malformed(_))));
        assert!(matches!(
            parse_spec(r#"{"rows": []}"#),
            Err(IngestError::Malformed(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"matrix": "x"}"#),
            Err(IngestError::Malformed(_))
        ));
    }

    #[test]
    fn renormalizes_small_drift() {
        let ing = ingest_matrix(&[vec![0.3333333333, 0.6666666667], vec![0.5, 0.5]]).unwrap();
        assert_eq!(ing.warnings.len(), 0);
        let ing = ingest_matrix(&[vec![0.3, 0.7 + 5e-10], vec![0.5, 0.5]]).unwrap();
        assert_eq!(ing.warnings.len(), 1);
        let row: f64 = ing.channel.row(0).iter().sum();
        assert!((row - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_matrices() {
        for bad in [
            vec![],
            vec![vec![]],
            vec![vec![0.5, 0.5], vec![1.0]],
            vec![vec![0.5, 0.6]],
            vec![vec![1.2, -0.2]],
            vec![vec![0.3, 0.7 + 2e-9]],
        ] {
            assert!(
                matches!(ingest_matrix(&bad), Err(IngestError::InvalidMatrix(_))),
                "{bad:?}"
            );
        }
    }
}
