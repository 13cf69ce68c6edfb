//! JSON forms of matrices, witness bundles and order reports.
//!
//! Rationals travel as strings such as `"-4/3"` so that every value round
//! trips exactly. Matrices list their nonzero entries in row-major order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_ncpoly, parse_rational};
use crate::error::{FormatError, MatrixError};
use crate::structure::OrderReport;
use crate::triangular::UTMatrix;
use crate::witness::{BundleMode, WitnessBundle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeJson {
    Single,
    Sum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleJson {
    pub poly: String,
    pub n: usize,
    pub mode: ModeJson,
    pub tuples: Vec<Vec<MatrixJson>>,
    pub target: MatrixJson,
    pub verified: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReportJson {
    pub order: usize,
    pub certificate: Option<Vec<usize>>,
    #[serde(rename = "checkedUpTo")]
    pub checked_up_to: usize,
}

impl From<&UTMatrix> for MatrixJson {
    fn from(m: &UTMatrix) -> Self {
        MatrixJson {
            n: m.n(),
            entries: m
                .nonzero_entries()
                .map(|(row, col, v)| EntryJson { row, col, value: format_rational(v) })
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for UTMatrix {
    type Error = FormatError;

    fn try_from(json: &MatrixJson) -> Result<Self, FormatError> {
        if json.n == 0 {
            return Err(FormatError::EmptyMatrix);
        }
        let mut seen = BTreeSet::new();
        let mut values = Vec::with_capacity(json.entries.len());
        for e in &json.entries {
            if !seen.insert((e.row, e.col)) {
                return Err(FormatError::DuplicateEntry { row: e.row, col: e.col });
            }
            let v = parse_rational(&e.value).ok_or_else(|| FormatError::BadRational(e.value.clone()))?;
            values.push((e.row, e.col, v));
        }
        Ok(UTMatrix::from_entries(json.n, values)?)
    }
}

impl From<&OrderReport> for OrderReportJson {
    fn from(r: &OrderReport) -> Self {
        OrderReportJson {
            order: r.order,
            certificate: r.certificate.as_ref().map(|w| w.letters().to_vec()),
            checked_up_to: r.checked_up_to,
        }
    }
}

impl From<&WitnessBundle> for BundleJson {
    fn from(b: &WitnessBundle) -> Self {
        BundleJson {
            poly: b.poly.to_string(),
            n: b.n,
            mode: match b.mode {
                BundleMode::Single => ModeJson::Single,
                BundleMode::Sum => ModeJson::Sum,
            },
            tuples: b.tuples.iter().map(|t| t.iter().map(MatrixJson::from).collect()).collect(),
            target: MatrixJson::from(&b.target),
            verified: b.verified,
            seed: b.seed,
        }
    }
}

impl TryFrom<&BundleJson> for WitnessBundle {
    type Error = FormatError;

    fn try_from(json: &BundleJson) -> Result<Self, FormatError> {
        let poly = parse_ncpoly(&json.poly)?;
        let check = |m: UTMatrix| {
            if m.n() == json.n {
                Ok(m)
            } else {
                Err(FormatError::Matrix(MatrixError::DimensionMismatch { expected: json.n, found: m.n() }))
            }
        };
        let tuples = json
            .tuples
            .iter()
            .map(|t| t.iter().map(|m| UTMatrix::try_from(m).and_then(check)).collect())
            .collect::<Result<Vec<Vec<UTMatrix>>, _>>()?;
        Ok(WitnessBundle {
            poly,
            n: json.n,
            mode: match json.mode {
                ModeJson::Single => BundleMode::Single,
                ModeJson::Sum => BundleMode::Sum,
            },
            tuples,
            target: check(UTMatrix::try_from(&json.target)?)?,
            verified: json.verified,
            seed: json.seed,
        })
    }
}

pub fn matrix_from_str(text: &str) -> Result<UTMatrix, FormatError> {
    let json: MatrixJson = serde_json::from_str(text)?;
    UTMatrix::try_from(&json)
}

pub fn matrix_to_string(m: &UTMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from(m)).expect("matrix JSON")
}

pub fn bundle_from_str(text: &str) -> Result<WitnessBundle, FormatError> {
    let json: BundleJson = serde_json::from_str(text)?;
    WitnessBundle::try_from(&json)
}

pub fn bundle_to_string(b: &WitnessBundle) -> String {
    serde_json::to_string_pretty(&BundleJson::from(b)).expect("bundle JSON")
}

pub fn order_report_to_string(r: &OrderReport) -> String {
    serde_json::to_string(&OrderReportJson::from(r)).expect("order JSON")
}
