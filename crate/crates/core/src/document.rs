//! Self-describing JSON witness documents.
//!
//! Rationals are encoded as `[numerator, denominator]` string pairs and
//! quadratic scalars as `[rational, coefficient, radicand]`, so a document
//! round-trips without loss.

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, ColoringSpec};
use crate::dilation::{verify_multi, MultiFamily};
use crate::disjointness::{verify_family, CopyFamily, FamilyBudget, FamilyMode, VerificationReport, Violation};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::lattice::{certify_avoiding, GridColoring, LatticeWitness, ThresholdResult, ThresholdStatus};

pub const SCHEMA: &str = "gallai-witness/1";

/// The inputs that produced a document.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct InputEcho {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<PointSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<FamilyMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<FamilyBudget>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radicands: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_side: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_scale: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    /// A copy inside a sampled grid, or none when the grid avoids the set.
    Witness {
        grid: GridColoring,
        witness: Option<LatticeWitness>,
    },
    Threshold(ThresholdResult),
    Family(CopyFamily),
    Multifamily(MultiFamily),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verification {
    pub all_pass: bool,
    pub report: VerificationReport,
}

impl From<VerificationReport> for Verification {
    fn from(report: VerificationReport) -> Self {
        Verification {
            all_pass: report.all_pass(),
            report,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub schema: String,
    pub input: InputEcho,
    pub result: Payload,
    pub verification: Verification,
}

impl WitnessDocument {
    /// Assembles a document and runs the verifier on its payload.
    pub fn new(input: InputEcho, result: Payload, coloring: Option<&Coloring>) -> Result<Self> {
        let report = verify_payload(&input, &result, coloring)?;
        Ok(WitnessDocument {
            schema: SCHEMA.to_string(),
            input,
            result,
            verification: report.into(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: WitnessDocument =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad witness document: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::invalid(format!(
                "unsupported schema `{}`, expected `{SCHEMA}`",
                doc.schema
            )));
        }
        Ok(doc)
    }

    /// The coloring named by the input echo, if any.
    pub fn coloring(&self) -> Result<Option<Coloring>> {
        self.input.coloring.as_ref().map(ColoringSpec::build).transpose()
    }

    /// Re-runs every check from the stored inputs, ignoring the stored report.
    pub fn reverify(&self) -> Result<VerificationReport> {
        let coloring = self.coloring()?;
        verify_payload(&self.input, &self.result, coloring.as_ref())
    }
}

fn certificate(detail: impl Into<String>) -> Violation {
    Violation::Certificate {
        detail: detail.into(),
    }
}

fn required_set(input: &InputEcho) -> Result<&PointSet> {
    input
        .set
        .as_ref()
        .ok_or_else(|| Error::invalid("document input lacks the point set"))
}

fn required_coloring(coloring: Option<&Coloring>) -> Result<&Coloring> {
    coloring.ok_or_else(|| Error::invalid("document input lacks a coloring"))
}

pub fn verify_payload(
    input: &InputEcho,
    payload: &Payload,
    coloring: Option<&Coloring>,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    match payload {
        Payload::Witness { grid, witness } => {
            let set = required_set(input)?;
            if let Some(c) = coloring {
                if c.sample_grid(grid.sides().to_vec())? != *grid {
                    report.violations.push(certificate("stored grid differs from the coloring"));
                }
            }
            if let Some(w) = witness {
                report.members = 1;
                if !w.recheck(grid, set)? {
                    report.violations.push(certificate("lattice witness does not re-verify"));
                }
            }
        }
        Payload::Threshold(result) => {
            let set = required_set(input)?;
            let side = match result.status {
                ThresholdStatus::Resolved { side } => side.saturating_sub(1),
                ThresholdStatus::Unresolved { bound } => bound,
            };
            match &result.certificate {
                None if side == 0 => {}
                None => report.violations.push(certificate(format!("missing side-{side} certificate"))),
                Some(cert) => {
                    report.members = 1;
                    let shape_ok = cert.dim() == set.dim() && cert.side() == Some(side);
                    let colors_ok = input.colors.is_none_or(|c| cert.colors() == c);
                    if !shape_ok || !colors_ok {
                        report.violations.push(certificate(format!(
                            "certificate has shape {:?} and {} colors, expected side {side}",
                            cert.sides(),
                            cert.colors()
                        )));
                    } else if !certify_avoiding(cert, set)? {
                        report.violations.push(certificate("certificate contains a monochromatic copy"));
                    }
                }
            }
        }
        Payload::Family(family) => {
            if input.set.as_ref().is_some_and(|s| *s != family.set) {
                report.violations.push(certificate("family set differs from the input set"));
            }
            report.merge(verify_family(required_coloring(coloring)?, &family.set, family));
        }
        Payload::Multifamily(multi) => {
            let set = required_set(input)?;
            report.merge(verify_multi(required_coloring(coloring)?, set, multi));
        }
    }
    Ok(report)
}
