//! Versioned JSON documents: witness points, operator sets, component
//! lists and machine-readable errors. Floats serialize with 17 significant
//! digits so identical runs produce byte-identical files.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::driver::ComponentDescription;
use crate::dualspace::NoetherianOperatorSet;
use crate::error::{Error, Result};
use crate::numericops::WitnessPoint;
use crate::polyring::VariableRing;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointsDoc {
    pub schema: u32,
    pub variables: Vec<String>,
    pub points: Vec<PointJson>,
}

impl PointsDoc {
    pub fn load(path: &std::path::Path) -> Result<PointsDoc> {
        let text = std::fs::read_to_string(path)?;
        let doc: PointsDoc = serde_json::from_str(&text)?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported points schema {}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    /// Witness points with coordinates permuted into ring order.
    pub fn to_witness_points(&self, ring: &Arc<VariableRing>) -> Result<Vec<WitnessPoint>> {
        let mut perm = Vec::with_capacity(ring.num_vars());
        for name in ring.names() {
            let idx = self
                .variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            perm.push(idx);
        }
        let mut out = Vec::with_capacity(self.points.len());
        for p in &self.points {
            if p.coords.len() != self.variables.len() {
                return Err(Error::InvalidInput(
                    "point coordinate count does not match the variable list".into(),
                ));
            }
            let coords = perm
                .iter()
                .map(|&i| Complex64::new(p.coords[i][0], p.coords[i][1]))
                .collect();
            out.push(WitnessPoint::new(coords, p.component.clone()));
        }
        Ok(out)
    }
}

pub fn points_document(
    ring: &Arc<VariableRing>,
    points: &[WitnessPoint],
) -> PointsDoc {
    PointsDoc {
        schema: SCHEMA_VERSION,
        variables: ring.names().to_vec(),
        points: points
            .iter()
            .map(|p| PointJson {
                coords: p.coords.iter().map(|z| [z.re, z.im]).collect(),
                component: p.component.clone(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingDoc {
    pub variables: Vec<String>,
    pub independent: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub schema: u32,
    pub ring: RingDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<Vec<String>>,
    pub operators: Vec<String>,
    pub multiplicity: usize,
    pub numeric: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<Vec<BTreeMap<String, f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
}

pub fn operator_document(
    set: &NoetherianOperatorSet,
    numeric: bool,
    residuals: Option<Vec<BTreeMap<String, f64>>>,
) -> OperatorDoc {
    let ring = &set.ring;
    OperatorDoc {
        schema: SCHEMA_VERSION,
        ring: RingDoc {
            variables: ring.names().to_vec(),
            independent: set
                .independent
                .iter()
                .map(|&i| ring.name(i).to_string())
                .collect(),
        },
        prime: if set.prime.is_empty() {
            None
        } else {
            Some(set.prime.iter().map(|p| p.to_string()).collect())
        },
        operators: set.operators.iter().map(|o| o.to_string()).collect(),
        multiplicity: set.multiplicity(),
        numeric,
        residuals,
        component: None,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentsDoc {
    pub schema: u32,
    pub components: Vec<OperatorDoc>,
}

pub fn components_document(components: &[ComponentDescription]) -> ComponentsDoc {
    ComponentsDoc {
        schema: SCHEMA_VERSION,
        components: components
            .iter()
            .filter_map(|c| {
                c.operators.as_ref().map(|set| {
                    let mut doc = operator_document(set, true, None);
                    doc.component = Some(c.id.clone());
                    doc
                })
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub schema: u32,
    pub error: ErrorBody,
}

impl ErrorDoc {
    pub fn from_error(e: &Error) -> ErrorDoc {
        ErrorDoc {
            schema: SCHEMA_VERSION,
            error: ErrorBody {
                code: e.code().to_string(),
                message: e.to_string(),
            },
        }
    }
}

/// serde_json formatter printing every float with 17 significant digits.
struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{:.16e}", value as f64)
    }
}

/// Serialize with deterministic float formatting and a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeffJson {
    pub dmonomial: String,
    pub value: [f64; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtPointResult {
    pub point: PointJson,
    pub operators: Vec<String>,
    pub coefficients: Vec<Vec<CoeffJson>>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtPointDoc {
    pub schema: u32,
    pub ring: RingDoc,
    pub numeric: bool,
    pub results: Vec<AtPointResult>,
}
