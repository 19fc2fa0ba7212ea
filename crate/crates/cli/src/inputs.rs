//! Per-command input payloads. Each is deserialized with unknown fields
//! rejected, so a payload is fully validated before any computation.

use motivic_zeta::oracle::{CurveModel, FiniteField};
use motivic_zeta::RingElement;
use serde::Deserialize;

use crate::JobError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaPn {
    pub n: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pointed {
    pub genus: u32,
    #[serde(default)]
    pub low_classes: Vec<String>,
    pub pic0: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pointless {
    pub genus: u32,
    pub cycle_degree: u32,
    pub sym_classes: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroDim {
    pub degrees: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SbLadder {
    #[serde(default = "one")]
    pub p: String,
    pub r: u32,
    pub d: u32,
}

fn one() -> String {
    "1".to_owned()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SbReduce {
    pub full: String,
    pub r: u32,
    pub d: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SbFilter {
    pub c1: String,
    pub r1: u32,
    pub c3: String,
    pub r3: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Count {
    pub model: ModelSpec,
    /// Number of extensions `F_{q^m}`, `m = 1..=len`, to enumerate.
    pub len: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Weil {
    pub model: Option<ModelSpec>,
    pub counts: Option<Vec<u64>>,
    pub q: Option<u64>,
    pub genus: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verify {
    pub model: ModelSpec,
}

/// A curve model as JSON:
///
/// ```json
/// {"kind": "plane", "p": 3, "e": 1, "poly": [[1, [0, 2, 1]], [-1, [3, 0, 0]]]}
/// {"kind": "hyperelliptic", "p": 5, "f": [1, 1, 0, 0, 0, 1]}
/// ```
///
/// Plane terms are `[coefficient, [a, b, c]]` for `c x^a y^b z^c`;
/// hyperelliptic `f` is listed from the constant term up. An optional
/// `genus` is checked against the model.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Plane {
        p: u32,
        #[serde(default = "base_degree")]
        e: u32,
        poly: Vec<(i64, [u32; 3])>,
        genus: Option<u32>,
    },
    Hyperelliptic {
        p: u32,
        #[serde(default = "base_degree")]
        e: u32,
        f: Vec<i64>,
        genus: Option<u32>,
    },
}

fn base_degree() -> u32 {
    1
}

impl ModelSpec {
    pub fn build(&self) -> Result<CurveModel, JobError> {
        let (model, genus) = match self {
            ModelSpec::Plane { p, e, poly, genus } => (CurveModel::plane(FiniteField::new(*p, *e)?, poly)?, genus),
            ModelSpec::Hyperelliptic { p, e, f, genus } => {
                (CurveModel::hyperelliptic(FiniteField::new(*p, *e)?, f)?, genus)
            }
        };
        Ok(match genus {
            Some(g) => model.with_declared_genus(*g)?,
            None => model,
        })
    }
}

pub fn element(text: &str) -> Result<RingElement, JobError> {
    text.parse().map_err(|e: motivic_zeta::RingError| JobError::Usage {
        name: e.name(),
        message: format!("{text:?}: {e}"),
    })
}

pub fn elements(texts: &[String]) -> Result<Vec<RingElement>, JobError> {
    texts.iter().map(|t| element(t)).collect()
}
