//! The JSON report envelope and the per-command payloads. Every number is
//! written as a string so that big integers and fractions like `31/3`
//! survive any JSON reader.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "crepanto-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub command: Vec<String>,
    pub input: String,
    pub result: serde_json::Value,
}

impl Report {
    pub fn new<T: Serialize>(command: Vec<String>, input: String, result: &T) -> Report {
        Report {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            input,
            result: serde_json::to_value(result).expect("payloads serialize"),
        }
    }

    /// The payload as a typed value.
    pub fn payload<T: for<'de> Deserialize<'de>>(&self) -> serde_json::Result<T> {
        serde_json::from_value(self.result.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub passes: bool,
    pub violators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    /// `dim H^{2i}` for `i = 0..r−1`.
    pub dims: Vec<String>,
    pub euler: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeResult {
    #[serde(rename = "type")]
    pub type_: String,
    pub normal_form: String,
    pub gorenstein: bool,
    pub isolated: bool,
    pub splitting_codimension: String,
    pub junior_points: Option<String>,
    pub criterion: Option<CriterionResult>,
    pub cohomology: Option<CohomologyResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertResult {
    pub count: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorResult {
    pub index: String,
    pub point: String,
    pub kind: String,
    /// Whether the kind read off the star fan agrees.
    pub kind_verified: bool,
    pub compact: bool,
    pub with_next: Option<String>,
    pub next_with: Option<String>,
    pub self_intersection: String,
    pub self_intersection_uncorrected: Option<String>,
    /// Whether the fan computation reproduces the closed forms.
    pub fan_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualResult {
    pub predicted: String,
    pub observed: String,
    pub isolated: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionResult {
    #[serde(rename = "type")]
    pub type_: String,
    pub l: String,
    pub r: String,
    pub nu: String,
    pub remainder: String,
    pub basic: bool,
    pub unique: bool,
    pub coherent: bool,
    pub epsilon: Option<String>,
    pub simplices: String,
    pub euler: String,
    pub expected_euler: String,
    pub cohomology: CohomologyResult,
    pub cohomology_closed_form: Option<Vec<String>>,
    pub divisors: Vec<DivisorResult>,
    pub residual: Option<ResidualResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub l: String,
    pub basic: bool,
    /// `[l]_{r−1} ∈ {0, 1}`.
    pub remainder_predicts_basic: bool,
    pub unique: bool,
    pub coherent: bool,
    pub euler: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub r: String,
    pub entries: Vec<ScanEntry>,
    pub all_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepResult {
    pub center: Vec<String>,
    pub simplices: String,
    pub euler: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationResult {
    #[serde(rename = "type")]
    pub type_: String,
    pub mode: String,
    pub count: String,
    pub steps: Vec<StepResult>,
    /// Each step refines the previous one and the last is the resolution.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleResult {
    pub params: String,
    pub cones: String,
    pub primitive_collections: Vec<Vec<String>>,
    pub canonical_self_intersection: Option<String>,
    pub e_self_intersection: Option<String>,
    pub embedding_dimension: String,
    /// Volume of the anticanonical polytope when `−K` is ample.
    pub anticanonical_volume: Option<String>,
    pub anticanonical_self_intersection: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    #[serde(rename = "type")]
    pub type_: String,
    pub simplices: String,
    pub maximal: bool,
    pub basic: bool,
    pub crepant: bool,
    pub coherent: bool,
}

/// Input of `triangulate --check`: vertices given by numerators over the
/// group order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationInput {
    pub order: i64,
    pub weights: Vec<i64>,
    pub simplices: Vec<Vec<Vec<i64>>>,
}
