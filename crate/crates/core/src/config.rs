//! JSON family configuration.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "regular":  [{"matrix": [[0.3, 0.0], [0.0, 0.3]], "t": [0.0, 0.5]}],
//!   "singular": [{"rho": 0.2, "v_angle": 0.0, "c": 0.0, "beta": 1.0, "t": [0.0, 0.0]}],
//!   "alpha": 0.0,
//!   "region_U": {"kind": "disk64", "center": [0.0, 0.0], "radius": 1.0},
//!   "solver": {"depth": 12, "tol": 1e-9, "budget": 4194304},
//!   "seed": 0
//! }
//! ```
//!
//! Angles are radians, matrices row-major. `region_U` may also be
//! `{"kind": "polygon", "vertices": [[x, y], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimension::SolverOptions;
use crate::ifs::{IfsError, IfsFamily, ParamPoint, RegularMap, SingularMap};
use crate::linalg::{Mat2, Vec2};
use crate::separation::{ConvexBody, SeparationError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    SchemaVersion(u32),
    #[error("singular[{index}]: rho = {rho} is outside (0, 1): contraction violated")]
    RhoOutOfRange { index: usize, rho: f64 },
    #[error("regular[{index}]: matrix norm {norm} >= 1: matrix not contracting")]
    MatrixNotContracting { index: usize, norm: f64 },
    #[error("no singular (rank-one) maps: at least one is required")]
    NoSingularMaps,
    #[error("regular[{index}]: |det| = {det:e} is too small for an invertible map")]
    SingularMatrix { index: usize, det: f64 },
    #[error("singular[{index}]: beta = {beta} must be positive")]
    BadBeta { index: usize, beta: f64 },
    #[error("region_U: malformed vertices: {0}")]
    MalformedVertices(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularConfig {
    pub matrix: [[f64; 2]; 2],
    pub t: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularConfig {
    pub rho: f64,
    pub v_angle: f64,
    pub c: f64,
    pub beta: f64,
    pub t: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RegionConfig {
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Disk64 {
        #[serde(default)]
        center: [f64; 2],
        radius: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub depth: usize,
    pub tol: f64,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub schema_version: u32,
    pub regular: Vec<RegularConfig>,
    pub singular: Vec<SingularConfig>,
    #[serde(default)]
    pub alpha: f64,
    #[serde(rename = "region_U", default, skip_serializing_if = "Option::is_none")]
    pub region_u: Option<RegionConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
    #[serde(default)]
    pub seed: u64,
}

fn v2(a: [f64; 2]) -> Vec2 {
    Vec2::new(a[0], a[1])
}

impl FamilyConfig {
    pub fn family(&self) -> Result<IfsFamily, ConfigError> {
        let regular = self.regular.iter().map(|r| RegularMap { matrix: Mat2::from_rows(r.matrix), translation: v2(r.t) }).collect();
        let singular = self
            .singular
            .iter()
            .map(|s| SingularMap { rho: s.rho, v_angle: s.v_angle, c: s.c, beta: s.beta, translation: v2(s.t) })
            .collect();
        let nreg = self.regular.len();
        IfsFamily::new(regular, singular).map_err(|e| match e {
            IfsError::NoSingularMaps => ConfigError::NoSingularMaps,
            IfsError::RhoOutOfRange { index, rho } => ConfigError::RhoOutOfRange { index: index - nreg, rho },
            IfsError::NotContracting { index, norm } => ConfigError::MatrixNotContracting { index, norm },
            IfsError::SingularMatrix { index, det } => ConfigError::SingularMatrix { index, det },
            IfsError::BadBeta { index, beta } => ConfigError::BadBeta { index: index - nreg, beta },
            other => ConfigError::Invalid(other.to_string()),
        })
    }

    pub fn region(&self) -> Result<Option<ConvexBody>, ConfigError> {
        match &self.region_u {
            None => Ok(None),
            Some(RegionConfig::Polygon { vertices }) => ConvexBody::polygon(vertices.iter().copied().map(v2).collect())
                .map(Some)
                .map_err(|e: SeparationError| ConfigError::MalformedVertices(e.to_string())),
            Some(RegionConfig::Disk64 { center, radius }) => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(ConfigError::Invalid(format!("region_U radius {radius} must be positive")));
                }
                Ok(Some(ConvexBody::disk64(v2(*center), *radius)))
            }
        }
    }

    pub fn param(&self) -> ParamPoint {
        ParamPoint::Line(self.alpha)
    }

    pub fn solver_options(&self) -> SolverOptions {
        let mut o = SolverOptions::default();
        if let Some(s) = &self.solver {
            o.depth = s.depth;
            o.tol = s.tol;
            o.budget = s.budget;
        }
        o
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<FamilyConfig, ConfigError> {
    let cfg: FamilyConfig = serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))?;
    if cfg.schema_version != SCHEMA_VERSION {
        return Err(ConfigError::SchemaVersion(cfg.schema_version));
    }
    cfg.family()?;
    cfg.region()?;
    if let Some(s) = &cfg.solver {
        if !(s.tol > 0.0) || s.budget == 0 {
            return Err(ConfigError::Invalid("solver tol and budget must be positive".into()));
        }
    }
    Ok(cfg)
}
