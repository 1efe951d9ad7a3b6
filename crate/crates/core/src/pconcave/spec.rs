use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PConcaveFunction;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, read_polytope, Polytope, Vector};

/// Serde adapter for extended reals: finite numbers or the string `"inf"`.
pub mod exponent {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if *p == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Str(s) if matches!(s.as_str(), "inf" | "+inf" | "infinity") => Ok(f64::INFINITY),
            Raw::Str(s) => Err(de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(p: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match p {
                Some(p) => super::serialize(p, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] f64);
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }
}

/// JSON description of a built-in function.
///
/// ```json
/// {"kind": "tent", "dim": 2, "p": 1, "vertices": [[0,0],[1,0],[0,2]],
///  "apex": [0.25, 0.5], "apex_height": 1}
/// ```
///
/// The body of `indicator` and `tent` comes from `polytope_file` (resolved
/// against the directory of the referencing file) or inline `vertices`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub kind: String,
    pub dim: usize,
    #[serde(default, with = "exponent::option", skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex_height: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
}

impl FunctionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }

    /// p given in the spec, or the largest p for which the kind is p-concave.
    pub fn exponent(&self) -> f64 {
        self.p.unwrap_or(match self.kind.as_str() {
            "gaussian" => 0.0,
            "tent" => 1.0,
            _ => f64::INFINITY,
        })
    }

    pub fn build(&self, base_dir: &Path) -> Result<PConcaveFunction> {
        let p = self.exponent();
        match self.kind.as_str() {
            "gaussian" => PConcaveFunction::gaussian(self.dim, self.scale.unwrap_or(1.0), p),
            "indicator" => PConcaveFunction::indicator(self.body(base_dir)?, p),
            "tent" => {
                let body = self.body(base_dir)?;
                let apex = match &self.apex {
                    Some(a) => self.vector(a)?,
                    None => body.centroid().expect("nonempty body"),
                };
                PConcaveFunction::tent(body, apex, self.apex_height.unwrap_or(1.0), p)
            }
            other => Err(Error::InvalidConfig(format!("unknown function kind {other:?}"))),
        }
    }

    fn vector(&self, c: &[f64]) -> Result<Vector> {
        if c.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c.len(),
            });
        }
        Ok(Vector::new(c))
    }

    fn body(&self, base_dir: &Path) -> Result<Polytope> {
        let body = match (&self.polytope_file, &self.vertices) {
            (Some(file), None) => read_polytope(&base_dir.join(file))?,
            (None, Some(vs)) => {
                let pts = vs.iter().map(|c| self.vector(c)).collect::<Result<Vec<_>>>()?;
                convex_hull(&pts, self.dim)?
            }
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "{} needs exactly one of polytope_file or vertices",
                    self.kind
                )))
            }
        };
        if body.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: body.dim(),
            });
        }
        Ok(body)
    }
}
