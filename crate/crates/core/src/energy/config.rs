//! Energy selection and its parameters, with the JSON representation
//! `{"kind": "helfrich", "c": {"const": -1.0}, "b": 0.0, "P": null}`.

use nalgebra::{Matrix3, Point3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::TriMesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyKind {
    Willmore,
    Helfrich,
    #[serde(alias = "hawking-deficit")]
    Hawking,
}

/// Named scalar fields on R^3 available for the spontaneous curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinField {
    /// `1`
    Constant,
    /// `z`
    LinearZ,
    /// `|x|`
    Radial,
}

/// Spontaneous curvature `c`, either constant or `offset + scale * field(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Curvature {
    Const {
        #[serde(rename = "const")]
        value: f64,
    },
    Field {
        expr: BuiltinField,
        #[serde(default)]
        offset: f64,
        #[serde(default = "one")]
        scale: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl Default for Curvature {
    fn default() -> Self {
        Curvature::Const { value: 0.0 }
    }
}

impl Curvature {
    pub fn constant(value: f64) -> Self {
        Curvature::Const { value }
    }

    pub fn value(&self, x: &Point3<f64>) -> f64 {
        match *self {
            Curvature::Const { value } => value,
            Curvature::Field {
                expr,
                offset,
                scale,
            } => {
                offset
                    + scale
                        * match expr {
                            BuiltinField::Constant => 1.0,
                            BuiltinField::LinearZ => x.z,
                            BuiltinField::Radial => x.coords.norm(),
                        }
            }
        }
    }

    pub fn gradient(&self, x: &Point3<f64>) -> Vector3<f64> {
        match *self {
            Curvature::Const { .. } => Vector3::zeros(),
            Curvature::Field { expr, scale, .. } => match expr {
                BuiltinField::Constant => Vector3::zeros(),
                BuiltinField::LinearZ => Vector3::new(0.0, 0.0, scale),
                BuiltinField::Radial => {
                    let r = x.coords.norm();
                    if r > 0.0 {
                        x.coords * (scale / r)
                    } else {
                        Vector3::zeros()
                    }
                }
            },
        }
    }

    pub fn hessian(&self, x: &Point3<f64>) -> Matrix3<f64> {
        match *self {
            Curvature::Field {
                expr: BuiltinField::Radial,
                scale,
                ..
            } => {
                let r = x.coords.norm();
                if r > 0.0 {
                    let u = x.coords / r;
                    (Matrix3::identity() - u * u.transpose()) * (scale / r)
                } else {
                    Matrix3::zeros()
                }
            }
            _ => Matrix3::zeros(),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(
            self,
            Curvature::Const { .. }
                | Curvature::Field {
                    expr: BuiltinField::Constant,
                    ..
                }
        )
    }

    /// `sup |c|` over the mesh vertices.
    pub fn sup_on(&self, mesh: &TriMesh) -> f64 {
        mesh.positions()
            .iter()
            .map(|p| self.value(p).abs())
            .fold(0.0, f64::max)
    }
}

/// Toy Hawking field `P(x, nu)`; only constants are supported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HawkingField {
    #[serde(rename = "const")]
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyConfig {
    pub kind: EnergyKind,
    #[serde(default)]
    pub c: Curvature,
    #[serde(default)]
    pub b: f64,
    #[serde(rename = "P", default)]
    pub p: Option<HawkingField>,
}

impl EnergyConfig {
    pub fn willmore() -> Self {
        EnergyConfig {
            kind: EnergyKind::Willmore,
            c: Curvature::default(),
            b: 0.0,
            p: None,
        }
    }

    pub fn helfrich(c: Curvature, b: f64) -> Self {
        EnergyConfig {
            kind: EnergyKind::Helfrich,
            c,
            b,
            p: None,
        }
    }

    pub fn hawking(p: Option<f64>) -> Self {
        EnergyConfig {
            kind: EnergyKind::Hawking,
            c: Curvature::default(),
            b: 0.0,
            p: p.map(|value| HawkingField { value }),
        }
    }

    /// Constant value of `P` (zero when absent).
    pub fn p_value(&self) -> f64 {
        self.p.map_or(0.0, |f| f.value)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.b.is_finite() {
            return Err(Error::InvalidParameter("b must be finite".into()));
        }
        let finite = match self.c {
            Curvature::Const { value } => value.is_finite(),
            Curvature::Field { offset, scale, .. } => offset.is_finite() && scale.is_finite(),
        };
        if !finite || !self.p_value().is_finite() {
            return Err(Error::InvalidParameter(
                "c and P parameters must be finite".into(),
            ));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: EnergyConfig = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::InvalidParameter(format!("energy config at {}: {}", e.path(), e.inner())))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_shapes() {
        let c = EnergyConfig::from_json(r#"{"kind": "helfrich", "c": {"const": -1.0}, "b": 0.0, "P": null}"#)
            .unwrap();
        assert_eq!(c.kind, EnergyKind::Helfrich);
        assert_eq!(c.c, Curvature::constant(-1.0));

        let c = EnergyConfig::from_json(r#"{"kind": "helfrich", "c": {"expr": "linear-z"}}"#).unwrap();
        assert_eq!(
            c.c,
            Curvature::Field {
                expr: BuiltinField::LinearZ,
                offset: 0.0,
                scale: 1.0
            }
        );
        assert_eq!(c.b, 0.0);

        let c = EnergyConfig::from_json(r#"{"kind": "hawking", "P": {"const": 0.5}}"#).unwrap();
        assert_eq!(c.p_value(), 0.5);
        assert!(EnergyConfig::from_json(r#"{"kind": "hawking-deficit"}"#).is_ok());
    }

    #[test]
    fn rejects_unknown_fields_and_names() {
        assert!(EnergyConfig::from_json(r#"{"kind": "helfrich", "q": 1}"#).is_err());
        assert!(EnergyConfig::from_json(r#"{"kind": "helfrich", "c": {"expr": "sin"}}"#).is_err());
        assert!(EnergyConfig::from_json(r#"{"kind": "bending"}"#).is_err());
    }

    #[test]
    fn radial_field_derivatives() {
        let c = Curvature::Field {
            expr: BuiltinField::Radial,
            offset: 0.5,
            scale: 2.0,
        };
        let x = Point3::new(0.3, -0.4, 1.2);
        let h = 1e-6;
        for k in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let fd = (c.value(&xp) - c.value(&xm)) / (2.0 * h);
            assert!((fd - c.gradient(&x)[k]).abs() < 1e-8);
            let fdh = (c.gradient(&xp) - c.gradient(&xm)) / (2.0 * h);
            for j in 0..3 {
                assert!((fdh[j] - c.hessian(&x)[(j, k)]).abs() < 1e-6);
            }
        }
    }
}
