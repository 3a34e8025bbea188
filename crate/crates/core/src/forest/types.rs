//! Stratified surfaces as incidence data: components, singular points gluing
//! marked points of components together, and a designated base.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComponentId = u64;
pub type PointId = u64;

/// A `(component, local point)` pair: one branch of a singular point.
pub type Incidence = (ComponentId, u64);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: ComponentId,
    pub genus: u32,
    #[serde(default)]
    pub ghost: bool,
    /// `m` for every branch point, whose multiplicity is `m + 1`.
    #[serde(default)]
    pub branch_multiplicities: Vec<u32>,
}

impl Component {
    pub fn sphere(id: ComponentId) -> Self {
        Component {
            id,
            genus: 0,
            ghost: false,
            branch_multiplicities: Vec::new(),
        }
    }

    pub fn ghost(id: ComponentId) -> Self {
        Component {
            ghost: true,
            ..Self::sphere(id)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularPoint {
    pub id: PointId,
    pub incidences: Vec<Incidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubbleForest {
    pub base: ComponentId,
    pub components: Vec<Component>,
    #[serde(default)]
    pub singular_points: Vec<SingularPoint>,
}

impl BubbleForest {
    pub fn component(&self, id: ComponentId) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn is_ghost(&self, id: ComponentId) -> bool {
        self.component(id).is_some_and(|c| c.ghost)
    }

    /// Structural checks. Error messages start with the JSON path of the
    /// offending field.
    pub fn validate(&self) -> Result<()> {
        let fail = |path: String, msg: &str| Err(Error::Forest(format!("{path}: {msg}")));
        if self.components.is_empty() {
            return fail("components".into(), "at least one component is required");
        }
        let mut ids = BTreeSet::new();
        for (k, c) in self.components.iter().enumerate() {
            if !ids.insert(c.id) {
                return fail(format!("components[{k}].id"), "duplicate component id");
            }
            if let Some(j) = c.branch_multiplicities.iter().position(|&m| m == 0) {
                return fail(
                    format!("components[{k}].branch_multiplicities[{j}]"),
                    "multiplicities must be positive",
                );
            }
        }
        if !ids.contains(&self.base) {
            return fail("base".into(), "base is not a component id");
        }
        let mut point_ids = BTreeSet::new();
        let mut seen: BTreeMap<Incidence, usize> = BTreeMap::new();
        for (k, p) in self.singular_points.iter().enumerate() {
            if !point_ids.insert(p.id) {
                return fail(format!("singular_points[{k}].id"), "duplicate singular point id");
            }
            if p.incidences.len() < 2 {
                return fail(
                    format!("singular_points[{k}].incidences"),
                    "a singular point joins at least two branches",
                );
            }
            for (j, inc) in p.incidences.iter().enumerate() {
                if !ids.contains(&inc.0) {
                    return fail(
                        format!("singular_points[{k}].incidences[{j}]"),
                        &format!("dangling incidence to unknown component {}", inc.0),
                    );
                }
                if let Some(other) = seen.insert(*inc, k) {
                    return fail(
                        format!("singular_points[{k}].incidences[{j}]"),
                        &format!("local point ({}, {}) already used by singular_points[{other}]", inc.0, inc.1),
                    );
                }
            }
        }
        if !super::graph::DualGraph::build_unchecked(self).is_connected() {
            return fail("singular_points".into(), "dual graph is not connected");
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let f: BubbleForest = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::Forest(format!("forest JSON at {}: {}", e.path(), e.inner())))?;
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("forest serializes")
    }

    /// Order-independent form: components sorted by id, incidences sorted
    /// within points, points sorted by incidences and then renumbered.
    /// Two forests differing only in singular point ids or list order share
    /// one canonical form.
    pub fn canonical(&self) -> BubbleForest {
        let mut components = self.components.clone();
        for c in &mut components {
            c.branch_multiplicities.sort_unstable();
        }
        components.sort();
        let mut points: Vec<Vec<Incidence>> = self
            .singular_points
            .iter()
            .map(|p| {
                let mut inc = p.incidences.clone();
                inc.sort_unstable();
                inc
            })
            .collect();
        points.sort();
        BubbleForest {
            base: self.base,
            components,
            singular_points: points
                .into_iter()
                .enumerate()
                .map(|(k, incidences)| SingularPoint {
                    id: k as PointId,
                    incidences,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let text = r#"{"base": 0,
            "components": [{"id": 0, "genus": 1, "ghost": false, "branch_multiplicities": [2]},
                           {"id": 1, "genus": 0}],
            "singular_points": [{"id": 5, "incidences": [[0, 0], [1, 0]]}]}"#;
        let f = BubbleForest::from_json(text).unwrap();
        assert_eq!(f.components[0].branch_multiplicities, vec![2]);
        assert!(!f.components[1].ghost);
        let back = BubbleForest::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }

    fn err(text: &str) -> String {
        match BubbleForest::from_json(text) {
            Err(Error::Forest(m)) => m,
            other => panic!("expected forest error, got {other:?}"),
        }
    }

    #[test]
    fn validation_reports_paths() {
        let m = err(r#"{"base": 0, "components": [{"id": 0, "genus": 0}],
            "singular_points": [{"id": 0, "incidences": [[0, 0], [3, 0]]}]}"#);
        assert!(m.starts_with("singular_points[0].incidences[1]"), "{m}");
        let m = err(r#"{"base": 0, "components": [{"id": 0, "genus": 0}, {"id": 1, "genus": 0}],
            "singular_points": [{"id": 0, "incidences": [[0, 0], [1, 0]]},
                                {"id": 1, "incidences": [[0, 0], [1, 1]]}]}"#);
        assert!(m.starts_with("singular_points[1].incidences[0]"), "{m}");
        let m = err(r#"{"base": 2, "components": [{"id": 0, "genus": 0}]}"#);
        assert!(m.starts_with("base"));
        let m = err(r#"{"base": 0, "components": [{"id": 0, "genus": 0}, {"id": 1, "genus": 0}]}"#);
        assert!(m.contains("not connected"));
        let m = err(r#"{"base": 0, "components": [{"id": 0, "genus": 0, "branch_multiplicities": [1, 0]}]}"#);
        assert!(m.starts_with("components[0].branch_multiplicities[1]"));
        let m = err(r#"{"base": 0, "components": [{"id": 0, "genus": 0}],
            "singular_points": [{"id": 0, "incidences": [[0, 0]]}]}"#);
        assert!(m.contains("at least two"));
        let m = err(r#"{"base": 0, "components": [{"id": 0, "genus": 0}, {"id": 1, "genus": -1}]}"#);
        assert!(m.contains("forest JSON at components[1].genus"), "{m}");
        assert!(err(r#"{"base": 0, "components": [{"id": 0, "genus": 0, "colour": 1}]}"#).contains("forest JSON"));
    }

    #[test]
    fn canonical_form_ignores_ids_and_order() {
        let a = BubbleForest {
            base: 0,
            components: vec![Component::sphere(1), Component::sphere(0)],
            singular_points: vec![SingularPoint {
                id: 9,
                incidences: vec![(1, 0), (0, 3)],
            }],
        };
        let b = BubbleForest {
            base: 0,
            components: vec![Component::sphere(0), Component::sphere(1)],
            singular_points: vec![SingularPoint {
                id: 2,
                incidences: vec![(0, 3), (1, 0)],
            }],
        };
        assert_ne!(a, b);
        assert_eq!(a.canonical(), b.canonical());
    }
}
