//! Dual graph of a stratified surface and the predicates defined on it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::types::{BubbleForest, ComponentId, PointId};
use crate::error::Result;

/// Edge between the components of two branches of a singular point.
/// `a <= b`; `a == b` is a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualEdge {
    pub point: PointId,
    pub a: ComponentId,
    pub b: ComponentId,
}

/// Multigraph with one vertex per component. A singular point with `k`
/// branches joins every pair of its branches, giving `k (k - 1) / 2` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    /// Component ids in ascending order.
    pub vertices: Vec<ComponentId>,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    /// Builds the graph, skipping incidences to unknown components.
    pub(crate) fn build_unchecked(f: &BubbleForest) -> Self {
        let mut vertices: Vec<ComponentId> = f.components.iter().map(|c| c.id).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges = Vec::new();
        for p in &f.singular_points {
            let inc: Vec<ComponentId> = p
                .incidences
                .iter()
                .map(|i| i.0)
                .filter(|c| vertices.binary_search(c).is_ok())
                .collect();
            for i in 0..inc.len() {
                for j in i + 1..inc.len() {
                    edges.push(DualEdge {
                        point: p.id,
                        a: inc[i].min(inc[j]),
                        b: inc[i].max(inc[j]),
                    });
                }
            }
        }
        DualGraph { vertices, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge ends at `v`; loops count twice.
    pub fn degree(&self, v: ComponentId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.a == v) as usize + (e.b == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> BTreeMap<ComponentId, usize> {
        let mut d: BTreeMap<ComponentId, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *d.get_mut(&e.a).expect("edge endpoint is a vertex") += 1;
            *d.get_mut(&e.b).expect("edge endpoint is a vertex") += 1;
        }
        d
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.a == e.b)
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut pairs: Vec<(ComponentId, ComponentId)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        pairs.sort_unstable();
        pairs.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let index = |c: ComponentId| self.vertices.binary_search(&c).expect("edge endpoint is a vertex");
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut groups = n;
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, index(e.a)), find(&mut parent, index(e.b)));
            if ra != rb {
                parent[ra] = rb;
                groups -= 1;
            }
        }
        groups == 1
    }

    /// Connected, no loops or multiple edges, and `|E| = |V| - 1`.
    pub fn is_simple_tree(&self) -> bool {
        self.is_connected()
            && !self.has_loops()
            && !self.has_multi_edges()
            && self.n_edges() + 1 == self.n_vertices()
    }
}

pub fn dual_graph(f: &BubbleForest) -> Result<DualGraph> {
    f.validate()?;
    Ok(DualGraph::build_unchecked(f))
}

/// Simple-tree dual graph and every component of genus zero.
pub fn is_bubble_tree(f: &BubbleForest) -> bool {
    f.validate().is_ok()
        && DualGraph::build_unchecked(f).is_simple_tree()
        && f.components.iter().all(|c| c.genus == 0)
}

/// Simple-tree dual graph and every non-base component of genus zero.
/// Distinct attachment points on the base follow from the uniqueness of
/// `(component, local point)` pairs checked by [`BubbleForest::validate`].
pub fn is_bubble_forest(f: &BubbleForest) -> bool {
    let ok = f.validate().is_ok()
        && DualGraph::build_unchecked(f).is_simple_tree()
        && f.components.iter().all(|c| c.id == f.base || c.genus == 0);
    if ok {
        let g = DualGraph::build_unchecked(f);
        assert!(g.is_connected() && g.n_edges() + 1 == g.n_vertices());
    }
    ok
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HauntingReport {
    /// At least one ghost and at least one regular component.
    pub valid: bool,
    /// Valid, and every ghost has dual-graph degree at least three.
    pub irreducible: bool,
    pub violations: Vec<String>,
}

pub fn validate_haunting(f: &BubbleForest) -> HauntingReport {
    let mut violations = Vec::new();
    if let Err(e) = f.validate() {
        violations.push(e.to_string());
        return HauntingReport {
            valid: false,
            irreducible: false,
            violations,
        };
    }
    let ghosts = f.components.iter().filter(|c| c.ghost).count();
    let mut valid = true;
    if ghosts == f.components.len() {
        violations.push("every component is a ghost".into());
        valid = false;
    }
    if ghosts == 0 {
        violations.push("no ghost components".into());
        valid = false;
    }
    let g = DualGraph::build_unchecked(f);
    let degrees = g.degrees();
    let mut irreducible = valid;
    for c in f.components.iter().filter(|c| c.ghost) {
        let d = degrees[&c.id];
        if d < 3 {
            violations.push(format!("ghost {} has degree {d} < 3", c.id));
            irreducible = false;
        }
    }
    HauntingReport {
        valid,
        irreducible,
        violations,
    }
}
