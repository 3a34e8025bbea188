//! Exhaustive check of the tree coloring bound: if only vertices of degree at
//! least three may be white, a tree has more black vertices than white ones.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tree size accepted by [`coloring_lemma_check`].
pub const MAX_LEMMA_VERTICES: usize = 12;

/// Unlabelled tree as adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    pub adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        Tree { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            e.extend(nb.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        e
    }

    /// One or two central vertices (the middle of a longest path).
    fn centers(&self) -> Vec<usize> {
        let n = self.len();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut deg: Vec<usize> = self.adj.iter().map(|a| a.len()).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        let mut left = n;
        while left > 2 {
            left -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &w in &self.adj[v] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    fn encode(&self, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = self.adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.encode(w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }

    /// Isomorphism invariant: the smallest parenthesis encoding rooted at a
    /// center.
    pub fn canonical(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| self.encode(c, usize::MAX))
            .min()
            .unwrap_or_default()
    }
}

/// All rooted trees on `n` vertices as level sequences, in the successor
/// order of Beyer and Hedetniemi. Vertex `i` hangs off the last earlier
/// vertex one level up.
fn rooted_level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(level.clone());
        let Some(p) = (0..n).rev().find(|&i| level[i] > 1) else {
            break;
        };
        let q = (0..p).rev().find(|&j| level[j] == level[p] - 1).expect("parent level exists");
        for i in p..n {
            level[i] = level[i - p + q];
        }
    }
    out
}

fn tree_from_levels(level: &[usize]) -> Tree {
    let mut edges = Vec::new();
    for i in 1..level.len() {
        let parent = (0..i).rev().find(|&j| level[j] + 1 == level[i]).expect("parent exists");
        edges.push((parent, i));
    }
    Tree::from_edges(level.len(), &edges)
}

/// Number of rooted unlabelled trees on `n` vertices.
pub fn count_rooted_trees(n: usize) -> usize {
    rooted_level_sequences(n).len()
}

/// All pairwise non-isomorphic (free) trees on `n >= 1` vertices.
pub fn free_trees(n: usize) -> Vec<Tree> {
    let mut seen = BTreeSet::new();
    rooted_level_sequences(n)
        .iter()
        .map(|l| tree_from_levels(l))
        .filter(|t| seen.insert(t.canonical()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub edges: Vec<(usize, usize)>,
    pub white: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    pub vertices: usize,
    pub trees: usize,
    pub colorings: u64,
    /// Smallest `#black - #white` over all colorings.
    pub min_margin: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub max_vertices: usize,
    pub sizes: Vec<SizeReport>,
    pub counterexamples: Vec<Counterexample>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Enumerates every tree with `1..=max_vertices` vertices and every coloring
/// whose white vertices all have degree at least three.
pub fn coloring_lemma_check(max_vertices: usize) -> Result<LemmaReport> {
    if max_vertices == 0 || max_vertices > MAX_LEMMA_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "max_vertices must lie in 1..={MAX_LEMMA_VERTICES}, got {max_vertices}"
        )));
    }
    let per_size: Vec<(SizeReport, Vec<Counterexample>)> = (1..=max_vertices)
        .into_par_iter()
        .map(|n| {
            let trees = free_trees(n);
            let mut colorings = 0u64;
            let mut min_margin = i64::MAX;
            let mut bad = Vec::new();
            for t in &trees {
                let eligible: Vec<usize> = (0..n).filter(|&v| t.adj[v].len() >= 3).collect();
                for mask in 0u32..(1 << eligible.len()) {
                    let white = mask.count_ones() as i64;
                    let margin = (n as i64 - white) - white;
                    colorings += 1;
                    min_margin = min_margin.min(margin);
                    if margin <= 0 {
                        bad.push(Counterexample {
                            edges: t.edges(),
                            white: eligible
                                .iter()
                                .enumerate()
                                .filter(|(k, _)| mask >> k & 1 == 1)
                                .map(|(_, &v)| v)
                                .collect(),
                        });
                    }
                }
            }
            (
                SizeReport {
                    vertices: n,
                    trees: trees.len(),
                    colorings,
                    min_margin,
                },
                bad,
            )
        })
        .collect();
    let mut sizes = Vec::new();
    let mut counterexamples = Vec::new();
    for (s, bad) in per_size {
        sizes.push(s);
        counterexamples.extend(bad);
    }
    Ok(LemmaReport {
        max_vertices,
        sizes,
        counterexamples,
    })
}
