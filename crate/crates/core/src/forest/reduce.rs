//! Ghost reduction: delete ghosts of degree one, contract ghosts of degree
//! two by identifying their two attachment points, until every ghost meets
//! at least three components.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::DualGraph;
use super::types::{BubbleForest, Component, ComponentId, SingularPoint};
use crate::error::{Error, Result};

/// Ghosts a single rewrite applies to, with their degree. Ghosts carrying a
/// loop are skipped: in a connected forest a loop on a ghost of degree two
/// means the ghost is the only component.
pub fn reducible_ghosts(f: &BubbleForest) -> Vec<(ComponentId, usize)> {
    let g = DualGraph::build_unchecked(f);
    let degrees = g.degrees();
    f.components
        .iter()
        .filter(|c| c.ghost)
        .filter_map(|c| {
            let d = degrees[&c.id];
            let looped = g.edges.iter().any(|e| e.a == c.id && e.b == c.id);
            ((d == 1 || d == 2) && !looped).then_some((c.id, d))
        })
        .collect()
}

/// Removes `ghost` and replaces the singular points it touches by one point
/// carrying their remaining branches (none when fewer than two remain).
pub fn rewrite_ghost(f: &BubbleForest, ghost: ComponentId) -> Result<BubbleForest> {
    if !reducible_ghosts(f).iter().any(|&(id, _)| id == ghost) {
        return Err(Error::Forest(format!("component {ghost} is not a ghost of degree 1 or 2")));
    }
    let next_id = f.singular_points.iter().map(|p| p.id + 1).max().unwrap_or(0);
    let (touched, mut kept): (Vec<SingularPoint>, Vec<SingularPoint>) = f
        .singular_points
        .iter()
        .cloned()
        .partition(|p| p.incidences.iter().any(|i| i.0 == ghost));
    let merged: Vec<_> = touched
        .iter()
        .flat_map(|p| p.incidences.iter().copied())
        .filter(|i| i.0 != ghost)
        .collect();
    if merged.len() >= 2 {
        kept.push(SingularPoint {
            id: next_id,
            incidences: merged,
        });
    }
    let components: Vec<Component> = f.components.iter().filter(|c| c.id != ghost).cloned().collect();
    if components.is_empty() {
        return Err(Error::Forest("reduction removed every component".into()));
    }
    let base = if f.base == ghost { new_base(&components)? } else { f.base };
    Ok(BubbleForest {
        base,
        components,
        singular_points: kept,
    })
}

/// Smallest-id regular component of positive genus, else smallest-id regular
/// component. Regular components survive reduction, so this choice does not
/// depend on the order of rewrites.
fn new_base(components: &[Component]) -> Result<ComponentId> {
    let regular = || components.iter().filter(|c| !c.ghost);
    regular()
        .filter(|c| c.genus > 0)
        .map(|c| c.id)
        .min()
        .or_else(|| regular().map(|c| c.id).min())
        .ok_or_else(|| Error::Forest("no regular component left to serve as base".into()))
}

/// Applies rewrites until no ghost of degree 1 or 2 remains: each pass takes
/// the smallest-id degree-1 ghost, or failing that the smallest-id degree-2
/// ghost.
pub fn reduce_to_irreducible(f: &BubbleForest) -> Result<BubbleForest> {
    f.validate()?;
    if f.components.iter().all(|c| c.ghost) {
        return Err(Error::Forest("not a valid haunting: every component is a ghost".into()));
    }
    let mut cur = f.clone();
    loop {
        let cand = reducible_ghosts(&cur);
        let pick = cand
            .iter()
            .filter(|c| c.1 == 1)
            .map(|c| c.0)
            .min()
            .or_else(|| cand.iter().map(|c| c.0).min());
        match pick {
            Some(g) => cur = rewrite_ghost(&cur, g)?,
            None => break,
        }
    }
    debug_assert!(cur.validate().is_ok());
    Ok(cur)
}

/// Canonical forms of every terminal forest reachable by applying rewrites in
/// any order. Exponential; intended for small inputs.
pub fn reduction_outcomes(f: &BubbleForest) -> Result<BTreeSet<BubbleForest>> {
    fn explore(
        f: &BubbleForest,
        memo: &mut BTreeMap<BubbleForest, BTreeSet<BubbleForest>>,
    ) -> Result<BTreeSet<BubbleForest>> {
        let key = f.canonical();
        if let Some(hit) = memo.get(&key) {
            return Ok(hit.clone());
        }
        let cand = reducible_ghosts(f);
        let mut out = BTreeSet::new();
        if cand.is_empty() {
            out.insert(key.clone());
        }
        for (g, _) in cand {
            out.extend(explore(&rewrite_ghost(f, g)?, memo)?);
        }
        memo.insert(key, out.clone());
        Ok(out)
    }
    explore(f, &mut BTreeMap::new())
}

/// Multiset of regular components, as sorted list.
pub fn regular_components(f: &BubbleForest) -> Vec<Component> {
    let mut r: Vec<Component> = f.components.iter().filter(|c| !c.ghost).cloned().collect();
    r.sort();
    r
}

/// Random tree-shaped forest with `n` components: each new component hangs
/// off a uniformly chosen earlier one. Every component is a ghost with
/// probability `ghost_prob`, except that at least one stays regular; the
/// base may have positive genus.
pub fn random_haunted_tree(n: usize, ghost_prob: f64, seed: u64) -> BubbleForest {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut components: Vec<Component> = (0..n as u64)
        .map(|id| Component {
            id,
            genus: if id == 0 { rng.gen_range(0..3) } else { 0 },
            ghost: rng.gen_bool(ghost_prob),
            branch_multiplicities: if rng.gen_bool(0.2) { vec![rng.gen_range(1..4)] } else { vec![] },
        })
        .collect();
    if components.iter().all(|c| c.ghost) {
        let k = rng.gen_range(0..n);
        components[k].ghost = false;
    }
    let mut next_local = vec![0u64; n];
    let mut singular_points = Vec::new();
    for child in 1..n {
        let parent = rng.gen_range(0..child);
        let (a, b) = ((parent as u64, next_local[parent]), (child as u64, next_local[child]));
        next_local[parent] += 1;
        next_local[child] += 1;
        singular_points.push(SingularPoint {
            id: (child - 1) as u64,
            incidences: vec![a, b],
        });
    }
    BubbleForest {
        base: 0,
        components,
        singular_points,
    }
}
