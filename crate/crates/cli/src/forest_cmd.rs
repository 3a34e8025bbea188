use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::json;
use willmin::forest::{
    branch_count, branch_point_bound, coloring_lemma_check, dual_graph, gauss_bonnet_branched, is_bubble_forest,
    is_bubble_tree, reduce_to_irreducible, validate_haunting, BubbleForest,
};
use willmin::io::round12;

use crate::args::ForestCommand;
use crate::Outcome;

fn load(path: &Path) -> Result<BubbleForest> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(BubbleForest::from_json(&text)?)
}

fn emit(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn parse_branches(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().with_context(|| format!("branch multiplicity `{s}` is not a non-negative integer")))
        .collect()
}

pub fn run(cmd: &ForestCommand) -> Result<Outcome> {
    match cmd {
        ForestCommand::Reduce { input, out } => {
            let reduced = reduce_to_irreducible(&load(input)?)?;
            let text = reduced.to_json() + "\n";
            if let Some(out) = out {
                fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
            }
            print!("{text}");
        }
        ForestCommand::Validate { input } => {
            let f = load(input)?;
            let g = dual_graph(&f)?;
            emit(&json!({
                "components": g.n_vertices(),
                "dual_edges": g.n_edges(),
                "bubble_tree": is_bubble_tree(&f),
                "bubble_forest": is_bubble_forest(&f),
                "haunting": validate_haunting(&f),
            }))?;
        }
        ForestCommand::Lemma { max_vertices } => {
            let report = coloring_lemma_check(*max_vertices)?;
            emit(&json!({
                "max_vertices": report.max_vertices,
                "holds": report.holds(),
                "sizes": report.sizes,
                "counterexamples": report.counterexamples,
            }))?;
            if !report.holds() {
                return Ok(Outcome::NotConverged(format!(
                    "{} colorings violate the bound",
                    report.counterexamples.len()
                )));
            }
        }
        ForestCommand::Gb {
            genus,
            branches,
            willmore,
        } => {
            let m = parse_branches(branches)?;
            let total = gauss_bonnet_branched(*genus, &m)?;
            let mut report = json!({
                "genus": genus,
                "branch_multiplicities": m,
                "branch_count": branch_count(&m),
                "total_curvature": round12(total),
            });
            if let Some(w) = willmore {
                let b = branch_point_bound(*w, *genus)?;
                report["branch_point_bound"] = json!({
                    "bound": round12(b.bound),
                    "raw": round12(b.raw),
                    "clamped": b.clamped,
                    "branch_points_possible": b.branch_points_possible,
                });
            }
            emit(&report)?;
        }
    }
    Ok(Outcome::Done)
}
