//! Stratified surfaces as combinatorial data: dual graphs, bubble trees and
//! forests, ghost components and their reduction, the tree coloring bound
//! and branched Gauss-Bonnet arithmetic.

pub mod examples;
mod gauss_bonnet;
mod graph;
mod lemma;
mod reduce;
mod types;

pub use gauss_bonnet::{branch_count, branch_point_bound, gauss_bonnet_branched, BranchBound};
pub use graph::{
    dual_graph, is_bubble_forest, is_bubble_tree, validate_haunting, DualEdge, DualGraph, HauntingReport,
};
pub use lemma::{
    coloring_lemma_check, count_rooted_trees, free_trees, Counterexample, LemmaReport, SizeReport, Tree,
    MAX_LEMMA_VERTICES,
};
pub use reduce::{
    random_haunted_tree, reduce_to_irreducible, reducible_ghosts, reduction_outcomes, regular_components,
    rewrite_ghost,
};
pub use types::{BubbleForest, Component, ComponentId, Incidence, PointId, SingularPoint};
