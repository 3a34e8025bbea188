//! Branched Gauss-Bonnet bookkeeping for conformal maps with branch points.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Branch points counted with multiplicity: a point where the map has
/// multiplicity `m + 1` contributes `m`.
pub fn branch_count(multiplicities: &[u32]) -> u64 {
    multiplicities.iter().map(|&m| u64::from(m)).sum()
}

/// Total scalar curvature `8 pi (1 - q) + 4 pi b` of a closed branched
/// surface of genus `q` with branch count `b`.
pub fn gauss_bonnet_branched(genus: u32, multiplicities: &[u32]) -> Result<f64> {
    if let Some(k) = multiplicities.iter().position(|&m| m == 0) {
        return Err(Error::InvalidParameter(format!(
            "branch multiplicity {k} is zero; each branch point has m >= 1"
        )));
    }
    Ok(8.0 * PI * (1.0 - f64::from(genus)) + 4.0 * PI * branch_count(multiplicities) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchBound {
    /// Upper bound on the branch count, never negative.
    pub bound: f64,
    /// `(W - 4 pi (1 - q)) / (2 pi)` before clamping.
    pub raw: f64,
    pub clamped: bool,
    /// False when the raw bound is below one, so no branch point fits.
    pub branch_points_possible: bool,
}

/// Upper bound on the branch count of a genus-`q` surface whose ambient
/// Willmore energy is `willmore`.
pub fn branch_point_bound(willmore: f64, genus: u32) -> Result<BranchBound> {
    if !(willmore >= 0.0) || !willmore.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Willmore energy must be finite and non-negative, got {willmore}"
        )));
    }
    let raw = (willmore - 4.0 * PI * (1.0 - f64::from(genus))) / (2.0 * PI);
    Ok(BranchBound {
        bound: raw.max(0.0),
        raw,
        clamped: raw < 0.0,
        branch_points_possible: raw >= 1.0,
    })
}
