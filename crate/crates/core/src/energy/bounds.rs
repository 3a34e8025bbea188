//! A-priori Willmore bounds from a Helfrich energy bound, the Helfrich lower
//! bound, the membrane feasibility predicate and the ambient comparison.
//!
//! The Cauchy-Schwarz step behind the upper bound:
//!
//! ```text
//! |∫ 2Hc| <= 2 sup|c| ∫|H| <= 2 sup|c| a^{1/2} (∫H^2)^{1/2} = 4 sup|c| a^{1/2} W^{1/2}
//! ```
//!
//! so `C(c) = 4 sup|c|`, and `(∫H)^2 <= a ∫H^2 = 4 a W` handles the nonlocal term.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which branch of the bound derivation applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundCase {
    /// `b >= 0`: the nonlocal term is dropped.
    NonNegativeB,
    /// `b < 0` and `|b| a < 1`: the nonlocal term is absorbed.
    AbsorbedNegativeB,
    /// `b < 0` and `|b| a >= 1`.
    NoBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Upper bound on the Willmore energy; `None` iff `case` is `NoBound`.
    pub upper: Option<f64>,
    /// Lower bound on the Helfrich energy for the same parameters.
    pub lower: f64,
    pub case: BoundCase,
}

/// Constant of the `∫2Hc` estimate.
pub fn cauchy_schwarz_constant(c_sup: f64) -> f64 {
    4.0 * c_sup
}

/// Bounds `W` for any surface with Helfrich energy at most `lambda`, area `a`,
/// `sup|c| = c_sup` and nonlocal coefficient `b`.
///
/// Writes `x = W^{1/2}` and solves `k x^2 - C a^{1/2} x - lambda <= 0` with
/// `k = 4` for `b >= 0` and `k = 4 (1 - |b| a)` when the nonlocal term is absorbed.
pub fn willmore_bound_from_helfrich(lambda: f64, c_sup: f64, b: f64, a: f64) -> Result<BoundReport> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("area must be positive, got {a}")));
    }
    if !lambda.is_finite() || !c_sup.is_finite() || !b.is_finite() || c_sup < 0.0 {
        return Err(Error::InvalidParameter(
            "lambda, b must be finite and c_sup finite and non-negative".into(),
        ));
    }
    let (k, case) = if b >= 0.0 {
        (4.0, BoundCase::NonNegativeB)
    } else if b.abs() * a < 1.0 {
        (4.0 * (1.0 - b.abs() * a), BoundCase::AbsorbedNegativeB)
    } else {
        return Ok(BoundReport {
            upper: None,
            lower: f64::NEG_INFINITY,
            case: BoundCase::NoBound,
        });
    };
    let lin = cauchy_schwarz_constant(c_sup) * a.sqrt();
    let disc = lin * lin + 4.0 * k * lambda;
    // an empty admissible set (disc < 0 or negative root) bounds W by 0 vacuously
    let x = if disc >= 0.0 {
        ((lin + disc.sqrt()) / (2.0 * k)).max(0.0)
    } else {
        0.0
    };
    let lower = match case {
        BoundCase::NonNegativeB => 0.0,
        // helfrich_lower_bound at eps = 1 - |b| a, inlined because its
        // range check is an equality here and can fail by rounding
        _ => {
            let eps = 1.0 - b.abs() * a;
            (1.0 - 1.0 / eps) * c_sup * c_sup * a
        }
    };
    Ok(BoundReport {
        upper: Some(x * x),
        lower,
        case,
    })
}

/// Lower bound of the Helfrich energy: `0` for `b >= 0`, otherwise
/// `(1 - 1/eps) sup|c|^2 a`, valid when `|b| a <= 1 - eps`.
///
/// Uses `2Hc >= -eps H^2 - c^2 / eps` so that
/// `H >= (1 - 1/eps) ∫c^2 + 4 (1 - eps - |b|a) W`.
pub fn helfrich_lower_bound(c_sup: f64, b: f64, a: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("area must be positive, got {a}")));
    }
    if b >= 0.0 {
        return Ok(0.0);
    }
    if b.abs() * a > 1.0 - eps {
        return Err(Error::InvalidParameter(format!(
            "|b| a = {} exceeds 1 - eps = {}",
            b.abs() * a,
            1.0 - eps
        )));
    }
    Ok((1.0 - 1.0 / eps) * c_sup * c_sup * a)
}

/// Margins of the membrane existence hypotheses
/// `3 sqrt(4 pi) v <= a^{3/2}` and `-a b <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// `a^{3/2} - 3 sqrt(4 pi) v`; absent without a volume constraint.
    pub isoperimetric_margin: Option<f64>,
    /// `3 sqrt(4 pi) v / a^{3/2}`, 1 for a round sphere.
    pub reduced_volume: Option<f64>,
    /// `1 + a b`.
    pub nonlocal_margin: f64,
}

/// Relative slack on the isoperimetric inequality, absorbing rounding in
/// `(4 pi)^{3/2}` computed two ways.
pub const ISOPERIMETRIC_SLACK: f64 = 1e-12;

pub fn feasibility(a: f64, v: Option<f64>, b: f64) -> Result<Feasibility> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("area must be positive, got {a}")));
    }
    if let Some(v) = v {
        if !(v > 0.0) {
            return Err(Error::InvalidParameter(format!("volume must be positive, got {v}")));
        }
    }
    let a32 = a.powf(1.5);
    let iso = v.map(|v| a32 - 3.0 * (4.0 * PI).sqrt() * v);
    let reduced = v.map(|v| 3.0 * (4.0 * PI).sqrt() * v / a32);
    let nonlocal = 1.0 + a * b;
    let iso_ok = iso.is_none_or(|m| m >= -ISOPERIMETRIC_SLACK * a32);
    Ok(Feasibility {
        feasible: iso_ok && nonlocal >= 0.0,
        isoperimetric_margin: iso,
        reduced_volume: reduced,
        nonlocal_margin: nonlocal,
    })
}

/// Upper bound for the Willmore energy in the enclosing Euclidean space:
/// `W_M + 1/4 sup|P|^2 |S|`.
pub fn willmore_ambient_comparison(w_m: f64, p_sup: f64, area: f64) -> Result<f64> {
    if w_m < 0.0 || p_sup < 0.0 || area < 0.0 {
        return Err(Error::InvalidParameter(
            "ambient comparison expects non-negative inputs".into(),
        ));
    }
    Ok(w_m + 0.25 * p_sup * p_sup * area)
}
