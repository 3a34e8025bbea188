//! Augmented-Lagrangian minimization with area and optional volume constraints.
//!
//! The inner problem minimizes
//!
//! ```text
//! L(x) = E(x) - lambda (A - a) - p (V - v) + mu/2 ((A - a)^2 + (V - v)^2)
//! ```
//!
//! by gradient descent with Armijo backtracking. After each inner solve the
//! multipliers move by `lambda -= mu (A - a)`, `p -= mu (V - v)`, so that at a
//! constrained critical point `grad E = lambda grad A + p grad V`, the same
//! sign convention as [`el_residual`](super::el_residual).

use std::collections::VecDeque;

use log::{debug, info, warn};
use nalgebra::{DVector, Point3, Vector3};
use serde::{Deserialize, Serialize};

use super::chart::Chart;
use super::gradient::{area_gradient, energy_and_gradient, volume_gradient, Gradient};
use crate::energy::{energy, feasibility, nonlocal_coefficient, EnergyConfig};
use crate::error::{Error, Result};
use crate::geometry::{signed_volume, total_area, TriMesh};

/// Target area, optional target volume, tolerance and the multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub area: f64,
    #[serde(default)]
    pub volume: Option<f64>,
    #[serde(default = "default_tol_rel")]
    pub tol_rel: f64,
    /// Area multiplier; also the starting value of the outer loop.
    #[serde(default)]
    pub lambda: f64,
    /// Volume multiplier.
    #[serde(default)]
    pub p: f64,
}

fn default_tol_rel() -> f64 {
    1e-3
}

impl ConstraintSpec {
    pub fn area(a: f64) -> Self {
        ConstraintSpec {
            area: a,
            volume: None,
            tol_rel: default_tol_rel(),
            lambda: 0.0,
            p: 0.0,
        }
    }

    pub fn area_volume(a: f64, v: f64) -> Self {
        ConstraintSpec {
            volume: Some(v),
            ..Self::area(a)
        }
    }

    /// Rejects bad targets and configurations outside the existence
    /// hypotheses before any optimization starts.
    pub fn validate(&self, cfg: &EnergyConfig) -> Result<()> {
        if !(self.tol_rel > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tol_rel must be positive, got {}",
                self.tol_rel
            )));
        }
        if !self.lambda.is_finite() || !self.p.is_finite() {
            return Err(Error::InvalidParameter("multipliers must be finite".into()));
        }
        let f = feasibility(self.area, self.volume, nonlocal_coefficient(cfg))?;
        if let Some(m) = f.isoperimetric_margin {
            if !f.feasible && m < 0.0 {
                return Err(Error::Infeasible(format!(
                    "isoperimetric bound violated: 3 sqrt(4 pi) v = {:.6} exceeds a^(3/2) = {:.6}",
                    3.0 * (4.0 * std::f64::consts::PI).sqrt() * self.volume.unwrap_or(0.0),
                    self.area.powf(1.5)
                )));
            }
        }
        if f.nonlocal_margin < 0.0 {
            return Err(Error::Infeasible(format!(
                "nonlocal bound violated: -a b = {:.6} exceeds 1",
                -self.area * cfg.b
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimOptions {
    pub gtol: f64,
    pub max_outer: usize,
    pub max_inner: usize,
    /// Carried for reproducible runs; the descent itself draws no random numbers.
    pub seed: u64,
    pub mu_init: f64,
    pub mu_growth: f64,
    pub mu_max: f64,
    pub armijo: f64,
    pub backtrack: f64,
    pub min_step: f64,
    /// Number of quasi-Newton correction pairs; 0 gives plain gradient descent.
    pub memory: usize,
    /// Move vertices along their normals only; tangential gradient components
    /// only redistribute vertices and otherwise collapse triangles.
    pub normal_only: bool,
    /// Precondition descent directions with a discrete bilaplacian.
    pub precondition: bool,
    /// Steps that shrink the smallest face area below this fraction of the
    /// starting mesh's smallest face are rejected; the run aborts when no
    /// step can avoid it.
    pub min_face_area_ratio: f64,
    /// Largest vertex displacement per step, relative to the mean edge
    /// length. Keeps steps local so the line search cannot jump into a
    /// folded configuration.
    pub max_step_ratio: f64,
}

impl Default for OptimOptions {
    fn default() -> Self {
        OptimOptions {
            gtol: 1e-5,
            max_outer: 50,
            max_inner: 500,
            seed: 0,
            mu_init: 10.0,
            mu_growth: 5.0,
            mu_max: 1e8,
            armijo: 1e-4,
            backtrack: 0.5,
            min_step: 1e-14,
            memory: 8,
            normal_only: true,
            precondition: true,
            min_face_area_ratio: 1e-3,
            max_step_ratio: 0.25,
        }
    }
}

/// One row of the per-outer-iteration log.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iter: usize,
    pub energy: f64,
    pub area: f64,
    pub volume: f64,
    pub lambda: f64,
    pub p: f64,
    pub mu: f64,
    pub grad_norm: f64,
}

/// Augmented-Lagrangian value after an accepted inner step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlStep {
    pub outer: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Converged,
    MaxOuter,
}

#[derive(Debug, Clone)]
pub struct OptimState {
    pub positions: Vec<Point3<f64>>,
    pub lambda: f64,
    pub p: f64,
    pub mu: f64,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub history: Vec<IterationRecord>,
    pub al_trace: Vec<AlStep>,
    pub termination: Termination,
}

impl OptimState {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    /// `iter,energy,area,volume,lambda,p,mu_pen,grad_norm` rows.
    pub fn history_csv(&self) -> String {
        let mut s = String::from("iter,energy,area,volume,lambda,p,mu_pen,grad_norm\n");
        for r in &self.history {
            s.push_str(&format!(
                "{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                r.iter, r.energy, r.area, r.volume, r.lambda, r.p, r.mu, r.grad_norm
            ));
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct OptimResult {
    pub state: OptimState,
    pub mesh: TriMesh,
}

struct Penalty<'a> {
    cfg: &'a EnergyConfig,
    cons: &'a ConstraintSpec,
    lambda: f64,
    p: f64,
    mu: f64,
}

struct Eval {
    value: f64,
    energy: f64,
    area: f64,
    volume: f64,
}

impl Penalty<'_> {
    fn violations(&self, area: f64, volume: f64) -> (f64, f64) {
        let ca = area - self.cons.area;
        let cv = self.cons.volume.map_or(0.0, |v| volume - v);
        (ca, cv)
    }

    fn combine(&self, e: f64, area: f64, volume: f64) -> Eval {
        let (ca, cv) = self.violations(area, volume);
        Eval {
            value: e - self.lambda * ca - self.p * cv + 0.5 * self.mu * (ca * ca + cv * cv),
            energy: e,
            area,
            volume,
        }
    }

    fn value(&self, mesh: &TriMesh) -> Result<Eval> {
        let e = energy(mesh, self.cfg)?;
        Ok(self.combine(e, total_area(mesh), signed_volume(mesh)))
    }

    fn value_and_gradient(&self, mesh: &TriMesh) -> Result<(Eval, Gradient)> {
        let (e, mut g) = energy_and_gradient(mesh, self.cfg)?;
        let ev = self.combine(e, total_area(mesh), signed_volume(mesh));
        let (ca, cv) = self.violations(ev.area, ev.volume);
        let ka = -self.lambda + self.mu * ca;
        for (gi, ai) in g.iter_mut().zip(area_gradient(mesh)) {
            *gi += ai * ka;
        }
        if self.cons.volume.is_some() {
            let kv = -self.p + self.mu * cv;
            for (gi, vi) in g.iter_mut().zip(volume_gradient(mesh)) {
                *gi += vi * kv;
            }
        }
        Ok((ev, g))
    }

    fn relative_violation(&self, area: f64, volume: f64) -> f64 {
        let ra = (area - self.cons.area).abs() / self.cons.area;
        let rv = self.cons.volume.map_or(0.0, |v| (volume - v).abs() / v);
        ra.max(rv)
    }
}

struct InnerOutcome {
    mesh: TriMesh,
    eval: Eval,
    grad_norm: f64,
    steps: usize,
}

/// Minimizes the configured energy subject to the constraints.
///
/// Returns `Ok` with `termination == MaxOuter` when the outer budget runs
/// out; fails on infeasible targets and on mesh degeneration.
pub fn minimize_constrained(
    mesh: &TriMesh,
    cfg: &EnergyConfig,
    cons: &ConstraintSpec,
    opts: &OptimOptions,
) -> Result<OptimResult> {
    cfg.validate()?;
    cons.validate(cfg)?;
    if !(opts.gtol > 0.0) || opts.max_outer == 0 || !(opts.mu_init > 0.0) {
        return Err(Error::InvalidParameter(
            "gtol and mu_init must be positive and max_outer at least 1".into(),
        ));
    }
    let area_floor = opts.min_face_area_ratio * mesh.min_face_area();
    let mut pen = Penalty {
        cfg,
        cons,
        lambda: cons.lambda,
        p: if cons.volume.is_some() { cons.p } else { 0.0 },
        mu: opts.mu_init,
    };
    let mut current = mesh.clone();
    let mut history = Vec::new();
    let mut al_trace = Vec::new();
    let mut inner_total = 0;
    let mut prev_violation = f64::INFINITY;
    // rotation-invariant length scale for the first trial step
    let mut step = 1e-2 * total_area(mesh).sqrt();
    let mut first = true;
    let mut termination = Termination::MaxOuter;
    let mut outer_done = 0;

    for outer in 0..opts.max_outer {
        let out = inner_descent(
            &current,
            &pen,
            opts,
            outer,
            &mut step,
            &mut first,
            &mut al_trace,
            area_floor,
        )?;
        inner_total += out.steps;
        current = out.mesh;
        outer_done = outer + 1;
        let violation = pen.relative_violation(out.eval.area, out.eval.volume);
        history.push(IterationRecord {
            iter: outer,
            energy: out.eval.energy,
            area: out.eval.area,
            volume: out.eval.volume,
            lambda: pen.lambda,
            p: pen.p,
            mu: pen.mu,
            grad_norm: out.grad_norm,
        });
        debug!(
            "outer {outer}: E = {:.9e}, A = {:.9e}, V = {:.9e}, lambda = {:.4e}, p = {:.4e}, mu = {:.1e}, |g| = {:.3e}, inner steps {}",
            out.eval.energy, out.eval.area, out.eval.volume, pen.lambda, pen.p, pen.mu, out.grad_norm, out.steps
        );
        // first-order multiplier update; at convergence this is the estimate
        // that makes the gradient of E - lambda A - p V vanish
        let (ca, cv) = pen.violations(out.eval.area, out.eval.volume);
        pen.lambda -= pen.mu * ca;
        if cons.volume.is_some() {
            pen.p -= pen.mu * cv;
        }
        if violation <= cons.tol_rel && out.grad_norm < opts.gtol {
            termination = Termination::Converged;
            break;
        }
        if violation > cons.tol_rel && violation > 0.5 * prev_violation {
            pen.mu = (pen.mu * opts.mu_growth).min(opts.mu_max);
        }
        prev_violation = violation;
    }
    if termination == Termination::Converged {
        info!("converged after {outer_done} outer iterations");
    } else {
        warn!("no convergence after {outer_done} outer iterations; returning last state");
    }
    Ok(OptimResult {
        state: OptimState {
            positions: current.positions().to_vec(),
            lambda: pen.lambda,
            p: pen.p,
            mu: pen.mu,
            outer_iterations: outer_done,
            inner_iterations: inner_total,
            history,
            al_trace,
            termination,
        },
        mesh: current,
    })
}

/// Limited-memory quasi-Newton pairs `(s, y, 1 / s.y)`.
struct History {
    pairs: VecDeque<(DVector<f64>, DVector<f64>, f64)>,
    cap: usize,
}

impl History {
    fn push(&mut self, s: DVector<f64>, y: DVector<f64>) {
        let sy = s.dot(&y);
        if self.cap == 0 || !(sy > 1e-12 * s.norm() * y.norm()) {
            return;
        }
        if self.pairs.len() == self.cap {
            self.pairs.pop_front();
        }
        self.pairs.push_back((s, y, 1.0 / sy));
    }

    /// Two-loop recursion: `-H g` for the inverse Hessian estimate `H`,
    /// seeded with a multiple of `h0`.
    fn direction(&self, g: &DVector<f64>, h0: impl Fn(&DVector<f64>) -> DVector<f64>) -> DVector<f64> {
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(self.pairs.len());
        for (s, y, rho) in self.pairs.iter().rev() {
            let a = rho * s.dot(&q);
            q.axpy(-a, y, 1.0);
            alphas.push(a);
        }
        let mut q = h0(&q);
        if let Some((s, y, _)) = self.pairs.back() {
            q *= s.dot(y) / y.dot(&h0(y));
        }
        for ((s, y, rho), a) in self.pairs.iter().zip(alphas.into_iter().rev()) {
            let b = rho * y.dot(&q);
            q.axpy(a - b, s, 1.0);
        }
        -q
    }
}

#[allow(clippy::too_many_arguments)]
fn inner_descent(
    start: &TriMesh,
    pen: &Penalty,
    opts: &OptimOptions,
    outer: usize,
    step: &mut f64,
    first: &mut bool,
    trace: &mut Vec<AlStep>,
    area_floor: f64,
) -> Result<InnerOutcome> {
    let mut mesh = start.clone();
    let chart = if opts.normal_only {
        Chart::normal(&mesh, opts.precondition)
    } else {
        Chart::free(&mesh, opts.precondition)
    };
    let (mut ev, mut full) = pen.value_and_gradient(&mesh)?;
    let mut g = chart.pull(&full);
    if *first {
        let dmax = max_norm(&chart.lift(&chart.h0(&g)));
        if dmax > 0.0 {
            *step /= dmax;
        }
        *first = false;
    }
    let mut hist = History {
        pairs: VecDeque::new(),
        cap: opts.memory,
    };
    let max_move = opts.max_step_ratio * mean_edge_length(&mesh);
    let mut steps = 0;
    // smallest face area among trials rejected for degeneracy
    let mut squeezed = None;
    for _ in 0..opts.max_inner {
        if g.norm() < opts.gtol {
            break;
        }
        let mut quasi_newton = !hist.pairs.is_empty();
        let mut d = if quasi_newton { hist.direction(&g, |q| chart.h0(q)) } else { DVector::zeros(0) };
        let mut slope = if quasi_newton { g.dot(&d) } else { 0.0 };
        if !(slope < 0.0) {
            hist.pairs.clear();
            quasi_newton = false;
            d = -chart.h0(&g);
            slope = g.dot(&d);
        }
        let disp = chart.lift(&d);
        let mut t = if quasi_newton { 1.0 } else { *step };
        let reach = t * max_norm(&disp);
        if reach > max_move {
            t *= max_move / reach;
        }
        let accepted = loop {
            if t < opts.min_step {
                break None;
            }
            match try_step(&mesh, &disp, t, pen, opts, ev.value, slope) {
                Some((trial, _)) if trial.min_face_area() < area_floor => {
                    squeezed = Some(trial.min_face_area());
                }
                Some(trial) => break Some(trial),
                None => {}
            }
            t *= opts.backtrack;
        };
        let Some((trial, trial_ev)) = accepted else {
            debug!("line search stalled at |g| = {:.3e}", g.norm());
            break;
        };
        let (e2, full2) = pen.value_and_gradient(&trial)?;
        debug_assert!((e2.value - trial_ev.value).abs() <= 1e-9 * (1.0 + e2.value.abs()));
        let g2 = chart.pull(&full2);
        hist.push(&d * t, &g2 - &g);
        mesh = trial;
        ev = e2;
        full = full2;
        g = g2;
        trace.push(AlStep {
            outer,
            value: ev.value,
        });
        steps += 1;
        if !quasi_newton {
            *step = t / opts.backtrack;
        }
    }
    if steps == 0 {
        if let Some(min_area) = squeezed {
            return Err(Error::MeshDegenerated {
                outer,
                min_area,
                threshold: area_floor,
            });
        }
    }
    // the chart directions belong to the starting mesh; stationarity is
    // judged along the directions of the final one
    let grad_norm = if opts.normal_only {
        Chart::normal(&mesh, false).pull(&full).norm()
    } else {
        g.norm()
    };
    Ok(InnerOutcome {
        mesh,
        eval: ev,
        grad_norm,
        steps,
    })
}

fn mean_edge_length(mesh: &TriMesh) -> f64 {
    let p = mesh.positions();
    let (sum, count) = mesh.faces().iter().fold((0.0, 0usize), |(s, c), f| {
        let e = (p[f[0]] - p[f[1]]).norm() + (p[f[1]] - p[f[2]]).norm() + (p[f[2]] - p[f[0]]).norm();
        (s + e, c + 3)
    });
    sum / count as f64
}

fn max_norm(d: &[Vector3<f64>]) -> f64 {
    d.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn try_step(
    mesh: &TriMesh,
    d: &[Vector3<f64>],
    t: f64,
    pen: &Penalty,
    opts: &OptimOptions,
    value: f64,
    slope: f64,
) -> Option<(TriMesh, Eval)> {
    let p: Vec<Point3<f64>> = mesh.positions().iter().zip(d).map(|(x, d)| x + d * t).collect();
    let trial = mesh.with_positions(p).ok()?;
    let ev = pen.value(&trial).ok()?;
    (ev.value <= value + opts.armijo * t * slope).then_some((trial, ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::Curvature;
    use crate::geometry::fixtures;
    use std::f64::consts::PI;

    #[test]
    fn infeasible_volume_rejected_before_descent() {
        let m = fixtures::icosphere(2, 1.0);
        let cons = ConstraintSpec::area_volume(4.0 * PI, 1.01 * 4.0 * PI / 3.0);
        let r = minimize_constrained(&m, &EnergyConfig::willmore(), &cons, &OptimOptions::default());
        assert!(matches!(r, Err(Error::Infeasible(_))));
        let cfg = EnergyConfig::helfrich(Curvature::constant(0.0), -1.0);
        let r = minimize_constrained(&m, &cfg, &ConstraintSpec::area(2.0), &OptimOptions::default());
        assert!(matches!(r, Err(Error::Infeasible(_))));
    }

    #[test]
    fn options_json_defaults() {
        let o: OptimOptions = serde_json::from_str(r#"{"gtol": 1e-6}"#).unwrap();
        assert_eq!(o.gtol, 1e-6);
        assert_eq!(o.max_outer, 50);
        assert_eq!(o.max_inner, 500);
        let c: ConstraintSpec = serde_json::from_str(r#"{"area": 2.0}"#).unwrap();
        assert_eq!(c.tol_rel, 1e-3);
        assert!(serde_json::from_str::<OptimOptions>(r#"{"gtoll": 1}"#).is_err());
    }

    #[test]
    fn area_constrained_willmore_rounds_an_ellipsoid() {
        let e = fixtures::ellipsoid(2, 1.2, 1.0, 0.85);
        let m = fixtures::rescale_to_area(&e, 4.0 * PI);
        let cfg = EnergyConfig::willmore();
        let r = minimize_constrained(&m, &cfg, &ConstraintSpec::area(4.0 * PI), &OptimOptions::default()).unwrap();
        let w = crate::energy::willmore(&r.mesh).unwrap();
        assert!(w <= 4.0 * PI * 1.02, "{w}");
        assert!((total_area(&r.mesh) - 4.0 * PI).abs() / (4.0 * PI) <= 1e-3);
        for pair in r.state.al_trace.windows(2) {
            if pair[0].outer == pair[1].outer {
                assert!(pair[1].value <= pair[0].value);
            }
        }
        assert!(r.state.mu >= OptimOptions::default().mu_init);
    }
}
