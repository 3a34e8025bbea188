use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use log::info;
use serde_json::json;
use willmin::energy::{hawking_deficit, hawking_energy, helfrich, willmore, Curvature, EnergyConfig};
use willmin::geometry::{
    angle_defect_sum, enclosed_volume, fixtures, gauss_bonnet_defect, mean_curvature, signed_volume, total_area,
};
use willmin::io::{read_mesh, round12, write_mesh};
use willmin::optimize::{el_residual, minimize_constrained, residual_norms, ConstraintSpec, OptimOptions};
use willmin::TriMesh;

use crate::args::{EnergyArgs, EnergyName, EvalArgs, FixtureArgs, FixtureKind, MinimizeArgs};
use crate::Outcome;

fn parse_p(text: &str) -> Result<Option<f64>> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    let Some(v) = t.strip_prefix("const:") else {
        bail!("--P must be `none` or `const:<x>`, got `{text}`");
    };
    let x: f64 = v.parse().with_context(|| format!("--P value `{v}` is not a number"))?;
    Ok(Some(x))
}

pub fn energy_config(a: &EnergyArgs) -> Result<EnergyConfig> {
    let p = parse_p(&a.p_field)?;
    let cfg = match a.energy {
        EnergyName::Willmore => EnergyConfig::willmore(),
        EnergyName::Helfrich => EnergyConfig::helfrich(Curvature::constant(a.c), a.b),
        EnergyName::Hawking => EnergyConfig::hawking(p),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn load(path: &Path) -> Result<TriMesh> {
    read_mesh(path).with_context(|| format!("reading mesh {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn minimize(a: &MinimizeArgs) -> Result<Outcome> {
    let cfg = energy_config(&a.energy)?;
    let mesh = load(&a.mesh)?;
    let area = a.area.unwrap_or_else(|| total_area(&mesh));
    let cons = ConstraintSpec {
        tol_rel: a.tol_rel,
        ..match a.volume {
            Some(v) => ConstraintSpec::area_volume(area, v),
            None => ConstraintSpec::area(area),
        }
    };
    let opts = OptimOptions {
        gtol: a.gtol,
        max_outer: a.max_outer,
        max_inner: a.max_inner,
        seed: a.seed,
        ..OptimOptions::default()
    };
    info!("minimizing {:?} on {} vertices, target area {area}", cfg.kind, mesh.n_vertices());
    let result = match minimize_constrained(&mesh, &cfg, &cons, &opts) {
        Ok(r) => r,
        Err(e @ willmin::Error::MeshDegenerated { .. }) => {
            return Ok(Outcome::NotConverged(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let out = &result.mesh;
    let st = &result.state;
    write_mesh(&a.out, out).with_context(|| format!("writing {}", a.out.display()))?;
    write_text(&a.out.with_extension("csv"), &st.history_csv())?;

    let residual = el_residual(out, &cfg, st.lambda, st.p)?;
    let norms = residual_norms(out, &residual)?;
    let summary = json!({
        "converged": st.converged(),
        "termination": st.termination,
        "final_energy": round12(willmin::energy::energy(out, &cfg)?),
        "area": round12(total_area(out)),
        "volume": round12(signed_volume(out)),
        "lambda": round12(st.lambda),
        "p": round12(st.p),
        "willmore": round12(willmore(out)?),
        "el_residual_norm": round12(norms.rms),
        "el_residual_max": round12(norms.max),
        "outer_iterations": st.outer_iterations,
        "inner_iterations": st.inner_iterations,
        "seed": a.seed,
    });
    let text = serde_json::to_string_pretty(&summary)? + "\n";
    write_text(&a.out.with_extension("json"), &text)?;
    print!("{text}");
    Ok(if st.converged() {
        Outcome::Done
    } else {
        Outcome::NotConverged(format!(
            "no convergence after {} outer iterations",
            st.outer_iterations
        ))
    })
}

pub fn eval(a: &EvalArgs) -> Result<Outcome> {
    let cfg = energy_config(&a.energy)?;
    let mesh = load(&a.mesh)?;
    let h = mean_curvature(&mesh)?;
    let helfrich_cfg = EnergyConfig::helfrich(Curvature::constant(a.energy.c), a.energy.b);
    let hawking_cfg = EnergyConfig::hawking(parse_p(&a.energy.p_field)?);
    // the enclosed volume needs outward orientation, which only genus 0
    // fixtures are guaranteed to have
    let volume = match enclosed_volume(&mesh) {
        Ok(v) => v,
        Err(_) => signed_volume(&mesh),
    };
    let report = json!({
        "vertices": mesh.n_vertices(),
        "faces": mesh.n_faces(),
        "euler_characteristic": mesh.euler_characteristic(),
        "genus": mesh.genus(),
        "area": round12(total_area(&mesh)),
        "volume": round12(volume),
        "gauss_bonnet_defect": round12(gauss_bonnet_defect(&mesh)),
        "angle_defect_sum": round12(angle_defect_sum(&mesh)),
        "energy": round12(willmin::energy::energy(&mesh, &cfg)?),
        "willmore": round12(willmore(&mesh)?),
        "helfrich": round12(helfrich(&mesh, &helfrich_cfg)?),
        "hawking_deficit": round12(hawking_deficit(&mesh, &hawking_cfg)?),
        "hawking_energy": round12(hawking_energy(&mesh, &hawking_cfg)?),
        "mean_curvature_min": round12(h.iter().copied().fold(f64::INFINITY, f64::min)),
        "mean_curvature_max": round12(h.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
    });
    let text = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(out) = &a.out {
        write_text(out, &text)?;
    }
    print!("{text}");
    Ok(Outcome::Done)
}

pub fn fixture(a: &FixtureArgs) -> Result<Outcome> {
    let axis = |k: usize| a.axes.get(k).or(a.axes.last()).copied().unwrap_or(1.0);
    if a.axes.iter().any(|x| !(*x > 0.0)) {
        bail!("--axes must be positive");
    }
    let mesh = match a.kind {
        FixtureKind::Icosphere => fixtures::icosphere(a.level, axis(0)),
        FixtureKind::Ellipsoid => fixtures::ellipsoid(a.level, axis(0), axis(1), axis(2)),
        FixtureKind::PerturbedSphere => {
            let m = fixtures::perturbed_sphere(a.level, a.amplitude, a.seed);
            m.map_positions(|p| p * axis(0))?
        }
        FixtureKind::Torus => {
            let n = 6 * 2usize.pow(a.level);
            fixtures::torus(axis(0), axis(1).min(0.5 * axis(0)), 2 * n, n)
        }
    };
    let mesh = match a.area {
        Some(area) if area > 0.0 => fixtures::rescale_to_area(&mesh, area),
        Some(area) => bail!("--area must be positive, got {area}"),
        None => mesh,
    };
    write_mesh(&a.out, &mesh).with_context(|| format!("writing {}", a.out.display()))?;
    println!("{} vertices, {} faces -> {}", mesh.n_vertices(), mesh.n_faces(), a.out.display());
    Ok(Outcome::Done)
}
