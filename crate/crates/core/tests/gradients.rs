use nalgebra::{Rotation3, Vector3};
use willmin::energy::{energy, BuiltinField, Curvature, EnergyConfig};
use willmin::geometry::fixtures;
use willmin::optimize::{directional_derivative, energy_gradient, fd_gradient};

fn configs() -> Vec<EnergyConfig> {
    vec![
        EnergyConfig::willmore(),
        EnergyConfig::helfrich(Curvature::constant(0.7), 0.0),
        EnergyConfig::helfrich(Curvature::constant(-2.0), -0.015),
        EnergyConfig::helfrich(
            Curvature::Field {
                expr: BuiltinField::LinearZ,
                offset: -0.3,
                scale: 1.1,
            },
            0.02,
        ),
        EnergyConfig::helfrich(
            Curvature::Field {
                expr: BuiltinField::Radial,
                offset: 0.0,
                scale: 0.5,
            },
            0.0,
        ),
        EnergyConfig::hawking(None),
        EnergyConfig::hawking(Some(1.3)),
    ]
}

fn dot(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.dot(y)).sum()
}

#[test]
fn analytic_gradients_match_central_differences() {
    for seed in 0..3u64 {
        let m = fixtures::random_sphere(60 + 40 * seed as usize, 0.1, seed);
        let h = 1e-6 * m.bbox_diagonal();
        for cfg in configs() {
            let g = energy_gradient(&m, &cfg).unwrap();
            let f = fd_gradient(&m, &cfg, h).unwrap();
            let diff: f64 = g.iter().zip(&f).map(|(a, b)| (a - b).norm_squared()).sum::<f64>().sqrt();
            let norm = dot(&f, &f).sqrt();
            assert!(diff < 1e-4 * norm, "seed {seed} {cfg:?}: {diff:e} vs {norm:e}");
        }
    }
}

/// Translating the mesh never changes energies with constant `c`, so the
/// gradient sums to zero; scaling changes them in a known way.
#[test]
fn translation_and_scaling_directions() {
    let m = fixtures::perturbed_sphere(2, 0.08, 11);
    let shift = vec![Vector3::new(0.3, -0.2, 0.5); m.n_vertices()];
    let radial: Vec<_> = m.positions().iter().map(|p| p.coords).collect();
    for cfg in configs() {
        let g = energy_gradient(&m, &cfg).unwrap();
        let along_shift = dot(&g, &shift);
        let fd_shift = directional_derivative(&m, &cfg, &shift, 1e-6).unwrap();
        assert!((along_shift - fd_shift).abs() < 1e-5 * (1.0 + fd_shift.abs()), "{cfg:?}");
        if cfg.c.is_constant() {
            assert!(along_shift.abs() < 1e-8, "{cfg:?}: {along_shift:e}");
        }
        let along_scale = dot(&g, &radial);
        let fd_scale = directional_derivative(&m, &cfg, &radial, 1e-6).unwrap();
        assert!((along_scale - fd_scale).abs() < 1e-5 * (1.0 + fd_scale.abs()), "{cfg:?}");
    }
    // Willmore is scale invariant
    let g = energy_gradient(&m, &EnergyConfig::willmore()).unwrap();
    assert!(dot(&g, &radial).abs() < 1e-9);
}

#[test]
fn gradient_rotates_with_the_mesh() {
    let m = fixtures::perturbed_sphere(2, 0.05, 3);
    let rot = Rotation3::from_euler_angles(0.3, -1.1, 2.0);
    let rm = m.map_positions(|p| rot * p).unwrap();
    let cfg = EnergyConfig::helfrich(Curvature::constant(-1.0), 0.01);
    let (g, gr) = (energy_gradient(&m, &cfg).unwrap(), energy_gradient(&rm, &cfg).unwrap());
    for (a, b) in g.iter().zip(&gr) {
        assert!((rot * a - b).norm() < 1e-10 * (1.0 + a.norm()));
    }
    let (e, er) = (energy(&m, &cfg).unwrap(), energy(&rm, &cfg).unwrap());
    assert!((e - er).abs() < 1e-12 * e.abs());
}

#[test]
fn fd_error_is_v_shaped_in_the_step() {
    let m = fixtures::random_sphere(80, 0.1, 11);
    let cfg = EnergyConfig::helfrich(Curvature::constant(-1.0), 0.01);
    let g = energy_gradient(&m, &cfg).unwrap();
    let norm = dot(&g, &g).sqrt();
    let errors: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9]
        .iter()
        .map(|s| {
            let f = fd_gradient(&m, &cfg, s * m.bbox_diagonal()).unwrap();
            g.iter().zip(&f).map(|(a, b)| (a - b).norm_squared()).sum::<f64>().sqrt() / norm
        })
        .collect();
    let best = (0..errors.len()).min_by(|&i, &j| errors[i].total_cmp(&errors[j])).unwrap();
    assert!(best > 0 && best < errors.len() - 1, "{errors:?}");
    assert!(errors[..=best].windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(errors[best..].windows(2).all(|w| w[1] > w[0]), "{errors:?}");
    // at 1e-4 of the box the stencil can cross an angle of this mesh through
    // 90 degrees, where the mixed area changes formula and has a kink
    assert!(errors[3] < 1e-4 && errors[4] < 1e-4, "{errors:?}");
}
