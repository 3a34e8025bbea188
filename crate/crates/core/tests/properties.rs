use std::f64::consts::PI;

use nalgebra::{Point3, Rotation3, Vector3};
use proptest::prelude::*;
use willmin::energy::{
    hawking_deficit, helfrich, willmore, willmore_bound_from_helfrich, Curvature, EnergyConfig,
};
use willmin::forest::{
    dual_graph, is_bubble_forest, random_haunted_tree, reduce_to_irreducible, regular_components,
};
use willmin::geometry::{
    enclosed_volume, fixtures, gauss_bonnet_defect, total_area, vertex_areas,
};
use willmin::TriMesh;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn mesh_strategy() -> impl Strategy<Value = TriMesh> {
    (50usize..160, 0.0f64..0.15, any::<u64>()).prop_map(|(n, amp, seed)| fixtures::random_sphere(n, amp, seed))
}

fn rigid_motion() -> impl Strategy<Value = (Rotation3<f64>, Vector3<f64>)> {
    (
        -PI..PI,
        -PI..PI,
        -PI..PI,
        prop::array::uniform3(-10.0f64..10.0),
    )
        .prop_map(|(a, b, c, t)| (Rotation3::from_euler_angles(a, b, c), Vector3::from(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn area_and_volume_are_translation_invariant(m in mesh_strategy(), t in prop::array::uniform3(-50.0f64..50.0)) {
        let shift = Vector3::from(t);
        let moved = m.map_positions(|p| p + shift).unwrap();
        prop_assert!(close(total_area(&m), total_area(&moved), 1e-12));
        prop_assert!(close(enclosed_volume(&m).unwrap(), enclosed_volume(&moved).unwrap(), 1e-12));
    }

    #[test]
    fn area_and_volume_scale(m in mesh_strategy(), s in 0.1f64..10.0) {
        let scaled = m.map_positions(|p| Point3::from(p.coords * s)).unwrap();
        prop_assert!(close(total_area(&scaled), s * s * total_area(&m), 1e-12));
        prop_assert!(close(enclosed_volume(&scaled).unwrap(), s.powi(3) * enclosed_volume(&m).unwrap(), 1e-12));
    }

    #[test]
    fn vertex_areas_partition_the_area(m in mesh_strategy()) {
        let sum: f64 = vertex_areas(&m).iter().sum();
        prop_assert!(close(sum, total_area(&m), 1e-12));
    }

    #[test]
    fn discrete_gauss_bonnet_is_exact(m in mesh_strategy()) {
        prop_assert!(gauss_bonnet_defect(&m).abs() < 1e-9 * m.n_vertices() as f64);
    }

    #[test]
    fn willmore_is_invariant_under_similarities(m in mesh_strategy(), (rot, t) in rigid_motion(), s in 0.2f64..5.0) {
        let w = willmore(&m).unwrap();
        let moved = m.map_positions(|p| rot * Point3::from(p.coords * s) + t).unwrap();
        prop_assert!(close(w, willmore(&moved).unwrap(), 1e-10));
    }

    #[test]
    fn energies_agree_where_they_coincide(m in mesh_strategy()) {
        let w = willmore(&m).unwrap();
        let h = helfrich(&m, &EnergyConfig::helfrich(Curvature::constant(0.0), 0.0)).unwrap();
        let d = hawking_deficit(&m, &EnergyConfig::hawking(None)).unwrap();
        prop_assert!(close(h, 4.0 * w, 1e-12));
        prop_assert!(close(d, 4.0 * w, 1e-12));
    }

    #[test]
    fn helfrich_is_nonnegative_for_nonnegative_b(m in mesh_strategy(), c in -3.0f64..3.0, b in 0.0f64..0.5) {
        let e = helfrich(&m, &EnergyConfig::helfrich(Curvature::constant(c), b)).unwrap();
        prop_assert!(e >= 0.0);
    }

    #[test]
    fn willmore_bound_holds(m in mesh_strategy(), c in -2.0f64..2.0, b in -0.05f64..0.05) {
        let a = total_area(&m);
        prop_assume!(b >= 0.0 || b.abs() * a < 1.0);
        let h = helfrich(&m, &EnergyConfig::helfrich(Curvature::constant(c), b)).unwrap();
        let bound = willmore_bound_from_helfrich(h, c.abs(), b, a).unwrap();
        let upper = bound.upper.unwrap();
        prop_assert!(willmore(&m).unwrap() <= upper * (1.0 + 1e-12), "{} > {}", willmore(&m).unwrap(), upper);
    }

    #[test]
    fn reduction_invariants(n in 1usize..14, ghost_prob in 0.0f64..0.9, seed in any::<u64>()) {
        let f = random_haunted_tree(n, ghost_prob, seed);
        prop_assert!(is_bubble_forest(&f));
        prop_assert!(dual_graph(&f).unwrap().is_simple_tree());
        let r = reduce_to_irreducible(&f).unwrap();
        prop_assert_eq!(&reduce_to_irreducible(&r).unwrap(), &r);
        prop_assert_eq!(regular_components(&r), regular_components(&f));
        let g = dual_graph(&r).unwrap();
        prop_assert!(g.is_simple_tree());
        let ghosts = r.components.iter().filter(|c| c.ghost).count();
        prop_assert!(r.components.iter().filter(|c| c.ghost).all(|c| g.degree(c.id) >= 3));
        prop_assert!(ghosts < r.components.len() - ghosts);
    }
}

#[test]
fn refinement_improves_round_sphere_accuracy() {
    let errors: Vec<(f64, f64, f64)> = (2..=4)
        .map(|level| {
            let m = fixtures::icosphere(level, 1.0);
            let h = willmin::geometry::mean_curvature(&m).unwrap();
            (
                (total_area(&m) - 4.0 * PI).abs(),
                (enclosed_volume(&m).unwrap() - 4.0 * PI / 3.0).abs(),
                h.iter().map(|h| (h - 2.0).abs()).fold(0.0, f64::max),
            )
        })
        .collect();
    for w in errors.windows(2) {
        assert!(w[1].0 < w[0].0 && w[1].1 < w[0].1 && w[1].2 < w[0].2, "{errors:?}");
    }
}

#[test]
fn closed_meshes_of_higher_genus_satisfy_gauss_bonnet() {
    for m in [fixtures::torus(2.0, 0.7, 24, 12), fixtures::double_torus(), fixtures::subdivided_cube(3, 1.0)] {
        assert!(gauss_bonnet_defect(&m).abs() < 1e-9 * m.n_vertices() as f64);
    }
}
