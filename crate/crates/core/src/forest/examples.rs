//! Small hand-built configurations used in tests and the CLI fixtures.

use super::types::{BubbleForest, Component, ComponentId, SingularPoint};

fn point(id: u64, incidences: &[(ComponentId, u64)]) -> SingularPoint {
    SingularPoint {
        id,
        incidences: incidences.to_vec(),
    }
}

pub fn single_sphere() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: vec![Component::sphere(0)],
        singular_points: vec![],
    }
}

/// A sphere with two of its points identified.
pub fn stratified_torus() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: vec![Component::sphere(0)],
        singular_points: vec![point(0, &[(0, 0), (0, 1)])],
    }
}

/// Tree of four spheres: 1 and 2 on 0, 3 on 1.
pub fn bubble_tree() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: (0..4).map(Component::sphere).collect(),
        singular_points: vec![
            point(0, &[(0, 0), (1, 0)]),
            point(1, &[(0, 1), (2, 0)]),
            point(2, &[(1, 1), (3, 0)]),
        ],
    }
}

/// Base of the given genus with `k` spheres attached at distinct points.
pub fn base_with_bubbles(genus: u32, k: u64) -> BubbleForest {
    let mut components = vec![Component {
        genus,
        ..Component::sphere(0)
    }];
    components.extend((1..=k).map(Component::sphere));
    BubbleForest {
        base: 0,
        components,
        singular_points: (1..=k).map(|i| point(i, &[(0, i), (i, 0)])).collect(),
    }
}

/// Three spheres sharing one singular point.
pub fn triple_point() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: (0..3).map(Component::sphere).collect(),
        singular_points: vec![point(0, &[(0, 0), (1, 0), (2, 0)])],
    }
}

pub fn all_ghosts() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: vec![Component::ghost(0), Component::ghost(1)],
        singular_points: vec![point(0, &[(0, 0), (1, 0)])],
    }
}

/// A ghost sphere (3) carrying the base and two bubbles.
pub fn haunted_tree() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: vec![
            Component::sphere(0),
            Component::sphere(1),
            Component::sphere(2),
            Component::ghost(3),
        ],
        singular_points: vec![
            point(0, &[(3, 0), (0, 0)]),
            point(1, &[(3, 1), (1, 0)]),
            point(2, &[(3, 2), (2, 0)]),
        ],
    }
}

/// Base with a single ghost attached.
pub fn ghost_leaf() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: vec![Component::sphere(0), Component::ghost(1)],
        singular_points: vec![point(0, &[(0, 0), (1, 0)])],
    }
}

/// Base, ghost, bubble in a chain.
pub fn ghost_chain() -> BubbleForest {
    BubbleForest {
        base: 0,
        components: vec![Component::sphere(0), Component::ghost(1), Component::sphere(2)],
        singular_points: vec![point(0, &[(0, 0), (1, 0)]), point(1, &[(1, 1), (2, 0)])],
    }
}
