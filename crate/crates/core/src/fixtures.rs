//! Named graphs used throughout the documentation, tests and CLI examples.

use crate::dag::{path_plus_arcs, Dag, DegreeProfile};

/// The truncated tetrahedron drawn on a Hamiltonian path; 21 source-to-sink paths.
pub fn truncated_tetrahedron() -> Dag {
    let arcs = [(1, 3), (1, 12), (2, 8), (4, 6), (5, 11), (7, 9), (10, 12)];
    Dag::new(12, path_plus_arcs(12, &arcs), DegreeProfile::ThreeRegular).unwrap()
}

/// The wedge of a heptagon over an edge on 12 vertices; 22 source-to-sink paths.
pub fn wedge12() -> Dag {
    let arcs = [(1, 3), (1, 12), (2, 5), (4, 7), (6, 9), (8, 11), (10, 12)];
    Dag::new(12, path_plus_arcs(12, &arcs), DegreeProfile::ThreeRegular).unwrap()
}

/// A 3-regular graph whose numbering admits no Hamiltonian path.
pub fn six_vertex() -> Dag {
    let edges = vec![
        (1, 2),
        (1, 2),
        (1, 3),
        (2, 4),
        (3, 4),
        (3, 5),
        (4, 6),
        (5, 6),
        (5, 6),
    ];
    Dag::new(6, edges, DegreeProfile::ThreeRegular).unwrap()
}
