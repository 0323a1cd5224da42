//! Hand-encoded worked examples used as spot checks by the suite and tests.

use crate::graphs::Graph;

/// 17-vertex graph whose reduction takes two full rounds.
/// Vertices: 0,1,2 inner triangle; 3,4 hub pair; 5; 6 (carrying the pendant
/// triangle 15,16); 7 with leaves 8,9; 10; 11 with leaves 12,13,14.
pub fn seventeen_vertex_example() -> Graph {
    Graph::from_edges(
        17,
        &[
            (0, 1),
            (1, 2),
            (2, 0),
            (0, 3),
            (3, 5),
            (0, 4),
            (4, 5),
            (6, 7),
            (7, 0),
            (1, 3),
            (3, 4),
            (1, 4),
            (7, 1),
            (2, 3),
            (2, 4),
            (7, 2),
            (5, 7),
            (3, 6),
            (3, 10),
            (4, 6),
            (4, 10),
            (5, 11),
            (6, 15),
            (6, 16),
            (15, 16),
            (11, 7),
            (8, 7),
            (7, 9),
            (12, 11),
            (11, 13),
            (14, 11),
        ],
    )
}

/// The 8-vertex stage after one round of reducing [`seventeen_vertex_example`].
pub fn eight_vertex_middle() -> Graph {
    Graph::from_edges(
        8,
        &[
            (0, 1),
            (1, 2),
            (3, 4),
            (4, 0),
            (2, 4),
            (1, 3),
            (1, 5),
            (2, 6),
            (3, 7),
            (6, 4),
        ],
    )
}

/// The 6-vertex reduction of [`seventeen_vertex_example`].
pub fn six_vertex_reduced() -> Graph {
    Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (3, 4), (4, 0), (2, 4), (1, 3), (2, 5), (5, 4)],
    )
}

/// 15-vertex graph whose co-mating graph is a 4-path with one extra branch.
/// Vertices 0..=6 are the spine (0-1-2-3 path body), 7,8 a sibling pair,
/// 9..=14 leaves.
pub fn fifteen_vertex_patch_example() -> Graph {
    // 0:X1 1:X2 2:X3 3:X4 4:X5 5:X6 6:X7 7:Z1 8:Z2
    // 9:Y21(on 1) 10:Y41 11:Y42(on 3) 12:Y61(on 5) 13:Y71 14:Y72(on 6)
    Graph::from_edges(
        15,
        &[
            (0, 1),
            (1, 2),
            (1, 3),
            (3, 2),
            (3, 4),
            (4, 2),
            (1, 9),
            (3, 10),
            (3, 11),
            (5, 12),
            (6, 13),
            (6, 14),
            (1, 7),
            (1, 8),
            (1, 5),
            (1, 6),
            (7, 8),
            (7, 5),
            (7, 6),
            (8, 5),
            (8, 6),
            (6, 5),
        ],
    )
}

/// The two six-vertex graphs with sibling number 1 and tuft number 2.
pub fn six_vertex_s1_t2() -> [Graph; 2] {
    [
        Graph::from_edges(6, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 3), (3, 5), (1, 2)]),
        Graph::from_edges(6, &[(2, 0), (0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]),
    ]
}

/// The five connected graphs on 5 vertices with neither siblings nor leaves.
pub fn five_vertex_reduced_graphs() -> [Graph; 5] {
    [
        // 4-cycle plus a center joined to two opposite corners.
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)]),
        Graph::cycle(5),
        // Wheel on 4 spokes.
        Graph::from_edges(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2), (1, 4), (4, 3)],
        ),
        // 5-cycle with one chord.
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 2)]),
        // 5-cycle with two chords at one vertex.
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 2), (4, 1)]),
    ]
}
