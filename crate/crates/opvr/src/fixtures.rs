//! Small embedded graphs used across the test suites and the book.
//!
//! Each fixture was transcribed from a concrete drawing; rotations are the
//! clockwise order of the incident segment ends in that drawing.

use crate::graph::{Dart, EmbeddedGraph, NodeKind, SegEnd};

fn build(
    kinds: &[NodeKind],
    segs: &[(usize, usize)],
    rot: &[&[(usize, u8)]],
    edges: &[&[usize]],
    outer: (usize, bool),
) -> EmbeddedGraph {
    EmbeddedGraph::build(
        kinds.to_vec(),
        segs.to_vec(),
        rot.iter()
            .map(|ends| ends.iter().map(|&(s, e)| SegEnd::new(s, e)).collect())
            .collect(),
        edges.iter().map(|c| c.to_vec()).collect(),
        Dart::new(outer.0, outer.1),
    )
    .expect("fixture is valid")
}

use NodeKind::{Dummy, Real};

/// Plane triangle K3.
pub fn triangle() -> EmbeddedGraph {
    build(
        &[Real, Real, Real],
        &[(0, 1), (1, 2), (2, 0)],
        &[&[(0, 0), (2, 1)], &[(0, 1), (1, 0)], &[(1, 1), (2, 0)]],
        &[&[0], &[1], &[2]],
        (0, false),
    )
}

/// K4 drawn with one crossing inside its 4-cycle: a kite.
/// Nodes 0..3 on the cycle (top, right, bottom, left), dummy 4 in the center.
pub fn k4_with_crossing() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Dummy],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2), (1, 4), (4, 3)],
        &[
            &[(0, 0), (4, 0), (3, 1)],
            &[(1, 0), (6, 0), (0, 1)],
            &[(2, 0), (5, 1), (1, 1)],
            &[(3, 0), (7, 1), (2, 1)],
            &[(5, 0), (7, 0), (4, 1), (6, 1)],
        ],
        &[&[0], &[1], &[2], &[3], &[4, 5], &[6, 7]],
        (0, true),
    )
}

/// Two edges crossing once, nothing else.
pub fn bare_crossing() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Dummy],
        &[(0, 4), (4, 2), (1, 4), (4, 3)],
        &[&[(0, 0)], &[(2, 0)], &[(1, 1)], &[(3, 1)], &[(1, 0), (3, 0), (0, 1), (2, 1)]],
        &[&[0, 1], &[2, 3]],
        (0, true),
    )
}

/// Two edges crossing with one connecting edge; the other endpoints sit
/// inside the triangle formed with the crossing: a B-configuration.
/// u=0, z=1, w=2, v=3, dummy 4.
pub fn b_configuration() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Dummy],
        &[(0, 4), (4, 3), (2, 4), (4, 1), (0, 1)],
        &[
            &[(0, 0), (4, 0)],
            &[(4, 1), (3, 1)],
            &[(2, 0)],
            &[(1, 1)],
            &[(3, 0), (1, 0), (2, 1), (0, 1)],
        ],
        &[&[0, 1], &[2, 3], &[4]],
        (4, false),
    )
}

/// K4 drawn as an augmented B-configuration: all four cycle edges present,
/// the crossing outside the 4-cycle. u=0, z=1, w=2, v=3, dummy 4.
pub fn augmented_b_k4() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Dummy],
        &[(0, 4), (4, 3), (2, 4), (4, 1), (0, 1), (0, 2), (2, 3), (3, 1)],
        &[
            &[(0, 0), (5, 0), (4, 0)],
            &[(4, 1), (7, 1), (3, 1)],
            &[(2, 0), (6, 0), (5, 1)],
            &[(7, 0), (6, 1), (1, 1)],
            &[(3, 0), (1, 0), (2, 1), (0, 1)],
        ],
        &[&[0, 1], &[2, 3], &[4], &[5], &[6], &[7]],
        (4, false),
    )
}

/// K5 embedded with one crossing forming a kite; admits a rectangle
/// visibility representation. Vertices 0..3 on the kite cycle, 4 outside,
/// dummy 5.
pub fn k5_rvr() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Real, Dummy],
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (0, 5),
            (5, 2),
            (1, 5),
            (5, 3),
            (4, 0),
            (4, 1),
            (4, 2),
            (4, 3),
        ],
        &[
            &[(0, 0), (4, 0), (3, 1), (8, 1)],
            &[(1, 0), (6, 0), (0, 1), (9, 1)],
            &[(10, 1), (2, 0), (5, 1), (1, 1)],
            &[(2, 1), (11, 1), (3, 0), (7, 1)],
            &[(10, 0), (9, 0), (8, 0), (11, 0)],
            &[(5, 0), (7, 0), (4, 1), (6, 1)],
        ],
        &[&[0], &[1], &[2], &[3], &[4, 5], &[6, 7], &[8], &[9], &[10], &[11]],
        (2, true),
    )
}

/// K5 embedded with one crossing forming an augmented B-configuration; it
/// admits no rectangle visibility representation but a representation with
/// one reflex corner per polygon exists. u=0, z=1, w=2, v=3, dummy 4,
/// center vertex 5.
pub fn k5_augmented_b() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Dummy, Real],
        &[
            (0, 4),
            (4, 3),
            (2, 4),
            (4, 1),
            (0, 1),
            (0, 2),
            (2, 3),
            (3, 1),
            (5, 0),
            (5, 1),
            (5, 2),
            (5, 3),
        ],
        &[
            &[(0, 0), (5, 0), (8, 1), (4, 0)],
            &[(4, 1), (9, 1), (7, 1), (3, 1)],
            &[(10, 1), (5, 1), (2, 0), (6, 0)],
            &[(7, 0), (11, 1), (6, 1), (1, 1)],
            &[(3, 0), (1, 0), (2, 1), (0, 1)],
            &[(9, 0), (8, 0), (10, 0), (11, 0)],
        ],
        &[&[0, 1], &[2, 3], &[4], &[5], &[6], &[7], &[8], &[9], &[10], &[11]],
        (4, false),
    )
}

/// Two triangles drawn as a six-pointed star: six crossings, every edge
/// crossed twice, and a central face bounded by dummies only. This embedded
/// graph is biplanar but admits no embedding-preserving representation.
pub fn star_of_david() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Real, Real, Dummy, Dummy, Dummy, Dummy, Dummy, Dummy],
        &[
            (0, 6),
            (6, 7),
            (7, 1), // edge (A,B)
            (1, 8),
            (8, 9),
            (9, 2), // edge (B,C)
            (2, 10),
            (10, 11),
            (11, 0), // edge (C,A)
            (3, 8),
            (8, 7),
            (7, 4), // edge (D,E)
            (4, 6),
            (6, 11),
            (11, 5), // edge (E,F)
            (5, 10),
            (10, 9),
            (9, 3), // edge (F,D)
        ],
        &[
            &[(8, 1), (0, 0)],
            &[(2, 1), (3, 0)],
            &[(5, 1), (6, 0)],
            &[(9, 0), (17, 1)],
            &[(11, 1), (12, 0)],
            &[(15, 0), (14, 1)],
            &[(1, 0), (12, 1), (0, 1), (13, 0)],
            &[(10, 1), (2, 0), (11, 0), (1, 1)],
            &[(9, 1), (3, 1), (10, 0), (4, 0)],
            &[(17, 0), (4, 1), (16, 1), (5, 0)],
            &[(6, 1), (16, 0), (7, 0), (15, 1)],
            &[(7, 1), (13, 1), (8, 0), (14, 0)],
        ],
        &[
            &[0, 1, 2],
            &[3, 4, 5],
            &[6, 7, 8],
            &[9, 10, 11],
            &[12, 13, 14],
            &[15, 16, 17],
        ],
        (8, false),
    )
}

/// Two pentagons sharing a cut vertex: inner faces of degree 5, outer face
/// of degree 10 that visits the cut vertex twice.
pub fn two_pentagons_cut_vertex() -> EmbeddedGraph {
    build(
        &[Real, Real, Real, Real, Real, Real, Real, Real, Real],
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 8), (8, 0)],
        &[
            &[(9, 1), (4, 1), (0, 0), (5, 0)],
            &[(0, 1), (1, 0)],
            &[(2, 0), (1, 1)],
            &[(3, 0), (2, 1)],
            &[(3, 1), (4, 0)],
            &[(6, 0), (5, 1)],
            &[(7, 0), (6, 1)],
            &[(8, 0), (7, 1)],
            &[(9, 0), (8, 1)],
        ],
        &[&[0], &[1], &[2], &[3], &[4], &[5], &[6], &[7], &[8], &[9]],
        (0, false),
    )
}
