//! The planarized expansion and its simplified dual.
//!
//! Every real vertex is replaced by an expansion cycle of one vertex per
//! incident segment end, keeping the circular order; crossings stay as
//! degree-4 dummy vertices. A degree-1 vertex expands to a self-loop and a
//! degree-2 vertex to a pair of parallel edges, so the expansion is a plane
//! multigraph. The simplified dual keeps one dual edge per expansion edge;
//! its connected components drive the representability test.


use crate::graph::{Dart, EmbeddedGraph, FaceId, FaceSet, NodeId, SegEnd, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XNode {
    /// Expansion vertex owned by a real node of the source graph.
    Expansion(NodeId),
    /// Crossing dummy carried over from the source graph.
    Dummy(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XSeg {
    /// Expansion-cycle edge owned by a real node.
    Expansion(NodeId),
    /// Piece of an original edge.
    Real(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XFace {
    ExpansionCycle(NodeId),
    Ordinary,
}

/// The planarized expansion: a plane multigraph with tagged nodes, segments
/// and faces.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub topo: Topology,
    pub node_tags: Vec<XNode>,
    pub seg_tags: Vec<XSeg>,
    pub outer_dart: Dart,
    pub faces: FaceSet,
    pub face_tags: Vec<XFace>,
    /// Expansion vertex carrying each segment end of the source graph,
    /// indexed like the source rotations.
    pub port: Vec<Vec<NodeId>>,
    /// Cycle face of each real source node.
    pub cycle_face: Vec<Option<FaceId>>,
}

impl Expansion {
    pub fn expansion_vertex_count(&self) -> usize {
        self.node_tags.iter().filter(|t| matches!(t, XNode::Expansion(_))).count()
    }

    pub fn dummy_vertex_count(&self) -> usize {
        self.node_tags.iter().filter(|t| matches!(t, XNode::Dummy(_))).count()
    }

    pub fn is_cycle_face(&self, f: FaceId) -> bool {
        matches!(self.face_tags[f], XFace::ExpansionCycle(_))
    }

    /// Face visited only by dummy vertices?
    pub fn all_dummy_face(&self, f: FaceId) -> bool {
        self.faces.walks[f]
            .iter()
            .all(|d| matches!(self.node_tags[self.topo.src(*d)], XNode::Dummy(_)))
    }
}

/// Replace each real vertex by its expansion cycle.
pub fn expand(g: &EmbeddedGraph) -> Expansion {
    let mut node_tags = Vec::new();
    let mut rot: Vec<Vec<SegEnd>> = Vec::new();
    let mut port = vec![Vec::new(); g.node_count()];
    // real segments keep their ids; expansion edges are appended after them
    let mut segs: Vec<(NodeId, NodeId)> = vec![(usize::MAX, usize::MAX); g.topo.seg_count()];
    let mut seg_tags: Vec<XSeg> = g.seg_edge.iter().map(|&e| XSeg::Real(e)).collect();

    for v in 0..g.node_count() {
        if !g.is_real(v) {
            continue;
        }
        let d = g.topo.degree(v);
        // start the cycle at the lexicographically smallest incident end
        let rot_v = &g.topo.rot[v];
        let start = (0..d)
            .min_by_key(|&i| (rot_v[i].seg, rot_v[i].end))
            .expect("positive degree");
        let base = rot.len();
        port[v] = vec![0; d];
        for j in 0..d {
            let se = rot_v[(start + j) % d];
            let x = base + j;
            node_tags.push(XNode::Expansion(v));
            port[v][(start + j) % d] = x;
            // endpoint of the real segment moves to this expansion vertex
            let (a, b) = g.topo.segs[se.seg];
            debug_assert_eq!(if se.end == 0 { a } else { b }, v);
            if se.end == 0 {
                segs[se.seg].0 = x;
            } else {
                segs[se.seg].1 = x;
            }
            rot.push(Vec::new());
        }
        // expansion edges j: x_j -> x_{j+1 mod d}
        let first_edge = segs.len();
        for j in 0..d {
            segs.push((base + j, base + (j + 1) % d));
            seg_tags.push(XSeg::Expansion(v));
        }
        // clockwise rotation at x_j: [real end, edge j (tail), edge j-1 (head)]
        for j in 0..d {
            let se = rot_v[(start + j) % d];
            let real_end = SegEnd::new(se.seg, se.end);
            let e_j = SegEnd::new(first_edge + j, 0);
            let e_prev = SegEnd::new(first_edge + (j + d - 1) % d, 1);
            rot[base + j] = vec![real_end, e_j, e_prev];
        }
    }

    // dummies keep their rotations verbatim
    for v in 0..g.node_count() {
        if g.is_real(v) {
            continue;
        }
        let x = rot.len();
        node_tags.push(XNode::Dummy(v));
        for se in &g.topo.rot[v] {
            let (a, b) = g.topo.segs[se.seg];
            debug_assert_eq!(if se.end == 0 { a } else { b }, v);
            if se.end == 0 {
                segs[se.seg].0 = x;
            } else {
                segs[se.seg].1 = x;
            }
        }
        rot.push(g.topo.rot[v].clone());
    }

    let topo = Topology::new(segs, rot).expect("expansion is consistent");
    let outer_dart = g.outer_dart;
    let faces = FaceSet::trace(&topo, outer_dart);

    // tag expansion-cycle faces: the interior walk uses the reversed cycle
    // edges, e.g. the dart x_1 -> x_0 of edge 0
    let mut face_tags = vec![XFace::Ordinary; faces.count()];
    let mut cycle_face = vec![None; g.node_count()];
    for (s, tag) in seg_tags.iter().enumerate() {
        if let XSeg::Expansion(owner) = tag {
            let f = faces.of(Dart::new(s, false));
            if cycle_face[*owner].is_none() {
                face_tags[f] = XFace::ExpansionCycle(*owner);
                cycle_face[*owner] = Some(f);
            }
            debug_assert_eq!(cycle_face[*owner], Some(f));
        }
    }
    debug_assert_eq!(face_tags[faces.outer], XFace::Ordinary, "outer face is never a cycle face");

    Expansion { topo, node_tags, seg_tags, outer_dart, faces, face_tags, port, cycle_face }
}

/// One component of the simplified dual together with the quantities that
/// appear in the representability condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualComponent {
    pub faces: Vec<FaceId>,
    pub expansion_faces: usize,
    pub contains_outer: bool,
    /// Total degree of the non-expansion faces.
    pub nonexpansion_degree_sum: usize,
}

#[derive(Debug, Clone)]
pub struct SimplifiedDual {
    pub components: Vec<DualComponent>,
    /// Dual edges, one per expansion edge: (left face, right face).
    pub edges: Vec<(FaceId, FaceId)>,
}

/// Dual of the expansion with the dual edges of real segments removed.
pub fn simplified_dual(x: &Expansion) -> SimplifiedDual {
    let nf = x.faces.count();
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(p: &mut Vec<usize>, v: usize) -> usize {
        if p[v] != v {
            let r = find(p, p[v]);
            p[v] = r;
        }
        p[v]
    }
    let mut edges = Vec::new();
    for (s, tag) in x.seg_tags.iter().enumerate() {
        if matches!(tag, XSeg::Expansion(_)) {
            let fl = x.faces.of(Dart::new(s, true));
            let fr = x.faces.of(Dart::new(s, false));
            edges.push((fl, fr));
            let (ra, rb) = (find(&mut parent, fl), find(&mut parent, fr));
            parent[ra] = rb;
        }
    }
    let mut comp_of = vec![usize::MAX; nf];
    let mut components: Vec<DualComponent> = Vec::new();
    for f in 0..nf {
        let root = find(&mut parent, f);
        if comp_of[root] == usize::MAX {
            comp_of[root] = components.len();
            components.push(DualComponent {
                faces: Vec::new(),
                expansion_faces: 0,
                contains_outer: false,
                nonexpansion_degree_sum: 0,
            });
        }
        let c = &mut components[comp_of[root]];
        c.faces.push(f);
        if x.is_cycle_face(f) {
            c.expansion_faces += 1;
        } else {
            c.nonexpansion_degree_sum += x.faces.degree(f);
        }
        if f == x.faces.outer {
            c.contains_outer = true;
        }
    }
    SimplifiedDual { components, edges }
}

/// Verdict of the representability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admits {
    Yes,
    /// Violating components in face-id order, each with both sides of the
    /// defining equation; the first one is the canonical witness.
    No { violations: Vec<(DualComponent, usize, i64)> },
}

impl Admits {
    pub fn is_yes(&self) -> bool {
        matches!(self, Admits::Yes)
    }

    pub fn witness(&self) -> Option<&(DualComponent, usize, i64)> {
        match self {
            Admits::Yes => None,
            Admits::No { violations } => violations.first(),
        }
    }
}

/// Does the embedded graph admit an embedding-preserving ortho-polygon
/// visibility representation? Every component of the simplified dual must
/// balance: the non-expansion face degrees sum to four per face, less eight
/// when the component holds the outer face.
pub fn admits_opvr(g: &EmbeddedGraph) -> Admits {
    let x = expand(g);
    let dual = simplified_dual(&x);
    let mut violations = Vec::new();
    for c in &dual.components {
        let lhs = c.nonexpansion_degree_sum;
        let rhs = 4 * c.faces.len() as i64 - if c.contains_outer { 8 } else { 0 };
        if lhs as i64 != rhs {
            violations.push((c.clone(), lhs, rhs));
        }
    }
    if violations.is_empty() {
        Admits::Yes
    } else {
        violations.sort_by_key(|(c, _, _)| c.faces.iter().copied().min());
        Admits::No { violations }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k2_expands_to_two_self_loops() {
        let g = crate::fixtures::triangle();
        let x = expand(&g);
        assert_eq!(x.expansion_vertex_count(), 2 * g.edge_count());
        assert_eq!(x.dummy_vertex_count(), 0);

        // K2: two one-vertex cycles joined by one real edge
        let g = {
            use crate::graph::{EmbeddedGraph, NodeKind};
            EmbeddedGraph::build(
                vec![NodeKind::Real, NodeKind::Real],
                vec![(0, 1)],
                vec![vec![SegEnd::new(0, 0)], vec![SegEnd::new(0, 1)]],
                vec![vec![0]],
                Dart::new(0, true),
            )
            .unwrap()
        };
        let x = expand(&g);
        assert_eq!(x.expansion_vertex_count(), 2);
        assert_eq!(x.dummy_vertex_count(), 0);
        // each expansion cycle of a degree-1 vertex is a self-loop
        let loops = x
            .topo
            .segs
            .iter()
            .enumerate()
            .filter(|(s, (a, b))| a == b && matches!(x.seg_tags[*s], XSeg::Expansion(_)))
            .count();
        assert_eq!(loops, 2);
        // cycle faces have degree 1
        for v in 0..2 {
            let f = x.cycle_face[v].unwrap();
            assert_eq!(x.faces.degree(f), 1);
        }
    }

    #[test]
    fn expansion_counts_match_source() {
        for g in [fixtures::k4_with_crossing(), fixtures::k5_rvr(), fixtures::star_of_david()] {
            let x = expand(&g);
            assert_eq!(x.expansion_vertex_count(), 2 * g.edge_count());
            assert_eq!(x.dummy_vertex_count(), g.dummy_count());
            // Euler on the expansion
            let (n, m, f) = (x.topo.node_count(), x.topo.seg_count(), x.faces.count());
            assert_eq!(n + f, m + 2);
            // every expansion vertex has degree 3, dummies degree 4
            for v in 0..n {
                match x.node_tags[v] {
                    XNode::Expansion(_) => assert_eq!(x.topo.degree(v), 3),
                    XNode::Dummy(_) => assert_eq!(x.topo.degree(v), 4),
                }
            }
            // cycle of a degree-d vertex has d vertices
            for v in 0..g.node_count() {
                if g.is_real(v) {
                    let f = x.cycle_face[v].unwrap();
                    assert_eq!(x.faces.degree(f), g.topo.degree(v));
                }
            }
        }
    }

    #[test]
    fn one_plane_graphs_have_connected_dual_and_admit() {
        for g in [fixtures::k4_with_crossing(), fixtures::k5_rvr(), fixtures::k5_augmented_b()] {
            let x = expand(&g);
            let dual = simplified_dual(&x);
            assert_eq!(dual.components.len(), 1);
            assert!(admits_opvr(&g).is_yes());
            // degree-sum identity on a connected dual
            let c = &dual.components[0];
            assert_eq!(
                c.nonexpansion_degree_sum,
                2 * x.expansion_vertex_count() + 4 * x.dummy_vertex_count()
            );
        }
    }

    #[test]
    fn six_crossing_ring_is_rejected() {
        let g = fixtures::star_of_david();
        match admits_opvr(&g) {
            Admits::No { violations } => {
                // the face bounded by crossings only is an isolated dual node
                // with degree sum 6, where 4 would be needed
                let singleton = violations
                    .iter()
                    .find(|(c, _, _)| c.faces.len() == 1)
                    .expect("isolated all-crossing face is a violation");
                assert_eq!(singleton.0.expansion_faces, 0);
                assert_eq!(singleton.1, 6);
                assert_eq!(singleton.2, 4);
            }
            Admits::Yes => panic!("the all-crossing face must be rejected"),
        }
    }

    #[test]
    fn plane_graphs_admit() {
        assert!(admits_opvr(&fixtures::triangle()).is_yes());
        assert!(admits_opvr(&fixtures::two_pentagons_cut_vertex()).is_yes());
    }
}
