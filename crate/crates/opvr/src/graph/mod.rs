//! Embedded graphs given as planarized plane multigraphs.
//!
//! A graph is stored as its planarization: `Real` nodes are the vertices of
//! the drawn graph, `Dummy` nodes are edge crossings, and *segments* are the
//! pieces of the original edges between consecutive nodes. Every original
//! edge is a chain of segments whose interior nodes are dummies. The
//! embedding itself is a rotation system: for every node, the clockwise
//! cyclic order of its incident segment ends. One directed segment occurrence
//! (a *dart*) is designated so that the face to its left is the outer face.
//!
//! Face traversal follows the usual rule for rotation systems: after
//! arriving at a node via some segment end, leave along the clockwise
//! successor of that end. With clockwise rotations this traces the face
//! lying on the left of each dart; inner faces come out counterclockwise.

mod augment;
mod config;
mod connectivity;
mod egf;

pub use augment::{crossing_augment, insert_chord_in_corner};
pub use config::{detect_configurations, pair_kind, region_of_cycle, ConfigKind, CrossingConfiguration, Region};
pub use connectivity::{is_biconnected, is_connected_abstract, is_triconnected};
pub use egf::{parse, serialize, EgfDocument};

use crate::error::{Error, Result};
use std::collections::HashMap;

pub type NodeId = usize;
pub type SegId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum NodeKind {
    Real,
    Dummy,
}

/// One end of a segment as it appears in a rotation: `end` is 0 at endpoint
/// `a` and 1 at endpoint `b`. A self-loop contributes both ends to the same
/// rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SegEnd {
    pub seg: SegId,
    pub end: u8,
}

impl SegEnd {
    pub fn new(seg: SegId, end: u8) -> Self {
        SegEnd { seg, end }
    }
}

/// A directed segment occurrence. `forward` means a→b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Dart {
    pub seg: SegId,
    pub forward: bool,
}

impl Dart {
    pub fn new(seg: SegId, forward: bool) -> Self {
        Dart { seg, forward }
    }

    pub fn rev(self) -> Dart {
        Dart { seg: self.seg, forward: !self.forward }
    }

    /// Dense index used for dart-indexed tables: 2*seg + direction bit.
    pub fn index(self) -> usize {
        2 * self.seg + usize::from(!self.forward)
    }
}

/// Rotation system plus segment endpoints; the piece of an embedded graph
/// that both the planarization and the planarized expansion share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    /// Segment endpoints (a, b).
    pub segs: Vec<(NodeId, NodeId)>,
    /// Clockwise rotation per node.
    pub rot: Vec<Vec<SegEnd>>,
    /// Position of each segment end inside its node's rotation.
    end_pos: Vec<[usize; 2]>,
}

impl Topology {
    pub fn new(segs: Vec<(NodeId, NodeId)>, rot: Vec<Vec<SegEnd>>) -> Result<Self> {
        let mut t = Topology { segs, rot, end_pos: Vec::new() };
        t.reindex()?;
        Ok(t)
    }

    pub fn node_count(&self) -> usize {
        self.rot.len()
    }

    pub fn seg_count(&self) -> usize {
        self.segs.len()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.rot[v].len()
    }

    /// Rebuild the end-position table, checking that every segment end occurs
    /// exactly once in the rotation of its endpoint.
    pub fn reindex(&mut self) -> Result<()> {
        let unset = usize::MAX;
        self.end_pos = vec![[unset; 2]; self.segs.len()];
        for (v, ends) in self.rot.iter().enumerate() {
            for (i, se) in ends.iter().enumerate() {
                let (a, b) = *self
                    .segs
                    .get(se.seg)
                    .ok_or_else(|| Error::RotationMismatch(v, format!("unknown segment {}", se.seg)))?;
                let home = if se.end == 0 { a } else { b };
                if home != v {
                    return Err(Error::RotationMismatch(
                        v,
                        format!("segment {} end {} belongs to node {}", se.seg, se.end, home),
                    ));
                }
                if self.end_pos[se.seg][se.end as usize] != unset {
                    return Err(Error::RotationMismatch(
                        v,
                        format!("segment {} end {} listed twice", se.seg, se.end),
                    ));
                }
                self.end_pos[se.seg][se.end as usize] = i;
            }
        }
        for (s, pos) in self.end_pos.iter().enumerate() {
            if pos[0] == unset || pos[1] == unset {
                let v = if pos[0] == unset { self.segs[s].0 } else { self.segs[s].1 };
                return Err(Error::RotationMismatch(v, format!("segment {s} end missing from rotation")));
            }
        }
        Ok(())
    }

    pub fn src(&self, d: Dart) -> NodeId {
        let (a, b) = self.segs[d.seg];
        if d.forward {
            a
        } else {
            b
        }
    }

    pub fn dst(&self, d: Dart) -> NodeId {
        let (a, b) = self.segs[d.seg];
        if d.forward {
            b
        } else {
            a
        }
    }

    /// The segment end at the head of the dart.
    pub fn head_end(&self, d: Dart) -> SegEnd {
        SegEnd::new(d.seg, if d.forward { 1 } else { 0 })
    }

    /// The segment end at the tail of the dart.
    pub fn tail_end(&self, d: Dart) -> SegEnd {
        SegEnd::new(d.seg, if d.forward { 0 } else { 1 })
    }

    /// Dart leaving `v` along the given segment end.
    pub fn dart_out(&self, se: SegEnd) -> Dart {
        Dart::new(se.seg, se.end == 0)
    }

    fn pos_of(&self, se: SegEnd) -> usize {
        self.end_pos[se.seg][se.end as usize]
    }

    /// Clockwise successor of a segment end in the rotation of its node.
    pub fn cw_next(&self, v: NodeId, se: SegEnd) -> SegEnd {
        let r = &self.rot[v];
        r[(self.pos_of(se) + 1) % r.len()]
    }

    pub fn cw_prev(&self, v: NodeId, se: SegEnd) -> SegEnd {
        let r = &self.rot[v];
        r[(self.pos_of(se) + r.len() - 1) % r.len()]
    }

    /// Next dart of the face walk: arrive at the head, leave along the
    /// clockwise successor of the arrival end.
    pub fn face_next(&self, d: Dart) -> Dart {
        let v = self.dst(d);
        let succ = self.cw_next(v, self.head_end(d));
        self.dart_out(succ)
    }

    /// True if the planarization (ignoring node kinds) is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for se in &self.rot[v] {
                let (a, b) = self.segs[se.seg];
                let w = if se.end == 0 { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// The face decomposition of a topology, oriented so each face walk keeps
/// the face on the left of its darts.
#[derive(Debug, Clone)]
pub struct FaceSet {
    pub walks: Vec<Vec<Dart>>,
    /// Face of every dart, indexed by `Dart::index`.
    pub of_dart: Vec<FaceId>,
    pub outer: FaceId,
}

impl FaceSet {
    pub fn trace(topo: &Topology, outer_dart: Dart) -> FaceSet {
        let m = topo.seg_count();
        let mut of_dart = vec![usize::MAX; 2 * m];
        let mut walks = Vec::new();
        for s in 0..m {
            for fwd in [true, false] {
                let d0 = Dart::new(s, fwd);
                if of_dart[d0.index()] != usize::MAX {
                    continue;
                }
                let id = walks.len();
                let mut walk = Vec::new();
                let mut d = d0;
                loop {
                    of_dart[d.index()] = id;
                    walk.push(d);
                    d = topo.face_next(d);
                    if d == d0 {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
        let outer = of_dart[outer_dart.index()];
        FaceSet { walks, of_dart, outer }
    }

    pub fn count(&self) -> usize {
        self.walks.len()
    }

    pub fn of(&self, d: Dart) -> FaceId {
        self.of_dart[d.index()]
    }

    /// Face degree: the number of node visits along the closed walk. Nodes
    /// met several times count each time.
    pub fn degree(&self, f: FaceId) -> usize {
        self.walks[f].len()
    }
}

/// An embedded (possibly non-planar) graph, stored as its planarization.
#[derive(Debug, Clone)]
pub struct EmbeddedGraph {
    pub kinds: Vec<NodeKind>,
    pub topo: Topology,
    /// Original edges as chains of segment ids.
    pub edges: Vec<Vec<SegId>>,
    pub outer_dart: Dart,
    /// Owner edge of every segment.
    pub seg_edge: Vec<EdgeId>,
    faces: FaceSet,
}

/// A single original-edge crossing: the two edges and the dummy where they
/// cross.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingPair {
    pub edge_a: EdgeId,
    pub edge_b: EdgeId,
    pub dummy: NodeId,
}

impl EmbeddedGraph {
    /// Build and validate a graph from its raw parts. This is the single
    /// entry point used by both the EGF parser and the generators.
    pub fn build(
        kinds: Vec<NodeKind>,
        segs: Vec<(NodeId, NodeId)>,
        rot: Vec<Vec<SegEnd>>,
        edges: Vec<Vec<SegId>>,
        outer_dart: Dart,
    ) -> Result<Self> {
        if kinds.len() != rot.len() {
            return Err(Error::MalformedDocument(format!(
                "{} node kinds but {} rotations",
                kinds.len(),
                rot.len()
            )));
        }
        for &(a, b) in &segs {
            if a >= kinds.len() || b >= kinds.len() {
                return Err(Error::MalformedDocument(format!("segment endpoint out of range ({a}, {b})")));
            }
        }
        if outer_dart.seg >= segs.len() {
            return Err(Error::MalformedDocument("outer dart names an unknown segment".into()));
        }
        let topo = Topology::new(segs, rot)?;

        for (v, kind) in kinds.iter().enumerate() {
            if *kind == NodeKind::Dummy && topo.degree(v) != 4 {
                return Err(Error::InvalidDummyDegree(v, topo.degree(v)));
            }
        }

        // Chains partition the segments and are simple paths with real
        // endpoints and dummy interiors.
        let mut seg_edge = vec![usize::MAX; topo.seg_count()];
        for (e, chain) in edges.iter().enumerate() {
            if chain.is_empty() {
                return Err(Error::BrokenChain(e, "empty chain".into()));
            }
            for &s in chain {
                if s >= topo.seg_count() {
                    return Err(Error::BrokenChain(e, format!("unknown segment {s}")));
                }
                if seg_edge[s] != usize::MAX {
                    return Err(Error::BrokenChain(e, format!("segment {s} already used by edge {}", seg_edge[s])));
                }
                seg_edge[s] = e;
            }
            chain_nodes(&topo, chain).map_err(|msg| Error::BrokenChain(e, msg))?;
            let nodes = chain_nodes(&topo, chain).unwrap();
            let (first, last) = (*nodes.first().unwrap(), *nodes.last().unwrap());
            if kinds[first] != NodeKind::Real || kinds[last] != NodeKind::Real {
                return Err(Error::BrokenChain(e, "chain endpoint is a dummy".into()));
            }
            for &v in &nodes[1..nodes.len() - 1] {
                if kinds[v] != NodeKind::Dummy {
                    return Err(Error::BrokenChain(e, format!("interior node {v} is real")));
                }
            }
            let mut sorted = nodes.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != nodes.len() {
                return Err(Error::BrokenChain(e, "chain revisits a node".into()));
            }
        }
        for (s, &owner) in seg_edge.iter().enumerate() {
            if owner == usize::MAX {
                return Err(Error::MalformedDocument(format!("segment {s} belongs to no edge")));
            }
        }

        if !topo.is_connected() {
            return Err(Error::DisconnectedPlanarization);
        }

        let faces = FaceSet::trace(&topo, outer_dart);
        let (n, m, f) = (topo.node_count(), topo.seg_count(), faces.count());
        if n + f != m + 2 {
            return Err(Error::MalformedDocument(format!(
                "rotation system is not a planar embedding: V={n} E={m} F={f}"
            )));
        }

        Ok(EmbeddedGraph { kinds, topo, edges, outer_dart, seg_edge, faces })
    }

    /// Validate simplicity of the drawn graph: no self-loop or parallel
    /// original edges, and no two segments with the same endpoints (the
    /// planarization of a simple drawing has none).
    pub fn check_simple(&self) -> Result<()> {
        let mut seen_edges: HashMap<(NodeId, NodeId), EdgeId> = HashMap::new();
        for e in 0..self.edges.len() {
            let (u, v) = self.edge_ends(e);
            if u == v {
                return Err(Error::MalformedDocument(format!("edge {e} is a self-loop")));
            }
            let key = (u.min(v), u.max(v));
            if let Some(prev) = seen_edges.insert(key, e) {
                return Err(Error::MalformedDocument(format!("edges {prev} and {e} are parallel")));
            }
        }
        let mut seen_segs: HashMap<(NodeId, NodeId), SegId> = HashMap::new();
        for (s, &(a, b)) in self.topo.segs.iter().enumerate() {
            if a == b {
                return Err(Error::MalformedDocument(format!("segment {s} is a self-loop")));
            }
            let key = (a.min(b), a.max(b));
            if let Some(prev) = seen_segs.insert(key, s) {
                return Err(Error::MalformedDocument(format!(
                    "segments {prev} and {s} are parallel; the drawing is not simple"
                )));
            }
        }
        Ok(())
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn refresh_faces(&mut self) {
        self.faces = FaceSet::trace(&self.topo, self.outer_dart);
    }

    pub fn node_count(&self) -> usize {
        self.topo.node_count()
    }

    pub fn real_count(&self) -> usize {
        self.kinds.iter().filter(|k| **k == NodeKind::Real).count()
    }

    pub fn dummy_count(&self) -> usize {
        self.kinds.iter().filter(|k| **k == NodeKind::Dummy).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_real(&self, v: NodeId) -> bool {
        self.kinds[v] == NodeKind::Real
    }

    /// Node sequence of an edge chain, endpoints included.
    pub fn edge_nodes(&self, e: EdgeId) -> Vec<NodeId> {
        chain_nodes(&self.topo, &self.edges[e]).expect("validated chain")
    }

    /// Real endpoints (u, v) of an original edge.
    pub fn edge_ends(&self, e: EdgeId) -> (NodeId, NodeId) {
        let nodes = self.edge_nodes(e);
        (*nodes.first().unwrap(), *nodes.last().unwrap())
    }

    /// The dart sequence of an edge chain oriented from `from`.
    pub fn edge_darts_from(&self, e: EdgeId, from: NodeId) -> Vec<Dart> {
        let nodes = self.edge_nodes(e);
        let chain = &self.edges[e];
        let mut darts: Vec<Dart> = chain
            .iter()
            .zip(nodes.windows(2))
            .map(|(&s, w)| {
                let (a, _) = self.topo.segs[s];
                Dart::new(s, a == w[0])
            })
            .collect();
        if nodes[0] == from {
            darts
        } else {
            darts.reverse();
            for d in &mut darts {
                *d = d.rev();
            }
            darts
        }
    }

    /// Look up an original edge by its real endpoints.
    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        (0..self.edges.len()).find(|&e| {
            let (a, b) = self.edge_ends(e);
            (a, b) == (u, v) || (a, b) == (v, u)
        })
    }

    /// Interior dummies of an edge.
    pub fn edge_dummies(&self, e: EdgeId) -> Vec<NodeId> {
        let nodes = self.edge_nodes(e);
        nodes[1..nodes.len() - 1].to_vec()
    }

    /// One crossing pair per dummy node. Checks that the two edges through
    /// each dummy alternate around it.
    pub fn crossing_pairs(&self) -> Result<Vec<CrossingPair>> {
        let mut pairs = Vec::new();
        for v in 0..self.node_count() {
            if self.kinds[v] != NodeKind::Dummy {
                continue;
            }
            let owners: Vec<EdgeId> = self.topo.rot[v].iter().map(|se| self.seg_edge[se.seg]).collect();
            debug_assert_eq!(owners.len(), 4);
            if owners[0] != owners[2] || owners[1] != owners[3] || owners[0] == owners[1] {
                return Err(Error::NonAlternatingCrossing(v));
            }
            let (a, b) = (owners[0].min(owners[1]), owners[0].max(owners[1]));
            pairs.push(CrossingPair { edge_a: a, edge_b: b, dummy: v });
        }
        Ok(pairs)
    }

    /// Every edge crossed at most once?
    pub fn is_one_plane(&self) -> bool {
        self.edges.iter().all(|chain| chain.len() <= 2)
    }

    pub fn require_one_plane(&self) -> Result<()> {
        for (e, chain) in self.edges.iter().enumerate() {
            if chain.len() > 2 {
                return Err(Error::NotOnePlane(e, chain.len() - 1));
            }
        }
        Ok(())
    }

    /// Walking from dummy `p` away through segment end `se`, the real
    /// endpoint reached along the owning chain.
    pub fn endpoint_toward(&self, p: NodeId, se: SegEnd) -> NodeId {
        let mut prev = p;
        let mut seg = se.seg;
        loop {
            let (a, b) = self.topo.segs[seg];
            let next = if a == prev { b } else { a };
            if self.kinds[next] == NodeKind::Real {
                return next;
            }
            // continue along the chain of the same edge through `next`
            let e = self.seg_edge[seg];
            let chain = &self.edges[e];
            let pos = chain.iter().position(|&s| s == seg).unwrap();
            let nodes = self.edge_nodes(e);
            seg = if nodes[pos] == prev { chain[pos + 1] } else { chain[pos - 1] };
            prev = next;
        }
    }
}

/// Node sequence along a chain of segments, or a message describing why the
/// chain is not a path.
fn chain_nodes(topo: &Topology, chain: &[SegId]) -> std::result::Result<Vec<NodeId>, String> {
    let (a0, b0) = topo.segs[chain[0]];
    if chain.len() == 1 {
        return Ok(vec![a0, b0]);
    }
    // start node: the endpoint of chain[0] not shared with chain[1]
    let (a1, b1) = topo.segs[chain[1]];
    let start = if b0 == a1 || b0 == b1 {
        a0
    } else if a0 == a1 || a0 == b1 {
        b0
    } else {
        return Err("first two segments do not share a node".into());
    };
    let mut nodes = vec![start];
    let mut cur = start;
    for &s in chain {
        let (a, b) = topo.segs[s];
        let next = if a == cur {
            b
        } else if b == cur {
            a
        } else {
            return Err(format!("segment {s} does not continue the chain at node {cur}"));
        };
        nodes.push(next);
        cur = next;
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::egf::EgfDocument;

    /// K2: two real nodes joined by one segment.
    pub fn k2() -> EmbeddedGraph {
        EmbeddedGraph::build(
            vec![NodeKind::Real, NodeKind::Real],
            vec![(0, 1)],
            vec![vec![SegEnd::new(0, 0)], vec![SegEnd::new(0, 1)]],
            vec![vec![0]],
            Dart::new(0, true),
        )
        .unwrap()
    }

    #[test]
    fn k2_has_one_face_of_degree_two() {
        let g = k2();
        assert_eq!(g.faces().count(), 1);
        assert_eq!(g.faces().degree(0), 2);
        assert_eq!(g.faces().outer, 0);
    }

    #[test]
    fn triangle_has_two_faces_of_degree_three() {
        let g = crate::fixtures::triangle();
        assert_eq!(g.faces().count(), 2);
        assert_eq!(g.faces().degree(0), 3);
        assert_eq!(g.faces().degree(1), 3);
    }

    #[test]
    fn face_degree_counts_repeated_visits() {
        // Two pentagons sharing a single cut vertex: the inner faces have
        // degree 5, the outer face walks the cut vertex twice for degree 10.
        let g = crate::fixtures::two_pentagons_cut_vertex();
        let mut degs: Vec<usize> = (0..g.faces().count()).map(|f| g.faces().degree(f)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![5, 5, 10]);
        assert_eq!(g.faces().degree(g.faces().outer), 10);
        // the cut vertex appears twice on the outer walk
        let outer = &g.faces().walks[g.faces().outer];
        let visits = outer.iter().filter(|d| g.topo.src(**d) == 0).count();
        assert_eq!(visits, 2);
    }

    #[test]
    fn dummy_of_degree_three_is_rejected() {
        // one edge crossing... built by hand with a degree-3 "dummy"
        let err = EmbeddedGraph::build(
            vec![NodeKind::Real, NodeKind::Real, NodeKind::Real, NodeKind::Dummy],
            vec![(0, 3), (3, 1), (3, 2)],
            vec![
                vec![SegEnd::new(0, 0)],
                vec![SegEnd::new(1, 1)],
                vec![SegEnd::new(2, 1)],
                vec![SegEnd::new(0, 1), SegEnd::new(1, 0), SegEnd::new(2, 0)],
            ],
            vec![vec![0, 1], vec![2]],
            Dart::new(0, true),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDummyDegree(3, 3)));
    }

    #[test]
    fn broken_chain_with_real_interior_is_rejected() {
        let err = EmbeddedGraph::build(
            vec![NodeKind::Real, NodeKind::Real, NodeKind::Real],
            vec![(0, 1), (1, 2)],
            vec![
                vec![SegEnd::new(0, 0)],
                vec![SegEnd::new(0, 1), SegEnd::new(1, 0)],
                vec![SegEnd::new(1, 1)],
            ],
            vec![vec![0, 1]],
            Dart::new(0, true),
        )
        .unwrap_err();
        assert!(matches!(err, Error::BrokenChain(0, _)));
    }

    #[test]
    fn face_degree_sum_is_twice_segment_count() {
        for g in [crate::fixtures::k4_with_crossing(), crate::fixtures::star_of_david()] {
            let total: usize = (0..g.faces().count()).map(|f| g.faces().degree(f)).sum();
            assert_eq!(total, 2 * g.topo.seg_count());
        }
    }

    #[test]
    fn crossing_pairs_on_plane_graph_is_empty() {
        let g = crate::fixtures::triangle();
        assert!(g.crossing_pairs().unwrap().is_empty());
        assert!(g.is_one_plane());
    }

    #[test]
    fn k4_with_crossing_has_one_pair() {
        let g = crate::fixtures::k4_with_crossing();
        let pairs = g.crossing_pairs().unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(g.is_one_plane());
    }

    #[test]
    fn star_of_david_is_not_one_plane() {
        let g = crate::fixtures::star_of_david();
        let pairs = g.crossing_pairs().unwrap();
        assert_eq!(pairs.len(), 6);
        assert!(!g.is_one_plane());
        assert!(g.require_one_plane().is_err());
    }

    #[test]
    fn egf_round_trip_is_identity() {
        for g in [
            k2(),
            crate::fixtures::triangle(),
            crate::fixtures::k4_with_crossing(),
            crate::fixtures::star_of_david(),
            crate::fixtures::two_pentagons_cut_vertex(),
        ] {
            let text = EgfDocument::from_graph(&g).to_json();
            let h = EgfDocument::parse_str(&text).unwrap().into_graph_unchecked().unwrap();
            // rotations may start anywhere; the canonical form is the identity
            assert_eq!(text, EgfDocument::from_graph(&h).to_json());
            assert_eq!(g.kinds, h.kinds);
            assert_eq!(g.edges, h.edges);
            assert_eq!(g.faces().count(), h.faces().count());
        }
    }
}
