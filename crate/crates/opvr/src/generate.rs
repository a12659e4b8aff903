//! Instance generators: random 1-plane suites and the two lower-bound
//! families.
//!
//! Random instances start from a random plane triangulation (edge-flip walk
//! on a stacked triangulation) thinned while keeping 2-connectivity, grow by
//! inserting crossing configurations, and saturate until no further edge can
//! be added without breaking 1-planarity or simplicity. Everything is driven
//! by an explicit seeded generator, so equal specs give bit-equal graphs.

use crate::error::{Error, Result};
use crate::graph::{
    insert_chord_in_corner, is_biconnected, is_triconnected, Dart, EdgeId, EmbeddedGraph, NodeId,
    NodeKind, SegEnd,
};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Model {
    Gen,
    Bic,
    Tric,
    Lb3,
    Lb2,
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gen" => Ok(Model::Gen),
            "bic" => Ok(Model::Bic),
            "tric" => Ok(Model::Tric),
            "lb3" => Ok(Model::Lb3),
            "lb2" => Ok(Model::Lb2),
            other => Err(format!("unknown model {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenSpec {
    pub model: Model,
    pub n: usize,
    pub seed: u64,
    /// Base size as a fraction of n for the Bic/Tric models.
    pub k_frac: f64,
}

impl GenSpec {
    pub fn new(model: Model, n: usize, seed: u64) -> Self {
        GenSpec { model, n, seed, k_frac: 0.2 }
    }
}

/// A corner of a face: the dart of the face walk arriving at `node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Corner {
    node: NodeId,
    arrive: Dart,
}

// --- low-level surgery -----------------------------------------------------

fn insert_end_after(g: &mut EmbeddedGraph, corner: Corner, se: SegEnd) {
    let at = g.topo.head_end(corner.arrive);
    let pos = g.topo.rot[corner.node].iter().position(|x| *x == at).expect("corner end");
    g.topo.rot[corner.node].insert(pos + 1, se);
}

fn finish(g: &mut EmbeddedGraph) {
    g.seg_edge = vec![usize::MAX; g.topo.segs.len()];
    for (e, chain) in g.edges.iter().enumerate() {
        for &s in chain {
            g.seg_edge[s] = e;
        }
    }
    g.topo.reindex().expect("surgery left a consistent rotation system");
    g.refresh_faces();
    debug_assert!(validate_embedding(g));
}

fn validate_embedding(g: &EmbeddedGraph) -> bool {
    EmbeddedGraph::build(
        g.kinds.clone(),
        g.topo.segs.clone(),
        g.topo.rot.clone(),
        g.edges.clone(),
        g.outer_dart,
    )
    .is_ok()
}

/// Uncrossed edge between two corners of one face.
fn insert_uncrossed(g: &mut EmbeddedGraph, ca: Corner, cb: Corner) -> EdgeId {
    insert_chord_in_corner(
        g,
        ca.node,
        g.topo.cw_next(ca.node, g.topo.head_end(ca.arrive)),
        cb.node,
        g.topo.head_end(cb.arrive),
    )
}

/// New edge (a, b) crossing the uncrossed edge of `dart`, entering from the
/// face left of `dart` at corner `ca` and leaving into the face left of its
/// reverse at corner `cb`.
fn insert_crossing(g: &mut EmbeddedGraph, dart: Dart, ca: Corner, cb: Corner) {
    let s = dart.seg;
    let e_old = g.seg_edge[s];
    debug_assert_eq!(g.edges[e_old].len(), 1, "crossed edge must be uncrossed");
    let (x, y) = (g.topo.src(dart), g.topo.dst(dart));
    let q = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());

    // split the crossed segment: s keeps the x side, s2 = (q, y)
    let s2 = g.topo.segs.len();
    g.topo.segs.push((q, y));
    let old_end_y = SegEnd::new(s, if dart.forward { 1 } else { 0 });
    let pos = g.topo.rot[y].iter().position(|se| *se == old_end_y).unwrap();
    g.topo.rot[y][pos] = SegEnd::new(s2, 1);
    if dart.forward {
        g.topo.segs[s] = (x, q);
    } else {
        g.topo.segs[s] = (q, x);
    }
    // chain of the old edge, oriented to pass x before y
    let nodes = g.edge_nodes(e_old);
    let first = nodes[0];
    if first == x {
        g.edges[e_old] = vec![s, s2];
    } else {
        g.edges[e_old] = vec![s2, s];
    }

    // new edge (a, b) through q
    let (a, b) = (ca.node, cb.node);
    let s3 = g.topo.segs.len();
    g.topo.segs.push((a, q));
    let s4 = g.topo.segs.len();
    g.topo.segs.push((q, b));
    g.edges.push(vec![s3, s4]);

    // clockwise around q: toward x, toward a, toward y, toward b — `a` lies
    // left of x→y, so this alternates consistently with the drawing
    let end_x = SegEnd::new(s, u8::from(dart.forward));
    let end_y = SegEnd::new(s2, 0);
    g.topo.rot[q] = vec![end_x, SegEnd::new(s3, 1), end_y, SegEnd::new(s4, 0)];

    insert_end_after(g, ca, SegEnd::new(s3, 0));
    insert_end_after(g, cb, SegEnd::new(s4, 1));
    finish(g);
}

/// Two fresh edges crossing each other inside one face, hooked to four
/// corners in face-walk order a, c, b, d.
fn insert_crossing_pair(g: &mut EmbeddedGraph, ca: Corner, cc: Corner, cb: Corner, cd: Corner) {
    let q = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());
    let base = g.topo.segs.len();
    g.topo.segs.push((ca.node, q)); // s1
    g.topo.segs.push((q, cb.node)); // s2
    g.topo.segs.push((cc.node, q)); // s3
    g.topo.segs.push((q, cd.node)); // s4
    g.edges.push(vec![base, base + 1]);
    g.edges.push(vec![base + 2, base + 3]);
    // face-walk order a, c, b, d is counterclockwise; clockwise around the
    // crossing is a, d, b, c
    g.topo.rot[q] = vec![
        SegEnd::new(base, 1),
        SegEnd::new(base + 3, 0),
        SegEnd::new(base + 1, 0),
        SegEnd::new(base + 2, 1),
    ];
    insert_end_after(g, ca, SegEnd::new(base, 0));
    insert_end_after(g, cb, SegEnd::new(base + 1, 1));
    insert_end_after(g, cc, SegEnd::new(base + 2, 0));
    insert_end_after(g, cd, SegEnd::new(base + 3, 1));
    finish(g);
}

/// Augmented B-configuration riding on the uncrossed edge of `dart_uz`,
/// drawn inside the face left of it. Returns the new inner vertices (w, v)
/// and the new crossing edge pair ids.
fn insert_aug_b(g: &mut EmbeddedGraph, dart_uz: Dart) -> (NodeId, NodeId) {
    let u = g.topo.src(dart_uz);
    let z = g.topo.dst(dart_uz);
    let w = g.kinds.len();
    g.kinds.push(NodeKind::Real);
    g.topo.rot.push(Vec::new());
    let v = g.kinds.len();
    g.kinds.push(NodeKind::Real);
    g.topo.rot.push(Vec::new());
    let p = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());

    let base = g.topo.segs.len();
    let s0 = base; // (u, p)
    let s1 = base + 1; // (p, v)
    let s2 = base + 2; // (w, p)
    let s3 = base + 3; // (p, z)
    let s4 = base + 4; // (u, w)
    let s5 = base + 5; // (w, v)
    let s6 = base + 6; // (v, z)
    g.topo.segs.extend([(u, p), (p, v), (w, p), (p, z), (u, w), (w, v), (v, z)]);
    g.edges.push(vec![s0, s1]); // (u, v)
    g.edges.push(vec![s2, s3]); // (w, z)
    g.edges.push(vec![s4]);
    g.edges.push(vec![s5]);
    g.edges.push(vec![s6]);

    g.topo.rot[p] = vec![
        SegEnd::new(s3, 0),
        SegEnd::new(s1, 0),
        SegEnd::new(s2, 1),
        SegEnd::new(s0, 1),
    ];
    g.topo.rot[w] = vec![SegEnd::new(s2, 0), SegEnd::new(s5, 0), SegEnd::new(s4, 1)];
    g.topo.rot[v] = vec![SegEnd::new(s6, 0), SegEnd::new(s5, 1), SegEnd::new(s1, 1)];

    // at u: [.., (u,v)-end, (u,w)-end, uz-end ..] clockwise
    let at_u = g.topo.tail_end(dart_uz);
    let pos = g.topo.rot[u].iter().position(|se| *se == at_u).unwrap();
    g.topo.rot[u].splice(pos..pos, [SegEnd::new(s0, 0), SegEnd::new(s4, 0)]);
    // at z: [.., uz-end, (v,z)-end, (w,z)-end ..] clockwise
    let at_z = g.topo.head_end(dart_uz);
    let pos = g.topo.rot[z].iter().position(|se| *se == at_z).unwrap();
    g.topo.rot[z].splice(pos + 1..pos + 1, [SegEnd::new(s6, 1), SegEnd::new(s3, 1)]);
    finish(g);
    (w, v)
}

/// W-configuration between two corners of one face (`cu` before `cz` on the
/// walk); adds four degree-1 inner vertices.
fn insert_w(g: &mut EmbeddedGraph, cu: Corner, cz: Corner) {
    let (u, z) = (cu.node, cz.node);
    let names: Vec<NodeId> = (0..4).map(|i| g.kinds.len() + i).collect();
    let (v, w, x, y) = (names[0], names[1], names[2], names[3]);
    for _ in 0..4 {
        g.kinds.push(NodeKind::Real);
        g.topo.rot.push(Vec::new());
    }
    let p1 = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());
    let p2 = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());

    let base = g.topo.segs.len();
    let a1 = base; // (u, p1) of (u, v)
    let a2 = base + 1; // (p1, v)
    let b1 = base + 2; // (w, p1) of (w, z)
    let b2 = base + 3; // (p1, z)
    let c1 = base + 4; // (u, p2) of (u, x)
    let c2 = base + 5; // (p2, x)
    let d1 = base + 6; // (z, p2) of (z, y)
    let d2 = base + 7; // (p2, y)
    g.topo.segs.extend([
        (u, p1),
        (p1, v),
        (w, p1),
        (p1, z),
        (u, p2),
        (p2, x),
        (z, p2),
        (p2, y),
    ]);
    g.edges.push(vec![a1, a2]);
    g.edges.push(vec![b1, b2]);
    g.edges.push(vec![c1, c2]);
    g.edges.push(vec![d1, d2]);

    g.topo.rot[v] = vec![SegEnd::new(a2, 1)];
    g.topo.rot[w] = vec![SegEnd::new(b1, 0)];
    g.topo.rot[x] = vec![SegEnd::new(c2, 1)];
    g.topo.rot[y] = vec![SegEnd::new(d2, 1)];
    // crossing rotations: toward z, toward v, toward w, toward u at p1
    g.topo.rot[p1] = vec![
        SegEnd::new(b2, 0),
        SegEnd::new(a2, 0),
        SegEnd::new(b1, 1),
        SegEnd::new(a1, 1),
    ];
    // at p2: toward z, toward u, toward y, toward x clockwise
    g.topo.rot[p2] = vec![
        SegEnd::new(d1, 1),
        SegEnd::new(c1, 1),
        SegEnd::new(d2, 0),
        SegEnd::new(c2, 0),
    ];

    // u's corner gains (u,p1) then (u,p2); z's corner gains (z,p2) then (z,p1)
    insert_end_after(g, cu, SegEnd::new(c1, 0));
    insert_end_after(g, cu, SegEnd::new(a1, 0));
    insert_end_after(g, cz, SegEnd::new(b2, 1));
    insert_end_after(g, cz, SegEnd::new(d1, 0));
    finish(g);
}

/// T-configuration spanning three corners of one face, in walk order
/// u, w, x. With `augmented` the six inner endpoints collapse to a triangle.
fn insert_t(g: &mut EmbeddedGraph, cu: Corner, cw: Corner, cx: Corner, augmented: bool) {
    let (u, w, x) = (cu.node, cw.node, cx.node);
    let inner = if augmented { 3 } else { 6 };
    let first = g.kinds.len();
    for _ in 0..inner {
        g.kinds.push(NodeKind::Real);
        g.topo.rot.push(Vec::new());
    }
    let (v, y, z) = (first, first + 1, first + 2);
    let (vp, yp, zp) = if augmented { (v, y, z) } else { (first + 3, first + 4, first + 5) };
    let p1 = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());
    let p2 = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());
    let p3 = g.kinds.len();
    g.kinds.push(NodeKind::Dummy);
    g.topo.rot.push(Vec::new());

    let base = g.topo.segs.len();
    let uv1 = base; // (u, p1)
    let uv2 = base + 1; // (p1, v)
    let wz1 = base + 2; // (w, p1)
    let wz2 = base + 3; // (p1, z)
    let uy1 = base + 4; // (u, p2)
    let uy2 = base + 5; // (p2, y)
    let xz1 = base + 6; // (x, p2)
    let xz2 = base + 7; // (p2, z')
    let xv1 = base + 8; // (x, p3)
    let xv2 = base + 9; // (p3, v')
    let wy1 = base + 10; // (w, p3)
    let wy2 = base + 11; // (p3, y')
    g.topo.segs.extend([
        (u, p1),
        (p1, v),
        (w, p1),
        (p1, z),
        (u, p2),
        (p2, y),
        (x, p2),
        (p2, zp),
        (x, p3),
        (p3, vp),
        (w, p3),
        (p3, yp),
    ]);
    g.edges.push(vec![uv1, uv2]);
    g.edges.push(vec![wz1, wz2]);
    g.edges.push(vec![uy1, uy2]);
    g.edges.push(vec![xz1, xz2]);
    g.edges.push(vec![xv1, xv2]);
    g.edges.push(vec![wy1, wy2]);

    g.topo.rot[p1] = vec![
        SegEnd::new(uv1, 1),
        SegEnd::new(wz2, 0),
        SegEnd::new(uv2, 0),
        SegEnd::new(wz1, 1),
    ];
    g.topo.rot[p2] = vec![
        SegEnd::new(uy1, 1),
        SegEnd::new(xz1, 1),
        SegEnd::new(uy2, 0),
        SegEnd::new(xz2, 0),
    ];
    g.topo.rot[p3] = vec![
        SegEnd::new(xv1, 1),
        SegEnd::new(wy1, 1),
        SegEnd::new(xv2, 0),
        SegEnd::new(wy2, 0),
    ];

    if augmented {
        let t_vy = g.topo.segs.len();
        g.topo.segs.push((v, y));
        let t_yz = g.topo.segs.len();
        g.topo.segs.push((y, z));
        let t_zv = g.topo.segs.len();
        g.topo.segs.push((z, v));
        g.edges.push(vec![t_vy]);
        g.edges.push(vec![t_yz]);
        g.edges.push(vec![t_zv]);
        g.topo.rot[z] = vec![
            SegEnd::new(xz2, 1),
            SegEnd::new(t_yz, 1),
            SegEnd::new(t_zv, 0),
            SegEnd::new(wz2, 1),
        ];
        g.topo.rot[y] = vec![
            SegEnd::new(uy2, 1),
            SegEnd::new(wy2, 1),
            SegEnd::new(t_vy, 1),
            SegEnd::new(t_yz, 0),
        ];
        g.topo.rot[v] = vec![
            SegEnd::new(uv2, 1),
            SegEnd::new(t_zv, 1),
            SegEnd::new(t_vy, 0),
            SegEnd::new(xv2, 1),
        ];
    } else {
        g.topo.rot[v] = vec![SegEnd::new(uv2, 1)];
        g.topo.rot[z] = vec![SegEnd::new(wz2, 1)];
        g.topo.rot[y] = vec![SegEnd::new(uy2, 1)];
        g.topo.rot[zp] = vec![SegEnd::new(xz2, 1)];
        g.topo.rot[vp] = vec![SegEnd::new(xv2, 1)];
        g.topo.rot[yp] = vec![SegEnd::new(wy2, 1)];
    }

    // pole corners, clockwise insertion order per corner
    insert_end_after(g, cu, SegEnd::new(uv1, 0));
    insert_end_after(g, cu, SegEnd::new(uy1, 0));
    insert_end_after(g, cw, SegEnd::new(wy1, 0));
    insert_end_after(g, cw, SegEnd::new(wz1, 0));
    insert_end_after(g, cx, SegEnd::new(xz1, 0));
    insert_end_after(g, cx, SegEnd::new(xv1, 0));
    finish(g);
}

/// Delete an uncrossed edge, keeping the embedding; re-anchors the outer
/// dart if needed.
fn delete_uncrossed_edge(g: &mut EmbeddedGraph, e: EdgeId) {
    debug_assert_eq!(g.edges[e].len(), 1);
    let s = g.edges[e][0];
    if g.outer_dart.seg == s {
        // anchor on the next dart of the outer walk that survives
        let walk = &g.faces().walks[g.faces().outer];
        let d = walk
            .iter()
            .find(|d| d.seg != s)
            .copied()
            .expect("outer face has other darts");
        g.outer_dart = d;
    }
    let last = g.topo.segs.len() - 1;
    for v in 0..g.topo.rot.len() {
        g.topo.rot[v].retain(|se| se.seg != s);
        for se in &mut g.topo.rot[v] {
            if se.seg == last {
                se.seg = s;
            }
        }
    }
    g.topo.segs.swap_remove(s);
    if g.outer_dart.seg == last {
        g.outer_dart.seg = s;
    }
    let last_e = g.edges.len() - 1;
    g.edges.swap_remove(e);
    if e < g.edges.len() {
        let _ = last_e;
    }
    for chain in &mut g.edges {
        for x in chain.iter_mut() {
            if *x == last {
                *x = s;
            }
        }
    }
    finish(g);
}

// --- candidate enumeration ---------------------------------------------------

fn corners_of_face(g: &EmbeddedGraph, f: usize) -> Vec<Corner> {
    g.faces().walks[f]
        .iter()
        .map(|d| Corner { node: g.topo.dst(*d), arrive: *d })
        .collect()
}

/// All (face, corner, corner) pairs that can take an uncrossed edge.
fn uncrossed_candidates(g: &EmbeddedGraph) -> Vec<(Corner, Corner)> {
    let mut out = Vec::new();
    for f in 0..g.faces().count() {
        let corners = corners_of_face(g, f);
        for i in 0..corners.len() {
            for j in i + 1..corners.len() {
                let (a, b) = (corners[i], corners[j]);
                if a.node == b.node || !g.is_real(a.node) || !g.is_real(b.node) {
                    continue;
                }
                if g.edge_between(a.node, b.node).is_some() {
                    continue;
                }
                out.push((a, b));
            }
        }
    }
    out
}

/// All (dart of an uncrossed edge, corner left, corner right) triples that
/// can take a crossing edge.
fn crossing_candidates(g: &EmbeddedGraph) -> Vec<(Dart, Corner, Corner)> {
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        if g.edges[e].len() != 1 {
            continue;
        }
        let s = g.edges[e][0];
        let d = Dart::new(s, true);
        let (u, z) = (g.topo.src(d), g.topo.dst(d));
        let left = corners_of_face(g, g.faces().of(d));
        let right = corners_of_face(g, g.faces().of(d.rev()));
        for a in &left {
            if !g.is_real(a.node) || a.node == u || a.node == z {
                continue;
            }
            for b in &right {
                if !g.is_real(b.node) || b.node == u || b.node == z || a.node == b.node {
                    continue;
                }
                if g.edge_between(a.node, b.node).is_some() {
                    continue;
                }
                out.push((d, *a, *b));
            }
        }
    }
    out
}

/// Saturate: add crossing and uncrossed edges until neither is possible.
/// With `crossing_first` a burst of crossing edges precedes the mixed loop.
fn saturate(g: &mut EmbeddedGraph, rng: &mut ChaCha12Rng, crossing_first: bool) {
    if crossing_first {
        loop {
            let cands = crossing_candidates(g);
            if cands.is_empty() {
                break;
            }
            let (d, a, b) = cands[rng.gen_range(0..cands.len())];
            insert_crossing(g, d, a, b);
        }
    }
    loop {
        let cands = uncrossed_candidates(g);
        if !cands.is_empty() {
            let (a, b) = cands[rng.gen_range(0..cands.len())];
            insert_uncrossed(g, a, b);
            continue;
        }
        let cands = crossing_candidates(g);
        if !cands.is_empty() {
            let (d, a, b) = cands[rng.gen_range(0..cands.len())];
            insert_crossing(g, d, a, b);
            continue;
        }
        break;
    }
}

/// Is the graph maximal: no edge insertable in the embedding?
pub fn is_maximal(g: &EmbeddedGraph) -> bool {
    uncrossed_candidates(g).is_empty() && crossing_candidates(g).is_empty()
}

// --- plane base ------------------------------------------------------------

/// Stacked triangulation with random insertion faces, then an edge-flip
/// walk, then random deletions keeping 2-connectivity.
fn random_plane_base(n: usize, rng: &mut ChaCha12Rng, keep_triangulation: bool) -> EmbeddedGraph {
    let n = n.max(4);
    let mut g = crate::fixtures::triangle();
    while g.node_count() < n {
        let f = rng.gen_range(0..g.faces().count());
        let corners = corners_of_face(&g, f);
        if corners.len() != 3 || corners.iter().any(|c| !g.is_real(c.node)) {
            continue;
        }
        stack_vertex(&mut g, &corners);
    }
    // edge-flip walk
    for _ in 0..10 * n {
        let e = rng.gen_range(0..g.edge_count());
        try_flip(&mut g, e);
    }
    if keep_triangulation {
        return g;
    }
    // random deletions keeping 2-connectivity
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let target = (g.edge_count() as f64 * 0.25) as usize;
    let mut removed = 0;
    for &e in &order {
        if removed >= target {
            break;
        }
        if e >= g.edge_count() {
            continue;
        }
        if !rng.gen_bool(0.7) {
            continue;
        }
        let mut trial = g.clone();
        delete_uncrossed_edge(&mut trial, e);
        if is_biconnected(&trial) {
            g = trial;
            removed += 1;
        }
    }
    g
}

/// Insert a vertex inside a triangular face, joined to its three corners.
fn stack_vertex(g: &mut EmbeddedGraph, corners: &[Corner]) {
    let wnode = g.kinds.len();
    g.kinds.push(NodeKind::Real);
    g.topo.rot.push(Vec::new());
    let base = g.topo.segs.len();
    for (i, c) in corners.iter().enumerate() {
        g.topo.segs.push((wnode, c.node));
        g.edges.push(vec![base + i]);
    }
    // corners come in counterclockwise walk order, so clockwise around the
    // new vertex is the reverse
    g.topo.rot[wnode] = vec![
        SegEnd::new(base, 0),
        SegEnd::new(base + 2, 0),
        SegEnd::new(base + 1, 0),
    ];
    for (i, c) in corners.iter().enumerate() {
        insert_end_after(g, *c, SegEnd::new(base + i, 1));
    }
    finish(g);
}

/// Flip an internal uncrossed edge shared by two triangles when the new
/// diagonal is missing.
fn try_flip(g: &mut EmbeddedGraph, e: EdgeId) -> bool {
    if g.edges[e].len() != 1 {
        return false;
    }
    let s = g.edges[e][0];
    let d = Dart::new(s, true);
    let (fl, fr) = (g.faces().of(d), g.faces().of(d.rev()));
    if fl == fr || g.faces().degree(fl) != 3 || g.faces().degree(fr) != 3 {
        return false;
    }
    if fl == g.faces().outer || fr == g.faces().outer {
        return false;
    }
    // opposite corners
    let copp = |f: usize| -> Corner {
        let walk = &g.faces().walks[f];
        let i = walk.iter().position(|x| x.seg == s).unwrap();
        Corner { node: g.topo.dst(walk[(i + 1) % 3]), arrive: walk[(i + 1) % 3] }
    };
    let c = copp(fl);
    let cd = copp(fr);
    if c.node == cd.node || g.edge_between(c.node, cd.node).is_some() {
        return false;
    }
    if !g.is_real(c.node) || !g.is_real(cd.node) {
        return false;
    }
    let (a, b) = (g.topo.src(d), g.topo.dst(d));
    let mut trial = g.clone();
    delete_uncrossed_edge(&mut trial, e);
    // the merged quadrilateral face alternates a, c, b, d
    let want = {
        let mut w = [a, c.node, b, cd.node];
        w.sort_unstable();
        w
    };
    let Some(f) = (0..trial.faces().count()).find(|&f| {
        let walk = &trial.faces().walks[f];
        if walk.len() != 4 {
            return false;
        }
        let mut nodes: Vec<usize> = walk.iter().map(|d| trial.topo.src(*d)).collect();
        nodes.sort_unstable();
        nodes == want
    }) else {
        return false;
    };
    let corners = corners_of_face(&trial, f);
    let ca = corners.iter().find(|x| x.node == c.node).unwrap();
    let cb = corners.iter().find(|x| x.node == cd.node).unwrap();
    insert_uncrossed(&mut trial, *ca, *cb);
    if is_biconnected(&trial) {
        *g = trial;
        true
    } else {
        false
    }
}

// --- models ------------------------------------------------------------------

/// Generate a random instance of the Gen, Bic or Tric model.
pub fn gen_random(spec: GenSpec) -> Result<EmbeddedGraph> {
    if spec.n < 8 {
        return Err(Error::GenerationFailure { seed: spec.seed, attempts: 0 });
    }
    for attempt in 0..100u32 {
        let mut rng = ChaCha12Rng::seed_from_u64(spec.seed.wrapping_add(u64::from(attempt) << 32));
        if let Some(g) = try_generate(spec, &mut rng) {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailure { seed: spec.seed, attempts: 100 })
}

fn try_generate(spec: GenSpec, rng: &mut ChaCha12Rng) -> Option<EmbeddedGraph> {
    let g = match spec.model {
        Model::Gen => {
            let mut g = random_plane_base(spec.n, rng, false);
            saturate(&mut g, rng, true);
            g
        }
        Model::Bic | Model::Tric => {
            let tric = spec.model == Model::Tric;
            let base = ((spec.n as f64 * spec.k_frac) as usize).max(4);
            let mut g = random_plane_base(base, rng, tric);
            if !tric {
                // 2-connected base without full triangulation
                if !is_biconnected(&g) {
                    return None;
                }
            }
            let mut guard = 0;
            while g.real_count() < spec.n {
                guard += 1;
                if guard > 50 * spec.n {
                    return None;
                }
                let op = rng.gen_range(0..100);
                if tric {
                    match op {
                        0..=44 => op_aug_t(&mut g, rng),
                        45..=64 => op_aug_b(&mut g, rng, true),
                        65..=84 => op_crossing_edge(&mut g, rng),
                        _ => op_crossing_pair(&mut g, rng),
                    };
                } else {
                    match op {
                        0..=29 => op_aug_b(&mut g, rng, false),
                        30..=54 => op_w(&mut g, rng),
                        55..=74 => op_t(&mut g, rng),
                        75..=89 => op_crossing_edge(&mut g, rng),
                        _ => op_crossing_pair(&mut g, rng),
                    };
                }
            }
            saturate(&mut g, rng, false);
            g
        }
        Model::Lb3 | Model::Lb2 => unreachable!("lower bounds use gen_lowerbound"),
    };
    // model postconditions
    g.check_simple().ok()?;
    if !g.is_one_plane() || !is_maximal(&g) {
        return None;
    }
    match spec.model {
        Model::Gen => {
            if !crate::graph::is_connected_abstract(&g) {
                return None;
            }
        }
        Model::Bic => {
            if !is_biconnected(&g) || g.real_count() > spec.n + 3 {
                return None;
            }
        }
        Model::Tric => {
            if !is_triconnected(&g) || g.real_count() > spec.n + 3 {
                return None;
            }
            // saturation may complete a W-configuration on the outer face;
            // such instances are not part of the model
            let configs = crate::graph::detect_configurations(&g).ok()?;
            if configs.iter().any(|c| c.kind == crate::graph::ConfigKind::WConfig) {
                return None;
            }
        }
        _ => unreachable!(),
    }
    Some(g)
}

fn op_aug_t(g: &mut EmbeddedGraph, rng: &mut ChaCha12Rng) -> bool {
    let Some((c0, c1, c2)) = pick_three_corners(g, rng) else { return false };
    insert_t(g, c0, c1, c2, true);
    true
}

fn op_t(g: &mut EmbeddedGraph, rng: &mut ChaCha12Rng) -> bool {
    let Some((c0, c1, c2)) = pick_three_corners(g, rng) else { return false };
    insert_t(g, c0, c1, c2, false);
    true
}

fn op_w(g: &mut EmbeddedGraph, rng: &mut ChaCha12Rng) -> bool {
    // two distinct real corners of one face
    let mut options = Vec::new();
    for f in 0..g.faces().count() {
        let corners = corners_of_face(g, f);
        for i in 0..corners.len() {
            for j in 0..corners.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (corners[i], corners[j]);
                if a.node != b.node && g.is_real(a.node) && g.is_real(b.node) {
                    options.push((a, b));
                }
            }
        }
    }
    if options.is_empty() {
        return false;
    }
    let (a, b) = options[rng.gen_range(0..options.len())];
    insert_w(g, a, b);
    true
}

fn op_aug_b(g: &mut EmbeddedGraph, rng: &mut ChaCha12Rng, with_anchor: bool) -> bool {
    // an uncrossed edge whose other side holds a third vertex for the anchor
    let mut options = Vec::new();
    for e in 0..g.edge_count() {
        if g.edges[e].len() != 1 {
            continue;
        }
        let s = g.edges[e][0];
        for d in [Dart::new(s, true), Dart::new(s, false)] {
            if !with_anchor {
                options.push((d, None));
                continue;
            }
            // anchor target on the face right of the riding edge
            let (u, z) = (g.topo.src(d), g.topo.dst(d));
            for c in corners_of_face(g, g.faces().of(d.rev())) {
                if g.is_real(c.node) && c.node != u && c.node != z {
                    options.push((d, Some(c)));
                }
            }
        }
    }
    if options.is_empty() {
        return false;
    }
    let (d, anchor) = options[rng.gen_range(0..options.len())];
    let (w, _v) = insert_aug_b(g, d);
    if let Some(anchor) = anchor {
        // connect the inner vertex w to the anchored vertex, crossing the
        // riding edge; find the fresh corner of w facing the riding edge
        let s = g.edges[g.edge_between(g.topo.src(d), g.topo.dst(d)).unwrap()][0];
        let dart = Dart::new(s, g.topo.segs[s].0 == g.topo.src(d));
        // w lies on the face left of the riding edge walked u->z
        let left = corners_of_face(g, g.faces().of(dart));
        let right = corners_of_face(g, g.faces().of(dart.rev()));
        let ca = left.iter().find(|c| c.node == w);
        let cb = right.iter().find(|c| c.node == anchor.node && g.edge_between(w, c.node).is_none());
        if let (Some(ca), Some(cb)) = (ca, cb) {
            insert_crossing(g, dart, *ca, *cb);
        }
    }
    true
}

fn op_crossing_edge(g: &mut EmbeddedGraph, rng: &mut ChaCha12Rng) -> bool {
    let cands = crossing_candidates(g);
    if cands.is_empty() {
        return false;
    }
    let (d, a, b) = cands[rng.gen_range(0..cands.len())];
    insert_crossing(g, d, a, b);
    true
}

fn op_crossing_pair(g: &mut EmbeddedGraph, rng: &mut ChaCha12Rng) -> bool {
    // four distinct real corners in walk order a, c, b, d
    let mut options = Vec::new();
    for f in 0..g.faces().count() {
        let corners: Vec<Corner> = corners_of_face(g, f)
            .into_iter()
            .filter(|c| g.is_real(c.node))
            .collect();
        let k = corners.len();
        if k < 4 {
            continue;
        }
        for i in 0..k.min(8) {
            let (a, c, b, d) = (corners[i], corners[(i + 1) % k], corners[(i + 2) % k], corners[(i + 3) % k]);
            let nodes = [a.node, c.node, b.node, d.node];
            let mut uniq = nodes.to_vec();
            uniq.sort_unstable();
            uniq.dedup();
            if uniq.len() != 4 {
                continue;
            }
            if g.edge_between(a.node, b.node).is_some() || g.edge_between(c.node, d.node).is_some() {
                continue;
            }
            options.push((a, c, b, d));
        }
    }
    if options.is_empty() {
        return false;
    }
    let (a, c, b, d) = options[rng.gen_range(0..options.len())];
    insert_crossing_pair(g, a, c, b, d);
    true
}

fn pick_three_corners(g: &EmbeddedGraph, rng: &mut ChaCha12Rng) -> Option<(Corner, Corner, Corner)> {
    let mut options = Vec::new();
    for f in 0..g.faces().count() {
        let corners: Vec<Corner> = corners_of_face(g, f)
            .into_iter()
            .filter(|c| g.is_real(c.node))
            .collect();
        let k = corners.len();
        if k < 3 {
            continue;
        }
        for i in 0..k {
            let (a, b, c) = (corners[i], corners[(i + 1) % k], corners[(i + 2) % k]);
            if a.node != b.node && b.node != c.node && a.node != c.node {
                options.push((a, b, c));
            }
        }
    }
    if options.is_empty() {
        return None;
    }
    Some(options[rng.gen_range(0..options.len())])
}

// --- lower-bound families ------------------------------------------------------

/// Lower-bound family on 3-connected graphs: an augmented T-configuration
/// inside every face of a stacked triangulation with `n` vertices.
pub fn gen_lb3(n: usize) -> EmbeddedGraph {
    assert!(n >= 4, "base triangulation needs at least four vertices");
    let mut g = crate::fixtures::triangle();
    // deterministic stacking into the lexicographically first deep face
    while g.node_count() < n {
        let f = (0..g.faces().count())
            .find(|&f| corners_of_face(&g, f).len() == 3)
            .unwrap();
        let corners = corners_of_face(&g, f);
        stack_vertex(&mut g, &corners);
    }
    // one gadget per face; collect stable corner handles first
    let faces: Vec<(Corner, Corner, Corner)> = (0..g.faces().count())
        .map(|f| {
            let c = corners_of_face(&g, f);
            (c[0], c[1], c[2])
        })
        .collect();
    let outer = g.faces().outer;
    let mut outer_triple = None;
    for (f, triple) in faces.iter().enumerate() {
        if f == outer {
            outer_triple = Some(*triple);
            continue;
        }
        insert_t(&mut g, triple.0, triple.1, triple.2, true);
    }
    // the outer face gadget wraps the graph; the face bounded by the new
    // inner triangle becomes the outer face
    let before = g.edge_count();
    let triple = outer_triple.unwrap();
    insert_t(&mut g, triple.0, triple.1, triple.2, true);
    // triangle edges are the last three added; the central face walk runs
    // v -> y -> z, left of the (v, y) segment's forward dart
    let t_vy_edge = before + 6;
    let s = g.edges[t_vy_edge][0];
    g.outer_dart = Dart::new(s, true);
    g.refresh_faces();
    g
}

/// Lower-bound family on 2-connected graphs: `n + 1` copies of the 8-vertex
/// pole gadget in parallel plus the outer pole edge.
pub fn gen_lb2(n: usize) -> EmbeddedGraph {
    let copies = n + 1;
    let mut kinds = vec![NodeKind::Real, NodeKind::Real]; // u = 0, v = 1
    let (u, v) = (0, 1);
    let mut segs: Vec<(usize, usize)> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut rot: Vec<Vec<SegEnd>> = vec![Vec::new(), Vec::new()];
    let mut rot_u_rev: Vec<SegEnd> = Vec::new(); // collected right-to-left
    let mut rot_v: Vec<SegEnd> = Vec::new();

    for _ in 0..copies {
        // inner vertices a (lower-left), b (upper-left), c (lower-right),
        // d (upper-right), e (top-middle), f (bottom-middle)
        let base = kinds.len();
        let (a, b, c, d, e, f) = (base, base + 1, base + 2, base + 3, base + 4, base + 5);
        for _ in 0..6 {
            kinds.push(NodeKind::Real);
            rot.push(Vec::new());
        }
        let dl = kinds.len();
        kinds.push(NodeKind::Dummy);
        rot.push(Vec::new());
        let dr = kinds.len();
        kinds.push(NodeKind::Dummy);
        rot.push(Vec::new());

        let sb = segs.len();
        let ua1 = sb; // (u, dl)
        let ua2 = sb + 1; // (dl, a)
        let vb1 = sb + 2; // (v, dl)
        let vb2 = sb + 3; // (dl, b)
        let uc1 = sb + 4; // (u, dr)
        let uc2 = sb + 5; // (dr, c)
        let vd1 = sb + 6; // (v, dr)
        let vd2 = sb + 7; // (dr, d)
        let ab = sb + 8;
        let cd = sb + 9;
        let ue = sb + 10;
        let eb = sb + 11;
        let ed = sb + 12;
        let vf = sb + 13;
        let fa = sb + 14;
        let fc = sb + 15;
        segs.extend([
            (u, dl),
            (dl, a),
            (v, dl),
            (dl, b),
            (u, dr),
            (dr, c),
            (v, dr),
            (dr, d),
            (a, b),
            (c, d),
            (u, e),
            (e, b),
            (e, d),
            (v, f),
            (f, a),
            (f, c),
        ]);
        edges.push(vec![ua1, ua2]); // (u, a)
        edges.push(vec![vb1, vb2]); // (v, b)
        edges.push(vec![uc1, uc2]); // (u, c)
        edges.push(vec![vd1, vd2]); // (v, d)
        for s in [ab, cd, ue, eb, ed, vf, fa, fc] {
            edges.push(vec![s]);
        }

        // crossing rotations: left crossing clockwise [u, b, a, v]
        rot[dl] = vec![
            SegEnd::new(ua1, 1),
            SegEnd::new(vb2, 0),
            SegEnd::new(ua2, 0),
            SegEnd::new(vb1, 1),
        ];
        // right crossing clockwise [v, c, d, u]
        rot[dr] = vec![
            SegEnd::new(vd1, 1),
            SegEnd::new(uc2, 0),
            SegEnd::new(vd2, 0),
            SegEnd::new(uc1, 1),
        ];
        rot[a] = vec![SegEnd::new(ua2, 1), SegEnd::new(ab, 0), SegEnd::new(fa, 1)];
        rot[b] = vec![SegEnd::new(ab, 1), SegEnd::new(vb2, 1), SegEnd::new(eb, 1)];
        rot[c] = vec![SegEnd::new(fc, 1), SegEnd::new(cd, 0), SegEnd::new(uc2, 1)];
        rot[d] = vec![SegEnd::new(cd, 1), SegEnd::new(ed, 1), SegEnd::new(vd2, 1)];
        rot[e] = vec![SegEnd::new(eb, 0), SegEnd::new(ue, 1), SegEnd::new(ed, 0)];
        rot[f] = vec![SegEnd::new(vf, 1), SegEnd::new(fa, 0), SegEnd::new(fc, 0)];

        // u: clockwise lists copies right to left, inside each copy
        // [toward dr, down the middle, toward dl]
        rot_u_rev.push(SegEnd::new(ua1, 0));
        rot_u_rev.push(SegEnd::new(ue, 0));
        rot_u_rev.push(SegEnd::new(uc1, 0));
        // v: clockwise lists copies left to right: [toward dl, middle, dr]
        rot_v.push(SegEnd::new(vb1, 0));
        rot_v.push(SegEnd::new(vf, 0));
        rot_v.push(SegEnd::new(vd1, 0));
    }
    // outer edge (u, v) to the right of the last copy
    let uv = segs.len();
    segs.push((u, v));
    edges.push(vec![uv]);
    rot_u_rev.push(SegEnd::new(uv, 0));
    rot_u_rev.reverse();
    rot[u] = rot_u_rev;
    rot_v.push(SegEnd::new(uv, 1));
    rot[v] = rot_v;

    let outer = Dart::new(uv, true);
    EmbeddedGraph::build(kinds, segs, rot, edges, outer).expect("pole gadget family is valid")
}

/// Generate any model.
pub fn generate(spec: GenSpec) -> Result<EmbeddedGraph> {
    match spec.model {
        Model::Gen | Model::Bic | Model::Tric => gen_random(spec),
        Model::Lb3 => Ok(gen_lb3(spec.n)),
        Model::Lb2 => Ok(gen_lb2(spec.n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::admits_opvr;
    use crate::graph::detect_configurations;

    #[test]
    fn surgery_ops_keep_valid_embeddings() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let mut g = random_plane_base(8, &mut rng, false);
        assert!(validate_embedding(&g));
        assert!(op_aug_b(&mut g, &mut rng, false));
        assert!(op_w(&mut g, &mut rng));
        assert!(op_t(&mut g, &mut rng));
        assert!(op_aug_t(&mut g, &mut rng));
        assert!(validate_embedding(&g));
        assert!(g.is_one_plane());
    }

    #[test]
    fn gen_model_is_maximal_simple_one_plane() {
        for seed in 0..4 {
            let g = gen_random(GenSpec::new(Model::Gen, 16, seed)).unwrap();
            g.check_simple().unwrap();
            assert!(g.is_one_plane());
            assert!(is_maximal(&g));
            assert!(admits_opvr(&g).is_yes());
        }
    }

    #[test]
    fn determinism_under_seed() {
        let a = gen_random(GenSpec::new(Model::Gen, 14, 99)).unwrap();
        let b = gen_random(GenSpec::new(Model::Gen, 14, 99)).unwrap();
        assert_eq!(crate::graph::serialize(&a), crate::graph::serialize(&b));
    }

    #[test]
    fn bic_model_is_biconnected() {
        for seed in 0..3 {
            let g = gen_random(GenSpec::new(Model::Bic, 14, seed)).unwrap();
            assert!(is_biconnected(&g));
            assert!(g.real_count() >= 14 && g.real_count() <= 17);
            assert!(is_maximal(&g));
        }
    }

    #[test]
    fn tric_model_is_triconnected_without_w() {
        for seed in 0..3 {
            let g = gen_random(GenSpec::new(Model::Tric, 14, seed)).unwrap();
            assert!(is_triconnected(&g), "seed {seed}");
            let configs = detect_configurations(&g).unwrap();
            assert!(!configs.iter().any(|c| c.kind == crate::graph::ConfigKind::WConfig));
        }
    }

    #[test]
    fn lb3_counts() {
        let g = gen_lb3(6);
        // base faces: 2n - 4 gadgets, three crossings each
        assert_eq!(g.dummy_count(), 3 * (2 * 6 - 4));
        assert_eq!(g.real_count(), 6 + 3 * (2 * 6 - 4));
        assert!(is_triconnected(&g));
        assert!(g.is_one_plane());
        let configs = detect_configurations(&g).unwrap();
        let augs = configs
            .iter()
            .filter(|c| c.kind == crate::graph::ConfigKind::AugmentedTConfig)
            .count();
        assert_eq!(augs, 2 * 6 - 4);
    }

    #[test]
    fn lb2_counts() {
        for n in 1..=3 {
            let g = gen_lb2(n);
            assert_eq!(g.real_count(), 6 * n + 8);
            assert!(is_biconnected(&g));
            assert!(g.is_one_plane());
            assert!(admits_opvr(&g).is_yes());
        }
    }
}
