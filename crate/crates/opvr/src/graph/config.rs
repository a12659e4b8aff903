//! Crossing configurations of 1-plane graphs: kites, B-, W- and
//! T-configurations and their augmented variants.
//!
//! All region containment is decided combinatorially: a simple closed walk
//! of the planarization splits the faces into two sides, and the side not
//! containing the outer face is the inside.

use super::{CrossingPair, Dart, EmbeddedGraph, FaceId, NodeId};
use crate::error::{Error, Result};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ConfigKind {
    Kite,
    BConfig,
    AugmentedBConfig,
    WConfig,
    TConfig,
    AugmentedTConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingConfiguration {
    pub kind: ConfigKind,
    pub edges: Vec<usize>,
    pub nodes: Vec<NodeId>,
    pub dummies: Vec<NodeId>,
}

/// The two sides of a simple closed walk.
#[derive(Debug, Clone)]
pub struct Region {
    pub inside_faces: HashSet<FaceId>,
    pub inside_nodes: HashSet<NodeId>,
}

impl Region {
    pub fn contains_node(&self, v: NodeId) -> bool {
        self.inside_nodes.contains(&v)
    }
}

/// Split the faces of `g` along a simple closed dart walk and return the
/// side that does not contain the outer face. Nodes strictly inside are the
/// nodes off the walk whose incident faces are all inside.
pub fn region_of_cycle(g: &EmbeddedGraph, cycle: &[Dart]) -> Region {
    let faces = g.faces();
    let on_cycle: HashSet<usize> = cycle.iter().map(|d| d.seg).collect();

    // Faces adjacent via a segment off the walk are on the same side.
    let nf = faces.count();
    let mut comp = vec![usize::MAX; nf];
    let mut next = 0;
    for f0 in 0..nf {
        if comp[f0] != usize::MAX {
            continue;
        }
        comp[f0] = next;
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            for d in &faces.walks[f] {
                if on_cycle.contains(&d.seg) {
                    continue;
                }
                let other = faces.of(d.rev());
                if comp[other] == usize::MAX {
                    comp[other] = next;
                    stack.push(other);
                }
            }
        }
        next += 1;
    }

    // Sides seen from the walk: faces left and right of its darts.
    let mut side_left = HashSet::new();
    let mut side_right = HashSet::new();
    for d in cycle {
        side_left.insert(comp[faces.of(*d)]);
        side_right.insert(comp[faces.of(d.rev())]);
    }
    let outer_comp = comp[faces.outer];
    let inside_comps: HashSet<usize> = if side_left.contains(&outer_comp) {
        side_right
    } else {
        side_left
    };

    let inside_faces: HashSet<FaceId> = (0..nf).filter(|&f| inside_comps.contains(&comp[f])).collect();
    let cycle_nodes: HashSet<NodeId> = cycle.iter().map(|d| g.topo.src(*d)).collect();
    let mut inside_nodes = HashSet::new();
    for v in 0..g.node_count() {
        if cycle_nodes.contains(&v) {
            continue;
        }
        // any incident face decides the side for a node off the walk
        if let Some(se) = g.topo.rot[v].first() {
            let d = g.topo.dart_out(*se);
            if inside_faces.contains(&faces.of(d)) {
                inside_nodes.insert(v);
            }
        }
    }
    Region { inside_faces, inside_nodes }
}

/// Closed dart walk along a sequence of edges visiting `corners` in order.
/// Returns `None` when the concatenation is not a simple cycle.
fn cycle_through(g: &EmbeddedGraph, corners: &[NodeId], edges: &[usize]) -> Option<Vec<Dart>> {
    let mut walk = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let from = corners[i];
        let to = corners[(i + 1) % corners.len()];
        let (a, b) = g.edge_ends(e);
        if (a, b) != (from, to) && (a, b) != (to, from) {
            return None;
        }
        walk.extend(g.edge_darts_from(e, from));
    }
    let mut seen = HashSet::new();
    for d in &walk {
        if !seen.insert(g.topo.src(*d)) {
            return None;
        }
    }
    Some(walk)
}

/// Closed walk from explicit dart lists (already head-to-tail), checked
/// simple.
fn simple_closed(g: &EmbeddedGraph, parts: &[Vec<Dart>]) -> Option<Vec<Dart>> {
    let walk: Vec<Dart> = parts.iter().flatten().copied().collect();
    for w in walk.windows(2) {
        if g.topo.dst(w[0]) != g.topo.src(w[1]) {
            return None;
        }
    }
    if g.topo.dst(*walk.last()?) != g.topo.src(*walk.first()?) {
        return None;
    }
    let mut seen = HashSet::new();
    for d in &walk {
        if !seen.insert(g.topo.src(*d)) {
            return None;
        }
    }
    Some(walk)
}

/// The endpoints of the two edges through dummy `p`, in clockwise rotation
/// order. Entry `i` is the real endpoint reached leaving `p` through the
/// `i`-th segment end of its rotation.
fn endpoints_around(g: &EmbeddedGraph, p: NodeId) -> [NodeId; 4] {
    let rot = &g.topo.rot[p];
    [0, 1, 2, 3].map(|i| g.endpoint_toward(p, rot[i]))
}

/// Part of edge `e` from real endpoint `from` to dummy `p`, as darts.
fn edge_part(g: &EmbeddedGraph, e: usize, from: NodeId, p: NodeId) -> Vec<Dart> {
    let darts = g.edge_darts_from(e, from);
    let mut part = Vec::new();
    for d in darts {
        part.push(d);
        if g.topo.dst(d) == p {
            return part;
        }
    }
    unreachable!("dummy {p} not on edge {e}");
}

struct PairInfo {
    pair: CrossingPair,
    /// endpoints in clockwise order around the dummy
    around: [NodeId; 4],
}

impl PairInfo {
    /// The edge incident to `v` in this pair, and its other endpoint.
    fn edge_at(&self, g: &EmbeddedGraph, v: NodeId) -> Option<(usize, NodeId)> {
        for e in [self.pair.edge_a, self.pair.edge_b] {
            let (a, b) = g.edge_ends(e);
            if a == v {
                return Some((e, b));
            }
            if b == v {
                return Some((e, a));
            }
        }
        None
    }
}

/// Classify every crossing pair of a 1-plane graph. A pair may appear in
/// several configurations.
pub fn detect_configurations(g: &EmbeddedGraph) -> Result<Vec<CrossingConfiguration>> {
    g.require_one_plane()?;
    let pairs = g.crossing_pairs()?;
    let infos: Vec<PairInfo> = pairs
        .iter()
        .map(|&pair| PairInfo { pair, around: endpoints_around(g, pair.dummy) })
        .collect();

    let mut out = Vec::new();
    for info in &infos {
        out.extend(classify_pair(g, info));
    }
    out.extend(detect_w(g, &infos));
    out.extend(detect_t(g, &infos));
    Ok(out)
}

/// Kite / B-configuration / augmented B-configuration tests for one pair.
fn classify_pair(g: &EmbeddedGraph, info: &PairInfo) -> Vec<CrossingConfiguration> {
    let p = info.pair.dummy;
    let around = info.around;
    let mut out = Vec::new();

    let cycle_edges: Vec<Option<usize>> =
        (0..4).map(|i| g.edge_between(around[i], around[(i + 1) % 4])).collect();
    let all_cycle = cycle_edges.iter().all(Option::is_some);

    if all_cycle {
        let edges: Vec<usize> = cycle_edges.iter().map(|e| e.unwrap()).collect();
        if let Some(cycle) = cycle_through(g, &around, &edges) {
            let region = region_of_cycle(g, &cycle);
            if region.contains_node(p) {
                out.push(CrossingConfiguration {
                    kind: ConfigKind::Kite,
                    edges: vec![info.pair.edge_a, info.pair.edge_b],
                    nodes: around.to_vec(),
                    dummies: vec![p],
                });
            }
        }
    }

    // B-configuration: an edge between endpoints of the two crossing edges
    // whose triangle with the crossing encloses the two other endpoints.
    let mut is_b = false;
    for i in 0..4 {
        let (x, y) = (around[i], around[(i + 1) % 4]);
        let Some(e_xy) = g.edge_between(x, y) else { continue };
        let (e_x, _) = info.edge_at(g, x).unwrap();
        let (e_y, _) = info.edge_at(g, y).unwrap();
        let part_y_p = edge_part(g, e_y, y, p);
        let part_p_x: Vec<Dart> = edge_part(g, e_x, x, p).iter().rev().map(|d| d.rev()).collect();
        let tri = simple_closed(g, &[g.edge_darts_from(e_xy, x), part_y_p, part_p_x]);
        if let Some(tri) = tri {
            let region = region_of_cycle(g, &tri);
            let others: Vec<NodeId> = around.iter().copied().filter(|v| *v != x && *v != y).collect();
            if others.iter().all(|&v| region.contains_node(v)) {
                is_b = true;
                break;
            }
        }
    }
    if is_b {
        out.push(CrossingConfiguration {
            kind: if all_cycle { ConfigKind::AugmentedBConfig } else { ConfigKind::BConfig },
            edges: vec![info.pair.edge_a, info.pair.edge_b],
            nodes: around.to_vec(),
            dummies: vec![p],
        });
        if !all_cycle {
            // nothing more for this pair
        }
    }
    out
}

/// W-configurations: two crossing pairs sharing poles u, z whose four other
/// endpoints lie inside the closed curve u→p→z→q→u.
fn detect_w(g: &EmbeddedGraph, infos: &[PairInfo]) -> Vec<CrossingConfiguration> {
    let mut out = Vec::new();
    for i in 0..infos.len() {
        for j in i + 1..infos.len() {
            let (pi, pj) = (&infos[i], &infos[j]);
            // candidate pole pairs: one endpoint from each edge of each pair
            for u in pole_candidates(g, pi) {
                for z in pole_candidates(g, pi) {
                    if u >= z {
                        continue;
                    }
                    if let Some(cfg) = try_w(g, pi, pj, u, z) {
                        out.push(cfg);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.dummies.clone(), a.nodes.clone()).cmp(&(b.dummies.clone(), b.nodes.clone())));
    out.dedup();
    out
}

fn pole_candidates(g: &EmbeddedGraph, info: &PairInfo) -> Vec<NodeId> {
    let (a1, b1) = g.edge_ends(info.pair.edge_a);
    let (a2, b2) = g.edge_ends(info.pair.edge_b);
    vec![a1, b1, a2, b2]
}

fn try_w(
    g: &EmbeddedGraph,
    pi: &PairInfo,
    pj: &PairInfo,
    u: NodeId,
    z: NodeId,
) -> Option<CrossingConfiguration> {
    // each pair must have one edge at u and the other at z
    let (eiu, vi) = pi.edge_at(g, u)?;
    let (eiz, wi) = pi.edge_at(g, z)?;
    if eiu == eiz {
        return None;
    }
    let (eju, vj) = pj.edge_at(g, u)?;
    let (ejz, wj) = pj.edge_at(g, z)?;
    if eju == ejz {
        return None;
    }
    let (p, q) = (pi.pair.dummy, pj.pair.dummy);
    let curve = simple_closed(
        g,
        &[
            edge_part(g, eiu, u, p),
            edge_part(g, eiz, z, p).iter().rev().map(|d| d.rev()).collect(),
            edge_part(g, ejz, z, q),
            edge_part(g, eju, u, q).iter().rev().map(|d| d.rev()).collect(),
        ],
    )?;
    let region = region_of_cycle(g, &curve);
    let inner = [vi, wi, vj, wj];
    if inner.iter().all(|&v| region.contains_node(v)) {
        Some(CrossingConfiguration {
            kind: ConfigKind::WConfig,
            edges: vec![pi.pair.edge_a, pi.pair.edge_b, pj.pair.edge_a, pj.pair.edge_b],
            nodes: {
                let mut ns = vec![u, z];
                ns.extend(inner);
                ns
            },
            dummies: vec![p.min(q), p.max(q)],
        })
    } else {
        None
    }
}

/// T-configurations: three pairs whose pole pairs {u,x}, {x,w}, {w,u} chain
/// into a hexagonal curve containing the six other endpoints; augmented when
/// the six collapse to a triangle.
fn detect_t(g: &EmbeddedGraph, infos: &[PairInfo]) -> Vec<CrossingConfiguration> {
    let mut out = Vec::new();
    let n = infos.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                // canonical: count each unordered triple once per pole labeling
                if i > j || i > k {
                    continue;
                }
                out.extend(try_t(g, &infos[i], &infos[j], &infos[k]));
            }
        }
    }
    out.sort_by(|a, b| (a.dummies.clone(), a.nodes.clone(), a.kind as u8).cmp(&(b.dummies.clone(), b.nodes.clone(), b.kind as u8)));
    out.dedup();
    out
}

fn try_t(
    g: &EmbeddedGraph,
    p1: &PairInfo,
    p2: &PairInfo,
    p3: &PairInfo,
) -> Vec<CrossingConfiguration> {
    let mut out = Vec::new();
    // poles: u shared by p1,p2; x by p2,p3; w by p3,p1
    for u in pole_candidates(g, p1) {
        if p2.edge_at(g, u).is_none() {
            continue;
        }
        for x in pole_candidates(g, p2) {
            if x == u || p3.edge_at(g, x).is_none() {
                continue;
            }
            for w in pole_candidates(g, p3) {
                if w == u || w == x || p1.edge_at(g, w).is_none() {
                    continue;
                }
                let Some((e1u, v)) = p1.edge_at(g, u) else { continue };
                let Some((e1w, z)) = p1.edge_at(g, w) else { continue };
                if e1u == e1w {
                    continue;
                }
                let Some((e2u, y)) = p2.edge_at(g, u) else { continue };
                let Some((e2x, zp)) = p2.edge_at(g, x) else { continue };
                if e2u == e2x {
                    continue;
                }
                let Some((e3x, vp)) = p3.edge_at(g, x) else { continue };
                let Some((e3w, yp)) = p3.edge_at(g, w) else { continue };
                if e3x == e3w {
                    continue;
                }
                let (pp, qq, tt) = (p1.pair.dummy, p2.pair.dummy, p3.pair.dummy);
                // hexagon u→q→x→t→w→p→u
                let Some(curve) = simple_closed(
                    g,
                    &[
                        edge_part(g, e2u, u, qq),
                        edge_part(g, e2x, x, qq).iter().rev().map(|d| d.rev()).collect(),
                        edge_part(g, e3x, x, tt),
                        edge_part(g, e3w, w, tt).iter().rev().map(|d| d.rev()).collect(),
                        edge_part(g, e1w, w, pp),
                        edge_part(g, e1u, u, pp).iter().rev().map(|d| d.rev()).collect(),
                    ],
                ) else {
                    continue;
                };
                let region = region_of_cycle(g, &curve);
                let inner = [v, vp, y, yp, z, zp];
                if !inner.iter().all(|&n| region.contains_node(n)) {
                    continue;
                }
                let mut edges = vec![
                    p1.pair.edge_a,
                    p1.pair.edge_b,
                    p2.pair.edge_a,
                    p2.pair.edge_b,
                    p3.pair.edge_a,
                    p3.pair.edge_b,
                ];
                edges.sort_unstable();
                let mut dummies = vec![pp, qq, tt];
                dummies.sort_unstable();
                let augmented = v == vp
                    && y == yp
                    && z == zp
                    && g.edge_between(v, y).is_some()
                    && g.edge_between(y, z).is_some()
                    && g.edge_between(z, v).is_some();
                let mut nodes = vec![u, x, w];
                nodes.extend(inner);
                nodes.sort_unstable();
                nodes.dedup();
                out.push(CrossingConfiguration {
                    kind: if augmented { ConfigKind::AugmentedTConfig } else { ConfigKind::TConfig },
                    edges,
                    nodes,
                    dummies,
                });
            }
        }
    }
    out
}

/// Restricted classification used by the drawing pipeline: is the pair a
/// kite or an augmented B-configuration when only its four endpoints are
/// considered?
pub fn pair_kind(g: &EmbeddedGraph, pair: &CrossingPair) -> Result<ConfigKind> {
    let info = PairInfo { pair: *pair, around: endpoints_around(g, pair.dummy) };
    let configs = classify_pair(g, &info);
    for c in &configs {
        if c.kind == ConfigKind::Kite {
            return Ok(ConfigKind::Kite);
        }
    }
    for c in &configs {
        if c.kind == ConfigKind::AugmentedBConfig {
            return Ok(ConfigKind::AugmentedBConfig);
        }
    }
    Err(Error::CaseAnalysisFailure(pair.dummy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_graph_has_no_configurations() {
        let g = crate::fixtures::triangle();
        assert!(detect_configurations(&g).unwrap().is_empty());
    }

    #[test]
    fn k4_with_crossing_inside_cycle_is_a_kite() {
        let g = crate::fixtures::k4_with_crossing();
        let configs = detect_configurations(&g).unwrap();
        assert!(configs.iter().any(|c| c.kind == ConfigKind::Kite));
        assert!(!configs.iter().any(|c| c.kind == ConfigKind::BConfig));
    }

    #[test]
    fn b_configuration_without_cycle_edges() {
        let g = crate::fixtures::b_configuration();
        let configs = detect_configurations(&g).unwrap();
        assert!(configs.iter().any(|c| c.kind == ConfigKind::BConfig));
        assert!(!configs.iter().any(|c| c.kind == ConfigKind::Kite));
    }

    #[test]
    fn augmented_b_is_recognized() {
        let g = crate::fixtures::augmented_b_k4();
        let configs = detect_configurations(&g).unwrap();
        assert!(configs.iter().any(|c| c.kind == ConfigKind::AugmentedBConfig));
        assert!(!configs.iter().any(|c| c.kind == ConfigKind::Kite));
    }
}
