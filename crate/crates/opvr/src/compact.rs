//! Coordinate assignment for validated orthogonal shapes.
//!
//! Bends become degree-2 nodes, every dart gets a compass direction, the
//! drawing is wrapped in a rectangular frame, and every non-rectangular
//! inner face is cut at a reflex corner by extending the arriving segment
//! until it hits the facing side. Once all inner faces are rectangles,
//! per-dimension longest paths assign integer coordinates.

use crate::error::Result;

use crate::graph::{Dart, FaceSet, NodeId, SegEnd, SegId, Topology};
use crate::ortho::{OrthoRep, Turn};

/// Compass direction in counterclockwise quarter turns from east.
pub type Dir = u8;
pub const EAST: Dir = 0;
pub const NORTH: Dir = 1;
pub const WEST: Dir = 2;
pub const SOUTH: Dir = 3;

fn rot_ccw(d: Dir, t: u8) -> Dir {
    (d + t) % 4
}

fn opposite(d: Dir) -> Dir {
    (d + 2) % 4
}

/// Turn value in {-1, 0, 1, 2} from incoming to outgoing direction.
fn turn_value(din: Dir, dout: Dir) -> i8 {
    match (4 + dout - din) % 4 {
        0 => 0,
        1 => 1,
        2 => 2,
        3 => -1,
        _ => unreachable!(),
    }
}

/// Integer-grid drawing of an expansion.
#[derive(Debug, Clone)]
pub struct GridDrawing {
    /// Coordinates of the expansion nodes.
    pub node_pos: Vec<(i64, i64)>,
    /// Polyline of every expansion segment in forward direction, endpoints
    /// included.
    pub seg_route: Vec<Vec<(i64, i64)>>,
    pub width: i64,
    pub height: i64,
}

struct DissectMap {
    topo: Topology,
    /// Direction of the forward dart of every segment.
    dir: Vec<Dir>,
    outer_dart: Dart,
    /// Bend nodes of every original segment, in forward order.
    bends: Vec<Vec<NodeId>>,
}

impl DissectMap {
    fn dir_of(&self, d: Dart) -> Dir {
        if d.forward {
            self.dir[d.seg]
        } else {
            opposite(self.dir[d.seg])
        }
    }

    fn dart_toward(&self, _v: NodeId, se: SegEnd) -> Dir {
        self.dir_of(self.topo.dart_out(se))
    }

    /// Clockwise rotation for small nodes: ends sorted by descending dart
    /// direction. Directions must be pairwise distinct.
    fn sort_cw(&self, v: NodeId, ends: &mut Vec<SegEnd>) {
        ends.sort_by_key(|se| std::cmp::Reverse(self.dart_toward(v, *se)));
    }

    fn add_node(&mut self) -> NodeId {
        self.topo.rot.push(Vec::new());
        self.topo.rot.len() - 1
    }

    fn add_seg(&mut self, a: NodeId, b: NodeId, dir: Dir) -> SegId {
        self.topo.segs.push((a, b));
        self.dir.push(dir);
        self.topo.segs.len() - 1
    }

    /// Split segment `s` at a fresh node; the first half keeps the id.
    fn split_seg(&mut self, s: SegId) -> NodeId {
        let (a, b) = self.topo.segs[s];
        let w = self.add_node();
        let s2 = self.add_seg(w, b, self.dir[s]);
        self.topo.segs[s] = (a, w);
        // rotation at b: the (s,1) entry becomes (s2,1)
        let pos = self.topo.rot[b].iter().position(|se| *se == SegEnd::new(s, 1)).unwrap();
        self.topo.rot[b][pos] = SegEnd::new(s2, 1);
        self.topo.rot[w] = vec![SegEnd::new(s, 1), SegEnd::new(s2, 0)];
        let _ = a;
        w
    }
}

/// Normalize the representation: bends become nodes and every dart gets a
/// direction propagated from the angle data.
fn normalize(rep: &OrthoRep) -> DissectMap {
    let x = &rep.expansion;
    let n = x.topo.node_count();
    let mut segs: Vec<(NodeId, NodeId)> = Vec::new();
    let mut rot: Vec<Vec<SegEnd>> = x.topo.rot.clone();
    let mut bends: Vec<Vec<NodeId>> = Vec::new();
    let mut alpha: Vec<(usize, usize, u8)> = Vec::new(); // (dart index later)

    // alphas per dart of the new map, gathered as (seg, fwd, value)
    let mut next_node = n;
    let mut piece_of_end: Vec<[Option<(SegId, u8)>; 2]> = Vec::new();
    let mut new_alpha: Vec<Vec<u8>> = Vec::new(); // indexed by seg: [fwd, bwd]

    for (s, &(a, b)) in x.topo.segs.iter().enumerate() {
        let ts = &rep.turns[s];
        let mut chain_nodes = vec![a];
        for _ in ts {
            chain_nodes.push(next_node);
            rot.push(Vec::new());
            next_node += 1;
        }
        chain_nodes.push(b);
        bends.push(chain_nodes[1..chain_nodes.len() - 1].to_vec());
        let mut piece_ids = Vec::new();
        for w in chain_nodes.windows(2) {
            segs.push((w[0], w[1]));
            new_alpha.push(vec![0, 0]);
            piece_ids.push(segs.len() - 1);
        }
        piece_of_end.push([Some((piece_ids[0], 0)), Some((*piece_ids.last().unwrap(), 1))]);
        // bend-node rotations and angles
        for (i, t) in ts.iter().enumerate() {
            let bn = chain_nodes[i + 1];
            let prev = piece_ids[i];
            let next = piece_ids[i + 1];
            rot[bn] = vec![SegEnd::new(prev, 1), SegEnd::new(next, 0)];
            // walking forward, a left turn puts the right angle into the
            // left face: alpha of the onward dart is 1
            let (a_next, a_prev) = match t {
                Turn::Left => (1, 3),
                Turn::Right => (3, 1),
            };
            new_alpha[next][0] = a_next; // dart leaving bn forward
            new_alpha[prev][1] = a_prev; // dart leaving bn backward
        }
        let _ = &mut alpha;
    }

    // original rotations: replace each end by its piece end, copy alphas
    for v in 0..n {
        for se in &mut rot[v] {
            let (piece, end) = piece_of_end[se.seg][se.end as usize].unwrap();
            let old_dart = x.topo.dart_out(*se);
            let a = rep.alpha[old_dart.index()];
            *se = SegEnd::new(piece, end);
            // dart leaving v along the piece
            if end == 0 {
                new_alpha[piece][0] = a;
            } else {
                new_alpha[piece][1] = a;
            }
        }
    }

    let topo = Topology::new(segs, rot).expect("normalized map is consistent");

    // direction propagation: rev is opposite; around a vertex the next dart
    // counterclockwise is rotated by alpha
    let m = topo.seg_count();
    let alpha_of = |d: Dart| -> u8 {
        new_alpha[d.seg][usize::from(!d.forward)]
    };
    let mut dir: Vec<Option<Dir>> = vec![None; m];
    let mut stack = vec![(Dart::new(0, true), EAST)];
    while let Some((d, dd)) = stack.pop() {
        let want = if d.forward { dd } else { opposite(dd) };
        match dir[d.seg] {
            Some(cur) => {
                debug_assert_eq!(cur, want, "direction conflict: invalid representation");
                continue;
            }
            None => dir[d.seg] = Some(want),
        }
        for (dart, dd) in [(d, dd), (d.rev(), opposite(dd))] {
            // counterclockwise successor around the source
            let v = topo.src(dart);
            let prev_end = topo.cw_prev(v, topo.tail_end(dart));
            let succ = topo.dart_out(prev_end);
            stack.push((succ, rot_ccw(dd, alpha_of(dart))));
        }
    }
    let dir: Vec<Dir> = dir.into_iter().map(|d| d.expect("connected map")).collect();

    // outer dart carries over to the first piece of its segment
    let od = rep.expansion.outer_dart;
    let outer_dart = if od.forward {
        Dart::new(piece_of_end[od.seg][0].unwrap().0, true)
    } else {
        Dart::new(piece_of_end[od.seg][1].unwrap().0, false)
    };

    DissectMap { topo, dir, outer_dart, bends }
}

/// Surround the drawing with a frame rectangle joined by one connector at a
/// corner of the outer face, so the outer region becomes an inner face.
fn add_frame(map: &mut DissectMap) {
    let faces = FaceSet::trace(&map.topo, map.outer_dart);
    let walk = &faces.walks[faces.outer];
    // a corner of the silhouette: turn -1 on the outer walk
    let k = walk.len();
    let (v, d_in) = (0..k)
        .find_map(|i| {
            let din = walk[i];
            let dout = walk[(i + 1) % k];
            (turn_value(map.dir_of(din), map.dir_of(dout)) == -1)
                .then(|| (map.topo.dst(din), din))
        })
        .expect("outer walk has a corner");

    let gamma = rot_ccw(map.dir_of(d_in), 1);
    // frame template for gamma = south, rotated by rho
    let rho = (4 + gamma - SOUTH) % 4;
    let w = map.add_node();
    let c_bl = map.add_node();
    let c_br = map.add_node();
    let c_tr = map.add_node();
    let c_tl = map.add_node();
    let conn = map.add_seg(v, w, gamma);
    let bl_w = map.add_seg(c_bl, w, rot_ccw(EAST, rho));
    let w_br = map.add_seg(w, c_br, rot_ccw(EAST, rho));
    let right = map.add_seg(c_br, c_tr, rot_ccw(NORTH, rho));
    let top = map.add_seg(c_tr, c_tl, rot_ccw(WEST, rho));
    let left = map.add_seg(c_tl, c_bl, rot_ccw(SOUTH, rho));

    map.topo.rot[c_bl] = vec![SegEnd::new(bl_w, 0), SegEnd::new(left, 1)];
    map.topo.rot[c_br] = vec![SegEnd::new(w_br, 1), SegEnd::new(right, 0)];
    map.topo.rot[c_tr] = vec![SegEnd::new(right, 1), SegEnd::new(top, 0)];
    map.topo.rot[c_tl] = vec![SegEnd::new(top, 1), SegEnd::new(left, 0)];
    let mut at_w = vec![SegEnd::new(conn, 1), SegEnd::new(bl_w, 1), SegEnd::new(w_br, 0)];
    map.sort_cw(w, &mut at_w);
    map.topo.rot[w] = at_w;

    // connector sits in the corner of the outer face at v, right after the
    // arrival end of d_in in clockwise order
    let pos = map.topo.rot[v]
        .iter()
        .position(|se| *se == map.topo.head_end(d_in))
        .unwrap();
    map.topo.rot[v].insert(pos + 1, SegEnd::new(conn, 0));
    map.topo.reindex().expect("frame insertion is consistent");

    // the region outside the frame is the new outer face
    map.outer_dart = Dart::new(bl_w, false);
}

/// Cut reflex corners until every inner face is a rectangle.
fn dissect(map: &mut DissectMap) {
    loop {
        map.topo.reindex().expect("consistent map");
        let faces = FaceSet::trace(&map.topo, map.outer_dart);
        let mut cut = None;
        'faces: for f in 0..faces.count() {
            if f == faces.outer {
                continue;
            }
            let walk = &faces.walks[f];
            let k = walk.len();
            for i in 0..k {
                let din = walk[i];
                let dout = walk[(i + 1) % k];
                if turn_value(map.dir_of(din), map.dir_of(dout)) == -1 {
                    // scan for the facing dart: first with turn sum 2
                    let mut cum: i8 = 0;
                    let mut j = (i + 1) % k;
                    loop {
                        if cum == 2 {
                            break;
                        }
                        let next = (j + 1) % k;
                        cum += turn_value(map.dir_of(walk[j]), map.dir_of(walk[next]));
                        j = next;
                        debug_assert_ne!(j, (i + 1) % k, "no facing dart found");
                    }
                    cut = Some((din, walk[j]));
                    break 'faces;
                }
            }
        }
        let Some((d_in, target)) = cut else { break };
        let v = map.topo.dst(d_in);
        // split the facing dart and connect the reflex corner to the split
        let seg = target.seg;
        let w = map.split_seg(seg);
        let gamma = map.dir_of(d_in);
        let new_seg = map.add_seg(v, w, gamma);
        let mut at_w = map.topo.rot[w].clone();
        at_w.push(SegEnd::new(new_seg, 1));
        map.sort_cw(w, &mut at_w);
        map.topo.rot[w] = at_w;
        let pos = map.topo.rot[v]
            .iter()
            .position(|se| *se == map.topo.head_end(d_in))
            .unwrap();
        map.topo.rot[v].insert(pos + 1, SegEnd::new(new_seg, 0));
    }
}

/// Per-dimension longest-path coordinates on the rectangulated map.
fn coordinates(map: &DissectMap) -> Vec<(i64, i64)> {
    let n = map.topo.node_count();
    let xs = axis_coords(map, n, NORTH, EAST);
    let ys = axis_coords(map, n, EAST, NORTH);
    (0..n).map(|v| (xs[v], ys[v])).collect()
}

fn axis_coords(map: &DissectMap, n: usize, merge_dir_axis: Dir, step_dir: Dir) -> Vec<i64> {
    // merge nodes joined by segments parallel to the merge axis
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, v: usize) -> usize {
        while p[v] != v {
            let g = p[p[v]];
            p[v] = g;
            return find(p, g);
        }
        v
    }
    for (s, &(a, b)) in map.topo.segs.iter().enumerate() {
        if map.dir[s] % 2 == merge_dir_axis % 2 {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    // arcs along the step direction
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (s, &(a, b)) in map.topo.segs.iter().enumerate() {
        if map.dir[s] % 2 != step_dir % 2 {
            continue;
        }
        let (fa, fb) = (find(&mut parent, a), find(&mut parent, b));
        if map.dir[s] == step_dir {
            arcs.push((fa, fb));
        } else {
            arcs.push((fb, fa));
        }
    }
    // longest path over the class DAG
    let mut indeg = vec![0usize; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &arcs {
        adj[u].push(v);
        indeg[v] += 1;
    }
    let mut value = vec![0i64; n];
    let mut queue: Vec<usize> = (0..n)
        .filter(|&v| find(&mut parent, v) == v && indeg[v] == 0)
        .collect();
    let mut seen = 0;
    let class_count = (0..n).filter(|&v| find(&mut parent, v) == v).count();
    while let Some(u) = queue.pop() {
        seen += 1;
        for i in 0..adj[u].len() {
            let v = adj[u][i];
            if value[v] < value[u] + 1 {
                value[v] = value[u] + 1;
            }
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push(v);
            }
        }
    }
    assert_eq!(seen, class_count, "constraint graph must be acyclic");
    (0..n).map(|v| value[find(&mut parent, v)]).collect()
}

/// Compact a validated orthogonal shape to the integer grid.
pub fn compact(rep: &OrthoRep) -> Result<GridDrawing> {
    let mut map = normalize(rep);
    add_frame(&mut map);
    dissect(&mut map);
    let pos = coordinates(&map);

    let x = &rep.expansion;
    let node_pos: Vec<(i64, i64)> = (0..x.topo.node_count()).map(|v| pos[v]).collect();
    let mut seg_route = Vec::with_capacity(x.topo.seg_count());
    for (s, &(a, b)) in x.topo.segs.iter().enumerate() {
        let mut route = vec![pos[a]];
        route.extend(map.bends[s].iter().map(|&bn| pos[bn]));
        route.push(pos[b]);
        seg_route.push(route);
    }

    // drop the frame margin: translate so the graph starts at the origin
    let min_x = node_pos.iter().map(|p| p.0).chain(seg_route.iter().flatten().map(|p| p.0)).min().unwrap_or(0);
    let min_y = node_pos.iter().map(|p| p.1).chain(seg_route.iter().flatten().map(|p| p.1)).min().unwrap_or(0);
    let mut drawing = GridDrawing { node_pos, seg_route, width: 0, height: 0 };
    for p in drawing.node_pos.iter_mut().chain(drawing.seg_route.iter_mut().flatten()) {
        p.0 -= min_x;
        p.1 -= min_y;
    }
    drawing.width = drawing.node_pos.iter().map(|p| p.0).chain(drawing.seg_route.iter().flatten().map(|p| p.0)).max().unwrap_or(0);
    drawing.height = drawing.node_pos.iter().map(|p| p.1).chain(drawing.seg_route.iter().flatten().map(|p| p.1)).max().unwrap_or(0);
    Ok(drawing)
}

/// Re-derive the shape from the geometry: every dart's direction sequence
/// must reproduce the source representation exactly.
pub fn rederive_matches(rep: &OrthoRep, drawing: &GridDrawing) -> bool {
    let x = &rep.expansion;
    let step_dir = |p: (i64, i64), q: (i64, i64)| -> Option<Dir> {
        match (q.0 - p.0, q.1 - p.1) {
            (dx, 0) if dx > 0 => Some(EAST),
            (dx, 0) if dx < 0 => Some(WEST),
            (0, dy) if dy > 0 => Some(NORTH),
            (0, dy) if dy < 0 => Some(SOUTH),
            _ => None,
        }
    };
    // turns along every segment
    for (s, route) in drawing.seg_route.iter().enumerate() {
        let mut dirs = Vec::new();
        for w in route.windows(2) {
            match step_dir(w[0], w[1]) {
                Some(d) => dirs.push(d),
                None => return false,
            }
        }
        let mut turns = Vec::new();
        for w in dirs.windows(2) {
            match turn_value(w[0], w[1]) {
                1 => turns.push(Turn::Left),
                -1 => turns.push(Turn::Right),
                _ => return false,
            }
        }
        if turns != rep.turns[s] {
            return false;
        }
    }
    // angles at every vertex: the counterclockwise gap between consecutive
    // darts equals alpha
    for v in 0..x.topo.node_count() {
        for se in &x.topo.rot[v] {
            let d = x.topo.dart_out(*se);
            let route = &drawing.seg_route[d.seg];
            let (p, q) = if d.forward {
                (route[0], route[1])
            } else {
                (route[route.len() - 1], route[route.len() - 2])
            };
            let dd = match step_dir(p, q) {
                Some(dir) => dir,
                None => return false,
            };
            let prev = x.topo.cw_prev(v, *se);
            let d2 = x.topo.dart_out(prev);
            let route2 = &drawing.seg_route[d2.seg];
            let (p2, q2) = if d2.forward {
                (route2[0], route2[1])
            } else {
                (route2[route2.len() - 1], route2[route2.len() - 2])
            };
            let dd2 = match step_dir(p2, q2) {
                Some(dir) => dir,
                None => return false,
            };
            let want = rep.alpha[d.index()] as u8 % 4;
            if (4 + dd2 - dd) % 4 != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ortho::optimize_vertex_complexity;

    fn segments_disjoint(drawing: &GridDrawing) -> bool {
        // unit-step occupancy: no two distinct segment interiors overlap,
        // touching only at shared expansion nodes
        use std::collections::HashMap;
        let mut seen: HashMap<((i64, i64), (i64, i64)), usize> = HashMap::new();
        for (s, route) in drawing.seg_route.iter().enumerate() {
            for w in route.windows(2) {
                let (mut p, q) = (w[0], w[1]);
                let step = ((q.0 - p.0).signum(), (q.1 - p.1).signum());
                while p != q {
                    let r = (p.0 + step.0, p.1 + step.1);
                    let key = if p < r { (p, r) } else { (r, p) };
                    if let Some(other) = seen.insert(key, s) {
                        if other != s {
                            return false;
                        }
                    }
                    p = r;
                }
            }
        }
        true
    }

    #[test]
    fn compact_triangle() {
        let g = fixtures::triangle();
        let res = optimize_vertex_complexity(&g).unwrap();
        let d = compact(&res.rep).unwrap();
        assert!(rederive_matches(&res.rep, &d));
        assert!(segments_disjoint(&d));
        assert!(d.width > 0 && d.height > 0);
    }

    #[test]
    fn compact_kite_and_k5() {
        for g in [fixtures::k4_with_crossing(), fixtures::k5_rvr(), fixtures::k5_augmented_b()] {
            let res = optimize_vertex_complexity(&g).unwrap();
            let d = compact(&res.rep).unwrap();
            assert!(rederive_matches(&res.rep, &d), "shape must survive compaction");
            assert!(segments_disjoint(&d));
        }
    }

    #[test]
    fn grid_bound_holds() {
        for g in [fixtures::k4_with_crossing(), fixtures::k5_rvr(), fixtures::k5_augmented_b()] {
            let res = optimize_vertex_complexity(&g).unwrap();
            let d = compact(&res.rep).unwrap();
            let bends: usize = res.rep.turns.iter().map(Vec::len).sum();
            let budget = 4 * (res.rep.expansion.topo.node_count() + bends) as i64;
            assert!(d.width.max(d.height) <= budget, "{} > {budget}", d.width.max(d.height));
        }
    }
}
