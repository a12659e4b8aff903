//! Orthogonal representations of planarized expansions and the flow-based
//! optimizer for vertex complexity.
//!
//! The reduced network has one node per face of the expansion: expansion
//! cycles supply four units, other faces demand their degree less four (plus
//! eight more for the outer face), and a pair of opposite unit-cost arcs
//! crosses every expansion edge. A unit of flow into a cycle face is a
//! reflex corner of that polygon; capping the gadget arc that funnels this
//! inflow bounds the complexity, and a binary search over the cap finds the
//! optimum. The min-cost flow at the optimal cap also minimizes the total
//! number of reflex corners.

use crate::error::{Error, Result};
use crate::expansion::{expand, Expansion, XFace, XNode, XSeg};
use crate::flow::{solve_min_cost, Flow, FlowNetwork, Outcome};
use crate::graph::{Dart, EmbeddedGraph, FaceId, NodeId};

/// One bend along a segment, read while walking the forward dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn flip(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }
}

/// Shape of a drawing of the expansion: an angle value per dart and a bend
/// string per segment.
///
/// `alpha[d]` is the angle, in quarter turns, between dart `d` and the next
/// dart counterclockwise around its source; it sits inside the face left of
/// `d`. `turns[s]` lists the bends of segment `s` in forward direction; a
/// left turn puts the right angle into the face left of the forward dart.
#[derive(Debug, Clone)]
pub struct OrthoRep {
    pub expansion: Expansion,
    pub alpha: Vec<u8>,
    pub turns: Vec<Vec<Turn>>,
}

impl OrthoRep {
    /// Bend count beta for a dart: its left turns.
    pub fn beta(&self, d: Dart) -> usize {
        let want = if d.forward { Turn::Left } else { Turn::Right };
        self.turns[d.seg].iter().filter(|t| **t == want).count()
    }

    /// Bends of the segment as seen walking `d`.
    pub fn turns_along(&self, d: Dart) -> Vec<Turn> {
        if d.forward {
            self.turns[d.seg].clone()
        } else {
            self.turns[d.seg].iter().rev().map(|t| t.flip()).collect()
        }
    }

    /// Reflex corners of the polygon of real vertex `v`: bends on its cycle
    /// edges pointing into the cycle face.
    pub fn reflex_of_cycle(&self, v: NodeId) -> usize {
        let Some(f) = self.expansion.cycle_face[v] else { return 0 };
        self.expansion.faces.walks[f]
            .iter()
            .map(|d| self.beta(d.rev()))
            .sum()
    }
}

/// A structured list of violations; empty means the representation is valid.
#[derive(Debug, Clone, Default)]
pub struct ShapeReport {
    pub violations: Vec<String>,
}

impl ShapeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the angle-sum conditions, the fixed-angle and no-bend properties of
/// expansion drawings, and the corner-count identity on every face.
pub fn validate_orthorep(rep: &OrthoRep) -> ShapeReport {
    let x = &rep.expansion;
    let mut report = ShapeReport::default();
    let mut complain = |msg: String| report.violations.push(msg);

    for (d, &a) in rep.alpha.iter().enumerate() {
        if !(1..=4).contains(&a) {
            complain(format!("dart {d}: angle value {a} out of range"));
        }
    }

    // angles around every vertex sum to a full turn
    for v in 0..x.topo.node_count() {
        let mut sum = 0u32;
        for se in &x.topo.rot[v] {
            if (se.end == 0) == (x.topo.segs[se.seg].0 == v) {
                // dart leaving v via this end
            }
            let d = x.topo.dart_out(*se);
            debug_assert_eq!(x.topo.src(d), v);
            sum += u32::from(rep.alpha[d.index()]);
        }
        if sum != 4 {
            complain(format!("vertex {v}: angle sum {sum} != 4"));
        }
    }

    // face equations and corner counts
    for f in 0..x.faces.count() {
        let walk = &x.faces.walks[f];
        let mut lhs: i64 = 0;
        let (mut n90, mut n270, mut n360) = (0i64, 0i64, 0i64);
        for d in walk {
            let a = rep.alpha[d.index()];
            lhs += i64::from(a) + rep.beta(d.rev()) as i64 - rep.beta(*d) as i64;
            match a {
                1 => n90 += 1,
                3 => n270 += 1,
                4 => n360 += 1,
                _ => {}
            }
            for t in rep.turns_along(*d) {
                match t {
                    Turn::Left => n90 += 1,
                    Turn::Right => n270 += 1,
                }
            }
        }
        let deg = walk.len() as i64;
        let rhs = if f == x.faces.outer { 2 * deg + 4 } else { 2 * deg - 4 };
        if lhs != rhs {
            complain(format!("face {f}: angle equation {lhs} != {rhs}"));
        }
        let want = if f == x.faces.outer { -4 } else { 4 };
        if n90 - n270 - 2 * n360 != want {
            complain(format!(
                "face {f}: corner counts {n90} - {n270} - 2*{n360} != {want}"
            ));
        }
    }

    // every vertex angle inside an expansion cycle is flat
    for f in 0..x.faces.count() {
        if !x.is_cycle_face(f) {
            continue;
        }
        for d in &x.faces.walks[f] {
            if rep.alpha[d.index()] != 2 {
                complain(format!(
                    "cycle face {f}: vertex angle {} at dart {:?}",
                    rep.alpha[d.index()],
                    d
                ));
            }
        }
    }

    // real edges carry no bends
    for (s, tag) in x.seg_tags.iter().enumerate() {
        if matches!(tag, XSeg::Real(_)) && !rep.turns[s].is_empty() {
            complain(format!("real segment {s} has {} bends", rep.turns[s].len()));
        }
    }

    report
}

/// Face-indexed bookkeeping for the reduced network.
#[derive(Debug, Clone)]
pub struct ReducedNetwork {
    pub net: FlowNetwork,
    /// Flow node of each face; dropped all-dummy rectangles have none.
    pub face_node: Vec<Option<usize>>,
    /// For each arc, the expansion segment it crosses and the dart whose
    /// left face is the arc's source: that dart's bends are this arc's flow.
    pub arc_dart: Vec<Option<Dart>>,
    /// Gadget arcs per cycle face, filled by `add_complexity_gadgets`.
    pub gadget_arc: Vec<Option<usize>>,
    pub cycle_faces: Vec<FaceId>,
}

/// Build the reduced network of a planarized expansion.
pub fn build_reduced_network(x: &Expansion) -> Result<ReducedNetwork> {
    let nf = x.faces.count();
    let mut net = FlowNetwork::default();
    let mut face_node = vec![None; nf];
    let mut cycle_faces = Vec::new();

    for f in 0..nf {
        let deg = x.faces.degree(f) as i64;
        let balance = match x.face_tags[f] {
            XFace::ExpansionCycle(_) => 4,
            XFace::Ordinary => {
                if x.all_dummy_face(f) && f != x.faces.outer {
                    if deg != 4 {
                        return Err(Error::ImpossibleFace(f, deg as usize));
                    }
                    // an interior rectangle of crossings takes part in no
                    // bend exchange; drop it
                    continue;
                }
                if f == x.faces.outer {
                    -(deg + 4)
                } else {
                    -(deg - 4)
                }
            }
        };
        face_node[f] = Some(net.add_node(balance));
        if x.is_cycle_face(f) {
            cycle_faces.push(f);
        }
    }

    let mut arc_dart = Vec::new();
    for (s, tag) in x.seg_tags.iter().enumerate() {
        if !matches!(tag, XSeg::Expansion(_)) {
            continue;
        }
        for fwd in [true, false] {
            let d = Dart::new(s, fwd);
            let from = face_node[x.faces.of(d)].expect("cycle-adjacent faces are kept");
            let to = face_node[x.faces.of(d.rev())].expect("cycle-adjacent faces are kept");
            net.add_arc(from, to, 0, None, 1);
            arc_dart.push(Some(d));
        }
    }

    Ok(ReducedNetwork { net, face_node, arc_dart, gadget_arc: vec![None; nf], cycle_faces })
}

/// Split every cycle-face node into an inflow half and a supplying outflow
/// half joined by an arc of capacity `h`.
pub fn add_complexity_gadgets(reduced: &ReducedNetwork, h: i64) -> ReducedNetwork {
    let mut out = reduced.clone();
    for &f in &reduced.cycle_faces {
        let v = out.face_node[f].unwrap();
        debug_assert_eq!(out.net.balance[v], 4);
        // v becomes the inflow node; a fresh node takes the supply and the
        // outgoing arcs
        out.net.balance[v] = 0;
        let v_out = out.net.add_node(4);
        for a in &mut out.net.arcs {
            if a.from == v {
                a.from = v_out;
            }
        }
        let arc = out.net.add_arc(v, v_out, 0, Some(h), 0);
        out.arc_dart.push(None);
        out.gadget_arc[f] = Some(arc);
    }
    out
}

/// Result of the vertex-complexity optimization.
#[derive(Debug, Clone)]
pub struct ComplexityResult {
    /// Minimum vertex complexity.
    pub k: i64,
    /// Minimum total reflex corners among drawings of complexity `k`.
    pub total_reflex: i64,
    /// Reflex corners per real vertex.
    pub per_cycle_reflex: Vec<(NodeId, i64)>,
    pub rep: OrthoRep,
}

/// Probe a single cap: is there a drawing with at most `h` reflex corners
/// per polygon?
pub fn feasible_at(x: &Expansion, h: i64) -> Result<Option<(ReducedNetwork, Flow)>> {
    let reduced = build_reduced_network(x)?;
    let gadgets = add_complexity_gadgets(&reduced, h);
    match solve_min_cost(&gadgets.net)? {
        Outcome::Feasible(flow) => Ok(Some((gadgets, flow))),
        Outcome::Infeasible => Ok(None),
    }
}

/// Minimize the vertex complexity, then the total number of reflex corners,
/// over all embedding-preserving drawings of the expansion.
pub fn optimize_vertex_complexity(g: &EmbeddedGraph) -> Result<ComplexityResult> {
    let x = expand(g);
    optimize_expansion(g, &x)
}

pub fn optimize_expansion(g: &EmbeddedGraph, x: &Expansion) -> Result<ComplexityResult> {
    let reduced = build_reduced_network(x)?;
    let h_max = 4 * g.real_count() as i64;

    let solve_at = |h: i64| -> Result<Option<(ReducedNetwork, Flow)>> {
        let gadgets = add_complexity_gadgets(&reduced, h);
        match solve_min_cost(&gadgets.net)? {
            Outcome::Feasible(flow) => Ok(Some((gadgets, flow))),
            Outcome::Infeasible => Ok(None),
        }
    };

    let Some(mut best) = solve_at(h_max)? else {
        return Err(Error::NoOpvr);
    };
    // binary search for the least feasible cap; feasibility is monotone in
    // h, which the probe history asserts
    let (mut lo, mut hi) = (0i64, h_max);
    let mut probes: Vec<(i64, bool)> = vec![(h_max, true)];
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match solve_at(mid)? {
            Some(sol) => {
                best = sol;
                hi = mid;
                probes.push((mid, true));
            }
            None => {
                lo = mid + 1;
                probes.push((mid, false));
            }
        }
    }
    for &(h1, f1) in &probes {
        for &(h2, f2) in &probes {
            debug_assert!(!(h1 <= h2 && f1 && !f2), "feasibility must be monotone in the cap");
        }
    }

    let k = lo;
    let (gadgets, flow) = best;
    finish_result(g, x, k, &gadgets, &flow)
}

pub(crate) fn finish_result(
    g: &EmbeddedGraph,
    x: &Expansion,
    k: i64,
    gadgets: &ReducedNetwork,
    flow: &Flow,
) -> Result<ComplexityResult> {
    let mut per_cycle_reflex = Vec::new();
    let mut total_reflex = 0;
    for v in 0..g.node_count() {
        if !g.is_real(v) {
            continue;
        }
        let f = x.cycle_face[v].expect("real vertices have cycles");
        let r = flow.values[gadgets.gadget_arc[f].expect("gadget added")];
        per_cycle_reflex.push((v, r));
        total_reflex += r;
    }
    // every bend is one unit out of a cycle plus, for reflex corners, one
    // unit back in
    debug_assert_eq!(flow.cost, 4 * gadgets.cycle_faces.len() as i64 + 2 * total_reflex);

    let rep = flow_to_orthorep(x, gadgets, flow);
    let report = validate_orthorep(&rep);
    debug_assert!(report.is_clean(), "optimizer output invalid: {:?}", report.violations);
    Ok(ComplexityResult { k, total_reflex, per_cycle_reflex, rep })
}

/// Read a feasible flow back as an orthogonal shape: fixed angles plus one
/// bend per unit crossing an expansion edge.
pub fn flow_to_orthorep(x: &Expansion, gadgets: &ReducedNetwork, flow: &Flow) -> OrthoRep {
    let mut turns: Vec<Vec<Turn>> = vec![Vec::new(); x.topo.seg_count()];
    for (i, dart) in gadgets.arc_dart.iter().enumerate() {
        let Some(d) = dart else { continue };
        let units = flow.values[i] as usize;
        // flow from the left face of d across its segment: bends whose right
        // angle lies in that face, i.e. left turns along d
        let t = if d.forward { Turn::Left } else { Turn::Right };
        for _ in 0..units {
            turns[d.seg].push(t);
        }
    }
    // canonical bend order: all lefts first in forward direction
    for list in &mut turns {
        list.sort_by_key(|t| matches!(t, Turn::Right));
    }

    let mut alpha = vec![0u8; 2 * x.topo.seg_count()];
    for v in 0..x.topo.node_count() {
        match x.node_tags[v] {
            XNode::Dummy(_) => {
                for se in &x.topo.rot[v] {
                    alpha[x.topo.dart_out(*se).index()] = 1;
                }
            }
            XNode::Expansion(_) => {
                // rotation is [real end, next cycle edge, previous cycle
                // edge]; the flat angle sits between the two cycle darts,
                // inside the cycle face on the left of the previous-edge dart
                let r = &x.topo.rot[v];
                debug_assert_eq!(r.len(), 3);
                alpha[x.topo.dart_out(r[0]).index()] = 1;
                alpha[x.topo.dart_out(r[1]).index()] = 1;
                alpha[x.topo.dart_out(r[2]).index()] = 2;
            }
        }
    }

    OrthoRep { expansion: x.clone(), alpha, turns }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::admits_opvr;
    use crate::fixtures;

    #[test]
    fn reduced_network_balances() {
        let g = fixtures::k4_with_crossing();
        let x = expand(&g);
        let r = build_reduced_network(&x).unwrap();
        // cycle faces supply 4 each
        for &f in &r.cycle_faces {
            assert_eq!(r.net.balance[r.face_node[f].unwrap()], 4);
        }
        // outer face demands degree + 4
        let outer = r.face_node[x.faces.outer].unwrap();
        let deg = x.faces.degree(x.faces.outer) as i64;
        assert_eq!(r.net.balance[outer], -(deg + 4));
        // total balance zero
        assert_eq!(r.net.balance.iter().sum::<i64>(), 0);
    }

    #[test]
    fn six_crossing_ring_has_impossible_face() {
        let g = fixtures::star_of_david();
        let x = expand(&g);
        assert!(matches!(build_reduced_network(&x), Err(Error::ImpossibleFace(_, 6))));
    }

    #[test]
    fn gadget_counts() {
        let g = fixtures::k4_with_crossing();
        let x = expand(&g);
        let r = build_reduced_network(&x).unwrap();
        let with = add_complexity_gadgets(&r, 3);
        assert_eq!(with.net.balance.len(), r.net.balance.len() + r.cycle_faces.len());
        assert_eq!(with.net.arcs.len(), r.net.arcs.len() + r.cycle_faces.len());
    }

    #[test]
    fn kite_k4_is_rectangle_representable() {
        let g = fixtures::k4_with_crossing();
        let res = optimize_vertex_complexity(&g).unwrap();
        assert_eq!(res.k, 0);
        assert_eq!(res.total_reflex, 0);
    }

    #[test]
    fn k5_kite_embedding_has_complexity_zero() {
        let g = fixtures::k5_rvr();
        let res = optimize_vertex_complexity(&g).unwrap();
        assert_eq!(res.k, 0);
    }

    #[test]
    fn k5_augmented_b_embedding_has_complexity_one() {
        let g = fixtures::k5_augmented_b();
        let res = optimize_vertex_complexity(&g).unwrap();
        assert_eq!(res.k, 1);
        // no rectangle visibility representation exists
        let x = expand(&g);
        assert!(feasible_at(&x, 0).unwrap().is_none());
    }

    #[test]
    fn optimizer_agrees_with_admits() {
        for g in [
            fixtures::triangle(),
            fixtures::k4_with_crossing(),
            fixtures::k5_rvr(),
            fixtures::k5_augmented_b(),
            fixtures::b_configuration(),
        ] {
            let admitted = admits_opvr(&g).is_yes();
            let solved = optimize_vertex_complexity(&g).is_ok();
            assert_eq!(admitted, solved);
        }
    }

    #[test]
    fn validator_flags_a_bend_on_a_real_edge() {
        let g = fixtures::triangle();
        let res = optimize_vertex_complexity(&g).unwrap();
        let mut rep = res.rep.clone();
        // find a real segment and put a bogus bend on it
        let s = rep
            .expansion
            .seg_tags
            .iter()
            .position(|t| matches!(t, XSeg::Real(_)))
            .unwrap();
        rep.turns[s].push(Turn::Left);
        let report = validate_orthorep(&rep);
        assert!(report.violations.iter().any(|v| v.contains("real segment")));
    }

    #[test]
    fn validator_accepts_rectangles() {
        // a lone square: the corner identity gives +4 inside and -4 outside
        let g = fixtures::triangle();
        let res = optimize_vertex_complexity(&g).unwrap();
        assert!(validate_orthorep(&res.rep).is_clean());
    }
}
