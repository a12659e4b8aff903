//! Crossing augmentation: add the missing cycle edges of every crossing
//! pair, crossing-free, so that the endpoints of each pair induce a K4.

use super::{Dart, EmbeddedGraph, NodeId, SegEnd};
use crate::error::Result;

/// Insert an uncrossed edge (u, v) inside the face left of `anchor`, where
/// the walk of that face passes ...→u via some dart and the darts
/// `u_out` / `v_in` identify the corners to attach at. The new segment end
/// is placed immediately before `at_u` and immediately after `at_v` in the
/// clockwise rotations.
pub fn insert_chord_in_corner(
    g: &mut EmbeddedGraph,
    u: NodeId,
    at_u: SegEnd,
    v: NodeId,
    at_v: SegEnd,
) -> usize {
    let s = g.topo.segs.len();
    g.topo.segs.push((u, v));
    let pos_u = g.topo.rot[u].iter().position(|se| *se == at_u).expect("slot at u");
    g.topo.rot[u].insert(pos_u, SegEnd::new(s, 0));
    let pos_v = g.topo.rot[v].iter().position(|se| *se == at_v).expect("slot at v");
    g.topo.rot[v].insert(pos_v + 1, SegEnd::new(s, 1));
    g.topo.reindex().expect("consistent insertion");
    let e = g.edges.len();
    g.edges.push(vec![s]);
    g.seg_edge.push(e);
    g.refresh_faces();
    e
}

/// Add the missing cycle edges of every crossing pair. Each new edge is
/// drawn inside the quadrant face between the two half-edges it connects,
/// so no new crossing appears. Idempotent.
pub fn crossing_augment(g: &EmbeddedGraph) -> Result<EmbeddedGraph> {
    g.require_one_plane()?;
    let mut out = g.clone();
    let mut dummies: Vec<NodeId> = (0..out.node_count()).filter(|&v| !out.is_real(v)).collect();
    dummies.sort_unstable();
    for p in dummies {
        // quadrants in rotation order; rotations at p are stable across
        // insertions because new edges never touch dummies
        for i in 0..4 {
            let rot_p = out.topo.rot[p].clone();
            let se_i = rot_p[i];
            let se_j = rot_p[(i + 1) % 4];
            let a = out.endpoint_toward(p, se_i);
            let b = out.endpoint_toward(p, se_j);
            if out.edge_between(a, b).is_some() {
                continue;
            }
            // The quadrant face is left of the dart arriving at p through
            // se_i; its walk enters a via ... and leaves along the chain
            // toward p, and leaves p along se_j toward b.
            let d_in_a = toward_dummy_first_dart(&out, p, se_i);
            let d_out_b = away_from_dummy_last_dart(&out, p, se_j);
            // attach at a: before the end that starts the a→p walk
            let at_a = out.topo.tail_end(d_in_a);
            // attach at b: after the end where the p→b walk arrives
            let at_b = out.topo.head_end(d_out_b);
            debug_assert_eq!(out.topo.src(d_in_a), a);
            debug_assert_eq!(out.topo.dst(d_out_b), b);
            insert_chord_in_corner(&mut out, a, at_a, b, at_b);
        }
    }
    debug_assert!(out.check_simple().is_ok());
    Ok(out)
}

/// First dart of the chain walk from the real endpoint toward dummy `p`
/// entering through segment end `se` (1-plane: the chain part is a single
/// segment).
fn toward_dummy_first_dart(g: &EmbeddedGraph, p: NodeId, se: SegEnd) -> Dart {
    let d_away = g.topo.dart_out(se);
    debug_assert!(g.is_real(g.topo.dst(d_away)), "chain part longer than one segment");
    let _ = p;
    d_away.rev()
}

/// Last dart of the walk from `p` out to the real endpoint through `se`.
fn away_from_dummy_last_dart(g: &EmbeddedGraph, p: NodeId, se: SegEnd) -> Dart {
    let d = g.topo.dart_out(se);
    debug_assert_eq!(g.topo.src(d), p);
    debug_assert!(g.is_real(g.topo.dst(d)));
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::config::{detect_configurations, ConfigKind};

    #[test]
    fn augmenting_a_kite_changes_nothing() {
        let g = crate::fixtures::k4_with_crossing();
        let a = crossing_augment(&g).unwrap();
        assert_eq!(a.edge_count(), g.edge_count());
    }

    #[test]
    fn bare_crossing_gains_exactly_four_cycle_edges() {
        let g = crate::fixtures::bare_crossing();
        assert_eq!(g.edge_count(), 2);
        let a = crossing_augment(&g).unwrap();
        assert_eq!(a.edge_count(), 6);
        a.check_simple().unwrap();
        assert!(a.is_one_plane());
        // the pair now forms a kite or augmented B on its endpoints
        let configs = detect_configurations(&a).unwrap();
        assert!(configs
            .iter()
            .any(|c| matches!(c.kind, ConfigKind::Kite | ConfigKind::AugmentedBConfig)));
    }

    #[test]
    fn augmentation_is_idempotent() {
        let g = crate::fixtures::bare_crossing();
        let a = crossing_augment(&g).unwrap();
        let b = crossing_augment(&a).unwrap();
        assert_eq!(a.edge_count(), b.edge_count());
        assert_eq!(a.topo.segs, b.topo.segs);
    }

    #[test]
    fn every_pair_becomes_kite_or_augmented_b() {
        for g in [crate::fixtures::bare_crossing(), crate::fixtures::b_configuration()] {
            let a = crossing_augment(&g).unwrap();
            for pair in a.crossing_pairs().unwrap() {
                let kind = crate::graph::config::pair_kind(&a, &pair).unwrap();
                assert!(matches!(kind, ConfigKind::Kite | ConfigKind::AugmentedBConfig));
            }
        }
    }
}
