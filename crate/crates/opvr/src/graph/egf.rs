//! EGF, the toolkit's canonical graph format.
//!
//! An EGF document is JSON with five fields: `nodes`, `segments`, `rotation`,
//! `edges` and `outer_dart`. Ids are zero-based integers. The canonical form
//! sorts every array by id and rotates each rotation list so it starts at
//! its lexicographically smallest `[segment, end]` entry.

use super::{Dart, EmbeddedGraph, NodeKind, SegEnd};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EgfNode {
    pub id: usize,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EgfSegment {
    pub id: usize,
    pub ends: [usize; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EgfEdge {
    pub id: usize,
    pub chain: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EgfDocument {
    pub nodes: Vec<EgfNode>,
    pub segments: Vec<EgfSegment>,
    pub rotation: BTreeMap<String, Vec<[usize; 2]>>,
    pub edges: Vec<EgfEdge>,
    pub outer_dart: [usize; 2],
    /// Optional per-edge color map ("red"/"blue"), written by the partition
    /// command.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<BTreeMap<String, String>>,
    /// Optional tag maps, written when dumping planarized expansions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tags: Option<serde_json::Value>,
}

impl EgfDocument {
    pub fn parse_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("egf serializes")
    }

    pub fn from_graph(g: &EmbeddedGraph) -> Self {
        let nodes = g
            .kinds
            .iter()
            .enumerate()
            .map(|(id, k)| EgfNode {
                id,
                kind: match k {
                    NodeKind::Real => "real".into(),
                    NodeKind::Dummy => "dummy".into(),
                },
            })
            .collect();
        let segments = g
            .topo
            .segs
            .iter()
            .enumerate()
            .map(|(id, &(a, b))| EgfSegment { id, ends: [a, b] })
            .collect();
        let mut rotation = BTreeMap::new();
        for (v, ends) in g.topo.rot.iter().enumerate() {
            let mut list: Vec<[usize; 2]> = ends.iter().map(|se| [se.seg, se.end as usize]).collect();
            // canonical start: lexicographically smallest entry
            if let Some(min_pos) = (0..list.len()).min_by_key(|&i| list[i]) {
                list.rotate_left(min_pos);
            }
            rotation.insert(v.to_string(), list);
        }
        let edges = g
            .edges
            .iter()
            .enumerate()
            .map(|(id, chain)| EgfEdge { id, chain: chain.clone() })
            .collect();
        EgfDocument {
            nodes,
            segments,
            rotation,
            edges,
            outer_dart: [g.outer_dart.seg, usize::from(!g.outer_dart.forward)],
            colors: None,
            tags: None,
        }
    }

    /// Validate the document and build the graph. Rejects non-simple user
    /// input (self-loops, parallel edges or segments).
    pub fn into_graph(self) -> Result<EmbeddedGraph> {
        let g = self.into_graph_unchecked()?;
        g.check_simple()?;
        Ok(g)
    }

    /// Build without the simplicity check; used for dumps of intermediate
    /// multigraphs.
    pub fn into_graph_unchecked(self) -> Result<EmbeddedGraph> {
        let n = self.nodes.len();
        let mut kinds = vec![None; n];
        for node in &self.nodes {
            if node.id >= n {
                return Err(Error::MalformedDocument(format!("node id {} not contiguous", node.id)));
            }
            let k = match node.kind.as_str() {
                "real" => NodeKind::Real,
                "dummy" => NodeKind::Dummy,
                other => return Err(Error::MalformedDocument(format!("unknown node kind {other:?}"))),
            };
            if kinds[node.id].replace(k).is_some() {
                return Err(Error::MalformedDocument(format!("duplicate node id {}", node.id)));
            }
        }
        let kinds: Vec<NodeKind> = kinds
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::MalformedDocument("missing node id".into()))?;

        let m = self.segments.len();
        let mut segs = vec![None; m];
        for seg in &self.segments {
            if seg.id >= m {
                return Err(Error::MalformedDocument(format!("segment id {} not contiguous", seg.id)));
            }
            if segs[seg.id].replace((seg.ends[0], seg.ends[1])).is_some() {
                return Err(Error::MalformedDocument(format!("duplicate segment id {}", seg.id)));
            }
        }
        let segs: Vec<(usize, usize)> = segs
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::MalformedDocument("missing segment id".into()))?;

        let mut rot = vec![Vec::new(); n];
        for (key, list) in &self.rotation {
            let v: usize = key
                .parse()
                .map_err(|_| Error::MalformedDocument(format!("bad rotation key {key:?}")))?;
            if v >= n {
                return Err(Error::MalformedDocument(format!("rotation key {v} out of range")));
            }
            rot[v] = list
                .iter()
                .map(|&[s, e]| {
                    if e > 1 {
                        return Err(Error::MalformedDocument(format!("end index {e} out of range")));
                    }
                    Ok(SegEnd::new(s, e as u8))
                })
                .collect::<Result<_>>()?;
        }

        let ne = self.edges.len();
        let mut edges = vec![None; ne];
        for edge in &self.edges {
            if edge.id >= ne {
                return Err(Error::MalformedDocument(format!("edge id {} not contiguous", edge.id)));
            }
            if edges[edge.id].replace(edge.chain.clone()).is_some() {
                return Err(Error::MalformedDocument(format!("duplicate edge id {}", edge.id)));
            }
        }
        let edges: Vec<Vec<usize>> = edges
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::MalformedDocument("missing edge id".into()))?;

        if self.outer_dart[1] > 1 {
            return Err(Error::MalformedDocument("outer dart direction must be 0 or 1".into()));
        }
        let outer = Dart::new(self.outer_dart[0], self.outer_dart[1] == 0);
        EmbeddedGraph::build(kinds, segs, rot, edges, outer)
    }
}

/// Parse an EGF document from text and validate it as a simple embedded
/// graph.
pub fn parse(text: &str) -> Result<EmbeddedGraph> {
    EgfDocument::parse_str(text)?.into_graph()
}

/// Canonical EGF serialization.
pub fn serialize(g: &EmbeddedGraph) -> String {
    EgfDocument::from_graph(g).to_json()
}
