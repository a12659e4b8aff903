//! Connectivity checks on the abstract graph (real vertices and original
//! edges, crossings ignored).

use super::EmbeddedGraph;

fn adjacency(g: &EmbeddedGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut adj = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        let (u, v) = g.edge_ends(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn real_vertices(g: &EmbeddedGraph) -> Vec<usize> {
    (0..g.node_count()).filter(|&v| g.is_real(v)).collect()
}

fn connected_avoiding(adj: &[Vec<usize>], verts: &[usize], banned: &[usize]) -> bool {
    let alive: Vec<usize> = verts.iter().copied().filter(|v| !banned.contains(v)).collect();
    if alive.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    for &b in banned {
        seen[b] = true;
    }
    let mut stack = vec![alive[0]];
    seen[alive[0]] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == alive.len()
}

pub fn is_connected_abstract(g: &EmbeddedGraph) -> bool {
    connected_avoiding(&adjacency(g), &real_vertices(g), &[])
}

pub fn is_biconnected(g: &EmbeddedGraph) -> bool {
    let adj = adjacency(g);
    let verts = real_vertices(g);
    if verts.len() < 3 {
        return false;
    }
    verts.iter().all(|&v| connected_avoiding(&adj, &verts, &[v]))
}

pub fn is_triconnected(g: &EmbeddedGraph) -> bool {
    let adj = adjacency(g);
    let verts = real_vertices(g);
    if verts.len() < 4 {
        return false;
    }
    if !verts.iter().all(|&v| connected_avoiding(&adj, &verts, &[v])) {
        return false;
    }
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if !connected_avoiding(&adj, &verts, &[verts[i], verts[j]]) {
                return false;
            }
        }
    }
    true
}
