//! Structural classification: trees, unicyclic graphs and the three kinds of
//! bicyclic graphs, decided on the 2-core.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{bits, Graph};

/// Which bicyclic core a graph has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BicyclicKind {
    /// Two cycles sharing exactly one vertex.
    InfinityL1,
    /// Two vertex-disjoint cycles joined by a path with at least two vertices.
    InfinityL2plus,
    /// Two cycles sharing a path with at least two vertices.
    Theta,
}

/// Cycle lengths `p <= q` and overlap/bridge parameter `l` of a bicyclic core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoreParams {
    pub p: usize,
    pub q: usize,
    pub l: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    Tree,
    Unicyclic,
    Bicyclic { kind: BicyclicKind, params: CoreParams },
    /// Anything else. `disconnected` marks inputs that fail connectivity.
    Other { disconnected: bool },
}

impl GraphClass {
    pub fn bicyclic_kind(&self) -> Option<BicyclicKind> {
        match self {
            GraphClass::Bicyclic { kind, .. } => Some(*kind),
            _ => None,
        }
    }
}

/// Vertices of the 2-core as a bitset: what survives repeatedly deleting
/// vertices of degree at most one.
pub fn two_core_vertices(g: &Graph) -> u64 {
    let mut alive = g.vertex_mask();
    loop {
        let peel = bits(alive)
            .filter(|&v| (g.row(v) & alive).count_ones() <= 1)
            .fold(0u64, |acc, v| acc | 1 << v);
        if peel == 0 {
            return alive;
        }
        alive &= !peel;
    }
}

/// The 2-core as a graph, relabeled in increasing order of the original
/// vertex indices. Empty for forests.
pub fn two_core(g: &Graph) -> Graph {
    let verts: Vec<usize> = bits(two_core_vertices(g)).collect();
    g.induced(&verts)
}

/// True when `g` has at least three vertices, is connected and has no cut
/// vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return false;
    }
    (0..n).all(|v| {
        let rest = g.vertex_mask() & !(1 << v);
        let start = rest.trailing_zeros() as usize;
        g.reachable_from(start, 1 << v) == rest
    })
}

pub fn classify(g: &Graph) -> GraphClass {
    let n = g.n();
    if n == 0 {
        return GraphClass::Other { disconnected: false };
    }
    if !g.is_connected() {
        return GraphClass::Other { disconnected: true };
    }
    match g.m() as isize - n as isize {
        -1 => GraphClass::Tree,
        0 => GraphClass::Unicyclic,
        1 => classify_bicyclic(g),
        _ => GraphClass::Other { disconnected: false },
    }
}

fn classify_bicyclic(g: &Graph) -> GraphClass {
    let core_mask = two_core_vertices(g);
    let core = two_core(g);
    let degree4: Vec<usize> = (0..core.n()).filter(|&v| core.degree(v) == 4).collect();
    if let Some(&c) = degree4.first() {
        // Removing the shared vertex leaves the two cycles as paths.
        let rest = core.vertex_mask() & !(1 << c);
        let first = core.reachable_from(rest.trailing_zeros() as usize, 1 << c);
        let a = first.count_ones() as usize;
        let b = (rest & !first).count_ones() as usize;
        let (p, q) = (a.min(b) + 1, a.max(b) + 1);
        return GraphClass::Bicyclic {
            kind: BicyclicKind::InfinityL1,
            params: CoreParams { p, q, l: 1 },
        };
    }
    let branch: Vec<usize> = (0..core.n()).filter(|&v| core.degree(v) == 3).collect();
    assert_eq!(
        branch.len(),
        2,
        "bicyclic 2-core must have one degree-4 or two degree-3 vertices (core {core_mask:#x})"
    );
    let (x, y) = (branch[0], branch[1]);
    if is_biconnected(&core) {
        let mut arcs: Vec<usize> = walk_arcs(&core, x).into_iter().map(|(_, len)| len).collect();
        arcs.sort_unstable();
        let (a, b, c) = (arcs[0], arcs[1], arcs[2]);
        GraphClass::Bicyclic {
            kind: BicyclicKind::Theta,
            params: CoreParams { p: a + b, q: a + c, l: a + 1 },
        }
    } else {
        let loop_len = |from: usize| {
            walk_arcs(&core, from)
                .into_iter()
                .find(|&(end, _)| end == from)
                .map(|(_, len)| len)
                .expect("cycle through branch vertex")
        };
        let bridge = walk_arcs(&core, x)
            .into_iter()
            .find(|&(end, _)| end == y)
            .map(|(_, len)| len)
            .expect("path between branch vertices");
        let (a, b) = (loop_len(x), loop_len(y));
        GraphClass::Bicyclic {
            kind: BicyclicKind::InfinityL2plus,
            params: CoreParams { p: a.min(b), q: a.max(b), l: bridge + 1 },
        }
    }
}

/// Follows each edge out of `from` along degree-2 vertices until a vertex of
/// another degree is hit; returns `(endpoint, edge count)` per direction.
fn walk_arcs(core: &Graph, from: usize) -> Vec<(usize, usize)> {
    core.neighbors(from)
        .map(|first| {
            let (mut prev, mut cur, mut len) = (from, first, 1);
            while core.degree(cur) == 2 {
                let next = core
                    .neighbors(cur)
                    .find(|&w| w != prev)
                    .expect("degree-2 vertex has a second neighbor");
                prev = cur;
                cur = next;
                len += 1;
            }
            (cur, len)
        })
        .collect()
}

/// Two cycles `C_p`, `C_q` joined by a path on `l` vertices (`l = 1`
/// identifies one vertex of each cycle). Has `p + q + l - 2` vertices.
pub fn make_infinity(p: usize, q: usize, l: usize) -> Result<Graph, GraphError> {
    if p < 3 || q < 3 || l < 1 {
        return Err(GraphError::InvalidParameters(format!(
            "infinity graph needs p, q >= 3 and l >= 1, got ({p}, {q}, {l})"
        )));
    }
    let n = p + q + l - 2;
    let mut edges = Vec::with_capacity(n + 1);
    edges.extend((0..p).map(|i| (i, (i + 1) % p)));
    // Path 0 = a_0, a_1, ..., a_{l-1}; a_{l-1} is the attachment of C_q.
    let mut last = 0;
    for k in 1..l {
        let next = p + k - 1;
        edges.push((last, next));
        last = next;
    }
    let base = p + l - 1;
    let mut ring = vec![last];
    ring.extend(base..base + q - 1);
    edges.extend((0..q).map(|i| (ring[i], ring[(i + 1) % q])));
    Graph::from_edges(n, &edges)
}

/// Two cycles `C_p`, `C_q` sharing a path on `l` vertices. Has `p + q - l`
/// vertices; requires `2 <= l <= min(p, q) - 1`.
pub fn make_theta(p: usize, q: usize, l: usize) -> Result<Graph, GraphError> {
    if p < 3 || q < 3 || l < 2 || l + 1 > p.min(q) {
        return Err(GraphError::InvalidParameters(format!(
            "theta graph needs p, q >= 3 and 2 <= l <= min(p, q) - 1, got ({p}, {q}, {l})"
        )));
    }
    let n = p + q - l;
    let mut edges = Vec::with_capacity(n + 1);
    // Shared path z_0 .. z_{l-1} on vertices 0..l.
    edges.extend((1..l).map(|i| (i - 1, i)));
    let mut next = l;
    for extra in [p - l, q - l] {
        let mut prev = 0;
        for _ in 0..extra {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, l - 1));
    }
    Graph::from_edges(n, &edges)
}

/// Parameters `classify` reports for `make_theta(p, q, l)`: the same graph
/// can be written with any of its three branch paths as the shared one, and
/// the shortest is reported as shared.
pub fn normalized_theta_params(p: usize, q: usize, l: usize) -> CoreParams {
    let mut arcs = [l - 1, p - l + 1, q - l + 1];
    arcs.sort_unstable();
    let [a, b, c] = arcs;
    CoreParams { p: a + b, q: a + c, l: a + 1 }
}
