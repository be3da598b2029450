//! Branch-transformation: detach a hanging tree from a vertex of degree at
//! least three and hang it from a pendant vertex elsewhere.
//!
//! Only the degrees of the two endpoints change (`u` loses one, `v` goes from
//! one to two), so the change in `irr_t` is a function of the degree sequence:
//! `-2 (r + 1)` with `r` the number of vertices `w` with `2 <= d(w) < d(u)`.

use serde::Serialize;

use crate::error::TransformError;
use crate::graph::{bits, Graph};
use crate::indices::total_irregularity;

/// Induced subtree joined to the rest of the graph by the single edge
/// `root_attachment - bridge_endpoint`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HangingTree {
    pub root_attachment: usize,
    pub bridge_endpoint: usize,
    #[serde(serialize_with = "serialize_mask")]
    pub subtree: u64,
}

impl HangingTree {
    pub fn len(&self) -> usize {
        self.subtree.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.subtree == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.subtree >> v & 1 == 1
    }

    pub fn vertices(&self) -> Vec<usize> {
        bits(self.subtree).collect()
    }
}

fn serialize_mask<S: serde::Serializer>(mask: &u64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(bits(*mask))
}

/// One applied branch-transformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformStep {
    pub source: usize,
    pub target: usize,
    pub moved: HangingTree,
    /// `irr_t(after) - irr_t(before)`, measured.
    pub delta: i64,
}

/// All maximal hanging trees whose bridge edge is incident to `u`, ordered by
/// the index of the bridge endpoint.
pub fn hanging_trees_at(g: &Graph, u: usize) -> Result<Vec<HangingTree>, TransformError> {
    g.check_vertex(u)?;
    if !g.is_connected() {
        return Err(TransformError::Disconnected);
    }
    Ok(g.neighbors(u)
        .filter_map(|w| {
            let side = g.reachable_from(w, 1 << u);
            let single_bridge = g.row(u) & side == 1 << w;
            let is_tree = g.edges_within(side) + 1 == side.count_ones() as usize;
            (single_bridge && is_tree).then_some(HangingTree {
                root_attachment: u,
                bridge_endpoint: w,
                subtree: side,
            })
        })
        .collect())
}

fn pendant_mask(g: &Graph) -> u64 {
    (0..g.n())
        .filter(|&v| g.degree(v) == 1)
        .fold(0, |acc, v| acc | 1 << v)
}

/// `-2 (r + 1)` where `r = |{w : 2 <= d(w) < d(u)}|`.
pub fn predicted_delta(g: &Graph, u: usize) -> Result<i64, TransformError> {
    g.check_vertex(u)?;
    let du = g.degree(u);
    if du < 3 {
        return Err(TransformError::DegreeTooSmall { vertex: u, degree: du });
    }
    let r = g.degrees().iter().filter(|&&d| (2..du).contains(&d)).count() as i64;
    Ok(-2 * (r + 1))
}

/// Moves `t` from `u` to the pendant vertex `v`.
pub fn branch_transform(
    g: &Graph,
    u: usize,
    v: usize,
    t: &HangingTree,
) -> Result<Graph, TransformError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let du = g.degree(u);
    if du < 3 {
        return Err(TransformError::DegreeTooSmall { vertex: u, degree: du });
    }
    let pendants = pendant_mask(g).count_ones() as usize;
    if pendants < 2 {
        return Err(TransformError::TooFewPendants { pendants });
    }
    if g.degree(v) != 1 {
        return Err(TransformError::TargetNotPendant { vertex: v, degree: g.degree(v) });
    }
    if t.contains(v) {
        return Err(TransformError::TargetInsideSubtree { vertex: v });
    }
    if t.root_attachment != u || !hanging_trees_at(g, u)?.contains(t) {
        return Err(TransformError::NotAHangingTree { vertex: u });
    }
    let mut out = g.clone();
    out.remove_edge(u, t.bridge_endpoint);
    out.insert_edge(v, t.bridge_endpoint);
    Ok(out)
}

/// Every `(u, v, T)` on which a branch-transformation is allowed.
pub fn valid_moves(g: &Graph) -> Result<Vec<(usize, usize, HangingTree)>, TransformError> {
    let pendants = pendant_mask(g);
    let mut out = Vec::new();
    if pendants.count_ones() < 2 {
        return Ok(out);
    }
    for u in (0..g.n()).filter(|&u| g.degree(u) >= 3) {
        for t in hanging_trees_at(g, u)? {
            for v in bits(pendants & !t.subtree) {
                out.push((u, v, t.clone()));
            }
        }
    }
    Ok(out)
}

/// The move `reduce_to_minimum` takes next: `u` of largest degree (lowest
/// index first), then the smallest hanging tree at `u` (lowest bridge endpoint
/// first), then the lowest-indexed pendant outside it.
pub fn next_move(g: &Graph) -> Result<Option<(usize, usize, HangingTree)>, TransformError> {
    let pendants = pendant_mask(g);
    if pendants.count_ones() < 2 {
        return Ok(None);
    }
    let mut sources: Vec<usize> = (0..g.n()).filter(|&u| g.degree(u) >= 3).collect();
    sources.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));
    for u in sources {
        let mut trees = hanging_trees_at(g, u)?;
        trees.sort_by_key(|t| (t.len(), t.bridge_endpoint));
        for t in trees {
            if let Some(v) = bits(pendants & !t.subtree).next() {
                return Ok(Some((u, v, t)));
            }
        }
    }
    Ok(None)
}

/// Applies branch-transformations until none is possible. Every step lowers
/// the pendant count by one, so at most `n` steps are taken.
pub fn reduce_to_minimum(g: &Graph) -> Result<(Graph, Vec<TransformStep>), TransformError> {
    if !g.is_connected() {
        return Err(TransformError::Disconnected);
    }
    let mut current = g.clone();
    let mut current_irr = total_irregularity(&current) as i64;
    let mut steps = Vec::new();
    while let Some((u, v, t)) = next_move(&current)? {
        let next = branch_transform(&current, u, v, &t)?;
        let next_irr = total_irregularity(&next) as i64;
        steps.push(TransformStep {
            source: u,
            target: v,
            moved: t,
            delta: next_irr - current_irr,
        });
        current = next;
        current_irr = next_irr;
    }
    Ok((current, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::make_infinity;
    use crate::indices::degree_sequence;

    /// u = 0 with leaves a = 1, b = 2 and path 0 - 3 - 4.
    fn t_shape() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    fn bowtie_leaf() -> Graph {
        let mut edges: Vec<_> = make_infinity(3, 3, 1).unwrap().edges().collect();
        edges.push((0, 5));
        Graph::from_edges(6, &edges).unwrap()
    }

    #[test]
    fn hanging_tree_examples() {
        let star = Graph::star(4).unwrap();
        let trees = hanging_trees_at(&star, 0).unwrap();
        assert_eq!(trees.len(), 3);
        assert!(trees.iter().all(|t| t.len() == 1));

        let c5 = Graph::cycle(5).unwrap();
        for u in 0..5 {
            assert!(hanging_trees_at(&c5, u).unwrap().is_empty());
        }

        let g = bowtie_leaf();
        assert_eq!(degree_sequence(&g).as_slice(), &[5, 2, 2, 2, 2, 1]);
        let trees = hanging_trees_at(&g, 0).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].vertices(), vec![5]);

        assert!(matches!(
            hanging_trees_at(&g, 9),
            Err(TransformError::Graph(_))
        ));
    }

    #[test]
    fn t_shape_becomes_path() {
        let g = t_shape();
        assert_eq!(total_irregularity(&g), 10);
        let t = hanging_trees_at(&g, 0).unwrap().remove(0);
        assert_eq!(t.vertices(), vec![1]);
        let h = branch_transform(&g, 0, 4, &t).unwrap();
        assert_eq!(degree_sequence(&h).as_slice(), &[2, 2, 2, 1, 1]);
        assert_eq!(total_irregularity(&h), 6);
        assert_eq!(predicted_delta(&g, 0).unwrap(), -4);
    }

    #[test]
    fn star_leaf_move() {
        let g = Graph::star(4).unwrap();
        let t = hanging_trees_at(&g, 0).unwrap().remove(0);
        let h = branch_transform(&g, 0, 2, &t).unwrap();
        assert_eq!(degree_sequence(&h).as_slice(), &[2, 2, 1, 1]);
        assert_eq!(total_irregularity(&h), 4);
        assert_eq!(predicted_delta(&g, 0).unwrap(), -2);
    }

    #[test]
    fn predicted_delta_on_larger_sequence() {
        // A realization of (4,3,2,2,1,1,1); vertex 0 has degree 4.
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (3, 6)])
            .unwrap();
        assert_eq!(degree_sequence(&g).as_slice(), &[4, 3, 2, 2, 1, 1, 1]);
        assert_eq!(predicted_delta(&g, 0).unwrap(), -8);
        let t = hanging_trees_at(&g, 0).unwrap().remove(0);
        let target = (0..7).find(|&v| g.degree(v) == 1 && !t.contains(v)).unwrap();
        let h = branch_transform(&g, 0, target, &t).unwrap();
        assert_eq!(
            total_irregularity(&h) as i64 - total_irregularity(&g) as i64,
            -8
        );
    }

    #[test]
    fn preconditions_are_reported_distinctly() {
        let g = t_shape();
        let leaf = hanging_trees_at(&g, 0).unwrap().remove(0);
        let tail = hanging_trees_at(&g, 3).unwrap().remove(0);
        assert_eq!(
            branch_transform(&g, 3, 1, &tail),
            Err(TransformError::DegreeTooSmall { vertex: 3, degree: 2 })
        );
        assert_eq!(
            branch_transform(&g, 0, 3, &leaf),
            Err(TransformError::TargetNotPendant { vertex: 3, degree: 2 })
        );
        assert_eq!(
            branch_transform(&g, 0, 1, &leaf),
            Err(TransformError::TargetInsideSubtree { vertex: 1 })
        );
        let fake = HangingTree { root_attachment: 0, bridge_endpoint: 3, subtree: 0b01000 };
        assert_eq!(
            branch_transform(&g, 0, 4, &fake),
            Err(TransformError::NotAHangingTree { vertex: 0 })
        );

        let g = bowtie_leaf();
        let t = hanging_trees_at(&g, 0).unwrap().remove(0);
        for v in 0..6 {
            assert_eq!(
                branch_transform(&g, 0, v, &t),
                Err(TransformError::TooFewPendants { pendants: 1 })
            );
        }
        assert!(valid_moves(&g).unwrap().is_empty());
        assert_eq!(predicted_delta(&Graph::path(3).unwrap(), 1).unwrap_err(),
            TransformError::DegreeTooSmall { vertex: 1, degree: 2 });
    }

    #[test]
    fn path_is_already_reduced() {
        let p = Graph::path(7).unwrap();
        let (h, steps) = reduce_to_minimum(&p).unwrap();
        assert!(steps.is_empty());
        assert_eq!(h, p);
    }

    #[test]
    fn unicyclic_one_step() {
        // C5 with pendants on vertices 0 and 2: (3,3,2,2,2,1,1).
        let g = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (2, 6)],
        )
        .unwrap();
        let (h, steps) = reduce_to_minimum(&g).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(degree_sequence(&h).as_slice(), &[3, 2, 2, 2, 2, 2, 1]);
        assert_eq!(steps[0].delta, predicted_delta(&g, steps[0].source).unwrap());
    }

    #[test]
    fn spider_reduces_to_path() {
        let g = Graph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (5, 6), (2, 7)],
        )
        .unwrap();
        let (h, steps) = reduce_to_minimum(&g).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(total_irregularity(&h), 2 * 8 - 4);
        assert!(h.is_connected());
        assert!(steps.iter().all(|s| s.delta < 0));
    }
}
