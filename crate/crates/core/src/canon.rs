//! Canonical labeling by individualization-refinement.
//!
//! The search tree starts from the equitable refinement of the unit
//! partition; each node individualizes one vertex of the first non-singleton
//! cell and refines again. Leaves are discrete partitions, i.e. labelings,
//! and the canonical labeling is the one whose adjacency certificate is
//! largest. Automorphisms discovered at equal leaves prune the tree in two
//! ways: children in the same orbit of the pointwise stabilizer of the current
//! path are skipped, and the search jumps back to the common ancestor of the
//! two equivalent leaves.

use std::fmt;

use crate::error::LimitError;
use crate::graph::{bits, Graph};

/// Largest vertex count [`canonical_form`] accepts; the certificate of the
/// strict upper triangle has to fit in 128 bits.
pub const MAX_CANON_VERTICES: usize = 16;

const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Isomorphism certificate: vertex count plus the upper-triangle adjacency
/// bits of the canonically labeled graph, pair `(i, j)`, `i < j`, ordered by
/// `j` then `i`, most significant first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: u8,
    bits: u128,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The certificate as bytes: `n`, then the adjacency bits packed
    /// big-endian and zero-padded to a whole byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.n as usize;
        let len = n * n.saturating_sub(1) / 2;
        let nbytes = len.div_ceil(8);
        let shifted = if len == 0 { 0 } else { self.bits << (nbytes * 8 - len) };
        let mut out = vec![self.n];
        out.extend_from_slice(&shifted.to_be_bytes()[16 - nbytes..]);
        out
    }

    /// The canonically labeled graph this code describes.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let len = n * n.saturating_sub(1) / 2;
        let mut rows = vec![0u64; n];
        let mut k = 0;
        for j in 1..n {
            for row in rows.iter_mut().take(j) {
                if self.bits >> (len - 1 - k) & 1 == 1 {
                    *row |= 1 << j;
                }
                k += 1;
            }
        }
        for j in 0..n {
            for i in bits(rows[j]) {
                rows[i] |= 1 << j;
            }
        }
        Graph::from_adjacency_unchecked(rows)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({}:{:x})", self.n, self.bits)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalCode, LimitError> {
    canonical_labeling(g).map(|(code, _)| code)
}

/// Canonical code and labeling: position `i` of the canonical graph holds
/// vertex `order[i]` of `g`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalCode, Vec<usize>), LimitError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(LimitError { what: "canonical form", n, limit: MAX_CANON_VERTICES });
    }
    if n == 0 {
        return Ok((CanonicalCode { n: 0, bits: 0 }, Vec::new()));
    }
    let mut cells = vec![g.vertex_mask()];
    refine(g, &mut cells, vec![g.vertex_mask()]);
    let mut search = Search {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut path = Vec::with_capacity(n);
    search.descend(&cells, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    Ok((CanonicalCode { n: n as u8, bits: best.cert }, best.order))
}

/// `g` relabeled canonically, together with its code.
pub fn canonical_graph(g: &Graph) -> Result<(CanonicalCode, Graph), LimitError> {
    let (code, order) = canonical_labeling(g)?;
    Ok((code, g.permuted(&order)))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, LimitError> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Refines the ordered partition `cells` (vertex bitsets) to the coarsest
/// equitable partition finer than it, splitting against every set in
/// `queue` and every cell created along the way. Split cells are replaced in
/// place by their parts ordered by increasing neighbor count.
fn refine(g: &Graph, cells: &mut Vec<u64>, mut queue: Vec<u64>) {
    let mut head = 0;
    let mut counts = [0u32; 64];
    while head < queue.len() {
        let splitter = queue[head];
        head += 1;
        let mut c = 0;
        while c < cells.len() {
            let cell = cells[c];
            if cell & (cell - 1) == 0 {
                c += 1;
                continue;
            }
            let (mut lo, mut hi) = (u32::MAX, 0);
            for v in bits(cell) {
                let k = (g.row(v) & splitter).count_ones();
                counts[v] = k;
                lo = lo.min(k);
                hi = hi.max(k);
            }
            if lo == hi {
                c += 1;
                continue;
            }
            let mut parts: Vec<(u32, u64)> = Vec::new();
            for v in bits(cell) {
                match parts.iter_mut().find(|(k, _)| *k == counts[v]) {
                    Some((_, m)) => *m |= 1 << v,
                    None => parts.push((counts[v], 1 << v)),
                }
            }
            parts.sort_unstable_by_key(|&(k, _)| k);
            let added = parts.len();
            cells.splice(c..=c, parts.iter().map(|&(_, m)| m));
            queue.extend(parts.iter().map(|&(_, m)| m));
            c += added;
        }
    }
}

struct Leaf {
    cert: u128,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<u8>>,
}

impl Search<'_> {
    /// Explores the subtree at `cells`; `Some(d)` asks every ancestor deeper
    /// than `d` to abandon its remaining children.
    fn descend(&mut self, cells: &[u64], path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = cells.iter().position(|&c| c & (c - 1) != 0) else {
            return self.leaf(cells, path);
        };
        let depth = path.len();
        let cell = cells[target];
        let mut explored: u64 = 0;
        let mut seen_autos = usize::MAX;
        let mut orbit_of = Vec::new();
        for v in bits(cell) {
            if explored != 0 {
                if seen_autos != self.automorphisms.len() {
                    orbit_of = self.stabilizer_orbits(path);
                    seen_autos = self.automorphisms.len();
                }
                if !orbit_of.is_empty() {
                    let root = orbit_of[v];
                    if bits(explored).any(|w| orbit_of[w] == root) {
                        continue;
                    }
                }
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1u64 << v);
            next.push(cell & !(1u64 << v));
            next.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut next, vec![1u64 << v]);
            path.push(v);
            let jump = self.descend(&next, path);
            path.pop();
            explored |= 1 << v;
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let cert = certificate(self.g, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf { cert, order, path: path.to_vec() };
            self.best = Some(Leaf { cert, order: leaf.order.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().expect("best set with first");
        if cert == first.cert {
            let gamma = mapping(&first.order, &order);
            let level = common_prefix(&first.path, path);
            self.store(gamma);
            return Some(level);
        }
        if cert == best.cert {
            let gamma = mapping(&best.order, &order);
            let level = common_prefix(&best.path, path);
            self.store(gamma);
            return Some(level);
        }
        if cert > best.cert {
            self.best = Some(Leaf { cert, order, path: path.to_vec() });
        }
        None
    }

    fn store(&mut self, gamma: Vec<u8>) {
        if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS
            && gamma.iter().enumerate().any(|(i, &x)| i != x as usize)
        {
            self.automorphisms.push(gamma);
        }
    }

    /// Orbit representatives under the stored automorphisms that fix `path`
    /// pointwise; empty when none apply.
    fn stabilizer_orbits(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&p| gamma[p] as usize != p) {
                continue;
            }
            any = true;
            for (i, &j) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        if !any {
            return Vec::new();
        }
        (0..n).map(|i| find(&mut parent, i)).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The permutation sending `from[i]` to `to[i]`.
fn mapping(from: &[usize], to: &[usize]) -> Vec<u8> {
    let mut gamma = vec![0u8; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b as u8;
    }
    gamma
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn certificate(g: &Graph, order: &[usize]) -> u128 {
    let mut cert = 0u128;
    for j in 1..order.len() {
        let row = g.row(order[j]);
        for &vi in &order[..j] {
            cert = cert << 1 | (row >> vi & 1) as u128;
        }
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::degree_sequence;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(rng);
        g.permuted(&order)
    }

    #[test]
    fn relabeled_path_has_same_code() {
        let p4 = Graph::path(4).unwrap();
        let q = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&p4).unwrap(), canonical_form(&q).unwrap());
        assert_ne!(
            canonical_form(&p4).unwrap(),
            canonical_form(&Graph::star(4).unwrap()).unwrap()
        );
    }

    #[test]
    fn sixteen_labeled_trees_give_two_codes() {
        // Prüfer sequences over {0..3}^2 enumerate all 16 labeled trees.
        let mut codes = HashSet::new();
        let mut trees = 0;
        for a in 0..4 {
            for b in 0..4 {
                codes.insert(canonical_form(&from_pruefer(&[a, b], 4)).unwrap());
                trees += 1;
            }
        }
        assert_eq!(trees, 16);
        assert_eq!(codes.len(), 2);
    }

    fn from_pruefer(code: &[usize], n: usize) -> Graph {
        let mut degree = vec![1usize; n];
        for &c in code {
            degree[c] += 1;
        }
        let mut edges = Vec::new();
        for &c in code {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, c));
            degree[leaf] -= 1;
            degree[c] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn code_reconstructs_canonical_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let g = random_graph(n, 0.4, &mut rng);
            let (code, canon) = canonical_graph(&g).unwrap();
            assert_eq!(code.to_graph(), canon);
            assert_eq!(canonical_form(&canon).unwrap(), code);
            assert_eq!(degree_sequence(&canon), degree_sequence(&g));
            assert_eq!(code.to_bytes()[0] as usize, n);
        }
    }

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..=12);
            let g = random_graph(n, rng.gen_range(0.1..0.9), &mut rng);
            let code = canonical_form(&g).unwrap();
            for _ in 0..3 {
                assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap(), code);
            }
        }
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in [
            Graph::star(16).unwrap(),
            Graph::complete(16).unwrap(),
            Graph::empty(16).unwrap(),
            Graph::cycle(16).unwrap(),
        ] {
            let code = canonical_form(&g).unwrap();
            assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap(), code);
        }
        // Petersen graph and a relabeling.
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        let code = canonical_form(&petersen).unwrap();
        assert_eq!(canonical_form(&shuffled(&petersen, &mut rng)).unwrap(), code);
    }

    #[test]
    fn distinguishes_cospectral_style_pairs() {
        // C6 vs two disjoint triangles: both 2-regular on 6 vertices.
        let c6 = Graph::cycle(6).unwrap();
        let triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&c6, &triangles).unwrap());
    }

    #[test]
    fn size_limit() {
        let g = Graph::empty(17).unwrap();
        assert_eq!(
            canonical_form(&g).unwrap_err(),
            LimitError { what: "canonical form", n: 17, limit: MAX_CANON_VERTICES }
        );
    }
}
