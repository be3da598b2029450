//! Isomorph-free generation of small graph families.
//!
//! Every generator produces candidate graphs by a simple augmentation and
//! removes duplicates by canonical code. Output is sorted by canonical code
//! and every emitted graph is the canonically labeled representative, so the
//! result does not depend on the number of worker threads.
//!
//! * trees: add a leaf to every tree on `n - 1` vertices;
//! * unicyclic / bicyclic: add one non-edge to every tree / unicyclic graph;
//! * all graphs: add a vertex to every graph on `n - 1` vertices, where the
//!   new vertex has minimum degree in the result (deleting a minimum-degree
//!   vertex from any graph gives a parent, so nothing is missed).

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalCode};
use crate::classify::{classify, GraphClass};
use crate::error::LimitError;
use crate::graph::{bits, low_mask, Graph};

pub const TREE_LIMIT: usize = 12;
pub const SPARSE_LIMIT: usize = 11;
pub const GENERAL_LIMIT: usize = 9;

fn check(what: &'static str, n: usize, limit: usize) -> Result<(), LimitError> {
    if n > limit {
        Err(LimitError { what, n, limit })
    } else {
        Ok(())
    }
}

/// Deduplicates candidates by canonical code, sorted by code.
fn dedup(candidates: Vec<Graph>) -> Vec<Graph> {
    let mut codes: Vec<CanonicalCode> = candidates
        .into_par_iter()
        .map(|g| canonical_form(&g).expect("within canonical size limit"))
        .collect();
    codes.par_sort_unstable();
    codes.dedup();
    codes.into_par_iter().map(|c| c.to_graph()).collect()
}

/// All non-isomorphic trees on `n` vertices (`1 <= n <= 12`).
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, LimitError> {
    check("tree enumeration", n, TREE_LIMIT)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    for k in 2..=n {
        let candidates: Vec<Graph> = level
            .par_iter()
            .flat_map_iter(|t| {
                (0..k - 1).map(move |v| {
                    let mut rows = t.rows().to_vec();
                    rows.push(1 << v);
                    rows[v] |= 1 << (k - 1);
                    Graph::from_adjacency_unchecked(rows)
                })
            })
            .collect();
        level = dedup(candidates);
    }
    Ok(level)
}

fn add_one_edge(parents: &[Graph]) -> Vec<Graph> {
    let candidates: Vec<Graph> = parents
        .par_iter()
        .flat_map_iter(|g| {
            let n = g.n();
            (0..n)
                .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .map(|(u, v)| {
                    let mut h = g.clone();
                    h.insert_edge(u, v);
                    h
                })
        })
        .collect();
    dedup(candidates)
}

/// All non-isomorphic connected unicyclic graphs on `n` vertices.
pub fn enumerate_unicyclic(n: usize) -> Result<Vec<Graph>, LimitError> {
    check("unicyclic enumeration", n, SPARSE_LIMIT)?;
    Ok(add_one_edge(&enumerate_trees(n)?))
}

/// All non-isomorphic connected bicyclic graphs on `n` vertices.
pub fn enumerate_bicyclic(n: usize) -> Result<Vec<Graph>, LimitError> {
    check("bicyclic enumeration", n, SPARSE_LIMIT)?;
    Ok(add_one_edge(&enumerate_unicyclic(n)?))
}

/// Bicyclic graphs tagged with their class.
pub fn enumerate_bicyclic_by_class(n: usize) -> Result<Vec<(Graph, GraphClass)>, LimitError> {
    Ok(enumerate_bicyclic(n)?
        .into_iter()
        .map(|g| {
            let c = classify(&g);
            (g, c)
        })
        .collect())
}

/// All graphs (connected or not) on `0..=n_max` vertices, indexed by vertex
/// count.
pub fn all_graphs_by_order(n_max: usize) -> Result<Vec<Vec<Graph>>, LimitError> {
    check("general graph enumeration", n_max, GENERAL_LIMIT)?;
    let mut levels = vec![vec![Graph::empty(0).expect("empty graph")]];
    for k in 1..=n_max {
        let next = extend_by_vertex(&levels[k - 1]);
        levels.push(next);
    }
    Ok(levels)
}

fn extend_by_vertex(parents: &[Graph]) -> Vec<Graph> {
    let candidates: Vec<Graph> = parents
        .par_iter()
        .flat_map_iter(|p| {
            let k = p.n();
            // below[j]: parent vertices of degree < j.
            let below: Vec<u64> = (0..=k + 1)
                .map(|j| (0..k).filter(|&v| (p.degree(v) as usize) < j).fold(0, |a, v| a | 1 << v))
                .collect();
            (0..1u64 << k).filter_map(move |s| {
                let j = s.count_ones() as usize;
                // Vertices outside s keep their degree and need degree >= j;
                // vertices in s gain one and need degree >= j - 1.
                let ok = below[j] & !s == 0 && (j == 0 || below[j - 1] & s == 0);
                ok.then(|| {
                    let mut rows = p.rows().to_vec();
                    for v in bits(s) {
                        rows[v] |= 1 << k;
                    }
                    rows.push(s);
                    Graph::from_adjacency_unchecked(rows)
                })
            })
        })
        .collect();
    dedup(candidates)
}

/// All non-isomorphic connected graphs on `n` vertices (`n <= 9`).
pub fn enumerate_connected_all(n: usize) -> Result<Vec<Graph>, LimitError> {
    let mut levels = all_graphs_by_order(n)?;
    Ok(levels.swap_remove(n).into_iter().filter(|g| n > 0 && g.is_connected()).collect())
}

/// All non-isomorphic connected graphs with `n` vertices and `m` edges.
///
/// `m` in `{n - 1, n, n + 1}` uses the sparse generators (`n <= 11`), any
/// other `m` filters the general enumeration (`n <= 9`).
pub fn enumerate_connected(n: usize, m: usize) -> Result<Vec<Graph>, LimitError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if m + 1 == n {
        check("connected enumeration", n, SPARSE_LIMIT)?;
        return enumerate_trees(n);
    }
    if m == n {
        return enumerate_unicyclic(n);
    }
    if m == n + 1 {
        return enumerate_bicyclic(n);
    }
    Ok(enumerate_connected_all(n)?.into_iter().filter(|g| g.m() == m).collect())
}

/// Every labeled graph on `n` vertices, one per edge subset.
pub fn labeled_edge_subsets(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let mut rows = vec![0u64; n];
        for b in bits(mask & low_mask(pairs.len())) {
            let (u, v) = pairs[b];
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Graph::from_adjacency_unchecked(rows)
    })
}
