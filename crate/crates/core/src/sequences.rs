//! Degree-sequence analytics: Erdős–Gallai graphicality, connected
//! realizability, Havel–Hakimi realization with connectivity repair, and
//! constrained enumeration.
//!
//! `irr_t` depends on the degree sequence alone, so minima over a family of
//! connected graphs with fixed `(n, m)` can be found by scanning sequences
//! instead of graphs.

use serde::{Deserialize, Serialize};

use crate::error::SequenceError;
use crate::graph::{bits, Graph};
use crate::indices::{irr_t_of_sorted, DegreeSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Graphicality {
    Graphical,
    /// The Erdős–Gallai inequality fails at prefix length `k`.
    NotGraphical { k: usize },
    OddSum,
}

pub fn graphicality(d: &DegreeSequence) -> Graphicality {
    graphicality_sorted(d.as_slice())
}

fn graphicality_sorted(d: &[u32]) -> Graphicality {
    let n = d.len();
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    if total % 2 == 1 {
        return Graphicality::OddSum;
    }
    let mut prefix = 0u64;
    for k in 1..=n {
        prefix += d[k - 1] as u64;
        let kk = k as u64;
        let tail: u64 = d[k..].iter().map(|&x| (x as u64).min(kk)).sum();
        if prefix > kk * (kk - 1) + tail {
            return Graphicality::NotGraphical { k };
        }
    }
    Graphicality::Graphical
}

pub fn is_graphical(d: &DegreeSequence) -> bool {
    graphicality(d) == Graphicality::Graphical
}

/// Graphical, no isolated vertex and at least `n - 1` edges. The single
/// vertex `(0)` also counts as connected.
pub fn has_connected_realization(d: &DegreeSequence) -> bool {
    connected_realizable_sorted(d.as_slice())
}

fn connected_realizable_sorted(d: &[u32]) -> bool {
    let n = d.len();
    match n {
        0 => false,
        1 => d[0] == 0,
        _ => {
            let total: u64 = d.iter().map(|&x| x as u64).sum();
            d[n - 1] >= 1
                && total >= 2 * (n as u64 - 1)
                && graphicality_sorted(d) == Graphicality::Graphical
        }
    }
}

/// A connected graph whose vertex `i` has degree `d[i]`.
///
/// Havel–Hakimi (largest remaining degree first) followed by 2-swaps that
/// trade a cycle edge `ab` of one component and any edge `cd` of another for
/// `ac` and `bd`, each swap merging two components.
pub fn realize_connected(d: &DegreeSequence) -> Result<Graph, SequenceError> {
    if !has_connected_realization(d) {
        return Err(SequenceError::NotConnectedRealizable);
    }
    let n = d.len();
    let mut g = Graph::empty(n).map_err(|e| SequenceError::InconsistentConstraint(e.to_string()))?;
    let mut residual: Vec<u32> = d.as_slice().to_vec();
    loop {
        let mut order: Vec<usize> = (0..n).filter(|&v| residual[v] > 0).collect();
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&v| (std::cmp::Reverse(residual[v]), v));
        let v = order[0];
        let need = residual[v] as usize;
        if need > order.len() - 1 {
            return Err(SequenceError::NotConnectedRealizable);
        }
        for &w in &order[1..=need] {
            g.insert_edge(v, w);
            residual[w] -= 1;
        }
        residual[v] = 0;
    }

    let limit = n * g.m();
    let mut swaps = 0;
    loop {
        let comps = g.components();
        if comps.len() <= 1 {
            break;
        }
        if swaps >= limit {
            return Err(SequenceError::RepairLimitExceeded { limit });
        }
        let cyclic = comps
            .iter()
            .position(|&c| g.edges_within(c) >= c.count_ones() as usize)
            .ok_or(SequenceError::NotConnectedRealizable)?;
        let (a, b) = cycle_edge(&g, comps[cyclic]).expect("component with a cycle has a cycle edge");
        let other = comps[if cyclic == 0 { 1 } else { 0 }];
        let c = bits(other).find(|&v| g.row(v) != 0).ok_or(SequenceError::NotConnectedRealizable)?;
        let dd = g.neighbors(c).next().expect("non-isolated vertex");
        g.remove_edge(a, b);
        g.remove_edge(c, dd);
        g.insert_edge(a, c);
        g.insert_edge(b, dd);
        swaps += 1;
    }
    Ok(g)
}

/// Some edge inside `comp` whose removal keeps its endpoints connected.
fn cycle_edge(g: &Graph, comp: u64) -> Option<(usize, usize)> {
    let mut h = g.clone();
    for a in bits(comp) {
        for b in bits(g.row(a) & !((1u64 << a) | ((1u64 << a) - 1))) {
            h.remove_edge(a, b);
            let ok = h.reachable_from(a, 0) >> b & 1 == 1;
            h.insert_edge(a, b);
            if ok {
                return Some((a, b));
            }
        }
    }
    None
}

/// Constraints for [`enumerate_sequences`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFamilyConstraint {
    pub n: usize,
    pub m: usize,
    pub min_degree: u32,
    pub require_connected_realizable: bool,
    pub forbidden_sequences: Vec<DegreeSequence>,
}

impl SequenceFamilyConstraint {
    /// Connected graphs on `n` vertices with `m` edges.
    pub fn connected(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            min_degree: if n > 1 { 1 } else { 0 },
            require_connected_realizable: true,
            forbidden_sequences: Vec::new(),
        }
    }

    fn validate(&self) -> Result<(), SequenceError> {
        if self.n == 0 {
            return Err(SequenceError::InconsistentConstraint("n must be positive".into()));
        }
        if self.forbidden_sequences.iter().any(|f| f.len() != self.n) {
            return Err(SequenceError::InconsistentConstraint(
                "forbidden sequence of the wrong length".into(),
            ));
        }
        Ok(())
    }

    /// Possible leading (largest) degrees, in decreasing order. Each one
    /// defines an independent slice of the enumeration.
    pub fn leading_degrees(&self) -> Vec<u32> {
        let top = (self.n as u32).saturating_sub(1).min(2 * self.m as u32);
        (self.min_degree..=top).rev().collect()
    }
}

/// Every graphical non-increasing sequence meeting `c`, in lexicographically
/// decreasing order.
pub fn enumerate_sequences(
    c: &SequenceFamilyConstraint,
) -> Result<impl Iterator<Item = DegreeSequence>, SequenceError> {
    c.validate()?;
    let mut out = Vec::new();
    for lead in c.leading_degrees() {
        out.extend(sequences_with_leading(c, lead));
    }
    Ok(out.into_iter())
}

/// The slice of [`enumerate_sequences`] whose first entry is `lead`.
pub fn sequences_with_leading(c: &SequenceFamilyConstraint, lead: u32) -> Vec<DegreeSequence> {
    let mut out = Vec::new();
    let total = 2 * c.m as u64;
    if c.n == 0 || (lead as u64) > total || lead < c.min_degree {
        return out;
    }
    let mut buf = vec![0u32; c.n];
    buf[0] = lead;
    fill(c, &mut buf, 1, total - lead as u64, &mut out);
    out
}

fn fill(
    c: &SequenceFamilyConstraint,
    buf: &mut Vec<u32>,
    pos: usize,
    remaining: u64,
    out: &mut Vec<DegreeSequence>,
) {
    let n = c.n;
    if pos == n {
        if remaining == 0 && accept(c, buf) {
            out.push(DegreeSequence::new(buf.clone()).expect("built non-increasing"));
        }
        return;
    }
    let slots = (n - pos) as u64;
    let cap = buf[pos - 1];
    for x in (c.min_degree..=cap).rev() {
        let x64 = x as u64;
        if x64 > remaining {
            continue;
        }
        let rest = remaining - x64;
        let after = slots - 1;
        if rest > after * x64 {
            // Larger x only helps the upper bound; smaller values cannot fit.
            break;
        }
        if rest < after * c.min_degree as u64 {
            continue;
        }
        buf[pos] = x;
        fill(c, buf, pos + 1, rest, out);
    }
}

fn accept(c: &SequenceFamilyConstraint, d: &[u32]) -> bool {
    let ok = if c.require_connected_realizable {
        connected_realizable_sorted(d)
    } else {
        graphicality_sorted(d) == Graphicality::Graphical
    };
    ok && !c.forbidden_sequences.iter().any(|f| f.as_slice() == d)
}

/// All non-constant connected-realizable sequences of length `n` (any edge
/// count) with `irr_t <= cutoff`, in lexicographically decreasing order.
///
/// Prefixes are pruned with the bound
/// `irr_t >= P_k + (n - k) * sum_{i <= k} (d_i - d_k)`, where `P_k` is the
/// contribution of pairs inside the prefix: every later entry is at most
/// `d_k`.
pub fn nonconstant_sequences_up_to(n: usize, cutoff: u64) -> Vec<(DegreeSequence, u64)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut buf = vec![0u32; n];
    for lead in (1..n as u32).rev() {
        buf[0] = lead;
        bounded_fill(n, cutoff, &mut buf, 1, 0, lead as u64, &mut out);
    }
    out
}

fn bounded_fill(
    n: usize,
    cutoff: u64,
    buf: &mut Vec<u32>,
    pos: usize,
    pairs: u64,
    sum: u64,
    out: &mut Vec<(DegreeSequence, u64)>,
) {
    if pos == n {
        if buf[0] != buf[n - 1] && connected_realizable_sorted(buf) {
            debug_assert_eq!(pairs, irr_t_of_sorted(buf));
            out.push((DegreeSequence::new(buf.clone()).expect("sorted"), pairs));
        }
        return;
    }
    for x in (1..=buf[pos - 1]).rev() {
        let x64 = x as u64;
        let k = pos as u64;
        let new_pairs = pairs + sum - k * x64;
        let new_sum = sum + x64;
        let bound = new_pairs + (n as u64 - k - 1) * (new_sum - (k + 1) * x64);
        if bound > cutoff {
            // Smaller x only increases the bound.
            break;
        }
        buf[pos] = x;
        bounded_fill(n, cutoff, buf, pos + 1, new_pairs, new_sum, out);
    }
}
