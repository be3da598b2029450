//! Irregularity indices and degree-sequence statistics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SequenceError;
use crate::graph::Graph;

/// Degrees sorted non-increasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    /// Wraps `degrees`, which must already be non-increasing.
    pub fn new(degrees: Vec<u32>) -> Result<Self, SequenceError> {
        if let Some(i) = degrees.windows(2).position(|w| w[0] < w[1]) {
            return Err(SequenceError::NotSorted { position: i + 1 });
        }
        Ok(Self(degrees))
    }

    /// Sorts `degrees` non-increasingly.
    pub fn from_unsorted(mut degrees: Vec<u32>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self(degrees)
    }

    /// Builds a sequence from `(degree, multiplicity)` runs, e.g.
    /// `[(3, 1), (2, 4), (1, 3)]` for `(3, 2^4, 1^3)`.
    pub fn from_runs(runs: &[(u32, usize)]) -> Result<Self, SequenceError> {
        Self::new(
            runs.iter()
                .flat_map(|&(d, k)| std::iter::repeat_n(d, k))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// True when all entries are equal (the sequence of a regular graph).
    pub fn is_constant(&self) -> bool {
        self.0.first() == self.0.last()
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl TryFrom<Vec<u32>> for DegreeSequence {
    type Error = SequenceError;

    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(d: DegreeSequence) -> Self {
        d.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// `irr_t(G) = 1/2 * sum over ordered pairs |d(u) - d(v)|`, computed pairwise.
pub fn total_irregularity(g: &Graph) -> u64 {
    let d = g.degrees();
    let mut total = 0u64;
    for (i, &a) in d.iter().enumerate() {
        for &b in &d[i + 1..] {
            total += a.abs_diff(b) as u64;
        }
    }
    total
}

/// Albertson's irregularity: `sum over edges uv of |d(u) - d(v)|`.
pub fn edge_irregularity(g: &Graph) -> u64 {
    g.edges()
        .map(|(u, v)| g.degree(u).abs_diff(g.degree(v)) as u64)
        .sum()
}

pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    DegreeSequence::from_unsorted(g.degrees().to_vec())
}

/// `irr_t` from a sorted sequence in one pass: `sum_i (n + 1 - 2i) * d_i`.
///
/// In a non-increasing sequence `d_i` is counted positively against the
/// `n - i` later entries and negatively against the `i - 1` earlier ones.
pub fn irr_t_of_sequence(d: &DegreeSequence) -> u64 {
    irr_t_of_sorted(d.as_slice())
}

pub(crate) fn irr_t_of_sorted(d: &[u32]) -> u64 {
    let n = d.len() as i64;
    let total: i64 = d
        .iter()
        .enumerate()
        .map(|(i, &x)| (n - 1 - 2 * i as i64) * x as i64)
        .sum();
    debug_assert!(total >= 0);
    total as u64
}

/// Counts over a degree sequence used by the transformation arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// Vertices of degree at least 3.
    pub s: usize,
    /// Pendant vertices.
    pub h: usize,
    /// Vertices of maximum degree.
    pub t: usize,
    pub max_degree: u32,
    pub degree_two: usize,
    pub isolated: usize,
    /// Vertices `w` with `2 <= d(w) < d(u)` for the reference degree `d(u)`.
    pub r: Option<usize>,
}

pub fn degree_profile(
    d: &DegreeSequence,
    u_degree: Option<u32>,
) -> Result<DegreeProfile, SequenceError> {
    if let Some(du) = u_degree {
        if du < 3 {
            return Err(SequenceError::DegreeTooSmall { degree: du });
        }
    }
    let max_degree = d.max().unwrap_or(0);
    let count = |f: &dyn Fn(u32) -> bool| d.as_slice().iter().filter(|&&x| f(x)).count();
    Ok(DegreeProfile {
        s: count(&|x| x >= 3),
        h: count(&|x| x == 1),
        t: if d.is_empty() { 0 } else { count(&|x| x == max_degree) },
        max_degree,
        degree_two: count(&|x| x == 2),
        isolated: count(&|x| x == 0),
        r: u_degree.map(|du| count(&|x| (2..du).contains(&x))),
    })
}
