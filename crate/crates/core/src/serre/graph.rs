use serde::Serialize;

use crate::error::Result;
use crate::module::{LocalRank, PresentedModule};
use crate::ring::{PrimeFlag, QuotientRing, RIdeal};

/// An edge between two minimal primes, with the height of their sum.
#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub height: usize,
    /// `p + q` as printed.
    pub sum: String,
    pub sum_prime: PrimeFlag,
}

/// Vertices are the minimal primes; `p — q` iff `height(p + q) ≤ 1`.
#[derive(Clone, Debug)]
pub struct HHGraph {
    pub ring: QuotientRing,
    pub vertices: Vec<RIdeal>,
    pub edges: Vec<Edge>,
    /// Heights of `p + q` for every pair, including non-edges.
    pub pair_heights: Vec<(usize, usize, usize)>,
}

pub fn hh_graph(ring: &QuotientRing) -> Result<HHGraph> {
    let vertices = ring.minimal_primes()?;
    let mut edges = Vec::new();
    let mut pair_heights = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let sum = vertices[a].sum(&vertices[b]);
            let height = ring.height(&sum)?;
            pair_heights.push((a, b, height));
            if height <= 1 {
                edges.push(Edge { a, b, height, sum: sum.to_string(), sum_prime: sum.prime_flag() });
            }
        }
    }
    Ok(HHGraph { ring: ring.clone(), vertices, edges, pair_heights })
}

impl HHGraph {
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            parent[ra] = rb;
        }
        let roots: std::collections::BTreeSet<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        roots.len() <= 1
    }

    /// Height-one primes met by the graph: sums along edges that are
    /// prime of height exactly one, followed by primes supplied with the
    /// ring, without repeats.
    pub fn height_one_primes(&self) -> Vec<RIdeal> {
        let mut out: Vec<RIdeal> = Vec::new();
        for e in &self.edges {
            let sum = self.vertices[e.a].sum(&self.vertices[e.b]);
            if e.height == 1 && sum.prime_flag() == PrimeFlag::Verified {
                out.push(sum);
            }
        }
        for p in self.ring.supplied_height_one() {
            if !out.iter().any(|q| q.to_string() == p.to_string()) {
                out.push(p);
            }
        }
        out
    }

    pub fn vertex_labels(&self) -> Vec<String> {
        self.vertices.iter().map(|p| p.to_string()).collect()
    }
}

/// Free rank of `N` at one vertex, or why it is not free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexRank {
    Free { prime: String, rank: usize, witness: String },
    NotFree { prime: String, fitting_index: usize },
    Unknown { prime: String, reason: String },
}

impl VertexRank {
    pub(crate) fn at(n: &PresentedModule, p: &RIdeal) -> Result<VertexRank> {
        let prime = p.to_string();
        match n.localized_rank(p) {
            Ok(LocalRank::Free { rank, witness }) => Ok(VertexRank::Free { prime, rank, witness: witness.to_string() }),
            Ok(LocalRank::NotFree { rank, .. }) => Ok(VertexRank::NotFree { prime, fitting_index: rank }),
            Err(e) if e.is_cap() => Ok(VertexRank::Unknown { prime, reason: e.to_string() }),
            Err(e) => Err(e),
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            VertexRank::Free { rank, .. } => Some(*rank),
            _ => None,
        }
    }
}

/// Whether a module has a constant free rank over the minimal primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphRank {
    Rank { rank: usize, vertices: Vec<VertexRank> },
    NoRank { reason: String, vertices: Vec<VertexRank> },
    Unknown { reason: String, vertices: Vec<VertexRank> },
    /// Connected graph, free at every vertex and every edge prime, yet the
    /// ranks differ. Impossible for a correct computation.
    Inconsistent { vertices: Vec<VertexRank>, edge_primes: Vec<VertexRank> },
}

pub fn graph_rank(n: &PresentedModule, g: &HHGraph) -> Result<GraphRank> {
    let vertices = g.vertices.iter().map(|p| VertexRank::at(n, p)).collect::<Result<Vec<_>>>()?;
    if let Some(VertexRank::Unknown { prime, reason }) = vertices.iter().find(|v| matches!(v, VertexRank::Unknown { .. })) {
        let reason = format!("local rank at {prime} undecided: {reason}");
        return Ok(GraphRank::Unknown { reason, vertices });
    }
    if let Some(VertexRank::NotFree { prime, .. }) = vertices.iter().find(|v| matches!(v, VertexRank::NotFree { .. })) {
        let reason = format!("not free at the minimal prime {prime}");
        return Ok(GraphRank::NoRank { reason, vertices });
    }
    let ranks: Vec<usize> = vertices.iter().filter_map(VertexRank::rank).collect();
    if ranks.iter().all(|&r| r == ranks[0]) {
        return Ok(GraphRank::Rank { rank: ranks.first().copied().unwrap_or(0), vertices });
    }
    let reason = format!("free ranks {ranks:?} differ across minimal primes");
    if g.is_connected() {
        let edge_primes = g.height_one_primes().iter().map(|p| VertexRank::at(n, p)).collect::<Result<Vec<_>>>()?;
        let covered = g.edges.iter().all(|e| e.height == 1 && e.sum_prime == PrimeFlag::Verified);
        if covered && edge_primes.iter().all(|v| v.rank().is_some()) {
            return Ok(GraphRank::Inconsistent { vertices, edge_primes });
        }
    }
    Ok(GraphRank::NoRank { reason, vertices })
}
