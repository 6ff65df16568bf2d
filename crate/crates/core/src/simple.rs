//! Simple graphs as adjacency bitmasks, used for the girth-five problems.

use crate::error::{Error, Result};
use crate::multigraph::{pairs, Multigraph};

pub const MAX_SIMPLE_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SIMPLE_N, "simple graphs are limited to {MAX_SIMPLE_N} vertices");
        SimpleGraph { adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_SIMPLE_N {
            return Err(Error::CapExceeded(format!("simple graph with {n} > {MAX_SIMPLE_N} vertices")));
        }
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::RepeatedVertex(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn add_vertex(&mut self, neighbours: u64) {
        let v = self.adj.len();
        assert!(v < MAX_SIMPLE_N);
        for u in 0..v {
            if neighbours >> u & 1 == 1 {
                self.adj[u] |= 1 << v;
            }
        }
        self.adj.push(neighbours);
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        pairs(self.n()).filter(|&(u, v)| self.has_edge(u, v)).collect()
    }

    /// No triangle and no 4-cycle: every two vertices share at most one
    /// neighbour, and adjacent vertices share none.
    pub fn is_c3_c4_free(&self) -> bool {
        pairs(self.n()).all(|(u, v)| {
            let common = (self.adj[u] & self.adj[v]).count_ones();
            common == 0 || (common == 1 && !self.has_edge(u, v))
        })
    }

    /// The 0/1 multigraph on the same vertices.
    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph::from_fn(self.n(), |u, v| self.has_edge(u, v) as u64)
    }

    /// Pairs of multiplicity exactly `level` in `g`.
    pub fn level_graph(g: &Multigraph, level: u64) -> Self {
        let mut h = SimpleGraph::empty(g.n());
        for (u, v) in pairs(g.n()) {
            if g.w(u, v) == level {
                h.add_edge(u, v);
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth_checks() {
        assert!(SimpleGraph::cycle(5).is_c3_c4_free());
        assert!(!SimpleGraph::cycle(4).is_c3_c4_free());
        assert!(!SimpleGraph::cycle(3).is_c3_c4_free());
        assert!(SimpleGraph::cycle(6).is_c3_c4_free());
        assert_eq!(SimpleGraph::cycle(5).edge_count(), 5);
        let k4 = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!k4.is_c3_c4_free());
        // C4 plus a chord still contains a C4 and triangles
        let path = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(path.is_c3_c4_free());
    }

    #[test]
    fn multigraph_bridge() {
        let c5 = SimpleGraph::cycle(5);
        let m = c5.to_multigraph();
        assert_eq!(m.sum_total(), 5);
        assert_eq!(SimpleGraph::level_graph(&m, 1), c5);
    }
}
