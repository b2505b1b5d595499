//! Simple undirected graphs and the structural detectors used by the
//! theorem checks.

mod canon;
mod detect;
pub mod families;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use canon::{canonical_form, is_isomorphic, CanonicalForm, IsoVerdict, EXACT_CANON_LIMIT};
pub use detect::{
    diameter, fan_shape, is_complete, is_connected, is_cycle, is_regular, leaves,
    multipartite_decomposition, neighborhood, neighborhood_lemma_check, triangle_count, FanShape,
    NeighborhoodLemma,
};

use crate::error::{Error, Result};

/// Read access shared by every graph type.
pub trait GraphView {
    fn order(&self) -> usize;

    /// Sorted neighbor list of `v`.
    fn neighbors(&self, v: usize) -> &[usize];

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| {
                self.neighbors(u)
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }
}

/// A labelled simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlainGraph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl PlainGraph {
    /// Vertices labelled `0..n`.
    pub fn new(n: usize) -> Self {
        PlainGraph::with_labels((0..n).map(|i| i.to_string()).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        PlainGraph {
            labels,
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = PlainGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `u -- v`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::Domain(format!("edge {u}-{v} outside 0..{n}")));
        }
        if u == v {
            return Err(Error::Domain(format!("loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                Ok(true)
            }
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Copy of any graph view, keeping the given labels.
    pub fn from_view<G: GraphView + ?Sized>(g: &G, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), g.order());
        PlainGraph {
            labels,
            adj: (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect(),
        }
    }

    /// The graph with vertices renamed by `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.order();
        let mut labels = vec![String::new(); n];
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
            let mut row: Vec<usize> = self.adj[v].iter().map(|&w| perm[w]).collect();
            row.sort_unstable();
            adj[perm[v]] = row;
        }
        PlainGraph { labels, adj }
    }

    /// Subgraph induced on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut row: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (pos[w] != usize::MAX).then_some(pos[w]))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        PlainGraph {
            labels: keep.iter().map(|&v| self.labels[v].clone()).collect(),
            adj,
        }
    }

    /// True when every edge of `self` is an edge of `other` on the same
    /// vertex ids.
    pub fn is_spanning_subgraph_of(&self, other: &PlainGraph) -> bool {
        self.order() == other.order() && self.edges().into_iter().all(|(u, v)| other.adjacent(u, v))
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().into_iter().collect()
    }
}

impl GraphView for PlainGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}
