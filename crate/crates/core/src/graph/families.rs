//! Standard named graphs.

use super::PlainGraph;

pub fn path(n: usize) -> PlainGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    PlainGraph::from_edges(n, &edges).expect("valid path")
}

pub fn cycle(n: usize) -> PlainGraph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    PlainGraph::from_edges(n, &edges).expect("valid cycle")
}

pub fn complete(n: usize) -> PlainGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    PlainGraph::from_edges(n, &edges).expect("valid complete graph")
}

/// `K_{a,b}`: vertices `0..a` on one side, `a..a+b` on the other.
pub fn complete_bipartite(a: usize, b: usize) -> PlainGraph {
    let edges: Vec<_> = (0..a)
        .flat_map(|i| (a..a + b).map(move |j| (i, j)))
        .collect();
    PlainGraph::from_edges(a + b, &edges).expect("valid bipartite graph")
}

/// `K_{n,1}` with center `0`.
pub fn star(n: usize) -> PlainGraph {
    complete_bipartite(1, n)
}

pub fn petersen() -> PlainGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    PlainGraph::from_edges(10, &edges).expect("valid Petersen graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphView;

    #[test]
    fn sizes() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete(4).edge_count(), 6);
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
        assert_eq!(star(3).degrees(), vec![3, 1, 1, 1]);
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
    }
}
