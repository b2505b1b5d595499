use std::collections::VecDeque;

use serde::Serialize;

use super::GraphView;
use crate::error::{Error, Result};

fn nonempty<G: GraphView + ?Sized>(g: &G) -> Result<()> {
    if g.order() == 0 {
        Err(Error::Domain("empty graph".into()))
    } else {
        Ok(())
    }
}

fn bfs<G: GraphView + ?Sized>(g: &G, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued vertices have a distance");
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Greatest distance between two vertices; `None` when disconnected.
pub fn diameter<G: GraphView + ?Sized>(g: &G) -> Result<Option<usize>> {
    nonempty(g)?;
    let mut best = 0;
    for s in 0..g.order() {
        for d in bfs(g, s) {
            match d {
                Some(d) => best = best.max(d),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(best))
}

pub fn is_connected<G: GraphView + ?Sized>(g: &G) -> Result<bool> {
    nonempty(g)?;
    Ok(bfs(g, 0).iter().all(Option::is_some))
}

pub fn is_complete<G: GraphView + ?Sized>(g: &G) -> bool {
    let n = g.order();
    (0..n).all(|v| g.degree(v) + 1 == n)
}

/// Parts of a complete multipartite structure: the connected components of
/// the complement, provided each is a clique there. Parts are sorted by
/// their smallest vertex.
pub fn multipartite_decomposition<G: GraphView + ?Sized>(g: &G) -> Option<Vec<Vec<usize>>> {
    let n = g.order();
    let mut part = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if part[v] != usize::MAX {
            continue;
        }
        // everything non-adjacent to v must be pairwise non-adjacent and
        // share v's neighborhood; collecting non-neighbors gives the part
        let members: Vec<usize> = (0..n).filter(|&w| w == v || !g.adjacent(v, w)).collect();
        for &w in &members {
            if part[w] != usize::MAX {
                return None;
            }
            part[w] = parts.len();
        }
        parts.push(members);
    }
    for p in &parts {
        for (i, &a) in p.iter().enumerate() {
            if p[i + 1..].iter().any(|&b| g.adjacent(a, b)) {
                return None;
            }
            if g.degree(a) != n - p.len() {
                return None;
            }
        }
    }
    Some(parts)
}

pub fn is_cycle<G: GraphView + ?Sized>(g: &G) -> bool {
    g.order() >= 3 && (0..g.order()).all(|v| g.degree(v) == 2) && is_connected(g).unwrap_or(false)
}

pub fn is_regular<G: GraphView + ?Sized>(g: &G) -> bool {
    let d = g.degrees();
    d.windows(2).all(|w| w[0] == w[1])
}

/// A star `K_{n,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanShape {
    pub n: usize,
    /// For `K_{1,1}` either endpoint could serve; vertex 0 is reported.
    pub center: usize,
}

pub fn fan_shape<G: GraphView + ?Sized>(g: &G) -> Option<FanShape> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    if n == 2 {
        return g.adjacent(0, 1).then_some(FanShape { n: 1, center: 0 });
    }
    let center = (0..n).find(|&v| g.degree(v) == n - 1)?;
    (0..n)
        .filter(|&v| v != center)
        .all(|v| g.degree(v) == 1)
        .then_some(FanShape { n: n - 1, center })
}

pub fn leaves<G: GraphView + ?Sized>(g: &G) -> Vec<usize> {
    (0..g.order()).filter(|&v| g.degree(v) == 1).collect()
}

pub fn neighborhood<G: GraphView + ?Sized>(g: &G, v: usize) -> Vec<usize> {
    g.neighbors(v).to_vec()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodLemma {
    /// Distinct vertices are non-adjacent exactly when their neighborhoods agree.
    pub hypothesis_holds: bool,
    /// The graph is complete multipartite.
    pub conclusion_holds: bool,
}

pub fn neighborhood_lemma_check<G: GraphView + ?Sized>(g: &G) -> NeighborhoodLemma {
    let n = g.order();
    let hypothesis_holds =
        (0..n).all(|v| (v + 1..n).all(|w| !g.adjacent(v, w) == (g.neighbors(v) == g.neighbors(w))));
    NeighborhoodLemma {
        hypothesis_holds,
        conclusion_holds: multipartite_decomposition(g).is_some(),
    }
}

pub fn triangle_count<G: GraphView + ?Sized>(g: &G) -> usize {
    let mut count = 0;
    for (u, v) in g.edges() {
        count += g
            .neighbors(v)
            .iter()
            .filter(|&&w| w > v && g.adjacent(u, w))
            .count();
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::PlainGraph;

    #[test]
    fn diameters() {
        assert_eq!(diameter(&path(4)).unwrap(), Some(3));
        assert_eq!(diameter(&complete(2)).unwrap(), Some(1));
        assert_eq!(diameter(&PlainGraph::new(1)).unwrap(), Some(0));
        assert_eq!(diameter(&PlainGraph::new(2)).unwrap(), None);
        assert!(diameter(&PlainGraph::new(0)).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&PlainGraph::new(1)).unwrap());
        assert!(!is_connected(&PlainGraph::new(2)).unwrap());
        assert!(is_connected(&path(4)).unwrap());
        assert!(is_connected(&PlainGraph::new(0)).is_err());
    }

    #[test]
    fn completeness() {
        assert!(is_complete(&complete(2)));
        assert!(is_complete(&complete(3)));
        assert!(!is_complete(&path(4)));
    }

    #[test]
    fn multipartite() {
        let s = star(3);
        assert_eq!(
            multipartite_decomposition(&s),
            Some(vec![vec![0], vec![1, 2, 3]])
        );
        assert_eq!(multipartite_decomposition(&cycle(5)), None);
        assert_eq!(multipartite_decomposition(&path(4)), None);
        assert_eq!(
            multipartite_decomposition(&cycle(4)),
            Some(vec![vec![0, 2], vec![1, 3]])
        );
        assert_eq!(multipartite_decomposition(&complete(3)).unwrap().len(), 3);
    }

    #[test]
    fn cycles_and_regularity() {
        assert!(is_cycle(&cycle(6)));
        assert!(!is_cycle(&path(4)));
        assert!(is_regular(&cycle(4)));
        assert!(is_regular(&complete(2)));
        assert!(!is_regular(&path(4)));
        // two disjoint triangles are 2-regular but not a cycle
        let g =
            PlainGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_cycle(&g));
    }

    #[test]
    fn fans() {
        assert_eq!(fan_shape(&star(3)), Some(FanShape { n: 3, center: 0 }));
        assert_eq!(fan_shape(&path(4)), None);
        assert_eq!(fan_shape(&complete(2)), Some(FanShape { n: 1, center: 0 }));
        assert_eq!(fan_shape(&path(3)), Some(FanShape { n: 2, center: 1 }));
        assert_eq!(fan_shape(&complete(3)), None);
    }

    #[test]
    fn leaves_and_neighborhoods() {
        assert_eq!(leaves(&path(4)), vec![0, 3]);
        assert!(leaves(&cycle(4)).is_empty());
        assert_eq!(neighborhood(&star(3), 0), vec![1, 2, 3]);
        assert_eq!(neighborhood(&star(3), 2), vec![0]);
    }

    #[test]
    fn neighborhood_lemma() {
        let r = |h, c| NeighborhoodLemma {
            hypothesis_holds: h,
            conclusion_holds: c,
        };
        assert_eq!(
            neighborhood_lemma_check(&complete_bipartite(2, 3)),
            r(true, true)
        );
        assert_eq!(neighborhood_lemma_check(&path(4)), r(false, false));
        assert_eq!(neighborhood_lemma_check(&complete(3)), r(true, true));
    }

    #[test]
    fn triangles() {
        assert_eq!(triangle_count(&complete(4)), 4);
        assert_eq!(triangle_count(&petersen()), 0);
    }
}
