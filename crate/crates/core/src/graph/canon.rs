use std::fmt;

use serde::{Serialize, Serializer};

use super::{triangle_count, GraphView};

/// Exact canonical labels are computed up to this many vertices.
pub const EXACT_CANON_LIMIT: usize = 64;

/// Leaf budget for the search tree before falling back to invariants.
const LEAF_BUDGET: usize = 200_000;

/// A relabeling-invariant label. When `exact` is false the label is only an
/// invariant tuple (order, sorted degrees, triangle count), so equal labels
/// do not prove isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub exact: bool,
    pub order: usize,
    /// Exact: adjacency rows as bitmasks. Inexact: sorted degrees followed by
    /// the triangle count.
    pub data: Vec<u64>,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.exact { "g" } else { "inv" };
        write!(f, "{tag}{}", self.order)?;
        for w in &self.data {
            write!(f, ":{w:x}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn canonical_form<G: GraphView + ?Sized>(g: &G) -> CanonicalForm {
    let n = g.order();
    if n <= EXACT_CANON_LIMIT {
        if let Some(data) = Search::new(g).run() {
            return CanonicalForm {
                exact: true,
                order: n,
                data,
            };
        }
    }
    invariant_form(g)
}

fn invariant_form<G: GraphView + ?Sized>(g: &G) -> CanonicalForm {
    let mut data: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    data.sort_unstable();
    data.push(triangle_count(g) as u64);
    CanonicalForm {
        exact: false,
        order: g.order(),
        data,
    }
}

/// Isomorphism test; `exact` is false when either label is an invariant
/// tuple, in which case `isomorphic` only means the invariants agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub exact: bool,
}

pub fn is_isomorphic<G: GraphView + ?Sized, H: GraphView + ?Sized>(g: &G, h: &H) -> IsoVerdict {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return IsoVerdict {
            isomorphic: false,
            exact: true,
        };
    }
    let (a, b) = (canonical_form(g), canonical_form(h));
    if a.exact && b.exact {
        IsoVerdict {
            isomorphic: a == b,
            exact: true,
        }
    } else {
        let (a, b) = (invariant_form(g), invariant_form(h));
        IsoVerdict {
            isomorphic: a == b,
            exact: a != b,
        }
    }
}

/// Individualization-refinement search for the lexicographically largest
/// adjacency matrix over all orderings compatible with equitable
/// refinement. Twins (vertices swapped by a transposition automorphism) in
/// the target cell are branched on once.
struct Search {
    n: usize,
    adj: Vec<u64>,
    best: Option<Vec<u64>>,
    leaves: usize,
}

impl Search {
    fn new<G: GraphView + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        Search {
            n,
            adj,
            best: None,
            leaves: 0,
        }
    }

    fn run(mut self) -> Option<Vec<u64>> {
        if self.n == 0 {
            return Some(Vec::new());
        }
        let colors = self.refine(vec![0; self.n]);
        if self.descend(colors) {
            self.best
        } else {
            None
        }
    }

    /// Equitable refinement. Colors are renumbered by sorted signature, so
    /// the result depends only on the structure, not on vertex ids.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = self.n;
        loop {
            let k = colors.iter().max().map_or(0, |&c| c + 1);
            let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut counts = vec![0; k];
                    let mut m = self.adj[v];
                    while m != 0 {
                        counts[colors[m.trailing_zeros() as usize]] += 1;
                        m &= m - 1;
                    }
                    (colors[v], counts, v)
                })
                .collect();
            sig.sort();
            let mut next = vec![0; n];
            let mut c = 0;
            for i in 0..n {
                if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                    c += 1;
                }
                next[sig[i].2] = c;
            }
            if c + 1 == k {
                return next;
            }
            colors = next;
        }
    }

    fn descend(&mut self, colors: Vec<usize>) -> bool {
        let n = self.n;
        let mut size = vec![0; n];
        for &c in &colors {
            size[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            self.leaf(&colors);
            return self.leaves <= LEAF_BUDGET;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let split: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| {
                    if c > target || (c == target && w != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            if !self.descend(self.refine(split)) {
                return false;
            }
        }
        true
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let mask = !(1u64 << u | 1u64 << v);
        self.adj[u] & mask == self.adj[v] & mask
    }

    fn leaf(&mut self, colors: &[usize]) {
        self.leaves += 1;
        let mut at = vec![0; self.n];
        for (v, &c) in colors.iter().enumerate() {
            at[c] = v;
        }
        let rows: Vec<u64> = (0..self.n)
            .map(|i| {
                (0..self.n).fold(0u64, |m, j| {
                    if self.adj[at[i]] >> at[j] & 1 == 1 {
                        m | 1 << j
                    } else {
                        m
                    }
                })
            })
            .collect();
        if self.best.as_ref().is_none_or(|b| rows > *b) {
            self.best = Some(rows);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::PlainGraph;

    #[test]
    fn path_reversal() {
        let p = path(4);
        let r = p.relabel(&[3, 2, 1, 0]);
        assert_eq!(canonical_form(&p), canonical_form(&r));
        assert!(is_isomorphic(&p, &r).isomorphic);
    }

    #[test]
    fn distinguishes_small_graphs() {
        assert!(!is_isomorphic(&star(3), &path(4)).isomorphic);
        assert!(!is_isomorphic(&path(3), &path(4)).isomorphic);
        assert_ne!(
            canonical_form(&cycle(6)),
            canonical_form(&{
                // two triangles
                PlainGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
                    .unwrap()
            })
        );
    }

    #[test]
    fn symmetric_graphs_stay_within_budget() {
        assert!(canonical_form(&star(40)).exact);
        assert!(canonical_form(&complete(30)).exact);
        assert!(canonical_form(&complete_bipartite(20, 20)).exact);
        assert!(canonical_form(&petersen()).exact);
    }

    #[test]
    fn large_graphs_fall_back() {
        let g = path(70);
        let c = canonical_form(&g);
        assert!(!c.exact);
        let v = is_isomorphic(&g, &g.relabel(&(0..70).rev().collect::<Vec<_>>()));
        assert!(v.isomorphic && !v.exact);
    }

    #[test]
    fn display_is_stable() {
        assert_eq!(canonical_form(&complete(2)).to_string(), "g2:2:1");
    }
}
