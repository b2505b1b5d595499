use serde::Serialize;

use super::egraph::EGraph;
use crate::config::CLASSIC_GRAPH_LIMIT;
use crate::error::{Error, Result};
use crate::graph::{GraphView, PlainGraph};
use crate::ring::{ElemId, Ring};

fn zero_divisors(ring: &Ring) -> Vec<ElemId> {
    let zero = ring.zero();
    ring.elements()
        .filter(|&x| x != zero && ring.elements().any(|y| y != zero && ring.mul(x, y) == zero))
        .collect()
}

/// The graph on individual nonzero zero divisors, `x -- y` iff `x y = 0`.
/// Vertices are in ascending id order.
pub fn gamma(ring: &Ring) -> Result<PlainGraph> {
    let zds = zero_divisors(ring);
    gamma_on(ring, &zds)
}

fn gamma_on(ring: &Ring, zds: &[ElemId]) -> Result<PlainGraph> {
    if zds.len() > CLASSIC_GRAPH_LIMIT {
        return Err(Error::CapExceeded(format!(
            "{} nonzero zero divisors exceed the limit of {CLASSIC_GRAPH_LIMIT}",
            zds.len()
        )));
    }
    let mut g = PlainGraph::with_labels(zds.iter().map(|&x| ring.element_name(x)).collect());
    for (i, &x) in zds.iter().enumerate() {
        for (j, &y) in zds.iter().enumerate().skip(i + 1) {
            if ring.mul(x, y) == ring.zero() {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Replaces vertex `i` by `w[i]` pairwise non-adjacent copies; copies of
/// adjacent vertices are joined. Copies of `i` are consecutive, labelled
/// `label.k`.
pub fn weighted_cover(g: &PlainGraph, w: &[usize]) -> Result<PlainGraph> {
    if w.len() != g.order() {
        return Err(Error::Domain(format!(
            "{} weights for {} vertices",
            w.len(),
            g.order()
        )));
    }
    if let Some(i) = w.iter().position(|&x| x == 0) {
        return Err(Error::Domain(format!("weight of vertex {i} is zero")));
    }
    let mut start = Vec::with_capacity(w.len());
    let mut labels = Vec::new();
    for (i, &wi) in w.iter().enumerate() {
        start.push(labels.len());
        labels.extend((0..wi).map(|k| format!("{}.{k}", g.label(i))));
    }
    let mut cover = PlainGraph::with_labels(labels);
    for (a, b) in g.edges() {
        for s in 0..w[a] {
            for t in 0..w[b] {
                cover.add_edge(start[a] + s, start[b] + t)?;
            }
        }
    }
    Ok(cover)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    /// Representative of a class with square zero and weight above one.
    pub class_rep: String,
    pub weight: usize,
    /// An edge of the classic graph that the cover lacks.
    pub missing_edge: Option<(String, String)>,
}

/// Comparison of the weighted cover with the classic graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    /// The cover equals the classic graph under the member-to-copy map.
    pub equal: bool,
    /// Every class with `[x]^2 = 0` has weight one.
    pub criterion: bool,
    /// The cover is a subgraph of the classic graph.
    pub subgraph: bool,
    /// Adding all edges inside square-zero classes gives the classic graph.
    pub completion_matches: bool,
    pub witness: Option<CoverWitness>,
}

impl CoverReport {
    pub fn consistent(&self) -> bool {
        self.equal == self.criterion && self.subgraph && self.completion_matches
    }
}

pub fn cover_equality_check(ring: &Ring) -> Result<CoverReport> {
    cover_report(&super::egraph::gamma_e(ring)?)
}

/// Cover comparison for an already built class graph.
pub fn cover_report(e: &EGraph) -> Result<CoverReport> {
    let ring = e.ring();
    let mut zds: Vec<ElemId> = e
        .classes()
        .iter()
        .flat_map(|c| c.members.iter().copied())
        .collect();
    zds.sort_unstable();
    let classic = gamma_on(ring, &zds)?;
    let weights = e.weights();
    let cover = weighted_cover(e.graph(), &weights)?;
    // copy k of class i stands for the k-th member of that class
    let perm: Vec<usize> = e
        .classes()
        .iter()
        .flat_map(|c| c.members.iter())
        .map(|m| zds.binary_search(m).expect("member is a zero divisor"))
        .collect();
    let cover = cover.relabel(&perm);
    let equal = cover.edge_set() == classic.edge_set();
    let subgraph = cover.is_spanning_subgraph_of(&classic);

    let mut completed = cover.clone();
    for (i, c) in e.classes().iter().enumerate() {
        if e.square_zero(i) {
            for (a, &x) in c.members.iter().enumerate() {
                for &y in &c.members[a + 1..] {
                    let (p, q) = (
                        zds.binary_search(&x).unwrap(),
                        zds.binary_search(&y).unwrap(),
                    );
                    completed.add_edge(p, q)?;
                }
            }
        }
    }
    let completion_matches = completed.edge_set() == classic.edge_set();

    let bad = (0..e.order()).find(|&i| e.square_zero(i) && weights[i] > 1);
    let witness = bad.map(|i| {
        let missing = classic
            .edges()
            .into_iter()
            .find(|&(a, b)| !cover.adjacent(a, b))
            .map(|(a, b)| (classic.label(a).to_string(), classic.label(b).to_string()));
        CoverWitness {
            class_rep: e.rep_name(i).to_string(),
            weight: weights[i],
            missing_edge: missing,
        }
    });
    Ok(CoverReport {
        equal,
        criterion: bad.is_none(),
        subgraph,
        completion_matches,
        witness,
    })
}
