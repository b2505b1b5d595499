use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::graph::{is_connected, leaves, GraphView, PlainGraph};
use crate::poly::{truncate, QuotientSpec};
use crate::ring::{ElemId, Ring};
use crate::zd::{gamma_e_with, EGraph, GammaOptions};

/// Statements about infinite class graphs that finite enumeration cannot
/// decide; sweeps only supply evidence for them.
pub const OUT_OF_SCOPE: [&str; 2] = [
    "the class graph has infinitely many vertices exactly when some vertex has infinite degree",
    "without finiteness, vertices of infinite degree need not be associated primes",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutOfScope {
    pub statement: &'static str,
    pub status: &'static str,
}

/// Summary of one truncation level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepLevel {
    pub n: u32,
    pub order: usize,
    pub vertices: usize,
    pub edges: usize,
    pub leaves: usize,
    /// Classes with no member of low enough degree in the truncated variable.
    pub transient: Vec<String>,
    pub error: Option<String>,
}

/// Truncation-stable classes common to levels `n` and `n + 1`, named by
/// their smallest low-degree member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableGraph {
    pub n: u32,
    pub keys: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub degrees: Vec<usize>,
    pub leaves: usize,
    pub cut_vertices: Vec<String>,
}

impl StableGraph {
    pub fn degree_of(&self, key: &str) -> Option<usize> {
        self.keys
            .iter()
            .position(|k| k == key)
            .map(|i| self.degrees[i])
    }

    fn same_shape(&self, other: &StableGraph) -> bool {
        let set = |g: &StableGraph| -> (BTreeSet<String>, BTreeSet<(String, String)>) {
            (
                g.keys.iter().cloned().collect(),
                g.edges
                    .iter()
                    .map(|(a, b)| {
                        if a <= b {
                            (a.clone(), b.clone())
                        } else {
                            (b.clone(), a.clone())
                        }
                    })
                    .collect(),
            )
        };
        set(self) == set(other)
    }

    pub fn to_graph(&self) -> PlainGraph {
        let mut g = PlainGraph::with_labels(self.keys.clone());
        for (a, b) in &self.edges {
            let i = self
                .keys
                .iter()
                .position(|k| k == a)
                .expect("edge endpoint is a key");
            let j = self
                .keys
                .iter()
                .position(|k| k == b)
                .expect("edge endpoint is a key");
            g.add_edge(i, j).expect("stable edges are simple");
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Stabilized { at: u32 },
    Growing { profile: Vec<usize> },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub spec: String,
    pub var: String,
    pub n_lo: u32,
    pub n_hi: u32,
    pub levels: Vec<SweepLevel>,
    pub stable: Vec<StableGraph>,
    pub verdict: Verdict,
    pub out_of_scope: Vec<OutOfScope>,
}

struct Level {
    n: u32,
    graph: PlainGraph,
    keys: HashMap<String, usize>,
}

/// Builds the class graph at each truncation `var^N`, `lo <= N <= hi`, and
/// compares consecutive levels on their truncation-stable classes.
pub fn stabilization_sweep(
    spec: &QuotientSpec,
    var: &str,
    lo: u32,
    hi: u32,
    limits: &Limits,
) -> Result<SweepReport> {
    let v = spec
        .var_index(var)
        .ok_or_else(|| Error::InvalidSpec(format!("undeclared variable '{var}'")))?;
    if lo == 0 || lo > hi {
        return Err(Error::Domain(format!("bad truncation range {lo}..{hi}")));
    }
    let opts = GammaOptions {
        flags: false,
        seed: limits.validation.seed,
    };
    let mut levels = Vec::new();
    let mut built: Vec<Option<Level>> = Vec::new();
    for n in lo..=hi {
        let result = truncate(spec, var, n)
            .and_then(|s| Ring::quotient(&s, limits))
            .and_then(|r| gamma_e_with(&r, &opts));
        match result {
            Ok(e) => {
                let (keys, transient) = stable_keys(&e, v, n);
                levels.push(SweepLevel {
                    n,
                    order: e.ring().order(),
                    vertices: e.order(),
                    edges: e.edge_count(),
                    leaves: leaves(e.graph()).len(),
                    transient,
                    error: None,
                });
                built.push(Some(Level {
                    n,
                    graph: e.graph().clone(),
                    keys,
                }));
            }
            Err(err) => {
                levels.push(SweepLevel {
                    n,
                    order: 0,
                    vertices: 0,
                    edges: 0,
                    leaves: 0,
                    transient: Vec::new(),
                    error: Some(err.to_string()),
                });
                built.push(None);
            }
        }
    }
    let stable: Vec<StableGraph> = built
        .windows(2)
        .filter_map(|w| match (&w[0], &w[1]) {
            (Some(a), Some(b)) => Some(stable_graph(a, b)),
            _ => None,
        })
        .collect();
    let verdict = judge(&stable);
    Ok(SweepReport {
        spec: spec.render(),
        var: var.to_string(),
        n_lo: lo,
        n_hi: hi,
        levels,
        stable,
        verdict,
        out_of_scope: OUT_OF_SCOPE
            .iter()
            .map(|&statement| OutOfScope {
                statement,
                status: "out-of-scope-exact",
            })
            .collect(),
    })
}

/// Key of each class: the name of its smallest member whose degree in the
/// truncated variable is below `n - 1`. Ids ascend in the same order as
/// polynomials compared term by term from the top, so the first qualifying
/// member is the smallest one in a level-independent order.
fn stable_keys(e: &EGraph, var: usize, n: u32) -> (HashMap<String, usize>, Vec<String>) {
    let ring = e.ring();
    let q = ring
        .quotient_backend()
        .expect("sweeps run on quotient rings");
    let coords = ring.coords().expect("quotient rings have coordinates");
    let var_deg: Vec<u32> = q.basis().iter().map(|m| m.exponents()[var]).collect();
    let deg = |x: ElemId| {
        coords
            .decode(x)
            .iter()
            .zip(&var_deg)
            .filter(|(&c, _)| c != 0)
            .map(|(_, &d)| d)
            .max()
            .unwrap_or(0)
    };
    let mut keys = HashMap::new();
    let mut transient = Vec::new();
    for (i, c) in e.classes().iter().enumerate() {
        match c.members.iter().find(|&&m| deg(m) + 1 < n) {
            Some(&m) => {
                keys.insert(ring.element_name(m), i);
            }
            None => transient.push(e.rep_name(i).to_string()),
        }
    }
    (keys, transient)
}

fn stable_graph(a: &Level, b: &Level) -> StableGraph {
    let mut keep: BTreeSet<&String> = a.keys.keys().filter(|k| b.keys.contains_key(*k)).collect();
    let nbrs = |lvl: &Level, k: &String, keep: &BTreeSet<&String>| -> BTreeSet<String> {
        let v = lvl.keys[k];
        keep.iter()
            .filter(|o| lvl.graph.adjacent(v, lvl.keys[**o]))
            .map(|o| (*o).clone())
            .collect()
    };
    loop {
        let drop: Vec<&String> = keep
            .iter()
            .copied()
            .filter(|k| {
                let na = nbrs(a, k, &keep);
                na != nbrs(b, k, &keep) || (keep.len() > 1 && na.is_empty())
            })
            .collect();
        if drop.is_empty() {
            break;
        }
        for k in drop {
            keep.remove(k);
        }
    }
    // order by vertex position at the lower level
    let mut keys: Vec<String> = keep.into_iter().cloned().collect();
    keys.sort_by_key(|k| a.keys[k]);
    let sub = a
        .graph
        .induced(&keys.iter().map(|k| a.keys[k]).collect::<Vec<_>>());
    let mut g = PlainGraph::with_labels(keys.clone());
    for (i, j) in sub.edges() {
        g.add_edge(i, j).expect("induced edges are simple");
    }
    let cut_vertices = (0..g.order())
        .filter(|&v| {
            let rest: Vec<usize> = (0..g.order()).filter(|&w| w != v).collect();
            rest.len() > 1 && !is_connected(&g.induced(&rest)).unwrap_or(true)
        })
        .map(|v| keys[v].clone())
        .collect();
    StableGraph {
        n: a.n,
        edges: g
            .edges()
            .into_iter()
            .map(|(i, j)| (keys[i].clone(), keys[j].clone()))
            .collect(),
        degrees: g.degrees(),
        leaves: leaves(&g).len(),
        cut_vertices,
        keys,
    }
}

fn judge(stable: &[StableGraph]) -> Verdict {
    if stable.len() >= 2 {
        let consecutive = stable.windows(2).all(|w| w[1].n == w[0].n + 1);
        if consecutive {
            let last = stable.len() - 1;
            if let Some(i) =
                (0..last).find(|&i| (i..last).all(|j| stable[j].same_shape(&stable[j + 1])))
            {
                return Verdict::Stabilized { at: stable[i].n };
            }
            let profile: Vec<usize> = stable.iter().map(|s| s.keys.len()).collect();
            if profile.windows(2).all(|w| w[0] < w[1]) {
                return Verdict::Growing { profile };
            }
        }
    }
    Verdict::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_truncations_stabilize() {
        let spec = QuotientSpec::parse(3, &["x", "y"], &["x^3", "x*y"]).unwrap();
        let rep = stabilization_sweep(&spec, "y", 3, 5, &Limits::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Stabilized { at: 3 });
        let s = &rep.stable[0];
        assert_eq!(s.keys.len(), 4);
        assert_eq!(s.degree_of("x^2"), Some(3));
        assert_eq!(s.degree_of("y"), Some(2));
        assert_eq!(s.degree_of("x"), Some(2));
        assert_eq!(rep.out_of_scope.len(), 2);
    }

    #[test]
    fn finite_spec_gives_identical_levels() {
        let spec = QuotientSpec::parse(2, &["x", "y"], &["x^2", "y^2"]).unwrap();
        let rep = stabilization_sweep(&spec, "x", 2, 5, &Limits::default()).unwrap();
        assert!(rep
            .levels
            .windows(2)
            .all(|w| w[0].vertices == w[1].vertices && w[0].edges == w[1].edges));
        assert!(matches!(rep.verdict, Verdict::Stabilized { .. }));
    }

    #[test]
    fn id_order_is_term_order() {
        let spec = QuotientSpec::parse(3, &["x", "y"], &["x^3", "x*y", "y^4"]).unwrap();
        let r = Ring::quotient(&spec, &Limits::default()).unwrap();
        let q = r.quotient_backend().unwrap();
        let c = r.coords().unwrap();
        let keys: Vec<_> = r
            .elements()
            .map(|x| q.poly_of(&c.decode(x)).descending_terms())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bad_arguments() {
        let spec = QuotientSpec::parse(2, &["x"], &["x^2"]).unwrap();
        assert!(stabilization_sweep(&spec, "y", 2, 3, &Limits::default()).is_err());
        assert!(stabilization_sweep(&spec, "x", 3, 2, &Limits::default()).is_err());
    }
}
