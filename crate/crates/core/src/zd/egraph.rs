use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::classes::{ZdClass, ZdStructure};
use super::primes;
use crate::config::DEFAULT_SEED;
use crate::error::{Error, Result};
use crate::graph::{GraphView, PlainGraph};
use crate::ring::{ElemId, Ring};

/// Rings up to this order get an exhaustive representative-independence check.
pub const EXHAUSTIVE_CONSISTENCY_LIMIT: usize = 2048;

/// Sampled pairs for the representative-independence check on larger rings.
pub const SAMPLED_CONSISTENCY_PAIRS: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaOptions {
    /// Compute associated-prime and maximal-in-𝔉 flags.
    pub flags: bool,
    pub seed: u64,
}

impl Default for GammaOptions {
    fn default() -> Self {
        GammaOptions {
            flags: true,
            seed: DEFAULT_SEED,
        }
    }
}

/// Result of checking that class adjacency does not depend on the chosen
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub exhaustive: bool,
    pub pairs_checked: u64,
}

/// The graph of annihilator classes.
#[derive(Clone, Debug)]
pub struct EGraph {
    zd: ZdStructure,
    graph: PlainGraph,
    square_zero: Vec<bool>,
    is_ass: Option<Vec<bool>>,
    is_max: Option<Vec<bool>>,
    consistency: ConsistencyReport,
}

pub fn gamma_e(ring: &Ring) -> Result<EGraph> {
    gamma_e_with(ring, &GammaOptions::default())
}

pub fn gamma_e_with(ring: &Ring, opts: &GammaOptions) -> Result<EGraph> {
    EGraph::from_structure(ZdStructure::new(ring)?, opts)
}

impl EGraph {
    pub fn from_structure(zd: ZdStructure, opts: &GammaOptions) -> Result<Self> {
        let ring = zd.ring();
        let k = zd.classes().len();
        let labels = zd
            .classes()
            .iter()
            .map(|c| ring.element_name(c.rep))
            .collect();
        let mut graph = PlainGraph::with_labels(labels);
        let rows: Vec<Vec<usize>> = (0..k)
            .into_par_iter()
            .map(|i| {
                (i + 1..k)
                    .filter(|&j| zd.class_product_zero(i, j))
                    .collect()
            })
            .collect();
        for (i, row) in rows.into_iter().enumerate() {
            for j in row {
                graph.add_edge(i, j)?;
            }
        }
        let square_zero = (0..k).map(|i| zd.class_product_zero(i, i)).collect();
        let mut e = EGraph {
            zd,
            graph,
            square_zero,
            is_ass: None,
            is_max: None,
            consistency: ConsistencyReport {
                exhaustive: false,
                pairs_checked: 0,
            },
        };
        e.consistency = e.check_representatives(opts.seed)?;
        if opts.flags {
            let ass = primes::associated_prime_classes(&e.zd);
            let max = primes::maximal_classes(&e.zd);
            let mut is_ass = vec![false; k];
            let mut is_max = vec![false; k];
            for &c in &ass {
                is_ass[c] = true;
            }
            for &c in &max {
                if !is_ass[c] {
                    return Err(Error::Inconsistent(format!(
                        "class [{}] is maximal in the annihilator family but not prime",
                        e.graph.label(c)
                    )));
                }
                is_max[c] = true;
            }
            e.is_ass = Some(is_ass);
            e.is_max = Some(is_max);
        }
        Ok(e)
    }

    /// Verifies `x y = 0` iff `[x][y] = 0` over member pairs: all pairs of
    /// zero divisors for small rings, seeded random pairs otherwise.
    fn check_representatives(&self, seed: u64) -> Result<ConsistencyReport> {
        let ring = self.zd.ring();
        let zds: Vec<(ElemId, usize)> = self
            .zd
            .classes()
            .iter()
            .enumerate()
            .flat_map(|(c, cl)| cl.members.iter().map(move |&m| (m, c)))
            .collect();
        if zds.is_empty() {
            return Ok(ConsistencyReport {
                exhaustive: true,
                pairs_checked: 0,
            });
        }
        let expected = |a: usize, b: usize| {
            if a == b {
                self.square_zero[a]
            } else {
                self.graph.adjacent(a, b)
            }
        };
        let fail = |x: ElemId, y: ElemId| {
            Error::Inconsistent(format!(
                "adjacency of [{}] and [{}] depends on representatives",
                ring.element_name(x),
                ring.element_name(y)
            ))
        };
        if ring.order() <= EXHAUSTIVE_CONSISTENCY_LIMIT {
            let bad = zds.par_iter().find_map_any(|&(x, a)| {
                zds.iter()
                    .find(|&&(y, b)| (ring.mul(x, y) == ring.zero()) != expected(a, b))
                    .map(|&(y, _)| (x, y))
            });
            if let Some((x, y)) = bad {
                return Err(fail(x, y));
            }
            Ok(ConsistencyReport {
                exhaustive: true,
                pairs_checked: (zds.len() * zds.len()) as u64,
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_CONSISTENCY_PAIRS {
                let (x, a) = zds[rng.gen_range(0..zds.len())];
                let (y, b) = zds[rng.gen_range(0..zds.len())];
                if (ring.mul(x, y) == ring.zero()) != expected(a, b) {
                    return Err(fail(x, y));
                }
            }
            Ok(ConsistencyReport {
                exhaustive: false,
                pairs_checked: SAMPLED_CONSISTENCY_PAIRS as u64,
            })
        }
    }

    pub fn ring(&self) -> &Ring {
        self.zd.ring()
    }

    pub fn structure(&self) -> &ZdStructure {
        &self.zd
    }

    pub fn classes(&self) -> &[ZdClass] {
        self.zd.classes()
    }

    pub fn graph(&self) -> &PlainGraph {
        &self.graph
    }

    pub fn rep_name(&self, v: usize) -> &str {
        self.graph.label(v)
    }

    pub fn weights(&self) -> Vec<usize> {
        self.classes().iter().map(ZdClass::weight).collect()
    }

    /// `[v][v] = 0`.
    pub fn square_zero(&self, v: usize) -> bool {
        self.square_zero[v]
    }

    pub fn has_flags(&self) -> bool {
        self.is_ass.is_some()
    }

    pub fn is_ass(&self, v: usize) -> bool {
        self.is_ass.as_ref().is_some_and(|f| f[v])
    }

    pub fn is_max_in_f(&self, v: usize) -> bool {
        self.is_max.as_ref().is_some_and(|f| f[v])
    }

    pub fn consistency(&self) -> &ConsistencyReport {
        &self.consistency
    }

    /// Vertex whose class contains `x`.
    pub fn vertex_of(&self, x: ElemId) -> Option<usize> {
        self.zd.class_of(x)
    }

    pub fn vertex_named(&self, name: &str) -> Option<usize> {
        let x = self.ring().parse_element(name).ok()?;
        self.vertex_of(x)
    }

    pub fn to_json(&self) -> EGraphJson {
        let ring = self.ring();
        EGraphJson {
            ring: ring.name().to_string(),
            vertices: self
                .classes()
                .iter()
                .enumerate()
                .map(|(i, c)| VertexJson {
                    id: i,
                    rep: self.rep_name(i).to_string(),
                    members: c.members.iter().map(|&m| ring.element_name(m)).collect(),
                    weight: c.weight(),
                    ann_size: c.ann.len(),
                    is_ass: self.is_ass(i),
                    is_max_in_f: self.is_max_in_f(i),
                })
                .collect(),
            edges: self
                .graph
                .edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = (0..self.order())
            .map(|v| format!("[{}]", self.rep_name(v)))
            .collect();
        to_dot(self.ring().name(), &self.graph, &labels)
    }
}

impl GraphView for EGraph {
    fn order(&self) -> usize {
        self.graph.order()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexJson {
    pub id: usize,
    pub rep: String,
    pub members: Vec<String>,
    pub weight: usize,
    pub ann_size: u64,
    pub is_ass: bool,
    #[serde(rename = "is_max_in_F")]
    pub is_max_in_f: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EGraphJson {
    pub ring: String,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// DOT text for an undirected graph with quoted labels.
pub fn to_dot<G: GraphView + ?Sized>(name: &str, g: &G, labels: &[String]) -> String {
    let mut s = format!("graph {} {{\n", quote(name));
    for (v, label) in labels.iter().enumerate().take(g.order()) {
        s.push_str(&format!("  {v} [label={}];\n", quote(label)));
    }
    for (a, b) in g.edges() {
        s.push_str(&format!("  {a} -- {b};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z12_path() {
        let e = gamma_e(&Ring::modular(12).unwrap()).unwrap();
        let reps: Vec<&str> = (0..e.order()).map(|v| e.rep_name(v)).collect();
        assert_eq!(reps, vec!["2", "3", "4", "6"]);
        assert_eq!(e.graph().edges(), vec![(0, 3), (1, 2), (2, 3)]);
        assert_eq!(e.weights(), vec![2, 2, 2, 1]);
        assert!(e.consistency().exhaustive);
        assert!(e.square_zero(3) && !e.square_zero(0));
    }

    #[test]
    fn dot_output() {
        let e = gamma_e(&Ring::modular(12).unwrap()).unwrap();
        let dot = e.to_dot();
        assert!(dot.starts_with("graph \"Z12\" {\n  0 [label=\"[2]\"];"));
        assert!(dot.contains("  2 -- 3;\n"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn json_shape() {
        let e = gamma_e(&Ring::modular(12).unwrap()).unwrap();
        let v = serde_json::to_value(e.to_json()).unwrap();
        assert_eq!(v["ring"], "Z12");
        assert_eq!(v["vertices"][3]["rep"], "6");
        assert_eq!(v["vertices"][3]["ann_size"], 6);
        assert_eq!(v["vertices"][3]["is_max_in_F"], true);
        assert_eq!(v["vertices"][0]["members"], serde_json::json!(["2", "10"]));
        assert_eq!(v["edges"][0], serde_json::json!([0, 3]));
    }

    #[test]
    fn field_is_empty() {
        let e = gamma_e(&Ring::modular(5).unwrap()).unwrap();
        assert_eq!(e.order(), 0);
    }
}
