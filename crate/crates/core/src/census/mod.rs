//! Ring families, cross-checks and searches over many rings.

mod oracle;
mod screen;
mod sweep;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

pub use oracle::zn_oracle;
pub use screen::{parse_dot, parse_graph_json, realizability_screen, ScreenVerdict};
pub use sweep::{
    stabilization_sweep, OutOfScope, StableGraph, SweepLevel, SweepReport, Verdict, OUT_OF_SCOPE,
};

use crate::config::Limits;
use crate::error::Result;
use crate::graph::{canonical_form, fan_shape, is_isomorphic, leaves, GraphView};
use crate::ring::{characteristic, is_local, is_prime, ElemId, Ring, RingSpec};
use crate::theorems::check_graph;
use crate::zd::{gamma_e_with, EGraph, GammaOptions};

/// Largest ring whose annihilators are checked to be ideals element by element.
const IDEAL_CHECK_LIMIT: usize = 512;

/// Quotient presentations included in the default census.
pub const CURATED_QUOTIENTS: &[&str] = &[
    "quot(Z3; x,y; x*y, x^3, y^3, x^2-y^2)",
    "quot(Z2; x,y; x^2, y^2)",
    "quot(Z2; t,x,y; t^2+t+1, x^2, y^2)",
    "quot(Z3; x,y; x^2, y^2)",
    "quot(Z3; x,y; x^3, x*y) trunc(y,3)",
    "quot(Z3; x,y; x^3, x*y) trunc(y,4)",
    "quot(Z2; x,y,z; x^2, y^2) trunc(z,2)",
    "quot(Z2; x,y,z; x^2, y^2) trunc(z,3)",
    "quot(Z4; x,y; x^2, x*y, 2x) trunc(y,2)",
    "quot(Z4; x,y; x^2, x*y, 2x) trunc(y,3)",
    "quot(Z5; x; x)",
    "quot(Z2; x; x^3)",
    "quot(Z2; x; x^4)",
    "quot(Z3; x; x^3)",
    "quot(Z4; x; x^2)",
    "quot(Z4; x; x^2-2)",
    "quot(Z2; x,y; x^2, x*y, y^2)",
    "quot(Z2; x,y; x^3, x*y, y^2)",
    "quot(Z3; x,y; x^2, x*y, y^2)",
];

/// `Z_n` for `4 <= n <= 200`, `Z_a x Z_b` for `2 <= a <= b <= 9`, and the
/// curated quotients.
pub fn default_suite() -> Vec<RingSpec> {
    let mut specs: Vec<RingSpec> = (4..=200).map(RingSpec::Zmod).collect();
    for a in 2..=9 {
        for b in a..=9 {
            specs.push(RingSpec::Product(vec![
                RingSpec::Zmod(a),
                RingSpec::Zmod(b),
            ]));
        }
    }
    specs.extend(
        CURATED_QUOTIENTS
            .iter()
            .map(|s| RingSpec::parse(s).expect("curated specs parse")),
    );
    specs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    AllPass,
    Failed,
    Error,
}

/// One census row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub spec: String,
    pub order: usize,
    pub label: String,
    pub label_exact: bool,
    pub vertices: usize,
    pub edges: usize,
    pub ass_count: usize,
    pub characteristic: u64,
    pub local: bool,
    pub fan_n: Option<usize>,
    pub has_leaf: bool,
    pub is_path: bool,
    pub oracle_match: Option<bool>,
    pub status: EntryStatus,
    /// Failed theorem checks and failed invariants.
    pub failures: Vec<String>,
    pub error: Option<String>,
}

/// Rings whose class graphs share one canonical label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoGroup {
    pub label: String,
    pub exact: bool,
    pub vertices: usize,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub groups: Vec<IsoGroup>,
}

impl Census {
    pub fn failures(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == EntryStatus::Failed)
            .count()
    }

    pub fn errors(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == EntryStatus::Error)
            .count()
    }

    /// One JSON object per entry.
    pub fn to_jsonl(&self) -> String {
        self.entries
            .iter()
            .map(|e| serde_json::to_string(e).expect("entries serialize") + "\n")
            .collect()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "rings: {}  distinct graphs: {}  failures: {}  errors: {}\n",
            self.entries.len(),
            self.groups.len(),
            self.failures(),
            self.errors()
        );
        s.push_str(&format!(
            "{:<40} {:>7} {:>4} {:>5} {:>3}  {}\n",
            "spec", "order", "|V|", "|E|", "Ass", "status"
        ));
        for e in &self.entries {
            let status = match e.status {
                EntryStatus::AllPass => "ok".to_string(),
                EntryStatus::Failed => format!("FAIL {}", e.failures.join("; ")),
                EntryStatus::Error => format!("error {}", e.error.as_deref().unwrap_or("")),
            };
            s.push_str(&format!(
                "{:<40} {:>7} {:>4} {:>5} {:>3}  {status}\n",
                e.spec, e.order, e.vertices, e.edges, e.ass_count
            ));
        }
        s
    }
}

/// Builds, checks and labels every ring. Construction errors are recorded
/// per entry; entries keep input order.
pub fn run_census(specs: &[RingSpec], limits: &Limits) -> Census {
    let entries: Vec<CensusEntry> = specs.par_iter().map(|s| census_entry(s, limits)).collect();
    let mut by_label: BTreeMap<String, IsoGroup> = BTreeMap::new();
    for e in entries.iter().filter(|e| e.status != EntryStatus::Error) {
        by_label
            .entry(e.label.clone())
            .or_insert_with(|| IsoGroup {
                label: e.label.clone(),
                exact: e.label_exact,
                vertices: e.vertices,
                witnesses: Vec::new(),
            })
            .witnesses
            .push(e.spec.clone());
    }
    let mut groups: Vec<IsoGroup> = by_label.into_values().collect();
    groups.sort_by(|a, b| {
        a.vertices
            .cmp(&b.vertices)
            .then_with(|| a.label.cmp(&b.label))
    });
    Census { entries, groups }
}

fn error_entry(spec: &RingSpec, msg: String) -> CensusEntry {
    CensusEntry {
        spec: spec.to_string(),
        order: 0,
        label: String::new(),
        label_exact: false,
        vertices: 0,
        edges: 0,
        ass_count: 0,
        characteristic: 0,
        local: false,
        fan_n: None,
        has_leaf: false,
        is_path: false,
        oracle_match: None,
        status: EntryStatus::Error,
        failures: Vec::new(),
        error: Some(msg),
    }
}

pub fn census_entry(spec: &RingSpec, limits: &Limits) -> CensusEntry {
    let opts = GammaOptions {
        flags: true,
        seed: limits.validation.seed,
    };
    let built = spec
        .build(limits)
        .and_then(|r| gamma_e_with(&r, &opts).map(|e| (r, e)));
    let (ring, e) = match built {
        Ok(x) => x,
        Err(err) => return error_entry(spec, err.to_string()),
    };
    let mut failures = Vec::new();
    match check_graph(&e) {
        Ok(rep) => failures.extend(
            rep.failures()
                .into_iter()
                .map(|c| format!("{}: {}", c.id, c.status.detail())),
        ),
        Err(err) => failures.push(err.to_string()),
    }
    let oracle_match = match spec {
        RingSpec::Zmod(n) => Some(oracle_agrees(&e, *n)),
        _ => None,
    };
    if oracle_match == Some(false) {
        failures.push("oracle: class graph differs from divisor graph".into());
    }
    failures.extend(invariant_failures(spec, &ring, &e));
    let ch = characteristic(&ring);
    let local = is_local(&ring);
    let label = canonical_form(e.graph());
    let d = e.degrees();
    let is_path = e.order() >= 1
        && e.edge_count() + 1 == e.order()
        && d.iter().all(|&x| x <= 2)
        && crate::graph::is_connected(e.graph()).unwrap_or(false);
    CensusEntry {
        spec: spec.to_string(),
        order: ring.order(),
        label: label.to_string(),
        label_exact: label.exact,
        vertices: e.order(),
        edges: e.edge_count(),
        ass_count: (0..e.order()).filter(|&v| e.is_ass(v)).count(),
        characteristic: ch,
        local,
        fan_n: fan_shape(e.graph()).map(|f| f.n),
        has_leaf: !leaves(e.graph()).is_empty(),
        is_path,
        oracle_match,
        status: if failures.is_empty() {
            EntryStatus::AllPass
        } else {
            EntryStatus::Failed
        },
        failures,
        error: None,
    }
}

/// The pipeline graph of `Z_n` must equal the divisor graph, including the
/// representative names, and be isomorphic to it.
fn oracle_agrees(e: &EGraph, n: u64) -> bool {
    let Ok(o) = zn_oracle(n) else { return false };
    o.labels() == e.graph().labels()
        && o.edges() == e.graph().edges()
        && is_isomorphic(&o, e.graph()).isomorphic
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn prime_power(n: u64) -> bool {
    (2..=n).find(|p| n.is_multiple_of(*p)).is_some_and(|p| {
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        m == 1 && is_prime(p)
    })
}

fn invariant_failures(spec: &RingSpec, ring: &Ring, e: &EGraph) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(parts) = ring.parts() {
        let order: usize = parts.iter().map(Ring::order).product();
        if order != ring.order() {
            out.push(format!("product order {} != {order}", ring.order()));
        }
        let ch = parts.iter().map(characteristic).fold(1, lcm);
        if ch != characteristic(ring) {
            out.push(format!(
                "product characteristic {} != lcm {ch}",
                characteristic(ring)
            ));
        }
    }
    if let RingSpec::Zmod(n) = spec {
        if prime_power(*n) && !is_local(ring) {
            out.push(format!("Z{n} is not local"));
        }
    }
    if e.order() > 0 {
        match realizability_screen(e.graph()) {
            Ok(v) if !v.passes_necessary => {
                out.push(format!("screen rejects the class graph: {:?}", v.violated))
            }
            Err(err) => out.push(err.to_string()),
            _ => {}
        }
    }
    let classes = e.classes();
    let members: BTreeSet<ElemId> = classes
        .iter()
        .flat_map(|c| c.members.iter().copied())
        .collect();
    if members.len() != e.structure().zero_divisor_count() {
        out.push("classes overlap".into());
    }
    if ring.order() <= IDEAL_CHECK_LIMIT {
        for c in classes {
            let a = c.ann.members(ring.order());
            let closed = a.contains(&ring.zero())
                && a.iter()
                    .all(|&x| a.iter().all(|&y| c.ann.contains(ring.add(x, y))))
                && a.iter()
                    .all(|&x| ring.elements().all(|r| c.ann.contains(ring.mul(x, r))));
            if !closed {
                out.push(format!(
                    "ann of [{}] is not an ideal",
                    ring.element_name(c.rep)
                ));
            }
        }
    }
    out
}

/// A ring whose class graph is a star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanFinding {
    pub spec: String,
    pub n: usize,
    pub characteristic: u64,
    pub ass_count: usize,
    pub local: bool,
    /// The star has at least 4 vertices, so the star conclusions apply.
    pub conclusions_apply: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanSearch {
    pub findings: Vec<FanFinding>,
    pub realized: BTreeSet<usize>,
    pub characteristics: BTreeSet<u64>,
    pub errors: Vec<(String, String)>,
}

/// Records every ring in `specs` whose class graph is `K_{n,1}`.
pub fn fan_search(specs: &[RingSpec], limits: &Limits) -> FanSearch {
    let results: Vec<std::result::Result<Option<FanFinding>, (String, String)>> = specs
        .par_iter()
        .map(|spec| {
            let found: Result<Option<FanFinding>> = (|| {
                let ring = spec.build(limits)?;
                let e = gamma_e_with(
                    &ring,
                    &GammaOptions {
                        flags: true,
                        seed: limits.validation.seed,
                    },
                )?;
                Ok(fan_shape(e.graph()).map(|f| FanFinding {
                    spec: spec.to_string(),
                    n: f.n,
                    characteristic: characteristic(&ring),
                    ass_count: (0..e.order()).filter(|&v| e.is_ass(v)).count(),
                    local: is_local(&ring),
                    conclusions_apply: e.order() >= 4,
                }))
            })();
            found.map_err(|err| (spec.to_string(), err.to_string()))
        })
        .collect();
    let mut out = FanSearch {
        findings: Vec::new(),
        realized: BTreeSet::new(),
        characteristics: BTreeSet::new(),
        errors: Vec::new(),
    };
    for r in results {
        match r {
            Ok(Some(f)) => {
                out.realized.insert(f.n);
                out.characteristics.insert(f.characteristic);
                out.findings.push(f);
            }
            Ok(None) => {}
            Err(e) => out.errors.push(e),
        }
    }
    out
}
