//! Executable structural checks on the class graph of a ring.
//!
//! Each check recomputes what it needs from the ring and the graph; none
//! relies on another check's outcome.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    diameter, fan_shape, is_complete, is_connected, is_cycle, is_regular, leaves,
    multipartite_decomposition, GraphView,
};
use crate::ring::{characteristic, is_local, ElemId, Ring};
use crate::zd::{cover_report_for, gamma_e, EGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckId {
    AssEdge,
    ConnDiam,
    Incomplete,
    Three,
    Rpartite,
    Nocycle,
    Nonregular,
    Contain,
    Fan,
    MaxdegUnique,
    NoAssLeaf,
    LeafNeighbor,
    ChainDegrees,
    Allmax,
    Cover,
}

impl CheckId {
    pub const ALL: [CheckId; 15] = [
        CheckId::AssEdge,
        CheckId::ConnDiam,
        CheckId::Incomplete,
        CheckId::Three,
        CheckId::Rpartite,
        CheckId::Nocycle,
        CheckId::Nonregular,
        CheckId::Contain,
        CheckId::Fan,
        CheckId::MaxdegUnique,
        CheckId::NoAssLeaf,
        CheckId::LeafNeighbor,
        CheckId::ChainDegrees,
        CheckId::Allmax,
        CheckId::Cover,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::AssEdge => "ASS_EDGE",
            CheckId::ConnDiam => "CONN_DIAM",
            CheckId::Incomplete => "INCOMPLETE",
            CheckId::Three => "THREE",
            CheckId::Rpartite => "RPARTITE",
            CheckId::Nocycle => "NOCYCLE",
            CheckId::Nonregular => "NONREGULAR",
            CheckId::Contain => "CONTAIN",
            CheckId::Fan => "FAN",
            CheckId::MaxdegUnique => "MAXDEG_UNIQUE",
            CheckId::NoAssLeaf => "NO_ASS_LEAF",
            CheckId::LeafNeighbor => "LEAF_NEIGHBOR",
            CheckId::ChainDegrees => "CHAIN_DEGREES",
            CheckId::Allmax => "ALLMAX",
            CheckId::Cover => "COVER",
        }
    }

    /// The statement being checked.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::AssEdge => "associated primes are pairwise adjacent; every vertex is one or neighbors a maximal one",
            CheckId::ConnDiam => "the class graph is connected with diameter at most 3",
            CheckId::Incomplete => "a class graph on at least 3 vertices is not complete",
            CheckId::Three => "the only class graph on 3 vertices is the path",
            CheckId::Rpartite => "a complete r-partite class graph is a star",
            CheckId::Nocycle => "a class graph is never a cycle",
            CheckId::Nonregular => "a class graph on more than 2 vertices is not regular",
            CheckId::Contain => "nested annihilators have non-decreasing degrees",
            CheckId::Fan => "a star on at least 4 vertices forces one prime p, p^3 = 0, characteristic 2, 4 or 8, local",
            CheckId::MaxdegUnique => "a unique vertex of largest degree is maximal among annihilators",
            CheckId::NoAssLeaf => "on more than 3 vertices no associated prime is a leaf",
            CheckId::LeafNeighbor => "a vertex carrying a leaf is an associated prime maximal among annihilators",
            CheckId::ChainDegrees => "degrees strictly increase along chains of associated primes",
            CheckId::Allmax => "every vertex of largest degree is maximal among annihilators",
            CheckId::Cover => "the weighted cover equals the classic graph iff square-zero classes are singletons",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Pass { witness: Option<String> },
    Fail { witness: String },
    NotApplicable { reason: String },
}

impl Status {
    fn pass(w: impl Into<String>) -> Self {
        Status::Pass {
            witness: Some(w.into()),
        }
    }

    fn na(reason: impl Into<String>) -> Self {
        Status::NotApplicable {
            reason: reason.into(),
        }
    }

    fn fail(w: impl Into<String>) -> Self {
        Status::Fail { witness: w.into() }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail { .. })
    }

    pub fn word(&self) -> &'static str {
        match self {
            Status::Pass { .. } => "pass",
            Status::Fail { .. } => "FAIL",
            Status::NotApplicable { .. } => "n/a",
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Status::Pass { witness } => witness.as_deref().unwrap_or(""),
            Status::Fail { witness } => witness,
            Status::NotApplicable { reason } => reason,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub anchor: &'static str,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub ring: String,
    pub checks: Vec<CheckResult>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_fail())
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.status.is_fail()).collect()
    }

    pub fn get(&self, id: CheckId) -> &CheckResult {
        self.checks
            .iter()
            .find(|c| c.id == id)
            .expect("every check is present")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mut line = format!(
                "{:<14} {:<4} {}",
                c.id.name(),
                c.status.word(),
                c.status.detail()
            );
            if let Some(n) = &c.note {
                line.push_str(&format!(" (note: {n})"));
            }
            s.push_str(line.trim_end());
            s.push('\n');
        }
        s
    }
}

pub fn check_all(ring: &Ring) -> Result<TheoremReport> {
    check_graph(&gamma_e(ring)?)
}

/// Runs every check on a class graph that carries prime flags.
pub fn check_graph(e: &EGraph) -> Result<TheoremReport> {
    if !e.has_flags() {
        return Err(Error::Domain(
            "class graph was built without associated-prime flags".into(),
        ));
    }
    let checks = CheckId::ALL
        .iter()
        .map(|&id| {
            let (status, note) = run(id, e);
            CheckResult {
                id,
                anchor: id.anchor(),
                status,
                note,
            }
        })
        .collect();
    Ok(TheoremReport {
        ring: e.ring().name().to_string(),
        checks,
    })
}

fn run(id: CheckId, e: &EGraph) -> (Status, Option<String>) {
    let k = e.order();
    if k == 0 && id != CheckId::Cover {
        return (Status::na("no nonzero zero divisors"), None);
    }
    match id {
        CheckId::AssEdge => (ass_edge(e), None),
        CheckId::ConnDiam => (conn_diam(e), None),
        CheckId::Incomplete => (incomplete(e), None),
        CheckId::Three => (three(e), None),
        CheckId::Rpartite => (rpartite(e), None),
        CheckId::Nocycle => (nocycle(e), None),
        CheckId::Nonregular => (nonregular(e), None),
        CheckId::Contain => contain(e),
        CheckId::Fan => (fan(e), None),
        CheckId::MaxdegUnique => (maxdeg_unique(e), None),
        CheckId::NoAssLeaf => (no_ass_leaf(e), None),
        CheckId::LeafNeighbor => (leaf_neighbor(e), None),
        CheckId::ChainDegrees => (chain_degrees(e), None),
        CheckId::Allmax => allmax(e),
        CheckId::Cover => (cover(e), None),
    }
}

fn v(e: &EGraph, i: usize) -> String {
    format!("[{}]", e.rep_name(i))
}

fn list(e: &EGraph, vs: &[usize]) -> String {
    vs.iter().map(|&i| v(e, i)).collect::<Vec<_>>().join(",")
}

fn ass_edge(e: &EGraph) -> Status {
    let ass: Vec<usize> = (0..e.order()).filter(|&i| e.is_ass(i)).collect();
    for (a, &x) in ass.iter().enumerate() {
        for &y in &ass[a + 1..] {
            if !e.adjacent(x, y) {
                return Status::fail(format!("{} and {} not adjacent", v(e, x), v(e, y)));
            }
        }
    }
    for i in 0..e.order() {
        if !e.is_ass(i)
            && !e
                .neighbors(i)
                .iter()
                .any(|&w| e.is_ass(w) && e.is_max_in_f(w))
        {
            return Status::fail(format!("{} has no maximal associated neighbor", v(e, i)));
        }
    }
    Status::pass(format!("Ass = {{{}}}", list(e, &ass)))
}

fn conn_diam(e: &EGraph) -> Status {
    match (is_connected(e.graph()), diameter(e.graph())) {
        (Ok(true), Ok(Some(d))) if d <= 3 => Status::pass(format!("diameter {d}")),
        (Ok(true), Ok(Some(d))) => Status::fail(format!("diameter {d}")),
        _ => Status::fail("disconnected"),
    }
}

fn incomplete(e: &EGraph) -> Status {
    if e.order() < 3 {
        return Status::na(format!("{} vertices", e.order()));
    }
    if is_complete(e.graph()) {
        Status::fail(format!("complete on {} vertices", e.order()))
    } else {
        Status::pass(format!("{} vertices, {} edges", e.order(), e.edge_count()))
    }
}

fn three(e: &EGraph) -> Status {
    if e.order() != 3 {
        return Status::na(format!("{} vertices", e.order()));
    }
    let mut d = e.degrees();
    d.sort_unstable();
    if d == [1, 1, 2] {
        let mid = (0..3).find(|&i| e.degree(i) == 2).expect("middle vertex");
        Status::pass(format!("path with middle {}", v(e, mid)))
    } else {
        Status::fail(format!("degrees {d:?}"))
    }
}

fn rpartite(e: &EGraph) -> Status {
    if e.order() < 2 {
        return Status::na("single vertex");
    }
    let Some(parts) = multipartite_decomposition(e.graph()) else {
        return Status::na("not complete r-partite");
    };
    let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    if parts.len() == 2 && sizes.contains(&1) {
        let n = sizes.iter().max().copied().unwrap_or(1);
        Status::pass(format!("K_{{{n},1}}"))
    } else {
        Status::fail(format!("{}-partite with part sizes {sizes:?}", parts.len()))
    }
}

fn nocycle(e: &EGraph) -> Status {
    if is_cycle(e.graph()) {
        Status::fail(format!("cycle on {} vertices", e.order()))
    } else {
        Status::pass("")
    }
}

fn nonregular(e: &EGraph) -> Status {
    if e.order() <= 2 {
        return Status::na(format!("{} vertices", e.order()));
    }
    if is_regular(e.graph()) {
        Status::fail(format!("{}-regular", e.degree(0)))
    } else {
        let d = e.degrees();
        Status::pass(format!(
            "degrees {}..{}",
            d.iter().min().unwrap_or(&0),
            d.iter().max().unwrap_or(&0)
        ))
    }
}

fn contain(e: &EGraph) -> (Status, Option<String>) {
    let cls = e.classes();
    let mut pairs = 0;
    let mut equal = Vec::new();
    for x in 0..cls.len() {
        for y in 0..cls.len() {
            if x != y && cls[x].ann.is_proper_subset(&cls[y].ann) {
                pairs += 1;
                let (dx, dy) = (e.degree(x), e.degree(y));
                if dx > dy {
                    return (
                        Status::fail(format!(
                            "ann{} inside ann{} but degrees {dx} > {dy}",
                            v(e, x),
                            v(e, y)
                        )),
                        None,
                    );
                }
                if dx == dy {
                    equal.push(format!("deg{} = deg{} = {dx}", v(e, x), v(e, y)));
                }
            }
        }
    }
    if pairs == 0 {
        return (Status::na("no strictly nested annihilators"), None);
    }
    let note = (!equal.is_empty()).then(|| format!("equality: {}", equal.join("; ")));
    (Status::pass(format!("{pairs} nested pairs")), note)
}

fn fan(e: &EGraph) -> Status {
    let Some(shape) = fan_shape(e.graph()) else {
        return Status::na("not a star");
    };
    if e.order() < 4 {
        return Status::na(format!("K_{{{},1}} has fewer than 4 vertices", shape.n));
    }
    let ring = e.ring();
    let ass: Vec<usize> = (0..e.order()).filter(|&i| e.is_ass(i)).collect();
    if ass.len() != 1 {
        return Status::fail(format!(
            "K_{{{},1}} with Ass = {{{}}}",
            shape.n,
            list(e, &ass)
        ));
    }
    let p: Vec<ElemId> = e.classes()[ass[0]].ann.members(ring.order());
    let mut products: Vec<ElemId> = p
        .iter()
        .flat_map(|&a| p.iter().map(move |&b| ring.mul(a, b)))
        .collect();
    products.sort_unstable();
    products.dedup();
    if let Some((s, c)) = products
        .iter()
        .flat_map(|&s| p.iter().map(move |&c| (s, c)))
        .find(|&(s, c)| ring.mul(s, c) != ring.zero())
    {
        return Status::fail(format!(
            "p^3 != 0: {} * {} != 0",
            ring.element_name(s),
            ring.element_name(c)
        ));
    }
    let ch = characteristic(ring);
    if ![2, 4, 8].contains(&ch) {
        return Status::fail(format!("characteristic {ch}"));
    }
    if !is_local(ring) {
        return Status::fail("not local");
    }
    Status::pass(format!(
        "K_{{{},1}}, Ass = {{{}}}, p^3 = 0, char {ch}, local",
        shape.n,
        v(e, ass[0])
    ))
}

fn max_degree_vertices(e: &EGraph) -> (usize, Vec<usize>) {
    let d = e.degrees();
    let m = d.iter().copied().max().unwrap_or(0);
    (m, (0..e.order()).filter(|&i| d[i] == m).collect())
}

fn maxdeg_unique(e: &EGraph) -> Status {
    let (m, top) = max_degree_vertices(e);
    if top.len() != 1 || e.order() < 2 {
        return Status::na("no unique vertex of largest degree");
    }
    if e.is_max_in_f(top[0]) {
        Status::pass(format!("{} of degree {m}", v(e, top[0])))
    } else {
        Status::fail(format!("{} of degree {m} is not maximal", v(e, top[0])))
    }
}

fn no_ass_leaf(e: &EGraph) -> Status {
    if e.order() <= 3 {
        return Status::na(format!("{} vertices", e.order()));
    }
    match (0..e.order()).find(|&i| e.is_ass(i) && e.degree(i) == 1) {
        Some(i) => Status::fail(format!("{} is an associated prime leaf", v(e, i))),
        None => Status::pass(format!("{} leaves", leaves(e.graph()).len())),
    }
}

fn leaf_neighbor(e: &EGraph) -> Status {
    if e.order() < 3 {
        return Status::na(format!("{} vertices", e.order()));
    }
    let lv = leaves(e.graph());
    let mut hubs: Vec<usize> = lv.iter().map(|&l| e.neighbors(l)[0]).collect();
    hubs.sort_unstable();
    hubs.dedup();
    for &h in &hubs {
        if !(e.is_ass(h) && e.is_max_in_f(h)) {
            return Status::fail(format!(
                "{} carries a leaf but is not a maximal prime",
                v(e, h)
            ));
        }
    }
    if hubs.is_empty() {
        Status::pass("no leaves")
    } else {
        Status::pass(format!("leaf carriers {}", list(e, &hubs)))
    }
}

fn chain_degrees(e: &EGraph) -> Status {
    if e.order() < 3 {
        return Status::na(format!("{} vertices", e.order()));
    }
    let cls = e.classes();
    let ass: Vec<usize> = (0..e.order()).filter(|&i| e.is_ass(i)).collect();
    let mut links = 0;
    // a chain is increasing iff each comparable pair is
    for &x in &ass {
        for &y in &ass {
            if cls[x].ann.is_proper_subset(&cls[y].ann) {
                links += 1;
                if e.degree(x) >= e.degree(y) {
                    return Status::fail(format!(
                        "ann{} inside ann{} with degrees {} >= {}",
                        v(e, x),
                        v(e, y),
                        e.degree(x),
                        e.degree(y)
                    ));
                }
            }
        }
    }
    if links == 0 {
        Status::na("associated primes are pairwise incomparable")
    } else {
        Status::pass(format!("{links} comparable pairs"))
    }
}

fn allmax(e: &EGraph) -> (Status, Option<String>) {
    if e.order() <= 2 {
        return (Status::na(format!("{} vertices", e.order())), None);
    }
    let (m, top) = max_degree_vertices(e);
    if let Some(&i) = top.iter().find(|&&i| !e.is_max_in_f(i)) {
        return (
            Status::fail(format!("{} of degree {m} is not maximal", v(e, i))),
            None,
        );
    }
    let lower: Vec<String> = (0..e.order())
        .filter(|&i| e.is_max_in_f(i) && e.degree(i) < m)
        .map(|i| format!("{} is maximal with degree {} < {m}", v(e, i), e.degree(i)))
        .collect();
    let note = (!lower.is_empty()).then(|| format!("converse fails: {}", lower.join("; ")));
    (Status::pass(format!("degree {m}: {}", list(e, &top))), note)
}

fn cover(e: &EGraph) -> Status {
    match cover_report_for(e) {
        Err(Error::CapExceeded(msg)) => Status::na(msg),
        Err(err) => Status::fail(err.to_string()),
        Ok(r) if r.consistent() => match &r.witness {
            None => Status::pass(if r.equal { "equal" } else { "differs" }),
            Some(w) => Status::pass(format!(
                "differs at [{}] of weight {}",
                w.class_rep, w.weight
            )),
        },
        Ok(r) => Status::fail(format!(
            "equal={} criterion={} subgraph={} completion={}",
            r.equal, r.criterion, r.subgraph, r.completion_matches
        )),
    }
}
