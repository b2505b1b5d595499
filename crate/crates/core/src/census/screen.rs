use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    diameter, is_complete, is_connected, is_cycle, is_regular, multipartite_decomposition,
    GraphView, PlainGraph,
};
use crate::theorems::CheckId;

/// Outcome of testing a graph against the necessary conditions for being a
/// class graph. Passing is not a proof of realizability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenVerdict {
    pub passes_necessary: bool,
    pub violated: Vec<CheckId>,
}

/// Evaluates every graph-only condition and lists all that fail.
pub fn realizability_screen<G: GraphView + ?Sized>(g: &G) -> Result<ScreenVerdict> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Domain("empty graph".into()));
    }
    let mut violated = Vec::new();
    let diam_ok = is_connected(g)? && diameter(g)?.is_some_and(|d| d <= 3);
    if !diam_ok {
        violated.push(CheckId::ConnDiam);
    }
    if n >= 3 && is_complete(g) {
        violated.push(CheckId::Incomplete);
    }
    if n == 3 {
        let mut d = g.degrees();
        d.sort_unstable();
        if d != [1, 1, 2] {
            violated.push(CheckId::Three);
        }
    }
    if n >= 2 {
        if let Some(parts) = multipartite_decomposition(g) {
            if parts.len() != 2 || !parts.iter().any(|p| p.len() == 1) {
                violated.push(CheckId::Rpartite);
            }
        }
    }
    if is_cycle(g) {
        violated.push(CheckId::Nocycle);
    }
    if n > 2 && is_regular(g) {
        violated.push(CheckId::Nonregular);
    }
    Ok(ScreenVerdict {
        passes_necessary: violated.is_empty(),
        violated,
    })
}

#[derive(Deserialize)]
struct EdgeListJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Reads `{"n": 4, "edges": [[0,1],[1,2]]}`.
pub fn parse_graph_json(text: &str) -> Result<PlainGraph> {
    let g: EdgeListJson = serde_json::from_str(text)?;
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
    PlainGraph::from_edges(g.n, &edges)
}

/// Reads node and edge statements of an undirected DOT graph. Node ids are
/// numbered in order of first appearance; `label` attributes are kept.
pub fn parse_dot(text: &str) -> Result<PlainGraph> {
    let toks = tokenize(text)?;
    let mut i = 0;
    let at = |i: usize| toks.get(i).map(|(_, t)| t.as_str());
    let pos = |i: usize| toks.get(i).map_or(text.len(), |(p, _)| *p);
    if at(i) == Some("strict") {
        i += 1;
    }
    if at(i) != Some("graph") {
        return Err(Error::parse(pos(i), "expected 'graph'"));
    }
    i += 1;
    if at(i) != Some("{") {
        i += 1;
    }
    if at(i) != Some("{") {
        return Err(Error::parse(pos(i), "expected '{'"));
    }
    i += 1;
    let mut names: Vec<String> = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut edges = Vec::new();
    let id_of = |name: &str, names: &mut Vec<String>, labels: &mut Vec<Option<String>>| {
        names.iter().position(|n| n == name).unwrap_or_else(|| {
            names.push(name.to_string());
            labels.push(None);
            names.len() - 1
        })
    };
    loop {
        match at(i) {
            None => return Err(Error::parse(text.len(), "missing '}'")),
            Some("}") => break,
            Some(";") => i += 1,
            Some(tok) if is_id(tok) => {
                let mut chain = vec![id_of(&unquote(tok), &mut names, &mut labels)];
                i += 1;
                while at(i) == Some("--") {
                    match at(i + 1) {
                        Some(t) if is_id(t) => {
                            chain.push(id_of(&unquote(t), &mut names, &mut labels));
                            i += 2;
                        }
                        _ => return Err(Error::parse(pos(i + 1), "expected a node after '--'")),
                    }
                }
                if at(i) == Some("[") {
                    i += 1;
                    while at(i) != Some("]") {
                        let key = at(i).ok_or_else(|| Error::parse(text.len(), "missing ']'"))?;
                        if at(i + 1) == Some("=") {
                            let val = at(i + 2).ok_or_else(|| {
                                Error::parse(text.len(), "missing attribute value")
                            })?;
                            if key == "label" && chain.len() == 1 {
                                labels[chain[0]] = Some(unquote(val));
                            }
                            i += 3;
                        } else {
                            i += 1;
                        }
                        if at(i) == Some(",") || at(i) == Some(";") {
                            i += 1;
                        }
                    }
                    i += 1;
                }
                for w in chain.windows(2) {
                    edges.push((w[0], w[1]));
                }
            }
            Some(_) => return Err(Error::parse(pos(i), "unsupported DOT statement")),
        }
    }
    let labels = names
        .iter()
        .zip(labels)
        .map(|(n, l)| l.unwrap_or_else(|| n.clone()))
        .collect();
    let mut g = PlainGraph::with_labels(labels);
    for (a, b) in edges {
        g.add_edge(a, b)?;
    }
    Ok(g)
}

fn is_id(tok: &str) -> bool {
    tok.starts_with('"')
        || tok
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.')
}

fn unquote(tok: &str) -> String {
    match tok.strip_prefix('"').and_then(|t| t.strip_suffix('"')) {
        Some(inner) => inner.replace("\\\"", "\"").replace("\\\\", "\\"),
        None => tok.to_string(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (p, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1).map(|x| x.1) == Some('/') {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
        } else if c == '-' && chars.get(i + 1).map(|x| x.1) == Some('-') {
            out.push((p, "--".to_string()));
            i += 2;
        } else if "{}[];,=".contains(c) {
            out.push((p, c.to_string()));
            i += 1;
        } else if c == '"' {
            let mut s = String::from('"');
            i += 1;
            loop {
                let Some(&(_, ch)) = chars.get(i) else {
                    return Err(Error::parse(p, "unterminated string"));
                };
                s.push(ch);
                i += 1;
                if ch == '\\' {
                    if let Some(&(_, next)) = chars.get(i) {
                        s.push(next);
                        i += 1;
                    }
                } else if ch == '"' {
                    break;
                }
            }
            out.push((p, s));
        } else if c.is_alphanumeric() || c == '_' || c == '.' {
            let start = i;
            while i < chars.len()
                && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '.')
            {
                i += 1;
            }
            out.push((p, chars[start..i].iter().map(|x| x.1).collect()));
        } else {
            return Err(Error::parse(p, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}
