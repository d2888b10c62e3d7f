//! Marked graphs, generalized subgraph freeness and the constructions relating
//! neighbourhood profiles to forbidden marked subgraphs.

mod deg2;
mod embed;
mod realise;

pub use deg2::{deg2_augment, deg2_candidates, enumerate_deg2_graphs, tau_bound, Deg2Augment, Deg2Graph, Deg2Member};
pub use embed::{all_embeddings, covers, embed, embed_avoiding, is_embedding, is_family_free, EMBEDDING_CAP};
pub use realise::{
    enumerate_types, k_realisations, profile_to_gsf, small_graphs, union_family, DEFAULT_SIZE_CAP,
};

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::canon::canonical_code;
use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;
use crate::{content_lines, parse_num};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Full,
    Semifull,
    Partial,
}

impl Mark {
    /// Combines two marks with precedence full > semifull > partial.
    pub fn join(self, other: Mark) -> Mark {
        self.min(other)
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::Full => "full",
            Mark::Semifull => "semifull",
            Mark::Partial => "partial",
        })
    }
}

impl FromStr for Mark {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Mark, String> {
        match s {
            "full" => Ok(Mark::Full),
            "semifull" => Ok(Mark::Semifull),
            "partial" => Ok(Mark::Partial),
            _ => Err(format!("unknown mark `{s}`")),
        }
    }
}

/// A simple graph with a mark on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedGraph {
    graph: Graph,
    marks: Vec<Mark>,
}

impl MarkedGraph {
    pub fn new(graph: Graph, marks: Vec<Mark>) -> Result<Self> {
        if marks.len() != graph.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} marks for {} vertices",
                marks.len(),
                graph.n()
            )));
        }
        Ok(MarkedGraph { graph, marks })
    }

    pub fn uniform(graph: Graph, mark: Mark) -> Self {
        let marks = vec![mark; graph.n()];
        MarkedGraph { graph, marks }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn mark(&self, v: usize) -> Mark {
        self.marks[v]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn disjoint_union(&self, other: &MarkedGraph) -> MarkedGraph {
        let mut marks = self.marks.clone();
        marks.extend_from_slice(&other.marks);
        MarkedGraph { graph: self.graph.disjoint_union(&other.graph), marks }
    }

    /// Equal for two marked graphs iff they are isomorphic preserving marks.
    pub fn canonical_code(&self) -> Vec<u32> {
        let cols: Vec<u32> = self.marks.iter().map(|&m| m as u32).collect();
        canonical_code(&self.graph, &cols)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("marked {}\n", self.n());
        for (v, m) in self.marks.iter().enumerate() {
            let _ = writeln!(s, "mark {v} {m}");
        }
        for (u, v) in self.graph.edges() {
            let _ = writeln!(s, "edge {u} {v}");
        }
        s
    }

    /// Parses `marked <n>`, then `mark <v> <mark>` for every vertex and `edge <u> <v>` lines.
    pub fn parse(text: &str) -> Result<MarkedGraph> {
        parse_marked(content_lines(text))
    }
}

fn parse_marked<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<MarkedGraph> {
    let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "empty marked graph"))?;
    let mut toks = head.split_whitespace();
    if toks.next() != Some("marked") {
        return Err(parse_err(ln, "expected `marked <n>`"));
    }
    let n: usize = parse_num(toks.next(), ln, "vertex count")?;
    let mut g = Graph::new(n);
    let mut marks: Vec<Option<Mark>> = vec![None; n];
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("mark") => {
                let v: usize = parse_num(toks.next(), ln, "vertex")?;
                if v >= n {
                    return Err(parse_err(ln, format!("vertex out of range (n = {n})")));
                }
                let m = toks
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing mark"))?
                    .parse()
                    .map_err(|e: String| parse_err(ln, e))?;
                marks[v] = Some(m);
            }
            Some("edge") => {
                let u: usize = parse_num(toks.next(), ln, "vertex")?;
                let v: usize = parse_num(toks.next(), ln, "vertex")?;
                if u >= n || v >= n || u == v {
                    return Err(parse_err(ln, format!("bad edge {u} {v} (n = {n})")));
                }
                g.add_edge(u, v);
            }
            Some(t) => return Err(parse_err(ln, format!("unexpected keyword `{t}`"))),
            None => {}
        }
    }
    let marks = marks
        .into_iter()
        .enumerate()
        .map(|(v, m)| m.ok_or_else(|| parse_err(ln, format!("vertex {v} has no mark"))))
        .collect::<Result<_>>()?;
    Ok(MarkedGraph { graph: g, marks })
}

/// A finite set of marked graphs, deduplicated up to marked isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkedFamily {
    members: Vec<MarkedGraph>,
    codes: Vec<Vec<u32>>,
}

impl MarkedFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `f` unless an isomorphic member exists; returns whether it was added.
    pub fn insert(&mut self, f: MarkedGraph) -> bool {
        let code = f.canonical_code();
        if self.codes.contains(&code) {
            return false;
        }
        self.codes.push(code);
        self.members.push(f);
        true
    }

    pub fn extend(&mut self, fs: impl IntoIterator<Item = MarkedGraph>) {
        for f in fs {
            self.insert(f);
        }
    }

    pub fn members(&self) -> &[MarkedGraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Largest member size.
    pub fn max_size(&self) -> usize {
        self.members.iter().map(MarkedGraph::n).max().unwrap_or(0)
    }

    pub fn contains(&self, f: &MarkedGraph) -> bool {
        self.codes.contains(&f.canonical_code())
    }

    /// Members separated by `---` lines.
    pub fn to_text(&self) -> String {
        self.members.iter().map(MarkedGraph::to_text).collect::<Vec<_>>().join("---\n")
    }

    pub fn parse(text: &str) -> Result<MarkedFamily> {
        let mut fam = MarkedFamily::new();
        let mut block: Vec<(usize, &str)> = Vec::new();
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        for (ln, l) in lines.into_iter().chain(std::iter::once((0, "---"))) {
            if l == "---" {
                if !block.is_empty() {
                    fam.insert(parse_marked(block.drain(..))?);
                }
            } else {
                block.push((ln, l));
            }
        }
        Ok(fam)
    }
}

impl FromIterator<MarkedGraph> for MarkedFamily {
    fn from_iter<I: IntoIterator<Item = MarkedGraph>>(iter: I) -> Self {
        let mut f = MarkedFamily::new();
        f.extend(iter);
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let f = MarkedGraph::new(Graph::path(3), vec![Mark::Partial, Mark::Full, Mark::Semifull]).unwrap();
        assert_eq!(MarkedGraph::parse(&f.to_text()).unwrap(), f);
        let fam: MarkedFamily = [f.clone(), MarkedGraph::uniform(Graph::new(1), Mark::Full)].into_iter().collect();
        let back = MarkedFamily::parse(&fam.to_text()).unwrap();
        assert_eq!(back.len(), 2);
        assert!(back.contains(&f));
        assert!(MarkedGraph::parse("marked 2\nmark 0 full\n").is_err());
    }

    #[test]
    fn dedup_respects_marks() {
        let a = MarkedGraph::new(Graph::path(2), vec![Mark::Full, Mark::Partial]).unwrap();
        let b = MarkedGraph::new(Graph::path(2), vec![Mark::Partial, Mark::Full]).unwrap();
        let c = MarkedGraph::uniform(Graph::path(2), Mark::Full);
        let fam: MarkedFamily = [a, b, c].into_iter().collect();
        assert_eq!(fam.len(), 2);
    }
}
