//! Simple undirected graphs with sorted adjacency lists.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{parse_err, Result};
use crate::{content_lines, parse_num};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Loops are rejected, duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(crate::Error::OutOfRange(format!("edge ({u},{v}) with n = {n}")));
            }
            if u == v {
                return Err(crate::Error::OutOfRange(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle length at least 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Returns false if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loops are not allowed");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(p) => {
                self.adj[u].insert(p, v);
                let q = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(q, u);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(p) => {
                self.adj[u].remove(p);
                let q = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(q);
                true
            }
            Err(_) => false,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Induced subgraph; vertex `verts[i]` becomes `i`.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut pos = std::collections::HashMap::with_capacity(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            pos.insert(v, i);
        }
        let mut g = Graph::new(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = pos.get(w) {
                    if i < j {
                        g.add_edge(i, j);
                    }
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend(other.adj.iter().map(|ns| ns.iter().map(|&v| v + off).collect()));
        g
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut q = VecDeque::from([src]);
        while let Some(v) = q.pop_front() {
            let dv = dist[v].unwrap();
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.components().len() == 1
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\n", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "edge {u} {v}");
        }
        s
    }

    /// Parses the `graph <n>` / `edge <u> <v>` format.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
        let mut toks = head.split_whitespace();
        if toks.next() != Some("graph") {
            return Err(parse_err(ln, "expected `graph <n>`"));
        }
        let n: usize = parse_num(toks.next(), ln, "vertex count")?;
        let mut g = Graph::new(n);
        for (ln, l) in lines {
            let mut toks = l.split_whitespace();
            match toks.next() {
                Some("edge") => {
                    let u: usize = parse_num(toks.next(), ln, "vertex")?;
                    let v: usize = parse_num(toks.next(), ln, "vertex")?;
                    if u >= n || v >= n {
                        return Err(parse_err(ln, format!("vertex out of range (n = {n})")));
                    }
                    if u == v {
                        return Err(parse_err(ln, "loops are not allowed"));
                    }
                    g.add_edge(u, v);
                }
                Some(t) => return Err(parse_err(ln, format!("unexpected keyword `{t}`"))),
                None => {}
            }
        }
        Ok(g)
    }
}
