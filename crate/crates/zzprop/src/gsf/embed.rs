use super::{Mark, MarkedFamily, MarkedGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Maximum number of embeddings [`all_embeddings`] will collect.
pub const EMBEDDING_CAP: usize = 1_000_000;

const UNSET: usize = usize::MAX;

struct Search<'a> {
    f: &'a MarkedGraph,
    g: &'a Graph,
    allowed: Vec<bool>,
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(f: &'a MarkedGraph, g: &'a Graph, avoid: &[usize]) -> Self {
        let fg = f.graph();
        let mut order = Vec::with_capacity(f.n());
        let mut anchor = Vec::with_capacity(f.n());
        let mut seen = vec![false; f.n()];
        // BFS per component so that most vertices have an already mapped neighbour
        for s in 0..f.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let start = order.len();
            order.push(s);
            anchor.push(None);
            let mut i = start;
            while i < order.len() {
                let v = order[i];
                i += 1;
                for &w in fg.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                        anchor.push(Some(v));
                    }
                }
            }
        }
        let mut allowed = vec![true; g.n()];
        for &b in avoid {
            if b < g.n() {
                allowed[b] = false;
            }
        }
        Search { f, g, allowed, order, anchor, map: vec![UNSET; f.n()], used: vec![false; g.n()] }
    }

    fn fits(&self, level: usize, y: usize) -> bool {
        let x = self.order[level];
        let fg = self.f.graph();
        if self.used[y] || !self.allowed[y] {
            return false;
        }
        let (dx, dy) = (fg.degree(x), self.g.degree(y));
        if dy < dx || (self.f.mark(x) == Mark::Full && dy != dx) {
            return false;
        }
        for &x2 in &self.order[..level] {
            let y2 = self.map[x2];
            let in_f = fg.has_edge(x, x2);
            let in_g = self.g.has_edge(y, y2);
            if in_f && !in_g {
                return false;
            }
            if in_g && !in_f && (self.f.mark(x) != Mark::Partial || self.f.mark(x2) != Mark::Partial) {
                return false;
            }
        }
        true
    }

    /// Calls `visit` on every embedding until it returns false. Returns false if stopped.
    fn run(&mut self, level: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if level == self.order.len() {
            return visit(&self.map);
        }
        let cands: Vec<usize> = match self.anchor[level] {
            Some(p) => self.g.neighbours(self.map[p]).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        let x = self.order[level];
        for y in cands {
            if !self.fits(level, y) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            let go_on = self.run(level + 1, visit);
            self.used[y] = false;
            self.map[x] = UNSET;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// The first embedding of `f` into `g` found by backtracking, as a vertex map.
pub fn embed(f: &MarkedGraph, g: &Graph) -> Option<Vec<usize>> {
    embed_avoiding(f, g, &[])
}

/// An embedding of `f` into `g` whose image avoids `avoid`.
pub fn embed_avoiding(f: &MarkedGraph, g: &Graph, avoid: &[usize]) -> Option<Vec<usize>> {
    if f.n() > g.n() {
        return None;
    }
    let mut s = Search::new(f, g, avoid);
    let mut found = None;
    s.run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// Every embedding of `f` into `g`.
pub fn all_embeddings(f: &MarkedGraph, g: &Graph) -> Result<Vec<Vec<usize>>> {
    if f.n() > g.n() {
        return Ok(Vec::new());
    }
    let mut s = Search::new(f, g, &[]);
    let mut out = Vec::new();
    let complete = s.run(0, &mut |m| {
        out.push(m.to_vec());
        out.len() < EMBEDDING_CAP
    });
    if !complete {
        return Err(Error::CapExceeded { what: "embeddings", need: EMBEDDING_CAP + 1, cap: EMBEDDING_CAP });
    }
    Ok(out)
}

/// Checks the embedding conditions for an explicit injective map `m: V(f) -> V(g)`.
pub fn is_embedding(f: &MarkedGraph, g: &Graph, m: &[usize]) -> bool {
    if m.len() != f.n() || m.iter().any(|&y| y >= g.n()) {
        return false;
    }
    let mut inv = vec![UNSET; g.n()];
    for (x, &y) in m.iter().enumerate() {
        if inv[y] != UNSET {
            return false;
        }
        inv[y] = x;
    }
    (0..f.n()).all(|x| {
        let mut want: Vec<usize> = f.graph().neighbours(x).iter().map(|&w| m[w]).collect();
        want.sort_unstable();
        let have = g.neighbours(m[x]);
        match f.mark(x) {
            Mark::Full => have == want.as_slice(),
            Mark::Semifull => {
                let inside: Vec<usize> = have.iter().copied().filter(|&y| inv[y] != UNSET).collect();
                inside == want
            }
            Mark::Partial => want.iter().all(|y| have.binary_search(y).is_ok()),
        }
    })
}

pub fn is_family_free(fam: &MarkedFamily, g: &Graph) -> bool {
    fam.members().iter().all(|f| embed(f, g).is_none())
}

/// Whether every embedding of every member meets `b`, i.e. no member embeds into the
/// vertices outside `b`.
pub fn covers(b: &[usize], fam: &MarkedFamily, g: &Graph) -> bool {
    fam.members().iter().all(|f| embed_avoiding(f, g, b).is_none())
}
