use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` accepted by [`brute_distance`]; graphs of maximum degree at most 2 may have one more.
pub const MAX_BRUTE_N: usize = 8;

struct Search<'a> {
    g: &'a Graph,
    d: usize,
    pairs: Vec<(usize, usize)>,
    member: &'a dyn Fn(&Graph) -> bool,
    cur: Graph,
    best: Option<usize>,
}

impl Search<'_> {
    fn run(&mut self, idx: usize, cost: usize) {
        if self.best.is_some_and(|b| cost >= b) {
            return;
        }
        if idx == self.pairs.len() {
            if (self.member)(&self.cur) {
                self.best = Some(cost);
            }
            return;
        }
        let (u, v) = self.pairs[idx];
        let present = self.g.has_edge(u, v);
        // try the choice that agrees with g first
        for take in [present, !present] {
            let extra = usize::from(take != present);
            if take {
                if self.cur.degree(u) >= self.d || self.cur.degree(v) >= self.d {
                    continue;
                }
                self.cur.add_edge(u, v);
                self.run(idx + 1, cost + extra);
                self.cur.remove_edge(u, v);
            } else {
                self.run(idx + 1, cost + extra);
            }
        }
    }
}

/// Minimum number of edge insertions and deletions turning `g` into an `n`-vertex graph of
/// maximum degree at most `d` accepted by `member`; `None` if no such graph exists.
pub fn brute_distance(g: &Graph, member: &dyn Fn(&Graph) -> bool, d: usize) -> Result<Option<usize>> {
    let n = g.n();
    let cap = if d <= 2 { MAX_BRUTE_N + 1 } else { MAX_BRUTE_N };
    if n > cap {
        return Err(Error::CapExceeded { what: "brute-force distance", need: n, cap });
    }
    if g.max_degree() <= d && member(g) {
        return Ok(Some(0));
    }
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut s = Search { g, d, pairs, member, cur: Graph::new(n), best: None };
    s.run(0, 0);
    Ok(s.best)
}

/// `dist / (d·n)` as a fraction, or `None` for the infinite sentinel.
pub fn normalized(dist: Option<usize>, d: usize, n: usize) -> Option<f64> {
    dist.map(|k| k as f64 / (d * n).max(1) as f64)
}
