use std::collections::HashMap;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::GraphOracle;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structures::{r_ball, Ball, Structure, TypeRegistry};

/// RNG for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Explores the `r`-ball of `v` by neighbour queries. Every vertex of the ball has its full
/// neighbour list read, so edges between vertices at distance `r` are seen as well.
pub fn explore_ball(o: &GraphOracle<'_>, v: usize, r: usize) -> Ball {
    let mut ids = HashMap::from([(v, 0usize)]);
    let mut order = vec![v];
    let mut dist = vec![0usize];
    let mut edges = Vec::new();
    let mut q = VecDeque::from([0usize]);
    while let Some(i) = q.pop_front() {
        for w in o.neighbours(order[i]) {
            let j = match ids.get(&w) {
                Some(&j) => j,
                None if dist[i] < r => {
                    let j = order.len();
                    ids.insert(w, j);
                    order.push(w);
                    dist.push(dist[i] + 1);
                    q.push_back(j);
                    j
                }
                None => continue,
            };
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::from_edges(order.len(), &edges).expect("explored edges are valid");
    r_ball(&Structure::from_graph(&g), 0, r)
}

/// The whole graph as seen through the oracle, costing `n·d` queries.
pub fn explore_all(o: &GraphOracle<'_>) -> Graph {
    let mut g = Graph::new(o.n());
    for v in 0..o.n() {
        for w in o.neighbours(v) {
            if v < w {
                g.add_edge(v, w);
            }
        }
    }
    g
}

/// Samples `s` vertices uniformly and independently, explores their `r`-balls and returns the
/// fraction of samples of each registered type (registering new types as they appear).
pub fn estimate_frequencies(
    o: &GraphOracle<'_>,
    r: usize,
    s: usize,
    reg: &mut TypeRegistry,
    seed: u64,
) -> Result<Vec<f64>> {
    if o.n() == 0 {
        return Err(Error::Empty("graph with no vertices"));
    }
    if s == 0 {
        return Err(Error::OutOfRange("sample size 0".into()));
    }
    if reg.radius() != r {
        return Err(Error::Precondition(format!("registry radius {} for r = {r}", reg.radius())));
    }
    let n = o.n();
    let balls: Vec<Ball> = (0..s as u64)
        .into_par_iter()
        .map(|i| {
            let v = sample_rng(seed, i).gen_range(0..n);
            explore_ball(o, v, r)
        })
        .collect();
    let mut counts: Vec<usize> = vec![0; reg.len()];
    for b in &balls {
        let t = reg.classify(b)?;
        if t >= counts.len() {
            counts.resize(t + 1, 0);
        }
        counts[t] += 1;
    }
    counts.resize(reg.len(), 0);
    Ok(counts.into_iter().map(|c| c as f64 / s as f64).collect())
}

/// `⌈(t²/λ²)·ln(t+40)⌉`.
pub fn sample_size(t: usize, lambda: f64) -> Result<usize> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::OutOfRange(format!("lambda {lambda} outside (0,1]")));
    }
    let t = t as f64;
    let s = (t * t / (lambda * lambda) * (t + 40.0).ln()).ceil();
    if s > usize::MAX as f64 {
        return Err(Error::CapExceeded { what: "sample size", need: usize::MAX, cap: usize::MAX });
    }
    Ok(s as usize)
}
