use std::sync::atomic::{AtomicUsize, Ordering};

use crate::graph::Graph;
use crate::structures::Structure;

/// Neighbour-query access to a graph of maximum degree `d`. `ans(v, i)` is the `i`-th
/// neighbour in sorted order, or `None` when `i` exceeds the degree of `v`.
#[derive(Debug)]
pub struct GraphOracle<'a> {
    g: &'a Graph,
    d: usize,
    queries: AtomicUsize,
}

impl<'a> GraphOracle<'a> {
    pub fn new(g: &'a Graph, d: usize) -> Self {
        GraphOracle { g, d, queries: AtomicUsize::new(0) }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ans(&self, v: usize, i: usize) -> Option<usize> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.g.neighbours(v).get(i).copied()
    }

    /// All neighbours of `v`, costing `d` queries.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.d).map_while(|i| self.ans(v, i)).collect::<Vec<_>>()
    }

    pub fn queries(&self) -> usize {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.queries.store(0, Ordering::Relaxed);
    }
}

/// Query access to a structure: `ans(a, i)` is the `i`-th tuple containing `a`.
#[derive(Debug)]
pub struct StructureOracle<'a> {
    a: &'a Structure,
    queries: AtomicUsize,
}

impl<'a> StructureOracle<'a> {
    pub fn new(a: &'a Structure) -> Self {
        StructureOracle { a, queries: AtomicUsize::new(0) }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn signature_len(&self) -> usize {
        self.a.sig().len()
    }

    pub fn ans(&self, a: usize, i: usize) -> Option<(usize, &'a [usize])> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.a.ans(a, i)
    }

    pub fn queries(&self) -> usize {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.queries.store(0, Ordering::Relaxed);
    }
}
