use std::sync::Arc;

use crate::structures::Signature;

/// Relation indices of the signature `σ(D)`: `E_{i,j}` for `i, j ∈ [D²]`, then `F_k` for
/// `k ∈ [D⁴]`, then `R`, then `L_k`. Names are `E{i}_{j}`, `F{k}`, `R`, `L{k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaLayout {
    pub d_base: usize,
}

impl SigmaLayout {
    pub fn new(d_base: usize) -> Self {
        SigmaLayout { d_base }
    }

    /// `D²`, the number of E-labels.
    pub fn labels(&self) -> usize {
        self.d_base * self.d_base
    }

    /// `D⁴`, the number of children of an internal element.
    pub fn children(&self) -> usize {
        self.labels() * self.labels()
    }

    /// `3D⁴ + 1`.
    pub fn len(&self) -> usize {
        3 * self.children() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Degree bound `2D² + D⁴ + 1`.
    pub fn degree_bound(&self) -> usize {
        2 * self.labels() + self.children() + 1
    }

    pub fn e(&self, i: usize, j: usize) -> usize {
        i * self.labels() + j
    }

    pub fn f(&self, k: usize) -> usize {
        self.children() + k
    }

    pub fn r(&self) -> usize {
        2 * self.children()
    }

    pub fn l(&self, k: usize) -> usize {
        2 * self.children() + 1 + k
    }

    pub fn e_name(&self, i: usize, j: usize) -> String {
        format!("E{i}_{j}")
    }

    pub fn f_name(&self, k: usize) -> String {
        format!("F{k}")
    }

    pub fn l_name(&self, k: usize) -> String {
        format!("L{k}")
    }

    pub fn is_e(&self, rel: usize) -> Option<(usize, usize)> {
        (rel < self.children()).then(|| (rel / self.labels(), rel % self.labels()))
    }

    pub fn is_f(&self, rel: usize) -> Option<usize> {
        (self.children()..2 * self.children())
            .contains(&rel)
            .then(|| rel - self.children())
    }

    pub fn is_l(&self, rel: usize) -> Option<usize> {
        (rel > self.r() && rel < self.len()).then(|| rel - self.r() - 1)
    }

    pub fn signature(&self) -> Arc<Signature> {
        let mut rels = Vec::with_capacity(self.len());
        for i in 0..self.labels() {
            for j in 0..self.labels() {
                rels.push((self.e_name(i, j), 2));
            }
        }
        for k in 0..self.children() {
            rels.push((self.f_name(k), 2));
        }
        rels.push(("R".to_string(), 2));
        for k in 0..self.children() {
            rels.push((self.l_name(k), 2));
        }
        Arc::new(Signature::new(rels).expect("generated names are unique"))
    }
}

/// The signature `σ(D)` with `3D⁴ + 1` binary relations.
pub fn zigzag_signature(d_base: usize) -> Arc<Signature> {
    SigmaLayout::new(d_base).signature()
}
