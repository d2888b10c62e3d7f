//! Models of the zig-zag sentence: a `D⁴`-ary tree whose levels carry the iterated zig-zag
//! graphs, together with direct validators, the underlying graph, and the non-testability
//! counterexample.

mod analysis;
mod sigma;
mod validate;

pub use analysis::{
    build_counterexample, build_rho_k, level_rotmap, measured_expansion, nontestability_bound,
    underlying_graph, underlying_graph_padded, ExpansionReport, FarnessBound,
};
pub use sigma::{zigzag_signature, SigmaLayout};
pub use validate::{
    validate_all, validate_base, validate_recursion, validate_rotation_map, validate_tree,
    ModelReport, ModelViolation,
};

use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::graphcore::{iterated_family, square, RotMapGraph};
use crate::structures::Structure;
use crate::{check_cap, content_lines, parse_num};

/// A built model. Level `m` holds `D^{4m}` elements numbered consecutively from
/// `offsets[m]`; element `offsets[m] + v` corresponds to vertex `v` of `G_m`.
#[derive(Clone, Debug)]
pub struct ZigzagModel {
    pub structure: Structure,
    pub d_base: usize,
    pub depth: usize,
    pub level_of: Vec<usize>,
    pub tree_parent: Vec<Option<usize>>,
    pub offsets: Vec<usize>,
    pub h: RotMapGraph,
    /// `G_1, ..., G_depth`.
    pub levels: Vec<RotMapGraph>,
}

impl ZigzagModel {
    pub fn layout(&self) -> SigmaLayout {
        SigmaLayout::new(self.d_base)
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    /// Element of level `m` carrying vertex `v` of `G_m`.
    pub fn element(&self, m: usize, v: usize) -> usize {
        self.offsets[m] + v
    }

    /// `(level, vertex of G_level)` of an element; the root is `(0, 0)`.
    pub fn vertex(&self, e: usize) -> (usize, usize) {
        let m = self.level_of[e];
        (m, e - self.offsets[m])
    }

    pub fn level_size(&self, m: usize) -> usize {
        self.d_base.pow(4 * m as u32)
    }

    pub fn h_squared(&self) -> Result<RotMapGraph> {
        square(&self.h)
    }

    /// Sidecar file: one `<element> <level>` line per element.
    pub fn levels_text(&self) -> String {
        let mut out = String::new();
        for (e, m) in self.level_of.iter().enumerate() {
            writeln!(out, "{e} {m}").unwrap();
        }
        out
    }
}

/// Parses a levels sidecar into `level_of`.
pub fn parse_levels(text: &str) -> Result<Vec<usize>> {
    let mut out: Vec<Option<usize>> = Vec::new();
    for (line, l) in content_lines(text) {
        let mut it = l.split_whitespace();
        let e: usize = parse_num(it.next(), line, "element")?;
        let m: usize = parse_num(it.next(), line, "level")?;
        if it.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        if e >= out.len() {
            out.resize(e + 1, None);
        }
        if out[e].replace(m).is_some() {
            return Err(parse_err(line, format!("duplicate element {e}")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(e, m)| m.ok_or_else(|| Error::Parse { line: 0, msg: format!("missing level for element {e}") }))
        .collect()
}

/// `Σ_{m=0}^{depth} D^{4m}`.
pub fn model_size(d_base: usize, depth: usize) -> Option<usize> {
    let mut total = 0usize;
    let mut level = 1usize;
    for m in 0..=depth {
        if m > 0 {
            level = level.checked_mul(d_base.checked_pow(4)?)?;
        }
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// Builds the model of depth `depth` over `H`.
pub fn build_model(h: &RotMapGraph, depth: usize) -> Result<ZigzagModel> {
    let d_base = h.degree();
    if depth == 0 {
        return Err(Error::OutOfRange("depth must be at least 1".into()));
    }
    if d_base < 2 || h.n() != d_base.pow(4) {
        return Err(Error::DimensionMismatch(format!(
            "H must be D-regular on D^4 vertices, got n = {} and D = {d_base}",
            h.n()
        )));
    }
    let total = model_size(d_base, depth).ok_or(Error::CapExceeded {
        what: "model elements",
        need: usize::MAX,
        cap: crate::vertex_cap(),
    })?;
    check_cap("model elements", total)?;
    let levels = iterated_family(h, depth)?;
    let l = SigmaLayout::new(d_base);
    let kk = l.children();
    let mut offsets = vec![0usize; depth + 2];
    for m in 1..=depth + 1 {
        offsets[m] = offsets[m - 1] + d_base.pow(4 * (m as u32 - 1));
    }
    let mut b = Structure::builder(l.signature(), total);
    let mut level_of = vec![0usize; total];
    let mut tree_parent = vec![None; total];
    b.add(l.r(), vec![0, 0])?;
    for i in 0..l.labels() {
        b.add(l.e(i, i), vec![0, 0])?;
    }
    for k in 0..kk {
        b.add(l.f(k), vec![0, offsets[1] + k])?;
        tree_parent[offsets[1] + k] = Some(0);
    }
    for m in 1..=depth {
        let g = &levels[m - 1];
        for v in 0..g.n() {
            let e = offsets[m] + v;
            level_of[e] = m;
            for i in 0..g.degree() {
                let (w, j) = g.rot(v, i);
                b.add(l.e(i, j), vec![e, offsets[m] + w])?;
            }
            if m < depth {
                for k in 0..kk {
                    let c = offsets[m + 1] + v * kk + k;
                    b.add(l.f(k), vec![e, c])?;
                    tree_parent[c] = Some(e);
                }
            } else {
                for k in 0..kk {
                    b.add(l.l(k), vec![e, e])?;
                }
            }
        }
    }
    offsets.truncate(depth + 1);
    let model = ZigzagModel {
        structure: b.build(),
        d_base,
        depth,
        level_of,
        tree_parent,
        offsets,
        h: h.clone(),
        levels,
    };
    let bound = l.degree_bound();
    for e in 0..model.n() {
        let deg = model.structure.degree(e);
        if deg > bound {
            return Err(Error::DegreeOverflow { elem: e, degree: deg, bound });
        }
    }
    let h2 = model.h_squared()?;
    let report = validate_all(&model.structure, d_base, h, &h2)?;
    if let Some(v) = report.into_iter().find_map(|r| r.violation) {
        return Err(Error::Precondition(format!("built model fails a validator: {v}")));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(model_size(2, 1), Some(17));
        assert_eq!(model_size(2, 2), Some(273));
        let m = build_model(&RotMapGraph::cycle(16), 1).unwrap();
        assert_eq!(m.n(), 17);
        assert_eq!(m.vertex(5), (1, 4));
        assert_eq!(m.tree_parent[5], Some(0));
        assert_eq!(parse_levels(&m.levels_text()).unwrap(), m.level_of);
    }

    #[test]
    fn bijection_carries_rotmap() {
        let m = build_model(&RotMapGraph::cycle(16), 2).unwrap();
        let l = m.layout();
        for lev in 1..=2 {
            let g = &m.levels[lev - 1];
            for v in 0..g.n() {
                for i in 0..g.degree() {
                    let (w, j) = g.rot(v, i);
                    assert!(m.structure.contains(l.e(i, j), &[m.element(lev, v), m.element(lev, w)]));
                }
            }
        }
    }
}
