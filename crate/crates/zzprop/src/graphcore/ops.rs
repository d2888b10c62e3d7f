use super::{spectrum, RotMapGraph};
use crate::error::{Error, Result};

/// The square `G²`: label `(k1, k2)` (index `k1·D + k2`) takes two steps and returns the
/// reversed label pair `(l2, l1)`.
pub fn square(r: &RotMapGraph) -> Result<RotMapGraph> {
    r.ensure_valid()?;
    let d = r.degree();
    crate::check_cap("square rotmap slots", r.n().saturating_mul(d * d))?;
    let mut rot = Vec::with_capacity(r.n() * d * d);
    for u in 0..r.n() {
        for k1 in 0..d {
            let (v, l1) = r.rot(u, k1);
            for k2 in 0..d {
                let (w, l2) = r.rot(v, k2);
                rot.push((w, l2 * d + l1));
            }
        }
    }
    Ok(RotMapGraph::from_table_unchecked(r.n(), d * d, rot))
}

/// The zig-zag product `G1 ⓩ G2`. Requires `G2.n = G1.D`; vertex `(v, k)` has index
/// `v·D1 + k`, label `(i, j)` has index `i·D2 + j`.
pub fn zigzag(g1: &RotMapGraph, g2: &RotMapGraph) -> Result<RotMapGraph> {
    g1.ensure_valid()?;
    g2.ensure_valid()?;
    if g2.n() != g1.degree() {
        return Err(Error::DimensionMismatch(format!(
            "second factor has {} vertices, first factor has degree {}",
            g2.n(),
            g1.degree()
        )));
    }
    let d1 = g1.degree();
    let d2 = g2.degree();
    let n = g1.n() * d1;
    crate::check_cap("zig-zag rotmap slots", n.saturating_mul(d2 * d2))?;
    let mut rot = Vec::with_capacity(n * d2 * d2);
    for v in 0..g1.n() {
        for k in 0..d1 {
            for i in 0..d2 {
                let (k1, i1) = g2.rot(k, i);
                let (w, l1) = g1.rot(v, k1);
                for j in 0..d2 {
                    let (l, j1) = g2.rot(l1, j);
                    rot.push((w * d1 + l, j1 * d2 + i1));
                }
            }
        }
    }
    Ok(RotMapGraph::from_table_unchecked(n, d2 * d2, rot))
}

/// `G1 = H²`, `G_m = G_{m-1}² ⓩ H` for `m = 2..=m_max`. `H` must be D-regular on `D⁴` vertices.
///
/// When `λ(H) ≤ 1/4` each `G_m` small enough for the dense solver is checked to have `λ ≤ 1/2`.
pub fn iterated_family(h: &RotMapGraph, m_max: usize) -> Result<Vec<RotMapGraph>> {
    let d = h.degree();
    if d < 2 || h.n() != d.pow(4) {
        return Err(Error::DimensionMismatch(format!(
            "expected a D-regular graph on D^4 vertices with D >= 2, got n = {}, D = {d}",
            h.n()
        )));
    }
    if m_max == 0 {
        return Err(Error::OutOfRange("m_max must be at least 1".into()));
    }
    let certified = h.n() <= super::DENSE_CAP && spectrum(h)?.lambda <= 0.25;
    let mut out: Vec<RotMapGraph> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let g = match out.last() {
            None => square(h)?,
            Some(prev) => zigzag(&square(prev)?, h)?,
        };
        let want_n = d.pow(4 * m as u32);
        if g.n() != want_n || g.degree() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "G_{m} has {} vertices and degree {}, expected {want_n} and {}",
                g.n(),
                g.degree(),
                d * d
            )));
        }
        if certified && g.n() <= super::DENSE_CAP {
            let l = spectrum(&g)?.lambda;
            if l > 0.5 + 1e-9 {
                return Err(Error::Precondition(format!("λ(G_{m}) = {l} exceeds 1/2")));
            }
        }
        out.push(g);
    }
    Ok(out)
}
