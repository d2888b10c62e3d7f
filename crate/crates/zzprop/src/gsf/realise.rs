use std::collections::HashSet;

use super::embed::is_embedding;
use super::{Mark, MarkedFamily, MarkedGraph};
use crate::canon::graph_code;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structures::{ball_isomorphic, r_ball, Ball, Interval, NeighbourhoodProfile, Structure, TypeRegistry};

/// Default bound on the number of vertices of generated marked graphs.
pub const DEFAULT_SIZE_CAP: usize = 9;

const SMALL_GRAPH_CAP: usize = 10;
const EXTRA_EDGE_CAP: usize = 20;

/// All graphs with at most `n` vertices and maximum degree at most `d`, up to isomorphism,
/// grouped by vertex count.
pub fn small_graphs(n: usize, d: usize) -> Result<Vec<Vec<Graph>>> {
    if n > SMALL_GRAPH_CAP {
        return Err(Error::CapExceeded { what: "small graph enumeration", need: n, cap: SMALL_GRAPH_CAP });
    }
    let mut levels = vec![vec![Graph::new(0)]];
    for m in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &levels[m] {
            let open: Vec<usize> = (0..m).filter(|&v| g.degree(v) < d).collect();
            for mask in 0u32..(1u32 << open.len()) {
                if mask.count_ones() as usize > d {
                    continue;
                }
                let mut h = g.clone();
                let v = h.add_vertex();
                for (i, &w) in open.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        h.add_edge(v, w);
                    }
                }
                if seen.insert(graph_code(&h)) {
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Every `r`-type of graphs of maximum degree `d` whose ball has at most `max_n` vertices.
pub fn enumerate_types(d: usize, r: usize, max_n: usize) -> Result<TypeRegistry> {
    let mut reg = TypeRegistry::new(r);
    for level in small_graphs(max_n, d)?.iter().skip(1) {
        for g in level.iter().filter(|g| g.is_connected()) {
            for v in 0..g.n() {
                if g.distances_from(v).iter().all(|x| x.is_some_and(|x| x <= r)) {
                    reg.classify(&Ball::from_graph(g, v, r)?)?;
                }
            }
        }
    }
    Ok(reg)
}

fn graph_ball(tau: &Ball) -> Result<()> {
    let sig = tau.structure().sig();
    if sig.len() != 1 || sig.arity(0) != 2 {
        return Err(Error::SignatureMismatch("expected a graph ball".into()));
    }
    Ok(())
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

/// All `k`-realisations of `tau` with maximum degree at most `d`, up to marked isomorphism.
pub fn k_realisations(tau: &Ball, k: usize, d: usize, size_cap: usize) -> Result<MarkedFamily> {
    graph_ball(tau)?;
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let r = tau.radius();
    let bound = k * tau.n();
    if bound > size_cap {
        return Err(Error::CapExceeded { what: "realisation size", need: bound, cap: size_cap });
    }
    let centre_deg = tau.center_degree();
    let mut fam = MarkedFamily::new();
    for level in small_graphs(bound, d)?.iter().skip(k) {
        for g in level {
            let s = Structure::from_graph(g);
            let mut cands = Vec::new();
            for v in 0..g.n() {
                if g.degree(v) == centre_deg && ball_isomorphic(&r_ball(&s, v, r), tau)? {
                    cands.push(v);
                }
            }
            let dists: Vec<Vec<Option<usize>>> = cands.iter().map(|&c| g.distances_from(c)).collect();
            combinations(cands.len(), k, &mut |pick| {
                let near: Vec<Option<usize>> = (0..g.n())
                    .map(|v| pick.iter().filter_map(|&i| dists[i][v]).min())
                    .collect();
                if near.iter().any(|x| x.is_none_or(|x| x > r)) {
                    return;
                }
                let marks = near
                    .iter()
                    .map(|x| if x.unwrap() < r { Mark::Full } else { Mark::Semifull })
                    .collect();
                fam.insert(MarkedGraph { graph: g.clone(), marks });
            });
        }
    }
    Ok(fam)
}

/// All (not necessarily disjoint) unions of `f1` and `f2`, up to marked isomorphism.
pub fn union_family(f1: &MarkedGraph, f2: &MarkedGraph, size_cap: usize) -> Result<MarkedFamily> {
    let (n1, n2) = (f1.n(), f2.n());
    if n1 + n2 > size_cap {
        return Err(Error::CapExceeded { what: "union size", need: n1 + n2, cap: size_cap });
    }
    let mut fam = MarkedFamily::new();
    // f1 is the identity on 0..n1; m2 sends each vertex of f2 to an f1 vertex or a new one
    let mut m2 = Vec::with_capacity(n2);
    let mut used = vec![false; n1];
    let mut err = None;
    assign(f1, f2, &mut m2, &mut used, &mut fam, &mut err);
    match err {
        Some(e) => Err(e),
        None => Ok(fam),
    }
}

fn assign(
    f1: &MarkedGraph,
    f2: &MarkedGraph,
    m2: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    fam: &mut MarkedFamily,
    err: &mut Option<Error>,
) {
    if err.is_some() {
        return;
    }
    if m2.len() == f2.n() {
        if let Err(e) = close_union(f1, f2, m2, fam) {
            *err = Some(e);
        }
        return;
    }
    m2.push(None);
    assign(f1, f2, m2, used, fam, err);
    m2.pop();
    for v in 0..f1.n() {
        if !used[v] {
            used[v] = true;
            m2.push(Some(v));
            assign(f1, f2, m2, used, fam, err);
            m2.pop();
            used[v] = false;
        }
    }
}

fn close_union(f1: &MarkedGraph, f2: &MarkedGraph, m2: &[Option<usize>], fam: &mut MarkedFamily) -> Result<()> {
    let n1 = f1.n();
    let mut next = n1;
    let map2: Vec<usize> = m2
        .iter()
        .map(|m| {
            m.unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let n = next;
    let mut base = Graph::new(n);
    for (u, v) in f1.graph().edges() {
        base.add_edge(u, v);
    }
    for (u, v) in f2.graph().edges() {
        base.add_edge(map2[u], map2[v]);
    }
    let mut pre2 = vec![None; n];
    for (x, &y) in map2.iter().enumerate() {
        pre2[y] = Some(x);
    }
    let pre1 = |y: usize| (y < n1).then_some(y);
    // an added edge may only touch images of partial vertices or semifull vertices whose
    // partner lies outside that image
    let allowed = |a: usize, b: usize| {
        let side = |pa: Option<usize>, pb: Option<usize>, f: &MarkedGraph| match (pa, pb) {
            (Some(x), Some(y)) => f.mark(x) == Mark::Partial && f.mark(y) == Mark::Partial,
            (Some(x), None) | (None, Some(x)) => f.mark(x) != Mark::Full,
            (None, None) => true,
        };
        side(pre1(a), pre1(b), f1) && side(pre2[a], pre2[b], f2)
    };
    let extras: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !base.has_edge(a, b) && allowed(a, b))
        .collect();
    if extras.len() > EXTRA_EDGE_CAP {
        return Err(Error::CapExceeded { what: "union extra edges", need: extras.len(), cap: EXTRA_EDGE_CAP });
    }
    let map1: Vec<usize> = (0..n1).collect();
    let marks: Vec<Mark> = (0..n)
        .map(|y| {
            let a = pre1(y).map(|x| f1.mark(x)).unwrap_or(Mark::Partial);
            let b = pre2[y].map(|x| f2.mark(x)).unwrap_or(Mark::Partial);
            a.join(b)
        })
        .collect();
    for mask in 0u32..(1u32 << extras.len()) {
        let mut g = base.clone();
        for (i, &(a, b)) in extras.iter().enumerate() {
            if mask & (1 << i) != 0 {
                g.add_edge(a, b);
            }
        }
        if is_embedding(f1, &g, &map1) && is_embedding(f2, &g, &map2) {
            fam.insert(MarkedGraph { graph: g, marks: marks.clone() });
        }
    }
    Ok(())
}

/// The forbidden family of a 0-profile: `S^{k+1}(τ_i)` for every type capped at `[0,k]`.
pub fn profile_to_gsf(rho: &NeighbourhoodProfile, d: usize, size_cap: usize) -> Result<MarkedFamily> {
    if rho.radius() == 0 {
        return Err(Error::Unsupported("profiles of radius 0".into()));
    }
    if rho.default_interval() != Interval::ANY {
        return Err(Error::Precondition("unregistered types must be unbounded".into()));
    }
    let mut fam = MarkedFamily::new();
    for (i, iv) in rho.intervals().iter().enumerate() {
        if iv.lo != 0 {
            return Err(Error::Precondition(format!("type {i} has lower bound {}", iv.lo)));
        }
        if let Some(k) = iv.hi {
            fam.extend(k_realisations(rho.registry().get(i), k + 1, d, size_cap)?.members().iter().cloned());
        }
    }
    Ok(fam)
}
