//! Canonical codes for small vertex-coloured graphs by individualization and refinement.
//!
//! Two coloured graphs receive equal codes iff there is a colour-preserving isomorphism.
//! Intended for graphs of at most a few dozen vertices.

use crate::graph::Graph;

/// Canonical code of `g` with vertex colours `colours` (one entry per vertex).
pub fn canonical_code(g: &Graph, colours: &[u32]) -> Vec<u32> {
    assert_eq!(colours.len(), g.n());
    let mut comps: Vec<Vec<u32>> = g
        .components()
        .into_iter()
        .map(|c| {
            let h = g.induced(&c);
            let cols: Vec<u32> = c.iter().map(|&v| colours[v]).collect();
            component_code(&h, &cols)
        })
        .collect();
    comps.sort();
    let mut out = vec![g.n() as u32];
    for c in comps {
        out.push(c.len() as u32);
        out.extend(c);
    }
    out
}

/// Canonical code of an uncoloured graph.
pub fn graph_code(g: &Graph) -> Vec<u32> {
    canonical_code(g, &vec![0; g.n()])
}

/// Refines `cols` to the coarsest equitable partition; colours are renumbered 0..k by rank.
pub(crate) fn refine(g: &Graph, cols: &[u32]) -> Vec<u32> {
    let mut cur = rank(cols.iter().map(|&c| (c, Vec::new())).collect());
    let mut classes = count_classes(&cur);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..g.n())
            .map(|v| {
                let mut ns: Vec<u32> = g.neighbours(v).iter().map(|&w| cur[w]).collect();
                ns.sort_unstable();
                (cur[v], ns)
            })
            .collect();
        let next = rank(sigs);
        let k = count_classes(&next);
        cur = next;
        if k == classes {
            return cur;
        }
        classes = k;
    }
}

fn rank(sigs: Vec<(u32, Vec<u32>)>) -> Vec<u32> {
    let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).unwrap() as u32)
        .collect()
}

fn count_classes(cols: &[u32]) -> usize {
    cols.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn component_code(g: &Graph, orig: &[u32]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    search(g, orig, orig.to_vec(), &mut best);
    best.unwrap_or_default()
}

fn search(g: &Graph, orig: &[u32], cols: Vec<u32>, best: &mut Option<Vec<u32>>) {
    let cols = refine(g, &cols);
    let n = g.n();
    if count_classes(&cols) == n {
        let code = leaf_code(g, orig, &cols);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut sizes = vec![0usize; n];
    for &c in &cols {
        sizes[c as usize] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).unwrap() as u32;
    for v in 0..n {
        if cols[v] != target {
            continue;
        }
        let mut next: Vec<u32> = cols.iter().map(|&c| 2 * c + 1).collect();
        next[v] = 2 * target;
        search(g, orig, next, best);
    }
}

fn leaf_code(g: &Graph, orig: &[u32], pos: &[u32]) -> Vec<u32> {
    let n = g.n();
    let mut inv = vec![0usize; n];
    for v in 0..n {
        inv[pos[v] as usize] = v;
    }
    let mut code = Vec::with_capacity(2 + 2 * n + 2 * g.edge_count());
    code.push(n as u32);
    code.push(g.edge_count() as u32);
    code.extend(inv.iter().map(|&v| orig[v]));
    for &v in &inv {
        let mut ns: Vec<u32> = g
            .neighbours(v)
            .iter()
            .map(|&w| pos[w])
            .filter(|&p| p > pos[v])
            .collect();
        ns.sort_unstable();
        code.extend(ns);
        code.push(u32::MAX);
    }
    code
}
