use std::sync::Arc;

use super::gadgets::{BlockKind, GadgetKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structures::{Signature, Structure};

/// Smallest element-cycle length the decoder accepts.
pub const MIN_DECODE_D: usize = 9;

fn mismatch(vertex: usize, msg: impl Into<String>) -> Error {
    Error::PatternMismatch { vertex, msg: msg.into() }
}

/// Images of the block vertices `u0..u_{m-1}` when the block is entered at `s` from `e`, or
/// `None`. The image must induce exactly the block's edges.
fn match_block(g: &Graph, e: usize, s: usize, kind: BlockKind) -> Option<Vec<usize>> {
    let m = kind.size();
    let edges = kind.edges();
    let adj = |p: usize, q: usize| edges.contains(&(p.min(q), p.max(q)));
    let mut img = vec![s];
    let mut choice: Vec<usize> = vec![0];
    // iterative backtracking along the block path
    loop {
        if img.len() == m {
            return Some(img);
        }
        let p = img.len();
        let prev = img[p - 1];
        let nbrs = g.neighbours(prev);
        let mut advanced = false;
        while choice[p - 1] < nbrs.len() {
            let c = nbrs[choice[p - 1]];
            choice[p - 1] += 1;
            if c == e || img.contains(&c) {
                continue;
            }
            if (0..p).all(|q| adj(q, p) == g.has_edge(img[q], c)) {
                img.push(c);
                choice.push(0);
                advanced = true;
                break;
            }
        }
        if !advanced {
            choice.pop();
            img.pop();
            if img.is_empty() {
                return None;
            }
        }
    }
}

fn matches_at(g: &Graph, e: usize, s: usize) -> Vec<(BlockKind, Vec<usize>)> {
    BlockKind::ALL
        .iter()
        .filter_map(|&k| match_block(g, e, s, k).map(|img| (k, img)))
        .collect()
}

/// A gadget found by the decoder. `tail` is the element vertex it hangs from; arrows also
/// have a `head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedGadget {
    pub kind: GadgetKind,
    pub tail: usize,
    pub head: Option<usize>,
    pub vertices: Vec<usize>,
}

/// Element cycles and gadgets of a graph in the image shape of the reduction.
#[derive(Clone, Debug)]
pub struct ShapeAnalysis {
    pub d: usize,
    pub ell: usize,
    element_of: Vec<Option<usize>>,
    gadget_of: Vec<Option<usize>>,
    /// Gadget hanging from each element vertex as tail.
    tail_gadget: Vec<Option<usize>>,
    pub cycles: Vec<Vec<usize>>,
    pub gadgets: Vec<DecodedGadget>,
}

enum Walk {
    Gadget(DecodedGadget),
    Head,
}

fn walk(g: &Graph, is_elem: &[bool], u: usize, s: usize, ell: usize) -> Result<Walk> {
    let (mut e, mut s) = (u, s);
    let mut blocks = Vec::new();
    let mut verts = Vec::new();
    loop {
        let ms = matches_at(g, e, s);
        if ms.len() != 1 {
            return Err(mismatch(s, format!("{} block patterns match here", ms.len())));
        }
        let (kind, img) = ms.into_iter().next().unwrap();
        blocks.push(kind);
        if kind == BlockKind::H3 && blocks.len() == 1 {
            return Ok(Walk::Head);
        }
        let exit = *img.last().unwrap();
        verts.extend_from_slice(&img);
        if !kind.has_exit() {
            break;
        }
        let out: Vec<usize> = g.neighbours(exit).iter().copied().filter(|x| !img.contains(x)).collect();
        if out.len() != 1 {
            return Err(mismatch(exit, "block exit needs exactly one outside neighbour"));
        }
        let next = out[0];
        if kind == BlockKind::H3 {
            if !is_elem[next] {
                return Err(mismatch(next, "arrow does not end at an element vertex"));
            }
            let k = arrow_slot(&blocks, ell).ok_or_else(|| mismatch(u, "malformed arrow block sequence"))?;
            return Ok(Walk::Gadget(DecodedGadget { kind: GadgetKind::Arrow(k), tail: u, head: Some(next), vertices: verts }));
        }
        if is_elem[next] {
            return Err(mismatch(next, "chain reaches an element vertex without an H3 block"));
        }
        if blocks.len() > 2 * ell {
            return Err(mismatch(s, "chain too long"));
        }
        e = exit;
        s = next;
    }
    if blocks.len() != ell + 1 {
        return Err(mismatch(u, format!("chain of {} blocks ends in H4, expected {}", blocks.len(), ell + 1)));
    }
    let h2: Vec<usize> = (0..ell).filter(|&i| blocks[i] == BlockKind::H2).collect();
    if blocks[..ell].iter().any(|&b| b != BlockKind::H1 && b != BlockKind::H2) || h2.len() > 1 {
        return Err(mismatch(u, "malformed loop or non-arrow"));
    }
    let kind = match h2.first() {
        None => GadgetKind::NonArrow,
        Some(&i) => GadgetKind::Loop(i + 1),
    };
    Ok(Walk::Gadget(DecodedGadget { kind, tail: u, head: None, vertices: verts }))
}

fn arrow_slot(blocks: &[BlockKind], ell: usize) -> Option<usize> {
    if blocks.len() != 2 * ell + 1 || blocks[2 * ell] != BlockKind::H3 {
        return None;
    }
    let h2: Vec<usize> = (0..2 * ell).filter(|&i| blocks[i] == BlockKind::H2).collect();
    let ok = blocks[..2 * ell].iter().all(|&b| b == BlockKind::H1 || b == BlockKind::H2);
    match h2.as_slice() {
        [k] if ok && (1..=ell).contains(k) => Some(*k),
        _ => None,
    }
}

/// Recognizes element cycles and gadgets; every vertex must be accounted for.
pub fn analyse(g: &Graph, d: usize, ell: usize) -> Result<ShapeAnalysis> {
    if d < MIN_DECODE_D {
        return Err(Error::Precondition(format!("decoding needs d >= {MIN_DECODE_D}, got {d}")));
    }
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) != 3) {
        return Err(mismatch(v, format!("degree {} instead of 3", g.degree(v))));
    }
    let mut covered = vec![false; n];
    for s in 0..n {
        for &e in g.neighbours(s) {
            for (_, img) in matches_at(g, e, s) {
                for v in img {
                    covered[v] = true;
                }
            }
        }
    }
    let is_elem: Vec<bool> = covered.iter().map(|c| !c).collect();
    let mut element_of = vec![None; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if !is_elem[start] || element_of[start].is_some() {
            continue;
        }
        let en: Vec<usize> = g.neighbours(start).iter().copied().filter(|&x| is_elem[x]).collect();
        if en.len() != 2 {
            return Err(mismatch(start, "element vertex without exactly two cycle neighbours"));
        }
        let id = cycles.len();
        let mut cyc = vec![start];
        element_of[start] = Some(id);
        let (mut prev, mut cur) = (start, en[0].min(en[1]));
        while cur != start {
            if element_of[cur].is_some() || cyc.len() > d {
                return Err(mismatch(cur, "element vertices do not form disjoint cycles"));
            }
            element_of[cur] = Some(id);
            cyc.push(cur);
            let nx: Vec<usize> = g.neighbours(cur).iter().copied().filter(|&x| is_elem[x] && x != prev).collect();
            if nx.len() != 1 {
                return Err(mismatch(cur, "element vertex without exactly two cycle neighbours"));
            }
            prev = cur;
            cur = nx[0];
        }
        if cyc.len() != d {
            return Err(mismatch(start, format!("element cycle of length {} instead of {d}", cyc.len())));
        }
        cycles.push(cyc);
    }
    let mut gadget_of = vec![None; n];
    let mut tail_gadget = vec![None; n];
    let mut gadgets: Vec<DecodedGadget> = Vec::new();
    let mut heads = Vec::new();
    for cyc in &cycles {
        for &u in cyc {
            let s = *g.neighbours(u).iter().find(|&&x| !is_elem[x]).expect("one gadget neighbour");
            match walk(g, &is_elem, u, s, ell)? {
                Walk::Head => heads.push((u, s)),
                Walk::Gadget(gd) => {
                    let id = gadgets.len();
                    for &v in &gd.vertices {
                        if gadget_of[v].replace(id).is_some() {
                            return Err(mismatch(v, "vertex lies in two gadgets"));
                        }
                    }
                    tail_gadget[u] = Some(id);
                    gadgets.push(gd);
                }
            }
        }
    }
    for (u, s) in heads {
        let ok = gadget_of[s].is_some_and(|id| gadgets[id].head == Some(u) && gadgets[id].vertices.last() == Some(&s));
        if !ok {
            return Err(mismatch(s, "arrow head is not the end of an arrow"));
        }
    }
    if let Some(v) = (0..n).find(|&v| !is_elem[v] && gadget_of[v].is_none()) {
        return Err(mismatch(v, "vertex belongs to no element cycle or gadget"));
    }
    Ok(ShapeAnalysis { d, ell, element_of, gadget_of, tail_gadget, cycles, gadgets })
}

impl ShapeAnalysis {
    /// Element vertex.
    pub fn alpha(&self, v: usize) -> bool {
        self.element_of[v].is_some()
    }

    /// Element vertices of the same element.
    pub fn beta(&self, u: usize, v: usize) -> bool {
        self.element_of[u].is_some() && self.element_of[u] == self.element_of[v]
    }

    /// Internal gadget vertex.
    pub fn gamma(&self, v: usize) -> bool {
        self.gadget_of[v].is_some()
    }

    pub fn element_of(&self, v: usize) -> Option<usize> {
        self.element_of[v]
    }

    /// A `k`-arrow from element vertex `u` to element vertex `v`.
    pub fn delta_arrow(&self, k: usize, u: usize, v: usize) -> bool {
        self.tail_gadget[u].is_some_and(|id| {
            let gd = &self.gadgets[id];
            gd.kind == GadgetKind::Arrow(k) && gd.head == Some(v)
        })
    }

    pub fn delta_loop(&self, k: usize, u: usize) -> bool {
        self.tail_gadget[u].is_some_and(|id| self.gadgets[id].kind == GadgetKind::Loop(k))
    }

    pub fn delta_nonarrow(&self, u: usize) -> bool {
        self.tail_gadget[u].is_some_and(|id| self.gadgets[id].kind == GadgetKind::NonArrow)
    }
}

/// A decoded structure; element `a` corresponds to `analysis.cycles[a]`.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub structure: Structure,
    pub analysis: ShapeAnalysis,
}

/// Inverse of the reduction on graphs of its image shape. Elements are numbered by the
/// smallest vertex of their cycle.
pub fn decode(g: &Graph, sig: Arc<Signature>, d: usize) -> Result<Decoded> {
    if let Some((name, ar)) = sig.relations().find(|&(_, ar)| ar != 2) {
        return Err(Error::Unsupported(format!("relation {name} has arity {ar}")));
    }
    let analysis = analyse(g, d, sig.len())?;
    let mut b = Structure::builder(sig, analysis.cycles.len());
    for gd in &analysis.gadgets {
        let a = analysis.element_of[gd.tail].unwrap();
        match gd.kind {
            GadgetKind::Arrow(k) => {
                let h = analysis.element_of[gd.head.unwrap()].unwrap();
                b.add(k - 1, vec![a, h])?;
            }
            GadgetKind::Loop(k) => {
                b.add(k - 1, vec![a, a])?;
            }
            GadgetKind::NonArrow => {}
        }
    }
    Ok(Decoded { structure: b.build(), analysis })
}
