use crate::error::{Error, Result};
use crate::graph::Graph;

/// The four building blocks. Each is a path `u0..u_{m-1}` plus chords.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    H1,
    H2,
    H3,
    H4,
}

impl BlockKind {
    pub const ALL: [BlockKind; 4] = [BlockKind::H1, BlockKind::H2, BlockKind::H3, BlockKind::H4];

    pub fn size(self) -> usize {
        match self {
            BlockKind::H1 | BlockKind::H2 => 6,
            BlockKind::H3 => 10,
            BlockKind::H4 => 5,
        }
    }

    pub fn chords(self) -> &'static [(usize, usize)] {
        match self {
            BlockKind::H1 => &[(0, 3), (1, 4), (2, 5)],
            BlockKind::H2 => &[(0, 5), (1, 3), (2, 4)],
            BlockKind::H3 => &[(0, 9), (1, 3), (2, 4), (5, 7), (6, 8)],
            BlockKind::H4 => &[(0, 3), (1, 4), (2, 4)],
        }
    }

    /// Path and chord edges.
    pub fn edges(self) -> Vec<(usize, usize)> {
        let m = self.size();
        (0..m - 1).map(|i| (i, i + 1)).chain(self.chords().iter().copied()).collect()
    }

    /// H4 has a single endpoint; the others end at `u_{m-1}`.
    pub fn has_exit(self) -> bool {
        self != BlockKind::H4
    }
}

pub fn block(kind: BlockKind) -> Graph {
    Graph::from_edges(kind.size(), &kind.edges()).expect("block edges are valid")
}

/// `Arrow(k)`, `Loop(k)` for `1 ≤ k ≤ ℓ`, or the non-arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Arrow(usize),
    Loop(usize),
    NonArrow,
}

/// Block sequence of a gadget. Arrows put H2 at slot `k` of `2ℓ` slots and end in H3;
/// loops put H2 at slot `k-1` of `ℓ` slots and end in H4.
pub fn gadget_blocks(kind: GadgetKind, ell: usize) -> Result<Vec<BlockKind>> {
    let check = |k: usize| {
        if k == 0 || k > ell {
            Err(Error::OutOfRange(format!("gadget index {k} outside 1..={ell}")))
        } else {
            Ok(())
        }
    };
    Ok(match kind {
        GadgetKind::Arrow(k) => {
            check(k)?;
            let mut v = vec![BlockKind::H1; 2 * ell];
            v[k] = BlockKind::H2;
            v.push(BlockKind::H3);
            v
        }
        GadgetKind::Loop(k) => {
            check(k)?;
            let mut v = vec![BlockKind::H1; ell];
            v[k - 1] = BlockKind::H2;
            v.push(BlockKind::H4);
            v
        }
        GadgetKind::NonArrow => {
            if ell == 0 {
                return Err(Error::OutOfRange("gadgets need at least one relation".into()));
            }
            let mut v = vec![BlockKind::H1; ell];
            v.push(BlockKind::H4);
            v
        }
    })
}

/// Number of vertices: `12ℓ+10` for arrows, `6ℓ+5` otherwise.
pub fn gadget_size(kind: GadgetKind, ell: usize) -> usize {
    match kind {
        GadgetKind::Arrow(_) => 12 * ell + 10,
        _ => 6 * ell + 5,
    }
}

/// The gadget as a graph on `0..size`, blocks laid out consecutively and joined by bridges.
/// Vertex 0 is the start endpoint; for arrows the last vertex is the other endpoint.
pub fn gadget(kind: GadgetKind, ell: usize) -> Result<Graph> {
    let blocks = gadget_blocks(kind, ell)?;
    let mut edges = Vec::new();
    let mut off = 0;
    for (bi, b) in blocks.iter().enumerate() {
        if bi > 0 {
            edges.push((off - 1, off));
        }
        edges.extend(b.edges().into_iter().map(|(x, y)| (off + x, off + y)));
        off += b.size();
    }
    Graph::from_edges(off, &edges)
}

pub fn arrow(k: usize, ell: usize) -> Result<Graph> {
    gadget(GadgetKind::Arrow(k), ell)
}

pub fn loop_gadget(k: usize, ell: usize) -> Result<Graph> {
    gadget(GadgetKind::Loop(k), ell)
}

pub fn nonarrow(ell: usize) -> Result<Graph> {
    gadget(GadgetKind::NonArrow, ell)
}
