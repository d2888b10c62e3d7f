use std::fmt;

use super::embed::is_family_free;
use super::{Mark, MarkedFamily, MarkedGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;

const DEG2_ENUM_CAP: usize = 14;
const AUGMENT_N_CAP: usize = 12;
const AUGMENT_K_CAP: usize = 8;

/// A graph of maximum degree 2 given by its components: paths by number of edges
/// (0 is an isolated vertex) and cycles by number of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Deg2Graph {
    pub paths: Vec<usize>,
    pub cycles: Vec<usize>,
}

impl Deg2Graph {
    pub fn n(&self) -> usize {
        self.paths.iter().map(|p| p + 1).sum::<usize>() + self.cycles.iter().sum::<usize>()
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(0);
        for &p in &self.paths {
            g = g.disjoint_union(&Graph::path(p + 1));
        }
        for &c in &self.cycles {
            g = g.disjoint_union(&Graph::cycle(c));
        }
        g
    }

    /// Reads the component multiset off a graph of maximum degree 2.
    pub fn from_graph(g: &Graph) -> Result<Deg2Graph> {
        if g.max_degree() > 2 {
            return Err(Error::Precondition("graph has a vertex of degree above 2".into()));
        }
        let mut out = Deg2Graph { paths: Vec::new(), cycles: Vec::new() };
        for comp in g.components() {
            let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            if edges == comp.len() {
                out.cycles.push(comp.len());
            } else {
                out.paths.push(comp.len() - 1);
            }
        }
        out.paths.sort_unstable_by(|a, b| b.cmp(a));
        out.cycles.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    fn count_paths(&self, len: usize) -> usize {
        self.paths.iter().filter(|&&p| p == len).count()
    }

    fn count_cycles(&self, len: usize) -> usize {
        self.cycles.iter().filter(|&&c| c == len).count()
    }
}

/// All graphs on `n` vertices of maximum degree 2, one per component multiset.
pub fn enumerate_deg2_graphs(n: usize) -> Result<Vec<Deg2Graph>> {
    if n > DEG2_ENUM_CAP {
        return Err(Error::CapExceeded { what: "degree-2 enumeration", need: n, cap: DEG2_ENUM_CAP });
    }
    // component kinds ordered by (vertices, cycle?)
    let kinds: Vec<(usize, bool)> = (1..=n).flat_map(|s| {
        std::iter::once((s, false)).chain((s >= 3).then_some((s, true)))
    })
    .collect();
    let mut out = Vec::new();
    fn go(kinds: &[(usize, bool)], from: usize, left: usize, cur: &mut Vec<(usize, bool)>, out: &mut Vec<Deg2Graph>) {
        if left == 0 {
            let mut g = Deg2Graph { paths: Vec::new(), cycles: Vec::new() };
            for &(s, cyc) in cur.iter().rev() {
                if cyc {
                    g.cycles.push(s);
                } else {
                    g.paths.push(s - 1);
                }
            }
            g.paths.sort_unstable_by(|a, b| b.cmp(a));
            g.cycles.sort_unstable_by(|a, b| b.cmp(a));
            out.push(g);
            return;
        }
        for i in from..kinds.len() {
            let (s, _) = kinds[i];
            if s > left {
                break;
            }
            cur.push(kinds[i]);
            go(kinds, i, left - s, cur, out);
            cur.pop();
        }
    }
    go(&kinds, 0, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Redundant members of the augmented family. Path lengths count edges, cycle lengths
/// count vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Deg2Member {
    /// `k` full copies of each path length in `paths` and each cycle length in `cycles`.
    Components { paths: Vec<usize>, cycles: Vec<usize> },
    /// The same plus a path of length `k+1` with partial ends.
    WithLarge { paths: Vec<usize>, cycles: Vec<usize> },
}

impl Deg2Member {
    pub fn to_marked(&self, k: usize) -> MarkedGraph {
        let (paths, cycles, large) = match self {
            Deg2Member::Components { paths, cycles } => (paths, cycles, false),
            Deg2Member::WithLarge { paths, cycles } => (paths, cycles, true),
        };
        let mut f = MarkedGraph::uniform(Graph::new(0), Mark::Full);
        for &p in paths {
            for _ in 0..k {
                f = f.disjoint_union(&MarkedGraph::uniform(Graph::path(p + 1), Mark::Full));
            }
        }
        for &c in cycles {
            for _ in 0..k {
                f = f.disjoint_union(&MarkedGraph::uniform(Graph::cycle(c), Mark::Full));
            }
        }
        if large {
            let mut marks = vec![Mark::Full; k + 2];
            marks[0] = Mark::Partial;
            marks[k + 1] = Mark::Partial;
            let p = MarkedGraph::new(Graph::path(k + 2), marks).expect("marks match");
            f = f.disjoint_union(&p);
        }
        f
    }

    /// Whether the member embeds into `g`, read off the component counts: full components
    /// map onto isomorphic components, and the large path fits exactly into components with
    /// at least `k+2` vertices.
    pub fn embeds_in(&self, g: &Deg2Graph, k: usize) -> bool {
        let (paths, cycles, large) = match self {
            Deg2Member::Components { paths, cycles } => (paths, cycles, false),
            Deg2Member::WithLarge { paths, cycles } => (paths, cycles, true),
        };
        paths.iter().all(|&p| g.count_paths(p) >= k)
            && cycles.iter().all(|&c| g.count_cycles(c) >= k)
            && (!large || g.paths.iter().any(|&p| p + 1 >= k + 2) || g.cycles.iter().any(|&c| c >= k + 2))
    }
}

impl fmt::Display for Deg2Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (paths, cycles, large) = match self {
            Deg2Member::Components { paths, cycles } => (paths, cycles, false),
            Deg2Member::WithLarge { paths, cycles } => (paths, cycles, true),
        };
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "F{}[I={{{}}},J={{{}}}]", if large { "large" } else { "" }, list(paths), list(cycles))
    }
}

#[derive(Clone, Debug)]
pub struct Deg2Augment {
    pub family: MarkedFamily,
    pub added: Vec<Deg2Member>,
    /// Number of `n`-vertex graphs of maximum degree 2 in the property.
    pub members_of_p: usize,
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..(1u32 << items.len()))
        .map(|m| items.iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, &x)| x).collect())
        .collect()
}

/// The candidate members for size bound `k`, in a fixed order.
pub fn deg2_candidates(k: usize) -> Vec<Deg2Member> {
    let paths: Vec<usize> = (0..k).collect();
    let cycles: Vec<usize> = (3..=k).collect();
    let mut out = vec![Deg2Member::WithLarge { paths: Vec::new(), cycles: Vec::new() }];
    for i in subsets(&paths) {
        for j in subsets(&cycles) {
            if i.is_empty() && j.is_empty() {
                continue;
            }
            out.push(Deg2Member::Components { paths: i.clone(), cycles: j.clone() });
            out.push(Deg2Member::WithLarge { paths: i.clone(), cycles: j });
        }
    }
    out
}

/// Adds to `fam` every candidate member that no `n`-vertex `fam`-free graph of maximum
/// degree 2 contains. `k` must bound the size of every member of `fam`.
pub fn deg2_augment(fam: &MarkedFamily, k: usize, n: usize) -> Result<Deg2Augment> {
    if n > AUGMENT_N_CAP {
        return Err(Error::CapExceeded { what: "augmentation size", need: n, cap: AUGMENT_N_CAP });
    }
    if k > AUGMENT_K_CAP {
        return Err(Error::CapExceeded { what: "augmentation size bound", need: k, cap: AUGMENT_K_CAP });
    }
    if k < fam.max_size() {
        return Err(Error::Precondition(format!("k = {k} below the largest member size {}", fam.max_size())));
    }
    let p_n: Vec<Deg2Graph> = enumerate_deg2_graphs(n)?
        .into_iter()
        .filter(|g| is_family_free(fam, &g.to_graph()))
        .collect();
    let mut family = fam.clone();
    let mut added = Vec::new();
    for c in deg2_candidates(k) {
        if p_n.iter().all(|g| !c.embeds_in(g, k)) {
            family.insert(c.to_marked(k));
            added.push(c);
        }
    }
    Ok(Deg2Augment { family, added, members_of_p: p_n.len() })
}

/// `min(1, 8k³ε)`.
pub fn tau_bound(k: usize, eps: f64) -> f64 {
    (8.0 * (k as f64).powi(3) * eps).min(1.0)
}
