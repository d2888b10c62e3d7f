//! Local reduction from bounded-degree binary structures to 3-regular graphs: gadgets, the
//! reduction map, a query-level simulator, and the decoder.

mod decode;
mod gadgets;

pub use decode::{analyse, decode, Decoded, DecodedGadget, ShapeAnalysis};
pub use gadgets::{
    arrow, block, gadget, gadget_blocks, gadget_size, loop_gadget, nonarrow, BlockKind, GadgetKind,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structures::{r_ball, Interval, NeighbourhoodProfile, Structure, TypeRegistry};
use crate::testing::StructureOracle;
use crate::check_cap;

/// Position of a vertex in the deterministic layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    /// `u_{a,i}`, `i` 0-based.
    Element { a: usize, i: usize },
    /// `v^k_{a,i}`, `k` in `1..=6ℓ+5`.
    Relation { a: usize, i: usize, k: usize },
}

/// Vertex numbering: element `a` owns ids `a·d·(6ℓ+6) ..`; slot `i` of `a` owns the run
/// `u_{a,i}, v^1_{a,i}, ..., v^{6ℓ+5}_{a,i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n_elements: usize,
    pub d: usize,
    pub ell: usize,
}

impl Layout {
    pub fn new(n_elements: usize, d: usize, ell: usize) -> Self {
        Layout { n_elements, d, ell }
    }

    pub fn chain_len(&self) -> usize {
        6 * self.ell + 5
    }

    fn run(&self) -> usize {
        self.chain_len() + 1
    }

    pub fn n_vertices(&self) -> usize {
        self.n_elements * self.d * self.run()
    }

    pub fn element_vertex(&self, a: usize, i: usize) -> usize {
        (a * self.d + i) * self.run()
    }

    pub fn relation_vertex(&self, a: usize, i: usize, k: usize) -> usize {
        self.element_vertex(a, i) + k
    }

    pub fn role(&self, v: usize) -> Option<VertexRole> {
        if v >= self.n_vertices() {
            return None;
        }
        let (slot, k) = (v / self.run(), v % self.run());
        let (a, i) = (slot / self.d, slot % self.d);
        Some(if k == 0 { VertexRole::Element { a, i } } else { VertexRole::Relation { a, i, k } })
    }
}

#[derive(Clone, Debug)]
pub struct ReducedGraph {
    pub graph: Graph,
    pub layout: Layout,
}

impl ReducedGraph {
    /// `u_{a,0}, ..., u_{a,d-1}`.
    pub fn cycle(&self, a: usize) -> Vec<usize> {
        (0..self.layout.d).map(|i| self.layout.element_vertex(a, i)).collect()
    }

    /// Relation-vertex chain `v^1_{a,i} .. v^{6ℓ+5}_{a,i}`.
    pub fn chain(&self, a: usize, i: usize) -> Vec<usize> {
        (1..=self.layout.chain_len()).map(|k| self.layout.relation_vertex(a, i, k)).collect()
    }

    /// Lines `elem <a> cycle <v1> ... <vd>`.
    pub fn correspondence_text(&self) -> String {
        let mut out = String::new();
        for a in 0..self.layout.n_elements {
            write!(out, "elem {a} cycle").unwrap();
            for v in self.cycle(a) {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn check_binary(a: &Structure) -> Result<()> {
    match a.sig().relations().find(|&(_, ar)| ar != 2) {
        Some((name, ar)) => Err(Error::Unsupported(format!("relation {name} has arity {ar}; only binary relations reduce"))),
        None => Ok(()),
    }
}

/// Gadget templates for one signature size.
#[derive(Clone, Debug)]
pub struct Templates {
    pub ell: usize,
    arrows: Vec<Graph>,
    loops: Vec<Graph>,
    nonarrow: Graph,
}

impl Templates {
    pub fn new(ell: usize) -> Result<Self> {
        Ok(Templates {
            ell,
            arrows: (1..=ell).map(|k| arrow(k, ell)).collect::<Result<_>>()?,
            loops: (1..=ell).map(|k| loop_gadget(k, ell)).collect::<Result<_>>()?,
            nonarrow: nonarrow(ell)?,
        })
    }

    pub fn get(&self, kind: GadgetKind) -> &Graph {
        match kind {
            GadgetKind::Arrow(k) => &self.arrows[k - 1],
            GadgetKind::Loop(k) => &self.loops[k - 1],
            GadgetKind::NonArrow => &self.nonarrow,
        }
    }
}

fn kind_of(ans: Option<(usize, &[usize])>) -> GadgetKind {
    match ans {
        None => GadgetKind::NonArrow,
        Some((rel, t)) if t[0] == t[1] => GadgetKind::Loop(rel + 1),
        Some((rel, _)) => GadgetKind::Arrow(rel + 1),
    }
}

/// Slot of the tuple `(rel, t)` in the incidence list of `b`.
fn slot_of(a: &Structure, b: usize, rel: usize, t: &[usize]) -> usize {
    (0..a.degree(b))
        .find(|&j| a.ans(b, j).is_some_and(|(r2, t2)| r2 == rel && t2 == t))
        .expect("tuple occurs in the incidence list of each of its elements")
}

/// The reduction map with element cycles of length `d`.
pub fn reduce(a: &Structure, d: usize) -> Result<ReducedGraph> {
    check_binary(a)?;
    if d < 3 {
        return Err(Error::OutOfRange(format!("cycle length d = {d} must be at least 3")));
    }
    for e in 0..a.n() {
        if a.degree(e) > d {
            return Err(Error::DegreeOverflow { elem: e, degree: a.degree(e), bound: d });
        }
    }
    let ell = a.sig().len();
    let layout = Layout::new(a.n(), d, ell);
    check_cap("reduced graph vertices", layout.n_vertices())?;
    let tpl = Templates::new(ell)?;
    let half = layout.chain_len();
    let mut g = Graph::new(layout.n_vertices());
    for x in 0..a.n() {
        for i in 0..d {
            let u = layout.element_vertex(x, i);
            g.add_edge(u, layout.element_vertex(x, (i + 1) % d));
            g.add_edge(u, layout.relation_vertex(x, i, 1));
            let ans = a.ans(x, i);
            let kind = kind_of(ans);
            let map: Box<dyn Fn(usize) -> usize> = match (kind, ans) {
                (GadgetKind::Arrow(_), Some((rel, t))) => {
                    if t[0] != x {
                        continue;
                    }
                    let (b, j) = (t[1], slot_of(a, t[1], rel, t));
                    Box::new(move |p| {
                        if p < half {
                            layout.relation_vertex(x, i, p + 1)
                        } else {
                            layout.relation_vertex(b, j, 2 * half - p)
                        }
                    })
                }
                _ => Box::new(move |p| layout.relation_vertex(x, i, p + 1)),
            };
            for (p, q) in tpl.get(kind).edges() {
                g.add_edge(map(p), map(q));
            }
        }
    }
    Ok(ReducedGraph { graph: g, layout })
}

/// Answer to a simulated neighbour query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulatedAnswer {
    pub neighbour: usize,
    pub structure_queries: usize,
}

/// Answers neighbour queries on the reduced graph of the structure behind an oracle, without
/// materializing it.
#[derive(Clone, Debug)]
pub struct Simulator {
    layout: Layout,
    tpl: Templates,
}

impl Simulator {
    pub fn new(n_elements: usize, d: usize, ell: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::OutOfRange(format!("cycle length d = {d} must be at least 3")));
        }
        Ok(Simulator { layout: Layout::new(n_elements, d, ell), tpl: Templates::new(ell)? })
    }

    pub fn for_oracle(o: &StructureOracle<'_>, d: usize) -> Result<Self> {
        Simulator::new(o.n(), d, o.signature_len())
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// The `i`-th neighbour (sorted, `i ∈ {0,1,2}`) of `v`, using at most `d + 1` structure
    /// queries.
    pub fn query(&self, o: &StructureOracle<'_>, v: usize, i: usize) -> Result<SimulatedAnswer> {
        let lay = self.layout;
        if i > 2 {
            return Err(Error::OutOfRange(format!("neighbour index {i} on a 3-regular graph")));
        }
        let role = lay
            .role(v)
            .ok_or_else(|| Error::OutOfRange(format!("vertex {v} outside 0..{}", lay.n_vertices())))?;
        let mut used = 0usize;
        let mut nb: Vec<usize> = match role {
            VertexRole::Element { a, i: s } => vec![
                lay.element_vertex(a, (s + lay.d - 1) % lay.d),
                lay.element_vertex(a, (s + 1) % lay.d),
                lay.relation_vertex(a, s, 1),
            ],
            VertexRole::Relation { a, i: s, k } => {
                used += 1;
                let ans = o.ans(a, s);
                let kind = kind_of(ans);
                let half = lay.chain_len();
                let t = self.tpl.get(kind);
                match (kind, ans) {
                    (GadgetKind::Arrow(_), Some((rel, tup))) => {
                        let tail_side = tup[0] == a;
                        let pos = if tail_side { k - 1 } else { 2 * half - k };
                        let other = if tail_side { tup[1] } else { tup[0] };
                        let crosses = |q: usize| (q < half) != tail_side;
                        let needs_partner = t.neighbours(pos).iter().any(|&q| crosses(q));
                        let partner = if needs_partner {
                            let mut found = None;
                            for j in 0..lay.d {
                                used += 1;
                                if o.ans(other, j).is_some_and(|(r2, t2)| r2 == rel && t2 == tup) {
                                    found = Some(j);
                                    break;
                                }
                            }
                            Some(found.ok_or_else(|| {
                                Error::Precondition(format!("tuple {tup:?} missing from element {other}"))
                            })?)
                        } else {
                            None
                        };
                        let (ta, ti, hb, hj) = if tail_side {
                            (a, s, other, partner.unwrap_or(usize::MAX))
                        } else {
                            (other, partner.unwrap_or(usize::MAX), a, s)
                        };
                        let map = |q: usize| {
                            if q < half {
                                lay.relation_vertex(ta, ti, q + 1)
                            } else {
                                lay.relation_vertex(hb, hj, 2 * half - q)
                            }
                        };
                        let mut nb: Vec<usize> = t.neighbours(pos).iter().map(|&q| map(q)).collect();
                        if pos == 0 {
                            nb.push(lay.element_vertex(ta, ti));
                        }
                        if pos == 2 * half - 1 {
                            nb.push(lay.element_vertex(hb, hj));
                        }
                        nb
                    }
                    _ => {
                        let mut nb: Vec<usize> =
                            t.neighbours(k - 1).iter().map(|&q| lay.relation_vertex(a, s, q + 1)).collect();
                        if k == 1 {
                            nb.push(lay.element_vertex(a, s));
                        }
                        nb
                    }
                }
            }
        };
        assert!(used <= lay.d + 1, "simulated query used {used} structure queries");
        nb.sort_unstable();
        let neighbour = *nb
            .get(i)
            .ok_or_else(|| Error::Precondition(format!("vertex {v} has {} neighbours", nb.len())))?;
        Ok(SimulatedAnswer { neighbour, structure_queries: used })
    }
}

/// `ℓ' = 24ℓ + 18 + d`.
pub fn ell_prime(ell: usize, d: usize) -> usize {
    24 * ell + 18 + d
}

/// Graph profiles from reduced models. Each input is a structure and its root element; the
/// part of a model is the `radius`-type of `u_{root,0}`. Within a part, that type gets
/// `[0,1]`, every other observed type `[0,∞)`, and all remaining types `[0,0]`.
pub fn rho_hat_builder(models: &[(Structure, usize)], d: usize, radius: usize) -> Result<Vec<NeighbourhoodProfile>> {
    if models.is_empty() {
        return Err(Error::Empty("no models given"));
    }
    let mut reg = TypeRegistry::new(radius);
    let mut parts: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (a, root) in models {
        if *root >= a.n() {
            return Err(Error::OutOfRange(format!("root {root} outside the structure")));
        }
        let r = reduce(a, d)?;
        let s = Structure::from_graph(&r.graph);
        let types: Vec<usize> = (0..s.n()).map(|v| reg.classify(&r_ball(&s, v, radius))).collect::<Result<_>>()?;
        let root_type = types[r.layout.element_vertex(*root, 0)];
        parts.entry(root_type).or_default().extend(types);
    }
    parts
        .into_iter()
        .map(|(k, seen)| {
            let intervals = (0..reg.len())
                .map(|i| {
                    if i == k {
                        Interval::at_most(1)
                    } else if seen.contains(&i) {
                        Interval::ANY
                    } else {
                        Interval::NONE
                    }
                })
                .collect();
            NeighbourhoodProfile::new(reg.clone(), intervals, Interval::NONE)
        })
        .collect()
}
