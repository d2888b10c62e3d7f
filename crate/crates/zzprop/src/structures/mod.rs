//! Finite relational structures, balls, types and neighbourhood statistics.

mod ball;
mod profile;
mod registry;

pub use ball::{ball_isomorphic, r_ball, Ball};
pub use profile::{obeys_profile, Interval, NeighbourhoodProfile};
pub use registry::{histogram, sampling_distance, sampling_distance_r, SamplingDistance, TypeRegistry};

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;
use crate::{content_lines, parse_num};

pub const MAX_ARITY: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    rels: Vec<(String, usize)>,
    index: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(rels: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let rels: Vec<(String, usize)> = rels.into_iter().map(|(s, a)| (s.into(), a)).collect();
        let mut index: Vec<(String, usize)> =
            rels.iter().enumerate().map(|(k, (s, _))| (s.clone(), k)).collect();
        index.sort();
        for w in index.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::SignatureMismatch(format!("duplicate relation {}", w[0].0)));
            }
        }
        for (s, a) in &rels {
            if *a == 0 || *a > MAX_ARITY {
                return Err(Error::SignatureMismatch(format!("relation {s} has arity {a}")));
            }
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
                return Err(Error::SignatureMismatch(format!("bad relation name `{s}`")));
            }
        }
        Ok(Signature { rels, index })
    }

    /// The signature `{E/2}` of undirected graphs.
    pub fn graph() -> Self {
        Signature::new([("E", 2)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn name(&self, k: usize) -> &str {
        &self.rels[k].0
    }

    pub fn arity(&self, k: usize) -> usize {
        self.rels[k].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index
            .binary_search_by(|(s, _)| s.as_str().cmp(name))
            .ok()
            .map(|p| self.index[p].1)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.rels.iter().map(|(s, a)| (s.as_str(), *a))
    }
}

/// Mutable accumulator for tuples; [`StructureBuilder::build`] freezes it.
#[derive(Clone, Debug)]
pub struct StructureBuilder {
    sig: Arc<Signature>,
    n: usize,
    tuples: Vec<BTreeSet<Vec<usize>>>,
}

impl StructureBuilder {
    pub fn new(sig: Arc<Signature>, n: usize) -> Self {
        let k = sig.len();
        StructureBuilder { sig, n, tuples: vec![BTreeSet::new(); k] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_element(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Adds a tuple; returns false if it was present already.
    pub fn add(&mut self, rel: usize, tuple: Vec<usize>) -> Result<bool> {
        self.check(rel, &tuple)?;
        Ok(self.tuples[rel].insert(tuple))
    }

    pub fn remove(&mut self, rel: usize, tuple: &[usize]) -> bool {
        self.tuples.get_mut(rel).is_some_and(|s| s.remove(tuple))
    }

    pub fn contains(&self, rel: usize, tuple: &[usize]) -> bool {
        self.tuples[rel].contains(tuple)
    }

    fn check(&self, rel: usize, tuple: &[usize]) -> Result<()> {
        if rel >= self.sig.len() {
            return Err(Error::OutOfRange(format!("relation index {rel}")));
        }
        if tuple.len() != self.sig.arity(rel) {
            return Err(Error::SignatureMismatch(format!(
                "relation {} has arity {}, tuple has {} entries",
                self.sig.name(rel),
                self.sig.arity(rel),
                tuple.len()
            )));
        }
        if let Some(&e) = tuple.iter().find(|&&e| e >= self.n) {
            return Err(Error::OutOfRange(format!("element {e} with n = {}", self.n)));
        }
        Ok(())
    }

    pub fn build(self) -> Structure {
        let tuples: Vec<Vec<Vec<usize>>> =
            self.tuples.into_iter().map(|s| s.into_iter().collect()).collect();
        Structure::from_sorted(self.sig, self.n, tuples)
    }
}

/// An immutable finite structure with elements `0..n`.
#[derive(Clone, Debug)]
pub struct Structure {
    sig: Arc<Signature>,
    n: usize,
    tuples: Vec<Vec<Vec<usize>>>,
    incidence: Vec<Vec<(usize, usize)>>,
    gaifman: Graph,
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.n == other.n && self.tuples == other.tuples
    }
}

impl Eq for Structure {}

impl Structure {
    fn from_sorted(sig: Arc<Signature>, n: usize, tuples: Vec<Vec<Vec<usize>>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut gaifman = Graph::new(n);
        for (rel, ts) in tuples.iter().enumerate() {
            for (ti, t) in ts.iter().enumerate() {
                for (p, &a) in t.iter().enumerate() {
                    if !t[..p].contains(&a) {
                        incidence[a].push((rel, ti));
                    }
                    for &b in &t[..p] {
                        if a != b {
                            gaifman.add_edge(a, b);
                        }
                    }
                }
            }
        }
        Structure { sig, n, tuples, incidence, gaifman }
    }

    pub fn builder(sig: Arc<Signature>, n: usize) -> StructureBuilder {
        StructureBuilder::new(sig, n)
    }

    pub fn empty(sig: Arc<Signature>, n: usize) -> Self {
        StructureBuilder::new(sig, n).build()
    }

    /// Symmetric irreflexive `E` structure of an undirected graph.
    pub fn from_graph(g: &Graph) -> Self {
        let mut b = StructureBuilder::new(Arc::new(Signature::graph()), g.n());
        for (u, v) in g.edges() {
            b.tuples[0].insert(vec![u, v]);
            b.tuples[0].insert(vec![v, u]);
        }
        b.build()
    }

    /// Inverse of [`Structure::from_graph`]: requires one symmetric irreflexive binary relation.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.sig.len() != 1 || self.sig.arity(0) != 2 {
            return Err(Error::SignatureMismatch("expected a single binary relation".into()));
        }
        for t in &self.tuples[0] {
            if t[0] == t[1] || !self.contains(0, &[t[1], t[0]]) {
                return Err(Error::Precondition(format!(
                    "relation is not symmetric and irreflexive at {t:?}"
                )));
            }
        }
        Ok(self.gaifman.clone())
    }

    pub fn to_builder(&self) -> StructureBuilder {
        StructureBuilder {
            sig: self.sig.clone(),
            n: self.n,
            tuples: self.tuples.iter().map(|ts| ts.iter().cloned().collect()).collect(),
        }
    }

    pub fn sig(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tuples(&self, rel: usize) -> &[Vec<usize>] {
        &self.tuples[rel]
    }

    pub fn tuple_count(&self) -> usize {
        self.tuples.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, rel: usize, tuple: &[usize]) -> bool {
        self.tuples[rel]
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .is_ok()
    }

    /// Tuples containing `a` as `(relation, index into tuples(relation))`, sorted by relation
    /// then tuple. A tuple with repeated `a` appears once.
    pub fn incidence(&self, a: usize) -> &[(usize, usize)] {
        &self.incidence[a]
    }

    /// The `i`-th tuple (0-based) containing `a`, in incidence order.
    pub fn ans(&self, a: usize, i: usize) -> Option<(usize, &[usize])> {
        self.incidence[a].get(i).map(|&(rel, ti)| (rel, self.tuples[rel][ti].as_slice()))
    }

    /// Number of tuples containing `a`.
    pub fn degree(&self, a: usize) -> usize {
        self.incidence[a].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).max().unwrap_or(0)
    }

    pub fn gaifman(&self) -> &Graph {
        &self.gaifman
    }

    /// Induced substructure on `elems` (element `elems[i]` becomes `i`).
    pub fn induced(&self, elems: &[usize]) -> Structure {
        let mut pos: HashMap<usize, usize> = HashMap::with_capacity(elems.len());
        for (i, &e) in elems.iter().enumerate() {
            pos.insert(e, i);
        }
        let mut b = StructureBuilder::new(self.sig.clone(), elems.len());
        let mut seen = BTreeSet::new();
        for &e in elems {
            for &(rel, ti) in &self.incidence[e] {
                if !seen.insert((rel, ti)) {
                    continue;
                }
                let t = &self.tuples[rel][ti];
                if let Some(mapped) = t.iter().map(|x| pos.get(x).copied()).collect::<Option<Vec<_>>>() {
                    b.tuples[rel].insert(mapped);
                }
            }
        }
        b.build()
    }

    pub fn disjoint_union(&self, other: &Structure) -> Result<Structure> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch("disjoint union of different signatures".into()));
        }
        let off = self.n;
        let mut b = self.to_builder();
        b.n += other.n;
        for (rel, ts) in other.tuples.iter().enumerate() {
            for t in ts {
                b.tuples[rel].insert(t.iter().map(|&x| x + off).collect());
            }
        }
        Ok(b.build())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("structure {}\n", self.n);
        for (name, a) in self.sig.relations() {
            let _ = writeln!(s, "rel {name} {a}");
        }
        for (rel, ts) in self.tuples.iter().enumerate() {
            for t in ts {
                let _ = write!(s, "tuple {}", self.sig.name(rel));
                for x in t {
                    let _ = write!(s, " {x}");
                }
                s.push('\n');
            }
        }
        s
    }

    /// Parses the `structure` format; a `graph` header is accepted and loads as symmetric `E`.
    pub fn parse(text: &str) -> Result<Structure> {
        Ok(parse_with_extras(text)?.0)
    }
}

/// Key/value lines (`center`, `radius`) that are not part of the structure itself.
#[derive(Debug, Default)]
pub(crate) struct Extras {
    pub center: Option<(usize, usize)>,
    pub radius: Option<usize>,
}

pub(crate) fn parse_with_extras(text: &str) -> Result<(Structure, Extras)> {
    let mut lines = content_lines(text).peekable();
    let (ln, head) = *lines.peek().ok_or_else(|| parse_err(1, "empty structure file"))?;
    let mut toks = head.split_whitespace();
    let kind = toks.next();
    if kind == Some("graph") {
        let mut extras = Extras::default();
        let mut rest = String::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let mut t = raw.split('#').next().unwrap_or("").split_whitespace();
            match t.next() {
                Some("center") => extras.center = Some((ln, parse_num(t.next(), ln, "center")?)),
                Some("radius") => extras.radius = Some(parse_num(t.next(), ln, "radius")?),
                _ => rest.push_str(raw),
            }
            rest.push('\n');
        }
        return Ok((Structure::from_graph(&Graph::parse(&rest)?), extras));
    }
    if kind != Some("structure") {
        return Err(parse_err(ln, "expected `structure <n>` or `graph <n>`"));
    }
    let n: usize = parse_num(toks.next(), ln, "element count")?;
    crate::check_cap("structure elements", n)?;
    lines.next();
    let mut rels: Vec<(String, usize)> = Vec::new();
    let mut pending: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut extras = Extras::default();
    for (ln, l) in lines {
        let mut t = l.split_whitespace();
        match t.next() {
            Some("rel") => {
                if !pending.is_empty() {
                    return Err(parse_err(ln, "`rel` lines must precede tuples"));
                }
                let name = t.next().ok_or_else(|| parse_err(ln, "missing relation name"))?;
                let a: usize = parse_num(t.next(), ln, "arity")?;
                rels.push((name.to_string(), a));
            }
            Some("tuple") => {
                let name = t.next().ok_or_else(|| parse_err(ln, "missing relation name"))?;
                let elems = t
                    .map(|x| x.parse::<usize>().map_err(|_| parse_err(ln, format!("bad element `{x}`"))))
                    .collect::<Result<Vec<_>>>()?;
                pending.push((ln, name.to_string(), elems));
            }
            Some("center") => extras.center = Some((ln, parse_num(t.next(), ln, "center")?)),
            Some("radius") => extras.radius = Some(parse_num(t.next(), ln, "radius")?),
            Some(k) => return Err(parse_err(ln, format!("unexpected keyword `{k}`"))),
            None => {}
        }
    }
    let sig = Arc::new(Signature::new(rels).map_err(|e| parse_err(ln, e.to_string()))?);
    let mut b = StructureBuilder::new(sig.clone(), n);
    for (ln, name, elems) in pending {
        let rel = sig
            .index_of(&name)
            .ok_or_else(|| parse_err(ln, format!("unknown relation `{name}`")))?;
        b.add(rel, elems).map_err(|e| parse_err(ln, e.to_string()))?;
    }
    Ok((b.build(), extras))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_e() -> Arc<Signature> {
        Arc::new(Signature::graph())
    }

    #[test]
    fn gaifman_edges() {
        let mut b = Structure::builder(sig_e(), 2);
        b.add(0, vec![0, 1]).unwrap();
        assert_eq!(b.build().gaifman().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let mut b = Structure::builder(sig_e(), 1);
        b.add(0, vec![0, 0]).unwrap();
        let s = b.build();
        assert_eq!(s.gaifman().edge_count(), 0);
        assert_eq!(s.degree(0), 1);
        let sig = Arc::new(Signature::new([("T", 3)]).unwrap());
        let mut b = Structure::builder(sig, 3);
        b.add(0, vec![0, 1, 2]).unwrap();
        assert_eq!(b.build().gaifman().edge_count(), 3);
    }

    #[test]
    fn text_round_trip() {
        let sig = Arc::new(Signature::new([("F", 2), ("R", 2)]).unwrap());
        let mut b = Structure::builder(sig, 3);
        b.add(0, vec![0, 1]).unwrap();
        b.add(0, vec![0, 2]).unwrap();
        b.add(1, vec![0, 0]).unwrap();
        let s = b.build();
        assert_eq!(Structure::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = Structure::parse("structure 2\nrel E 2\ntuple E 0 7\n").unwrap_err();
        assert!(e.to_string().starts_with("line 3"), "{e}");
        let e = Structure::parse("structure 2\nrel E 2\ntuple F 0 1\n").unwrap_err();
        assert!(e.to_string().contains("unknown relation"));
    }

    #[test]
    fn ans_order() {
        let sig = Arc::new(Signature::new([("A", 2), ("B", 2)]).unwrap());
        let mut b = Structure::builder(sig, 3);
        b.add(1, vec![0, 1]).unwrap();
        b.add(0, vec![2, 0]).unwrap();
        b.add(0, vec![0, 1]).unwrap();
        let s = b.build();
        let got: Vec<_> = (0..3).map(|i| s.ans(0, i).map(|(r, t)| (r, t.to_vec()))).collect();
        assert_eq!(
            got,
            vec![Some((0, vec![0, 1])), Some((0, vec![2, 0])), Some((1, vec![0, 1]))]
        );
    }
}
