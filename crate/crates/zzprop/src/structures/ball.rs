use std::collections::VecDeque;
use std::fmt::Write as _;

use super::{parse_with_extras, Structure};
use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;

/// A rooted structure in which every element lies within `radius` of `center`.
#[derive(Clone, Debug)]
pub struct Ball {
    structure: Structure,
    center: usize,
    radius: usize,
    dist: Vec<usize>,
}

impl Ball {
    pub fn new(structure: Structure, center: usize, radius: usize) -> Result<Ball> {
        if center >= structure.n() {
            return Err(Error::OutOfRange(format!("center {center} with n = {}", structure.n())));
        }
        let dist = structure.gaifman().distances_from(center);
        let dist = dist
            .into_iter()
            .enumerate()
            .map(|(v, d)| match d {
                Some(d) if d <= radius => Ok(d),
                _ => Err(Error::Precondition(format!(
                    "element {v} is farther than {radius} from the center"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ball { structure, center, radius, dist })
    }

    pub fn from_graph(g: &Graph, center: usize, radius: usize) -> Result<Ball> {
        Ball::new(Structure::from_graph(g), center, radius)
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    /// Distance of element `v` from the center.
    pub fn dist(&self, v: usize) -> usize {
        self.dist[v]
    }

    pub fn center_degree(&self) -> usize {
        self.structure.gaifman().degree(self.center)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.structure.to_text();
        let _ = writeln!(s, "center {}", self.center);
        let _ = writeln!(s, "radius {}", self.radius);
        s
    }

    /// Parses a structure or graph file with a `center <v>` line and an optional `radius <r>`
    /// line; the radius defaults to the eccentricity of the center.
    pub fn parse(text: &str) -> Result<Ball> {
        let (s, extras) = parse_with_extras(text)?;
        let (ln, c) = extras.center.ok_or_else(|| parse_err(0, "missing `center <v>` line"))?;
        if c >= s.n() {
            return Err(parse_err(ln, format!("center {c} out of range")));
        }
        let radius = match extras.radius {
            Some(r) => r,
            None => {
                let d = s.gaifman().distances_from(c);
                if d.iter().any(Option::is_none) {
                    return Err(parse_err(ln, "ball is not connected"));
                }
                d.into_iter().flatten().max().unwrap_or(0)
            }
        };
        Ball::new(s, c, radius).map_err(|e| parse_err(ln, e.to_string()))
    }
}

/// The induced substructure on the `r`-neighbourhood of `a`, re-indexed in BFS order
/// (the center becomes element 0).
pub fn r_ball(a_struct: &Structure, a: usize, r: usize) -> Ball {
    let g = a_struct.gaifman();
    let mut order = vec![a];
    let mut dist = std::collections::HashMap::from([(a, 0usize)]);
    let mut q = VecDeque::from([a]);
    while let Some(v) = q.pop_front() {
        let dv = dist[&v];
        if dv == r {
            continue;
        }
        for &w in g.neighbours(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(dv + 1);
                order.push(w);
                q.push_back(w);
            }
        }
    }
    let structure = a_struct.induced(&order);
    let dist = order.iter().map(|v| dist[v]).collect();
    Ball { structure, center: 0, radius: r, dist }
}

/// Rooted isomorphism test. Both balls must share signature and radius.
pub fn ball_isomorphic(b1: &Ball, b2: &Ball) -> Result<bool> {
    Ok(rooted_isomorphism(b1, b2)?.is_some())
}

/// A rooted isomorphism `b1 -> b2` as an element map, if one exists.
pub fn rooted_isomorphism(b1: &Ball, b2: &Ball) -> Result<Option<Vec<usize>>> {
    let (s1, s2) = (&b1.structure, &b2.structure);
    if s1.sig() != s2.sig() {
        return Err(Error::SignatureMismatch("balls over different signatures".into()));
    }
    if b1.radius != b2.radius {
        return Err(Error::Precondition(format!(
            "balls of radius {} and {}",
            b1.radius, b2.radius
        )));
    }
    if s1.n() != s2.n() {
        return Ok(None);
    }
    for rel in 0..s1.sig().len() {
        if s1.tuples(rel).len() != s2.tuples(rel).len() {
            return Ok(None);
        }
    }
    let Some((c1, c2)) = joint_colours(b1, b2) else {
        return Ok(None);
    };
    Ok(Matcher::new(b1, b2, &c1, &c2).run())
}

type TupleKey = (usize, Vec<(u32, bool)>);

fn refine_signatures(s: &Structure, cols: &[u32]) -> Vec<(u32, Vec<TupleKey>)> {
    (0..s.n())
        .map(|x| {
            let mut keys: Vec<TupleKey> = s
                .incidence(x)
                .iter()
                .map(|&(rel, ti)| {
                    let t = &s.tuples(rel)[ti];
                    (rel, t.iter().map(|&y| (cols[y], y == x)).collect())
                })
                .collect();
            keys.sort_unstable();
            (cols[x], keys)
        })
        .collect()
}

/// Colour refinement run on both balls with a shared palette, starting from distance to the
/// center. Returns `None` as soon as the colour histograms differ.
fn joint_colours(b1: &Ball, b2: &Ball) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut c1: Vec<u32> = b1.dist.iter().map(|&d| d as u32).collect();
    let mut c2: Vec<u32> = b2.dist.iter().map(|&d| d as u32).collect();
    let mut classes = 0usize;
    loop {
        let s1 = refine_signatures(&b1.structure, &c1);
        let s2 = refine_signatures(&b2.structure, &c2);
        let mut all: Vec<&(u32, Vec<TupleKey>)> = s1.iter().chain(s2.iter()).collect();
        all.sort();
        all.dedup();
        let idx = |s: &(u32, Vec<TupleKey>)| all.binary_search(&s).unwrap() as u32;
        let n1: Vec<u32> = s1.iter().map(idx).collect();
        let n2: Vec<u32> = s2.iter().map(idx).collect();
        let mut h1 = n1.clone();
        let mut h2 = n2.clone();
        h1.sort_unstable();
        h2.sort_unstable();
        if h1 != h2 {
            return None;
        }
        let k = all.len();
        c1 = n1;
        c2 = n2;
        if k == classes {
            return Some((c1, c2));
        }
        classes = k;
    }
}

struct Matcher<'a> {
    s1: &'a Structure,
    s2: &'a Structure,
    c1: &'a [u32],
    c2: &'a [u32],
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    root2: usize,
    map: Vec<usize>,
    inv: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl<'a> Matcher<'a> {
    fn new(b1: &'a Ball, b2: &'a Ball, c1: &'a [u32], c2: &'a [u32]) -> Self {
        let s1 = &b1.structure;
        let n = s1.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (b1.dist[v], v));
        let parent = order
            .iter()
            .map(|&v| {
                s1.gaifman()
                    .neighbours(v)
                    .iter()
                    .copied()
                    .find(|&w| b1.dist[w] + 1 == b1.dist[v])
            })
            .collect();
        Matcher {
            s1,
            s2: &b2.structure,
            c1,
            c2,
            order,
            parent,
            root2: b2.center,
            map: vec![NONE; n],
            inv: vec![NONE; n],
        }
    }

    fn candidates(&self, level: usize) -> Vec<usize> {
        let x = self.order[level];
        let pool: Vec<usize> = match self.parent[level] {
            None => vec![self.root2],
            Some(p) => self.s2.gaifman().neighbours(self.map[p]).to_vec(),
        };
        pool.into_iter()
            .filter(|&y| self.inv[y] == NONE && self.c2[y] == self.c1[x])
            .collect()
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        let fwd = |t: &[usize]| -> Option<Vec<usize>> {
            t.iter()
                .map(|&e| if e == x { Some(y) } else { Some(self.map[e]).filter(|&m| m != NONE) })
                .collect()
        };
        for &(rel, ti) in self.s1.incidence(x) {
            if let Some(img) = fwd(&self.s1.tuples(rel)[ti]) {
                if !self.s2.contains(rel, &img) {
                    return false;
                }
            }
        }
        let back = |t: &[usize]| -> Option<Vec<usize>> {
            t.iter()
                .map(|&e| if e == y { Some(x) } else { Some(self.inv[e]).filter(|&m| m != NONE) })
                .collect()
        };
        for &(rel, ti) in self.s2.incidence(y) {
            if let Some(pre) = back(&self.s2.tuples(rel)[ti]) {
                if !self.s1.contains(rel, &pre) {
                    return false;
                }
            }
        }
        true
    }

    fn run(mut self) -> Option<Vec<usize>> {
        let n = self.order.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(self.candidates(0), 0)];
        loop {
            let level = stack.len() - 1;
            let (cands, idx) = stack.last_mut().unwrap();
            let x = self.order[level];
            if *idx > 0 {
                let prev = cands[*idx - 1];
                self.map[x] = NONE;
                self.inv[prev] = NONE;
            }
            let mut next = None;
            while *idx < cands.len() {
                let y = cands[*idx];
                *idx += 1;
                if self.consistent(x, y) {
                    next = Some(y);
                    break;
                }
            }
            match next {
                Some(y) => {
                    self.map[x] = y;
                    self.inv[y] = x;
                    if level + 1 == n {
                        return Some(self.map);
                    }
                    let c = self.candidates(level + 1);
                    stack.push((c, 0));
                }
                None => {
                    stack.pop();
                    if stack.is_empty() {
                        return None;
                    }
                }
            }
        }
    }
}
