use std::fmt;

use super::SigmaLayout;
use crate::error::{Error, Result};
use crate::graphcore::RotMapGraph;
use crate::structures::Structure;

/// First violation found by a validator, with the elements involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelViolation {
    pub clause: &'static str,
    pub witnesses: Vec<usize>,
    pub message: String,
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (witnesses {:?})", self.clause, self.message, self.witnesses)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelReport {
    pub clause: &'static str,
    pub violation: Option<ModelViolation>,
}

impl ModelReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Per-element adjacency of the model relations.
struct Index {
    l: SigmaLayout,
    /// `(k, child)` for every `F_k(x, child)`.
    f_out: Vec<Vec<(usize, usize)>>,
    /// `(k, parent)` for every `F_k(parent, x)`.
    f_in: Vec<Vec<(usize, usize)>>,
    /// `(i, j, y)` for every `E_{i,j}(x, y)`.
    e_out: Vec<Vec<(usize, usize, usize)>>,
    /// `(i, j, y)` for every `E_{i,j}(y, x)`.
    e_in: Vec<Vec<(usize, usize, usize)>>,
    /// Number of `R` tuples with `x` in any position.
    r_touch: Vec<usize>,
    r_self: Vec<bool>,
    /// `(k, y, x_is_first)` for every `L_k` tuple touching `x`.
    l_touch: Vec<Vec<(usize, usize, bool)>>,
}

impl Index {
    fn new(a: &Structure, d_base: usize) -> Result<Self> {
        let l = SigmaLayout::new(d_base);
        if a.sig().len() != l.len() || *a.sig() != l.signature() {
            return Err(Error::SignatureMismatch(format!(
                "structure is not over the zig-zag signature for D = {d_base}"
            )));
        }
        let n = a.n();
        let mut ix = Index {
            l,
            f_out: vec![Vec::new(); n],
            f_in: vec![Vec::new(); n],
            e_out: vec![Vec::new(); n],
            e_in: vec![Vec::new(); n],
            r_touch: vec![0; n],
            r_self: vec![false; n],
            l_touch: vec![Vec::new(); n],
        };
        for rel in 0..l.len() {
            for t in a.tuples(rel) {
                let (x, y) = (t[0], t[1]);
                if let Some((i, j)) = l.is_e(rel) {
                    ix.e_out[x].push((i, j, y));
                    ix.e_in[y].push((i, j, x));
                } else if let Some(k) = l.is_f(rel) {
                    ix.f_out[x].push((k, y));
                    ix.f_in[y].push((k, x));
                } else if let Some(k) = l.is_l(rel) {
                    ix.l_touch[x].push((k, y, true));
                    if x != y {
                        ix.l_touch[y].push((k, x, false));
                    }
                } else {
                    ix.r_touch[x] += 1;
                    if x != y {
                        ix.r_touch[y] += 1;
                    } else {
                        ix.r_self[x] = true;
                    }
                }
            }
        }
        Ok(ix)
    }

    fn n(&self) -> usize {
        self.f_out.len()
    }

    fn is_root(&self, x: usize) -> bool {
        self.f_in[x].is_empty()
    }

    fn childless(&self, x: usize) -> bool {
        self.f_out[x].is_empty()
    }

    fn children(&self, x: usize, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.f_out[x].iter().filter(move |&&(k2, _)| k2 == k).map(|&(_, y)| y)
    }
}

fn fail(clause: &'static str, witnesses: Vec<usize>, message: impl Into<String>) -> ModelReport {
    ModelReport {
        clause,
        violation: Some(ModelViolation { clause, witnesses, message: message.into() }),
    }
}

fn ok(clause: &'static str) -> ModelReport {
    ModelReport { clause, violation: None }
}

fn tree(ix: &Index) -> ModelReport {
    const C: &str = "tree";
    let kk = ix.l.children();
    let roots: Vec<usize> = (0..ix.n()).filter(|&x| ix.is_root(x)).take(2).collect();
    if roots.len() > 1 {
        return fail(C, roots, "more than one root");
    }
    for x in 0..ix.n() {
        if ix.is_root(x) {
            if !ix.r_self[x] {
                return fail(C, vec![x], "root without R(x,x)");
            }
        } else {
            let mut parents: Vec<usize> = ix.f_in[x].iter().map(|&(_, p)| p).collect();
            parents.sort_unstable();
            parents.dedup();
            if parents.len() != 1 {
                return fail(C, [vec![x], parents].concat(), "element has several parents");
            }
            if ix.r_touch[x] > 0 {
                return fail(C, vec![x], "non-root element occurs in R");
            }
        }
    }
    for x in 0..ix.n() {
        let leaf = ix.childless(x)
            && (0..kk).all(|k| ix.l_touch[x].iter().any(|&(k2, y, _)| k2 == k && y == x))
            && ix.l_touch[x].iter().all(|&(_, y, _)| y == x);
        if leaf {
            continue;
        }
        if ix.childless(x) {
            return fail(C, vec![x], "childless element without its L self-tuples");
        }
        if let Some(&(k, y, _)) = ix.l_touch[x].first() {
            return fail(C, vec![x, y], format!("inner element occurs in L{k}"));
        }
        for k in 0..kk {
            let cs: Vec<usize> = ix.children(x, k).collect();
            if cs.len() != 1 {
                return fail(C, [vec![x], cs].concat(), format!("needs exactly one F{k}-child"));
            }
            let y1 = cs[0];
            if y1 == x {
                return fail(C, vec![x], format!("F{k}-child equals the element"));
            }
            if let Some(&(k2, _)) = ix.f_out[x].iter().find(|&&(k2, y)| y == y1 && k2 != k) {
                return fail(C, vec![x, y1], format!("child is both F{k} and F{k2}"));
            }
        }
    }
    ok(C)
}

fn rotation_map(ix: &Index) -> ModelReport {
    const C: &str = "rotation_map";
    let labels = ix.l.labels();
    for x in 0..ix.n() {
        for &(i, j, y) in &ix.e_out[x] {
            if !ix.e_out[y].contains(&(j, i, x)) {
                return fail(C, vec![x, y], format!("E{i}_{j}(x,y) without E{j}_{i}(y,x)"));
            }
        }
        for i in 0..labels {
            let hits: Vec<(usize, usize)> =
                ix.e_out[x].iter().filter(|t| t.0 == i).map(|&(_, j, y)| (j, y)).collect();
            if hits.len() != 1 {
                let ws = [vec![x], hits.iter().map(|h| h.1).collect()].concat();
                return fail(C, ws, format!("label {i} has {} images", hits.len()));
            }
        }
    }
    ok(C)
}

fn base(ix: &Index, rot_h2: &RotMapGraph) -> ModelReport {
    const C: &str = "base";
    let l = ix.l;
    for x in (0..ix.n()).filter(|&x| ix.is_root(x)) {
        for i in 0..l.labels() {
            if !ix.e_out[x].contains(&(i, i, x)) {
                return fail(C, vec![x], format!("root lacks E{i}_{i}(x,x)"));
            }
        }
        if let Some(&(i, j, y)) = ix.e_out[x].iter().chain(&ix.e_in[x]).find(|t| t.2 != x) {
            return fail(C, vec![x, y], format!("root has E{i}_{j} with another element"));
        }
        for k in 0..rot_h2.n() {
            for i in 0..rot_h2.degree() {
                let (k2, i2) = rot_h2.rot(k, i);
                let found = ix.children(x, k).any(|y| {
                    ix.children(x, k2).any(|y2| ix.e_out[y].contains(&(i, i2, y2)))
                });
                if !found {
                    return fail(C, vec![x], format!("children miss ROT_H2({k},{i}) = ({k2},{i2})"));
                }
            }
        }
    }
    ok(C)
}

fn recursion(ix: &Index, rot_h: &RotMapGraph) -> ModelReport {
    const C: &str = "recursion";
    let n = ix.l.labels();
    let dd = ix.l.d_base;
    for x in (0..ix.n()).filter(|&x| !ix.is_root(x)) {
        for &(k1, l1, y) in &ix.e_out[x] {
            for &(k2, l2, z) in &ix.e_out[y] {
                if ix.childless(x) && ix.childless(z) {
                    continue;
                }
                for i1 in 0..dd {
                    let (k, i) = rot_h.rot(k1 * n + k2, i1);
                    for j in 0..dd {
                        let (ll, j1) = rot_h.rot(l2 * n + l1, j);
                        let (a, b) = (i * dd + j, j1 * dd + i1);
                        let found = ix
                            .children(x, k)
                            .any(|x1| ix.children(z, ll).any(|z1| ix.e_out[x1].contains(&(a, b, z1))));
                        if !found {
                            return fail(
                                C,
                                vec![x, y, z],
                                format!("path E{k1}_{l1}, E{k2}_{l2} lacks child edge E{a}_{b} via F{k}, F{ll}"),
                            );
                        }
                    }
                }
            }
        }
    }
    ok(C)
}

fn check_dims(d_base: usize, rot_h: Option<&RotMapGraph>, rot_h2: Option<&RotMapGraph>) -> Result<()> {
    let kk = d_base.pow(4);
    if let Some(h) = rot_h {
        if h.n() != kk || h.degree() != d_base {
            return Err(Error::DimensionMismatch("ROT_H must be D-regular on D^4 vertices".into()));
        }
    }
    if let Some(h2) = rot_h2 {
        if h2.n() != kk || h2.degree() != d_base * d_base {
            return Err(Error::DimensionMismatch("ROT_H2 must be D^2-regular on D^4 vertices".into()));
        }
    }
    Ok(())
}

pub fn validate_tree(a: &Structure, d_base: usize) -> Result<ModelReport> {
    Ok(tree(&Index::new(a, d_base)?))
}

pub fn validate_rotation_map(a: &Structure, d_base: usize) -> Result<ModelReport> {
    Ok(rotation_map(&Index::new(a, d_base)?))
}

pub fn validate_base(a: &Structure, d_base: usize, rot_h2: &RotMapGraph) -> Result<ModelReport> {
    check_dims(d_base, None, Some(rot_h2))?;
    Ok(base(&Index::new(a, d_base)?, rot_h2))
}

pub fn validate_recursion(a: &Structure, d_base: usize, rot_h: &RotMapGraph) -> Result<ModelReport> {
    check_dims(d_base, Some(rot_h), None)?;
    Ok(recursion(&Index::new(a, d_base)?, rot_h))
}

/// Tree, rotation map, base and recursion reports, in that order.
pub fn validate_all(
    a: &Structure,
    d_base: usize,
    rot_h: &RotMapGraph,
    rot_h2: &RotMapGraph,
) -> Result<Vec<ModelReport>> {
    check_dims(d_base, Some(rot_h), Some(rot_h2))?;
    let ix = Index::new(a, d_base)?;
    Ok(vec![tree(&ix), rotation_map(&ix), base(&ix, rot_h2), recursion(&ix, rot_h)])
}
