use std::sync::Arc;

use super::build::*;
use super::{CountKind, Formula};
use crate::error::{Error, Result};
use crate::graphcore::RotMapGraph;
use crate::structures::Signature;
use crate::zzmodel::SigmaLayout;

/// The four conjuncts of the zig-zag sentence together with its signature.
#[derive(Clone, Debug)]
pub struct ZigzagFormulas {
    pub signature: Arc<Signature>,
    pub tree: Formula,
    pub rotation_map: Formula,
    pub base: Formula,
    pub recursion: Formula,
}

impl ZigzagFormulas {
    pub fn conjunction(&self) -> Formula {
        and(vec![
            self.tree.clone(),
            self.rotation_map.clone(),
            self.base.clone(),
            self.recursion.clone(),
        ])
    }
}

fn f_any(l: &SigmaLayout, x: &str, y: &str) -> Formula {
    or((0..l.children()).map(|k| atom(l.f_name(k), &[x, y])).collect())
}

/// `∀y ¬F(y, x)` with `F` expanded.
pub fn phi_root(d_base: usize, x: &str, y: &str) -> Formula {
    let l = SigmaLayout::new(d_base);
    forall(y, not(f_any(&l, y, x)))
}

pub fn phi_tree(d_base: usize) -> Formula {
    let l = SigmaLayout::new(d_base);
    let kk = l.children();
    let root_x = phi_root(d_base, "x", "y");
    let at_most_one_root = count(CountKind::AtMost, 1, "x", root_x.clone());
    let parent_or_root = forall(
        "x",
        or(vec![
            and(vec![root_x, atom("R", &["x", "x"])]),
            and(vec![
                count(CountKind::Exactly, 1, "y", f_any(&l, "y", "x")),
                not(exists("y", atom("R", &["x", "y"]))),
                not(exists("y", atom("R", &["y", "x"]))),
            ]),
        ]),
    );
    let leaf = and(vec![
        not(exists("y", f_any(&l, "x", "y"))),
        and((0..kk).map(|k| atom(l.l_name(k), &["x", "x"])).collect()),
        forall(
            "y",
            implies(
                neq("y", "x"),
                and(vec![
                    and((0..kk).map(|k| not(atom(l.l_name(k), &["x", "y"]))).collect()),
                    and((0..kk).map(|k| not(atom(l.l_name(k), &["y", "x"]))).collect()),
                ]),
            ),
        ),
    ]);
    let no_l = not(exists(
        "y",
        or((0..kk)
            .map(|k| or(vec![atom(l.l_name(k), &["x", "y"]), atom(l.l_name(k), &["y", "x"])]))
            .collect()),
    ));
    let children = and(
        (0..kk)
            .map(|k| {
                exists(
                    "y1",
                    and(vec![
                        neq("x", "y1"),
                        atom(l.f_name(k), &["x", "y1"]),
                        and((0..kk)
                            .filter(|&k2| k2 != k)
                            .map(|k2| not(atom(l.f_name(k2), &["x", "y1"])))
                            .collect()),
                        forall("y", implies(neq("y", "y1"), not(atom(l.f_name(k), &["x", "y"])))),
                    ]),
                )
            })
            .collect(),
    );
    let internal = and(vec![no_l, children]);
    let leaf_or_internal = forall("x", or(vec![leaf, internal]));
    and(vec![at_most_one_root, parent_or_root, leaf_or_internal])
}

pub fn phi_rotation_map(d_base: usize) -> Formula {
    let l = SigmaLayout::new(d_base);
    let n = l.labels();
    let mut sym = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            sym.push(implies(atom(l.e_name(i, j), &["x", "y"]), atom(l.e_name(j, i), &["y", "x"])));
        }
    }
    let symmetric = forall("x", forall("y", and(sym)));
    let functional = forall(
        "x",
        and((0..n)
            .map(|i| {
                or((0..n)
                    .map(|j| {
                        and(vec![
                            count(CountKind::Exactly, 1, "y", atom(l.e_name(i, j), &["x", "y"])),
                            and((0..n)
                                .filter(|&j2| j2 != j)
                                .map(|j2| not(exists("y", atom(l.e_name(i, j2), &["x", "y"]))))
                                .collect()),
                        ])
                    })
                    .collect())
            })
            .collect()),
    );
    and(vec![symmetric, functional])
}

fn check_h(d_base: usize, h: &RotMapGraph, degree: usize, what: &str) -> Result<()> {
    let kk = d_base.pow(4);
    if h.n() != kk || h.degree() != degree {
        return Err(Error::DimensionMismatch(format!(
            "{what} must have {kk} vertices and degree {degree}, got {} and {}",
            h.n(),
            h.degree()
        )));
    }
    Ok(())
}

/// Roots carry the identity self-rotation `E_{i,i}(x,x)`, have no E-tuples with other
/// elements, and their children realize `ROT_{H²}`.
pub fn phi_base(d_base: usize, rot_h2: &RotMapGraph) -> Result<Formula> {
    let l = SigmaLayout::new(d_base);
    check_h(d_base, rot_h2, l.labels(), "ROT_H2")?;
    let n = l.labels();
    let mut loops = Vec::new();
    for i in 0..n {
        loops.push(atom(l.e_name(i, i), &["x", "x"]));
    }
    for i in 0..n {
        for j in 0..n {
            loops.push(forall(
                "y",
                implies(
                    neq("x", "y"),
                    and(vec![
                        not(atom(l.e_name(i, j), &["x", "y"])),
                        not(atom(l.e_name(i, j), &["y", "x"])),
                    ]),
                ),
            ));
        }
    }
    let mut edges = Vec::with_capacity(rot_h2.n() * n);
    for k in 0..rot_h2.n() {
        for i in 0..n {
            let (k2, i2) = rot_h2.rot(k, i);
            edges.push(exists(
                "y",
                exists(
                    "y2",
                    and(vec![
                        atom(l.f_name(k), &["x", "y"]),
                        atom(l.f_name(k2), &["x", "y2"]),
                        atom(l.e_name(i, i2), &["y", "y2"]),
                    ]),
                ),
            ));
        }
    }
    Ok(forall(
        "x",
        implies(phi_root(d_base, "x", "y"), and(vec![and(loops), and(edges)])),
    ))
}

/// Children of `E`-paths of length two are joined as in `G² ⓩ H`; roots are exempt.
pub fn phi_recursion(d_base: usize, rot_h: &RotMapGraph) -> Result<Formula> {
    let l = SigmaLayout::new(d_base);
    check_h(d_base, rot_h, d_base, "ROT_H")?;
    let n = l.labels();
    let dd = d_base;
    let mut patterns = Vec::with_capacity(n.pow(4));
    for k1 in 0..n {
        for l1 in 0..n {
            for k2 in 0..n {
                for l2 in 0..n {
                    let path = exists(
                        "y",
                        and(vec![atom(l.e_name(k1, l1), &["x", "y"]), atom(l.e_name(k2, l2), &["y", "z"])]),
                    );
                    let mut edges = Vec::with_capacity(dd * dd);
                    for i1 in 0..dd {
                        let (k, i) = rot_h.rot(k1 * n + k2, i1);
                        for j in 0..dd {
                            let (ll, j1) = rot_h.rot(l2 * n + l1, j);
                            edges.push(exists(
                                "x1",
                                exists(
                                    "z1",
                                    and(vec![
                                        atom(l.f_name(k), &["x", "x1"]),
                                        atom(l.f_name(ll), &["z", "z1"]),
                                        atom(l.e_name(i * dd + j, j1 * dd + i1), &["x1", "z1"]),
                                    ]),
                                ),
                            ));
                        }
                    }
                    patterns.push(implies(path, and(edges)));
                }
            }
        }
    }
    Ok(forall(
        "x",
        forall(
            "z",
            or(vec![
                phi_root(d_base, "x", "y"),
                and(vec![not(exists("y", f_any(&l, "x", "y"))), not(exists("y", f_any(&l, "z", "y")))]),
                and(patterns),
            ]),
        ),
    ))
}

pub fn phi_zigzag(d_base: usize, rot_h: &RotMapGraph, rot_h2: &RotMapGraph) -> Result<ZigzagFormulas> {
    Ok(ZigzagFormulas {
        signature: SigmaLayout::new(d_base).signature(),
        tree: phi_tree(d_base),
        rotation_map: phi_rotation_map(d_base),
        base: phi_base(d_base, rot_h2)?,
        recursion: phi_recursion(d_base, rot_h)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::square;

    #[test]
    fn d2_shapes() {
        let h = RotMapGraph::cycle(16);
        let z = phi_zigzag(2, &h, &square(&h).unwrap()).unwrap();
        assert_eq!(z.signature.len(), 49);
        assert!(matches!(&z.tree, Formula::And(parts) if matches!(parts[0], Formula::Count(CountKind::AtMost, 1, _, _))));
        let Formula::Forall(_, body) = &z.base else { panic!() };
        let Formula::Implies(_, rhs) = &**body else { panic!() };
        let Formula::And(parts) = &**rhs else { panic!() };
        let Formula::And(edges) = &parts[1] else { panic!() };
        assert_eq!(edges.len(), 2usize.pow(4) * 2usize.pow(2));
        for f in [&z.tree, &z.rotation_map, &z.base, &z.recursion] {
            assert!(f.binds_once());
            assert!(f.free_vars().is_empty());
        }
    }
}
