//! First-order formulas with counting quantifiers: AST, s-expression syntax, evaluation,
//! and generators for the zig-zag model formulas.

mod eval;
mod parse;
mod zigzag;

pub use eval::{eval, eval_sentence, Assignment};
pub use parse::{parse, parse_with_header};
pub use zigzag::{phi_base, phi_recursion, phi_root, phi_rotation_map, phi_tree, phi_zigzag, ZigzagFormulas};

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    AtLeast,
    Exactly,
    AtMost,
}

impl CountKind {
    pub fn keyword(self) -> &'static str {
        match self {
            CountKind::AtLeast => "exists>=",
            CountKind::Exactly => "exists=",
            CountKind::AtMost => "exists<=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<String>),
    Eq(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    Count(CountKind, usize, String, Box<Formula>),
}

/// Small constructors used by the generators.
pub mod build {
    use super::{CountKind, Formula};

    pub fn atom(rel: impl Into<String>, args: &[&str]) -> Formula {
        Formula::Atom(rel.into(), args.iter().map(|s| s.to_string()).collect())
    }
    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::Eq(x.into(), y.into())
    }
    pub fn neq(x: &str, y: &str) -> Formula {
        not(eq(x, y))
    }
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(fs: Vec<Formula>) -> Formula {
        Formula::And(fs)
    }
    pub fn or(fs: Vec<Formula>) -> Formula {
        Formula::Or(fs)
    }
    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::Implies(Box::new(f), Box::new(g))
    }
    pub fn exists(x: &str, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }
    pub fn forall(x: &str, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }
    pub fn count(kind: CountKind, m: usize, x: &str, f: Formula) -> Formula {
        Formula::Count(kind, m, x.into(), Box::new(f))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(r, args) => {
                write!(f, "({r}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Formula::Eq(x, y) => write!(f, "(= {x} {y})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(gs) | Formula::Or(gs) => {
                write!(f, "({}", if matches!(self, Formula::And(_)) { "and" } else { "or" })?;
                for g in gs {
                    write!(f, " {g}")?;
                }
                write!(f, ")")
            }
            Formula::Implies(g, h) => write!(f, "(-> {g} {h})"),
            Formula::Exists(x, g) => write!(f, "(exists {x} {g})"),
            Formula::Forall(x, g) => write!(f, "(forall {x} {g})"),
            Formula::Count(k, m, x, g) => write!(f, "({} {m} {x} {g})", k.keyword()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixClass {
    /// `Σ_i`; quantifier-free formulas are `Sigma(0)`.
    Sigma(usize),
    Pi(usize),
    NonPrenex,
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut see = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| see(a, bound)),
            Formula::Eq(x, y) => {
                see(x, bound);
                see(y, bound);
            }
            Formula::Not(g) => g.collect_free(bound, out),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.collect_free(bound, out)),
            Formula::Implies(g, h) => {
                g.collect_free(bound, out);
                h.collect_free(bound, out);
            }
            Formula::Exists(x, g) | Formula::Forall(x, g) | Formula::Count(_, _, x, g) => {
                bound.push(x.clone());
                g.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// True iff no variable is bound twice on any root-to-leaf path.
    pub fn binds_once(&self) -> bool {
        fn go(f: &Formula, bound: &mut Vec<String>) -> bool {
            match f {
                Formula::Atom(..) | Formula::Eq(..) => true,
                Formula::Not(g) => go(g, bound),
                Formula::And(gs) | Formula::Or(gs) => gs.iter().all(|g| go(g, bound)),
                Formula::Implies(g, h) => go(g, bound) && go(h, bound),
                Formula::Exists(x, g) | Formula::Forall(x, g) | Formula::Count(_, _, x, g) => {
                    if bound.contains(x) {
                        return false;
                    }
                    bound.push(x.clone());
                    let ok = go(g, bound);
                    bound.pop();
                    ok
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => true,
            Formula::Not(g) => g.is_quantifier_free(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(g, h) => g.is_quantifier_free() && h.is_quantifier_free(),
            _ => false,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            Formula::Atom(..) | Formula::Eq(..) => 0,
            Formula::Not(g) => g.size(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().map(Formula::size).sum(),
            Formula::Implies(g, h) => g.size() + h.size(),
            Formula::Exists(_, g) | Formula::Forall(_, g) | Formula::Count(_, _, _, g) => g.size(),
        }
    }
}

/// Alternation class of a prenex formula.
pub fn prefix_class(f: &Formula) -> PrefixClass {
    let mut blocks: Vec<bool> = Vec::new();
    let mut cur = f;
    loop {
        let existential = match cur {
            Formula::Exists(_, g) => {
                cur = g;
                true
            }
            Formula::Forall(_, g) => {
                cur = g;
                false
            }
            Formula::Count(k, _, _, g) => {
                cur = g;
                *k != CountKind::AtMost
            }
            _ => break,
        };
        if blocks.last() != Some(&existential) {
            blocks.push(existential);
        }
    }
    if !cur.is_quantifier_free() {
        return PrefixClass::NonPrenex;
    }
    match blocks.first() {
        None => PrefixClass::Sigma(0),
        Some(true) => PrefixClass::Sigma(blocks.len()),
        Some(false) => PrefixClass::Pi(blocks.len()),
    }
}

/// Rewrites every counting quantifier into plain quantifiers over pairwise distinct
/// witnesses. Fresh variables are named `_c<k>`.
pub fn expand_counting(f: &Formula) -> Formula {
    let mut fresh = 0usize;
    expand(f, &mut fresh)
}

fn expand(f: &Formula, fresh: &mut usize) -> Formula {
    use build::*;
    match f {
        Formula::Atom(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(g) => not(expand(g, fresh)),
        Formula::And(gs) => and(gs.iter().map(|g| expand(g, fresh)).collect()),
        Formula::Or(gs) => or(gs.iter().map(|g| expand(g, fresh)).collect()),
        Formula::Implies(g, h) => implies(expand(g, fresh), expand(h, fresh)),
        Formula::Exists(x, g) => exists(x, expand(g, fresh)),
        Formula::Forall(x, g) => forall(x, expand(g, fresh)),
        Formula::Count(kind, m, x, g) => {
            let body = expand(g, fresh);
            match kind {
                CountKind::AtLeast => at_least(*m, x, &body, fresh),
                CountKind::AtMost => not(at_least(m + 1, x, &body, fresh)),
                CountKind::Exactly => and(vec![
                    at_least(*m, x, &body, fresh),
                    not(at_least(m + 1, x, &body, fresh)),
                ]),
            }
        }
    }
}

fn at_least(m: usize, x: &str, body: &Formula, fresh: &mut usize) -> Formula {
    use build::*;
    let vars: Vec<String> = (0..m)
        .map(|_| {
            *fresh += 1;
            format!("_c{fresh}")
        })
        .collect();
    let mut parts = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            parts.push(neq(&vars[i], &vars[j]));
        }
    }
    for v in &vars {
        parts.push(rename_free(body, x, v));
    }
    let mut out = and(parts);
    for v in vars.iter().rev() {
        out = exists(v, out);
    }
    out
}

/// Replaces free occurrences of `from` by `to`.
pub fn rename_free(f: &Formula, from: &str, to: &str) -> Formula {
    let r = |s: &String| if s == from { to.to_string() } else { s.clone() };
    match f {
        Formula::Atom(rel, args) => Formula::Atom(rel.clone(), args.iter().map(r).collect()),
        Formula::Eq(x, y) => Formula::Eq(r(x), r(y)),
        Formula::Not(g) => Formula::Not(Box::new(rename_free(g, from, to))),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rename_free(g, from, to)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rename_free(g, from, to)).collect()),
        Formula::Implies(g, h) => Formula::Implies(
            Box::new(rename_free(g, from, to)),
            Box::new(rename_free(h, from, to)),
        ),
        Formula::Exists(x, _) | Formula::Forall(x, _) | Formula::Count(_, _, x, _) if x == from => {
            f.clone()
        }
        Formula::Exists(x, g) => Formula::Exists(x.clone(), Box::new(rename_free(g, from, to))),
        Formula::Forall(x, g) => Formula::Forall(x.clone(), Box::new(rename_free(g, from, to))),
        Formula::Count(k, m, x, g) => {
            Formula::Count(*k, *m, x.clone(), Box::new(rename_free(g, from, to)))
        }
    }
}
