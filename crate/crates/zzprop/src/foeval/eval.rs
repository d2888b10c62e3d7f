use std::collections::HashMap;

use super::{CountKind, Formula};
use crate::error::{Error, Result};
use crate::structures::Structure;

/// Values for free variables.
pub type Assignment = HashMap<String, usize>;

enum Node {
    Atom(usize, Vec<usize>),
    Eq(usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
    Count(CountKind, usize, usize, Box<Node>),
}

struct Compiler<'a> {
    a: &'a Structure,
    scope: Vec<(String, usize)>,
    slots: usize,
}

impl Compiler<'_> {
    fn lookup(&self, v: &str) -> Result<usize> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .map(|&(_, s)| s)
            .ok_or_else(|| Error::UnboundVariable(v.to_string()))
    }

    fn bind<T>(&mut self, v: &str, f: impl FnOnce(&mut Self, usize) -> Result<T>) -> Result<T> {
        let slot = self.slots;
        self.slots += 1;
        self.scope.push((v.to_string(), slot));
        let out = f(self, slot);
        self.scope.pop();
        out
    }

    fn compile(&mut self, f: &Formula) -> Result<Node> {
        Ok(match f {
            Formula::Atom(rel, args) => {
                let sig = self.a.sig();
                let k = sig
                    .index_of(rel)
                    .ok_or_else(|| Error::SignatureMismatch(format!("unknown relation {rel}")))?;
                if sig.arity(k) != args.len() {
                    return Err(Error::SignatureMismatch(format!("arity of {rel}")));
                }
                Node::Atom(k, args.iter().map(|v| self.lookup(v)).collect::<Result<_>>()?)
            }
            Formula::Eq(x, y) => Node::Eq(self.lookup(x)?, self.lookup(y)?),
            Formula::Not(g) => Node::Not(Box::new(self.compile(g)?)),
            Formula::And(gs) => Node::And(gs.iter().map(|g| self.compile(g)).collect::<Result<_>>()?),
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.compile(g)).collect::<Result<_>>()?),
            Formula::Implies(g, h) => {
                Node::Implies(Box::new(self.compile(g)?), Box::new(self.compile(h)?))
            }
            Formula::Exists(x, g) => {
                self.bind(x, |c, s| Ok(Node::Exists(s, Box::new(c.compile(g)?))))?
            }
            Formula::Forall(x, g) => {
                self.bind(x, |c, s| Ok(Node::Forall(s, Box::new(c.compile(g)?))))?
            }
            Formula::Count(k, m, x, g) => {
                self.bind(x, |c, s| Ok(Node::Count(*k, *m, s, Box::new(c.compile(g)?))))?
            }
        })
    }
}

struct Evaluator<'a> {
    a: &'a Structure,
    env: Vec<usize>,
    buf: Vec<usize>,
}

impl Evaluator<'_> {
    fn eval(&mut self, n: &Node) -> bool {
        match n {
            Node::Atom(k, slots) => {
                self.buf.clear();
                self.buf.extend(slots.iter().map(|&s| self.env[s]));
                self.a.contains(*k, &self.buf)
            }
            Node::Eq(x, y) => self.env[*x] == self.env[*y],
            Node::Not(g) => !self.eval(g),
            Node::And(gs) => gs.iter().all(|g| self.eval(g)),
            Node::Or(gs) => gs.iter().any(|g| self.eval(g)),
            Node::Implies(g, h) => !self.eval(g) || self.eval(h),
            Node::Exists(s, g) => (0..self.a.n()).any(|v| {
                self.env[*s] = v;
                self.eval(g)
            }),
            Node::Forall(s, g) => (0..self.a.n()).all(|v| {
                self.env[*s] = v;
                self.eval(g)
            }),
            Node::Count(kind, m, s, g) => {
                let limit = match kind {
                    CountKind::AtLeast => *m,
                    _ => m + 1,
                };
                let mut c = 0;
                for v in 0..self.a.n() {
                    if c >= limit {
                        break;
                    }
                    self.env[*s] = v;
                    if self.eval(g) {
                        c += 1;
                    }
                }
                match kind {
                    CountKind::AtLeast => c >= *m,
                    CountKind::Exactly => c == *m,
                    CountKind::AtMost => c <= *m,
                }
            }
        }
    }
}

/// Standard semantics; counting quantifiers count witnesses directly.
pub fn eval(a: &Structure, f: &Formula, asg: &Assignment) -> Result<bool> {
    let mut names: Vec<(&String, &usize)> = asg.iter().collect();
    names.sort();
    let mut c = Compiler { a, scope: Vec::new(), slots: 0 };
    let mut env = Vec::new();
    for (name, &val) in names {
        if val >= a.n() {
            return Err(Error::OutOfRange(format!("{name} = {val} with n = {}", a.n())));
        }
        c.scope.push((name.clone(), c.slots));
        c.slots += 1;
        env.push(val);
    }
    let node = c.compile(f)?;
    env.resize(c.slots, 0);
    Ok(Evaluator { a, env, buf: Vec::new() }.eval(&node))
}

pub fn eval_sentence(a: &Structure, f: &Formula) -> Result<bool> {
    eval(a, f, &Assignment::new())
}
