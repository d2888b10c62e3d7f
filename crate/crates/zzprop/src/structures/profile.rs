use std::fmt;

use super::ball::r_ball;
use super::registry::TypeRegistry;
use super::Structure;
use crate::error::{Error, Result};

/// `[lo, hi]` with `hi = None` meaning unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl Interval {
    pub const ANY: Interval = Interval { lo: 0, hi: None };
    pub const NONE: Interval = Interval { lo: 0, hi: Some(0) };

    pub fn new(lo: usize, hi: Option<usize>) -> Result<Self> {
        if hi.is_some_and(|h| h < lo) {
            return Err(Error::OutOfRange(format!("interval [{lo},{}]", hi.unwrap())));
        }
        Ok(Interval { lo, hi })
    }

    pub fn at_most(k: usize) -> Self {
        Interval { lo: 0, hi: Some(k) }
    }

    pub fn contains(&self, x: usize) -> bool {
        x >= self.lo && self.hi.is_none_or(|h| x <= h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},inf)", self.lo),
        }
    }
}

/// Interval constraints on the number of elements of each `r`-type.
#[derive(Clone, Debug)]
pub struct NeighbourhoodProfile {
    registry: TypeRegistry,
    intervals: Vec<Interval>,
    default: Interval,
}

impl NeighbourhoodProfile {
    pub fn new(registry: TypeRegistry, intervals: Vec<Interval>, default: Interval) -> Result<Self> {
        if intervals.len() != registry.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} intervals for {} registered types",
                intervals.len(),
                registry.len()
            )));
        }
        Ok(NeighbourhoodProfile { registry, intervals, default })
    }

    pub fn radius(&self) -> usize {
        self.registry.radius()
    }

    pub fn registry(&self) -> &TypeRegistry {
        &self.registry
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn default_interval(&self) -> Interval {
        self.default
    }

    /// All lower bounds, including the default, are zero.
    pub fn is_zero_profile(&self) -> bool {
        self.default.lo == 0 && self.intervals.iter().all(|i| i.lo == 0)
    }
}

/// True iff every registered type count lies in its interval and every type absent from the
/// registry occurs a number of times permitted by the default interval.
pub fn obeys_profile(a: &Structure, rho: &NeighbourhoodProfile) -> Result<bool> {
    let mut reg = rho.registry.clone();
    let known = reg.len();
    let mut counts = vec![0usize; known];
    for v in 0..a.n() {
        let t = reg.classify(&r_ball(a, v, rho.radius()))?;
        if t >= counts.len() {
            counts.resize(t + 1, 0);
        }
        counts[t] += 1;
    }
    let registered_ok = (0..known).all(|i| rho.intervals[i].contains(counts[i]));
    let novel_ok = counts[known..].iter().all(|&c| rho.default.contains(c));
    Ok(registered_ok && novel_ok)
}
