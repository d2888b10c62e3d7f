use rayon::prelude::*;

use super::sample::{estimate_frequencies, explore_all, sample_size};
use super::GraphOracle;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structures::{ball_isomorphic, r_ball, Ball, Structure, TypeRegistry};

/// Hard limit on the number of sampled balls in one run.
pub const MAX_SAMPLES: usize = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RejectCause {
    /// `n` lies in the exceptional set.
    InM,
    /// A sampled ball had a forbidden type.
    Forbidden,
    /// Rejected by exact exploration below `n₀`.
    Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TesterVerdict {
    pub accept: bool,
    pub queries: usize,
    /// Sample frequency per registered type; empty if no sampling happened.
    pub distribution: Vec<f64>,
    pub cause: Option<RejectCause>,
    pub samples: usize,
}

/// Forbidden types for the sampling step.
#[derive(Clone, Debug)]
pub enum Forbidden {
    /// Every listed ball is forbidden.
    Balls(Vec<Ball>),
    /// Every type other than the given one is forbidden.
    AllBut(Ball),
}

pub struct FrameworkParams<'a> {
    pub radius: usize,
    pub in_m: Box<dyn Fn(usize) -> bool + Sync + 'a>,
    pub n0: usize,
    pub lambda: f64,
    pub forbidden: Forbidden,
    /// Decides the property for graphs with fewer than `n₀` vertices.
    pub exact: Box<dyn Fn(&Graph) -> bool + Sync + 'a>,
}

impl std::fmt::Debug for FrameworkParams<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrameworkParams")
            .field("radius", &self.radius)
            .field("n0", &self.n0)
            .field("lambda", &self.lambda)
            .finish_non_exhaustive()
    }
}

fn verdict(o: &GraphOracle<'_>, accept: bool, cause: Option<RejectCause>) -> TesterVerdict {
    TesterVerdict { accept, queries: o.queries(), distribution: Vec::new(), cause, samples: 0 }
}

/// Reject if `n ∈ M`; decide exactly if `n < n₀`; otherwise sample, estimate the type
/// distribution and reject iff a forbidden type was seen.
pub fn framework_tester(o: &GraphOracle<'_>, p: &FrameworkParams<'_>, seed: u64) -> Result<TesterVerdict> {
    let n = o.n();
    if (p.in_m)(n) {
        return Ok(verdict(o, false, Some(RejectCause::InM)));
    }
    if n < p.n0 {
        let g = explore_all(o);
        let ok = (p.exact)(&g);
        return Ok(verdict(o, ok, (!ok).then_some(RejectCause::Exact)));
    }
    let mut reg = TypeRegistry::new(p.radius);
    let forbidden_idx: Vec<usize> = match &p.forbidden {
        Forbidden::Balls(bs) if bs.is_empty() => return Ok(verdict(o, true, None)),
        Forbidden::Balls(bs) => bs.iter().map(|b| reg.classify(b)).collect::<Result<_>>()?,
        Forbidden::AllBut(b) => vec![reg.classify(b)?],
    };
    if n == 0 {
        return Ok(verdict(o, true, None));
    }
    let t = reg.len().max(1);
    let s = sample_size(t, p.lambda)?;
    if s > MAX_SAMPLES {
        return Err(Error::CapExceeded { what: "samples", need: s, cap: MAX_SAMPLES });
    }
    let dist = estimate_frequencies(o, p.radius, s, &mut reg, seed)?;
    let mass: f64 = match &p.forbidden {
        Forbidden::Balls(_) => forbidden_idx.iter().map(|&i| dist[i]).sum(),
        Forbidden::AllBut(_) => 1.0 - dist[forbidden_idx[0]],
    };
    let accept = mass <= 0.0;
    Ok(TesterVerdict {
        accept,
        queries: o.queries(),
        distribution: dist,
        cause: (!accept).then_some(RejectCause::Forbidden),
        samples: s,
    })
}

/// True when no vertex of `g` has an `r`-ball isomorphic to `tau`.
pub fn is_tau_free(g: &Graph, tau: &Ball) -> Result<bool> {
    let s = Structure::from_graph(g);
    for v in 0..g.n() {
        if ball_isomorphic(&r_ball(&s, v, tau.radius()), tau)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when every vertex of `g` has an `r`-ball isomorphic to `tau`.
pub fn is_tau_regular(g: &Graph, tau: &Ball) -> Result<bool> {
    let s = Structure::from_graph(g);
    for v in 0..g.n() {
        if !ball_isomorphic(&r_ball(&s, v, tau.radius()), tau)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ball_graph(tau: &Ball) -> Result<&Graph> {
    if tau.structure().sig().len() != 1 || tau.structure().sig().arity(0) != 2 {
        return Err(Error::SignatureMismatch("expected a graph ball".into()));
    }
    Ok(tau.structure().gaifman())
}

/// Which constants the freeness tester uses for a given `τ` and `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessCase {
    /// Some vertex at distance below `r` has degree less than `d`, `r ≥ 2`.
    General,
    /// Radius one with a centre of degree less than `d`.
    RadiusOne,
    /// Every vertex at distance below `r` has degree exactly `d`.
    FullDegree,
    /// `τ` has a vertex of degree above `d`; no graph in the class contains it.
    Impossible,
}

pub fn freeness_case(tau: &Ball, d: usize) -> Result<FreenessCase> {
    let g = ball_graph(tau)?;
    let r = tau.radius();
    if r == 0 {
        return Err(Error::Unsupported("freeness of a 0-type".into()));
    }
    if (0..g.n()).any(|v| g.degree(v) > d) {
        return Ok(FreenessCase::Impossible);
    }
    if (0..g.n()).filter(|&v| tau.dist(v) < r).all(|v| g.degree(v) == d) {
        return Ok(FreenessCase::FullDegree);
    }
    Ok(if r == 1 { FreenessCase::RadiusOne } else { FreenessCase::General })
}

/// Parameters of the `τ`-freeness tester on graphs of maximum degree `d`.
pub fn freeness_params<'a>(tau: &'a Ball, d: usize, eps: f64) -> Result<FrameworkParams<'a>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::OutOfRange(format!("epsilon {eps} outside (0,1]")));
    }
    let case = freeness_case(tau, d)?;
    let r = tau.radius();
    let df = d as f64;
    let (lambda, n0) = match case {
        FreenessCase::General => (eps * df / (14.0 * (1.0 + df.powi(2 * r as i32 + 1))), 2.0 * df * df / eps),
        FreenessCase::RadiusOne => (eps * df / (14.0 * (1.0 + df.powi(3))), 2.0 * df * df / eps),
        FreenessCase::FullDegree => (eps, 1.0),
        FreenessCase::Impossible => (1.0, 0.0),
    };
    // with d = 1 an isolated vertex is unavoidable exactly when n is odd
    let odd_forced = d == 1 && tau.n() == 1;
    let forbidden = if case == FreenessCase::Impossible {
        Forbidden::Balls(Vec::new())
    } else {
        Forbidden::Balls(vec![tau.clone()])
    };
    Ok(FrameworkParams {
        radius: r,
        in_m: Box::new(move |n| odd_forced && n % 2 == 1),
        n0: n0.ceil() as usize,
        lambda: lambda.min(1.0),
        forbidden,
        exact: Box::new(move |g| g.max_degree() <= d && is_tau_free(g, tau).unwrap_or(false)),
    })
}

pub fn freeness_tester(o: &GraphOracle<'_>, tau: &Ball, eps: f64, seed: u64) -> Result<TesterVerdict> {
    framework_tester(o, &freeness_params(tau, o.d(), eps)?, seed)
}

fn radius_one_graph(b: &Ball) -> Result<&Graph> {
    if b.radius() != 1 {
        return Err(Error::Precondition(format!("ball radius {} (need 1)", b.radius())));
    }
    ball_graph(b)
}

/// Number of maximal cliques of size `i` containing the centre of a radius-one ball.
pub fn maxcl(b: &Ball, i: usize) -> Result<usize> {
    let g = radius_one_graph(b)?;
    let c = b.center();
    let nb: Vec<usize> = g.neighbours(c).to_vec();
    if nb.len() > 24 {
        return Err(Error::CapExceeded { what: "clique enumeration", need: nb.len(), cap: 24 });
    }
    let k = nb.len();
    let is_clique = |mask: u32| {
        (0..k).all(|x| mask & (1 << x) == 0 || (x + 1..k).all(|y| mask & (1 << y) == 0 || g.has_edge(nb[x], nb[y])))
    };
    let mut count = 0;
    for mask in 0u32..(1u32 << k) {
        if mask.count_ones() as usize + 1 != i || !is_clique(mask) {
            continue;
        }
        let maximal = (0..k).all(|x| mask & (1 << x) != 0 || !is_clique(mask | (1 << x)));
        if maximal {
            count += 1;
        }
    }
    Ok(count)
}

/// Whether the ball minus its centre is a disjoint union of cliques.
pub fn clique_condition(b: &Ball) -> Result<bool> {
    let g = radius_one_graph(b)?;
    let others: Vec<usize> = (0..g.n()).filter(|&v| v != b.center()).collect();
    let h = g.induced(&others);
    Ok(h.components().iter().all(|comp| {
        comp.iter().all(|&x| h.degree(x) == comp.len() - 1)
    }))
}

/// The exceptional sizes: `n` such that some `i ≤ d+1` has `maxcl(τ, i)·n ≢ 0 (mod i)`.
pub fn regularity_m(tau: &Ball, d: usize) -> Result<Vec<(usize, usize)>> {
    (1..=d + 1).map(|i| Ok((i, maxcl(tau, i)?))).collect()
}

pub fn regularity_params<'a>(tau: &'a Ball, d: usize, eps: f64) -> Result<FrameworkParams<'a>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::OutOfRange(format!("epsilon {eps} outside (0,1]")));
    }
    if !clique_condition(tau)? {
        return Err(Error::Precondition("ball minus its centre is not a union of disjoint cliques".into()));
    }
    let counts = regularity_m(tau, d)?;
    let df = d.max(1) as f64;
    Ok(FrameworkParams {
        radius: 1,
        in_m: Box::new(move |n| counts.iter().any(|&(i, c)| (c * n) % i != 0)),
        n0: (20.0 * df.powi(8)).ceil() as usize,
        lambda: eps / (20.0 * df.powi(6)),
        forbidden: Forbidden::AllBut(tau.clone()),
        exact: Box::new(move |g| g.max_degree() <= d && is_tau_regular(g, tau).unwrap_or(false)),
    })
}

pub fn regularity_tester(o: &GraphOracle<'_>, tau: &Ball, eps: f64, seed: u64) -> Result<TesterVerdict> {
    framework_tester(o, &regularity_params(tau, o.d(), eps)?, seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialSummary {
    pub trials: usize,
    pub accepts: usize,
    pub mean_queries: f64,
    pub max_queries: usize,
}

impl TrialSummary {
    pub fn accept_rate(&self) -> f64 {
        self.accepts as f64 / self.trials.max(1) as f64
    }
}

/// Runs `run(seed + t)` for `t < trials` in parallel and aggregates the verdicts.
pub fn monte_carlo<F>(trials: usize, seed: u64, run: F) -> Result<TrialSummary>
where
    F: Fn(u64) -> Result<TesterVerdict> + Sync,
{
    let vs: Vec<TesterVerdict> = (0..trials as u64)
        .into_par_iter()
        .map(|t| run(seed.wrapping_add(t)))
        .collect::<Result<_>>()?;
    let total: usize = vs.iter().map(|v| v.queries).sum();
    Ok(TrialSummary {
        trials,
        accepts: vs.iter().filter(|v| v.accept).count(),
        mean_queries: total as f64 / trials.max(1) as f64,
        max_queries: vs.iter().map(|v| v.queries).max().unwrap_or(0),
    })
}
