use std::collections::{BTreeMap, BTreeSet};

use super::{SigmaLayout, ZigzagModel};
use crate::error::{Error, Result};
use crate::graphcore::{expansion_ratio_bruteforce, spectrum, RotMapGraph, MAX_BRUTEFORCE_N};
use crate::structures::{r_ball, Interval, NeighbourhoodProfile, Structure, TypeRegistry};

/// Label layout of the underlying graph: `0`, then `1 + k` for `k ∈ [D⁴]`, then
/// `1 + D⁴ + i` for `i ∈ [D²]`.
fn raw_underlying(a: &Structure, l: SigmaLayout) -> Vec<Vec<Option<(usize, usize)>>> {
    let kk = l.children();
    let deg = 1 + kk + l.labels();
    let mut slots: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; deg]; a.n()];
    let set = |v: usize, i: usize, target: (usize, usize), slots: &mut Vec<Vec<Option<(usize, usize)>>>| {
        slots[v][i] = Some(match slots[v][i] {
            None => target,
            // a second candidate makes the slot ambiguous
            Some(_) => (usize::MAX, usize::MAX),
        });
    };
    for rel in 0..l.len() {
        for t in a.tuples(rel) {
            let (v, w) = (t[0], t[1]);
            if let Some((i, j)) = l.is_e(rel) {
                set(v, 1 + kk + i, (w, 1 + kk + j), &mut slots);
            } else if let Some(k) = l.is_f(rel) {
                set(v, 1 + k, (w, 0), &mut slots);
                set(w, 0, (v, 1 + k), &mut slots);
            } else if let Some(k) = l.is_l(rel) {
                if v == w {
                    set(v, 1 + k, (v, 1 + k), &mut slots);
                }
            } else if v == w {
                set(v, 0, (v, 0), &mut slots);
            }
        }
    }
    slots
}

/// The underlying `(D² + D⁴ + 1)`-regular graph of a model.
pub fn underlying_graph(m: &ZigzagModel) -> Result<RotMapGraph> {
    let l = m.layout();
    let slots = raw_underlying(&m.structure, l);
    let deg = 1 + l.children() + l.labels();
    let mut rot = Vec::with_capacity(m.n() * deg);
    for (v, row) in slots.iter().enumerate() {
        for (i, s) in row.iter().enumerate() {
            match s {
                Some(t) if t.0 != usize::MAX => rot.push(*t),
                Some(_) => return Err(Error::InvalidRotmap(format!("label {i} of element {v} is ambiguous"))),
                None => return Err(Error::InvalidRotmap(format!("label {i} of element {v} is undefined"))),
            }
        }
    }
    let g = RotMapGraph::from_table(m.n(), deg, rot)?;
    g.ensure_valid()?;
    Ok(g)
}

/// Like [`underlying_graph`] but tolerant of damaged models: undefined, ambiguous and
/// non-involutive slots become self-loops at their own label.
pub fn underlying_graph_padded(a: &Structure, d_base: usize) -> RotMapGraph {
    let l = SigmaLayout::new(d_base);
    let slots = raw_underlying(a, l);
    let deg = 1 + l.children() + l.labels();
    let raw: Vec<(usize, usize)> = slots
        .iter()
        .enumerate()
        .flat_map(|(v, row)| {
            row.iter().enumerate().map(move |(i, s)| match s {
                Some(t) if t.0 != usize::MAX => *t,
                _ => (v, i),
            })
        })
        .collect();
    let rot = (0..raw.len())
        .map(|p| {
            let (w, j) = raw[p];
            if raw[w * deg + j] == (p / deg, p % deg) {
                (w, j)
            } else {
                (p / deg, p % deg)
            }
        })
        .collect();
    RotMapGraph::from_table_unchecked(a.n(), deg, rot)
}

/// The E-labels of the underlying graph restricted to level `lvl`, renumbered through the
/// level bijection. Equals `G_lvl` for a valid model.
pub fn level_rotmap(m: &ZigzagModel, u: &RotMapGraph, lvl: usize) -> Result<RotMapGraph> {
    if lvl == 0 || lvl > m.depth {
        return Err(Error::OutOfRange(format!("level {lvl} outside 1..={}", m.depth)));
    }
    let l = m.layout();
    let base = 1 + l.children();
    let size = m.level_size(lvl);
    let mut rot = Vec::with_capacity(size * l.labels());
    for v in 0..size {
        let e = m.element(lvl, v);
        for i in 0..l.labels() {
            let (w, j) = u.rot(e, base + i);
            if j < base || m.level_of[w] != lvl {
                return Err(Error::InvalidRotmap(format!("E-label {i} of element {e} leaves level {lvl}")));
            }
            rot.push((m.vertex(w).1, j - base));
        }
    }
    RotMapGraph::from_table(size, l.labels(), rot)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub lambda: f64,
    /// `D_U (1 - λ) / 2` with `D_U = D² + D⁴ + 1`.
    pub spectral_bound: f64,
    pub exact_h: Option<f64>,
    /// True when `λ(H) ≤ 1/4`.
    pub certified: bool,
    /// Whether the measured expansion reaches `D²/12`; only set when certified.
    pub meets_claim: Option<bool>,
}

/// Spectral and (for at most 20 elements) exact expansion of the underlying graph.
pub fn measured_expansion(m: &ZigzagModel) -> Result<ExpansionReport> {
    let u = underlying_graph_padded(&m.structure, m.d_base);
    let lambda = spectrum(&u)?.lambda;
    let spectral_bound = u.degree() as f64 * (1.0 - lambda).max(0.0) / 2.0;
    let exact_h = if u.n() >= 2 && u.n() <= MAX_BRUTEFORCE_N {
        expansion_ratio_bruteforce(&u)?
    } else {
        None
    };
    let certified = spectrum(&m.h)?.lambda <= 0.25;
    let claim = (m.d_base * m.d_base) as f64 / 12.0;
    let meets_claim = certified.then(|| exact_h.unwrap_or(spectral_bound) >= claim - 1e-9);
    Ok(ExpansionReport { lambda, spectral_bound, exact_h, certified, meets_claim })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FarnessBound {
    pub epsilon: f64,
    /// Set when the value is the measured surrogate rather than the certified constant.
    pub heuristic: bool,
}

/// `1/(144 D²)` when `λ(H) ≤ 1/4`, otherwise `h_spectral / (3d)` flagged as heuristic.
pub fn nontestability_bound(m: &ZigzagModel) -> Result<FarnessBound> {
    if spectrum(&m.h)?.lambda <= 0.25 {
        return Ok(FarnessBound { epsilon: 1.0 / (144.0 * (m.d_base * m.d_base) as f64), heuristic: false });
    }
    let e = measured_expansion(m)?;
    let d = m.layout().degree_bound() as f64;
    Ok(FarnessBound { epsilon: e.spectral_bound / (3.0 * d), heuristic: true })
}

/// `⌊n/m⌋` disjoint copies of `h_prime` followed by `n mod m` isolated elements, where
/// `n = |M|` and `m = |h_prime|`.
pub fn build_counterexample(m: &ZigzagModel, h_prime: &Structure) -> Result<Structure> {
    let n = m.n();
    let k = h_prime.n();
    if k == 0 || k > n {
        return Err(Error::DimensionMismatch(format!("pattern of size {k} for a model of size {n}")));
    }
    if h_prime.sig() != m.structure.sig() {
        return Err(Error::SignatureMismatch("pattern signature differs from the model".into()));
    }
    let mut b = Structure::builder(h_prime.sig().clone(), (n / k) * k + n % k);
    for c in 0..n / k {
        for rel in 0..h_prime.sig().len() {
            for t in h_prime.tuples(rel) {
                b.add(rel, t.iter().map(|&x| c * k + x).collect())?;
            }
        }
    }
    Ok(b.build())
}

/// One radius-2 profile per observed root type. For root type `k`: `[0,1]` on `k`,
/// `[0,∞)` on the other types seen in models with that root type, `[0,0]` elsewhere.
pub fn build_rho_k(models: &[ZigzagModel]) -> Result<Vec<NeighbourhoodProfile>> {
    let first = models.first().ok_or(Error::Empty("no models given"))?;
    if models.iter().any(|m| m.d_base != first.d_base) {
        return Err(Error::DimensionMismatch("models over different D".into()));
    }
    let mut reg = TypeRegistry::new(2);
    let mut parts: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for m in models {
        let types: Vec<usize> = (0..m.n())
            .map(|v| reg.classify(&r_ball(&m.structure, v, 2)))
            .collect::<Result<_>>()?;
        let root_type = types[0];
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
