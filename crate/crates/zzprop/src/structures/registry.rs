use super::ball::{ball_isomorphic, r_ball, Ball};
use super::Structure;
use crate::error::{Error, Result};

/// Cheap isomorphism invariant used to skip most pairwise checks.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fingerprint {
    n: usize,
    tuple_counts: Vec<usize>,
    degrees_by_dist: Vec<(usize, usize)>,
}

fn fingerprint(b: &Ball) -> Fingerprint {
    let s = b.structure();
    let mut degrees_by_dist: Vec<(usize, usize)> =
        (0..s.n()).map(|v| (b.dist(v), s.degree(v))).collect();
    degrees_by_dist.sort_unstable();
    Fingerprint {
        n: s.n(),
        tuple_counts: (0..s.sig().len()).map(|k| s.tuples(k).len()).collect(),
        degrees_by_dist,
    }
}

/// Representatives of the `r`-types seen so far, in discovery order.
#[derive(Clone, Debug)]
pub struct TypeRegistry {
    radius: usize,
    reps: Vec<Ball>,
    prints: Vec<Fingerprint>,
}

impl TypeRegistry {
    pub fn new(radius: usize) -> Self {
        TypeRegistry { radius, reps: Vec::new(), prints: Vec::new() }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Ball] {
        &self.reps
    }

    pub fn get(&self, i: usize) -> &Ball {
        &self.reps[i]
    }

    /// Index of the registered type isomorphic to `b`, without registering.
    pub fn find(&self, b: &Ball) -> Result<Option<usize>> {
        if b.radius() != self.radius {
            return Err(Error::Precondition(format!(
                "ball radius {} in a registry of radius {}",
                b.radius(),
                self.radius
            )));
        }
        let fp = fingerprint(b);
        for (i, rep) in self.reps.iter().enumerate() {
            if self.prints[i] == fp && ball_isomorphic(rep, b)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Index of the type of `b`, registering it if new.
    pub fn classify(&mut self, b: &Ball) -> Result<usize> {
        if let Some(i) = self.find(b)? {
            return Ok(i);
        }
        self.prints.push(fingerprint(b));
        self.reps.push(b.clone());
        Ok(self.reps.len() - 1)
    }
}

/// Per-type counts of the `r`-balls of all elements; the vector has one entry per registered
/// type after classification.
pub fn histogram(a: &Structure, reg: &mut TypeRegistry) -> Result<Vec<usize>> {
    let r = reg.radius();
    let mut counts = vec![0usize; reg.len()];
    for v in 0..a.n() {
        let t = reg.classify(&r_ball(a, v, r))?;
        if t >= counts.len() {
            counts.resize(t + 1, 0);
        }
        counts[t] += 1;
    }
    counts.resize(reg.len(), 0);
    Ok(counts)
}

/// Half the L1 distance between the normalized `r`-type histograms of `a` and `b`.
pub fn sampling_distance_r(a: &Structure, b: &Structure, reg: &mut TypeRegistry) -> Result<f64> {
    if a.n() == 0 || b.n() == 0 {
        return Err(Error::Empty("structure with no elements"));
    }
    let ha = histogram(a, reg)?;
    let hb = histogram(b, reg)?;
    let k = reg.len();
    let (na, nb) = (a.n() as f64, b.n() as f64);
    let sum: f64 = (0..k)
        .map(|i| {
            let x = ha.get(i).copied().unwrap_or(0) as f64 / na;
            let y = hb.get(i).copied().unwrap_or(0) as f64 / nb;
            (x - y).abs()
        })
        .sum();
    Ok(0.5 * sum)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingDistance {
    /// `Σ_{r ≤ r_max} 2^{-r} δ^r`.
    pub value: f64,
    /// Upper bound on the omitted terms, `2^{1 - r_max}`.
    pub tail: f64,
    pub terms: Vec<f64>,
}

pub fn sampling_distance(a: &Structure, b: &Structure, r_max: usize) -> Result<SamplingDistance> {
    let mut terms = Vec::with_capacity(r_max + 1);
    let mut value = 0.0;
    for r in 0..=r_max {
        let mut reg = TypeRegistry::new(r);
        let d = sampling_distance_r(a, b, &mut reg)?;
        value += d / 2f64.powi(r as i32);
        terms.push(d);
    }
    Ok(SamplingDistance { value, tail: 2f64.powi(1 - r_max as i32), terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn classify_is_idempotent() {
        let s = Structure::from_graph(&Graph::path(3));
        let mut reg = TypeRegistry::new(1);
        assert_eq!(reg.classify(&r_ball(&s, 0, 1)).unwrap(), 0);
        assert_eq!(reg.classify(&r_ball(&s, 0, 1)).unwrap(), 0);
        assert_eq!(reg.classify(&r_ball(&s, 1, 1)).unwrap(), 1);
        assert_eq!(reg.classify(&r_ball(&s, 2, 1)).unwrap(), 0);
        assert_eq!(reg.len(), 2);
    }

    #[test]
    fn p3_histogram() {
        let s = Structure::from_graph(&Graph::path(3));
        let mut reg = TypeRegistry::new(1);
        assert_eq!(histogram(&s, &mut reg).unwrap(), vec![2, 1]);
        let e = Structure::from_graph(&Graph::new(5));
        let mut reg = TypeRegistry::new(1);
        assert_eq!(histogram(&e, &mut reg).unwrap(), vec![5]);
    }

    #[test]
    fn distances() {
        let empty4 = Structure::from_graph(&Graph::new(4));
        let matching = Structure::from_graph(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
        let mut reg = TypeRegistry::new(1);
        assert_eq!(sampling_distance_r(&empty4, &matching, &mut reg).unwrap(), 1.0);
        let double = matching.disjoint_union(&matching).unwrap();
        assert_eq!(sampling_distance_r(&matching, &double, &mut reg).unwrap(), 0.0);
        let sd = sampling_distance(&matching, &matching, 3).unwrap();
        assert_eq!(sd.value, 0.0);
        assert_eq!(sd.tail, 0.25);
    }
}
