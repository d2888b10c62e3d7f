//! Rotation-map multigraphs and the operations on them.

mod expansion;
mod ops;
mod spectrum;

pub use expansion::{cheeger_check, expansion_ratio_bruteforce, CheegerReport, MAX_BRUTEFORCE_N};
pub use ops::{iterated_family, square, zigzag};
pub use spectrum::{
    connectivity_flags, g_printed, g_standard, normalized_adjacency, spectral_cross_check, spectrum,
    symmetric_eigenvalues, ConnectivityFlags, Spectrum, DENSE_CAP,
};

use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{parse_err, Error, Result};
use crate::{content_lines, parse_num};

/// A D-regular multigraph given by its rotation map `(v, i) -> (w, j)`.
///
/// Entries are stored row-major: `rot[v * degree + i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotMapGraph {
    n: usize,
    degree: usize,
    rot: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OutOfRange { v: usize, i: usize, target: (usize, usize) },
    NotInvolution { v: usize, i: usize, image: (usize, usize), back: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { v, i, target } => {
                write!(f, "rot({v},{i}) = {target:?} is out of range")
            }
            Violation::NotInvolution { v, i, image, back } => {
                write!(f, "rot({v},{i}) = {image:?} but rot{image:?} = {back:?}")
            }
        }
    }
}

/// Outcome of [`validate_rotmap`]; violations are listed in `(v, i)` order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks totality (every target in range) and the involution property.
pub fn validate_rotmap(r: &RotMapGraph) -> ValidationReport {
    let mut violations = Vec::new();
    for v in 0..r.n {
        for i in 0..r.degree {
            let (w, j) = r.rot(v, i);
            if w >= r.n || j >= r.degree {
                violations.push(Violation::OutOfRange { v, i, target: (w, j) });
                continue;
            }
            let back = r.rot(w, j);
            if back != (v, i) {
                violations.push(Violation::NotInvolution { v, i, image: (w, j), back });
            }
        }
    }
    ValidationReport { violations }
}

impl RotMapGraph {
    /// Wraps a raw table. Only the table length is checked; use [`validate_rotmap`] for the rest.
    pub fn from_table(n: usize, degree: usize, rot: Vec<(usize, usize)>) -> Result<Self> {
        if rot.len() != n * degree {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries, expected {n} * {degree}",
                rot.len()
            )));
        }
        Ok(RotMapGraph { n, degree, rot })
    }

    pub(crate) fn from_table_unchecked(n: usize, degree: usize, rot: Vec<(usize, usize)>) -> Self {
        debug_assert_eq!(rot.len(), n * degree);
        RotMapGraph { n, degree, rot }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rot(&self, v: usize, i: usize) -> (usize, usize) {
        self.rot[v * self.degree + i]
    }

    pub fn table(&self) -> &[(usize, usize)] {
        &self.rot
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        match validate_rotmap(self).first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidRotmap(v.to_string())),
        }
    }

    /// The cycle `C_n` with `rot(v,0) = (v+1,1)` and `rot(v,1) = (v-1,0)`.
    pub fn cycle(n: usize) -> Self {
        let mut rot = Vec::with_capacity(2 * n);
        for v in 0..n {
            rot.push(((v + 1) % n, 1));
            rot.push(((v + n - 1) % n, 0));
        }
        RotMapGraph { n, degree: 2, rot }
    }

    /// The complete graph `K_n`; label `i` at `v` leads to the `i`-th other vertex.
    pub fn complete(n: usize) -> Self {
        let d = n.saturating_sub(1);
        let mut rot = Vec::with_capacity(n * d);
        for v in 0..n {
            for i in 0..d {
                let w = if i < v { i } else { i + 1 };
                let j = if v < w { v } else { v - 1 };
                rot.push((w, j));
            }
        }
        RotMapGraph { n, degree: d, rot }
    }

    /// `n` isolated vertices, each carrying one fixed-point self-loop.
    pub fn self_loops(n: usize) -> Self {
        RotMapGraph {
            n,
            degree: 1,
            rot: (0..n).map(|v| (v, 0)).collect(),
        }
    }

    /// A uniformly shuffled involution on `[n] x [degree]`; roughly `fixed_rate` of the
    /// slots become fixed points.
    pub fn random<R: Rng>(n: usize, degree: usize, fixed_rate: f64, rng: &mut R) -> Self {
        let mut slots: Vec<(usize, usize)> =
            (0..n).flat_map(|v| (0..degree).map(move |i| (v, i))).collect();
        slots.shuffle(rng);
        let mut rot = vec![(0, 0); n * degree];
        let mut k = 0;
        while k < slots.len() {
            let a = slots[k];
            if k + 1 == slots.len() || rng.gen_bool(fixed_rate.clamp(0.0, 1.0)) {
                rot[a.0 * degree + a.1] = a;
                k += 1;
            } else {
                let b = slots[k + 1];
                rot[a.0 * degree + a.1] = b;
                rot[b.0 * degree + b.1] = a;
                k += 2;
            }
        }
        RotMapGraph { n, degree, rot }
    }

    /// Number of labels at `u` leading to `v`.
    pub fn label_count(&self, u: usize, v: usize) -> usize {
        (0..self.degree).filter(|&i| self.rot(u, i).0 == v).count()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("rotmap {} {}\n", self.n, self.degree);
        for v in 0..self.n {
            for i in 0..self.degree {
                let (w, j) = self.rot(v, i);
                let _ = writeln!(s, "{v} {i} {w} {j}");
            }
        }
        s
    }

    /// Parses `rotmap <n> <D>` followed by `n * D` lines `<v> <i> <w> <j>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "empty rotmap file"))?;
        let mut toks = head.split_whitespace();
        if toks.next() != Some("rotmap") {
            return Err(parse_err(ln, "expected `rotmap <n> <D>`"));
        }
        let n: usize = parse_num(toks.next(), ln, "vertex count")?;
        let d: usize = parse_num(toks.next(), ln, "degree")?;
        crate::check_cap("rotmap slots", n.saturating_mul(d))?;
        let mut rot: Vec<Option<(usize, usize)>> = vec![None; n * d];
        for (ln, l) in lines {
            let mut t = l.split_whitespace();
            let v: usize = parse_num(t.next(), ln, "vertex")?;
            let i: usize = parse_num(t.next(), ln, "label")?;
            let w: usize = parse_num(t.next(), ln, "vertex")?;
            let j: usize = parse_num(t.next(), ln, "label")?;
            if t.next().is_some() {
                return Err(parse_err(ln, "trailing tokens"));
            }
            if v >= n || i >= d {
                return Err(parse_err(ln, format!("key ({v},{i}) out of range")));
            }
            let slot = &mut rot[v * d + i];
            if slot.is_some() {
                return Err(parse_err(ln, format!("duplicate key ({v},{i})")));
            }
            *slot = Some((w, j));
        }
        let rot = rot
            .into_iter()
            .enumerate()
            .map(|(k, e)| {
                e.ok_or_else(|| {
                    parse_err(0, format!("missing entry for ({},{})", k / d.max(1), k % d.max(1)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RotMapGraph { n, degree: d, rot })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn c4_is_valid() {
        assert!(validate_rotmap(&RotMapGraph::cycle(4)).is_ok());
    }

    #[test]
    fn broken_involution_is_pinpointed() {
        let r = RotMapGraph::from_table(3, 1, vec![(1, 0), (2, 0), (1, 0)]).unwrap();
        let rep = validate_rotmap(&r);
        assert_eq!(
            rep.first(),
            Some(&Violation::NotInvolution { v: 0, i: 0, image: (1, 0), back: (2, 0) })
        );
    }

    #[test]
    fn single_self_loop_is_valid() {
        assert!(validate_rotmap(&RotMapGraph::self_loops(1)).is_ok());
    }

    #[test]
    fn complete_graphs_are_valid() {
        for n in 1..7 {
            assert!(validate_rotmap(&RotMapGraph::complete(n)).is_ok(), "K{n}");
        }
    }

    #[test]
    fn random_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let r = RotMapGraph::random(7, 3, 0.2, &mut rng);
            assert!(validate_rotmap(&r).is_ok());
        }
    }

    #[test]
    fn text_round_trip_and_duplicates() {
        let r = RotMapGraph::complete(4);
        assert_eq!(RotMapGraph::parse(&r.to_text()).unwrap(), r);
        let err = RotMapGraph::parse("rotmap 1 1\n0 0 0 0\n0 0 0 0\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }
}
