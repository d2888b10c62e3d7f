use std::collections::VecDeque;

use super::RotMapGraph;
use crate::error::{Error, Result};

/// Largest matrix order accepted by the dense eigensolver.
pub const DENSE_CAP: usize = 4096;

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues in non-increasing order.
    pub eigenvalues: Vec<f64>,
    /// `max(|λ2|, |λN|)`, defined as 0 when there is a single vertex.
    pub lambda: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectivityFlags {
    pub connected: bool,
    pub bipartite: bool,
}

/// `M[u][v] = |{i : rot(u,i) lands on v}| / D`, dense and row-major.
pub fn normalized_adjacency(r: &RotMapGraph) -> Result<Vec<Vec<f64>>> {
    r.ensure_valid()?;
    let n = r.n();
    let d = r.degree();
    let mut counts = vec![vec![0usize; n]; n];
    for v in 0..n {
        for i in 0..d {
            counts[v][r.rot(v, i).0] += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| c as f64 / d as f64).collect())
        .collect())
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations, sorted non-increasing.
pub fn symmetric_eigenvalues(m: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = m.len();
    if n > DENSE_CAP {
        return Err(Error::CapExceeded { what: "dense eigensolver order", need: n, cap: DENSE_CAP });
    }
    let mut a: Vec<f64> = Vec::with_capacity(n * n);
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        a.extend_from_slice(row);
    }
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if (2.0 * off).sqrt() < OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    Ok(ev)
}

pub fn spectrum(r: &RotMapGraph) -> Result<Spectrum> {
    if r.n() == 0 {
        return Err(Error::Empty("rotation map with no vertices"));
    }
    if r.n() > DENSE_CAP {
        return Err(Error::CapExceeded { what: "dense spectrum", need: r.n(), cap: DENSE_CAP });
    }
    let ev = symmetric_eigenvalues(&normalized_adjacency(r)?)?;
    let lambda = if ev.len() < 2 {
        0.0
    } else {
        ev[1].abs().max(ev[ev.len() - 1].abs())
    };
    Ok(Spectrum { eigenvalues: ev, lambda })
}

/// Connectivity by traversal and bipartiteness by 2-colouring; a self-loop is an odd cycle.
pub fn connectivity_flags(r: &RotMapGraph) -> ConnectivityFlags {
    let n = r.n();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut bipartite = true;
    let mut comps = 0;
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        comps += 1;
        colour[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            let cv = colour[v].unwrap();
            for i in 0..r.degree() {
                let w = r.rot(v, i).0;
                match colour[w] {
                    None => {
                        colour[w] = Some(!cv);
                        q.push_back(w);
                    }
                    Some(cw) if cw == cv => bipartite = false,
                    Some(_) => {}
                }
            }
        }
    }
    ConnectivityFlags { connected: comps <= 1, bipartite }
}

/// Checks the combinatorial flags against the spectral criteria: connected iff `λ2 < 1`, and for
/// connected graphs with edges, bipartite iff `λN = -1`.
pub fn spectral_cross_check(r: &RotMapGraph, tol: f64) -> Result<bool> {
    let flags = connectivity_flags(r);
    let sp = spectrum(r)?;
    let ev = &sp.eigenvalues;
    if ev.len() < 2 {
        return Ok(flags.connected);
    }
    let spectral_connected = ev[1] < 1.0 - tol;
    if spectral_connected != flags.connected {
        return Ok(false);
    }
    if flags.connected && r.degree() > 0 {
        let spectral_bipartite = ev[ev.len() - 1] <= -1.0 + tol;
        return Ok(spectral_bipartite == flags.bipartite);
    }
    Ok(true)
}

/// Zig-zag eigenvalue bound with `λ1²` under the square root.
pub fn g_standard(l1: f64, l2: f64) -> f64 {
    let a = 1.0 - l2 * l2;
    0.5 * a * l1 + 0.5 * (a * a * l1 * l1 + 4.0 * l2 * l2).sqrt()
}

/// Zig-zag eigenvalue bound with `λ1` (not squared) under the square root, as printed.
pub fn g_printed(l1: f64, l2: f64) -> f64 {
    let a = 1.0 - l2 * l2;
    0.5 * a * l1 + 0.5 * (a * a * l1 + 4.0 * l2 * l2).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn c4_spectrum() {
        let sp = spectrum(&RotMapGraph::cycle(4)).unwrap();
        assert!(close(&sp.eigenvalues, &[1.0, 0.0, 0.0, -1.0]));
        assert!((sp.lambda - 1.0).abs() < 1e-9);
    }

    #[test]
    fn k4_spectrum() {
        let sp = spectrum(&RotMapGraph::complete(4)).unwrap();
        let t = -1.0 / 3.0;
        assert!(close(&sp.eigenvalues, &[1.0, t, t, t]));
        assert!((sp.lambda - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn single_vertex_lambda_is_zero() {
        let sp = spectrum(&RotMapGraph::self_loops(1)).unwrap();
        assert_eq!(sp.eigenvalues, vec![1.0]);
        assert_eq!(sp.lambda, 0.0);
    }

    #[test]
    fn k4_adjacency_entries() {
        let m = normalized_adjacency(&RotMapGraph::complete(4)).unwrap();
        for (u, row) in m.iter().enumerate() {
            for (v, &x) in row.iter().enumerate() {
                let want = if u == v { 0.0 } else { 1.0 / 3.0 };
                assert!((x - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn flags() {
        let f = |r: &RotMapGraph| {
            let c = connectivity_flags(r);
            (c.connected, c.bipartite)
        };
        assert_eq!(f(&RotMapGraph::cycle(4)), (true, true));
        assert_eq!(f(&RotMapGraph::cycle(3)), (true, false));
        assert_eq!(f(&RotMapGraph::self_loops(2)), (false, false));
    }

    #[test]
    fn g_variants_agree_at_unit_l1() {
        assert!((g_standard(1.0, 0.3) - g_printed(1.0, 0.3)).abs() < 1e-15);
        assert!(g_standard(0.3, 0.4) < 0.7);
    }
}
