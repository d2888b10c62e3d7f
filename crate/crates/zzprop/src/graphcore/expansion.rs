use super::{spectrum, RotMapGraph};
use crate::error::{Error, Result};

/// Largest vertex count for exhaustive subset enumeration.
pub const MAX_BRUTEFORCE_N: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct CheegerReport {
    /// Exact expansion ratio; `None` when `n = 1` (no admissible set).
    pub h: Option<f64>,
    /// `D(1 - λ)/2`.
    pub bound: f64,
    pub satisfied: bool,
}

/// Exact `h(G)` over all nonempty `S` with `|S| ≤ N/2`. Parallel edges count with
/// multiplicity, self-loops never cross. Subsets are visited in Gray-code order.
pub fn expansion_ratio_bruteforce(r: &RotMapGraph) -> Result<Option<f64>> {
    r.ensure_valid()?;
    let n = r.n();
    if n == 0 || n > MAX_BRUTEFORCE_N {
        return Err(Error::OutOfRange(format!(
            "exhaustive expansion needs 1 <= n <= {MAX_BRUTEFORCE_N}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(None);
    }
    let d = r.degree() as i64;
    let c: Vec<Vec<i64>> = (0..n)
        .map(|u| (0..n).map(|v| r.label_count(u, v) as i64).collect())
        .collect();
    // into_s[x] = number of labels at x leading into the current S
    let mut into_s = vec![0i64; n];
    let mut in_s = vec![false; n];
    let mut cut = 0i64;
    let mut size = 0usize;
    let mut best: Option<(i64, usize)> = None;
    for step in 1u64..(1u64 << n) {
        let x = step.trailing_zeros() as usize;
        let out_labels = d - c[x][x];
        let inner = into_s[x] - if in_s[x] { c[x][x] } else { 0 };
        if in_s[x] {
            cut += -out_labels + 2 * inner;
            size -= 1;
            in_s[x] = false;
            for y in 0..n {
                into_s[y] -= c[y][x];
            }
        } else {
            cut += out_labels - 2 * inner;
            size += 1;
            in_s[x] = true;
            for y in 0..n {
                into_s[y] += c[y][x];
            }
        }
        if size >= 1 && 2 * size <= n {
            let better = match best {
                None => true,
                Some((bc, bs)) => cut * (bs as i64) < bc * (size as i64),
            };
            if better {
                best = Some((cut, size));
            }
        }
    }
    Ok(best.map(|(c, s)| c as f64 / s as f64))
}

pub fn cheeger_check(r: &RotMapGraph) -> Result<CheegerReport> {
    let h = expansion_ratio_bruteforce(r)?;
    let lambda = spectrum(r)?.lambda;
    let bound = r.degree() as f64 * (1.0 - lambda) / 2.0;
    let satisfied = h.is_none_or(|h| h >= bound - 1e-9);
    Ok(CheegerReport { h, bound, satisfied })
}
