//! Zig-zag expander models, the local reduction to 3-regular graphs,
//! neighbourhood-type statistics, generalized subgraph freeness and
//! constant-query testers for bounded-degree graphs.

pub mod canon;
pub mod error;
pub mod foeval;
pub mod graph;
pub mod graphcore;
pub mod gsf;
pub mod reduction;
pub mod structures;
pub mod testing;
pub mod zzmodel;

pub use error::{Error, Result};
pub use graph::Graph;

/// Default bound on the number of vertices or elements any operation materializes.
pub const DEFAULT_VERTEX_CAP: usize = 200_000;

/// Materialization cap, overridable through `PROPTEST_CAP_VERTICES`.
pub fn vertex_cap() -> usize {
    std::env::var("PROPTEST_CAP_VERTICES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_VERTEX_CAP)
}

pub(crate) fn check_cap(what: &'static str, need: usize) -> Result<()> {
    let cap = vertex_cap();
    if need > cap {
        return Err(Error::CapExceeded { what, need, cap });
    }
    Ok(())
}

/// Splits a text file into (1-based line number, trimmed content) pairs, skipping blanks and `#` comments.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| error::parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| error::parse_err(line, format!("bad {what} `{tok}`")))
}
