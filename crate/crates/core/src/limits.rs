//! Global enumeration cap, read once from `LAMGRAPH_MAX_CELLS`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const DEFAULT_MAX_CELLS: usize = 10_000_000;

pub fn max_cells() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("LAMGRAPH_MAX_CELLS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
    })
}

pub(crate) fn check(count: usize) -> Result<()> {
    let cap = max_cells();
    if count > cap {
        Err(Error::LimitExceeded(cap))
    } else {
        Ok(())
    }
}
