//! Thread-pool versions of the point search and of bulk extension. Results
//! are merged and sorted, so they do not depend on the worker count.

use std::ops::RangeInclusive;

use dtuple_core::search::{finalize_points, points_for_u, u_candidates, CPoint, SearchConfig};
use dtuple_core::sextgen::{dedup_outcomes, extend, ExtendOutcome, ExtendReport};
use dtuple_core::{Error, Triple};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{AppError, Result};

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| AppError::InvalidArgument(format!("cannot start {workers} workers: {e}")))
}

/// Same output as `search_c`, spread over `cfg.workers` threads.
pub fn search_parallel(cfg: &SearchConfig) -> Result<Vec<CPoint>> {
    cfg.validate()?;
    let cap = BigInt::from(cfg.max_v_height_cap);
    let cands = u_candidates(cfg.max_u_height);
    log::debug!("{} u candidates on {} workers", cands.len(), cfg.workers);
    let pts: Vec<CPoint> = pool(cfg.workers)?.install(|| {
        cands
            .par_iter()
            .flat_map_iter(|u| points_for_u(u, &cap))
            .collect()
    });
    Ok(finalize_points(pts))
}

/// Per-`n` results of bulk extension, in increasing `n`.
pub struct BulkExtend {
    pub report: ExtendReport,
    /// `n` values whose extension raised an error.
    pub errors: Vec<(i64, Error)>,
}

pub fn extend_parallel(t: &Triple, ns: RangeInclusive<i64>, workers: usize) -> Result<BulkExtend> {
    let ns: Vec<i64> = ns.collect();
    let results: Vec<(i64, std::result::Result<ExtendOutcome, Error>)> =
        pool(workers.max(1))?.install(|| ns.par_iter().map(|&n| (n, extend(t, n))).collect());
    let mut outs = Vec::new();
    let mut errors = Vec::new();
    for (n, r) in results {
        match r {
            Ok(o) => outs.push(o),
            Err(e) => errors.push((n, e)),
        }
    }
    Ok(BulkExtend {
        report: dedup_outcomes(outs),
        errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dtuple_core::search::search_c;
    use dtuple_core::sextgen::extend_range;
    use dtuple_core::{f1, UVPair};

    #[test]
    fn matches_sequential_search() {
        for workers in [1, 3] {
            let cfg = SearchConfig {
                max_u_height: 15,
                max_v_height_cap: 1_000_000,
                workers,
            };
            assert_eq!(search_parallel(&cfg).unwrap(), search_c(&cfg).unwrap());
        }
    }

    #[test]
    fn bulk_extend_matches_sequential() {
        let uv = UVPair::new("-119/128".parse().unwrap(), "-135/169".parse().unwrap());
        let t = f1(&uv).unwrap();
        let bulk = extend_parallel(&t, -2..=2, 3).unwrap();
        assert!(bulk.errors.is_empty());
        assert_eq!(bulk.report, extend_range(&t, -2..=2).unwrap());
    }
}
