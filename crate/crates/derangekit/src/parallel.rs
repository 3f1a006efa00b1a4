//! Multi-threaded enumeration over contiguous slices of the search space.

use std::num::NonZeroUsize;
use std::ops::Range;
use std::thread;

use derangekit_core::counting::block_partition_system;
use derangekit_core::oracle::{Enumerator, OracleError};
use derangekit_core::{BigInteger, ConstraintSystem, EnumerationBudget, ParameterError};

/// Worker count from the machine's available parallelism.
pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Splits `0..len` into at most `parts` contiguous, nonempty ranges.
pub fn split_range(len: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let size = base + u64::from(i < extra);
            let r = start..start + size;
            start += size;
            r
        })
        .filter(|r| !r.is_empty())
        .collect()
}

/// [`derangekit_core::oracle::enumerate_count`] spread over `workers` threads.
pub fn enumerate_count(
    system: &ConstraintSystem,
    budget: EnumerationBudget,
    workers: usize,
) -> Result<BigInteger, OracleError> {
    let enumerator = Enumerator::new(system, budget)?;
    let ranges = split_range(enumerator.len(), workers);
    let total: u64 = if ranges.len() <= 1 {
        enumerator.count_all()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|r| {
                    let e = &enumerator;
                    scope.spawn(move || e.count_range(r))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .sum()
        })
    };
    Ok(total.into())
}

pub fn enumerate_block_derangements(
    n: u32,
    k: u32,
    budget: EnumerationBudget,
    workers: usize,
) -> Result<BigInteger, OracleError> {
    if k == 0 {
        return Err(ParameterError::EmptyBlocks.into());
    }
    enumerate_count(&block_partition_system(n, k), budget, workers)
}
