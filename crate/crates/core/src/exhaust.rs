//! Deterministic exhaustive-enumeration helpers.
//!
//! Coefficient spaces are swept in mixed-radix index order, partitioned into
//! contiguous chunks per worker and merged in chunk order, so results are
//! independent of the worker count.

use crate::error::{Error, Result};

/// Budget and worker knobs for enumeration sweeps.
#[derive(Debug, Clone, Copy)]
pub struct EnumLimits {
    /// Hard cap on candidate polynomials per sweep.
    pub budget: u64,
    pub workers: usize,
}

pub const DEFAULT_BUDGET: u64 = 1 << 24;

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

impl EnumLimits {
    pub fn with_budget(budget: u64) -> Self {
        EnumLimits {
            budget,
            ..Default::default()
        }
    }

    /// `radix^len` as a validated candidate count.
    pub fn check_space(&self, radix: usize, len: u32) -> Result<u64> {
        let candidates = (radix as u128)
            .checked_pow(len)
            .ok_or(Error::BudgetExceeded {
                candidates: u128::MAX,
                budget: self.budget,
            })?;
        if candidates > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                candidates,
                budget: self.budget,
            });
        }
        Ok(candidates as u64)
    }
}

/// Write the little-endian base-`radix` digits of `idx` into `out`.
#[inline]
pub fn digits_into(mut idx: u64, radix: usize, out: &mut [usize]) {
    let r = radix as u64;
    for d in out.iter_mut() {
        *d = (idx % r) as usize;
        idx /= r;
    }
}

/// Map every index in `0..total` through `f`, keeping `Some` results, in
/// deterministic order regardless of `workers`.
pub fn par_filter_map<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    let workers = workers.max(1).min(total.max(1) as usize);
    if workers == 1 {
        return (0..total).filter_map(f).collect();
    }
    let chunk = total.div_ceil(workers as u64);
    let mut chunks: Vec<Vec<T>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let f = &f;
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(total);
                scope.spawn(move || (lo..hi).filter_map(f).collect::<Vec<T>>())
            })
            .collect();
        for h in handles {
            chunks.push(h.join().expect("enumeration worker panicked"));
        }
    });
    chunks.into_iter().flatten().collect()
}

/// Collect keys over `0..total`, deduplicated and sorted; deterministic in
/// the worker count.
pub fn par_distinct_keys<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send + Ord,
    F: Fn(u64) -> Option<T> + Sync,
{
    let mut keys = par_filter_map(total, workers, f);
    keys.sort_unstable();
    keys.dedup();
    keys
}
