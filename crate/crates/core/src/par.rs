//! Execution strategy for the exhaustive loops.
//!
//! Every search in the crate partitions its assignment space into contiguous
//! index chunks and combines per-chunk results with an associative,
//! commutative reducer, so the answer never depends on the schedule. With the
//! `parallel` feature the chunks run on the rayon pool; without it (or with
//! [`Exec::Sequential`]) they run in order on the calling thread.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    /// Rayon data parallelism. Falls back to sequential when the crate is
    /// built without the `parallel` feature.
    Parallel,
    Sequential,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Splits `range` into chunks of at most `chunk` indices, maps each chunk
/// and reduces the results.
pub fn map_reduce<T, M, R, I>(
    exec: Exec,
    range: Range<u64>,
    chunk: u64,
    identity: I,
    map: M,
    reduce: R,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(Range<u64>) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let start = range.start;
    let len = range.end.saturating_sub(range.start);
    let pieces = len.div_ceil(chunk);
    let piece = |p: u64| {
        let lo = start + p * chunk;
        lo..(lo + chunk).min(range.end)
    };

    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..pieces)
            .into_par_iter()
            .map(|p| map(piece(p)))
            .reduce(&identity, &reduce);
    }
    let _ = exec;
    (0..pieces).map(piece).map(map).fold(identity(), reduce)
}

/// Order-preserving map over a slice.
pub fn map_slice<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<U, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Chunk size giving a few chunks per worker without tiny tasks.
pub(crate) fn chunk_for(total: u64) -> u64 {
    (total / 256).clamp(1 << 10, 1 << 18)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree() {
        for exec in [Exec::Parallel, Exec::Sequential] {
            let s = map_reduce(
                exec,
                3..10_003,
                97,
                || 0u64,
                |r| r.sum::<u64>(),
                |a, b| a + b,
            );
            assert_eq!(s, (3..10_003u64).sum::<u64>());
        }
        let empty = map_reduce(Exec::Parallel, 5..5, 8, || 7u32, |_| 1, |a, b| a.min(b));
        assert_eq!(empty, 7);
    }

    #[test]
    fn map_preserves_order() {
        let v: Vec<_> = (0..100).collect();
        assert_eq!(
            map_slice(Exec::Parallel, &v, |x| x * 2),
            map_slice(Exec::Sequential, &v, |x| x * 2)
        );
        assert_eq!(map_range(Exec::Parallel, 0..5, |i| i), vec![0, 1, 2, 3, 4]);
    }
}
