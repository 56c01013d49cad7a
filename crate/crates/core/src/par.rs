//! Range fan-out that runs on rayon when the `parallel` feature is on and the
//! caller asks for it, and as a plain sequential fold otherwise.

use std::ops::Range;

pub(crate) fn fold_range<R, I, M, G>(
    range: Range<u64>,
    parallel: bool,
    identity: I,
    map: M,
    merge: G,
) -> R
where
    R: Send,
    I: Fn() -> R + Sync + Send,
    M: Fn(u64) -> R + Sync + Send,
    G: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return range.into_par_iter().map(&map).reduce(&identity, &merge);
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    range.map(map).fold(identity(), merge)
}

/// Whether parallel execution is compiled in.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
