//! Worker-pool control. Every search in this crate runs on the ambient rayon
//! pool and merges results by lexicographic minimum, so the worker count
//! never changes an answer.

use crate::error::{Error, Result};

/// Runs `f` on a dedicated pool of `threads` workers (0 means the rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}
