//! Order-preserving data-parallel map with a sequential fallback.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Runtime switch used by benchmarks and `GALILEI_THREADS=1`.
pub fn set_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

/// Applies `f` to every item; output order matches input order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Reads `GALILEI_THREADS` and sizes the global pool (0 or unset: default).
pub fn init_from_env() {
    let threads = std::env::var("GALILEI_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok());
    match threads {
        Some(1) => set_sequential(true),
        #[cfg(feature = "parallel")]
        Some(n) if n > 1 => {
            // a second initialization attempt is harmless
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => {}
    }
}
