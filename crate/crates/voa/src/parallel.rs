//! A process-wide thread pool sized by `VOA_THREADS`.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::CliError;

pub const THREADS_VAR: &str = "VOA_THREADS";

/// The thread cap from `VOA_THREADS`, if set.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{THREADS_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Ok(Some(n)) = threads_from_env() {
            b = b.num_threads(n);
        }
        b.build().expect("thread pool")
    })
}

/// Order-preserving parallel map.
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    pool().install(|| items.into_par_iter().map(f).collect())
}
