use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;

use clifford_core::presentation::FormSpec;
use clifford_core::representations::{ExhaustiveSearch, MatrixRep, SearchMode, SearchReport};
use clifford_core::Result;

use crate::error::CliError;

pub const THREADS_ENV: &str = "CLIFFORD_FORGE_THREADS";

/// Worker cap from the environment, else the number of processors.
pub fn worker_count() -> std::result::Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => {
                Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))
            }
        },
        Err(_) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Exhaustive search split into chunks handed out to `threads` workers.
/// Hits are merged by candidate index, so the report does not depend on
/// scheduling.
pub fn exhaustive(spec: &FormSpec, size: usize, cap: u64, threads: usize) -> Result<SearchReport> {
    let search = ExhaustiveSearch::new(spec, size, cap)?;
    let total = search.total();
    let threads = (threads.max(1) as u64).min(total.max(1)) as usize;
    let chunk = total.div_ceil(threads as u64 * 16).max(1);
    let next = AtomicU64::new(0);
    let hits: Mutex<Vec<(u64, MatrixRep)>> = Mutex::new(Vec::new());
    let failure: Mutex<Option<clifford_core::Error>> = Mutex::new(None);
    thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let start = next.fetch_add(chunk, Ordering::Relaxed);
                if start >= total {
                    return;
                }
                match search.scan(start..(start + chunk).min(total)) {
                    Ok(found) => hits.lock().expect("no panics while held").extend(found),
                    Err(e) => {
                        failure.lock().expect("no panics while held").get_or_insert(e);
                        next.store(total, Ordering::Relaxed);
                        return;
                    }
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().expect("workers joined") {
        return Err(e);
    }
    let mut hits = hits.into_inner().expect("workers joined");
    hits.sort_by_key(|(i, _)| *i);
    Ok(SearchReport {
        spec: spec.clone(),
        size,
        field: spec.field(),
        mode: SearchMode::Exhaustive,
        cap,
        examined: total,
        found: hits.into_iter().map(|(_, r)| r).collect(),
        exhausted: true,
    })
}
